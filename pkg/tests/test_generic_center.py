from math import prod

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from sympy import ZZ, Matrix
from sympy.matrices.normalforms import smith_normal_form

from twistgrade.cocycle import Cocycle
from twistgrade.generic_center import (HermiteBasis, central_monomial_check, exponent_lattice,
                                       hermite_basis, rank_of_Yf, smith_invariants, torsion_of_Y,
                                       uv_quotient)
from twistgrade.group_core import abelian_invariants
from twistgrade.specs import bundled_names

RANK_GROUPS = ["c2", "c2c2", "c3c3", "c4c4", "c9sc9", "c4sc2c2", "s3c6"]


def sympy_invariants(rows):
    M = Matrix(rows)
    D = smith_normal_form(M, domain=ZZ)
    return [abs(int(D[i, i])) for i in range(min(D.shape)) if D[i, i] != 0]


matrices = st.integers(1, 5).flatmap(lambda n: st.lists(
    st.lists(st.integers(-9, 9), min_size=n, max_size=n), min_size=1, max_size=6))


@settings(max_examples=80, deadline=None)
@given(matrices)
def test_smith_invariants_match_sympy(rows):
    assert smith_invariants(rows) == sympy_invariants(rows)


@settings(max_examples=80, deadline=None)
@given(matrices)
def test_hermite_basis_spans_the_same_lattice(rows):
    n = len(rows[0])
    h = hermite_basis(rows, n)
    M = h.matrix()
    assert h.rank == Matrix(rows).rank()
    if M:
        assert smith_invariants(M) == sympy_invariants(rows)
        for k, r in zip(sorted(h.rows), M):
            assert all(x == 0 for x in r[:k]) and r[k] > 0
            assert all(0 <= r2[k] < r[k] for r2 in M if r2 is not r)


@settings(max_examples=40, deadline=None)
@given(matrices)
def test_incremental_and_batch_echelon_agree(rows):
    n = len(rows[0])
    inc = HermiteBasis(n)
    for r in rows:
        inc.add(r)
    assert inc.matrix() == hermite_basis(rows, n).matrix()


def test_large_entries_switch_to_exact_integers():
    big = 1 << 45
    rows = [[big + 1, big], [big, big - 1], [3, 5]]
    assert smith_invariants(hermite_basis(rows, 2).matrix()) == sympy_invariants(rows)


@pytest.mark.parametrize("name", RANK_GROUPS)
def test_rank_equals_group_order(bundled, name):
    G, c = bundled(name)
    assert rank_of_Yf(c) == G.order
    assert rank_of_Yf(c.generic()) == G.order


@pytest.mark.parametrize("name", ["c2c2", "c3c3", "s3c6"])
def test_generator_rows_span_the_full_lattice(bundled, name):
    G, c = bundled(name)
    a = hermite_basis(exponent_lattice(c).rows, G.order).matrix()
    b = hermite_basis(exponent_lattice(c, full=True).rows, G.order).matrix()
    assert a == b
    assert torsion_of_Y(c).order == torsion_of_Y(c, full=True).order


@pytest.mark.parametrize("name", ["c2", "c2c2", "c3c3", "c4sc2c2", "s3c6"])
def test_torsion_matches_covolume_ratio(bundled, name):
    # the root-of-unity column contributes covol(L) / covol(t-part) to the torsion
    G, c = bundled(name)
    lat = exponent_lattice(c, full=True)
    N = c.conductor
    full = [r + [e] for r, e in zip(lat.rows, lat.c_exponents)] + [[0] * G.order + [N]]
    ratio = prod(sympy_invariants(full)) // prod(sympy_invariants(lat.rows))
    assert torsion_of_Y(c).order == N // ratio


def test_torsion_of_trivial_cocycle_is_trivial(bundled):
    G, _ = bundled("c4c4")
    assert torsion_of_Y(Cocycle.trivial(G)).order == 1


@pytest.mark.parametrize("name", bundled_names())
def test_uv_quotient_is_the_abelianization(bundled, name):
    G, _ = bundled(name)
    assert uv_quotient(G) == abelian_invariants(G)


def test_uv_quotient_full_rows_agree(bundled):
    G, _ = bundled("s3c6")
    assert uv_quotient(G, full=True) == uv_quotient(G)


def test_central_monomials(bundled):
    G, c = bundled("c2c2")
    a, b = G.element("a"), G.element("b")
    ok = central_monomial_check(c, [(1, a), (2, a)])
    assert ok.product_trivial and ok.central and ok.witness is None
    bad = central_monomial_check(c, [(1, a)])
    assert not bad.product_trivial and not bad.central and bad.witness is not None
    assert central_monomial_check(c, [(1, a), (1, b), (2, a), (2, b)]).central
