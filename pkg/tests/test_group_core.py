import itertools
import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from twistgrade.group_core import (GroupError, abelian_basis, abelian_invariants, cyclic, derived_subgroup,
                                   direct, extend_to_automorphism, from_spec, from_table, is_nilpotent,
                                   sylow_decomposition)


def check_axioms(G):
    n = G.order
    for a, b, c in itertools.product(range(n), repeat=3):
        assert G.mul(G.mul(a, b), c) == G.mul(a, G.mul(b, c))
    for a in range(n):
        assert G.mul(0, a) == a == G.mul(a, 0)
        assert G.mul(a, G.inv(a)) == 0


@pytest.mark.parametrize("name", ["c2c2", "c4sc2c2", "q8", "c4c2"])
def test_group_axioms(bundled, name):
    check_axioms(bundled(name)[0])


def test_semidirect_action_convention(bundled):
    G, _ = bundled("c9sc9")
    pi, sigma = G.element("pi"), G.element("sigma")
    assert G.conj(sigma, pi) == G.power(pi, 4)
    assert G.order == 81 and not G.is_abelian()


def test_s3c6_relations(bundled):
    G, _ = bundled("s3c6")
    sigma, tau, y, z = (G.element(w) for w in ("sigma", "tau", "y", "z"))
    assert G.order == 36
    assert y == G.power(z, 2)
    assert G.conj(tau, z) == G.power(z, 5)
    assert G.commute(sigma, z)
    assert G.conj(tau, sigma) == G.power(sigma, 2)
    assert not is_nilpotent(G)


def test_element_orders_of_q8(bundled):
    G, _ = bundled("q8")
    orders = sorted(G.element_orders())
    assert orders == [1, 2, 4, 4, 4, 4, 4, 4]
    assert is_nilpotent(G)
    assert abelian_invariants(G) == [2, 2]
    assert derived_subgroup(G).order == 2


@pytest.mark.parametrize("name,inv", [("c2c2", [2, 2]), ("c4c4", [4, 4]), ("c4c2", [2, 4]),
                                      ("c9sc9", [3, 9]), ("c4sc2c2", [2, 2, 2]), ("s3c6", [2, 2])])
def test_abelian_invariants(bundled, name, inv):
    # oracle: |G/G'| and the orders listed follow from the presentations by hand
    G, _ = bundled(name)
    assert sorted(abelian_invariants(G)) == sorted(inv)


def test_abelian_basis_is_independent():
    G = direct([cyclic(4, "a"), cyclic(4, "b"), cyclic(2, "c")])
    basis = abelian_basis(G)
    assert [G.element_order(b) for b in basis] == [4, 4, 2]
    assert G.generated(basis).order == G.order


def test_sylow_decomposition_of_mixed_abelian(bundled):
    G, _ = bundled("c2c2c3c3")
    syl = sylow_decomposition(G)
    assert {p: S.order for p, S in syl.items()} == {2: 4, 3: 9}


def test_extend_to_automorphism(bundled):
    G, _ = bundled("c4c4")
    a, b = G.element("a"), G.element("b")
    assert extend_to_automorphism(G, [a, b], [b, a]) is not None
    assert extend_to_automorphism(G, [a, b], [a, G.power(a, 2)]) is None
    f = extend_to_automorphism(G, [a, b], [G.mul(a, b), b])
    assert sorted(f) == list(range(G.order))
    for x in range(G.order):
        for y in range(G.order):
            assert f[G.mul(x, y)] == G.mul(f[x], f[y])


def test_bad_specs_raise():
    with pytest.raises(GroupError):
        from_spec({"nonsense": 1})
    with pytest.raises(GroupError):
        from_spec({"semidirect": {"normal": {"cyclic": 3, "gen": "a"}, "acting": {"cyclic": 2, "gen": "b"},
                                  "action": {"b": {"a": "a^0"}}}})
    with pytest.raises(GroupError):
        from_table([[0, 1], [0, 1]])


@settings(max_examples=20, deadline=None)
@given(st.integers(0, 10_000))
def test_relabel_preserves_structure(seed):
    G = from_spec({"semidirect": {"normal": {"cyclic": 4, "gen": "pi"},
                                  "acting": {"direct": [{"cyclic": 2, "gen": "s"}, {"cyclic": 2, "gen": "t"}]},
                                  "action": {"s": {"pi": "pi^3"}}}})
    H, perm = G.random_relabel(random.Random(seed))
    for x in range(G.order):
        for y in range(G.order):
            assert perm[G.mul(x, y)] == H.mul(perm[x], perm[y])
    assert sorted(H.element_orders()) == sorted(G.element_orders())
    assert abelian_invariants(H) == abelian_invariants(G)
