import cmath
import itertools
import random

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from twistgrade.cocycle import (Cocycle, CocycleError, cocycle_from_spec, inflated_bilinear, random_cochain)
from twistgrade.group_core import cyclic, extend_to_automorphism
from twistgrade.scalars import RootOfUnity

from conftest import STANDARD_GROUPS


def brute_force_is_cocycle(c):
    G = c.group
    for g, h, k in itertools.product(range(G.order), repeat=3):
        lhs = c.value(g, h) * c.value(G.mul(g, h), k)
        rhs = c.value(h, k) * c.value(g, G.mul(h, k))
        if lhs != rhs:
            return False
    return True


def center_dimension(c):
    """Complex linear algebra on the regular representation, independent of the pairing code."""
    G = c.group
    n = G.order
    val = lambda g, h: cmath.exp(2j * cmath.pi * int(c.exp[g, h]) / c.conductor)
    blocks = []
    for h in range(n):
        L = np.zeros((n, n), complex)
        R = np.zeros((n, n), complex)
        for g in range(n):
            L[G.mul(h, g), g] = val(h, g)
            R[G.mul(g, h), g] = val(g, h)
        blocks.append(L - R)
    return n - np.linalg.matrix_rank(np.vstack(blocks), tol=1e-8)


@pytest.mark.parametrize("name", ["c2c2", "c3c3", "c4sc2c2", "s3c6"])
def test_bundled_cocycles_pass_brute_force_check(bundled, name):
    G, c = bundled(name)
    assert brute_force_is_cocycle(c)
    assert c.validate().ok


@pytest.mark.parametrize("name", STANDARD_GROUPS + ["s3c6"])
def test_isaacs_criterion_matches_center_dimension(bundled, name):
    G, c = bundled(name)
    nondeg, _ = c.is_nondegenerate()
    assert nondeg
    if G.order <= 36:
        assert center_dimension(c) == 1


@pytest.mark.parametrize("name", ["c2c2", "c4c4", "c4sc2c2", "s3c6"])
def test_degenerate_cocycles_have_larger_center(bundled, name):
    G, _ = bundled(name)
    for d in (Cocycle.trivial(G), inflated_bilinear(G, [g for g in G.center().members if g][:1])):
        assert d.is_valid()
        assert not d.is_nondegenerate()[0]
        assert center_dimension(d) > 1


def test_s3c6_pairing_value(bundled):
    G, c = bundled("s3c6")
    y, sigma = G.element("y"), G.element("sigma")
    assert c.value(y, sigma) == RootOfUnity(3, 2)
    assert c.pairing(y, sigma) == RootOfUnity(3, 2)


def test_validation_reports_violations():
    G = cyclic(3, "a")
    vals = [[RootOfUnity() for _ in range(3)] for _ in range(3)]
    vals[1][1] = RootOfUnity(2, 1)
    c = Cocycle.from_roots(G, vals)
    rep = c.validate()
    assert not rep.ok and rep.violation_count > 0
    assert not brute_force_is_cocycle(c)


def test_pairing_needs_commuting_elements(bundled):
    G, c = bundled("c4sc2c2")
    with pytest.raises(CocycleError):
        c.pairing(G.element("pi"), G.element("sigma"))


def test_bad_values_spec():
    G = cyclic(2, "a")
    with pytest.raises(CocycleError):
        cocycle_from_spec({"values": [["a", "a"]]}, G)
    with pytest.raises(CocycleError):
        cocycle_from_spec({"bogus": 1}, G)


def test_path_coefficient_matches_repeated_products(bundled):
    G, c = bundled("s3c6")
    rng = random.Random(3)
    for _ in range(50):
        word = [rng.randrange(G.order) for _ in range(rng.randint(1, 6))]
        acc, coeff = word[0], RootOfUnity()
        for g in word[1:]:
            coeff = coeff * c.value(acc, g)
            acc = G.mul(acc, g)
        assert c.path_coefficient(word) == coeff


@settings(max_examples=25, deadline=None)
@given(st.integers(0, 10**6), st.sampled_from(["c2c2", "c4sc2c2", "c3c3"]))
def test_coboundaries_preserve_validity_and_pairings(bundled, seed, name):
    G, c = bundled(name)
    rng = random.Random(seed)
    d = c.coboundary_modify(random_cochain(G, rng, 12))
    assert d.is_valid()
    for g in range(G.order):
        for h in range(G.order):
            if G.commute(g, h):
                assert d.pairing(g, h) == c.pairing(g, h)


@settings(max_examples=15, deadline=None)
@given(st.integers(0, 10**6))
def test_pushforward_transports_pairings(bundled, seed):
    G, c = bundled("c4c4")
    rng = random.Random(seed)
    a, b = G.element("a"), G.element("b")
    while True:
        imgs = [rng.randrange(G.order), rng.randrange(G.order)]
        phi = extend_to_automorphism(G, [a, b], imgs)
        if phi is not None:
            break
    d = c.pushforward(phi)
    assert d.is_valid()
    for g in range(G.order):
        for h in range(G.order):
            assert d.pairing(phi[g], phi[h]) == c.pairing(g, h)


def test_generic_cocycle_is_a_cocycle(bundled):
    G, c = bundled("c2c2")
    s = c.generic()
    assert s.validate().ok
    assert s.is_nondegenerate()
    assert s.value(0, 0) == s.value(0, 0)


def test_normalized_and_reduced():
    G = cyclic(2, "a")
    c = Cocycle(G, 4, np.full((2, 2), 2))
    assert c.normalized().validate().ok
    assert Cocycle(G, 4, np.array([[0, 0], [0, 2]])).reduced().conductor == 2
