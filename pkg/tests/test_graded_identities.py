import cmath
import itertools
import random
from math import comb, factorial, gcd

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from twistgrade.cocycle import Cocycle
from twistgrade.graded_identities import (GradedMonomial, GradedPolynomial, IdentityError,
                                          ResourceCapError, as_elementary_combination,
                                          canonical_relabel, compute_mu, decide_identity,
                                          elementary_identity, enumerate_E, homogeneous_decomposition,
                                          identity_from_pair, irreducible_permutations, is_congruent,
                                          random_elementary_identity, random_substitution_check,
                                          reduce_to_generators, weak_components)
from twistgrade.group_core import cyclic
from twistgrade.scalars import Cyclo


def to_complex(a: Cyclo) -> complex:
    z = cmath.exp(2j * cmath.pi / a.n)
    return sum(float(x) * z ** i for i, x in enumerate(a.c))


def regular_matrices(c):
    """u_g as a matrix on the basis u_h: u_g u_h = c(g,h) u_gh."""
    G = c.group
    out = []
    for g in range(G.order):
        M = np.zeros((G.order, G.order), complex)
        for h in range(G.order):
            M[G.mul(g, h), h] = cmath.exp(2j * cmath.pi * int(c.exp[g, h]) / c.conductor)
        out.append(M)
    return out


def numeric_identity(p, c, trials=3, seed=0):
    """Substitute x_{ig} -> t * u_g with random complex t; identity iff every trial gives 0."""
    mats = regular_matrices(c)
    rng = np.random.default_rng(seed)
    letters = sorted(p.letters())
    for _ in range(trials):
        vals = {x: complex(*rng.normal(size=2)) for x in letters}
        total = np.zeros_like(mats[0])
        for m, a in p.terms.items():
            M = np.eye(len(mats), dtype=complex) * to_complex(a)
            for x in m.letters:
                M = M @ (vals[x] * mats[x[1]])
            total += M
        if np.abs(total).max() > 1e-8:
            return False
    return True


def small_polynomial(G, rng, terms, length, max_index=2):
    """A sum of elementary-style binomials on shared letters, with one random coefficient."""
    p = GradedPolynomial()
    letters = [(rng.randint(1, max_index), rng.randrange(G.order)) for _ in range(length)]
    for _ in range(terms):
        perm = list(range(length))
        rng.shuffle(perm)
        m = GradedMonomial(tuple(letters[i] for i in perm))
        p = p + GradedPolynomial({m: Cyclo.root(12, rng.randrange(12))})
    return p


# ---------------------------------------------------------------- polynomials

def test_parse_and_render_round_trip(bundled):
    G, _ = bundled("s3c6")
    text = "x(1,sigma)*x(1,tau)^2 - w3*x(2,y)*x(1,sigma) + 2"
    p = GradedPolynomial.parse(text, G)
    assert GradedPolynomial.parse(p.render(G), G) == p
    assert GradedPolynomial.from_json(p.to_json(G), G) == p
    assert len(p.monomials()) == 3


def test_parse_rejects_bad_letters(bundled):
    G, _ = bundled("c2c2")
    with pytest.raises(IdentityError):
        GradedPolynomial.parse("x(1)", G)
    with pytest.raises(IdentityError):
        GradedPolynomial.parse("x(0,a)", G)


def test_multiplication_concatenates_monomials(bundled):
    G, _ = bundled("c2c2")
    x = GradedPolynomial.parse("x(1,a)", G)
    y = GradedPolynomial.parse("x(1,b)", G)
    assert ((x + y) ** 2).monomials() == sorted(((x * x) + (x * y) + (y * x) + (y * y)).monomials())
    assert (x * y - y * x).substitute({(1, G.element("a")): [(1, G.element("b"))] * 2}) != 0


@settings(max_examples=40, deadline=None)
@given(st.integers(0, 10**6))
def test_render_round_trip_random(seed):
    G = cyclic(4)
    rng = random.Random(seed)
    p = small_polynomial(G, rng, rng.randint(1, 4), rng.randint(1, 4), max_index=3)
    assert GradedPolynomial.parse(p.render(G), G) == p


# ---------------------------------------------------------------- congruence

def test_congruence_needs_equal_degree_in_nonabelian_group(bundled):
    G, _ = bundled("s3c6")
    s, t = G.element("sigma"), G.element("tau")
    z1 = GradedMonomial(((1, s), (1, t)))
    z2 = GradedMonomial(((1, t), (1, s)))
    assert G.mul(s, t) != G.mul(t, s)
    assert is_congruent(z1, z2, G) is None
    z3 = GradedMonomial(((1, s), (1, s)))
    assert is_congruent(z3, z3, G) == (0, 1)


@settings(max_examples=50, deadline=None)
@given(st.integers(0, 10**6))
def test_congruence_permutation_maps_first_to_second(seed):
    rng = random.Random(seed)
    G = cyclic(6)
    letters = tuple((rng.randint(1, 2), rng.randrange(6)) for _ in range(rng.randint(1, 5)))
    perm = list(range(len(letters)))
    rng.shuffle(perm)
    z1 = GradedMonomial(letters)
    z2 = GradedMonomial(tuple(letters[p] for p in perm))
    found = is_congruent(z1, z2, G)
    assert found is not None
    assert tuple(z1.letters[p] for p in found) == z2.letters


def test_elementary_identity_rejects_non_congruent_pair(bundled):
    G, c = bundled("s3c6")
    z = GradedMonomial(((1, G.element("sigma")), (1, G.element("tau"))))
    with pytest.raises(IdentityError):
        elementary_identity(z, (1, 0), c)
    with pytest.raises(IdentityError):
        elementary_identity(z, (0, 0), c)


def test_anticommuting_letters_when_pairing_is_minus_one(bundled):
    G, c = bundled("c2c2")
    a, b = G.element("a"), G.element("b")
    assert c.pairing(a, b).order() == 2
    p = GradedPolynomial.parse("x(1,a)*x(1,b) + x(1,b)*x(1,a)", G)
    assert decide_identity(p, c)
    assert not decide_identity(GradedPolynomial.parse("x(1,a)*x(1,b) - x(1,b)*x(1,a)", G), c)


# ---------------------------------------------------------------- decision

@pytest.mark.parametrize("name", ["c2c2", "c3c3", "s3c6", "c4c4"])
def test_elementary_identities_vanish_numerically(bundled, name):
    G, c = bundled(name)
    rng = random.Random(7)
    for _ in range(6):
        B = random_elementary_identity(c, rng.randint(2, 4), 2, rng)
        assert decide_identity(B.polynomial(), c)
        assert numeric_identity(B.polynomial(), c)


@settings(max_examples=40, deadline=None)
@given(st.integers(0, 10**6), st.sampled_from(["c2c2", "s3c6", "c3c3"]))
def test_bucket_decision_matches_matrix_substitution(seed, name):
    from conftest import load

    G, c = load(name)
    rng = random.Random(seed)
    B = random_elementary_identity(c, rng.randint(2, 3), 2, rng)
    p = B.polynomial() * Cyclo.root(4, rng.randrange(4))
    if rng.random() < 0.5:
        p = p + small_polynomial(G, rng, 2, rng.randint(1, 3))
    assert decide_identity(p, c) == numeric_identity(p, c, seed=seed)


@settings(max_examples=15, deadline=None)
@given(st.integers(0, 10**6))
def test_bucket_and_generic_methods_agree(seed):
    from conftest import load

    G, c = load("c2c2")
    rng = random.Random(seed)
    p = small_polynomial(G, rng, 3, rng.randint(1, 3))
    if rng.random() < 0.5:
        p = random_elementary_identity(c, 3, 2, rng).polynomial()
    assert decide_identity(p, c) == decide_identity(p, c, method="generic")


def test_random_substitution_reports_a_witness(bundled):
    G, c = bundled("c2c2")
    p = GradedPolynomial.parse("x(1,a)*x(1,b) - x(1,b)*x(1,a)", G)
    ok, witness = random_substitution_check(p, c, np.random.default_rng(0), trials=3)
    assert not ok and set(witness) == p.letters()
    ok, witness = random_substitution_check(p * 0, c, np.random.default_rng(0), trials=3)
    assert ok and witness is None


def test_unknown_method_is_rejected(bundled):
    G, c = bundled("c2c2")
    with pytest.raises(ValueError):
        decide_identity(GradedPolynomial(), c, method="magic")


# ---------------------------------------------------------------- decompositions

def test_homogeneous_decomposition_refines_weak_components(bundled):
    G, c = bundled("s3c6")
    from twistgrade.worked_example import example_polynomial

    f3 = example_polynomial(G) ** 3
    weak = weak_components(f3, G)
    comps = homogeneous_decomposition(f3, G)
    assert len(comps) >= len(weak)
    total = GradedPolynomial()
    for q in comps:
        total = total + q
    assert total == f3


@settings(max_examples=30, deadline=None)
@given(st.integers(0, 10**6))
def test_identity_is_a_combination_of_elementary_identities(seed):
    from conftest import load

    G, c = load("s3c6")
    rng = random.Random(seed)
    p = GradedPolynomial()
    for _ in range(rng.randint(1, 3)):
        p = p + random_elementary_identity(c, rng.randint(2, 4), 2, rng).polynomial() * Cyclo.root(3, rng.randrange(3))
    combo = as_elementary_combination(p, c)
    total = GradedPolynomial()
    for a, B in combo:
        assert decide_identity(B.polynomial(), c)
        total = total + B.polynomial() * a
    assert total == p


def test_non_identity_has_no_elementary_combination(bundled):
    G, c = bundled("c2c2")
    with pytest.raises(IdentityError):
        as_elementary_combination(GradedPolynomial.parse("x(1,a)", G), c)


# ---------------------------------------------------------------- enumeration

def test_canonical_relabel_is_first_occurrence_per_degree():
    assert canonical_relabel(((3, 1), (2, 0), (3, 1), (5, 0), (2, 0))) == ((1, 1), (1, 0), (1, 1), (2, 0), (1, 0))


@pytest.mark.parametrize("name", ["c2c2", "c3c3", "s3c6"])
def test_enumerated_coefficients_are_roots_of_group_order(bundled, name):
    G, c = bundled(name)
    count = 0
    for B in itertools.islice(enumerate_E(c, max_len=3, max_index=2), 5000):
        count += 1
        assert (B.coefficient ** G.order).is_one()
        assert canonical_relabel(B.z1.letters) == B.z1.letters
        assert B.z1 != B.z2
        if count <= 200:
            assert decide_identity(B.polynomial(), c)
    assert count > 0


def test_enumeration_is_sound_against_matrices(bundled):
    G, c = bundled("c2c2")
    for B in itertools.islice(enumerate_E(c, max_len=4, max_index=2), 0, 4000, 97):
        assert numeric_identity(B.polynomial(), c)


def test_enumeration_respects_the_cap(bundled):
    G, c = bundled("c3c3")
    with pytest.raises(ResourceCapError):
        list(enumerate_E(c, max_len=4, max_index=3, limit=50))


def test_parallel_enumeration_matches_serial(bundled):
    G, c = bundled("c2c2")
    serial = sorted(B.render(G) for B in enumerate_E(c, max_len=3, max_index=2))
    parallel = sorted(B.render(G) for B in enumerate_E(c, max_len=3, max_index=2, workers=2))
    assert serial == parallel


# ---------------------------------------------------------------- mu

@pytest.mark.parametrize("k", range(1, 7))
def test_irreducible_permutation_count_matches_inclusion_exclusion(k):
    # permutations of k letters with no i immediately followed by i+1
    expected = sum((-1) ** j * comb(k - 1, j) * factorial(k - j) for j in range(k))
    perms = irreducible_permutations(k)
    assert len(perms) == expected
    assert len(set(perms)) == len(perms)


def brute_force_mu_order(c, max_len):
    G = c.group
    N = c.conductor
    d = N
    for k in range(2, max_len + 1):
        for word in itertools.product(range(G.order), repeat=k):
            deg = G.product(word)
            e0 = c.path_exponent(word)
            for perm in itertools.permutations(range(k)):
                w2 = [word[p] for p in perm]
                if G.product(w2) == deg:
                    d = gcd(d, (e0 - c.path_exponent(w2)) % N)
    return N // d


@pytest.mark.parametrize("name,max_len", [("c2c2", 4), ("c3c3", 3), ("s3c6", 3)])
def test_mu_matches_brute_force_over_all_permutations(bundled, name, max_len):
    G, c = bundled(name)
    mu = compute_mu(c, max_len=max_len, stable_rounds=max_len)
    assert mu.order == brute_force_mu_order(c, max_len)
    assert (mu.generator ** mu.order).is_one()
    assert mu.order % mu.pairing_order == 0
    assert mu.bound % mu.order == 0


def test_mu_stops_on_word_budget(bundled):
    G, c = bundled("c4c4")
    mu = compute_mu(c, max_words=100)
    assert mu.stop_reason == "word budget exhausted"


def test_mu_of_trivial_cocycle_is_trivial():
    G = cyclic(3)
    mu = compute_mu(Cocycle.trivial(G))
    assert mu.order == 1


# ---------------------------------------------------------------- reduction

@pytest.mark.parametrize("name,lengths", [("c2c2", (5, 6, 7)), ("c3c3", (10,))])
def test_reduction_certificates_verify(bundled, name, lengths):
    G, c = bundled(name)
    rng = random.Random(11)
    for length in lengths:
        for _ in range(3):
            B = random_elementary_identity(c, length, 3, rng)
            cert = reduce_to_generators(B, c)
            ok, problems = cert.verify(c)
            assert ok, problems
            assert cert.replay() == B.polynomial()
            assert all(len(t.identity) <= G.order for t in cert.terms)


def test_reduction_on_cyclic_two_with_trivial_cocycle():
    G = cyclic(2)
    c = Cocycle.trivial(G)
    rng = random.Random(3)
    for length in (3, 4, 5):
        B = random_elementary_identity(c, length, 2, rng)
        ok, problems = reduce_to_generators(B, c).verify(c)
        assert ok, problems


def test_reduction_rejects_wrong_coefficient(bundled):
    G, c = bundled("c2c2")
    rng = random.Random(0)
    B = random_elementary_identity(c, 3, 2, rng)
    bad = type(B)(B.z1, B.z2, B.perm, B.coefficient * c.pairing(G.element("a"), G.element("b")))
    with pytest.raises(IdentityError):
        reduce_to_generators(bad, c)


def test_certificate_verification_catches_tampering(bundled):
    G, c = bundled("c2c2")
    B = random_elementary_identity(c, 6, 2, random.Random(5))
    cert = reduce_to_generators(B, c)
    cert.terms = cert.terms[:-1]
    ok, problems = cert.verify(c)
    assert not ok and "replay" in problems[0]


def test_identity_from_pair_matches_elementary_identity(bundled):
    G, c = bundled("s3c6")
    rng = random.Random(2)
    B = random_elementary_identity(c, 4, 2, rng)
    assert identity_from_pair(B.z1, B.z2, c).polynomial() == B.polynomial()
