import pytest

from twistgrade.cocycle import Cocycle
from twistgrade.graded_identities import GradedPolynomial, decide_identity
from twistgrade.scalars import Cyclo, RootOfUnity
from twistgrade.worked_example import (PUBLISHED_ROWS, _word, example_polynomial, load_example,
                                       published_combination, published_rows_convention,
                                       run_example)


@pytest.fixture(scope="module")
def example():
    return load_example()


def test_every_check_passes():
    checks = run_example()
    assert [ch.name for ch in checks if not ch.ok] == []
    assert len(checks) >= 12


def test_cocycle_values_quoted_in_the_text(example):
    G, c = example
    omega = RootOfUnity(3, 1)
    assert c.value(G.element("y"), G.element("sigma")) == omega ** 2
    for a in ("sigma", "tau"):
        for b in ("sigma", "tau"):
            assert c.value(G.element(a), G.element(b)).is_one()


def test_powers_of_f(example):
    G, c = example
    f = example_polynomial(G)
    assert [decide_identity(f ** k, c) for k in (1, 2, 3)] == [False, False, True]


def test_published_combination_expands_to_f_cubed(example):
    G, _ = example
    assert example_polynomial(G) ** 3 == published_combination(G)
    assert len(PUBLISHED_ROWS) == 5


def test_published_rows_hold_for_the_conjugate_cocycle(example):
    G, c = example
    assert published_rows_convention(G, c) == "conjugate cocycle"
    rows = [GradedPolynomial({_word(G, z1): Cyclo.root(3, k1)}) - GradedPolynomial({_word(G, z2): Cyclo.root(3, k2)})
            for k1, z1, k2, z2 in PUBLISHED_ROWS]
    assert not all(decide_identity(r, c) for r in rows)


def test_replacing_omega_by_its_square_is_detected():
    checks = {ch.name: ch for ch in run_example(omega_power=2)}
    assert not checks["f^3 equals the published combination term by term"].ok


def test_trivial_cocycle_stops_at_nondegeneracy(example):
    G, _ = example
    checks = run_example(Cocycle.trivial(G))
    assert checks[-1].name == "cocycle is nondegenerate" and not checks[-1].ok


def test_f_cubed_survives_replacing_omega_by_its_square(example):
    # the conjugate polynomial is still an identity, so only the published
    # combination check tells the two apart
    G, c = example
    f = example_polynomial(G, 2)
    assert [decide_identity(f ** k, c) for k in (1, 2, 3)] == [False, False, True]
