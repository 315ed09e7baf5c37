import json
import random

import pytest

from conftest import STANDARD_GROUPS, load
from twistgrade.cocycle import Cocycle, inflated_bilinear
from twistgrade.group_core import cyclic, direct
from twistgrade.scalars import RootOfUnity
from twistgrade.specs import load_group
from twistgrade.standard_form import (DegenerateCocycleError, StandardFormError, check_relations,
                                      generating_set_from_words, normalize_orders, perturb_cocycle,
                                      random_automorphism, standard_cocycle, standardize,
                                      verify_relations, witness_generating_set)

CASES = {"c2c2": "I", "c3c3": "I", "c4c4": "I", "c9sc9": "II", "c8sc4c2": "III", "c4sc2c2": "IV"}


def is_automorphism(G, perm):
    return sorted(perm) == list(range(G.order)) and all(
        perm[G.mul(a, b)] == G.mul(perm[a], perm[b]) for a in range(G.order) for b in range(G.order))


def with_klein(name):
    G = direct([load_group(f"bundled:{name}"), direct([cyclic(2, "d"), cyclic(2, "e")])])
    gs = witness_generating_set(G)
    return G, gs, standard_cocycle(G, gs)


@pytest.mark.parametrize("name", STANDARD_GROUPS)
def test_bundled_cocycle_is_standard_for_the_witness(bundled, name):
    G, c = bundled(name)
    gs = witness_generating_set(G)
    assert gs.case == CASES[name]
    assert c.validate().ok
    assert c.is_nondegenerate()[0]
    assert standardize(c, gs).ok


@pytest.mark.parametrize("name", STANDARD_GROUPS)
def test_round_trip_of_perturbed_standard_cocycles(bundled, name):
    G, c = bundled(name)
    gs = witness_generating_set(G)
    for seed in range(10):
        rng = random.Random(seed)
        c2, phi = perturb_cocycle(c, gs.element_list(), rng)
        assert is_automorphism(G, phi)
        assert c2.validate().ok
        res = standardize(c2, gs)
        report = verify_relations(res, c2)
        assert report.ok, [f.to_json() for f in report.failures]
        assert is_automorphism(G, res.automorphism)
        assert [res.automorphism[g] for g in res.initial.element_list()] == res.generators.element_list()


@pytest.mark.parametrize("name", ["c8sc4c2", "c4sc2c2", "c2c2"])
def test_round_trip_with_an_abelian_factor(name):
    G, gs, c = with_klein(name)
    assert len(gs.gammas) >= 2
    for seed in range(3):
        c2, _ = perturb_cocycle(c, gs.element_list(), random.Random(seed))
        res = standardize(c2, gs)
        assert verify_relations(res, c2).ok


@pytest.mark.parametrize("name", ["c8sc4c2", "c4sc2c2"])
def test_partners_of_order_two_pair_to_minus_one(name):
    G, gs, c = with_klein(name)
    c2, _ = perturb_cocycle(c, gs.element_list(), random.Random(4))
    res = standardize(c2, gs)
    g1, g2 = res.generators.gammas[:2]
    e = res.generators.elements
    assert c2.pairing(e[g1], e[g2]) == RootOfUnity(2, 1)
    assert c2.pairing(e["tau"], e[g1]).is_one() and c2.pairing(e["tau"], e[g2]).is_one()


def central_element(G):
    return next(z for z in range(1, G.order) if all(G.commute(z, h) for h in range(G.order)))


@pytest.mark.parametrize("name", STANDARD_GROUPS)
def test_degenerate_cocycles_are_rejected(bundled, name):
    G, _ = bundled(name)
    gs = witness_generating_set(G)
    for c in (Cocycle.trivial(G), inflated_bilinear(G, [central_element(G)])):
        assert c.validate().ok
        assert not c.is_nondegenerate()[0]
        with pytest.raises(DegenerateCocycleError):
            standardize(c, gs)


def test_degenerate_cocycle_after_perturbation_is_still_rejected(bundled):
    G, _ = bundled("c8sc4c2")
    gs = witness_generating_set(G)
    c = inflated_bilinear(G, [central_element(G)])
    c2, _ = perturb_cocycle(c, gs.element_list(), random.Random(1))
    with pytest.raises(DegenerateCocycleError):
        standardize(c2, gs)


def test_normalize_orders_on_cyclic_two():
    G = cyclic(2)
    minus = Cocycle.from_function(G, lambda g, h: RootOfUnity(2, 1) if g == h == 1 else RootOfUnity())
    gs = generating_set_from_words(G, "I", {"gamma1": "a"})
    lam = normalize_orders(minus, gs)["gamma1"]
    assert lam.order() == 4
    assert (lam ** 2) == RootOfUnity(2, 1)
    assert normalize_orders(Cocycle.trivial(G), gs)["gamma1"].is_one()


def test_trivial_group_has_empty_standard_form():
    G = cyclic(1)
    res = standardize(Cocycle.trivial(G))
    assert res.case == "I" and res.steps == [] and res.ok
    assert res.report.checks == []


def test_swapping_partners_breaks_the_relations(bundled):
    G, c = bundled("c4c4")
    res = standardize(c)
    gs = res.generators.copy()
    a, b = gs.gammas[:2]
    gs.elements[a], gs.elements[b] = gs.elements[b], gs.elements[a]
    reps = {x: (gs.elements[x], res.scalars[x if x not in (a, b) else (b if x == a else a)]) for x in gs.names}
    assert not check_relations(c, gs, reps, res.epsilon).ok


@pytest.mark.parametrize("name", ["c9sc9", "c8sc4c2", "c4sc2c2"])
def test_wrong_epsilon_breaks_the_relations(bundled, name):
    G, c = bundled(name)
    res = standardize(c)
    assert not check_relations(c, res.generators, res.representatives(), res.epsilon.inverse()).ok


@pytest.mark.parametrize("name", STANDARD_GROUPS)
def test_dropping_the_last_step_leaves_a_failing_relation(bundled, name):
    G, c = bundled(name)
    gs = witness_generating_set(G)
    checked = 0
    for seed in range(10):
        c2, _ = perturb_cocycle(c, gs.element_list(), random.Random(seed))
        res = standardize(c2, gs)
        if not res.steps:
            continue
        prev = res.steps[-2].generators if len(res.steps) > 1 else res.initial
        scalars = normalize_orders(c2, prev)
        if "pi" in prev.elements:
            scalars["pi"] = res.scalars["pi"] if prev.elements["pi"] == res.generators.elements["pi"] else scalars["pi"]
        reps = {x: (prev.elements[x], scalars[x]) for x in prev.names}
        if res.steps[-1].kind != "Swap":
            assert not check_relations(c2, prev, reps, res.epsilon).ok
            checked += 1
    assert checked or name in ("c2c2",)


def test_result_serializes(bundled):
    G, c = bundled("c8sc4c2")
    c2, _ = perturb_cocycle(c, witness_generating_set(G).element_list(), random.Random(0))
    res = standardize(c2)
    doc = json.loads(json.dumps(res.to_json(G)))
    assert doc["case"] == "III" and doc["relations"]["ok"]
    assert len(doc["steps"]) == len(res.steps)


def test_standard_forms_only_for_p_groups(bundled):
    G, _ = bundled("c2c2c3c3")
    with pytest.raises(StandardFormError):
        standardize(Cocycle.trivial(G))


def test_group_off_the_list_is_rejected(bundled):
    G, _ = bundled("c4c2")
    with pytest.raises(StandardFormError):
        witness_generating_set(G)


def test_missing_core_generator_is_reported(bundled):
    G, _ = bundled("c9sc9")
    with pytest.raises(StandardFormError):
        generating_set_from_words(G, "II", {"pi": "pi"}, {"n": 2, "s": 1})


def test_wrong_case_tag_is_rejected(bundled):
    G, c = bundled("c9sc9")
    gs = witness_generating_set(G)
    gs.case = "III"
    with pytest.raises(StandardFormError):
        standardize(c, gs)


def test_random_automorphism_is_an_automorphism(bundled):
    G, _ = bundled("c9sc9")
    gens = witness_generating_set(G).element_list()
    for seed in range(5):
        assert is_automorphism(G, random_automorphism(G, gens, random.Random(seed)))
