"""Bring a nondegenerate cocycle on a group of the list into standard form.

The group is fixed; what moves is the generating set.  Each step replaces one
generator by a power of itself, multiplies it by a word in the others, or swaps
two generators, and every step is checked to induce an automorphism of G.  At
the end the representatives u_g (suitably rescaled) satisfy the relation set of
the case:

* I: commuting generators gamma_1..gamma_2m with (u_g(2k-1), u_g(2k)) a
  primitive root of order ord(gamma_2k-1), all other commutators trivial;
* II: u_sigma u_pi u_sigma^-1 = eps u_pi^(p^s+1) plus case I on the gammas;
* III: u_sigma u_pi = eps u_pi^3 u_sigma, u_tau u_pi = eps^-1 u_pi^-1 u_tau,
  u_tau u_sigma = u_sigma u_tau, partners pairing to -1;
* IV: as III with u_tau u_pi = -u_pi u_tau.

Every generator also satisfies u_g^ord(g) = 1 after rescaling.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from typing import Mapping, Sequence

from sympy import factorint

from .cocycle import Cocycle, random_cochain
from .group_core import Group, GroupError, extend_to_automorphism
from .scalars import ONE, RootOfUnity

MINUS_ONE = RootOfUnity(2, 1)


class StandardFormError(ValueError):
    pass


class DegenerateCocycleError(StandardFormError):
    """Raised when a step that needs nondegeneracy finds a counterexample."""


# ---------------------------------------------------------------- generating sets

CORE_NAMES = {"I": (), "II": ("pi", "sigma"), "III": ("pi", "sigma", "tau"), "IV": ("pi", "sigma", "tau")}


@dataclass
class GeneratingSet:
    case: str
    names: list  # pi?, sigma?, tau?, gamma1, ...
    elements: dict  # name -> element index
    orders: dict  # name -> declared order
    params: dict = field(default_factory=dict)

    def copy(self) -> "GeneratingSet":
        return GeneratingSet(self.case, list(self.names), dict(self.elements),
                             dict(self.orders), dict(self.params))

    @property
    def gammas(self) -> list[str]:
        return [x for x in self.names if x.startswith("gamma")]

    def element_list(self) -> list[int]:
        return [self.elements[x] for x in self.names]

    def to_json(self, G: Group) -> dict:
        return {"case": self.case, "params": self.params,
                "generators": {x: G.name(self.elements[x]) for x in self.names}}


def generating_set_from_witness(G: Group, comp) -> GeneratingSet:
    """Turn a prime component from the list recognizer into an ordered generating set."""
    case = {"Type1": "I", "Type2": "II", "Type3": "III", "Type4": "IV"}.get(comp.kind)
    if case is None:
        raise StandardFormError(f"no standard form for a component of kind {comp.kind}")
    names = list(CORE_NAMES[case])
    elements = {x: comp.generators[x] for x in names}
    for k, g in enumerate(comp.complement, 1):
        names.append(f"gamma{k}")
        elements[f"gamma{k}"] = g
    orders = {x: G.element_order(elements[x]) for x in names}
    params = dict(comp.params)
    params.pop("pairs", None)
    if "p" not in params:
        params["p"] = comp.prime
    return GeneratingSet(case, names, elements, orders, params)


def witness_generating_set(G: Group) -> GeneratingSet:
    """Generating set for a p-group on the list, taken from the recognizer's witness."""
    from .lambda_recognition import is_on_lambda

    if G.order == 1:
        return GeneratingSet("I", [], {}, {}, {"p": 1})
    primes = list(factorint(G.order))
    if len(primes) != 1:
        raise StandardFormError("standard forms are computed for p-groups only")
    w = is_on_lambda(G)
    if not w.on_list:
        raise StandardFormError(f"group is not on the list: {w.reason}")
    return generating_set_from_witness(G, w.primes[primes[0]])


def generating_set_from_words(G: Group, case: str, words: Mapping[str, str],
                              params: Mapping | None = None) -> GeneratingSet:
    names = list(CORE_NAMES[case]) + sorted((x for x in words if x.startswith("gamma")),
                                            key=lambda x: int(x[5:]))
    missing = [x for x in CORE_NAMES[case] if x not in words]
    if missing:
        raise StandardFormError(f"case {case} needs generators {missing}")
    elements = {x: G.element(words[x]) for x in names}
    orders = {x: G.element_order(elements[x]) for x in names}
    params = dict(params or {})
    params.setdefault("p", next(iter(factorint(G.order)), 1))
    return GeneratingSet(case, names, elements, orders, params)


def epsilon_for(gs: GeneratingSet) -> RootOfUnity:
    """The fixed primitive root: zeta_q with exponent 1 for the case's modulus q."""
    if gs.case == "I":
        q = max(gs.orders.values(), default=1)
    elif gs.case == "II":
        q = gs.params["p"] ** gs.params["n"]
    elif gs.case == "III":
        q = 2 ** (gs.params["n"] + 1)
    else:
        q = 4
    return RootOfUnity(q, 1)


def relation_rules(gs: GeneratingSet, eps: RootOfUnity) -> dict:
    """(later, earlier) -> (r, e) meaning u_later u_earlier u_later^-1 = r u_earlier^e.

    Pairs not listed commute with trivial scalar.
    """
    rules = {}
    if gs.case == "II":
        rules[("sigma", "pi")] = (eps, gs.params["p"] ** gs.params["s"] + 1)
    elif gs.case == "III":
        rules[("sigma", "pi")] = (eps, 3)
        rules[("tau", "pi")] = (eps.inverse(), gs.orders["pi"] - 1)
    elif gs.case == "IV":
        rules[("sigma", "pi")] = (eps, 3)
        rules[("tau", "pi")] = (MINUS_ONE, 1)
    gam = gs.gammas
    for k in range(0, len(gam) - 1, 2):
        a, b = gam[k], gam[k + 1]
        # (u_a, u_b) = zeta_ord(a), so u_b u_a u_b^-1 = zeta^-1 u_a
        rules[(b, a)] = (RootOfUnity(gs.orders[a], -1), 1)
    return rules


# ---------------------------------------------------------------- scaled monomials

Mono = tuple  # (element, RootOfUnity): the algebra element lambda * u_g


def _mul(c: Cocycle, a: Mono, b: Mono) -> Mono:
    return c.group.mul(a[0], b[0]), a[1] * b[1] * c.value(a[0], b[0])


def _inv(c: Cocycle, a: Mono) -> Mono:
    gi = c.group.inv(a[0])
    return gi, (a[1] * c.value(a[0], gi)).inverse()


def _pow(c: Cocycle, a: Mono, k: int) -> Mono:
    if k < 0:
        a, k = _inv(c, a), -k
    out = (0, ONE)
    for _ in range(k):
        out = _mul(c, out, a)
    return out


def _conj(c: Cocycle, a: Mono, b: Mono) -> Mono:
    return _mul(c, _mul(c, a, b), _inv(c, a))


def normalize_orders(c: Cocycle, gs: GeneratingSet) -> dict:
    """lambda(g) for g in the generating set with (lambda(g) u_g)^ord(g) = 1."""
    out = {}
    for x in gs.names:
        g, k = gs.elements[x], gs.orders[x]
        path = c.path_coefficient([g] * k)
        out[x] = path.inverse().roots(k)[0]
    return out


# ---------------------------------------------------------------- relation checks

@dataclass
class RelationCheck:
    relation: str
    expected: str
    actual: str
    ok: bool

    def to_json(self) -> dict:
        return {"relation": self.relation, "expected": self.expected,
                "actual": self.actual, "ok": self.ok}


@dataclass
class RelationReport:
    checks: list

    @property
    def ok(self) -> bool:
        return all(ch.ok for ch in self.checks)

    @property
    def failures(self) -> list:
        return [ch for ch in self.checks if not ch.ok]

    def to_json(self) -> dict:
        return {"ok": self.ok, "relations": [ch.to_json() for ch in self.checks]}


def check_relations(c: Cocycle, gs: GeneratingSet, reps: Mapping[str, Mono],
                    eps: RootOfUnity) -> RelationReport:
    """Evaluate every order and conjugation relation of the case on the given representatives."""
    G = c.group
    checks = []
    for x in gs.names:
        k = gs.orders[x]
        g, lam = reps[x]
        actual_order = G.element_order(g)
        val = _pow(c, reps[x], k)
        ok = actual_order == k and val[0] == 0 and val[1].is_one()
        checks.append(RelationCheck(f"u_{x}^{k} = 1", "1",
                                    str(val[1]) if val[0] == 0 else f"order {actual_order}", ok))
    rules = relation_rules(gs, eps)
    for i, x in enumerate(gs.names):
        for y in gs.names[i + 1:]:
            r, e = rules.get((y, x), (ONE, 1))
            lhs = _conj(c, reps[y], reps[x])
            rhs = _pow(c, reps[x], e % gs.orders[x])
            if lhs[0] != rhs[0]:
                actual, ok = "group relation fails", False
            else:
                coef = lhs[1] / rhs[1]
                actual, ok = str(coef), coef == r
            if e == 1:
                name = f"(u_{y}, u_{x}) = {r}"
            else:
                name = f"u_{y} u_{x} u_{y}^-1 = {r} u_{x}^{e}"
            checks.append(RelationCheck(name, str(r), actual, ok))
    return RelationReport(checks)


# ---------------------------------------------------------------- results

@dataclass
class AutoStep:
    kind: str  # ReplacePower | MultiplyBy | Swap
    target: str
    detail: object  # exponent, word [(name, exp)], or the other generator
    description: str
    generators: GeneratingSet

    def to_json(self, G: Group) -> dict:
        return {"kind": self.kind, "target": self.target, "description": self.description,
                "generators": self.generators.to_json(G)["generators"]}


@dataclass
class StandardFormResult:
    case: str
    initial: GeneratingSet
    generators: GeneratingSet
    steps: list
    scalars: dict  # name -> lambda with lambda u_g the standard representative
    epsilon: RootOfUnity
    report: RelationReport
    automorphism: list  # permutation of G sending the initial generators to the final ones

    @property
    def ok(self) -> bool:
        return self.report.ok

    def representatives(self) -> dict:
        return {x: (self.generators.elements[x], self.scalars[x]) for x in self.generators.names}

    def to_json(self, G: Group) -> dict:
        return {"case": self.case, "epsilon": str(self.epsilon),
                "initial": self.initial.to_json(G)["generators"],
                "final": self.generators.to_json(G)["generators"],
                "steps": [s.to_json(G) for s in self.steps],
                "scalars": {x: str(v) for x, v in self.scalars.items()},
                "relations": self.report.to_json()}


def verify_relations(result: StandardFormResult, c: Cocycle) -> RelationReport:
    return check_relations(c, result.generators, result.representatives(), result.epsilon)


# ---------------------------------------------------------------- the step engine

class _Run:
    def __init__(self, c: Cocycle, gs: GeneratingSet):
        self.c = c
        self.G = c.group
        self.initial = gs.copy()
        self.gs = gs.copy()
        self.steps: list[AutoStep] = []
        self.eps = epsilon_for(gs)
        self.pi_rep: Mono | None = None
        if "pi" in gs.elements:
            g = gs.elements["pi"]
            self.pi_rep = (g, normalize_orders(c, gs)["pi"])

    # group helpers
    def el(self, x: str) -> int:
        return self.gs.elements[x]

    def word(self, parts: Sequence[tuple[str, int]]) -> int:
        G = self.G
        return G.product(G.power(self.el(x), k) for x, k in parts)

    def pairing(self, a: int, b: int) -> RootOfUnity:
        return self.c.pairing(a, b)

    def _record(self, kind, target, detail, description):
        f = extend_to_automorphism(self.G, self.initial.element_list(), self.gs.element_list())
        if f is None:
            raise StandardFormError(f"step '{description}' does not induce an automorphism")
        self.steps.append(AutoStep(kind, target, detail, description, self.gs.copy()))

    # elementary moves
    def replace_power(self, x: str, k: int) -> None:
        k %= self.gs.orders[x]
        if k == 1:
            return
        self.gs.elements[x] = self.G.power(self.el(x), k)
        if x == "pi":
            self.pi_rep = _pow(self.c, self.pi_rep, k)
        self._record("ReplacePower", x, k, f"{x} := {x}^{k}")

    def multiply_by(self, x: str, parts: Sequence[tuple[str, int]]) -> None:
        parts = [(y, k % self.gs.orders[y]) for y, k in parts]
        parts = [(y, k) for y, k in parts if k]
        if not parts:
            return
        if x == "pi":
            raise StandardFormError("pi is only ever replaced by its powers")
        self.gs.elements[x] = self.G.mul(self.el(x), self.word(parts))
        text = " * ".join(y if k == 1 else f"{y}^{k}" for y, k in parts)
        self._record("MultiplyBy", x, parts, f"{x} := {x} * {text}")

    def swap(self, x: str, y: str) -> None:
        if x == y:
            return
        e = self.gs.elements
        e[x], e[y] = e[y], e[x]
        o = self.gs.orders
        if o[x] != o[y]:
            raise StandardFormError(f"cannot swap {x} and {y} of different orders")
        self._record("Swap", x, y, f"swap {x} <-> {y}")

    # scalar readings
    def conj_coefficient(self, x: str, e: int) -> RootOfUnity:
        """a with u_x u_pi u_x^-1 = a u_pi^e for the tracked pi representative."""
        lhs = _conj(self.c, (self.el(x), ONE), self.pi_rep)
        rhs = _pow(self.c, self.pi_rep, e)
        if lhs[0] != rhs[0]:
            raise StandardFormError(f"{x} does not act on pi by the power {e}")
        return lhs[1] / rhs[1]

    def make_alpha_epsilon(self, e: int) -> None:
        q = self.eps.order()
        alpha = self.conj_coefficient("sigma", e)
        if alpha.order() != q:
            raise DegenerateCocycleError(
                f"alpha = {alpha} is not a primitive {q}-th root of unity")
        self.replace_power("pi", pow(alpha.exponent_in(q), -1, q))

    # case I core
    def symplectic(self, names: Sequence[str]) -> None:
        names = list(names)
        pos = 0
        while pos < len(names):
            rem = names[pos:]
            top = max(self.gs.orders[x] for x in rem)
            x = next(y for y in rem if self.gs.orders[y] == top)
            self.swap(names[pos], x)
            x = names[pos]
            partner = next((y for y in names[pos + 1:]
                            if self.pairing(self.el(x), self.el(y)).order() == top), None)
            if partner is None:
                raise DegenerateCocycleError(
                    f"{x} pairs with no generator to a root of order {top}: the pairing is degenerate")
            self.swap(names[pos + 1], partner)
            y = names[pos + 1]
            j = self.pairing(self.el(x), self.el(y)).exponent_in(top)
            self.replace_power(y, pow(j, -1, top))
            for b in names[pos + 2:]:
                bx = self.pairing(self.el(b), self.el(x)).exponent_in(top)
                by = self.pairing(self.el(b), self.el(y)).exponent_in(top)
                self.multiply_by(b, [(x, -by), (y, bx)])
            pos += 2

    def partner_cleanup(self) -> None:
        gam = self.gs.gammas
        for k in range(0, len(gam), 2):
            a, b = gam[k], gam[k + 1]
            if self.pairing(self.el(a), self.el("tau")) == MINUS_ONE:
                self.multiply_by("tau", [(b, 1)])
            if self.pairing(self.el(b), self.el("tau")) == MINUS_ONE:
                self.multiply_by("tau", [(a, 1)])

    def finish(self) -> StandardFormResult:
        scalars = normalize_orders(self.c, self.gs)
        if self.pi_rep is not None:
            scalars["pi"] = self.pi_rep[1]
        perm = extend_to_automorphism(self.G, self.initial.element_list(), self.gs.element_list())
        reps = {x: (self.gs.elements[x], scalars[x]) for x in self.gs.names}
        report = check_relations(self.c, self.gs, reps, self.eps)
        return StandardFormResult(self.gs.case, self.initial, self.gs.copy(), self.steps,
                                  scalars, self.eps, report, perm)


def _check_input(c: Cocycle, gs: GeneratingSet, case: str) -> None:
    if gs.case != case:
        raise StandardFormError(f"generating set is tagged {gs.case}, expected {case}")
    if len(gs.gammas) % 2:
        raise StandardFormError("the abelian part needs an even number of generators")
    if extend_to_automorphism(c.group, gs.element_list(), gs.element_list()) is None:
        raise StandardFormError("the generators do not generate the group")


def standardize_abelian(G: Group, c: Cocycle, gs: GeneratingSet) -> StandardFormResult:
    """Symplectic reduction: greedy hyperbolic pairs of maximal pairing order."""
    _check_input(c, gs, "I")
    run = _Run(c, gs)
    run.symplectic(run.gs.gammas)
    return run.finish()


def standardize_case2(G: Group, c: Cocycle, gs: GeneratingSet) -> StandardFormResult:
    _check_input(c, gs, "II")
    run = _Run(c, gs)
    p, n, s = gs.params["p"], gs.params["n"], gs.params["s"]
    step = p ** (n - s)
    run.make_alpha_epsilon(p ** s + 1)

    zeta = run.pairing(run.word([("sigma", step)]), run.el("pi"))
    if zeta.order() != p ** s:
        raise DegenerateCocycleError(f"(u_sigma^{step}, u_pi) = {zeta} does not have order {p ** s}")
    for x in run.gs.gammas:
        xi = run.pairing(run.el(x), run.el("pi"))
        l = next((l for l in range(p ** s) if zeta ** l == xi), None)
        if l is None:
            raise DegenerateCocycleError(f"(u_{x}, u_pi) = {xi} is not a power of {zeta}")
        run.multiply_by(x, [("sigma", -l * step)])
    for x in run.gs.gammas:
        t = next((t for t in range(p ** s + 1)
                  if run.pairing(run.G.mul(run.el(x), run.word([("pi", -t * step)])),
                                 run.el("sigma")).is_one()), None)
        if t is None:
            raise DegenerateCocycleError(f"no power of pi^{step} clears (u_{x}, u_sigma)")
        run.multiply_by(x, [("pi", -t * step)])
    run.symplectic(run.gs.gammas)
    return run.finish()


def _clean_gammas(run: _Run, clear_pi: tuple[str, int], clear_sigma: tuple[str, int]) -> None:
    for x in run.gs.gammas:
        if run.pairing(run.el(x), run.el("pi")) == MINUS_ONE:
            run.multiply_by(x, [clear_pi])
        if run.pairing(run.el(x), run.el("sigma")) == MINUS_ONE:
            run.multiply_by(x, [clear_sigma])
        for y in ("pi", "sigma"):
            v = run.pairing(run.el(x), run.el(y))
            if not v.is_one():
                raise DegenerateCocycleError(f"(u_{x}, u_{y}) = {v} could not be cleared")


def standardize_case3(G: Group, c: Cocycle, gs: GeneratingSet) -> StandardFormResult:
    _check_input(c, gs, "III")
    n = gs.params["n"]
    if n < 2:
        raise StandardFormError("case III needs n >= 2; n = 1 is case IV")
    run = _Run(c, gs)
    run.make_alpha_epsilon(3)
    if run.pairing(run.el("sigma"), run.el("tau")) == MINUS_ONE:
        run.multiply_by("tau", [("pi", 2 ** n)])
    inv = run.gs.orders["pi"] - 1
    beta = run.conj_coefficient("tau", inv)
    if beta == run.eps.inverse() * MINUS_ONE:
        run.multiply_by("tau", [("sigma", 2 ** (n - 1))])
        beta = run.conj_coefficient("tau", inv)
    if beta != run.eps.inverse():
        raise DegenerateCocycleError(f"beta = {beta} is not eps^-1 up to sign")
    _clean_gammas(run, ("sigma", 2 ** (n - 1)), ("pi", 2 ** n))
    run.symplectic(run.gs.gammas)
    run.partner_cleanup()
    return run.finish()


def standardize_case4(G: Group, c: Cocycle, gs: GeneratingSet) -> StandardFormResult:
    _check_input(c, gs, "IV")
    run = _Run(c, gs)
    run.make_alpha_epsilon(3)
    h = next((x for x in ["tau"] + run.gs.gammas
              if run.pairing(run.el(x), run.el("pi")) == MINUS_ONE), None)
    if h is None:
        raise DegenerateCocycleError("no central generator pairs to -1 with pi")
    run.swap("tau", h)
    if run.pairing(run.el("tau"), run.el("sigma")) == MINUS_ONE:
        run.multiply_by("tau", [("pi", 2)])
    _clean_gammas(run, ("tau", 1), ("pi", 2))
    run.symplectic(run.gs.gammas)
    run.partner_cleanup()
    return run.finish()


STANDARDIZERS = {"I": standardize_abelian, "II": standardize_case2,
                 "III": standardize_case3, "IV": standardize_case4}


def standardize(c: Cocycle, gs: GeneratingSet | None = None) -> StandardFormResult:
    G = c.group
    gs = witness_generating_set(G) if gs is None else gs
    return STANDARDIZERS[gs.case](G, c, gs)


# ---------------------------------------------------------------- standard cocycles

def standard_cocycle(G: Group, gs: GeneratingSet, eps: RootOfUnity | None = None) -> Cocycle:
    """The cocycle of the basis u_(normal word) for the algebra presented by the case relations.

    Elements are written uniquely as ordered words g_1^a_1 ... g_k^a_k in the
    generators; u of such a word is the ordered product of the U_i, and
    products are collected using U_i^ord_i = 1 and the conjugation rules.
    """
    eps = epsilon_for(gs) if eps is None else eps
    names = gs.names
    K = len(names)
    ords = [gs.orders[x] for x in names]
    gens = [gs.elements[x] for x in names]
    rules = relation_rules(gs, eps)
    rule = [[rules.get((names[k], names[j]), (ONE, 1)) for j in range(K)] for k in range(K)]
    for k in range(K):
        for j in range(k):
            r, e = rule[k][j]
            if G.conj(gens[k], gens[j]) != G.power(gens[j], e):
                raise StandardFormError(f"{names[k]} does not act on {names[j]} by the power {e}")

    vec_of: dict[int, tuple] = {}

    def fill(j, acc, vec):
        if j == K:
            if acc in vec_of:
                raise StandardFormError("ordered words in the generators are not unique")
            vec_of[acc] = tuple(vec)
            return
        x = 0
        for a in range(ords[j]):
            fill(j + 1, G.mul(acc, x), vec + [a])
            x = G.mul(x, gens[j])

    fill(0, 0, [])
    if len(vec_of) != G.order:
        raise StandardFormError("the generators do not give normal forms for every element")

    def collect(va, vb):
        vec = list(va)
        scalar = ONE
        for j in range(K):
            b = vb[j]
            if not b:
                continue
            S, E = ONE, b
            for k in range(K - 1, j, -1):
                r, e = rule[k][j]
                for _ in range(vec[k]):
                    S = S * r ** E
                    E = (e * E) % ords[j]
            scalar = scalar * S
            vec[j] = (vec[j] + E) % ords[j]
        return scalar

    vecs = [vec_of[g] for g in range(G.order)]
    c = Cocycle.from_function(G, lambda g, h: collect(vecs[g], vecs[h]))
    rep = c.validate(limit=1)
    if not rep.ok:
        raise StandardFormError("the case relations do not define a cocycle on these generators")
    return c


def standard_cocycle_from_spec(G: Group, spec: Mapping) -> Cocycle:
    """Spec keys: optional ``case`` with ``generators`` (name -> word) and ``params``."""
    spec = dict(spec or {})
    if "generators" in spec:
        gs = generating_set_from_words(G, spec.get("case", "I"), spec["generators"], spec.get("params"))
    else:
        gs = witness_generating_set(G)
    return standard_cocycle(G, gs)


# ---------------------------------------------------------------- random perturbation

def random_automorphism(G: Group, gens: Sequence[int], rng: random.Random,
                        steps: int = 12, attempts: int = 600) -> list[int]:
    """Random walk on generator images; each accepted move is checked to extend to an automorphism."""
    images = list(gens)
    perm = extend_to_automorphism(G, gens, images)
    if perm is None:
        raise GroupError("generators do not generate the group")
    accepted = 0
    for _ in range(attempts):
        if accepted >= steps:
            break
        cand = list(images)
        i = rng.randrange(len(cand))
        move = rng.randrange(3)
        h = rng.randrange(G.order)
        if move == 0:
            cand[i] = G.mul(cand[i], h)
        elif move == 1:
            cand[i] = G.mul(h, cand[i])
        else:
            cand = [G.conj(h, x) for x in cand]
        f = extend_to_automorphism(G, gens, cand)
        if f is not None:
            images, perm = cand, f
            accepted += 1
    return perm


def perturb_cocycle(c: Cocycle, gens: Sequence[int], rng: random.Random,
                    conductor: int | None = None) -> tuple[Cocycle, list[int]]:
    """Push c forward along a random automorphism and multiply by a random coboundary."""
    G = c.group
    phi = random_automorphism(G, gens, rng)
    lam = random_cochain(G, rng, conductor or 2 * c.conductor)
    return c.pushforward(phi).coboundary_modify(lam), phi
