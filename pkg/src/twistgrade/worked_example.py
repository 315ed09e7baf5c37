"""The S3 x| C6 example: a non-nilpotent group of central type whose generic
algebra has zero divisors, with an explicit nilpotent element and a cubic
polynomial identity written through elementary identities.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from importlib import resources

from .cocycle import Cocycle, cocycle_from_spec
from .graded_identities import (GradedMonomial, GradedPolynomial, as_elementary_combination,
                                decide_identity, homogeneous_decomposition)
from .group_core import Group, from_spec
from .lambda_recognition import is_on_lambda
from .scalars import Cyclo, RootOfUnity
from .twisted_algebra import TwistedAlgebra, nilpotency_index

OMEGA = RootOfUnity(3, 1)

# f = A - omega B with A = x_sigma x_tau^2 x_y^3 and B = x_tau x_y x_tau x_y^2 x_sigma
A_WORD = "x(1,sigma)*x(1,tau)^2*x(1,y)^3"
B_WORD = "x(1,tau)*x(1,y)*x(1,tau)*x(1,y)^2*x(1,sigma)"

# The published decomposition of f^3, row by row: omega^k1 * Z1 - omega^k2 * Z2.
# Words are in A and B; the x_sigma closing B in the second row is restored.
PUBLISHED_ROWS = [
    (0, "AAA", 0, "BBB"),
    (2, "BAA", 1, "AAB"),
    (0, "BAA", 1, "ABA"),
    (2, "ABB", 0, "BBA"),
    (2, "BAB", 1, "BBA"),
]


@dataclass
class Check:
    name: str
    ok: bool
    detail: object = None

    def to_json(self) -> dict:
        out = {"check": self.name, "ok": self.ok}
        if self.detail is not None:
            out["detail"] = self.detail
        return out


def load_example() -> tuple[Group, Cocycle]:
    doc = json.loads(resources.files("twistgrade.data").joinpath("s3c6.json").read_text())
    G = from_spec(doc["group"])
    return G, cocycle_from_spec(doc["cocycle"], G)


def example_polynomial(G: Group, omega_power: int = 1) -> GradedPolynomial:
    w = Cyclo.root(3, omega_power)
    return GradedPolynomial.parse(A_WORD, G) - GradedPolynomial.parse(B_WORD, G) * w


def _word(G: Group, pattern: str) -> GradedMonomial:
    parts = {"A": GradedPolynomial.parse(A_WORD, G).monomials()[0],
             "B": GradedPolynomial.parse(B_WORD, G).monomials()[0]}
    out = GradedMonomial(())
    for ch in pattern:
        out = out * parts[ch]
    return out


def published_combination(G: Group) -> GradedPolynomial:
    total = GradedPolynomial()
    for k1, z1, k2, z2 in PUBLISHED_ROWS:
        total = total + GradedPolynomial({_word(G, z1): Cyclo.root(3, k1)})
        total = total - GradedPolynomial({_word(G, z2): Cyclo.root(3, k2)})
    return total


def published_rows_convention(G: Group, c: Cocycle) -> str | None:
    """Which of c and its complex conjugate makes every published row an identity."""
    conj = Cocycle(G, c.conductor, -c.exp)
    rows = [GradedPolynomial({_word(G, z1): Cyclo.root(3, k1)})
            - GradedPolynomial({_word(G, z2): Cyclo.root(3, k2)}) for k1, z1, k2, z2 in PUBLISHED_ROWS]
    for name, x in (("cocycle", c), ("conjugate cocycle", conj)):
        if all(decide_identity(r, x) for r in rows):
            return name
    return None


def run_example(c: Cocycle | None = None, omega_power: int = 1) -> list[Check]:
    """All checks of the example; stops after a failed nondegeneracy check."""
    G, c0 = load_example()
    c = c0 if c is None else c
    checks = []
    rep = c.validate(limit=3)
    checks.append(Check("cocycle identity holds", rep.ok, rep.violation_count))
    nondeg, _ = c.is_nondegenerate()
    checks.append(Check("cocycle is nondegenerate", nondeg))
    if not nondeg:
        return checks
    lam = is_on_lambda(G)
    checks.append(Check("group is not on the list (not nilpotent)",
                        not lam.on_list and lam.reason == "not nilpotent"))

    alg = TwistedAlgebra(c)
    checks.append(Check("u_1 = u_tau^2 u_y^3", alg.parse("u(tau)^2*u(y)^3") == alg.one()))
    checks.append(Check("u_y = omega u_tau u_y u_tau u_y^2",
                        alg.parse("u(y)") == alg.parse("w3*u(tau)*u(y)*u(tau)*u(y)^2")))
    checks.append(Check("c(y, sigma) = omega^2",
                        c.value(G.element("y"), G.element("sigma")) == OMEGA ** 2))
    idx = nilpotency_index(alg.parse("u(sigma) - u(y)*u(sigma)"), 6)
    checks.append(Check("u_sigma - u_y u_sigma has nilpotency index 3", idx == 3, idx))

    f = example_polynomial(G, omega_power)
    for k, expected in ((1, False), (2, False), (3, True)):
        got = decide_identity(f ** k, c)
        checks.append(Check(f"f^{k} is {'an' if expected else 'not an'} identity", got == expected, got))
    f3 = f ** 3
    comps = homogeneous_decomposition(f3, G)
    checks.append(Check("f^3 homogeneous components", True, len(comps)))
    diff = f3 - published_combination(G)
    checks.append(Check("f^3 equals the published combination term by term", diff.is_zero(),
                        {"difference_terms": len(diff.monomials())}))
    conv = published_rows_convention(G, c)
    checks.append(Check("published rows are elementary identities up to conjugating omega",
                        conv is not None, conv))
    if got:
        combo = as_elementary_combination(f3, c)
        total = GradedPolynomial()
        for a, B in combo:
            total = total + B.polynomial() * a
        checks.append(Check("f^3 equals a combination of elementary identities of this cocycle",
                            (f3 - total).is_zero(),
                            [{"scale": str(a), "identity": B.render(G)} for a, B in combo]))
    return checks
