"""Membership in the list of nilpotent groups whose Sylow subgroups are all of the
shapes below, with explicit generator witnesses.

Per prime p the Sylow subgroup P must be one of

* Type1: abelian of symmetric type A x A;
* Type2: G1 x G2 with G1 = <pi, sigma | pi^(p^n) = sigma^(p^n) = 1,
  sigma pi sigma^-1 = pi^(p^s + 1)>, 1 <= s < n (s != 1 when p = 2), and G2
  abelian of symmetric type with exponent <= p^s;
* Type3: G1 x G2 with G1 = <pi, sigma, tau | pi^(2^(n+1)) = sigma^(2^n) = tau^2 = 1,
  sigma tau = tau sigma, sigma pi sigma^-1 = pi^3, tau pi tau^-1 = pi^-1>,
  n >= 2, and G2 elementary abelian of even rank.

For n = 1 the Type3 presentation collapses to C4 x| (C2 x C2); it is reported as
Type4 with generators rewritten to sigma pi sigma^-1 = pi^3 and tau central in G1,
the form used by the standard-form algorithm.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Sequence

import numpy as np
from sympy import factorint

from .group_core import (Group, GroupError, Subgroup, abelian_basis, invariants_from_orders,
                         is_nilpotent, sylow_decomposition)


@dataclass
class PrimeComponent:
    prime: int
    kind: str  # Type1 | Type2 | Type3 | Type4 | NotOnList
    generators: dict = field(default_factory=dict)  # name -> element index in the ambient group
    params: dict = field(default_factory=dict)
    complement: list = field(default_factory=list)  # basis of G2, symmetric pairs consecutive
    reason: str = ""

    @property
    def on_list(self) -> bool:
        return self.kind != "NotOnList"

    def to_json(self, G: Group) -> dict:
        out = {"type": self.kind, "params": self.params,
               "generators": {k: G.name(v) for k, v in self.generators.items()},
               "complement": [G.name(g) for g in self.complement]}
        if self.reason:
            out["reason"] = self.reason
        return out


@dataclass
class LambdaWitness:
    on_list: bool
    primes: dict
    reason: str = ""

    def to_json(self, G: Group) -> dict:
        return {"on_list": self.on_list,
                "primes": {str(p): comp.to_json(G) for p, comp in sorted(self.primes.items())},
                "witness": {str(p): comp.generators and {k: G.name(v) for k, v in comp.generators.items()}
                            for p, comp in sorted(self.primes.items()) if comp.on_list},
                "reason": self.reason}


# ---------------------------------------------------------------- symmetric type

def is_symmetric_type(A: Group, members: Sequence[int] | None = None) -> list[tuple[int, int]] | None:
    """Invariant factors paired as [(d, d), ...] (largest first) or None."""
    members = list(range(A.order)) if members is None else list(members)
    ms = set(members)
    for a in members:
        for b in members:
            if A.mul(a, b) != A.mul(b, a):
                raise GroupError("symmetric type is only defined for abelian groups")
    orders = [A.element_order(g) for g in members]
    inv = sorted(invariants_from_orders(orders), reverse=True)
    if len(inv) % 2:
        return None
    pairs = []
    for k in range(0, len(inv), 2):
        if inv[k] != inv[k + 1]:
            return None
        pairs.append((inv[k], inv[k + 1]))
    return pairs


def symplectic_ready_basis(G: Group, members: Sequence[int]) -> list[int]:
    """Independent generators ordered so that equal orders are consecutive, largest first."""
    if len(members) <= 1:
        return []
    return abelian_basis(G, members)


def complement_admissible(G: Group, members: Sequence[int], exponent_bound: int) -> bool:
    """A complement must be abelian of symmetric type with exponent <= exponent_bound."""
    if any(G.element_order(g) > exponent_bound for g in members):
        return False
    try:
        return is_symmetric_type(G, members) is not None
    except GroupError:
        return False


# ---------------------------------------------------------------- search helpers

def _centralizer_of(G: Group, gens: Sequence[int]) -> list[int]:
    t = G.np_table
    mask = np.ones(G.order, dtype=bool)
    for g in gens:
        mask &= t[g] == t[:, g]
    return np.nonzero(mask)[0].tolist()


def _find_complement(G: Group, core: frozenset, target: int, candidates: Sequence[int],
                     limit: int = 20000) -> frozenset | None:
    """Subgroup of order ``target`` generated by candidates and meeting ``core`` trivially."""
    if target == 1:
        return frozenset([0])
    pool = [x for x in candidates if x not in core]
    seen: set = set()
    stack = [frozenset([0])]
    steps = 0
    while stack:
        H = stack.pop()
        steps += 1
        if steps > limit:
            return None
        for x in pool:
            if x in H:
                continue
            K = G.generated(list(H) + [x]).members_set
            if len(K) > target or K in seen:
                continue
            seen.add(K)
            if len(K & core) > 1:
                continue
            if len(K) == target:
                return K
            stack.append(K)
    return None


def _power_map(G: Group, k: int) -> np.ndarray:
    out = np.zeros(G.order, dtype=np.int64)
    for g in range(G.order):
        out[g] = G.power(g, k)
    return out


def _search_type2(G: Group, p: int, orders: list[int]) -> PrimeComponent | None:
    N = G.order
    t = G.np_table
    inv = np.asarray(G.inverse_table)
    max_e = max(orders)
    n = 1
    while p ** (n + 1) <= max_e:
        n += 1
    for n in range(n, 1, -1):
        q = p ** n
        if q * q > N:
            continue
        cand = [g for g in range(N) if orders[g] == q]
        for s in range(1, n):
            if p == 2 and s == 1:
                continue
            e = p ** s + 1
            for pi in cand:
                target_img = G.power(pi, e)
                # sigma pi sigma^-1 == pi^e
                conj = t[t[np.asarray(cand), pi], inv[np.asarray(cand)]]
                sigmas = [cand[j] for j in np.nonzero(conj == target_img)[0].tolist()]
                for sigma in sigmas:
                    G1 = G.generated([pi, sigma]).members_set
                    if len(G1) != q * q:
                        continue
                    rest = N // (q * q)
                    C = _centralizer_of(G, [pi, sigma])
                    H = _find_complement(G, G1, rest, C)
                    if H is None or not complement_admissible(G, sorted(H), p ** s):
                        continue
                    return PrimeComponent(p, "Type2", {"pi": pi, "sigma": sigma},
                                          {"p": p, "n": n, "s": s},
                                          symplectic_ready_basis(G, sorted(H)))
    return None


def _search_type3(G: Group, orders: list[int]) -> PrimeComponent | None:
    N = G.order
    t = G.np_table
    inv = np.asarray(G.inverse_table)
    max_e = max(orders)
    n_max = 0
    while 2 ** (n_max + 2) <= max_e:
        n_max += 1
    for n in range(n_max, 0, -1):
        size = 2 ** (2 * n + 2)
        if size > N or N % size:
            continue
        pis = [g for g in range(N) if orders[g] == 2 ** (n + 1)]
        sig_all = np.asarray([g for g in range(N) if orders[g] == 2 ** n])
        tau_all = np.asarray([g for g in range(N) if orders[g] == 2])
        for pi in pis:
            cube, pinv = G.power(pi, 3), G.inv(pi)
            sigmas = sig_all[t[t[sig_all, pi], inv[sig_all]] == cube].tolist()
            taus = tau_all[t[t[tau_all, pi], inv[tau_all]] == pinv].tolist()
            for sigma in sigmas:
                for tau in taus:
                    if t[sigma, tau] != t[tau, sigma] or tau == sigma:
                        continue
                    G1 = G.generated([pi, sigma, tau]).members_set
                    if len(G1) != size:
                        continue
                    C = _centralizer_of(G, [pi, sigma, tau])
                    H = _find_complement(G, G1, N // size, C)
                    if H is None or not complement_admissible(G, sorted(H), 2):
                        continue
                    basis = symplectic_ready_basis(G, sorted(H))
                    if n == 1:
                        return PrimeComponent(2, "Type4", {"pi": pi, "sigma": sigma,
                                                           "tau": G.mul(sigma, tau)},
                                              {"p": 2, "n": 1}, basis)
                    return PrimeComponent(2, "Type3", {"pi": pi, "sigma": sigma, "tau": tau},
                                          {"p": 2, "n": n}, basis)
    return None


# ---------------------------------------------------------------- classification

def classify_lambda_p(P: Group, p: int | None = None) -> PrimeComponent:
    """Classify a p-group; generator indices refer to P."""
    primes = list(factorint(P.order))
    if P.order == 1:
        return PrimeComponent(p or 1, "Type1", params={"pairs": []})
    if len(primes) != 1:
        raise GroupError("classify_lambda_p expects a p-group")
    p = primes[0]
    if P.is_abelian():
        pairs = is_symmetric_type(P)
        if pairs is None:
            inv = invariants_from_orders(P.element_orders())
            return PrimeComponent(p, "NotOnList",
                                  reason=f"Sylow {p}-subgroup is abelian with invariants {inv}, "
                                         f"not of symmetric type")
        return PrimeComponent(p, "Type1", params={"p": p, "pairs": [list(x) for x in pairs]},
                              complement=symplectic_ready_basis(P, range(P.order)))
    orders = P.element_orders()
    comp = _search_type2(P, p, orders)
    if comp is None and p == 2:
        comp = _search_type3(P, orders)
    if comp is None:
        return PrimeComponent(p, "NotOnList",
                              reason=f"Sylow {p}-subgroup is nonabelian and admits none of the "
                                     f"listed presentations")
    return comp


def verify_component(G: Group, comp: PrimeComponent) -> list[str]:
    """Re-check every defining relation of a witness by table multiplication."""
    problems = []
    g = comp.generators
    prm = comp.params
    order = G.element_order
    if comp.kind == "Type2":
        p, n, s = prm["p"], prm["n"], prm["s"]
        pi, sigma = g["pi"], g["sigma"]
        if order(pi) != p ** n or order(sigma) != p ** n:
            problems.append("generator orders")
        if G.conj(sigma, pi) != G.power(pi, p ** s + 1):
            problems.append("sigma pi sigma^-1 = pi^(p^s+1)")
        if not (1 <= s < n) or (p == 2 and s == 1):
            problems.append("parameter range")
        bound = p ** s
    elif comp.kind in ("Type3", "Type4"):
        n = prm["n"]
        pi, sigma, tau = g["pi"], g["sigma"], g["tau"]
        if order(pi) != 2 ** (n + 1) or order(sigma) != 2 ** n or order(tau) != 2:
            problems.append("generator orders")
        if G.conj(sigma, pi) != G.power(pi, 3):
            problems.append("sigma pi sigma^-1 = pi^3")
        expected = pi if comp.kind == "Type4" else G.inv(pi)
        if G.conj(tau, pi) != expected:
            problems.append("tau pi tau^-1")
        if not G.commute(sigma, tau):
            problems.append("sigma tau = tau sigma")
        bound = 2
    elif comp.kind == "Type1":
        bound = None
    else:
        return problems
    core = G.generated(list(g.values())).members_set if g else frozenset([0])
    H = G.generated(comp.complement).members_set
    if len(core) * len(H) != len({G.mul(a, b) for a in core for b in H}):
        problems.append("complement meets the first factor")
    for x in comp.complement:
        for y in g.values():
            if not G.commute(x, y):
                problems.append("complement does not centralize the first factor")
    if bound is not None and not complement_admissible(G, sorted(H), bound):
        problems.append("complement is not of symmetric type within the exponent bound")
    return problems


def is_on_lambda(G: Group) -> LambdaWitness:
    if not is_nilpotent(G):
        return LambdaWitness(False, {}, "not nilpotent")
    primes = {}
    for p, S in sylow_decomposition(G).items():
        P, emb = S.as_group()
        comp = classify_lambda_p(P, p)
        comp.generators = {k: emb[v] for k, v in comp.generators.items()}
        comp.complement = [emb[v] for v in comp.complement]
        primes[p] = comp
    bad = [c for c in primes.values() if not c.on_list]
    reason = "; ".join(c.reason for c in bad)
    return LambdaWitness(not bad, primes, reason)
