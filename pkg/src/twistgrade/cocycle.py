"""Normalized 2-cocycles with root-of-unity values, and the generic cocycle.

A concrete cocycle stores an integer exponent table modulo a conductor N,
so c(g, h) = zeta_N ** exp[g, h].
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import gcd, lcm
from typing import Callable, Iterable, Mapping, Sequence

import numpy as np

from .group_core import Group, GroupError
from .scalars import ONE, LaurentCoeff, RootOfUnity, parse_root


class CocycleError(ValueError):
    pass


@dataclass
class ValidationReport:
    ok: bool
    violations: list  # (g, h, k) triples breaking the cocycle identity
    violation_count: int
    normalization: list  # elements g with c(1,g) != 1 or c(g,1) != 1

    def to_json(self, G: Group | None = None):
        name = (lambda g: G.name(g)) if G is not None else (lambda g: g)
        return {
            "ok": self.ok,
            "violation_count": self.violation_count,
            "violations": [[name(a), name(b), name(c)] for a, b, c in self.violations],
            "normalization_failures": [name(g) for g in self.normalization],
        }


class Cocycle:
    def __init__(self, group: Group, conductor: int, exponents):
        self.group = group
        self.conductor = int(conductor)
        e = np.asarray(exponents, dtype=np.int64) % self.conductor
        n = group.order
        if e.shape != (n, n):
            raise CocycleError("cocycle table has the wrong shape")
        self.exp = e
        self._rows = e.tolist()

    # construction
    @classmethod
    def trivial(cls, G: Group) -> "Cocycle":
        return cls(G, 1, np.zeros((G.order, G.order), dtype=np.int64))

    @classmethod
    def from_function(cls, G: Group, f: Callable[[int, int], RootOfUnity]) -> "Cocycle":
        vals = [[f(g, h) for h in range(G.order)] for g in range(G.order)]
        return cls.from_roots(G, vals)

    @classmethod
    def from_roots(cls, G: Group, vals: Sequence[Sequence[RootOfUnity]]) -> "Cocycle":
        N = 1
        for row in vals:
            for v in row:
                N = lcm(N, v.conductor)
        e = [[v.exponent_in(N) for v in row] for row in vals]
        return cls(G, N, e)

    def normalized(self) -> "Cocycle":
        """Divide by the constant c(1,1), which is a coboundary adjustment."""
        k = self._rows[0][0]
        if k == 0:
            return self
        return Cocycle(self.group, self.conductor, self.exp - k)

    # queries
    def value(self, g: int, h: int) -> RootOfUnity:
        return RootOfUnity(self.conductor, self._rows[g][h])

    def __call__(self, g: int, h: int) -> RootOfUnity:
        return self.value(g, h)

    def one(self):
        return ONE

    def validate(self, limit: int = 20) -> ValidationReport:
        G, E, N = self.group, self.exp, self.conductor
        t = G.np_table
        bad: list = []
        count = 0
        for g in range(G.order):
            gh = t[g]  # gh[h]
            lhs = E[g][:, None] + E[gh]  # [h, k]: c(g,h) + c(gh,k)
            rhs = E[g][t] + E  # [h, k]: c(g,hk) + c(h,k)
            diff = (lhs - rhs) % N
            idx = np.argwhere(diff != 0)
            count += len(idx)
            for h, k in idx[: max(0, limit - len(bad))].tolist():
                bad.append((g, h, k))
        norm = sorted(set(np.nonzero(E[0] % N)[0].tolist()) | set(np.nonzero(E[:, 0] % N)[0].tolist()))
        return ValidationReport(count == 0 and not norm, bad, count, norm)

    def is_valid(self) -> bool:
        return self.validate(limit=0).ok

    def pairing(self, g: int, h: int) -> RootOfUnity:
        """c(g,h)/c(h,g) for commuting g and h, the value of the commutator (u_g, u_h)."""
        if not self.group.commute(g, h):
            raise CocycleError(f"{self.group.name(g)} and {self.group.name(h)} do not commute")
        return RootOfUnity(self.conductor, self._rows[g][h] - self._rows[h][g])

    def nondegeneracy_witnesses(self) -> dict[int, int | None]:
        """For each g != 1 the first commuting h with a nontrivial pairing, or None."""
        G = self.group
        t = G.np_table
        comm = t == t.T
        E = self.exp
        diff = (E - E.T) % self.conductor
        out = {}
        for g in range(1, G.order):
            hits = np.nonzero(comm[g] & (diff[g] != 0))[0]
            out[g] = int(hits[0]) if len(hits) else None
        return out

    def is_nondegenerate(self) -> tuple[bool, dict[int, int | None]]:
        w = self.nondegeneracy_witnesses()
        return all(h is not None for h in w.values()), w

    def path_coefficient(self, word: Sequence[int]) -> RootOfUnity:
        """c(g_1,...,g_k) with u_{g_1}...u_{g_k} = c(g_1..g_k) u_{g_1...g_k}."""
        return RootOfUnity(self.conductor, self.path_exponent(word))

    def path_exponent(self, word: Sequence[int]) -> int:
        t, rows = self.group.table, self._rows
        if not word:
            return 0
        acc, e = word[0], 0
        for g in word[1:]:
            e += rows[acc][g]
            acc = t[acc][g]
        return e % self.conductor

    def coboundary_modify(self, lam: Mapping[int, RootOfUnity] | Sequence[RootOfUnity]) -> "Cocycle":
        """(lambda(g) lambda(h) / lambda(gh)) c(g,h) for a normalized cochain lambda."""
        G = self.group
        if isinstance(lam, Mapping):
            vals = [lam.get(g, ONE) for g in range(G.order)]
        else:
            vals = list(lam)
        if not vals[0].is_one():
            raise CocycleError("cochain must satisfy lambda(1) = 1")
        N = lcm(self.conductor, *(v.conductor for v in vals))
        le = np.asarray([v.exponent_in(N) for v in vals], dtype=np.int64)
        scale = N // self.conductor
        t = G.np_table
        e = self.exp * scale + le[:, None] + le[None, :] - le[t]
        return Cocycle(G, N, e).reduced()

    def reduced(self) -> "Cocycle":
        """Same cocycle over the smallest conductor containing its values."""
        g = int(np.gcd.reduce(self.exp.ravel().tolist() + [self.conductor]))
        if g <= 1:
            return self
        return Cocycle(self.group, self.conductor // g, self.exp // g)

    def pushforward(self, phi: Sequence[int]) -> "Cocycle":
        """phi(c)(a, b) = c(phi^-1 a, phi^-1 b) for an automorphism phi given as a permutation."""
        n = self.group.order
        inv = [0] * n
        for g, img in enumerate(phi):
            inv[img] = g
        inv_arr = np.asarray(inv)
        return Cocycle(self.group, self.conductor, self.exp[np.ix_(inv_arr, inv_arr)])

    def inflate_to(self, G: Group, projection: Sequence[int]) -> "Cocycle":
        p = np.asarray(projection)
        return Cocycle(G, self.conductor, self.exp[np.ix_(p, p)])

    def generic(self) -> "GenericCocycle":
        return GenericCocycle(self)

    def equals(self, other: "Cocycle") -> bool:
        N = lcm(self.conductor, other.conductor)
        return bool(np.array_equal(self.exp * (N // self.conductor) % N,
                                   other.exp * (N // other.conductor) % N))

    def values_json(self) -> list:
        G = self.group
        out = []
        for g in range(G.order):
            for h in range(G.order):
                if self._rows[g][h]:
                    out.append([G.name(g), G.name(h), str(self.value(g, h))])
        return out

    def __repr__(self):
        return f"Cocycle(order={self.group.order}, conductor={self.conductor})"


def random_cochain(G: Group, rng, conductor: int) -> list[RootOfUnity]:
    return [ONE] + [RootOfUnity(conductor, rng.randrange(conductor)) for _ in range(G.order - 1)]


def t_name(G: Group, g: int, index: int | None = None) -> str:
    if index is None:
        return f"t({G.name(g)})"
    return f"t({index},{G.name(g)})"


class GenericCocycle:
    """s(g,h) = t_g t_h / t_gh * c(g,h), with t_1 kept as a genuine indeterminate."""

    def __init__(self, base: Cocycle):
        self.base = base
        self.group = base.group
        self._cache: dict = {}

    def value(self, g: int, h: int) -> LaurentCoeff:
        key = (g, h)
        v = self._cache.get(key)
        if v is None:
            G = self.group
            gh = G.mul(g, h)
            exps: dict[str, int] = {}
            for x, s in ((g, 1), (h, 1), (gh, -1)):
                nm = t_name(G, x)
                exps[nm] = exps.get(nm, 0) + s
            v = LaurentCoeff.monomial(exps, self.base.value(g, h))
            self._cache[key] = v
        return v

    def __call__(self, g, h):
        return self.value(g, h)

    def one(self):
        return LaurentCoeff.constant(1)

    def exponent_row(self, g: int, h: int) -> dict[int, int]:
        """t-exponent vector of s(g,h), keyed by element index."""
        G = self.group
        row: dict[int, int] = {}
        for x, s in ((g, 1), (h, 1), (G.mul(g, h), -1)):
            row[x] = row.get(x, 0) + s
        return {k: v for k, v in row.items() if v}

    def validate(self, limit: int = 20) -> ValidationReport:
        G = self.group
        bad: list = []
        count = 0
        for g in range(G.order):
            for h in range(G.order):
                gh = G.mul(g, h)
                left = self.value(g, h)
                for k in range(G.order):
                    lhs = left * self.value(gh, k)
                    rhs = self.value(g, G.mul(h, k)) * self.value(h, k)
                    if lhs != rhs:
                        count += 1
                        if len(bad) < limit:
                            bad.append((g, h, k))
        return ValidationReport(count == 0, bad, count, [])

    def pairing(self, g: int, h: int) -> LaurentCoeff:
        if not self.group.commute(g, h):
            raise CocycleError("elements do not commute")
        return self.value(g, h) / self.value(h, g)

    def is_nondegenerate(self) -> bool:
        G = self.group
        for g in range(1, G.order):
            if not any(G.commute(g, h) and self.pairing(g, h) != 1 for h in range(G.order)):
                return False
        return True

    def path_coefficient(self, word: Sequence[int]) -> LaurentCoeff:
        out = LaurentCoeff.constant(1)
        if not word:
            return out
        acc = word[0]
        for g in word[1:]:
            out = out * self.value(acc, g)
            acc = self.group.mul(acc, g)
        return out


def _character(A: Group, images: Mapping[str, str]) -> list[RootOfUnity]:
    """Character of an abelian group from the images of its named generators."""
    gens = list(A.gens.items())
    vals: list[RootOfUnity | None] = [None] * A.order
    vals[0] = ONE
    frontier = [0]
    for name, _ in gens:
        if name not in images:
            raise CocycleError(f"character does not specify generator {name}")
    while frontier:
        nxt = []
        for x in frontier:
            for name, g in gens:
                y = A.mul(x, g)
                v = vals[x] * parse_root(images[name])
                if vals[y] is None:
                    vals[y] = v
                    nxt.append(y)
                elif vals[y] != v:
                    raise CocycleError("character images are inconsistent with the group relations")
        frontier = nxt
    return vals  # type: ignore[return-value]


def from_one_cocycle(G: Group, pi: Mapping[str, Mapping[str, str]]) -> Cocycle:
    """The 2-cocycle c(h1 a1, h2 a2) = <a1^h2, pi(h2)> on a semidirect product H |x A.

    Here a^h = h^-1 a h is the twist that appears in the product
    (h1 a1)(h2 a2) = (h1 h2)(a1^h2 a2).  ``pi`` maps each element of H (as a
    word) to a character of A, given by the images of A's generators, and must
    satisfy pi(h1 h2)(a) = pi(h1)(h2 a h2^-1) * pi(h2)(a).
    """
    if not hasattr(G, "factors"):
        raise CocycleError("from_one_cocycle needs a group built as a semidirect product")
    H, A, act = G.factors
    if not A.is_abelian():
        raise CocycleError("normal factor must be abelian")
    chars: list[list[RootOfUnity] | None] = [None] * H.order
    for word, images in pi.items():
        chars[H.element(word)] = _character(A, images)
    if any(c is None for c in chars):
        missing = [H.name(h) for h, c in enumerate(chars) if c is None]
        raise CocycleError(f"1-cocycle not specified on {missing}")
    hinv = H.inverse_table
    for h1 in range(H.order):
        for h2 in range(H.order):
            lhs = chars[H.mul(h1, h2)]
            for a in range(A.order):
                rhs = chars[h1][act[h2][a]] * chars[h2][a]
                if lhs[a] != rhs:
                    raise CocycleError("pi is not a 1-cocycle for the dual action")
    na = A.order

    def f(x: int, y: int) -> RootOfUnity:
        h1, a1 = divmod(x, na)
        h2, a2 = divmod(y, na)
        return chars[h2][act[hinv[h2]][a1]]

    return Cocycle.from_function(G, f)


def cocycle_from_spec(spec: Mapping, G: Group) -> Cocycle:
    """Build a cocycle on G from its JSON description (values, one-cocycle or standard form)."""
    if "values" in spec:
        vals = [[ONE] * G.order for _ in range(G.order)]
        for entry in spec["values"]:
            if len(entry) != 3:
                raise CocycleError(f"bad value entry {entry!r}")
            g, h, v = entry
            try:
                vals[G.element(g)][G.element(h)] = parse_root(str(v))
            except (GroupError, ValueError) as exc:
                raise CocycleError(str(exc)) from exc
        c = Cocycle.from_roots(G, vals)
        return c.normalized() if spec.get("normalize", True) else c
    if "from_one_cocycle" in spec:
        return from_one_cocycle(G, spec["from_one_cocycle"]["pi"])
    if "standard_form" in spec:
        from .standard_form import standard_cocycle_from_spec
        return standard_cocycle_from_spec(G, spec["standard_form"])
    if "trivial" in spec:
        return Cocycle.trivial(G)
    raise CocycleError(f"unrecognised cocycle spec keys {sorted(spec)}")


def cocycle_to_spec(c: Cocycle, group_spec) -> dict:
    return {"group": group_spec, "values": c.values_json()}


def inflated_bilinear(G: Group, kernel: Sequence[int]) -> Cocycle:
    """Inflate to G a bilinear cocycle of the abelianization of G/N, N generated by ``kernel``.

    With an independent basis e_1..e_k of orders d_i, the cocycle is
    c(a, b) = prod_{i<j} zeta_{gcd(d_i, d_j)}^{a_i b_j}.  Every nontrivial element
    of N pairs trivially with all of G, so the result is degenerate whenever
    N is nontrivial (and also when G/N is nonabelian).
    """
    from itertools import product as iproduct

    from .group_core import abelian_basis, derived_subgroup, quotient

    Q, proj = quotient(G, G.generated(list(kernel)))
    A, proj2 = quotient(Q, derived_subgroup(Q))
    basis = abelian_basis(A)
    ords = [A.element_order(b) for b in basis]
    coords = {}
    for exps in iproduct(*(range(d) for d in ords)):
        coords[A.product(A.power(b, k) for b, k in zip(basis, exps))] = exps
    to_a = [coords[proj2[proj[g]]] for g in range(G.order)]

    def f(x: int, y: int) -> RootOfUnity:
        a, b = to_a[x], to_a[y]
        out = ONE
        for i in range(len(ords)):
            for j in range(i + 1, len(ords)):
                out = out * RootOfUnity(gcd(ords[i], ords[j]), a[i] * b[j])
        return out

    return Cocycle.from_function(G, f)
