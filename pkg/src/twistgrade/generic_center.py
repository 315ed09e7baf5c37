"""Integer lattices attached to the generic cocycle s(g,h) = t_g t_h / t_gh * c(g,h).

The value group Y is generated by the s(g,h).  Writing each value as a
t-exponent vector plus a root-of-unity exponent turns questions about Y into
integer row reduction: rank of the free part, torsion, and the quotient V/U of
the free group on the t_g by the span of the t-exponent rows.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import gcd
from typing import Sequence

import numpy as np

from .cocycle import Cocycle, GenericCocycle
from .group_core import Group
from .scalars import LaurentCoeff, RootOfUnity


# ---------------------------------------------------------------- integer row reduction

class HermiteBasis:
    """Incrementally maintained echelon basis of an integer row lattice.

    Insertion keeps a row echelon form with positive pivots; ``matrix`` returns
    the reduced form, entries above each pivot in [0, pivot).  Rows are int64
    vectors until an entry grows past a safe bound, then Python integers.
    """

    _SAFE = 1 << 40

    def __init__(self, ncols: int):
        self.ncols = ncols
        self.rows: dict[int, np.ndarray] = {}
        self._dtype = np.int64

    def _promote(self) -> None:
        self._dtype = object
        self.rows = {k: r.astype(object) for k, r in self.rows.items()}

    def _guard(self, *vs: np.ndarray) -> bool:
        if self._dtype is object:
            return False
        if any(int(np.abs(v).max(initial=0)) > self._SAFE for v in vs):
            self._promote()
            return True
        return False

    def add(self, v: Sequence[int]) -> None:
        v = np.array(list(v), dtype=self._dtype)
        rows = self.rows
        while True:
            nz = np.flatnonzero(v)
            if not len(nz):
                return
            col = int(nz[0])
            p = rows.get(col)
            if p is None:
                self._store(col, -v if v[col] < 0 else v)
                return
            a, b = int(p[col]), int(v[col])
            if b % a == 0:
                v = v - (b // a) * p
            else:
                g, x, y = _xgcd(a, b)
                new_p = x * p + y * v
                v = (a // g) * v - (b // g) * p
                self._store(col, new_p)
            if self._guard(v):
                v = v.astype(object)

    def _store(self, col: int, p: np.ndarray) -> None:
        """Store p as the pivot row of col, reduced against the pivots to its right."""
        for c2 in np.flatnonzero(p[col + 1:]) + col + 1:
            r = self.rows.get(int(c2))
            if r is not None and p[c2]:
                q = int(p[c2]) // int(r[c2])
                if q:
                    p = p - q * r
        self._guard(p)
        self.rows[col] = p.astype(self._dtype) if self._dtype is object else p

    @property
    def rank(self) -> int:
        return len(self.rows)

    def _reduced(self) -> dict[int, np.ndarray]:
        rows = {k: r.copy() for k, r in self.rows.items()}
        cols = sorted(rows)
        for i, col in enumerate(cols):
            p = rows[col]
            piv = int(p[col])
            for c2 in cols[:i]:
                q = int(rows[c2][col]) // piv
                if q:
                    rows[c2] = rows[c2] - q * p
        return rows

    def matrix(self) -> list[list[int]]:
        rows = self._reduced()
        return [[int(x) for x in rows[k]] for k in sorted(rows)]

    def pivot(self, col: int) -> int | None:
        r = self.rows.get(col)
        return None if r is None else int(r[col])


def _xgcd(a: int, b: int) -> tuple[int, int, int]:
    x0, x1, y0, y1 = 1, 0, 0, 1
    while b:
        q, a, b = a // b, b, a % b
        x0, x1 = x1, x0 - q * x1
        y0, y1 = y1, y0 - q * y1
    if a < 0:
        a, x0, y0 = -a, -x0, -y0
    return a, x0, y0


def hermite_basis(rows: Sequence[Sequence[int]], ncols: int) -> HermiteBasis:
    """Echelon basis of the span of ``rows`` by column-wise vectorized Euclid steps."""
    h = HermiteBasis(ncols)
    A = np.array([list(r) for r in rows], dtype=np.int64).reshape(-1, ncols)
    A = A[np.any(A != 0, axis=1)]
    for j in range(ncols):
        if not len(A):
            break
        nz = np.flatnonzero(A[:, j])
        if not len(nz):
            continue
        while len(nz) > 1:
            k = nz[np.argmin(np.abs(A[nz, j]))]
            q = A[nz, j] // A[k, j]
            q[nz == k] = 0
            A[nz] -= q[:, None] * A[k]
            if A.dtype != object and int(np.abs(A).max()) > HermiteBasis._SAFE:
                A = A.astype(object)
                h._promote()
            nz = np.flatnonzero(A[:, j])
        k = nz[0]
        p = A[k].copy()
        h.rows[j] = -p if p[j] < 0 else p
        A = np.delete(A, k, axis=0)
        A = A[np.any(A != 0, axis=1)]
    if A.dtype == object:
        h._promote()
    return h


def smith_invariants(matrix: Sequence[Sequence[int]]) -> list[int]:
    """Diagonal of the Smith normal form (nonzero entries, each dividing the next)."""
    A = [list(r) for r in matrix if any(r)]
    if not A:
        return []
    m, n = len(A), len(A[0])
    diag = []
    top = 0
    while top < min(m, n):
        # pick the smallest nonzero entry in the remaining block
        best = None
        for i in range(top, m):
            for j in range(top, n):
                if A[i][j] and (best is None or abs(A[i][j]) < abs(A[best[0]][best[1]])):
                    best = (i, j)
        if best is None:
            break
        i, j = best
        A[top], A[i] = A[i], A[top]
        for r in A:
            r[top], r[j] = r[j], r[top]
        while True:
            piv = A[top][top]
            done = True
            for i in range(top + 1, m):
                q = A[i][top] // piv
                if q:
                    A[i] = [x - q * y for x, y in zip(A[i], A[top])]
                if A[i][top]:
                    done = False
            for j in range(top + 1, n):
                q = A[top][j] // piv
                if q:
                    for r in A:
                        r[j] -= q * r[top]
                if A[top][j]:
                    done = False
            if done:
                bad = next(((i, j) for i in range(top + 1, m) for j in range(top + 1, n)
                            if A[i][j] % piv), None)
                if bad is None:
                    break
                A[top] = [x + y for x, y in zip(A[top], A[bad[0]])]
                continue
            # move the new smallest entry of row/column top into the pivot
            cands = [(abs(A[i][top]), i, top) for i in range(top, m) if A[i][top]]
            cands += [(abs(A[top][j]), top, j) for j in range(top, n) if A[top][j]]
            _, i, j = min(cands)
            A[top], A[i] = A[i], A[top]
            for r in A:
                r[top], r[j] = r[j], r[top]
        diag.append(abs(A[top][top]))
        top += 1
    return diag


# ---------------------------------------------------------------- exponent lattice

@dataclass
class ExponentLattice:
    group: Group
    labels: list  # (g, h) per row
    rows: list  # t-exponent vectors (length ord G)
    c_exponents: list  # root exponents mod conductor, per row
    conductor: int

    def to_json(self) -> dict:
        G = self.group
        return {"columns": [f"t({G.name(g)})" for g in range(G.order)],
                "conductor": self.conductor,
                "rows": [{"pair": [G.name(g), G.name(h)], "t": r, "c": e}
                         for (g, h), r, e in zip(self.labels, self.rows, self.c_exponents)]}


def exponent_lattice(c: Cocycle, full: bool = False) -> ExponentLattice:
    """Rows of s(g,h) for all h (``full``) or for h in {1} and a generating set.

    The restricted rows span the same lattice: the cocycle identity for s gives
    r(g, hk) = r(g, h) + r(gh, k) - r(h, k), and the same relation holds for the
    root-of-unity exponents, so rows with h a word in the generators are integer
    combinations of rows with h a single generator, with r(g, 1) as the base case.
    """
    G = c.group
    n = G.order
    hs = list(range(n)) if full else [0] + [h for h in G.generating_set() if h != 0]
    labels, rows, cs = [], [], []
    for g in range(n):
        for h in hs:
            r = [0] * n
            r[g] += 1
            r[h] += 1
            r[G.mul(g, h)] -= 1
            labels.append((g, h))
            rows.append(r)
            cs.append(int(c.exp[g, h]))
    return ExponentLattice(G, labels, rows, cs, c.conductor)


def rank_of_Yf(c: Cocycle | GenericCocycle, full: bool = False) -> int:
    """Rank of the free part of the value group of the generic cocycle."""
    base = c.base if isinstance(c, GenericCocycle) else c
    lat = exponent_lattice(base, full)
    return hermite_basis(lat.rows, base.group.order).rank


@dataclass
class TorsionResult:
    conductor: int
    step: int  # torsion is generated by z_N^step

    @property
    def order(self) -> int:
        return self.conductor // gcd(self.conductor, self.step)

    @property
    def generator(self) -> RootOfUnity:
        return RootOfUnity(self.conductor, self.step)

    def to_json(self) -> dict:
        return {"order": self.order, "generator": str(self.generator)}


def torsion_of_Y(c: Cocycle | GenericCocycle, full: bool = False) -> TorsionResult:
    """Roots of unity among products of s-values.

    A product of s-values with total t-exponent zero is a pure root of unity.
    Appending the root exponent as an extra column and the row (0,...,0,N),
    those products form the part of the row lattice supported on the last
    column, which echelon form exposes as the pivot d there: torsion = <z_N^d>.
    """
    base = c.base if isinstance(c, GenericCocycle) else c
    lat = exponent_lattice(base, full)
    n, N = base.group.order, base.conductor
    h = hermite_basis([r + [e] for r, e in zip(lat.rows, lat.c_exponents)] + [[0] * n + [N]], n + 1)
    d = h.pivot(n)
    return TorsionResult(N, N if d is None else d)


def uv_quotient(G: Group, full: bool = False) -> list[int]:
    """Nontrivial invariant factors of V/U, V free on the t_g and U spanned by t_g t_h / t_gh."""
    lat = exponent_lattice(Cocycle.trivial(G), full)
    h = hermite_basis(lat.rows, G.order)
    # In reduced form a unit pivot is the only entry of its column, so that row
    # and column split off as a trivial factor.
    M = h.matrix()
    unit = {k for k, r in zip(sorted(h.rows), M) if r[k] == 1}
    keep = [j for j in range(G.order) if j not in unit]
    rest = [[r[j] for j in keep] for k, r in zip(sorted(h.rows), M) if k not in unit]
    return [d for d in smith_invariants(rest) if d != 1]


# ---------------------------------------------------------------- central monomials

@dataclass
class CentralCheck:
    product_trivial: bool
    central: bool
    witness: int | None  # some h with u_h not commuting with the product

    def to_json(self, G: Group) -> dict:
        return {"product_trivial": self.product_trivial, "central": self.central,
                "noncommuting_witness": None if self.witness is None else G.name(self.witness)}


def central_monomial_check(c: Cocycle | GenericCocycle, word: Sequence[tuple[int, int]]) -> CentralCheck:
    """Check whether (t_{i1 g1} u_{g1}) ... (t_{im gm} u_{gm}) is central in the generic algebra."""
    from .cocycle import t_name
    from .twisted_algebra import TwistedAlgebra

    s = c if isinstance(c, GenericCocycle) else c.generic()
    alg = TwistedAlgebra(s)
    G = alg.group
    x = alg.one()
    for i, g in word:
        x = x * alg.basis(g, LaurentCoeff.var(t_name(G, g, i)))
    trivial = G.product(g for _, g in word) == 0
    witness = None
    for h in range(G.order):
        u = alg.basis(h)
        if not (u * x) == (x * u):
            witness = h
            break
    return CentralCheck(trivial, witness is None, witness)
