"""Twisted group algebras k^c G with basis u_g and u_g u_h = c(g,h) u_gh."""

from __future__ import annotations

from typing import Iterable, Mapping

from .cocycle import Cocycle, CocycleError, GenericCocycle
from .literals import parse_literal
from .scalars import Cyclo, LaurentCoeff, RootOfUnity, as_cyclo


class AlgebraError(ValueError):
    pass


class TwistedAlgebra:
    def __init__(self, cocycle: Cocycle | GenericCocycle):
        self.cocycle = cocycle
        self.group = cocycle.group
        self.generic = isinstance(cocycle, GenericCocycle)

    def coerce_scalar(self, a):
        if self.generic:
            return a if isinstance(a, LaurentCoeff) else LaurentCoeff.constant(a)
        return as_cyclo(a)

    def element(self, coeffs: Mapping[int, object]) -> "TwistedElement":
        return TwistedElement(self, {g: self.coerce_scalar(a) for g, a in coeffs.items()})

    def basis(self, g: int, coeff=1) -> "TwistedElement":
        return self.element({g: coeff})

    def one(self) -> "TwistedElement":
        return self.basis(0)

    def zero(self) -> "TwistedElement":
        return TwistedElement(self, {})

    def u(self, word) -> "TwistedElement":
        return self.basis(self.group.element(word))

    def parse(self, text: str) -> "TwistedElement":
        """Element literal such as 'u(sigma) - u(y)*u(sigma)'."""
        out = parse_literal(text, {"u": lambda arg: self.u(arg)}, lambda c: self.one().scale(c))
        if isinstance(out, Cyclo):
            out = self.one().scale(out)
        return out


class TwistedElement:
    __slots__ = ("algebra", "coeffs")

    def __init__(self, algebra: TwistedAlgebra, coeffs: Mapping[int, object]):
        self.algebra = algebra
        self.coeffs = {g: a for g, a in coeffs.items() if not a.is_zero()}

    def _check(self, other: "TwistedElement"):
        if other.algebra is not self.algebra and other.algebra.cocycle is not self.algebra.cocycle:
            raise AlgebraError("elements belong to different algebras")

    def __add__(self, other):
        if not isinstance(other, TwistedElement):
            other = self.algebra.one().scale(other)
        self._check(other)
        out = dict(self.coeffs)
        for g, a in other.coeffs.items():
            out[g] = out[g] + a if g in out else a
        return TwistedElement(self.algebra, out)

    __radd__ = __add__

    def __neg__(self):
        return TwistedElement(self.algebra, {g: -a for g, a in self.coeffs.items()})

    def __sub__(self, other):
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def scale(self, s) -> "TwistedElement":
        s = self.algebra.coerce_scalar(s)
        return TwistedElement(self.algebra, {g: a * s for g, a in self.coeffs.items()})

    def __mul__(self, other):
        if not isinstance(other, TwistedElement):
            return self.scale(other)
        self._check(other)
        c = self.algebra.cocycle
        t = self.algebra.group.table
        out: dict = {}
        for g, a in self.coeffs.items():
            for h, b in other.coeffs.items():
                gh = t[g][h]
                term = (a * b) * c.value(g, h)
                out[gh] = out[gh] + term if gh in out else term
        return TwistedElement(self.algebra, out)

    def __rmul__(self, other):
        return self.scale(other)

    def __pow__(self, k: int) -> "TwistedElement":
        if k < 0:
            return self.inverse() ** (-k)
        out = self.algebra.one()
        for _ in range(k):
            out = out * self
        return out

    def is_zero(self) -> bool:
        return not self.coeffs

    def __eq__(self, other):
        if not isinstance(other, TwistedElement):
            return NotImplemented
        return (self - other).is_zero()

    __hash__ = None

    def is_monomial(self) -> bool:
        return len(self.coeffs) == 1

    def inverse(self) -> "TwistedElement":
        """Inverse of a monomial a u_g: a^-1 c(g, g^-1)^-1 u_{g^-1}."""
        if not self.is_monomial():
            raise AlgebraError("only monomials are inverted here")
        ((g, a),) = self.coeffs.items()
        G = self.algebra.group
        gi = G.inv(g)
        c = self.algebra.cocycle.value(g, gi)
        return TwistedElement(self.algebra, {gi: a.inverse() * c.inverse()})

    def scalar_part(self):
        """Coefficient of u_1 when the element is a scalar multiple of the identity."""
        if not self.coeffs:
            return self.algebra.coerce_scalar(0)
        if set(self.coeffs) != {0}:
            raise AlgebraError("element is not a scalar")
        return self.coeffs[0]

    def __str__(self):
        if not self.coeffs:
            return "0"
        G = self.algebra.group
        parts = []
        for g in sorted(self.coeffs):
            a = str(self.coeffs[g])
            if " " in a:
                a = f"({a})"
            parts.append(f"{a}*u({G.name(g)})")
        return " + ".join(parts)

    __repr__ = __str__


def multiply(x: TwistedElement, y: TwistedElement) -> TwistedElement:
    return x * y


def commutator(x: TwistedElement, y: TwistedElement) -> TwistedElement:
    """x y x^-1 y^-1 for monomials."""
    return x * y * x.inverse() * y.inverse()


def group_commutator(algebra: TwistedAlgebra, g: int, h: int):
    """(u_g, u_h) as a scalar; requires gh = hg."""
    if not algebra.group.commute(g, h):
        raise CocycleError("group commutator scalar needs commuting elements")
    return commutator(algebra.basis(g), algebra.basis(h)).scalar_part()


def center_basis(algebra: TwistedAlgebra, all_h: bool = False) -> list[TwistedElement]:
    """Basis of the center of a concrete twisted group algebra.

    x = sum a_g u_g commutes with u_h iff a_{h g h^-1} = kappa(h, g) a_g, where
    u_h u_g u_h^-1 = kappa(h, g) u_{h g h^-1}.  These equations link pairs of
    coordinates by root-of-unity ratios, so each orbit either carries a
    consistent ratio system (one basis vector) or is forced to vanish.
    """
    if algebra.generic:
        raise AlgebraError("center_basis expects a concrete cocycle")
    G = algebra.group
    c = algebra.cocycle
    hs = list(range(G.order)) if all_h else G.generating_set()

    def kappa(h: int, g: int) -> RootOfUnity:
        hg = G.mul(h, g)
        hgh = G.mul(hg, G.inv(h))
        # u_h u_g u_h^-1 = c(h,g) u_hg u_h^-1 and u_hg = c(hgh^-1, h)^-1 u_{hgh^-1} u_h
        return c.value(h, g) / c.value(hgh, h)

    ratio: dict[int, RootOfUnity] = {}  # a_g = ratio[g] * a_root
    basis = []
    seen: set[int] = set()
    for start in range(G.order):
        if start in seen:
            continue
        comp = {start: RootOfUnity()}
        stack = [start]
        consistent = True
        while stack:
            g = stack.pop()
            for h in hs:
                k = G.conj(h, g)
                r = comp[g] * kappa(h, g)
                if k not in comp:
                    comp[k] = r
                    stack.append(k)
                elif comp[k] != r:
                    consistent = False
        seen.update(comp)
        if consistent:
            basis.append(algebra.element({g: r.to_cyclo() for g, r in sorted(comp.items())}))
        ratio.update(comp)
    return basis


def regular_representation(algebra: TwistedAlgebra) -> dict[int, dict[tuple[int, int], object]]:
    """Sparse matrices of left multiplication by u_g: column k holds u_g u_k = c(g,k) u_gk."""
    G = algebra.group
    c = algebra.cocycle
    return {g: {(G.mul(g, k), k): c.value(g, k) for k in range(G.order)} for g in range(G.order)}


def left_matrix(x: TwistedElement) -> list[list]:
    """Dense matrix of left multiplication by x in the basis u_1..u_n."""
    alg = x.algebra
    G = alg.group
    n = G.order
    zero = alg.coerce_scalar(0)
    m = [[zero for _ in range(n)] for _ in range(n)]
    for g, a in x.coeffs.items():
        for k in range(n):
            r = G.mul(g, k)
            m[r][k] = m[r][k] + a * alg.cocycle.value(g, k)
    return m


def nilpotency_index(x: TwistedElement, bound: int) -> int | None:
    """Least r <= bound with x^r = 0, or None when x is not nilpotent up to bound."""
    p = x
    for r in range(1, bound + 1):
        if p.is_zero():
            return r
        p = p * x
    return None
