"""Exact scalars: roots of unity, cyclotomic numbers and Laurent polynomials.

A :class:`Cyclo` lives in Q(zeta_N) and is stored in the power basis
1, zeta, ..., zeta^(phi(N)-1) after reduction modulo the cyclotomic
polynomial, so equality is coefficient equality.  Mixed conductors are
lifted to their lcm before any operation.
"""

from __future__ import annotations

import re
from fractions import Fraction
from functools import lru_cache
from math import gcd, lcm
from typing import Iterable, Mapping

from sympy import Poly, cyclotomic_poly, symbols

_X = symbols("x")


@lru_cache(maxsize=None)
def _phi_coeffs(n: int) -> tuple[int, ...]:
    """Coefficients of the n-th cyclotomic polynomial, lowest degree first."""
    return tuple(int(a) for a in reversed(Poly(cyclotomic_poly(n, _X), _X).all_coeffs()))


@lru_cache(maxsize=None)
def _power_table(n: int) -> tuple[tuple[int, ...], ...]:
    # row e holds x^e mod Phi_n in the power basis, for 0 <= e < n
    phi = _phi_coeffs(n)
    d = len(phi) - 1
    rows = []
    cur = [0] * d
    if d == 0:
        return tuple(() for _ in range(n))
    cur[0] = 1
    for _ in range(n):
        rows.append(tuple(cur))
        top = cur[-1]
        nxt = [0] + cur[:-1]
        if top:
            for i in range(d):
                nxt[i] -= top * phi[i]
        cur = nxt
    return tuple(rows)


def totient(n: int) -> int:
    return len(_phi_coeffs(n)) - 1


class RootOfUnity:
    """exp(2 pi i * q) for a rational q taken mod 1."""

    __slots__ = ("q",)

    def __init__(self, conductor: int = 1, exponent: int = 0):
        if conductor < 1:
            raise ValueError("conductor must be positive")
        self.q = Fraction(exponent % conductor, conductor)

    @classmethod
    def from_fraction(cls, q: Fraction) -> "RootOfUnity":
        r = cls.__new__(cls)
        r.q = q - (q.numerator // q.denominator)
        return r

    @property
    def conductor(self) -> int:
        return self.q.denominator

    @property
    def exponent(self) -> int:
        return self.q.numerator

    def order(self) -> int:
        return self.q.denominator

    def exponent_in(self, n: int) -> int:
        """e with self == zeta_n^e; requires order | n."""
        if n % self.q.denominator:
            raise ValueError(f"{self} is not an {n}-th root of unity")
        return self.q.numerator * (n // self.q.denominator)

    def __mul__(self, other):
        if isinstance(other, RootOfUnity):
            return RootOfUnity.from_fraction(self.q + other.q)
        return NotImplemented

    def __truediv__(self, other):
        if isinstance(other, RootOfUnity):
            return RootOfUnity.from_fraction(self.q - other.q)
        return NotImplemented

    def inverse(self) -> "RootOfUnity":
        return RootOfUnity.from_fraction(-self.q)

    def __pow__(self, k: int) -> "RootOfUnity":
        return RootOfUnity.from_fraction(self.q * k)

    def __eq__(self, other):
        if isinstance(other, RootOfUnity):
            return self.q == other.q
        if isinstance(other, int) and other == 1:
            return self.q == 0
        return NotImplemented

    def __hash__(self):
        return hash(("root", self.q))

    def is_one(self) -> bool:
        return self.q == 0

    def to_cyclo(self) -> "Cyclo":
        return Cyclo.root(self.q.denominator, self.q.numerator)

    def roots(self, k: int) -> list["RootOfUnity"]:
        """All k-th roots of self, smallest exponent fraction first."""
        base = self.q / k
        out = [RootOfUnity.from_fraction(base + Fraction(j, k)) for j in range(k)]
        return sorted(out, key=lambda r: r.q)

    def __str__(self):
        if self.q == 0:
            return "1"
        return f"z{self.q.denominator}^{self.q.numerator}"

    __repr__ = __str__


ONE = RootOfUnity()


def parse_root(text: str) -> RootOfUnity:
    """Parse 'z12^5', 'z4', 'w3', '1' or '-1'."""
    s = text.strip().replace(" ", "")
    if s == "1":
        return ONE
    if s == "-1":
        return RootOfUnity(2, 1)
    m = re.fullmatch(r"[zw](\d+)(?:\^(-?\d+))?", s)
    if not m:
        raise ValueError(f"not a root of unity literal: {text!r}")
    n = int(m.group(1))
    e = int(m.group(2)) if m.group(2) is not None else 1
    return RootOfUnity(n, e)


def root_order(x) -> int | None:
    """Least m with x^m = 1, or None when x is not a root of unity."""
    if isinstance(x, RootOfUnity):
        return x.order()
    if not isinstance(x, Cyclo):
        x = Cyclo.rational(x)
    found = x.as_root()
    if found is None or found[0] != 1:
        return None
    return found[1].order()


class Cyclo:
    """Exact element of Q(zeta_N) in the reduced power basis."""

    __slots__ = ("n", "c")

    def __init__(self, n: int, coeffs: Iterable):
        self.n = n
        self.c = tuple(Fraction(a) for a in coeffs)
        if len(self.c) != totient(n):
            raise ValueError("coefficient vector has wrong length")

    @classmethod
    def from_exponents(cls, n: int, terms: Mapping[int, object]) -> "Cyclo":
        table = _power_table(n)
        acc = [Fraction(0)] * totient(n)
        for e, a in terms.items():
            a = Fraction(a)
            if not a:
                continue
            row = table[e % n]
            for i, v in enumerate(row):
                if v:
                    acc[i] += a * v
        return cls(n, acc)

    @classmethod
    def root(cls, n: int, e: int = 1) -> "Cyclo":
        g = gcd(n, e % n) if e % n else n
        m = n // g
        return cls.from_exponents(m, {(e % n) // g: 1})

    @classmethod
    def rational(cls, a) -> "Cyclo":
        return cls(1, [a])

    @classmethod
    def zero(cls) -> "Cyclo":
        return cls(1, [0])

    @classmethod
    def one(cls) -> "Cyclo":
        return cls(1, [1])

    def lift(self, m: int) -> "Cyclo":
        if m == self.n:
            return self
        if m % self.n:
            raise ValueError("target conductor must be a multiple")
        step = m // self.n
        return Cyclo.from_exponents(m, {i * step: a for i, a in enumerate(self.c) if a})

    @staticmethod
    def _coerce(other) -> "Cyclo":
        if isinstance(other, Cyclo):
            return other
        if isinstance(other, RootOfUnity):
            return other.to_cyclo()
        if isinstance(other, (int, Fraction)):
            return Cyclo.rational(other)
        raise TypeError(f"cannot coerce {type(other).__name__} to Cyclo")

    def _common(self, other):
        other = self._coerce(other)
        m = lcm(self.n, other.n)
        return self.lift(m), other.lift(m), m

    def __add__(self, other):
        try:
            a, b, m = self._common(other)
        except TypeError:
            return NotImplemented
        return Cyclo(m, [x + y for x, y in zip(a.c, b.c)])

    __radd__ = __add__

    def __neg__(self):
        return Cyclo(self.n, [-x for x in self.c])

    def __sub__(self, other):
        try:
            a, b, m = self._common(other)
        except TypeError:
            return NotImplemented
        return Cyclo(m, [x - y for x, y in zip(a.c, b.c)])

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return Cyclo(self.n, [x * other for x in self.c])
        if isinstance(other, RootOfUnity):
            return self.mul_root(other)
        try:
            a, b, m = self._common(other)
        except TypeError:
            return NotImplemented
        terms: dict[int, Fraction] = {}
        for i, x in enumerate(a.c):
            if not x:
                continue
            for j, y in enumerate(b.c):
                if y:
                    k = (i + j) % m
                    terms[k] = terms.get(k, 0) + x * y
        return Cyclo.from_exponents(m, terms)

    __rmul__ = __mul__

    def mul_root(self, r: RootOfUnity) -> "Cyclo":
        if r.q == 0:
            return self
        m = lcm(self.n, r.conductor)
        step = m // self.n
        shift = r.exponent_in(m)
        return Cyclo.from_exponents(m, {i * step + shift: a for i, a in enumerate(self.c) if a})

    def inverse(self) -> "Cyclo":
        if self.is_zero():
            raise ZeroDivisionError("inverse of zero cyclotomic number")
        r = self.as_root()
        if r is not None and r[0] == 1:
            return r[1].inverse().to_cyclo()
        poly = Poly(list(reversed(self.c)), _X, domain="QQ")
        phi = Poly(cyclotomic_poly(self.n, _X), _X, domain="QQ")
        inv = poly.invert(phi)
        coeffs = [Fraction(int(q.numerator), int(q.denominator)) for q in reversed(inv.all_coeffs())]
        coeffs += [Fraction(0)] * (totient(self.n) - len(coeffs))
        return Cyclo(self.n, coeffs)

    def __truediv__(self, other):
        other = self._coerce(other)
        return self * other.inverse()

    def __pow__(self, k: int) -> "Cyclo":
        if k < 0:
            return self.inverse() ** (-k)
        out = Cyclo.one()
        base = self
        while k:
            if k & 1:
                out = out * base
            base = base * base
            k >>= 1
        return out

    def is_zero(self) -> bool:
        return not any(self.c)

    def __bool__(self):
        return not self.is_zero()

    def __eq__(self, other):
        try:
            a, b, _ = self._common(other)
        except TypeError:
            return NotImplemented
        return a.c == b.c

    def __hash__(self):
        r = self.as_root()
        if r is not None:
            return hash(("cyclo", r[0], r[1].q))
        return hash(("cyclo", self.n, self.c))

    def as_root(self) -> tuple[Fraction, RootOfUnity] | None:
        """(q, r) with self == q * r for rational q > 0, if such a form exists."""
        if self.is_zero():
            return None
        table = _power_table(self.n)
        for e in range(self.n):
            row = table[e]
            k = next(i for i, v in enumerate(row) if v)
            q = self.c[k] / row[k]
            if q > 0 and all(x == q * v for x, v in zip(self.c, row)):
                return q, RootOfUnity(self.n, e)
        return None

    def to_root(self) -> RootOfUnity:
        r = self.as_root()
        if r is None or r[0] != 1:
            raise ValueError(f"{self} is not a root of unity")
        return r[1]

    def __str__(self):
        if self.is_zero():
            return "0"
        r = self.as_root()
        if r is not None:
            q, root = r
            if root.q == 0:
                return str(q)
            return str(root) if q == 1 else f"{q}*{root}"
        parts = []
        for i, a in enumerate(self.c):
            if not a:
                continue
            mono = "" if i == 0 else f"z{self.n}^{i}"
            if not mono:
                body = str(abs(a))
            elif abs(a) == 1:
                body = mono
            else:
                body = f"{abs(a)}*{mono}"
            sign = "-" if a < 0 else "+"
            parts.append((sign, body))
        head = ("-" if parts[0][0] == "-" else "") + parts[0][1]
        return head + "".join(f" {s} {b}" for s, b in parts[1:])

    __repr__ = __str__


def as_cyclo(x) -> Cyclo:
    return Cyclo._coerce(x)


Exponents = tuple  # sorted tuple of (indeterminate name, nonzero int exponent)


def _merge_exponents(a: Exponents, b: Exponents, sign: int = 1) -> Exponents:
    d = dict(a)
    for k, v in b:
        d[k] = d.get(k, 0) + sign * v
    return tuple(sorted((k, v) for k, v in d.items() if v))


class LaurentCoeff:
    """Laurent polynomial in named commuting indeterminates with Cyclo coefficients."""

    __slots__ = ("terms",)

    def __init__(self, terms: Mapping[Exponents, Cyclo] | None = None):
        self.terms = {k: v for k, v in (terms or {}).items() if not v.is_zero()}

    @classmethod
    def monomial(cls, exps: Mapping[str, int] | Iterable, coeff=None) -> "LaurentCoeff":
        items = exps.items() if isinstance(exps, Mapping) else exps
        key = tuple(sorted((k, v) for k, v in items if v))
        return cls({key: as_cyclo(1 if coeff is None else coeff)})

    @classmethod
    def constant(cls, a) -> "LaurentCoeff":
        return cls({(): as_cyclo(a)})

    @classmethod
    def var(cls, name: str, power: int = 1) -> "LaurentCoeff":
        return cls.monomial({name: power})

    @staticmethod
    def _coerce(other) -> "LaurentCoeff":
        if isinstance(other, LaurentCoeff):
            return other
        return LaurentCoeff.constant(other)

    def __add__(self, other):
        other = self._coerce(other)
        out = dict(self.terms)
        for k, v in other.terms.items():
            out[k] = out[k] + v if k in out else v
        return LaurentCoeff(out)

    __radd__ = __add__

    def __neg__(self):
        return LaurentCoeff({k: -v for k, v in self.terms.items()})

    def __sub__(self, other):
        return self + (-self._coerce(other))

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, RootOfUnity):
            return LaurentCoeff({k: v.mul_root(other) for k, v in self.terms.items()})
        other = self._coerce(other)
        out: dict = {}
        for k1, v1 in self.terms.items():
            for k2, v2 in other.terms.items():
                k = _merge_exponents(k1, k2)
                p = v1 * v2
                out[k] = out[k] + p if k in out else p
        return LaurentCoeff(out)

    __rmul__ = __mul__

    def is_unit_monomial(self) -> bool:
        if len(self.terms) != 1:
            return False
        (v,) = self.terms.values()
        r = v.as_root()
        return r is not None and r[0] == 1

    def inverse(self) -> "LaurentCoeff":
        if len(self.terms) != 1:
            raise ZeroDivisionError("only monomials are invertible")
        ((k, v),) = self.terms.items()
        return LaurentCoeff({tuple((n, -e) for n, e in k): v.inverse()})

    def __truediv__(self, other):
        return self * self._coerce(other).inverse()

    def __pow__(self, k: int):
        if k < 0:
            return self.inverse() ** (-k)
        out = LaurentCoeff.constant(1)
        for _ in range(k):
            out = out * self
        return out

    def is_zero(self) -> bool:
        return not self.terms

    def __bool__(self):
        return bool(self.terms)

    def __eq__(self, other):
        try:
            other = self._coerce(other)
        except TypeError:
            return NotImplemented
        return (self - other).is_zero()

    def __hash__(self):
        return hash(tuple(sorted(self.terms)))

    def substitute(self, values: Mapping[str, object]) -> Cyclo:
        """Evaluate at the given nonzero values; every indeterminate must be bound."""
        total = Cyclo.zero()
        for k, v in self.terms.items():
            term = v
            for name, e in k:
                if name not in values:
                    raise KeyError(f"no value for {name}")
                x = as_cyclo(values[name])
                if e < 0:
                    if x.is_zero():
                        raise ZeroDivisionError(f"zero substituted for {name} with negative power")
                    x = x.inverse()
                term = term * (x ** abs(e))
            total = total + term
        return total

    def __str__(self):
        if not self.terms:
            return "0"
        parts = []
        for k in sorted(self.terms):
            bits = [str(self.terms[k])] if (str(self.terms[k]) != "1" or not k) else []
            if bits and " " in bits[0]:
                bits = [f"({bits[0]})"]
            bits += [f"{n}^{e}" for n, e in k]
            parts.append(" * ".join(bits))
        return " + ".join(parts)

    __repr__ = __str__
