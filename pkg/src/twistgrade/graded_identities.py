"""Graded polynomial identities of twisted group algebras.

Letters are pairs ``(i, g)`` standing for the indeterminate x_{ig} of degree g.
A monomial is a tuple of letters, a polynomial a map monomial -> Cyclo.
"""

from __future__ import annotations

import itertools
from collections import defaultdict
from dataclasses import dataclass, field
from math import gcd
from typing import Iterable, Iterator, Mapping, Sequence

import numpy as np

from .cocycle import Cocycle, GenericCocycle, t_name
from .group_core import Group
from .literals import parse_literal
from .scalars import Cyclo, LaurentCoeff, RootOfUnity, as_cyclo

Letter = tuple  # (index, element)


class IdentityError(ValueError):
    pass


class ResourceCapError(RuntimeError):
    pass


# ---------------------------------------------------------------- monomials

def _letter_key(letter: Letter) -> tuple[int, int]:
    return (letter[0], letter[1])


def monomial_key(letters: Sequence[Letter]) -> tuple:
    """Length-lexicographic order on (index, element) pairs."""
    return (len(letters), tuple(_letter_key(x) for x in letters))


@dataclass(frozen=True)
class GradedMonomial:
    letters: tuple = ()

    def __post_init__(self):
        object.__setattr__(self, "letters", tuple((int(i), int(g)) for i, g in self.letters))

    def __len__(self):
        return len(self.letters)

    def __iter__(self):
        return iter(self.letters)

    def __mul__(self, other: "GradedMonomial") -> "GradedMonomial":
        return GradedMonomial(self.letters + other.letters)

    def __lt__(self, other: "GradedMonomial"):
        return monomial_key(self.letters) < monomial_key(other.letters)

    def degree(self, G: Group) -> int:
        return G.product(g for _, g in self.letters)

    def elements(self) -> list[int]:
        return [g for _, g in self.letters]

    def content(self) -> tuple:
        """Multiset of letters as a sorted tuple."""
        return tuple(sorted(self.letters))

    def render(self, G: Group) -> str:
        if not self.letters:
            return "1"
        parts = []
        for letter, run in itertools.groupby(self.letters):
            k = len(list(run))
            s = f"x({letter[0]},{G.name(letter[1])})"
            parts.append(s if k == 1 else f"{s}^{k}")
        return "*".join(parts)


class GradedPolynomial:
    """Reduced polynomial in the free G-graded algebra with cyclotomic coefficients."""

    __slots__ = ("terms",)

    def __init__(self, terms: Mapping[GradedMonomial, object] | None = None):
        out: dict[GradedMonomial, Cyclo] = {}
        for m, a in (terms or {}).items():
            if not isinstance(m, GradedMonomial):
                m = GradedMonomial(m)
            a = as_cyclo(a)
            if m in out:
                a = out[m] + a
            out[m] = a
        self.terms = {m: a for m, a in out.items() if not a.is_zero()}

    @classmethod
    def monomial(cls, letters: Iterable[Letter], coeff=1) -> "GradedPolynomial":
        return cls({GradedMonomial(tuple(letters)): coeff})

    @classmethod
    def letter(cls, i: int, g: int) -> "GradedPolynomial":
        return cls.monomial([(i, g)])

    @classmethod
    def constant(cls, a) -> "GradedPolynomial":
        return cls({GradedMonomial(()): a})

    def monomials(self) -> list[GradedMonomial]:
        return sorted(self.terms)

    def is_zero(self) -> bool:
        return not self.terms

    def __add__(self, other):
        other = _as_poly(other)
        out = dict(self.terms)
        for m, a in other.terms.items():
            out[m] = out[m] + a if m in out else a
        return GradedPolynomial(out)

    __radd__ = __add__

    def __neg__(self):
        return GradedPolynomial({m: -a for m, a in self.terms.items()})

    def __sub__(self, other):
        return self + (-_as_poly(other))

    def __rsub__(self, other):
        return _as_poly(other) - self

    def __mul__(self, other):
        if not isinstance(other, GradedPolynomial):
            if isinstance(other, GradedMonomial):
                other = GradedPolynomial({other: 1})
            else:
                a = as_cyclo(other)
                return GradedPolynomial({m: b * a for m, b in self.terms.items()})
        out: dict = {}
        for m1, a in self.terms.items():
            for m2, b in other.terms.items():
                m = m1 * m2
                v = a * b
                out[m] = out[m] + v if m in out else v
        return GradedPolynomial(out)

    def __rmul__(self, other):
        if isinstance(other, GradedMonomial):
            return GradedPolynomial({other: 1}) * self
        return self * other

    def __pow__(self, k: int):
        out = GradedPolynomial.constant(1)
        for _ in range(k):
            out = out * self
        return out

    def __eq__(self, other):
        if not isinstance(other, GradedPolynomial):
            return NotImplemented
        return (self - other).is_zero()

    __hash__ = None

    def letters(self) -> set[Letter]:
        return {x for m in self.terms for x in m.letters}

    def substitute(self, mapping: Mapping[Letter, Sequence[Letter]]) -> "GradedPolynomial":
        """Replace each letter by a monomial; letters not in the mapping are kept."""
        out: dict = {}
        for m, a in self.terms.items():
            new: list = []
            for x in m.letters:
                new.extend(mapping.get(x, (x,)))
            key = GradedMonomial(tuple(new))
            out[key] = out[key] + a if key in out else a
        return GradedPolynomial(out)

    def render(self, G: Group) -> str:
        if not self.terms:
            return "0"
        parts = []
        for m in self.monomials():
            a = self.terms[m]
            mono = m.render(G)
            s = str(a)
            if s == "1":
                body, sign = mono, "+"
            elif s == "-1":
                body, sign = mono, "-"
            else:
                neg = s.startswith("-") and " " not in s
                s_abs = s[1:] if neg else s
                if " " in s_abs:
                    s_abs = f"({s_abs})"
                body = s_abs if mono == "1" else f"{s_abs}*{mono}"
                sign = "-" if neg else "+"
            parts.append((sign, body))
        head = ("-" if parts[0][0] == "-" else "") + parts[0][1]
        return head + "".join(f" {s} {b}" for s, b in parts[1:])

    def to_json(self, G: Group) -> dict:
        return {"terms": [{"coeff": str(self.terms[m]),
                           "letters": [[i, G.name(g)] for i, g in m.letters]}
                          for m in self.monomials()]}

    @classmethod
    def from_json(cls, data: Mapping, G: Group) -> "GradedPolynomial":
        out = {}
        for t in data["terms"]:
            m = GradedMonomial(tuple((int(i), G.element(g)) for i, g in t["letters"]))
            out[m] = parse_scalar(t["coeff"])
        return cls(out)

    @classmethod
    def parse(cls, text: str, G: Group) -> "GradedPolynomial":
        """Literal such as 'x(1,sigma)*x(1,tau)^2 - w3*x(1,y)'."""

        def letter(arg: str) -> GradedPolynomial:
            if "," not in arg:
                raise IdentityError(f"letter x({arg}) needs an index and an element")
            i, g = arg.split(",", 1)
            i = int(i.strip())
            if i < 1:
                raise IdentityError("letter indices start at 1")
            return cls.letter(i, G.element(g.strip()))

        out = parse_literal(text, {"x": letter}, cls.constant)
        if isinstance(out, Cyclo):
            out = cls.constant(out)
        return out


def _as_poly(x) -> GradedPolynomial:
    if isinstance(x, GradedPolynomial):
        return x
    if isinstance(x, GradedMonomial):
        return GradedPolynomial({x: 1})
    return GradedPolynomial.constant(x)


def parse_scalar(text: str) -> Cyclo:
    out = parse_literal(text, {}, lambda c: c)
    return as_cyclo(out)


# ---------------------------------------------------------------- congruence

def is_weakly_congruent(z1: GradedMonomial, z2: GradedMonomial, G: Group) -> bool:
    return z1.degree(G) == z2.degree(G)


def is_congruent(z1: GradedMonomial, z2: GradedMonomial, G: Group) -> tuple[int, ...] | None:
    """A permutation p with z2[t] = z1[p[t]] when the monomials are congruent, else None."""
    if len(z1) != len(z2) or z1.content() != z2.content():
        return None
    if z1.degree(G) != z2.degree(G):
        return None
    slots: dict[Letter, list[int]] = defaultdict(list)
    for pos, x in enumerate(z1.letters):
        slots[x].append(pos)
    for v in slots.values():
        v.reverse()
    return tuple(slots[x].pop() for x in z2.letters)


@dataclass(frozen=True)
class ElementaryIdentity:
    """Binomial z1 - coefficient * z2 for congruent monomials, z2[t] = z1[perm[t]]."""

    z1: GradedMonomial
    z2: GradedMonomial
    perm: tuple
    coefficient: RootOfUnity

    def polynomial(self) -> GradedPolynomial:
        return GradedPolynomial({self.z1: 1}) - GradedPolynomial({self.z2: self.coefficient.to_cyclo()})

    def __len__(self):
        return len(self.z1)

    def max_index(self) -> int:
        return max((i for i, _ in self.z1.letters), default=0)

    def render(self, G: Group) -> str:
        return f"{self.z1.render(G)} - {self.coefficient}*{self.z2.render(G)}"

    def to_json(self, G: Group) -> dict:
        return {"z1": [[i, G.name(g)] for i, g in self.z1.letters],
                "z2": [[i, G.name(g)] for i, g in self.z2.letters],
                "perm": list(self.perm),
                "coefficient": str(self.coefficient)}


def identity_coefficient(c: Cocycle, word: Sequence[int], perm: Sequence[int]) -> RootOfUnity:
    """c(g_1..g_k) / c(g_perm(1)..g_perm(k))."""
    return RootOfUnity(c.conductor, c.path_exponent(word) - c.path_exponent([word[p] for p in perm]))


def elementary_identity(z1: GradedMonomial, perm: Sequence[int], c: Cocycle) -> ElementaryIdentity:
    perm = tuple(int(p) for p in perm)
    if sorted(perm) != list(range(len(z1))):
        raise IdentityError("perm is not a permutation of the letter positions")
    z2 = GradedMonomial(tuple(z1.letters[p] for p in perm))
    G = c.group
    if z1.degree(G) != z2.degree(G):
        raise IdentityError("rearranged monomial has a different degree, so the pair is not congruent")
    return ElementaryIdentity(z1, z2, perm, identity_coefficient(c, z1.elements(), perm))


def identity_from_pair(z1: GradedMonomial, z2: GradedMonomial, c: Cocycle) -> ElementaryIdentity:
    perm = is_congruent(z1, z2, c.group)
    if perm is None:
        raise IdentityError("monomials are not congruent")
    return elementary_identity(z1, perm, c)


# ---------------------------------------------------------------- decision

def decide_identity(p: GradedPolynomial, c: Cocycle, method: str = "bucket") -> bool:
    """Whether p is a graded identity of the twisted group algebra of c.

    Under x_{ig} -> t_{ig} u_g the monomial Z maps to (product of its t_{ig})
    times path(Z) u_deg(Z).  Two monomials give the same Laurent monomial in the
    t_{ig} exactly when they have the same letter multiset, so p vanishes iff the
    path-weighted coefficient sum vanishes on every (degree, multiset) class.
    ``method="generic"`` performs the substitution literally in the algebra of
    the generic cocycle with Laurent coefficients.
    """
    if method == "generic":
        return evaluate_generic(p, c).is_zero()
    if method != "bucket":
        raise ValueError(f"unknown method {method!r}")
    G = c.group
    buckets: dict = defaultdict(list)
    for m, a in p.terms.items():
        buckets[(m.degree(G), m.content())].append((m, a))
    for items in buckets.values():
        total = Cyclo.zero()
        for m, a in items:
            total = total + a.mul_root(c.path_coefficient(m.elements()))
        if not total.is_zero():
            return False
    return True


def evaluate_generic(p: GradedPolynomial, c: Cocycle):
    """p(t_{ig} u_g) in the twisted algebra of the generic cocycle s."""
    from .twisted_algebra import TwistedAlgebra

    s = c.generic() if isinstance(c, Cocycle) else c
    alg = TwistedAlgebra(s)
    G = alg.group
    out = alg.zero()
    cache: dict = {}
    for m, a in p.terms.items():
        term = alg.one().scale(LaurentCoeff.constant(a))
        for i, g in m.letters:
            if (i, g) not in cache:
                cache[(i, g)] = alg.basis(g, LaurentCoeff.var(t_name(G, g, i)))
            term = term * cache[(i, g)]
        out = out + term
    return out


def evaluate_concrete(p: GradedPolynomial, c: Cocycle, values: Mapping[Letter, object]):
    """p evaluated at x_{ig} -> values[(i,g)] * u_g in the concrete twisted algebra."""
    from .twisted_algebra import TwistedAlgebra

    alg = TwistedAlgebra(c)
    out = alg.zero()
    for m, a in p.terms.items():
        term = alg.one().scale(a)
        for i, g in m.letters:
            term = term * alg.basis(g, values[(i, g)])
        out = out + term
    return out


def random_substitution_check(p: GradedPolynomial, c: Cocycle, rng, trials: int,
                              conductor: int = 12) -> tuple[bool, dict | None]:
    """Evaluate p at random root-of-unity multiples of u_g.

    Returns (all_vanished, witness) where witness is the first nonvanishing
    substitution found, keyed by letter.
    """
    letters = sorted(p.letters())
    for _ in range(trials):
        vals = {x: Cyclo.root(conductor, int(rng.integers(conductor))) for x in letters}
        if not evaluate_concrete(p, c, vals).is_zero():
            return False, vals
    return True, None


def weak_components(p: GradedPolynomial, G: Group) -> list[GradedPolynomial]:
    groups: dict = defaultdict(dict)
    for m, a in p.terms.items():
        groups[m.degree(G)][m] = a
    return [GradedPolynomial(groups[k]) for k in sorted(groups, key=lambda d: min(groups[d]))]


def homogeneous_decomposition(p: GradedPolynomial, G: Group) -> list[GradedPolynomial]:
    """Components by weak congruence class, each split further by congruence class."""
    out = []
    for w in weak_components(p, G):
        groups: dict = defaultdict(dict)
        for m, a in w.terms.items():
            groups[m.content()][m] = a
        out.extend(GradedPolynomial(groups[k]) for k in sorted(groups, key=lambda k: min(groups[k])))
    return out


def as_elementary_combination(p: GradedPolynomial, c: Cocycle) -> list[tuple[Cyclo, ElementaryIdentity]]:
    """Write an identity p as a sum of scale * (z1 - c(B) z2).

    In each congruence class the smallest monomial z0 is the pivot and a term
    a*z becomes -(a / c(z0, z)) * (z0 - c(z0, z) z); the pivot coefficient then
    equals the class sum, which vanishes exactly when p is an identity.
    """
    if not decide_identity(p, c):
        raise IdentityError("polynomial is not an identity, so it is no combination of elementary ones")
    out = []
    for comp in homogeneous_decomposition(p, c.group):
        ms = comp.monomials()
        z0 = ms[0]
        for z in ms[1:]:
            B = identity_from_pair(z0, z, c)
            out.append((-(comp.terms[z] / B.coefficient.to_cyclo()), B))
    return out


# ---------------------------------------------------------------- enumeration of E

def _canonical_monomials(G: Group, length: int, max_index: int, first: Letter | None = None
                         ) -> Iterator[tuple]:
    """Monomials whose indices, per degree, appear in first-occurrence order 1, 2, ..."""
    n = G.order
    letters_sorted = sorted(((i, g) for i in range(1, max_index + 1) for g in range(n)), key=_letter_key)

    def rec(prefix: list, used: dict):
        if len(prefix) == length:
            yield tuple(prefix)
            return
        for i, g in letters_sorted:
            if i > used.get(g, 0) + 1:
                continue
            if not prefix and first is not None and (i, g) != first:
                continue
            prev = used.get(g, 0)
            used[g] = max(prev, i)
            prefix.append((i, g))
            yield from rec(prefix, used)
            prefix.pop()
            used[g] = prev

    yield from rec([], {})


def canonical_relabel(letters: Sequence[Letter]) -> tuple:
    """Rename indices per degree into first-occurrence order."""
    seen: dict = {}
    count: dict = defaultdict(int)
    out = []
    for i, g in letters:
        if (i, g) not in seen:
            count[g] += 1
            seen[(i, g)] = count[g]
        out.append((seen[(i, g)], g))
    return tuple(out)


def _identities_for(z1_letters: tuple, c: Cocycle) -> list[ElementaryIdentity]:
    G = c.group
    z1 = GradedMonomial(z1_letters)
    deg = z1.degree(G)
    seen = {z1_letters}
    out = []
    for perm in itertools.permutations(range(len(z1_letters))):
        z2 = tuple(z1_letters[p] for p in perm)
        if z2 in seen:
            continue
        seen.add(z2)
        if G.product(g for _, g in z2) != deg:
            continue
        out.append(elementary_identity(z1, perm, c))
    out.sort(key=lambda e: monomial_key(e.z2.letters))
    return out


def _chunk_worker(args):
    c, length, max_index, first = args
    out = []
    for z1 in _canonical_monomials(c.group, length, max_index, first):
        out.extend(_identities_for(z1, c))
    return out


def enumerate_E(c: Cocycle, max_len: int | None = None, max_index: int | None = None,
                limit: int | None = 1_000_000, workers: int = 1) -> Iterator[ElementaryIdentity]:
    """Elementary identities with monomials of length <= max_len over x_{ig}, i <= max_index.

    One representative is produced per orbit under per-degree renaming of
    indices: the first monomial is in canonical labeling.  Pairs with z1 = z2 are
    skipped since they give the zero binomial.  Exceeding ``limit`` raises
    ResourceCapError.
    """
    G = c.group
    max_len = G.order if max_len is None else max_len
    max_index = G.order if max_index is None else max_index
    produced = 0
    for length in range(2, max_len + 1):
        if workers > 1:
            from concurrent.futures import ProcessPoolExecutor

            firsts = [(1, g) for g in range(G.order)]
            with ProcessPoolExecutor(max_workers=workers) as ex:
                chunks = ex.map(_chunk_worker, [(c, length, max_index, f) for f in firsts])
                for chunk in chunks:
                    for e in chunk:
                        produced += 1
                        if limit is not None and produced > limit:
                            raise ResourceCapError(f"more than {limit} identities")
                        yield e
            continue
        for z1 in _canonical_monomials(G, length, max_index):
            for e in _identities_for(z1, c):
                produced += 1
                if limit is not None and produced > limit:
                    raise ResourceCapError(f"more than {limit} identities")
                yield e


# ---------------------------------------------------------------- mu

def _preserves_adjacent_pair(perm: Sequence[int]) -> bool:
    return any(perm[t + 1] == perm[t] + 1 for t in range(len(perm) - 1))


def irreducible_permutations(k: int) -> list[tuple[int, ...]]:
    """Permutations keeping no adjacent pair i, i+1 in order (others reduce to shorter words)."""
    return [p for p in itertools.permutations(range(k)) if not _preserves_adjacent_pair(p)]


@dataclass
class MuResult:
    conductor: int
    order: int
    generator: RootOfUnity
    lengths_searched: list = field(default_factory=list)
    stop_reason: str = ""
    pairing_order: int = 1
    bound: int = 1
    words_examined: int = 0

    @property
    def field(self) -> str:
        return "Q" if self.order <= 2 else f"Q(z{self.order})"

    def to_json(self) -> dict:
        return {"order": self.order, "generator": str(self.generator), "field": self.field,
                "pairing_subgroup_order": self.pairing_order, "a_priori_bound": self.bound,
                "lengths_searched": self.lengths_searched, "stop_reason": self.stop_reason,
                "words_examined": self.words_examined}


def _path_exponents(words: np.ndarray, table: np.ndarray, E: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    acc = words[:, 0].copy()
    e = np.zeros(len(words), dtype=np.int64)
    for j in range(1, words.shape[1]):
        e += E[acc, words[:, j]]
        acc = table[acc, words[:, j]]
    return e, acc


def compute_mu(c: Cocycle, max_len: int | None = None, max_words: int = 30_000_000,
               stable_rounds: int = 2) -> MuResult:
    """The group generated by the coefficients c(B) of elementary identities.

    Coefficients depend only on the degree word and the permutation, so words
    over group elements stand in for every index choice.  Lengths grow from 2;
    the search stops when the generated group reaches the a priori bound
    mu_{gcd(ord G, N)} (every c(B) satisfies c(B)^{ord G} = 1 and lies in mu_N),
    after ``stable_rounds`` consecutive lengths without growth, at ``max_len``,
    or when the word budget is spent.
    """
    G = c.group
    n, N = G.order, c.conductor
    max_len = n if max_len is None else max_len
    table = G.np_table.astype(np.int64)
    E = c.exp.astype(np.int64)
    bound = gcd(n, N)
    d = N  # generated subgroup is <z_N^d>
    # floor: commutator pairings
    comm = table == table.T
    diffs = ((E - E.T) % N)[comm]
    pd = N
    for v in np.unique(diffs).tolist():
        pd = gcd(pd, int(v))
    pairing_order = N // pd
    res = MuResult(N, 1, RootOfUnity(), bound=bound, pairing_order=pairing_order)
    target = N // bound
    stale = 0
    examined = 0
    for k in range(2, max_len + 1):
        perms = irreducible_permutations(k)
        before = d
        words_k = n ** k
        if examined + words_k > max_words:
            res.stop_reason = "word budget exhausted"
            break
        res.lengths_searched.append(k)
        chunk = max(1, 2_000_000 // (n ** (k - 1)))
        for start in range(0, n, chunk):
            heads = np.arange(start, min(n, start + chunk))
            grids = np.meshgrid(heads, *([np.arange(n)] * (k - 1)), indexing="ij")
            words = np.stack([g.ravel() for g in grids], axis=1)
            e0, p0 = _path_exponents(words, table, E)
            for perm in perms:
                e1, p1 = _path_exponents(words[:, list(perm)], table, E)
                sel = p0 == p1
                if not sel.any():
                    continue
                for v in np.unique((e0[sel] - e1[sel]) % N).tolist():
                    d = gcd(d, int(v))
            examined += len(words)
            if d == target:
                break
        if (d * n) % N:
            raise IdentityError("a coefficient c(B) violates c(B)^ord(G) = 1")
        if d == target:
            res.stop_reason = "reached the a priori bound"
            break
        stale = stale + 1 if d == before else 0
        if stale >= stable_rounds:
            res.stop_reason = f"no growth for {stable_rounds} consecutive lengths"
            break
    else:
        res.stop_reason = "length cap reached"
    res.words_examined = examined
    res.order = N // d
    res.generator = RootOfUnity(N, d % N)
    return res


# ---------------------------------------------------------------- reduction

@dataclass
class CertificateTerm:
    """coefficient * left * subst(identity) * right."""

    coefficient: Cyclo
    left: tuple
    identity: ElementaryIdentity
    subst: dict
    right: tuple

    def polynomial(self) -> GradedPolynomial:
        inner = self.identity.polynomial().substitute(self.subst)
        return GradedPolynomial({GradedMonomial(self.left): self.coefficient}) * inner * GradedMonomial(self.right)

    def to_json(self, G: Group) -> dict:
        lt = lambda seq: [[i, G.name(g)] for i, g in seq]
        return {"coefficient": str(self.coefficient), "left": lt(self.left), "right": lt(self.right),
                "identity": self.identity.to_json(G),
                "subst": [{"letter": [i, G.name(g)], "image": lt(img)}
                          for (i, g), img in sorted(self.subst.items())]}


@dataclass
class ReductionCertificate:
    target: ElementaryIdentity
    generator_length: int
    terms: list
    moves: list

    def replay(self) -> GradedPolynomial:
        out = GradedPolynomial()
        for t in self.terms:
            out = out + t.polynomial()
        return out

    def verify(self, c: Cocycle) -> tuple[bool, list[str]]:
        problems = []
        n = self.generator_length
        if not self.replay() == self.target.polynomial():
            problems.append("replay does not reproduce the target identity")
        for k, t in enumerate(self.terms):
            e = t.identity
            if len(e) > n or e.max_index() > n:
                problems.append(f"term {k} uses an identity outside the generating set")
            if not decide_identity(e.polynomial(), c):
                problems.append(f"term {k} invokes a non-identity")
            for (i, g), img in t.subst.items():
                if c.group.product(h for _, h in img) != g:
                    problems.append(f"term {k} substitution is not degree preserving")
        return not problems, problems

    def to_json(self, G: Group) -> dict:
        return {"target": self.target.to_json(G), "generator_length": self.generator_length,
                "moves": self.moves, "terms": [t.to_json(G) for t in self.terms]}


class _Reducer:
    def __init__(self, c: Cocycle):
        self.c = c
        self.G = c.group
        self.n = c.group.order
        self.letters: dict[int, Letter] = {}
        self.next_index = 0
        self.next_id = 0
        self.moves: list = []

    def new_id(self, letter: Letter) -> int:
        k = self.next_id
        self.next_id += 1
        self.letters[k] = letter
        return k

    def word(self, ids: Sequence[int]) -> tuple:
        return tuple(self.letters[k] for k in ids)

    def coefficient(self, W: Sequence[int], T: Sequence[int]) -> RootOfUnity:
        c = self.c
        return RootOfUnity(c.conductor, c.path_exponent([self.letters[k][1] for k in W])
                           - c.path_exponent([self.letters[k][1] for k in T]))

    def base(self, W: list, T: list) -> list[CertificateTerm]:
        relabel: dict[Letter, Letter] = {}
        count: dict = defaultdict(int)
        for x in self.word(W):
            if x not in relabel:
                count[x[1]] += 1
                relabel[x] = (count[x[1]], x[1])
        pos = {k: t for t, k in enumerate(W)}
        perm = [pos[k] for k in T]
        z1 = GradedMonomial(tuple(relabel[x] for x in self.word(W)))
        e = elementary_identity(z1, perm, self.c)
        subst = {new: (old,) for old, new in relabel.items()}
        return [CertificateTerm(Cyclo.one(), (), e, subst, ())]

    def reduce(self, W: list, T: list, depth: int = 0) -> list[CertificateTerm]:
        if W == T:
            return []
        if len(W) <= self.n:
            return self.base(W, T)
        pos = {k: t for t, k in enumerate(W)}
        for t in range(len(T) - 1):
            a, b = T[t], T[t + 1]
            if pos[b] == pos[a] + 1:
                return self.contract(W, T, pos[a], t, depth)
        return self.relocate(W, T, depth)

    def contract(self, W: list, T: list, i: int, t: int, depth: int) -> list[CertificateTerm]:
        a, b = W[i], W[i + 1]
        la, lb = self.letters[a], self.letters[b]
        self.next_index += 1
        y = self.new_id((self.next_index, self.G.mul(la[1], lb[1])))
        ly = self.letters[y]
        self.moves.append({"move": "Contract", "depth": depth, "position_first": i,
                           "position_second": t, "length": len(W)})
        W2 = W[:i] + [y] + W[i + 2:]
        T2 = T[:t] + [y] + T[t + 2:]
        out = []
        expand = lambda seq: tuple(z for x in seq for z in ((la, lb) if x == ly else (x,)))
        for term in self.reduce(W2, T2, depth + 1):
            out.append(CertificateTerm(term.coefficient, expand(term.left), term.identity,
                                       {k: expand(v) for k, v in term.subst.items()}, expand(term.right)))
        return out

    def relocate(self, W: list, T: list, depth: int) -> list[CertificateTerm]:
        G = self.G
        # shortest-prefix repeat gives a degree-one block of length <= n
        seen = {0: 0}
        acc = 0
        block = None
        for j, k in enumerate(W, start=1):
            acc = G.mul(acc, self.letters[k][1])
            if acc in seen:
                block = (seen[acc], j)
                break
            seen[acc] = j
        if block is None:
            raise AssertionError("no degree-one block although the word is longer than the group order")
        i0, j0 = block
        S = W[i0:j0]
        inside = set(S)
        pair = next((T[t], T[t + 1]) for t in range(len(T) - 1) if (T[t] in inside) != (T[t + 1] in inside))
        a, b = pair
        if a in inside:
            p = S.index(a)
            S2 = S[p + 1:] + S[:p + 1]  # a last
            anchor, before = b, True
        else:
            p = S.index(b)
            S2 = S[p:] + S[:p]  # b first
            anchor, before = a, False
        chain = [W]
        cur = W
        if S2 != S:
            cur = W[:i0] + S2 + W[j0:]
            chain.append(cur)
            self.moves.append({"move": "Rotate", "depth": depth, "start": i0, "block_length": len(S),
                               "shift": (p + 1) % len(S) if a in inside else p})
        start = i0
        m = len(S2)
        rest = cur[:start] + cur[start + m:]
        goal = rest.index(anchor) if before else rest.index(anchor) + 1
        step = 1 if goal > start else -1
        if goal != start:
            self.moves.append({"move": "Relocate", "depth": depth, "from": start, "to": goal,
                               "block_length": m})
        while start != goal:
            nxt = start + step
            cur = rest[:nxt] + S2 + rest[nxt:]
            chain.append(cur)
            start = nxt
        terms: list[CertificateTerm] = []
        scale = Cyclo.one()
        for prev, new in zip(chain, chain[1:]):
            lo = next(t for t in range(len(prev)) if prev[t] != new[t])
            hi = max(t for t in range(len(prev)) if prev[t] != new[t]) + 1
            left, right = self.word(prev[:lo]), self.word(prev[hi:])
            for term in self.reduce(prev[lo:hi], new[lo:hi], depth + 1):
                terms.append(CertificateTerm(term.coefficient * scale, left + term.left, term.identity,
                                             term.subst, term.right + right))
            scale = scale.mul_root(self.coefficient(prev, new))
        for term in self.reduce(cur, T, depth + 1):
            terms.append(CertificateTerm(term.coefficient * scale, term.left, term.identity,
                                         term.subst, term.right))
        return terms


def random_elementary_identity(c: Cocycle, length: int, max_index: int, rng) -> ElementaryIdentity:
    """Uniform letters and a uniform permutation, redrawn until the rearrangement is
    congruent to and different from the original monomial."""
    G = c.group
    for _ in range(100_000):
        letters = tuple((rng.randint(1, max_index), rng.randrange(G.order)) for _ in range(length))
        perm = list(range(length))
        rng.shuffle(perm)
        if G.product(g for _, g in letters) != G.product(letters[p][1] for p in perm):
            continue
        if all(letters[p] == letters[t] for t, p in enumerate(perm)):
            continue
        return elementary_identity(GradedMonomial(letters), perm, c)
    raise IdentityError("could not draw a congruent pair")


def reduce_to_generators(B: ElementaryIdentity, c: Cocycle) -> ReductionCertificate:
    """Express B as a sum of a * L * phi(E) * R with E of length <= ord(G) and indices <= ord(G).

    Follows the length-reduction argument: a letter pair adjacent in both
    monomials is contracted to a fresh letter; otherwise a degree-one block of
    the first monomial is rotated and slid until it creates such a pair.
    """
    G = c.group
    n = G.order
    if n < 2:
        raise IdentityError("reduction needs a nontrivial group")
    if B.coefficient != identity_coefficient(c, B.z1.elements(), B.perm):
        raise IdentityError("coefficient does not match the cocycle")
    r = _Reducer(c)
    r.next_index = max((i for i, _ in B.z1.letters), default=0)
    W = [r.new_id(x) for x in B.z1.letters]
    T = [W[p] for p in B.perm]
    terms = r.reduce(W, T)
    return ReductionCertificate(B, n, terms, r.moves)
