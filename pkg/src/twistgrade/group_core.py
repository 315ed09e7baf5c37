"""Finite groups as dense multiplication tables.

Elements are the integers 0..n-1 with 0 the identity.  Structured builds
(cyclic, direct, semidirect) keep named generators so that words such as
``sigma*tau^2`` can be resolved to element indices.
"""

from __future__ import annotations

import random
import re
from collections import deque
from math import prod
from typing import Iterable, Sequence

import numpy as np
from sympy import factorint


class GroupError(ValueError):
    pass


class Group:
    def __init__(self, table, names=None, gens=None, structure=None, aliases=None, check=True):
        t = np.asarray(table, dtype=np.int64)
        n = t.shape[0]
        if t.shape != (n, n) or n < 1:
            raise GroupError("multiplication table must be square and nonempty")
        self.order = n
        self.np_table = t
        self.table = t.tolist()
        if check:
            self._check_axioms()
        ident = np.nonzero(t == 0)
        inv = [0] * n
        for a, b in zip(*ident):
            inv[int(a)] = int(b)
        self.inverse_table = inv
        self.names = list(names) if names is not None else [f"g{i}" for i in range(n)]
        self.names[0] = "1"
        self.gens = dict(gens) if gens else {}
        self.structure = structure
        self.aliases = dict(aliases or {})
        self._lookup = None

    def _check_axioms(self):
        t, n = self.np_table, self.order
        if t.min() < 0 or t.max() >= n:
            raise GroupError("table entries out of range")
        idx = np.arange(n)
        if not (np.array_equal(t[0], idx) and np.array_equal(t[:, 0], idx)):
            raise GroupError("element 0 is not a two-sided identity")
        for row in (t, t.T):
            if not all(len(set(r)) == n for r in row.tolist()):
                raise GroupError("table is not a Latin square (inverses fail)")
        if n <= 100:
            lhs = t[t, :]  # lhs[a, b, c] = (ab)c
            rhs = t[:, t]  # rhs[a, b, c] = a(bc)
            if not np.array_equal(lhs, rhs):
                raise GroupError("table is not associative")
        else:
            rng = np.random.default_rng(0)
            a, b, c = rng.integers(0, n, size=(3, 100_000))
            if not np.array_equal(t[t[a, b], c], t[a, t[b, c]]):
                raise GroupError("table is not associative")

    # basic arithmetic
    def mul(self, a: int, b: int) -> int:
        return self.table[a][b]

    def inv(self, a: int) -> int:
        return self.inverse_table[a]

    def product(self, elems: Iterable[int]) -> int:
        x = 0
        t = self.table
        for e in elems:
            x = t[x][e]
        return x

    def power(self, a: int, k: int) -> int:
        if k < 0:
            a, k = self.inv(a), -k
        x = 0
        for _ in range(k):
            x = self.table[x][a]
        return x

    def conj(self, g: int, h: int) -> int:
        """g h g^-1."""
        return self.table[self.table[g][h]][self.inv(g)]

    def commutator(self, g: int, h: int) -> int:
        t = self.table
        return t[t[t[g][h]][self.inv(g)]][self.inv(h)]

    def element_order(self, g: int) -> int:
        k, x = 1, g
        while x != 0:
            x = self.table[x][g]
            k += 1
        return k

    def element_orders(self) -> list[int]:
        return [self.element_order(g) for g in range(self.order)]

    def commute(self, g: int, h: int) -> bool:
        return self.table[g][h] == self.table[h][g]

    def is_abelian(self) -> bool:
        return bool(np.array_equal(self.np_table, self.np_table.T))

    # names and words
    def name(self, g: int) -> str:
        return self.names[g]

    def element(self, word: str | int) -> int:
        """Resolve a word like 'sigma*tau^2', 'z^-1', an alias or a canonical name."""
        if isinstance(word, (int, np.integer)):
            if not 0 <= word < self.order:
                raise GroupError(f"element index {word} out of range")
            return int(word)
        text = str(word).strip().replace(" ", "")
        if self._lookup is None:
            self._lookup = {nm: i for i, nm in enumerate(self.names)}
        if text in ("1", "e", "id", ""):
            return 0
        if text in self.gens:
            return self.gens[text]
        if text in self.aliases:
            return self.element(self.aliases[text])
        if text in self._lookup:
            return self._lookup[text]
        if text.startswith("(") and text.endswith(")") and _balanced(text[1:-1]):
            return self.element(text[1:-1])
        x = 0
        for factor in _split_top(text, "*"):
            m = re.fullmatch(r"(.+?)\^(-?\d+)", factor)
            if m and _balanced(m.group(1)):
                base, k = m.group(1), int(m.group(2))
            else:
                base, k = factor, 1
            if base == text:
                raise GroupError(f"unknown element name {base!r}")
            x = self.table[x][self.power(self.element(base), k)]
        return x

    # subgroups
    def generated(self, elems: Iterable[int]) -> "Subgroup":
        elems = [e for e in elems if e != 0]
        seen = {0}
        queue = deque([0])
        while queue:
            x = queue.popleft()
            for g in elems:
                y = self.table[x][g]
                if y not in seen:
                    seen.add(y)
                    queue.append(y)
        return Subgroup(self, seen)

    def whole(self) -> "Subgroup":
        return Subgroup(self, range(self.order))

    def centralizer(self, g: int) -> "Subgroup":
        return Subgroup(self, [h for h in range(self.order) if self.commute(g, h)])

    def center(self) -> "Subgroup":
        t = self.np_table
        mask = np.all(t == t.T, axis=1)
        return Subgroup(self, np.nonzero(mask)[0].tolist())

    def generating_set(self) -> list[int]:
        """Named generators when present, otherwise a greedy generating set."""
        if self.gens:
            return list(dict.fromkeys(self.gens.values()))
        chosen: list[int] = []
        span = {0}
        for g in sorted(range(self.order), key=lambda x: (-self.element_order(x), x)):
            if g not in span:
                chosen.append(g)
                span = self.generated(chosen).members_set
                if len(span) == self.order:
                    break
        return chosen

    def relabel(self, perm: Sequence[int]) -> "Group":
        """Isomorphic copy where old element g becomes perm[g]; perm[0] must be 0."""
        if perm[0] != 0 or sorted(perm) != list(range(self.order)):
            raise GroupError("relabeling must be a permutation fixing the identity")
        n = self.order
        p = np.asarray(perm)
        new = np.empty((n, n), dtype=np.int64)
        new[np.ix_(p, p)] = p[self.np_table]
        names = [""] * n
        for g in range(n):
            names[perm[g]] = self.names[g]
        gens = {k: int(perm[v]) for k, v in self.gens.items()}
        return Group(new, names, gens, self.structure, self.aliases, check=False)

    def random_relabel(self, rng: random.Random) -> tuple["Group", list[int]]:
        rest = list(range(1, self.order))
        rng.shuffle(rest)
        perm = [0] + rest
        return self.relabel(perm), perm

    def __repr__(self):
        return f"Group(order={self.order})"


def _balanced(s: str) -> bool:
    depth = 0
    for ch in s:
        depth += ch == "("
        depth -= ch == ")"
        if depth < 0:
            return False
    return depth == 0


def _split_top(text: str, sep: str) -> list[str]:
    parts, depth, cur = [], 0, ""
    for ch in text:
        if ch == "(":
            depth += 1
        elif ch == ")":
            depth -= 1
        if ch == sep and depth == 0:
            parts.append(cur)
            cur = ""
        else:
            cur += ch
    parts.append(cur)
    return parts


class Subgroup:
    def __init__(self, parent: Group, members: Iterable[int]):
        self.parent = parent
        self.members = tuple(sorted(set(int(m) for m in members)))
        self.members_set = frozenset(self.members)

    @property
    def order(self) -> int:
        return len(self.members)

    def __contains__(self, g) -> bool:
        return g in self.members_set

    def __len__(self):
        return len(self.members)

    def is_closed(self) -> bool:
        t = self.parent.table
        s = self.members_set
        return 0 in s and all(t[a][b] in s for a in self.members for b in self.members)

    def is_normal(self) -> bool:
        G = self.parent
        return all(G.conj(g, h) in self.members_set for g in range(G.order) for h in self.members)

    def as_group(self) -> tuple[Group, list[int]]:
        """Standalone group plus the embedding list new index -> parent index."""
        emb = list(self.members)
        pos = {g: i for i, g in enumerate(emb)}
        t = self.parent.table
        table = [[pos[t[a][b]] for b in emb] for a in emb]
        names = [self.parent.names[g] for g in emb]
        gens = {k: pos[v] for k, v in self.parent.gens.items() if v in pos}
        return Group(table, names, gens, None, check=False), emb

    def __repr__(self):
        return f"Subgroup(order={self.order})"


# constructors

def cyclic(n: int, gen: str = "a") -> Group:
    if n < 1:
        raise GroupError("cyclic order must be positive")
    table = [[(i + j) % n for j in range(n)] for i in range(n)]
    names = ["1"] + [gen if k == 1 else f"{gen}^{k}" for k in range(1, n)]
    return Group(table, names, {gen: 1 % n} if n > 1 else {gen: 0},
                 {"cyclic": n, "gen": gen}, check=False)


def _join(*names: str) -> str:
    parts = [x for x in names if x != "1"]
    return "*".join(parts) if parts else "1"


def _unique_gens(groups: Sequence[Group]) -> list[dict[str, str]]:
    used: set[str] = set()
    renames = []
    for k, G in enumerate(groups):
        ren = {}
        for g in G.gens:
            new = g
            while new in used:
                new = f"{new}_{k + 1}"
            used.add(new)
            ren[g] = new
        renames.append(ren)
    return renames


def _rename_word(name: str, ren: dict[str, str]) -> str:
    if not ren or name == "1":
        return name
    out = []
    for factor in name.split("*"):
        base, _, exp = factor.partition("^")
        base = ren.get(base, base)
        out.append(f"{base}^{exp}" if exp else base)
    return "*".join(out)


def direct(groups: Sequence[Group]) -> Group:
    groups = list(groups)
    if not groups:
        return cyclic(1)
    renames = _unique_gens(groups)
    sizes = [G.order for G in groups]
    n = prod(sizes)
    elems = list(np.ndindex(*sizes))  # lexicographic, identity first
    index = {e: i for i, e in enumerate(elems)}
    tabs = [G.table for G in groups]
    table = [[index[tuple(tabs[k][a[k]][b[k]] for k in range(len(groups)))] for b in elems]
             for a in elems]
    names = [_join(*(_rename_word(groups[k].names[e[k]], renames[k]) for k in range(len(groups))))
             for e in elems]
    gens = {}
    for k, G in enumerate(groups):
        for g, idx in G.gens.items():
            e = [0] * len(groups)
            e[k] = idx
            gens[renames[k][g]] = index[tuple(e)]
    aliases = {}
    for k, G in enumerate(groups):
        for a, w in G.aliases.items():
            aliases[a] = _rename_word(w, renames[k])
    structure = {"direct": [G.structure for G in groups]}
    return Group(table, names, gens, structure, aliases, check=False)


def _extend_map(G: Group, images: dict[int, int], target: Group) -> list[int] | None:
    """Extend generator images to a homomorphism G -> target, or None if inconsistent."""
    f = [-1] * G.order
    f[0] = 0
    queue = deque([0])
    gens = list(images.items())
    while queue:
        x = queue.popleft()
        for g, img in gens:
            y = G.table[x][g]
            v = target.table[f[x]][img]
            if f[y] == -1:
                f[y] = v
                queue.append(y)
            elif f[y] != v:
                return None
    if -1 in f:
        return None
    return f


def extend_to_automorphism(G: Group, gens: Sequence[int], images: Sequence[int]) -> list[int] | None:
    """Permutation of G extending gens -> images, if that defines an automorphism.

    The generators must generate G.  Every edge x -> x*g of the Cayley graph is
    checked, which makes the extension a homomorphism; bijectivity is then
    checked directly.
    """
    f = _extend_map(G, dict(zip(gens, images)), G)
    if f is None or len(set(f)) != G.order:
        return None
    return f


def semidirect(normal: Group, acting: Group, action: dict[str, dict[str, str]]) -> Group:
    """H |x A with elements written h*a and (h1 a1)(h2 a2) = (h1 h2)((h2^-1 . a1) a2).

    ``action`` maps each generator name of H to the images of A's generators,
    given as words in A.  With this product h a h^-1 = h . a, so an action
    sigma: pi -> pi^4 yields sigma*pi*sigma^-1 = pi^4.
    """
    A, H = normal, acting
    renames = _unique_gens([H, A])
    ren_h, ren_a = renames
    auts: dict[int, list[int]] = {}
    for hname, hidx in H.gens.items():
        imgs = action.get(hname, {})
        unknown = set(imgs) - set(A.gens)
        if unknown:
            raise GroupError(f"action names unknown generators {sorted(unknown)}")
        images = {A.gens[a]: A.element(imgs.get(a, a)) for a in A.gens}
        f = _extend_map(A, images, A)
        if f is None or len(set(f)) != A.order:
            raise GroupError(f"action of {hname} is not an automorphism of the normal factor")
        auts[hidx] = f
    # extend to a homomorphism H -> Aut(A), checking consistency on every edge
    act: list[list[int] | None] = [None] * H.order
    act[0] = list(range(A.order))
    queue = deque([0])
    while queue:
        x = queue.popleft()
        for g, f in auts.items():
            y = H.table[x][g]
            composed = [act[x][f[a]] for a in range(A.order)]
            if act[y] is None:
                act[y] = composed
                queue.append(y)
            elif act[y] != composed:
                raise GroupError("action is not a homomorphism into Aut(normal)")
    if any(a is None for a in act):
        raise GroupError("acting group is not generated by its named generators")
    na = A.order
    n = H.order * na
    hi = np.repeat(np.arange(H.order), na)
    ai = np.tile(np.arange(na), H.order)
    Ht = H.np_table
    At = A.np_table
    actarr = np.asarray(act)
    hinv = np.asarray(H.inverse_table)
    # rows: x = (h1, a1); columns: y = (h2, a2)
    h1, h2 = hi[:, None], hi[None, :]
    a1, a2 = ai[:, None], ai[None, :]
    moved = actarr[hinv[h2], a1]
    table = Ht[h1, h2] * na + At[moved, a2]
    names = [_join(_rename_word(H.names[h], ren_h), _rename_word(A.names[a], ren_a))
             for h, a in zip(hi.tolist(), ai.tolist())]
    gens = {ren_h[g]: idx * na for g, idx in H.gens.items()}
    gens.update({ren_a[g]: idx for g, idx in A.gens.items()})
    aliases = {k: _rename_word(v, ren_h) for k, v in H.aliases.items()}
    aliases.update({k: _rename_word(v, ren_a) for k, v in A.aliases.items()})
    structure = {"semidirect": {"normal": A.structure, "acting": H.structure, "action": action}}
    G = Group(table, names, gens, structure, aliases, check=True)
    G.factors = (H, A, act)
    return G


def from_table(table) -> Group:
    G = Group(table, structure={"table": [list(r) for r in table]})
    return G


def from_spec(spec: dict) -> Group:
    """Build a group from its JSON description."""
    if not isinstance(spec, dict):
        raise GroupError("group spec must be a JSON object")
    aliases = spec.get("aliases", {})
    if "cyclic" in spec:
        G = cyclic(int(spec["cyclic"]), spec.get("gen", "a"))
    elif "direct" in spec:
        G = direct([from_spec(s) for s in spec["direct"]])
    elif "semidirect" in spec:
        sd = spec["semidirect"]
        G = semidirect(from_spec(sd["normal"]), from_spec(sd["acting"]), sd.get("action", {}))
    elif "table" in spec:
        G = from_table(spec["table"])
        if "names" in spec:
            G.names = list(spec["names"])
            G.names[0] = "1"
        if "gens" in spec:
            G.gens = {k: int(v) for k, v in spec["gens"].items()}
    else:
        raise GroupError(f"unrecognised group spec keys {sorted(spec)}")
    if aliases:
        G.aliases.update(aliases)
        G.structure = dict(G.structure or {}, aliases=aliases)
    if "name" in spec:
        G.label = spec["name"]
    return G


# subgroup computations

def derived_subgroup(G: Group) -> Subgroup:
    t = G.np_table
    inv = np.asarray(G.inverse_table)
    comm = t[t[t, inv[:, None]], inv[None, :]]
    return G.generated(set(np.unique(comm).tolist()))


def is_nilpotent(G: Group) -> bool:
    return upper_central_series(G)[-1].order == G.order


def upper_central_series(G: Group) -> list[Subgroup]:
    t = G.np_table
    inv = np.asarray(G.inverse_table)
    comm = t[t[t, inv[:, None]], inv[None, :]]
    series = [Subgroup(G, [0])]
    while True:
        cur = np.zeros(G.order, dtype=bool)
        cur[list(series[-1].members)] = True
        nxt = np.all(cur[comm], axis=1)
        members = np.nonzero(nxt)[0].tolist()
        if len(members) == series[-1].order:
            return series
        series.append(Subgroup(G, members))


def primes_of(n: int) -> list[int]:
    return sorted(factorint(n))


def sylow_decomposition(G: Group) -> dict[int, Subgroup]:
    if not is_nilpotent(G):
        raise GroupError("group is not nilpotent, so it has no Sylow decomposition")
    orders = G.element_orders()
    out = {}
    for p in primes_of(G.order):
        members = [g for g in range(G.order) if set(factorint(orders[g])) <= {p}]
        S = Subgroup(G, members)
        if not S.is_closed():
            raise GroupError(f"{p}-elements do not form a subgroup")
        out[p] = S
    return out


def invariants_from_orders(orders: Sequence[int]) -> list[int]:
    """Invariant factors of an abelian group given the multiset of its element orders."""
    n = len(orders)
    if n == 1:
        return []
    factor_lists = []
    for p, e_total in factorint(n).items():
        counts = []
        k = 1
        while True:
            c = sum(1 for o in orders if (p ** k) % o == 0)
            counts.append(round(_log(c, p)))
            if counts[-1] == e_total:
                break
            k += 1
        prev = 0
        at_least = []
        for s in counts:
            at_least.append(s - prev)
            prev = s
        # at_least[k-1] = number of cyclic p-factors of exponent >= k
        exps = []
        for k in range(len(at_least), 0, -1):
            more = at_least[k] if k < len(at_least) else 0
            exps += [k] * (at_least[k - 1] - more)
        factor_lists.append([p ** e for e in sorted(exps, reverse=True)])
    width = max(len(f) for f in factor_lists)
    inv = []
    for j in range(width):
        inv.append(prod(f[j] for f in factor_lists if j < len(f)))
    return sorted(inv)


def _log(c: int, p: int) -> float:
    k = 0
    while c > 1:
        if c % p:
            raise GroupError("subgroup count is not a prime power")
        c //= p
        k += 1
    return k


def quotient(G: Group, N: Subgroup) -> tuple[Group, list[int]]:
    """G/N as a group plus the projection list g -> coset index."""
    coset_of = [-1] * G.order
    reps = []
    for g in range(G.order):
        if coset_of[g] == -1:
            idx = len(reps)
            reps.append(g)
            for m in N.members:
                coset_of[G.table[g][m]] = idx
    table = [[coset_of[G.table[a][b]] for b in reps] for a in reps]
    names = [G.names[r] for r in reps]
    return Group(table, names, check=False), coset_of


def abelian_invariants(G: Group) -> list[int]:
    Q, _ = quotient(G, derived_subgroup(G))
    return invariants_from_orders(Q.element_orders())


def abelian_basis(G: Group, members: Iterable[int] | None = None) -> list[int]:
    """Independent generators of an abelian (sub)group, largest order first.

    The result b_1..b_k satisfies |<b_1..b_k>| = prod ord(b_i); found by a small
    backtracking search, which is ample for the group sizes used here.
    """
    members = list(range(G.order)) if members is None else sorted(members)
    H = Subgroup(G, members)
    sub, emb = H.as_group()
    target = invariants_from_orders(sub.element_orders())
    elem_divisors = sorted((q for d in target for q in _prime_power_parts(d)), reverse=True)
    orders = sub.element_orders()
    by_order: dict[int, list[int]] = {}
    for g, o in enumerate(orders):
        by_order.setdefault(o, []).append(g)

    def search(chosen: list[int], span: frozenset, k: int):
        if k == len(elem_divisors):
            return chosen
        for g in by_order.get(elem_divisors[k], []):
            if g in span:
                continue
            new = sub.generated(chosen + [g]).members_set
            if len(new) == len(span) * elem_divisors[k]:
                got = search(chosen + [g], new, k + 1)
                if got is not None:
                    return got
        return None

    found = search([], frozenset([0]), 0)
    if found is None:
        raise GroupError("no independent basis found (group not abelian?)")
    return [emb[g] for g in found]


def _prime_power_parts(d: int) -> list[int]:
    return [p ** e for p, e in factorint(d).items()]
