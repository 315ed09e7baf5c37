"""Recursive-descent parser shared by polynomial and algebra-element literals.

Grammar::

    expr    := ['+'|'-'] term (('+'|'-') term)*
    term    := factor ('*' factor)*
    factor  := primary ['^' integer]
    primary := rational | root | atom '(' args ')' | '(' expr ')'

Roots are written ``z12^5`` (zeta_12 to the 5th) or ``w3`` (zeta_3).
"""

from __future__ import annotations

import re
from fractions import Fraction
from typing import Callable

from .scalars import Cyclo, parse_root


class LiteralError(ValueError):
    pass


_ROOT = re.compile(r"[zw]\d+(?:\^-?\d+)?")
_NUM = re.compile(r"\d+(?:/\d+)?")


def _tokenize(text: str, atoms: set[str]) -> list[tuple[str, str]]:
    toks: list[tuple[str, str]] = []
    i = 0
    while i < len(text):
        ch = text[i]
        if ch.isspace():
            i += 1
            continue
        if ch in "+-*^()":
            toks.append((ch, ch))
            i += 1
            continue
        m = re.match(r"[A-Za-z_]\w*", text[i:])
        if m and m.group(0) in atoms and text[i + m.end():i + m.end() + 1] == "(":
            depth, j = 0, i + m.end()
            while j < len(text):
                depth += text[j] == "("
                depth -= text[j] == ")"
                if depth == 0:
                    break
                j += 1
            if depth:
                raise LiteralError(f"unbalanced parentheses in {text!r}")
            toks.append(("atom", m.group(0) + "\0" + text[i + m.end() + 1:j]))
            i = j + 1
            continue
        m = _ROOT.match(text, i)
        if m:
            toks.append(("root", m.group(0)))
            i = m.end()
            continue
        m = _NUM.match(text, i)
        if m:
            toks.append(("num", m.group(0)))
            i = m.end()
            continue
        raise LiteralError(f"unexpected character {ch!r} at position {i} in {text!r}")
    return toks


def parse_literal(text: str, atoms: dict[str, Callable[[str], object]],
                  lift: Callable[[Cyclo], object]):
    """Evaluate a literal; ``atoms`` maps atom names to builders taking the raw argument text."""
    toks = _tokenize(text, set(atoms))
    pos = 0

    def peek():
        return toks[pos][0] if pos < len(toks) else None

    def take(kind=None):
        nonlocal pos
        if pos >= len(toks):
            raise LiteralError(f"unexpected end of input in {text!r}")
        tok = toks[pos]
        if kind is not None and tok[0] != kind:
            raise LiteralError(f"expected {kind!r} but found {tok[1]!r} in {text!r}")
        pos += 1
        return tok

    def combine(a, b, op):
        if isinstance(a, Cyclo) and isinstance(b, Cyclo):
            return op(a, b)
        if isinstance(a, Cyclo):
            a = lift(a)
        if isinstance(b, Cyclo):
            b = lift(b)
        return op(a, b)

    def expr():
        sign = 1
        if peek() in ("+", "-"):
            sign = -1 if take()[0] == "-" else 1
        val = term()
        if sign < 0:
            val = combine(Cyclo.rational(-1), val, lambda x, y: x * y)
        while peek() in ("+", "-"):
            op = take()[0]
            rhs = term()
            val = combine(val, rhs, (lambda x, y: x + y) if op == "+" else (lambda x, y: x - y))
        return val

    def term():
        val = factor()
        while peek() == "*":
            take()
            val = combine(val, factor(), lambda x, y: x * y)
        return val

    def factor():
        base = primary()
        if peek() == "^":
            take()
            neg = peek() == "-"
            if neg:
                take()
            k = int(take("num")[1])
            if neg:
                if not isinstance(base, Cyclo):
                    raise LiteralError("negative powers are only allowed on scalars")
                return base ** (-k)
            out = None
            for _ in range(k):
                out = base if out is None else combine(out, base, lambda x, y: x * y)
            return out if out is not None else Cyclo.one()
        return base

    def primary():
        kind, val = take()
        if kind == "num":
            return Cyclo.rational(Fraction(val))
        if kind == "root":
            return parse_root(val).to_cyclo()
        if kind == "atom":
            name, arg = val.split("\0", 1)
            return atoms[name](arg)
        if kind == "(":
            inner = expr()
            take(")")
            return inner
        raise LiteralError(f"unexpected token {val!r} in {text!r}")

    out = expr()
    if pos != len(toks):
        raise LiteralError(f"trailing input {toks[pos][1]!r} in {text!r}")
    return out
