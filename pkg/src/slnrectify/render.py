"""Canonical text rendering and parsing of polynomials over Q(i).

The rendering is the single source of truth used by every serializer:
terms in descending monomial order, e.g. "(3/2+1/2i)*t^2 - t + 1".
Parsing accepts exactly the rendered grammar (a small expression
language with +, -, *, ^ and parentheses), so parse(render(p)) == p.
"""

from __future__ import annotations

import re as _re

from .errors import ParseError
from .scalars import ONE, Scalar, render_scalar

# ---------------------------------------------------------------------------
# rendering


def render_terms(terms) -> str:
    """Render [(coeff, [(var, exp), ...]), ...] already in canonical order."""
    if not terms:
        return "0"
    pieces = []
    for k, (coeff, mono) in enumerate(terms):
        body, sign = _render_term(coeff, mono)
        if k == 0:
            pieces.append(body if sign > 0 else "-" + body)
        else:
            pieces.append(("+ " if sign > 0 else "- ") + body)
    return " ".join(pieces)


def _render_term(coeff: Scalar, mono) -> tuple[str, int]:
    """One term; returns (text without sign, sign)."""
    mono_txt = "*".join(
        v if e == 1 else f"{v}^{e}" for v, e in mono if e != 0
    )
    if coeff.re != 0 and coeff.im != 0:
        # mixed Gaussian coefficient: always parenthesized, sign kept inside
        body = f"({render_scalar(coeff)})"
        return (f"{body}*{mono_txt}" if mono_txt else body, 1)
    sign = 1
    if coeff.re < 0 or coeff.im < 0:
        sign = -1
        coeff = -coeff
    if not mono_txt:
        return render_scalar(coeff), sign
    if coeff.is_one():
        return mono_txt, sign
    return f"{render_scalar(coeff)}*{mono_txt}", sign


# ---------------------------------------------------------------------------
# parsing

_TOKEN = _re.compile(
    r"\s*(?:(?P<num>\d+(?:/\d+)?i?)|(?P<name>[A-Za-z][A-Za-z0-9]*)"
    r"|(?P<op>[()+\-*^]))"
)


def _tokenize(text: str):
    tokens = []
    pos = 0
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if m is None or m.end() == pos and text[pos:].strip():
            raise ParseError(f"bad character in polynomial at {text[pos:]!r}")
        if m.lastgroup == "num":
            body = m.group("num")
            if body.endswith("i"):
                tokens.append(("scalar", Scalar(0, body[:-1] or "1")))
            else:
                tokens.append(("scalar", Scalar(body)))
        elif m.lastgroup == "name":
            name = m.group("name")
            if name == "i":
                tokens.append(("scalar", Scalar(0, 1)))
            else:
                tokens.append(("var", name))
        else:
            tokens.append((m.group("op"), None))
        pos = m.end()
        if not text[pos:].strip():
            break
    tokens.append(("end", None))
    return tokens


class _Parser:
    """Recursive descent over sparse exponent-dict polynomials."""

    def __init__(self, tokens, variables):
        self.tokens = tokens
        self.pos = 0
        self.variables = tuple(variables)
        self.index = {v: k for k, v in enumerate(self.variables)}

    def peek(self):
        return self.tokens[self.pos][0]

    def next(self):
        tok = self.tokens[self.pos]
        self.pos += 1
        return tok

    def parse(self):
        poly = self.sum()
        if self.peek() != "end":
            raise ParseError(f"trailing tokens in polynomial")
        return poly

    def sum(self):
        sign = 1
        while self.peek() in ("+", "-"):
            if self.next()[0] == "-":
                sign = -sign
        poly = self.product()
        if sign < 0:
            poly = _neg(poly)
        while self.peek() in ("+", "-"):
            op = self.next()[0]
            sign = 1 if op == "+" else -1
            while self.peek() in ("+", "-"):
                if self.next()[0] == "-":
                    sign = -sign
            term = self.product()
            poly = _add(poly, _neg(term) if sign < 0 else term)
        return poly

    def product(self):
        poly = self.power()
        while self.peek() == "*":
            self.next()
            poly = _mul(poly, self.power(), len(self.variables))
        return poly

    def power(self):
        base = self.atom()
        if self.peek() == "^":
            self.next()
            kind, val = self.next()
            if kind != "scalar" or not val.is_rational() or val.re.denominator != 1:
                raise ParseError("exponent must be a nonnegative integer")
            e = int(val.re)
            if e < 0:
                raise ParseError("exponent must be a nonnegative integer")
            out = _const(ONE, len(self.variables))
            for _ in range(e):
                out = _mul(out, base, len(self.variables))
            return out
        return base

    def atom(self):
        kind, val = self.next()
        if kind == "scalar":
            return _const(val, len(self.variables))
        if kind == "var":
            if val not in self.index:
                raise ParseError(f"unknown variable {val!r}")
            expo = [0] * len(self.variables)
            expo[self.index[val]] = 1
            return {tuple(expo): ONE}
        if kind == "(":
            poly = self.sum()
            if self.next()[0] != ")":
                raise ParseError("unbalanced parenthesis")
            return poly
        raise ParseError(f"unexpected token {kind!r} in polynomial")


def _const(c: Scalar, nvars: int):
    if c.is_zero():
        return {}
    return {(0,) * nvars: c}


def _neg(p):
    return {k: -v for k, v in p.items()}


def _add(p, q):
    out = dict(p)
    for k, v in q.items():
        s = out.get(k)
        s = v if s is None else s + v
        if s.is_zero():
            out.pop(k, None)
        else:
            out[k] = s
    return out


def _mul(p, q, nvars):
    out = {}
    for ka, va in p.items():
        for kb, vb in q.items():
            key = tuple(a + b for a, b in zip(ka, kb)) if nvars else ()
            s = out.get(key)
            s = va * vb if s is None else s + va * vb
            if s.is_zero():
                out.pop(key, None)
            else:
                out[key] = s
    return out


def parse_exponent_map(text: str, variables) -> dict[tuple[int, ...], Scalar]:
    """Parse the canonical grammar into a sparse exponent map."""
    return _Parser(_tokenize(text), variables).parse()
