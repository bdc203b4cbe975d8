"""Sparse multivariate polynomials over Q(i) plus monomial orders.

A MultiPoly carries an explicit ordered tuple of variable names and a
sparse exponent map.  The same type houses the bivariate (t, r) ring
used by the embedding test and the matrix-entry ring used by
automorphism payloads.
"""

from __future__ import annotations

from .render import parse_exponent_map, render_terms
from .scalars import ONE, ZERO, Scalar
from .unipoly import UniPoly

# -- monomial orders -------------------------------------------------------


def lex_key(expo: tuple[int, ...]):
    return expo


def grevlex_key(expo: tuple[int, ...]):
    return (sum(expo), tuple(-e for e in reversed(expo)))


ORDERS = {"lex": lex_key, "grevlex": grevlex_key}


class MultiPoly:
    __slots__ = ("variables", "coeffs")

    def __init__(self, variables, coeffs=None):
        self.variables = tuple(variables)
        self.coeffs: dict[tuple[int, ...], Scalar] = {}
        if coeffs:
            for e, c in coeffs.items():
                c = Scalar.of(c)
                if not c.is_zero():
                    self.coeffs[tuple(e)] = c

    # -- constructors -------------------------------------------------

    @classmethod
    def const(cls, c, variables) -> "MultiPoly":
        variables = tuple(variables)
        return cls(variables, {(0,) * len(variables): Scalar.of(c)})

    @classmethod
    def var(cls, name: str, variables) -> "MultiPoly":
        variables = tuple(variables)
        e = [0] * len(variables)
        e[variables.index(name)] = 1
        return cls(variables, {tuple(e): ONE})

    @classmethod
    def parse(cls, text: str, variables) -> "MultiPoly":
        return cls(variables, parse_exponent_map(text, variables))

    @classmethod
    def from_unipoly(cls, p: UniPoly, variables, name: str | None = None) -> "MultiPoly":
        variables = tuple(variables)
        idx = variables.index(name if name is not None else p.var)
        out = {}
        for d, c in p.coeffs.items():
            e = [0] * len(variables)
            e[idx] = d
            out[tuple(e)] = c
        return cls(variables, out)

    # -- queries ------------------------------------------------------

    def is_zero(self) -> bool:
        return not self.coeffs

    def is_constant(self) -> bool:
        return all(sum(e) == 0 for e in self.coeffs)

    def constant_value(self) -> Scalar:
        return self.coeffs.get((0,) * len(self.variables), ZERO)

    def total_degree(self) -> int:
        return max((sum(e) for e in self.coeffs), default=-1)

    def support(self) -> set[str]:
        """Names of the variables that actually occur."""
        out = set()
        for e in self.coeffs:
            for v, d in zip(self.variables, e):
                if d:
                    out.add(v)
        return out

    def leading(self, key) -> tuple[tuple[int, ...], Scalar]:
        e = max(self.coeffs, key=key)
        return e, self.coeffs[e]

    # -- arithmetic ---------------------------------------------------

    def _coerce(self, other):
        if isinstance(other, MultiPoly):
            return other
        return MultiPoly.const(Scalar.of(other), self.variables)

    def __add__(self, other):
        other = self._coerce(other)
        out = dict(self.coeffs)
        for e, c in other.coeffs.items():
            s = out.get(e)
            s = c if s is None else s + c
            if s.is_zero():
                out.pop(e, None)
            else:
                out[e] = s
        return MultiPoly(self.variables, out)

    __radd__ = __add__

    def __neg__(self):
        return MultiPoly(self.variables, {e: -c for e, c in self.coeffs.items()})

    def __sub__(self, other):
        return self + (-self._coerce(other))

    def __rsub__(self, other):
        return self._coerce(other) - self

    def __mul__(self, other):
        if isinstance(other, Scalar):
            if other.is_zero():
                return MultiPoly(self.variables)
            return MultiPoly(
                self.variables, {e: c * other for e, c in self.coeffs.items()}
            )
        if isinstance(other, int):
            return self * Scalar(other)
        out: dict[tuple[int, ...], Scalar] = {}
        for ea, ca in self.coeffs.items():
            for eb, cb in other.coeffs.items():
                e = tuple(x + y for x, y in zip(ea, eb))
                s = out.get(e)
                s = ca * cb if s is None else s + ca * cb
                if s.is_zero():
                    out.pop(e, None)
                else:
                    out[e] = s
        return MultiPoly(self.variables, out)

    __rmul__ = __mul__

    def __pow__(self, k: int):
        out = MultiPoly.const(ONE, self.variables)
        base = self
        while k:
            if k & 1:
                out = out * base
            base = base * base
            k >>= 1
        return out

    def mul_term(self, expo: tuple[int, ...], coeff: Scalar) -> "MultiPoly":
        return MultiPoly(
            self.variables,
            {
                tuple(x + y for x, y in zip(e, expo)): c * coeff
                for e, c in self.coeffs.items()
            },
        )

    # -- substitution -------------------------------------------------

    def eval_unipoly(self, assign: dict[str, UniPoly], var: str = "t") -> UniPoly:
        """Substitute a univariate polynomial for every occurring variable.

        Powers of the assigned polynomials are memoized, which matters
        when the same payload is applied across many terms.
        """
        cache: dict[tuple[int, int], UniPoly] = {}
        polys = [assign.get(v) for v in self.variables]

        def power(idx: int, e: int) -> UniPoly:
            got = cache.get((idx, e))
            if got is None:
                if e == 1:
                    got = polys[idx]
                else:
                    got = power(idx, e - 1) * polys[idx]
                cache[(idx, e)] = got
            return got

        acc = UniPoly({}, var)
        for expo, coeff in self.coeffs.items():
            term = UniPoly.const(coeff, var)
            for idx, e in enumerate(expo):
                if e:
                    if polys[idx] is None:
                        raise KeyError(
                            f"no assignment for variable {self.variables[idx]!r}"
                        )
                    term = term * power(idx, e)
            acc = acc + term
        return acc

    def eval_scalar(self, assign: dict[str, Scalar]) -> Scalar:
        acc = ZERO
        for expo, coeff in self.coeffs.items():
            val = coeff
            for v, e in zip(self.variables, expo):
                if e:
                    val = val * (Scalar.of(assign[v]) ** e)
            acc = acc + val
        return acc

    def substitute_poly(self, assign: dict[str, "MultiPoly"], variables) -> "MultiPoly":
        """Substitute MultiPolys (all over `variables`) for the occurring vars."""
        variables = tuple(variables)
        cache: dict[tuple[int, int], MultiPoly] = {}
        polys = [assign.get(v) for v in self.variables]

        def power(idx: int, e: int) -> MultiPoly:
            got = cache.get((idx, e))
            if got is None:
                got = polys[idx] if e == 1 else power(idx, e - 1) * polys[idx]
                cache[(idx, e)] = got
            return got

        acc = MultiPoly(variables)
        for expo, coeff in self.coeffs.items():
            term = MultiPoly.const(coeff, variables)
            for idx, e in enumerate(expo):
                if e:
                    if polys[idx] is None:
                        raise KeyError(
                            f"no assignment for variable {self.variables[idx]!r}"
                        )
                    term = term * power(idx, e)
            acc = acc + term
        return acc

    def with_variables(self, variables) -> "MultiPoly":
        """Reinterpret over a different variable tuple (a superset)."""
        variables = tuple(variables)
        idx = [variables.index(v) for v in self.variables]
        out = {}
        for e, c in self.coeffs.items():
            ne = [0] * len(variables)
            for pos, d in zip(idx, e):
                ne[pos] = d
            out[tuple(ne)] = c
        return MultiPoly(variables, out)

    def to_unipoly(self, var: str) -> UniPoly:
        """Project to a univariate polynomial; requires support <= {var}."""
        idx = self.variables.index(var)
        out = {}
        for e, c in self.coeffs.items():
            if any(d and k != idx for k, d in enumerate(e)):
                raise ValueError(f"polynomial involves more than {var!r}")
            out[e[idx]] = c
        return UniPoly(out, var)

    # -- comparison / rendering ---------------------------------------

    def __eq__(self, other):
        if isinstance(other, (int, Scalar)):
            other = self._coerce(other)
        if not isinstance(other, MultiPoly):
            return NotImplemented
        return self.variables == other.variables and self.coeffs == other.coeffs

    def __hash__(self):
        return hash((self.variables, frozenset(self.coeffs.items())))

    def __str__(self):
        keys = sorted(self.coeffs, key=grevlex_key, reverse=True)
        terms = [
            (self.coeffs[e], list(zip(self.variables, e)))
            for e in keys
        ]
        return render_terms(terms)

    def __repr__(self):
        return f"MultiPoly({self})"


# -- divided differences ---------------------------------------------------

BIVARS = ("t", "r")


def divided_difference(p: UniPoly) -> MultiPoly:
    """The exact quotient q(t, r) = (p(t) - p(r)) / (t - r).

    Its diagonal restriction q(t, t) is the derivative p', so the
    common-zero locus across coordinates merges the injectivity and
    immersivity failures of a polynomial map.
    """
    out: dict[tuple[int, int], Scalar] = {}
    for d, c in p.coeffs.items():
        # (t^d - r^d)/(t - r) = sum_{a+b=d-1} t^a r^b
        for a in range(d):
            e = (a, d - 1 - a)
            s = out.get(e)
            s = c if s is None else s + c
            if s.is_zero():
                out.pop(e, None)
            else:
                out[e] = s
    return MultiPoly(BIVARS, out)
