"""Exact univariate polynomials over Q(i).

Coefficients are stored sparsely as {degree: Scalar} with no zero
values, so the zero polynomial is the empty map and the leading
coefficient is always nonzero.
"""

from __future__ import annotations

from .errors import AllZeroInput, DivisionObstruction
from .render import parse_exponent_map, render_terms
from .scalars import ONE, ZERO, Scalar


class UniPoly:
    __slots__ = ("var", "coeffs")

    def __init__(self, coeffs=None, var: str = "t"):
        self.var = var
        self.coeffs: dict[int, Scalar] = {}
        if coeffs:
            for d, c in coeffs.items():
                c = Scalar.of(c)
                if not c.is_zero():
                    self.coeffs[d] = c

    # -- constructors -------------------------------------------------

    @classmethod
    def const(cls, c, var: str = "t") -> "UniPoly":
        return cls({0: Scalar.of(c)}, var)

    @classmethod
    def x(cls, var: str = "t") -> "UniPoly":
        return cls({1: ONE}, var)

    @classmethod
    def from_list(cls, ascending, var: str = "t") -> "UniPoly":
        return cls({d: Scalar.of(c) for d, c in enumerate(ascending)}, var)

    @classmethod
    def parse(cls, text: str, var: str = "t") -> "UniPoly":
        expo = parse_exponent_map(text, (var,))
        return cls({k[0]: v for k, v in expo.items()}, var)

    # -- basic queries ------------------------------------------------

    def degree(self) -> int:
        """Degree; -1 for the zero polynomial."""
        return max(self.coeffs) if self.coeffs else -1

    def lc(self) -> Scalar:
        return self.coeffs[max(self.coeffs)] if self.coeffs else ZERO

    def is_zero(self) -> bool:
        return not self.coeffs

    def is_constant(self) -> bool:
        return self.degree() <= 0

    def constant_value(self) -> Scalar:
        return self.coeffs.get(0, ZERO)

    def __getitem__(self, d: int) -> Scalar:
        return self.coeffs.get(d, ZERO)

    # -- arithmetic ---------------------------------------------------

    def _coerce(self, other):
        if isinstance(other, UniPoly):
            return other
        return UniPoly.const(Scalar.of(other), self.var)

    def __add__(self, other):
        other = self._coerce(other)
        out = dict(self.coeffs)
        for d, c in other.coeffs.items():
            s = out.get(d)
            s = c if s is None else s + c
            if s.is_zero():
                out.pop(d, None)
            else:
                out[d] = s
        return UniPoly(out, self.var)

    __radd__ = __add__

    def __neg__(self):
        return UniPoly({d: -c for d, c in self.coeffs.items()}, self.var)

    def __sub__(self, other):
        return self + (-self._coerce(other))

    def __rsub__(self, other):
        return self._coerce(other) - self

    def __mul__(self, other):
        if isinstance(other, Scalar):
            if other.is_zero():
                return UniPoly({}, self.var)
            return UniPoly({d: c * other for d, c in self.coeffs.items()}, self.var)
        if isinstance(other, int):
            return self * Scalar(other)
        out: dict[int, Scalar] = {}
        for da, ca in self.coeffs.items():
            for db, cb in other.coeffs.items():
                d = da + db
                s = out.get(d)
                s = ca * cb if s is None else s + ca * cb
                if s.is_zero():
                    out.pop(d, None)
                else:
                    out[d] = s
        return UniPoly(out, self.var)

    __rmul__ = __mul__

    def __pow__(self, k: int):
        out = UniPoly.const(ONE, self.var)
        base = self
        while k:
            if k & 1:
                out = out * base
            base = base * base
            k >>= 1
        return out

    def divmod(self, other: "UniPoly") -> tuple["UniPoly", "UniPoly"]:
        """Exact euclidean division over the field Q(i)."""
        if other.is_zero():
            raise ZeroDivisionError("division by zero polynomial")
        q: dict[int, Scalar] = {}
        rem = dict(self.coeffs)
        dm, lm = other.degree(), other.lc()
        lm_inv = lm.inverse()

        def rdeg():
            return max(rem) if rem else -1

        while rdeg() >= dm:
            d = rdeg()
            f = rem[d] * lm_inv
            q[d - dm] = f
            for db, cb in other.coeffs.items():
                dd = d - dm + db
                s = rem.get(dd, ZERO) - f * cb
                if s.is_zero():
                    rem.pop(dd, None)
                else:
                    rem[dd] = s
        return UniPoly(q, self.var), UniPoly(rem, self.var)

    def __mod__(self, other):
        return self.divmod(other)[1]

    def __floordiv__(self, other):
        return self.divmod(other)[0]

    def exact_div(self, other: "UniPoly") -> "UniPoly":
        q, r = self.divmod(other)
        if not r.is_zero():
            raise DivisionObstruction(f"inexact division, remainder {r}")
        return q

    def monic(self) -> "UniPoly":
        if self.is_zero():
            return self
        return self * self.lc().inverse()

    def derivative(self) -> "UniPoly":
        return UniPoly(
            {d - 1: c * Scalar(d) for d, c in self.coeffs.items() if d > 0},
            self.var,
        )

    def evaluate(self, point: Scalar) -> Scalar:
        """Horner evaluation at an exact point."""
        point = Scalar.of(point)
        acc = ZERO
        for d in range(self.degree(), -1, -1):
            acc = acc * point + self.coeffs.get(d, ZERO)
        return acc

    def compose(self, inner: "UniPoly") -> "UniPoly":
        """self(inner), exact, in inner's variable."""
        acc = UniPoly({}, inner.var)
        for d in range(self.degree(), -1, -1):
            acc = acc * inner + UniPoly.const(self.coeffs.get(d, ZERO), inner.var)
        return acc

    def rename(self, var: str) -> "UniPoly":
        return UniPoly(dict(self.coeffs), var)

    # -- comparison / rendering ---------------------------------------

    def __eq__(self, other):
        if isinstance(other, (int, Scalar)):
            other = self._coerce(other)
        if not isinstance(other, UniPoly):
            return NotImplemented
        return self.coeffs == other.coeffs

    def __hash__(self):
        return hash(frozenset(self.coeffs.items()))

    def __str__(self):
        terms = [
            (c, [(self.var, d)])
            for d, c in sorted(self.coeffs.items(), reverse=True)
        ]
        return render_terms(terms)

    def __repr__(self):
        return f"UniPoly({self})"


def gcd(a: UniPoly, b: UniPoly) -> UniPoly:
    """Monic gcd by the euclidean algorithm."""
    while not b.is_zero():
        a, b = b, a % b
    return a.monic()


def xgcd(a: UniPoly, b: UniPoly) -> tuple[UniPoly, UniPoly, UniPoly]:
    """Extended euclid: returns (g, u, v) with u*a + v*b = g, g monic."""
    var = a.var
    r0, r1 = a, b
    u0, u1 = UniPoly.const(ONE, var), UniPoly({}, var)
    v0, v1 = UniPoly({}, var), UniPoly.const(ONE, var)
    while not r1.is_zero():
        q, r = r0.divmod(r1)
        r0, r1 = r1, r
        u0, u1 = u1, u0 - q * u1
        v0, v1 = v1, v0 - q * v1
    if r0.is_zero():
        return r0, u0, v0
    lead = r0.lc().inverse()
    return r0 * lead, u0 * lead, v0 * lead


def xgcd_list(ps: list[UniPoly]) -> tuple[UniPoly, list[UniPoly]]:
    """Monic gcd of a list with Bezout cofactors, degree-reduced.

    Returns (g, cs) with sum(c*p) = g exactly.  Inputs that are
    multiples of the running gcd keep a zero cofactor; afterwards each
    cofactor is reduced modulo the complementary quotients (in list
    order), which keeps the output degrees small and reproducible.
    """
    if not ps:
        raise AllZeroInput("empty input list")
    if all(p.is_zero() for p in ps):
        raise AllZeroInput("all input polynomials are zero")
    var = ps[0].var
    g = ps[0]
    cofactors = [UniPoly.const(ONE, var)]
    for p in ps[1:]:
        if not g.is_zero() and (p.is_zero() or (p % g).is_zero()):
            cofactors.append(UniPoly({}, var))
            continue
        g2, u, v = xgcd(g, p)
        cofactors = [u * c for c in cofactors]
        cofactors.append(v)
        g = g2
    if not g.lc().is_one():
        s = g.lc().inverse()
        g = g * s
        cofactors = [c * s for c in cofactors]
    normalize_cofactors(ps, cofactors, g)
    return g, cofactors


def normalize_cofactors(ps: list[UniPoly], cs: list[UniPoly], g: UniPoly) -> None:
    """Reduce cofactors in place, preserving sum(c*p).

    g must divide every p.  For a pair (a, b) the swap
    c_a -= q*(p_b/g), c_b += q*(p_a/g) leaves the combination intact;
    reducing pairwise in list order yields the minimal-degree
    representative with a deterministic tie-break.
    """
    quots = [None if p.is_zero() else p.exact_div(g) for p in ps]
    live = [k for k, q in enumerate(quots) if q is not None and q.degree() >= 1]
    for a in range(len(live)):
        for b in range(a + 1, len(live)):
            ka, kb = live[a], live[b]
            if cs[ka].degree() < quots[kb].degree():
                continue
            q, r = cs[ka].divmod(quots[kb])
            cs[ka] = r
            cs[kb] = cs[kb] + q * quots[ka]


def gcd_all(ps: list[UniPoly]) -> UniPoly:
    g = ps[0]
    for p in ps[1:]:
        g = gcd(g, p)
        if not g.is_zero() and g.is_constant():
            break
    return g.monic() if not g.is_zero() else g
