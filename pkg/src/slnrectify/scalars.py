"""Exact Gaussian rationals a + b*i over arbitrary-precision rationals.

This is the coefficient field for everything downstream.  Rationals are
gmpy2.mpq, which keeps fractions reduced with positive denominators, so
the representation is canonical by construction.
"""

from __future__ import annotations

from gmpy2 import mpq

_NUMERIC = (int, type(mpq(0)))


class Scalar:
    """An element a + b*i of Q(i), with exact field arithmetic."""

    __slots__ = ("re", "im")

    def __init__(self, re=0, im=0):
        self.re = mpq(re)
        self.im = mpq(im)

    # -- constructors -------------------------------------------------

    @staticmethod
    def of(value) -> "Scalar":
        if isinstance(value, Scalar):
            return value
        return Scalar(value)

    # -- predicates ---------------------------------------------------

    def is_zero(self) -> bool:
        return self.re == 0 and self.im == 0

    def is_one(self) -> bool:
        return self.re == 1 and self.im == 0

    def is_rational(self) -> bool:
        return self.im == 0

    # -- arithmetic ---------------------------------------------------

    def __add__(self, other):
        if not isinstance(other, Scalar):
            if not isinstance(other, _NUMERIC):
                return NotImplemented
            other = Scalar(other)
        return Scalar(self.re + other.re, self.im + other.im)

    __radd__ = __add__

    def __neg__(self):
        return Scalar(-self.re, -self.im)

    def __sub__(self, other):
        if not isinstance(other, Scalar):
            if not isinstance(other, _NUMERIC):
                return NotImplemented
            other = Scalar(other)
        return Scalar(self.re - other.re, self.im - other.im)

    def __rsub__(self, other):
        return Scalar.of(other) - self

    def __mul__(self, other):
        if not isinstance(other, Scalar):
            if not isinstance(other, _NUMERIC):
                return NotImplemented
            other = Scalar(other)
        return Scalar(
            self.re * other.re - self.im * other.im,
            self.re * other.im + self.im * other.re,
        )

    __rmul__ = __mul__

    def conjugate(self) -> "Scalar":
        return Scalar(self.re, -self.im)

    def norm(self):
        """Field norm a^2 + b^2, a nonnegative rational."""
        return self.re * self.re + self.im * self.im

    def inverse(self) -> "Scalar":
        n = self.norm()
        if n == 0:
            raise ZeroDivisionError("inverse of zero Scalar")
        return Scalar(self.re / n, -self.im / n)

    def __truediv__(self, other):
        if not isinstance(other, (Scalar, *_NUMERIC)):
            return NotImplemented
        return self * Scalar.of(other).inverse()

    def __rtruediv__(self, other):
        return Scalar.of(other) * self.inverse()

    def __pow__(self, k: int):
        if k < 0:
            return self.inverse() ** (-k)
        out = ONE
        base = self
        while k:
            if k & 1:
                out = out * base
            base = base * base
            k >>= 1
        return out

    # -- comparison / hashing -----------------------------------------

    def __eq__(self, other):
        if isinstance(other, _NUMERIC):
            other = Scalar(other)
        if not isinstance(other, Scalar):
            return NotImplemented
        return self.re == other.re and self.im == other.im

    def __hash__(self):
        return hash((self.re, self.im))

    # -- rendering ----------------------------------------------------

    def __str__(self):
        return render_scalar(self)

    def __repr__(self):
        return f"Scalar({self.re!r}, {self.im!r})"

    def sort_key(self):
        """Deterministic total order, used only for canonical output."""
        return (self.re, self.im)


ZERO = Scalar(0)
ONE = Scalar(1)
I = Scalar(0, 1)


def render_scalar(s: Scalar) -> str:
    """Canonical rendering: "3/2", "-2", "i", "-1/2i", "3/2+1/2i"."""
    if s.im == 0:
        return str(s.re)
    if s.re == 0:
        return _imag_part(s.im)
    sign = "+" if s.im > 0 else "-"
    return f"{s.re}{sign}{_imag_part(abs(s.im))}"


def _imag_part(b) -> str:
    if b == 1:
        return "i"
    if b == -1:
        return "-i"
    return f"{b}i"


def parse_scalar(text: str) -> Scalar:
    """Inverse of render_scalar (also accepts surrounding whitespace)."""
    from .errors import ParseError

    text = text.strip().replace(" ", "")
    if not text:
        raise ParseError("empty scalar")
    # split into at most two signed parts
    parts = []
    start = 0
    for k in range(1, len(text)):
        if text[k] in "+-" and text[k - 1] not in "+-/eE":
            parts.append(text[start:k])
            start = k
    parts.append(text[start:])
    if len(parts) > 2:
        raise ParseError(f"bad scalar {text!r}")
    re = im = mpq(0)
    seen_im = False
    for part in parts:
        if part.endswith("i"):
            if seen_im:
                raise ParseError(f"bad scalar {text!r}")
            seen_im = True
            body = part[:-1]
            if body in ("", "+"):
                im = mpq(1)
            elif body == "-":
                im = mpq(-1)
            else:
                im = _parse_rational(body)
        else:
            re = _parse_rational(part)
    return Scalar(re, im)


def _parse_rational(text: str):
    from .errors import ParseError

    try:
        return mpq(text.lstrip("+"))
    except (ValueError, ZeroDivisionError) as exc:
        raise ParseError(f"bad rational {text!r}") from exc
