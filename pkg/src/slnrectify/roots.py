"""Gaussian-rational roots of exact univariate polynomials.

Root candidates come from sympy's factorization over Q(i); every
candidate is re-verified by exact substitution in our own arithmetic
before it is reported, so correctness never rests on the external
routine.
"""

from __future__ import annotations

import sympy
from gmpy2 import mpq

from .scalars import Scalar
from .unipoly import UniPoly

_T = sympy.Symbol("_slnroot_t")


def _to_sympy(p: UniPoly):
    expr = sympy.Integer(0)
    for d, c in p.coeffs.items():
        coeff = sympy.Rational(c.re.numerator, c.re.denominator) + sympy.I * sympy.Rational(
            c.im.numerator, c.im.denominator
        )
        expr += coeff * _T**d
    return expr


def _from_sympy_const(val) -> Scalar | None:
    val = sympy.nsimplify(val, rational=False)
    re, im = val.as_real_imag()
    if re.is_rational and im.is_rational:
        re, im = sympy.Rational(re), sympy.Rational(im)
        return Scalar(mpq(re.p, re.q), mpq(im.p, im.q))
    return None


def qi_roots(p: UniPoly) -> list[Scalar]:
    """All roots of p lying in Q(i), in a deterministic order."""
    if p.is_zero() or p.is_constant():
        return []
    poly = sympy.Poly(_to_sympy(p), _T, domain="QQ_I")
    found = []
    for root in poly.ground_roots():
        val = _from_sympy_const(root)
        if val is not None and p.evaluate(val).is_zero():
            found.append(val)
    found.sort(key=Scalar.sort_key)
    return found
