"""Polynomial curves C -> SL_n and the closed-embedding decision.

A curve is an n x n matrix of exact univariate polynomials whose
determinant is identically 1.  Injectivity and immersivity are decided
together through one unit-ideal query on the divided differences of
the entries; properness is automatic for nonconstant polynomial maps
from C and is not tested.
"""

from __future__ import annotations

from dataclasses import dataclass

from .errors import NotUnimodular
from .groebner import StepMeter, groebner, is_unit_ideal
from .linalg import det as scalar_det
from .linalg import upoly_det
from .multipoly import MultiPoly, divided_difference
from .roots import qi_roots
from .scalars import ONE, ZERO, Scalar
from .unipoly import UniPoly, gcd_all


class SlCurve:
    __slots__ = ("n", "entries")

    def __init__(self, n: int, entries):
        # internal constructor; use validate() on untrusted input
        self.n = n
        self.entries = entries

    @classmethod
    def validate(cls, entries) -> "SlCurve":
        """Checked constructor: square, n >= 2, det identically 1."""
        n = len(entries)
        if n < 2 or any(len(row) != n for row in entries):
            raise ValueError("entries must form a square array with n >= 2")
        rows = [[e if isinstance(e, UniPoly) else UniPoly.const(e) for e in row]
                for row in entries]
        d = upoly_det(rows)
        if d != UniPoly.const(ONE):
            raise NotUnimodular(d)
        return cls(n, rows)

    def entry(self, i: int, j: int) -> UniPoly:
        """1-based access, matching the file format."""
        return self.entries[i - 1][j - 1]

    def evaluate(self, point: Scalar):
        return [[e.evaluate(point) for e in row] for row in self.entries]

    def derivative_at(self, point: Scalar):
        return [[e.derivative().evaluate(point) for e in row] for row in self.entries]

    def column(self, j: int) -> list[UniPoly]:
        return [row[j - 1] for row in self.entries]

    def is_constant(self) -> bool:
        return all(e.is_constant() for row in self.entries for e in row)

    def __eq__(self, other):
        if not isinstance(other, SlCurve):
            return NotImplemented
        return self.n == other.n and self.entries == other.entries

    def __repr__(self):
        return f"SlCurve(n={self.n})"


def standard_curve(n: int) -> SlCurve:
    """The standard embedding: identity plus t in the lower-left corner."""
    t = UniPoly.x()
    rows = [[UniPoly.const(ONE if i == j else ZERO) for j in range(n)] for i in range(n)]
    rows[n - 1][0] = rows[n - 1][0] + t
    return SlCurve(n, rows)


@dataclass(frozen=True)
class EmbeddingReport:
    """Outcome of the embedding test, with a replayable witness on failure.

    kind is None on success, otherwise one of:
      "pair"          -- witness (t0, r0), t0 != r0, with f(t0) = f(r0);
      "nonimmersive"  -- witness t0 with f'(t0) = 0;
      "constant"      -- the curve is constant;
      "system"        -- no Q(i) witness found; the divided differences
                        themselves are returned as the witness.
    """

    is_embedding: bool
    kind: str | None = None
    t0: Scalar | None = None
    r0: Scalar | None = None
    polys: tuple | None = None


def curve_divided_differences(c: SlCurve) -> list[MultiPoly]:
    return [divided_difference(e) for row in c.entries for e in row]


def is_embedding(c: SlCurve, budget: int | StepMeter = None) -> EmbeddingReport:
    """Decide the closed-embedding property, with witness extraction."""
    meter = budget if isinstance(budget, StepMeter) else StepMeter(
        budget if budget is not None else 10**6
    )
    dds = [q for q in curve_divided_differences(c) if not q.is_zero()]
    if not dds:
        return EmbeddingReport(False, "constant")
    if is_unit_ideal(dds, meter):
        return EmbeddingReport(True)
    return _extract_witness(c, dds, meter)


def _subst_r(q: MultiPoly, r0: Scalar) -> UniPoly:
    out: dict[int, Scalar] = {}
    for (et, er), coeff in q.coeffs.items():
        val = coeff * (r0**er) if er else coeff
        s = out.get(et, ZERO) + val
        if s.is_zero():
            out.pop(et, None)
        else:
            out[et] = s
    return UniPoly(out, "t")


def _extract_witness(c: SlCurve, dds, meter) -> EmbeddingReport:
    """Hunt for a common zero of the divided differences in Q(i)^2.

    Elimination first: univariate-in-r basis elements pin down the r
    coordinates of the (finitely many, in the 0-dimensional case)
    common zeros.  If the zero set is positive-dimensional, fall back
    to trial r values.  Every candidate is verified exactly before it
    is reported.
    """
    from .errors import ResourceExceeded

    candidates: list[Scalar] = []
    try:
        basis = groebner(dds, "lex", meter)  # lex with t > r
        for g in basis:
            if all(et == 0 for (et, _er) in g.coeffs):
                candidates.extend(qi_roots(g.to_unipoly("r").rename("r")))
    except ResourceExceeded:
        pass
    if not candidates:
        candidates = [Scalar(v) for v in (-1, 1, -2, 2, -3, 3, 0)] + [
            Scalar(0, 1), Scalar(0, -1)]

    fallback = None
    for r0 in candidates:
        specialized = [p for p in (_subst_r(q, r0) for q in dds) if not p.is_zero()]
        if not specialized:
            continue
        g = gcd_all(specialized)
        if g.is_constant():
            continue
        for t0 in qi_roots(g):
            if t0 == r0:
                if all(
                    e.derivative().evaluate(t0).is_zero()
                    for row in c.entries for e in row
                ):
                    fallback = fallback or EmbeddingReport(
                        False, "nonimmersive", t0=t0
                    )
                continue
            if c.evaluate(t0) == c.evaluate(r0):
                return EmbeddingReport(False, "pair", t0=t0, r0=r0)
    if fallback is not None:
        return fallback

    # immersivity-only failure: common zero of all entry derivatives
    derivs = [e.derivative() for row in c.entries for e in row]
    nz = [p for p in derivs if not p.is_zero()]
    if nz:
        g = gcd_all(nz)
        if not g.is_constant():
            for t0 in qi_roots(g):
                return EmbeddingReport(False, "nonimmersive", t0=t0)
    return EmbeddingReport(False, "system", polys=tuple(dds))


def rank_conditions(c: SlCurve) -> bool:
    """det(f(0) - f(1)) != 0 and det(f'(0)) != 0, evaluated exactly."""
    a = c.evaluate(Scalar(0))
    b = c.evaluate(Scalar(1))
    diff = [[x - y for x, y in zip(ra, rb)] for ra, rb in zip(a, b)]
    if scalar_det(diff).is_zero():
        return False
    return not scalar_det(c.derivative_at(Scalar(0))).is_zero()
