"""Typed catalogue of SL_n automorphism generators and their action.

A word stores generators, never expanded coordinate maps; consumers
only ever need the action on curves or on numeric matrices.  Validity
of each generator is a local check (payload support, determinant,
first-column preservation), and each generator has an explicit
inverse, so whole words invert syntactically.
"""

from __future__ import annotations

import random
from dataclasses import dataclass

from .errors import (
    FirstColumnNotPreserved,
    InvalidSupport,
    NotUnimodular,
)
from .linalg import (
    det as scalar_det,
)
from .linalg import (
    identity,
    inverse,
    mat_mul,
    upoly_adjugate,
    upoly_det,
    upoly_mat_mul,
)
from .multipoly import MultiPoly
from .scalars import ONE, ZERO, Scalar
from .unipoly import UniPoly
from .curves import SlCurve


def x_vars(n: int) -> tuple[str, ...]:
    """Matrix-entry variable names x11 ... xnn (sizes up to 9)."""
    if n > 9:
        raise ValueError("matrix sizes above 9 are not supported by the grammar")
    return tuple(f"x{i}{j}" for i in range(1, n + 1) for j in range(1, n + 1))


@dataclass(frozen=True)
class LeftElem:
    """X -> E_ij(p(X)) . X; payload must avoid the row-i variables."""

    i: int
    j: int
    payload: MultiPoly


@dataclass(frozen=True)
class RightElem:
    """X -> X . E_ij(q(X)); payload must avoid the column-j variables."""

    i: int
    j: int
    payload: MultiPoly


@dataclass(frozen=True)
class ConstLeft:
    """X -> B . X with det B = 1."""

    matrix: tuple


@dataclass(frozen=True)
class ConstRight:
    """X -> X . B with det B = 1."""

    matrix: tuple


@dataclass(frozen=True)
class GlPair:
    """X -> A . X . diag(1, ..., 1, 1/det A) with A invertible."""

    matrix: tuple


@dataclass(frozen=True)
class CurveRightMul:
    """X -> X . M(x_n1) where det M = 1 and M's first column is e1."""

    matrix: tuple  # tuple of tuples of UniPoly in the variable s


Generator = LeftElem | RightElem | ConstLeft | ConstRight | GlPair | CurveRightMul


def _freeze(rows):
    return tuple(tuple(row) for row in rows)


def check_generator(g: Generator, n: int) -> Generator:
    """Validate one generator for SL_n; returns it unchanged on success."""
    if isinstance(g, (LeftElem, RightElem)):
        if not (1 <= g.i <= n and 1 <= g.j <= n) or g.i == g.j:
            raise InvalidSupport(f"bad index pair ({g.i}, {g.j})")
        allowed = {
            name
            for name in x_vars(n)
            if (isinstance(g, LeftElem) and name[1] != str(g.i))
            or (isinstance(g, RightElem) and name[2] != str(g.j))
        }
        bad = g.payload.support() - allowed
        if bad:
            side = "row" if isinstance(g, LeftElem) else "column"
            raise InvalidSupport(
                f"payload mentions forbidden {side} variables {sorted(bad)}"
            )
        return g
    if isinstance(g, (ConstLeft, ConstRight)):
        d = scalar_det([list(r) for r in g.matrix])
        if not d.is_one():
            raise NotUnimodular(d, "constant factor must lie in SL_n")
        return g
    if isinstance(g, GlPair):
        d = scalar_det([list(r) for r in g.matrix])
        if d.is_zero():
            raise NotUnimodular(d, "GlPair matrix must be invertible")
        return g
    if isinstance(g, CurveRightMul):
        rows = [list(r) for r in g.matrix]
        d = upoly_det(rows)
        if d != UniPoly.const(ONE, "s"):
            raise NotUnimodular(d, "curve factor must have det identically 1")
        for k, row in enumerate(rows):
            want = ONE if k == 0 else ZERO
            if row[0] != UniPoly.const(want, "s"):
                raise FirstColumnNotPreserved(
                    "first column of the curve factor must be e1"
                )
        return g
    raise TypeError(f"unknown generator {g!r}")


@dataclass(frozen=True)
class AutWord:
    """A finite composable sequence of generators, applied left-to-right."""

    n: int
    gens: tuple

    def __post_init__(self):
        for g in self.gens:
            check_generator(g, self.n)

    def __len__(self):
        return len(self.gens)

    def __add__(self, other: "AutWord") -> "AutWord":
        if self.n != other.n:
            raise ValueError("size mismatch between words")
        return AutWord(self.n, self.gens + other.gens)


def empty_word(n: int) -> AutWord:
    return AutWord(n, ())


# -- application -----------------------------------------------------------


def _curve_assignment(c: SlCurve) -> dict[str, UniPoly]:
    out = {}
    for i in range(c.n):
        for j in range(c.n):
            out[f"x{i + 1}{j + 1}"] = c.entries[i][j]
    return out


def _apply_generator_curve(g: Generator, c: SlCurve) -> SlCurve:
    n = c.n
    rows = [row[:] for row in c.entries]
    if isinstance(g, LeftElem):
        val = g.payload.eval_unipoly(_curve_assignment(c))
        i, j = g.i - 1, g.j - 1
        rows[i] = [a + val * b for a, b in zip(rows[i], rows[j])]
        return SlCurve(n, rows)
    if isinstance(g, RightElem):
        val = g.payload.eval_unipoly(_curve_assignment(c))
        i, j = g.i - 1, g.j - 1
        for row in rows:
            row[j] = row[j] + val * row[i]
        return SlCurve(n, rows)
    if isinstance(g, ConstLeft):
        const = [[UniPoly.const(x) for x in r] for r in g.matrix]
        return SlCurve(n, upoly_mat_mul(const, rows))
    if isinstance(g, ConstRight):
        const = [[UniPoly.const(x) for x in r] for r in g.matrix]
        return SlCurve(n, upoly_mat_mul(rows, const))
    if isinstance(g, GlPair):
        a = [list(r) for r in g.matrix]
        d = scalar_det(a)
        aa = [[UniPoly.const(x) for x in r] for r in a]
        out = upoly_mat_mul(aa, rows)
        for row in out:
            row[n - 1] = row[n - 1] * d.inverse()
        return SlCurve(n, out)
    if isinstance(g, CurveRightMul):
        arg = c.entries[n - 1][0]
        factor = [[e.compose(arg) for e in r] for r in g.matrix]
        return SlCurve(n, upoly_mat_mul(rows, factor))
    raise TypeError(f"unknown generator {g!r}")


def apply_word(w: AutWord, c: SlCurve) -> SlCurve:
    """Exact symbolic action of the word; output revalidated."""
    if w.n != c.n:
        raise ValueError("size mismatch between word and curve")
    for g in w.gens:
        c = _apply_generator_curve(g, c)
    return SlCurve.validate(c.entries)


def apply_word_matrix(w: AutWord, x) -> list[list[Scalar]]:
    """Pointwise action on a numeric SL_n matrix with Scalar entries."""
    n = w.n
    m = [[Scalar.of(e) for e in row] for row in x]
    d = scalar_det(m)
    if not d.is_one():
        raise NotUnimodular(d, "matrix argument must lie in SL_n")
    for g in w.gens:
        m = _apply_generator_matrix(g, m, n)
    return m


def _matrix_assignment(m, n) -> dict[str, Scalar]:
    return {f"x{i + 1}{j + 1}": m[i][j] for i in range(n) for j in range(n)}


def _apply_generator_matrix(g: Generator, m, n):
    if isinstance(g, LeftElem):
        val = g.payload.eval_scalar(_matrix_assignment(m, n))
        i, j = g.i - 1, g.j - 1
        out = [row[:] for row in m]
        out[i] = [a + val * b for a, b in zip(m[i], m[j])]
        return out
    if isinstance(g, RightElem):
        val = g.payload.eval_scalar(_matrix_assignment(m, n))
        i, j = g.i - 1, g.j - 1
        out = [row[:] for row in m]
        for row in out:
            row[j] = row[j] + val * row[i]
        return out
    if isinstance(g, ConstLeft):
        return mat_mul([list(r) for r in g.matrix], m)
    if isinstance(g, ConstRight):
        return mat_mul(m, [list(r) for r in g.matrix])
    if isinstance(g, GlPair):
        a = [list(r) for r in g.matrix]
        out = mat_mul(a, m)
        dinv = scalar_det(a).inverse()
        for row in out:
            row[n - 1] = row[n - 1] * dinv
        return out
    if isinstance(g, CurveRightMul):
        arg = m[n - 1][0]
        factor = [[e.evaluate(arg) for e in r] for r in g.matrix]
        return mat_mul(m, factor)
    raise TypeError(f"unknown generator {g!r}")


# -- inversion -------------------------------------------------------------


def invert_generator(g: Generator) -> Generator:
    if isinstance(g, LeftElem):
        return LeftElem(g.i, g.j, -g.payload)
    if isinstance(g, RightElem):
        return RightElem(g.i, g.j, -g.payload)
    if isinstance(g, ConstLeft):
        return ConstLeft(_freeze(inverse([list(r) for r in g.matrix])))
    if isinstance(g, ConstRight):
        return ConstRight(_freeze(inverse([list(r) for r in g.matrix])))
    if isinstance(g, GlPair):
        return GlPair(_freeze(inverse([list(r) for r in g.matrix])))
    if isinstance(g, CurveRightMul):
        # det = 1, so the inverse is the adjugate, still with first column e1
        return CurveRightMul(_freeze(upoly_adjugate([list(r) for r in g.matrix])))
    raise TypeError(f"unknown generator {g!r}")


def invert_word(w: AutWord) -> AutWord:
    return AutWord(w.n, tuple(invert_generator(g) for g in reversed(w.gens)))


# -- seeded random words ---------------------------------------------------

_COEFFS = [Scalar(v) for v in (1, -1, 2, -2, 3, -3)]


def random_word(seed: int, n: int, max_len: int, max_deg: int) -> AutWord:
    """Deterministic-in-seed word with small payloads, always valid."""
    rng = random.Random(f"slnrectify:{seed}:{n}:{max_len}:{max_deg}")
    length = rng.randint(0, max_len) if max_len > 0 else 0
    gens = []
    for _ in range(length):
        gens.append(_random_generator(rng, n, max_deg))
    return AutWord(n, tuple(gens))


def _random_generator(rng: random.Random, n: int, max_deg: int) -> Generator:
    kind = rng.choice(["leftelem", "rightelem", "constleft", "constright", "glpair"])
    if kind in ("leftelem", "rightelem"):
        i = rng.randint(1, n)
        j = rng.choice([k for k in range(1, n + 1) if k != i])
        if kind == "leftelem":
            allowed = [v for v in x_vars(n) if v[1] != str(i)]
            return LeftElem(i, j, _random_payload(rng, n, allowed, max_deg))
        allowed = [v for v in x_vars(n) if v[2] != str(j)]
        return RightElem(i, j, _random_payload(rng, n, allowed, max_deg))
    if kind in ("constleft", "constright"):
        b = _random_unimodular(rng, n)
        return ConstLeft(_freeze(b)) if kind == "constleft" else ConstRight(_freeze(b))
    while True:
        a = [[Scalar(rng.randint(-3, 3)) for _ in range(n)] for _ in range(n)]
        if not scalar_det(a).is_zero():
            return GlPair(_freeze(a))


def _random_payload(rng: random.Random, n: int, allowed, max_deg: int) -> MultiPoly:
    variables = x_vars(n)
    poly = MultiPoly(variables)
    for _ in range(rng.randint(1, 2)):
        # degree biased low: payload degree drives the cost of everything
        # downstream, and the bound only has to be respected, not attained
        deg = min(rng.randint(0, max_deg), rng.randint(0, max_deg))
        expo = [0] * len(variables)
        for _ in range(deg):
            v = rng.choice(allowed)
            expo[variables.index(v)] += 1
        coeff = rng.choice(_COEFFS)
        if rng.random() < 0.15:
            coeff = coeff * Scalar(0, 1)
        poly = poly + MultiPoly(variables, {tuple(expo): coeff})
    return poly


def _random_unimodular(rng: random.Random, n: int):
    b = identity(n)
    for _ in range(rng.randint(1, 3)):
        i = rng.randint(0, n - 1)
        j = rng.choice([k for k in range(n) if k != i])
        c = Scalar(rng.choice([-2, -1, 1, 2]))
        e = identity(n)
        e[i][j] = c
        b = mat_mul(b, e)
    return b
