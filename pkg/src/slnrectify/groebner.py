"""Buchberger engine: reduced bases, unit-ideal queries, implicitization.

The engine uses the sugar selection strategy with the product
criterion and full inter-reduction.  All loops are metered: every
single-term cancellation costs one step against a caller-supplied
budget, and exhaustion raises ResourceExceeded rather than running
unbounded.
"""

from __future__ import annotations

import heapq
import math

from .errors import NotASection, ResourceExceeded
from .linalg import solve_particular
from .multipoly import ORDERS, MultiPoly, grevlex_key
from .scalars import ONE, ZERO, Scalar
from .unipoly import UniPoly

DEFAULT_BUDGET = 10**6


class StepMeter:
    """Mutable countdown shared across one computation."""

    __slots__ = ("remaining",)

    def __init__(self, budget: int = DEFAULT_BUDGET):
        self.remaining = budget

    def spend(self, n: int = 1) -> None:
        self.remaining -= n
        if self.remaining < 0:
            raise ResourceExceeded("basis-size/degree budget exhausted")


def _divides(ea: tuple[int, ...], eb: tuple[int, ...]) -> bool:
    return all(x <= y for x, y in zip(ea, eb))


def _lcm(ea, eb):
    return tuple(max(x, y) for x, y in zip(ea, eb))


def _sub(ea, eb):
    return tuple(x - y for x, y in zip(ea, eb))


def reduce_poly(p: MultiPoly, basis, key, meter: StepMeter) -> MultiPoly:
    """Full normal form of p modulo the basis for the given order."""
    work = dict(p.coeffs)
    rem: dict[tuple[int, ...], Scalar] = {}
    lts = [g.leading(key) for g in basis]
    while work:
        e = max(work, key=key)
        c = work.pop(e)
        for g, (eg, cg) in zip(basis, lts):
            if _divides(eg, e):
                meter.spend()
                shift = _sub(e, eg)
                f = c / cg
                for e2, c2 in g.coeffs.items():
                    if e2 == eg:
                        continue
                    tgt = tuple(x + y for x, y in zip(e2, shift))
                    s = work.get(tgt, ZERO) - f * c2
                    if s.is_zero():
                        work.pop(tgt, None)
                    else:
                        work[tgt] = s
                break
        else:
            rem[e] = c
    return MultiPoly(p.variables, rem)


def _spoly(f: MultiPoly, g: MultiPoly, key) -> MultiPoly:
    ef, cf = f.leading(key)
    eg, cg = g.leading(key)
    l = _lcm(ef, eg)
    return f.mul_term(_sub(l, ef), cf.inverse()) - g.mul_term(_sub(l, eg), cg.inverse())


def groebner(gens, order: str = "grevlex", budget: int | StepMeter = DEFAULT_BUDGET):
    """Reduced Groebner basis of the generators for the given order.

    Nonzero constants short-circuit to [1].  The result is monic,
    inter-reduced and sorted by descending leading monomial, hence
    canonical for the order.
    """
    key = ORDERS[order] if isinstance(order, str) else order
    meter = budget if isinstance(budget, StepMeter) else StepMeter(budget)
    variables = gens[0].variables
    one = MultiPoly.const(ONE, variables)

    basis: list[MultiPoly] = []
    for g in gens:
        if g.is_zero():
            continue
        if g.is_constant():
            return [one]
        basis.append(g)
    if not basis:
        return []


    sugars = [g.total_degree() for g in basis]
    pairs: list[tuple[int, object, int, int]] = []

    def push_pairs(j: int) -> None:
        ej, _ = basis[j].leading(key)
        for i in range(j):
            ei, _ = basis[i].leading(key)
            l = _lcm(ei, ej)
            if l == tuple(x + y for x, y in zip(ei, ej)):
                continue  # product criterion: coprime leading monomials
            sugar = max(
                sugars[i] + sum(_sub(l, ei)), sugars[j] + sum(_sub(l, ej))
            )
            heapq.heappush(pairs, (sugar, key(l), i, j))

    for j in range(len(basis)):
        push_pairs(j)

    while pairs:
        sugar, _, i, j = heapq.heappop(pairs)
        meter.spend()
        h = reduce_poly(_spoly(basis[i], basis[j], key), basis, key, meter)
        if h.is_zero():
            continue
        if h.is_constant():
            return [one]
        basis.append(h)
        sugars.append(max(sugar, h.total_degree()))
        push_pairs(len(basis) - 1)

    return _interreduce(basis, key, meter)


def _interreduce(basis, key, meter: StepMeter):
    # drop elements whose leading monomial is divisible by another's
    basis = sorted(basis, key=lambda g: key(g.leading(key)[0]))
    kept: list[MultiPoly] = []
    for idx, g in enumerate(basis):
        eg = g.leading(key)[0]
        redundant = False
        for jdx, h in enumerate(basis):
            if jdx == idx:
                continue
            eh = h.leading(key)[0]
            if _divides(eh, eg) and (eh != eg or jdx < idx):
                redundant = True
                break
        if not redundant:
            kept.append(g)
    # reduce every tail against the others and normalize
    out = []
    for idx, g in enumerate(kept):
        others = [h for jdx, h in enumerate(kept) if jdx != idx]
        r = reduce_poly(g, others, key, meter) if others else g
        if not r.is_zero():
            out.append(r * r.leading(key)[1].inverse())
    out.sort(key=lambda g: key(g.leading(key)[0]), reverse=True)
    return out


def is_unit_ideal(gens, budget: int | StepMeter = DEFAULT_BUDGET) -> bool:
    """True iff 1 lies in the ideal (no common zero over C)."""
    if not gens:
        raise ValueError("need at least one generator")
    if any(g.is_constant() and not g.is_zero() for g in gens):
        return True
    basis = groebner(gens, "grevlex", budget)
    return len(basis) == 1 and basis[0].is_constant()


# -- implicitization -------------------------------------------------------


def implicitize_section(
    assignments: dict[str, UniPoly],
    budget: int | StepMeter = DEFAULT_BUDGET,
    ansatz_degree: int = 6,
) -> MultiPoly:
    """A polynomial tau in the assigned variables with tau(f(t)) = t.

    Tries a linear-algebra ansatz of increasing total degree first
    (cheap, and the result is verified by exact composition), then
    falls back to lex elimination on the graph ideal, which decides
    existence: absence of a generator of parameter-degree one raises
    NotASection.
    """
    names = tuple(assignments.keys())
    t = UniPoly.x(next(iter(assignments.values())).var if assignments else "t")
    tau = express_as_composite(assignments, t, ansatz_degree)
    if tau is not None:
        return tau
    return _section_by_elimination(names, assignments, budget)


def express_as_composite(
    assignments: dict[str, UniPoly],
    target: UniPoly,
    ansatz_degree: int = 6,
) -> MultiPoly | None:
    """A sparse q in the assigned variables with q(f(t)) = target, or None.

    Increasing-degree linear ansatz with greedy support pruning; any
    hit is verified by exact composition before it is returned.
    """
    names = tuple(assignments.keys())
    var = target.var
    height_unit = max(max(p.degree() for p in assignments.values()), 1)
    for deg in range(1, ansatz_degree + 1):
        ncols = math.comb(len(names) + deg, deg)
        nrows = max(height_unit * deg, target.degree()) + 1
        if nrows * nrows * ncols > 40_000_000:
            # the exact rref would dominate everything; let the caller
            # fall back to another route
            return None
        q = _section_ansatz(names, assignments, deg, target)
        if q is not None:
            assert q.eval_unipoly(assignments, var) == target
            return q
    return None


def _monomials_upto(nvars: int, deg: int):
    """All exponent tuples of total degree <= deg, low grevlex first."""
    out = [()]
    for _ in range(nvars):
        out = [e + (d,) for e in out for d in range(deg + 1 - sum(e))]
    out.sort(key=grevlex_key)
    return out


def _section_ansatz(names, assignments, deg: int, target: UniPoly):
    monos = _monomials_upto(len(names), deg)
    composed = []
    for e in monos:
        p = UniPoly.const(ONE, "t")
        for name, d in zip(names, e):
            if d:
                p = p * assignments[name] ** d
        composed.append(p)
    height = max(q.degree() for q in composed)
    height = max(height, target.degree(), 1)
    # columns = candidate monomials, rows = t-coefficients
    a = [[q[d] for q in composed] for d in range(height + 1)]
    b = [target[d] for d in range(height + 1)]
    x = solve_particular(a, b)
    if x is None:
        return None
    support = [k for k, c in enumerate(x) if not c.is_zero()]
    # greedy pruning: drop high monomials whose removal keeps the system solvable
    for k in sorted(support, key=lambda k: grevlex_key(monos[k]), reverse=True):
        trial_cols = [c for c in support if c != k]
        a2 = [[row[c] for c in trial_cols] for row in a]
        x2 = solve_particular(a2, b)
        if x2 is not None:
            support = trial_cols
            x = [ZERO] * len(monos)
            for c, v in zip(trial_cols, x2):
                x[c] = v
    coeffs = {monos[k]: x[k] for k in range(len(monos)) if not x[k].is_zero()}
    return MultiPoly(names, coeffs)


def _section_by_elimination(names, assignments, budget):
    variables = ("t",) + names
    gens = []
    for name in names:
        xv = MultiPoly.var(name, variables)
        ft = MultiPoly.from_unipoly(assignments[name], variables, "t")
        gens.append(xv - ft)
    basis = groebner(gens, "lex", budget)
    t_lead = (1,) + (0,) * len(names)
    for g in basis:
        if g.leading(ORDERS["lex"])[0] == t_lead:
            # g = t - tau(x) after monic normalization
            tail = MultiPoly(
                variables, {e: -c for e, c in g.coeffs.items() if e != t_lead}
            )
            tau = MultiPoly(
                names, {e[1:]: c for e, c in tail.coeffs.items()}
            )
            return tau
    raise NotASection("no parameter-degree-one generator; not a closed embedding")
