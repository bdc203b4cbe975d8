"""Command-line front end.

Exit codes: 0 success, 2 malformed input, 3 not an embedding, 4 search
or reduction budget exhausted, 5 unsupported matrix size, 6 certificate
replay mismatch.
"""

from __future__ import annotations

import argparse
import sys
from dataclasses import dataclass

from . import formats
from .curves import SlCurve, is_embedding, rank_conditions, standard_curve
from .errors import (
    DivisibilityFails,
    HeuristicFailed,
    NotAnEmbedding,
    NotUnimodular,
    ParseError,
    ReplayMismatch,
    ResourceExceeded,
    SearchExhausted,
    SlnRectifyError,
    UnsupportedSize,
)
from .groebner import DEFAULT_BUDGET, is_unit_ideal
from .multipoly import divided_difference
from .rectifier import equivalence, rectify
from .sl2 import attempt_divisibility, lift_c3_to_sl2
from .unipoly import UniPoly, gcd_all
from .words import apply_word

EXIT_OK = 0
EXIT_PARSE = 2
EXIT_NOT_EMBEDDING = 3
EXIT_BUDGET = 4
EXIT_UNSUPPORTED = 5
EXIT_REPLAY = 6


@dataclass(frozen=True)
class RunConfig:
    seed: int = 0
    max_trials: int = 64
    max_payload_degree: int = 24
    groebner_budget: int = DEFAULT_BUDGET

    def __post_init__(self):
        if self.max_trials <= 0 or self.max_payload_degree <= 0 \
                or self.groebner_budget <= 0:
            raise ValueError("all budgets must be positive")


def _read(path: str) -> str:
    try:
        with open(path, encoding="utf-8") as fh:
            return fh.read()
    except OSError as ex:
        raise ParseError(f"cannot read {path}: {ex}")


def _emit(text: str, out: str | None) -> None:
    if out is None:
        sys.stdout.write(text)
    else:
        with open(out, "w", encoding="utf-8") as fh:
            fh.write(text)


def _config(args) -> RunConfig:
    return RunConfig(
        seed=args.seed,
        max_trials=args.max_trials,
        max_payload_degree=args.max_degree,
        groebner_budget=args.groebner_budget,
    )


def cmd_verify(args) -> int:
    curve = formats.parse_curve(_read(args.curve))
    report = is_embedding(curve, _config(args).groebner_budget)
    if report.is_embedding:
        print("embedding: yes")
        return EXIT_OK
    print("embedding: no")
    if report.kind == "pair":
        print(f"witness: distinct parameters {report.t0} and {report.r0} "
              "map to the same matrix")
    elif report.kind == "nonimmersive":
        print(f"witness: vanishing derivative at {report.t0}")
    elif report.kind == "constant":
        print("witness: the curve is constant")
    else:
        print("witness: the divided-difference system has a common zero")
    return EXIT_NOT_EMBEDDING


def cmd_rectify(args) -> int:
    cfg = _config(args)
    curve = formats.parse_curve(_read(args.curve))
    cert = rectify(curve, cfg.seed, cfg.max_trials, cfg.groebner_budget)
    _emit(formats.render_certificate(cert), args.out)
    return EXIT_OK


def cmd_equiv(args) -> int:
    cfg = _config(args)
    f = formats.parse_curve(_read(args.f))
    g = formats.parse_curve(_read(args.g))
    word = equivalence(f, g, cfg.seed, cfg.max_trials, cfg.groebner_budget)
    _emit(formats.render_word(word), args.out)
    return EXIT_OK


def cmd_apply(args) -> int:
    word = formats.parse_word(_read(args.word))
    curve = formats.parse_curve(_read(args.curve))
    if word.n != curve.n:
        raise ParseError(
            f"word size {word.n} does not match curve size {curve.n}"
        )
    _emit(formats.render_curve(apply_word(word, curve)), args.out)
    return EXIT_OK


def _check_stage_facts(name, facts, prev: SlCurve, cur: SlCurve,
                       budget: int) -> None:
    n = cur.n
    t = UniPoly.x()
    if facts.get("rank_conditions") and not rank_conditions(cur):
        raise ReplayMismatch(f"stage {name}: rank conditions do not hold")
    if facts.get("truncation_embeds"):
        dds = [divided_difference(cur.entries[i][j])
               for i in range(n) for j in range(n - 1)]
        dds = [q for q in dds if not q.is_zero()]
        if not dds or not is_unit_ideal(dds, budget):
            raise ReplayMismatch(f"stage {name}: truncation does not embed")
    if facts.get("block_gcd_constant"):
        block = [cur.entry(n, j) for j in range(2, n + 1)]
        g = gcd_all([q for q in block if not q.is_zero()])
        if not g.is_constant() or g.is_zero():
            raise ReplayMismatch(f"stage {name}: block gcd is not constant")
    if "bezout" in facts:
        bez = facts["bezout"]
        block = [prev.entry(n, j) for j in range(2, n + 1)]
        target = t - prev.entry(n, 1)
        total = UniPoly({})
        for p, q in zip(block, bez.tildes):
            total = total + p * q
        if total != target:
            raise ReplayMismatch(f"stage {name}: Bezout re-expansion failed")
        assignments = {
            f"x{i}{j}": prev.entry(i, j)
            for i in range(1, n + 1) for j in range(2, n + 1)
        }
        if bez.section.eval_unipoly(assignments, "t") != t:
            raise ReplayMismatch(f"stage {name}: section identity failed")
        for p, q in zip(bez.tildes, bez.lifted):
            if q.eval_unipoly(assignments, "t") != p:
                raise ReplayMismatch(f"stage {name}: lifted Bezout "
                                     "coefficient failed")
    if facts.get("first_column_standard"):
        ok = cur.entry(1, 1) == UniPoly.const(1) and cur.entry(n, 1) == t \
            and all(cur.entry(i, 1).is_zero() for i in range(2, n))
        if not ok:
            raise ReplayMismatch(f"stage {name}: first column not standard")
    if facts.get("final_is_standard") and cur != standard_curve(n):
        raise ReplayMismatch(f"stage {name}: final curve is not standard")


def cmd_verify_cert(args) -> int:
    cfg = _config(args)
    cert = formats.parse_certificate(_read(args.certificate))
    try:
        cur = SlCurve.validate(cert.input.entries)
    except NotUnimodular as ex:
        raise ReplayMismatch(f"input curve fails the determinant check: {ex}")
    for stage in cert.stages:
        try:
            computed = apply_word(stage.word, cur)
        except SlnRectifyError as ex:
            raise ReplayMismatch(f"stage {stage.name}: replay failed: {ex}")
        if computed.entries != stage.curve.entries:
            raise ReplayMismatch(
                f"stage {stage.name}: replayed curve disagrees"
            )
        _check_stage_facts(stage.name, stage.facts, cur, computed,
                           cfg.groebner_budget)
        cur = computed
    print("certificate verified")
    return EXIT_OK


def cmd_lift3(args) -> int:
    cfg = _config(args)
    triple = formats.parse_triple(_read(args.triple))
    moves = ()
    if args.normalize:
        moves, triple = attempt_divisibility(triple, cfg.seed, cfg.max_trials)
    try:
        curve, report = lift_c3_to_sl2(triple)
    except DivisibilityFails as ex:
        raise HeuristicFailed(
            0, f"g2 does not divide g1*g3 - 1 ({ex}); rerun with --normalize"
        )
    _emit(formats.render_curve(curve), args.out)
    if moves and args.out is not None:
        _emit(formats.render_c3_word(moves), args.out + ".tame")
    print(f"embedding: {'yes' if report.is_embedding else 'no'}",
          file=sys.stderr)
    return EXIT_OK


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="slnrectify",
        description="Exact rectification of polynomial curves in SL_n",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p):
        p.add_argument("--seed", type=int, default=0)
        p.add_argument("--max-trials", type=int, default=64)
        p.add_argument("--max-degree", type=int, default=24)
        p.add_argument("--groebner-budget", type=int, default=DEFAULT_BUDGET)
        p.add_argument("--out", default=None)

    p = sub.add_parser("verify", help="decide whether a curve is an embedding")
    p.add_argument("curve")
    common(p)
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("rectify", help="produce a rectification certificate")
    p.add_argument("curve")
    common(p)
    p.set_defaults(func=cmd_rectify)

    p = sub.add_parser("equiv", help="word carrying one embedding to another")
    p.add_argument("f")
    p.add_argument("g")
    common(p)
    p.set_defaults(func=cmd_equiv)

    p = sub.add_parser("apply", help="apply an automorphism word to a curve")
    p.add_argument("word")
    p.add_argument("curve")
    common(p)
    p.set_defaults(func=cmd_apply)

    p = sub.add_parser("verify-cert", help="replay and check a certificate")
    p.add_argument("certificate")
    common(p)
    p.set_defaults(func=cmd_verify_cert)

    p = sub.add_parser("lift3", help="lift a plane-space triple into SL_2")
    p.add_argument("triple")
    p.add_argument("--normalize", action="store_true",
                   help="search for tame moves establishing divisibility")
    common(p)
    p.set_defaults(func=cmd_lift3)

    return parser


def main(argv=None) -> int:
    args = _build_parser().parse_args(argv)
    try:
        return args.func(args)
    except (ParseError, NotUnimodular, ValueError) as ex:
        print(f"error: {ex}", file=sys.stderr)
        return EXIT_PARSE
    except NotAnEmbedding as ex:
        print(f"error: {ex}", file=sys.stderr)
        return EXIT_NOT_EMBEDDING
    except (SearchExhausted, ResourceExceeded, HeuristicFailed) as ex:
        print(f"error: {ex}", file=sys.stderr)
        return EXIT_BUDGET
    except UnsupportedSize as ex:
        print(f"error: {ex}", file=sys.stderr)
        return EXIT_UNSUPPORTED
    except ReplayMismatch as ex:
        print(f"error: {ex}", file=sys.stderr)
        return EXIT_REPLAY


if __name__ == "__main__":
    sys.exit(main())
