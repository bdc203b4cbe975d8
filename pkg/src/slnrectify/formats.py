"""Line-oriented text formats for curves, words, triples and
certificates, all under the one-line version header "slnrectify/1".

Certificates are meant to be read and independently replayed, so every
piece (stage words, stage curves, recorded facts) is serialized in the
same canonical polynomial rendering the rest of the package uses, and
parse(print(x)) == x on canonical forms.
"""

from __future__ import annotations

from .curves import SlCurve
from .errors import ParseError
from .multipoly import MultiPoly
from .rectifier import BezoutSolution, Certificate, Stage
from .scalars import Scalar, parse_scalar, render_scalar
from .sl2 import C3Triple
from .unipoly import UniPoly
from .words import (
    AutWord,
    ConstLeft,
    ConstRight,
    CurveRightMul,
    GlPair,
    LeftElem,
    RightElem,
    x_vars,
)

HEADER = "slnrectify/1"


def _matrix_str(rows, render) -> str:
    return " ; ".join(", ".join(render(e) for e in row) for row in rows)


def _parse_matrix(text: str, parse, lineno):
    try:
        return tuple(
            tuple(parse(cell.strip()) for cell in row.split(","))
            for row in text.split(";")
        )
    except ParseError:
        raise
    except Exception as ex:
        raise ParseError(f"bad matrix: {ex}", lineno)


class _Lines:
    def __init__(self, text: str):
        self.lines = text.splitlines()
        self.pos = 0

    def peek(self) -> str | None:
        while self.pos < len(self.lines) and not self.lines[self.pos].strip():
            self.pos += 1
        if self.pos >= len(self.lines):
            return None
        return self.lines[self.pos].strip()

    def next(self, what: str) -> str:
        line = self.peek()
        if line is None:
            raise ParseError(f"unexpected end of file, expected {what}",
                             len(self.lines))
        self.pos += 1
        return line

    @property
    def lineno(self) -> int:
        return self.pos


def _expect_header(lines: _Lines) -> None:
    line = lines.next("format header")
    if line != HEADER:
        raise ParseError(f"expected header {HEADER!r}, got {line!r}",
                         lines.lineno)


# -- curves ----------------------------------------------------------------


def render_curve(c: SlCurve, with_header: bool = True) -> str:
    out = [HEADER] if with_header else []
    out.append(f"curve n={c.n}")
    for i in range(1, c.n + 1):
        for j in range(1, c.n + 1):
            out.append(f"entry {i} {j} : {c.entry(i, j)}")
    return "\n".join(out) + "\n"


def _parse_curve_body(lines: _Lines, validated: bool = True) -> SlCurve:
    head = lines.next("curve header")
    if not head.startswith("curve n="):
        raise ParseError(f"expected 'curve n=<n>', got {head!r}", lines.lineno)
    try:
        n = int(head[len("curve n="):])
    except ValueError:
        raise ParseError("bad curve size", lines.lineno)
    if n < 2 or n > 9:
        raise ParseError("curve size must be between 2 and 9", lines.lineno)
    entries = [[None] * n for _ in range(n)]
    for _ in range(n * n):
        line = lines.next("curve entry")
        parts = line.split(":", 1)
        fields = parts[0].split()
        if len(parts) != 2 or len(fields) != 3 or fields[0] != "entry":
            raise ParseError(f"expected 'entry i j : <poly>', got {line!r}",
                             lines.lineno)
        try:
            i, j = int(fields[1]), int(fields[2])
        except ValueError:
            raise ParseError("bad entry indices", lines.lineno)
        if not (1 <= i <= n and 1 <= j <= n):
            raise ParseError("entry indices out of range", lines.lineno)
        entries[i - 1][j - 1] = UniPoly.parse(parts[1].strip())
    if any(e is None for row in entries for e in row):
        raise ParseError("duplicate or missing curve entries", lines.lineno)
    if not validated:
        # inside certificates the determinant check is deferred to the
        # replay, so a tampered entry surfaces as a mismatch, not a
        # parse failure
        return SlCurve(n, entries)
    return SlCurve.validate(entries)


def parse_curve(text: str) -> SlCurve:
    lines = _Lines(text)
    _expect_header(lines)
    return _parse_curve_body(lines)


# -- words -----------------------------------------------------------------


def _render_generator(g) -> str:
    if isinstance(g, LeftElem):
        return f"leftelem {g.i} {g.j} : {g.payload}"
    if isinstance(g, RightElem):
        return f"rightelem {g.i} {g.j} : {g.payload}"
    if isinstance(g, ConstLeft):
        return f"constleft : {_matrix_str(g.matrix, render_scalar)}"
    if isinstance(g, ConstRight):
        return f"constright : {_matrix_str(g.matrix, render_scalar)}"
    if isinstance(g, GlPair):
        return f"glpair : {_matrix_str(g.matrix, render_scalar)}"
    if isinstance(g, CurveRightMul):
        return f"curverightmul : {_matrix_str(g.matrix, str)}"
    raise TypeError(f"unknown generator {g!r}")


def render_word(w: AutWord, with_header: bool = True) -> str:
    out = [HEADER] if with_header else []
    out.append(f"word n={w.n}")
    out.extend(_render_generator(g) for g in w.gens)
    out.append("endword")
    return "\n".join(out) + "\n"


def _parse_generator(line: str, n: int, lineno: int):
    parts = line.split(":", 1)
    if len(parts) != 2:
        raise ParseError(f"expected '<kind> ... : <data>', got {line!r}", lineno)
    fields = parts[0].split()
    kind, data = fields[0], parts[1].strip()
    names = x_vars(n)
    if kind in ("leftelem", "rightelem"):
        if len(fields) != 3:
            raise ParseError(f"{kind} needs row and column indices", lineno)
        try:
            i, j = int(fields[1]), int(fields[2])
        except ValueError:
            raise ParseError("bad generator indices", lineno)
        payload = MultiPoly.parse(data, names)
        cls = LeftElem if kind == "leftelem" else RightElem
        return cls(i, j, payload)
    if len(fields) != 1:
        raise ParseError(f"unexpected fields in {kind} line", lineno)
    if kind in ("constleft", "constright", "glpair"):
        matrix = _parse_matrix(data, parse_scalar, lineno)
        cls = {"constleft": ConstLeft, "constright": ConstRight,
               "glpair": GlPair}[kind]
        return cls(matrix)
    if kind == "curverightmul":
        matrix = _parse_matrix(
            data, lambda s: UniPoly.parse(s, "s"), lineno
        )
        return CurveRightMul(matrix)
    raise ParseError(f"unknown generator kind {kind!r}", lineno)


def _parse_word_body(lines: _Lines) -> AutWord:
    head = lines.next("word header")
    if not head.startswith("word n="):
        raise ParseError(f"expected 'word n=<n>', got {head!r}", lines.lineno)
    try:
        n = int(head[len("word n="):])
    except ValueError:
        raise ParseError("bad word size", lines.lineno)
    if n < 2 or n > 9:
        raise ParseError("word size must be between 2 and 9", lines.lineno)
    gens = []
    while True:
        line = lines.next("generator or 'endword'")
        if line == "endword":
            break
        gens.append(_parse_generator(line, n, lines.lineno))
    return AutWord(n, tuple(gens))


def parse_word(text: str) -> AutWord:
    lines = _Lines(text)
    _expect_header(lines)
    return _parse_word_body(lines)


# -- triples ---------------------------------------------------------------


def render_triple(tr: C3Triple, with_header: bool = True) -> str:
    out = [HEADER] if with_header else []
    for k, g in enumerate(tr.components(), start=1):
        out.append(f"g{k} : {g}")
    return "\n".join(out) + "\n"


def parse_triple(text: str) -> C3Triple:
    lines = _Lines(text)
    _expect_header(lines)
    gs = []
    for k in (1, 2, 3):
        line = lines.next(f"g{k} line")
        parts = line.split(":", 1)
        if len(parts) != 2 or parts[0].strip() != f"g{k}":
            raise ParseError(f"expected 'g{k} : <poly>', got {line!r}",
                             lines.lineno)
        gs.append(UniPoly.parse(parts[1].strip()))
    return C3Triple(*gs)


def render_c3_word(moves, with_header: bool = True) -> str:
    out = [HEADER] if with_header else []
    for mv in moves:
        out.append(f"move {mv.axis} : {mv.payload}")
    out.append("endmoves")
    return "\n".join(out) + "\n"


def parse_c3_word(text: str):
    from .sl2 import TRIPLE_VARS, C3Move

    lines = _Lines(text)
    _expect_header(lines)
    moves = []
    while True:
        line = lines.next("move or 'endmoves'")
        if line == "endmoves":
            break
        parts = line.split(":", 1)
        fields = parts[0].split()
        if len(parts) != 2 or len(fields) != 2 or fields[0] != "move":
            raise ParseError(f"expected 'move <axis> : <poly>', got {line!r}",
                             lines.lineno)
        try:
            axis = int(fields[1])
        except ValueError:
            raise ParseError("bad move axis", lines.lineno)
        payload = MultiPoly.parse(parts[1].strip(), TRIPLE_VARS)
        moves.append(C3Move(axis, payload))
    return tuple(moves)


# -- certificates ----------------------------------------------------------


def _render_fact(name: str, value) -> list[str]:
    if isinstance(value, bool):
        return [f"fact bool {name} : {'true' if value else 'false'}"]
    if isinstance(value, UniPoly):
        return [f"fact poly {name} : {value}"]
    if isinstance(value, MultiPoly):
        return [f"fact mpoly {name} : {value}"]
    if isinstance(value, tuple) and all(isinstance(v, Scalar) for v in value):
        body = ", ".join(render_scalar(v) for v in value)
        return [f"fact vector {name} : {body}"]
    if isinstance(value, BezoutSolution):
        out = []
        for k, p in enumerate(value.tildes, start=2):
            out.append(f"fact poly bezout_tilde_{k} : {p}")
        out.append(f"fact mpoly section : {value.section}")
        for k, p in enumerate(value.lifted, start=2):
            out.append(f"fact mpoly bezout_lifted_{k} : {p}")
        return out
    raise TypeError(f"unsupported fact {name}={value!r}")


def render_certificate(cert: Certificate) -> str:
    out = [HEADER, f"certificate n={cert.input.n}", "input"]
    out.append(render_curve(cert.input, with_header=False).rstrip("\n"))
    for stage in cert.stages:
        out.append(f"stage {stage.name}")
        out.append(render_word(stage.word, with_header=False).rstrip("\n"))
        out.append(render_curve(stage.curve, with_header=False).rstrip("\n"))
        for name, value in stage.facts.items():
            out.extend(_render_fact(name, value))
        out.append("endstage")
    out.append("endcertificate")
    return "\n".join(out) + "\n"


def _parse_facts(raw: dict[str, tuple[str, str]], n: int) -> dict:
    names = x_vars(n)
    facts: dict = {}
    tildes: dict[int, UniPoly] = {}
    lifted: dict[int, MultiPoly] = {}
    section = None
    for name, (kind, data) in raw.items():
        if kind == "bool":
            if data not in ("true", "false"):
                raise ParseError(f"bad boolean fact {name}")
            facts[name] = data == "true"
        elif kind == "poly":
            value = UniPoly.parse(data)
            if name.startswith("bezout_tilde_"):
                tildes[int(name[len("bezout_tilde_"):])] = value
            else:
                facts[name] = value
        elif kind == "mpoly":
            value = MultiPoly.parse(data, names)
            if name.startswith("bezout_lifted_"):
                lifted[int(name[len("bezout_lifted_"):])] = value
            elif name == "section":
                section = value
            else:
                facts[name] = value
        elif kind == "vector":
            facts[name] = tuple(
                parse_scalar(cell.strip()) for cell in data.split(",")
            )
        else:
            raise ParseError(f"unknown fact kind {kind!r}")
    if section is not None or tildes or lifted:
        if section is None or set(tildes) != set(lifted) or \
                sorted(tildes) != list(range(2, n + 1)):
            raise ParseError("incomplete Bezout facts")
        facts["bezout"] = BezoutSolution(
            tuple(tildes[k] for k in sorted(tildes)),
            section,
            tuple(lifted[k] for k in sorted(lifted)),
        )
    return facts


def parse_certificate(text: str) -> Certificate:
    lines = _Lines(text)
    _expect_header(lines)
    head = lines.next("certificate header")
    if not head.startswith("certificate n="):
        raise ParseError(f"expected 'certificate n=<n>', got {head!r}",
                         lines.lineno)
    try:
        n = int(head[len("certificate n="):])
    except ValueError:
        raise ParseError("bad certificate size", lines.lineno)
    if lines.next("'input'") != "input":
        raise ParseError("expected 'input'", lines.lineno)
    input_curve = _parse_curve_body(lines, validated=False)
    stages = []
    while True:
        line = lines.next("'stage <name>' or 'endcertificate'")
        if line == "endcertificate":
            break
        if not line.startswith("stage "):
            raise ParseError(f"expected stage, got {line!r}", lines.lineno)
        name = line[len("stage "):].strip()
        word = _parse_word_body(lines)
        curve = _parse_curve_body(lines, validated=False)
        raw_facts: dict[str, tuple[str, str]] = {}
        while True:
            line = lines.next("fact or 'endstage'")
            if line == "endstage":
                break
            parts = line.split(":", 1)
            fields = parts[0].split()
            if len(parts) != 2 or len(fields) != 3 or fields[0] != "fact":
                raise ParseError(
                    f"expected 'fact <kind> <name> : <data>', got {line!r}",
                    lines.lineno,
                )
            raw_facts[fields[2]] = (fields[1], parts[1].strip())
        facts = _parse_facts(raw_facts, n)
        if word.n != n or curve.n != n:
            raise ParseError("stage size mismatch", lines.lineno)
        stages.append(Stage(name, word, curve, facts))
    if input_curve.n != n:
        raise ParseError("input size mismatch", lines.lineno)
    if not stages:
        raise ParseError("certificate has no stages", lines.lineno)
    return Certificate(input_curve, tuple(stages), stages[-1].curve)
