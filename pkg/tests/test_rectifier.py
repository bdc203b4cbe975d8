import pytest

from slnrectify.curves import SlCurve, rank_conditions, standard_curve
from slnrectify.errors import NotAnEmbedding, PreconditionFailed, UnsupportedSize
from slnrectify.rectifier import (
    equivalence,
    final_rectify,
    normalize_rank,
    rectify,
    solve_bezout,
    straighten_first_column,
)
from slnrectify.unipoly import UniPoly
from slnrectify.words import apply_word, random_word

P = UniPoly.parse


def _id_rows(n):
    return [[P("1") if i == j else P("0") for j in range(n)] for i in range(n)]


def test_normalize_rank_identity_when_already_good():
    c = standard_curve(3)
    fixed_w, fixed = normalize_rank(c, seed=0)
    assert rank_conditions(fixed)
    w, out = normalize_rank(fixed, seed=0)
    assert len(w) == 0
    assert out == fixed


def test_normalize_rank_fixes_standard_curve():
    c = standard_curve(3)
    assert not rank_conditions(c)
    w, out = normalize_rank(c, seed=1)
    assert rank_conditions(out)
    assert apply_word(w, c) == out


def test_solve_bezout_spec_example():
    # SL_3 curve whose bottom-row block (t^2, 1) has unit gcd; the
    # Bezout identity must re-expand exactly.
    rows = [
        [P("1"), P("t"), P("0")],
        [P("0"), P("1"), P("0")],
        [P("0"), P("t^2"), P("1")],
    ]
    c = SlCurve.validate(rows)
    bez = solve_bezout(c)
    t = P("t")
    target = t - c.entry(3, 1)
    block = [c.entry(3, 2), c.entry(3, 3)]
    acc = UniPoly({})
    for p, q in zip(block, bez.tildes):
        acc = acc + p * q
    assert acc == target
    # lifted classes compose back to the tildes along the matrix entries
    assign = {f"x{i}{j}": c.entry(i, j) for i in range(1, 4) for j in range(1, 4)}
    for tilde, lifted in zip(bez.tildes, bez.lifted):
        assert lifted.eval_unipoly(assign) == tilde


def test_final_rectify_requires_straight_column():
    with pytest.raises(PreconditionFailed):
        final_rectify(apply_word(random_word(2, 3, 4, 2), standard_curve(3)))


def test_final_rectify_on_straight_column():
    # start from the standard curve, disturb only columns 2..n, then undo
    c = standard_curve(3)
    w = random_word(7, 3, 4, 3)
    moved = apply_word(w, c)
    cert = rectify(moved, seed=7)
    assert cert.final == standard_curve(3)
    assert apply_word(cert.word(), moved) == standard_curve(3)


def test_straighten_first_column_output_shape():
    c = apply_word(random_word(11, 3, 4, 3), standard_curve(3))
    cert = rectify(c, seed=11)
    names = [s.name for s in cert.stages]
    assert names == [
        "rank_normalization",
        "generic_projection",
        "column_preparation",
        "first_column_straightening",
        "final_rectification",
    ]
    straight = cert.stages[3].curve
    assert straight.entry(1, 1) == P("1")
    assert straight.entry(2, 1) == P("0")
    assert straight.entry(3, 1) == P("t")


def test_rectify_rejects_sl2():
    with pytest.raises(UnsupportedSize):
        rectify(standard_curve(2), seed=0)


def test_rectify_rejects_non_embedding():
    rows = _id_rows(3)
    rows[2][0] = P("t^2")
    c = SlCurve.validate(rows)
    with pytest.raises(NotAnEmbedding):
        rectify(c, seed=0)


def test_rectify_replays_over_seeds():
    for seed in range(6):
        c = apply_word(random_word(seed, 3, 4, 3), standard_curve(3))
        cert = rectify(c, seed=seed)
        # every stage boundary must replay exactly
        cur = c
        for stage in cert.stages:
            cur = apply_word(stage.word, cur)
            assert cur == stage.curve
        assert cur == standard_curve(3)


def test_rectify_sl4():
    c = apply_word(random_word(1, 4, 3, 2), standard_curve(4))
    cert = rectify(c, seed=1)
    assert apply_word(cert.word(), c) == standard_curve(4)


def test_equivalence():
    f = apply_word(random_word(21, 3, 3, 2), standard_curve(3))
    g = apply_word(random_word(22, 3, 3, 2), standard_curve(3))
    w = equivalence(f, g, seed=5)
    assert apply_word(w, f) == g


def test_straighten_first_column_word_matches_stages():
    c = apply_word(random_word(31, 3, 3, 2), standard_curve(3))
    cert = rectify(c, seed=31)
    pre = cert.stages[1].curve
    word, out = straighten_first_column(pre, seed=31)
    assert apply_word(word, pre) == out
