import random

import pytest

from slnrectify.curves import SlCurve, standard_curve
from slnrectify.errors import (
    DivisibilityFails,
    HeuristicFailed,
    NotAnEmbedding,
    OriginContact,
)
from slnrectify.multipoly import MultiPoly
from slnrectify.scalars import ONE, Scalar
from slnrectify.sl2 import (
    TRIPLE_VARS,
    C3Move,
    C3Triple,
    Elementary,
    Linear,
    PlaneTameWord,
    ams_straighten,
    apply_c3_word,
    apply_plane_word,
    attempt_divisibility,
    lift_c3_to_sl2,
    lift_plane_word,
    rectify_sl2,
    reparametrize,
)
from slnrectify.unipoly import UniPoly
from slnrectify.words import apply_word, apply_word_matrix

P = UniPoly.parse


def _triple(a, b, c):
    return C3Triple(P(a), P(b), P(c))


# -- lifting C^3 curves ----------------------------------------------------


def test_lift_trivial_denominator():
    curve, report = lift_c3_to_sl2(_triple("t", "1", "0"))
    assert curve.entries == SlCurve.validate(
        [[P("t"), P("-1")], [P("1"), P("0")]]
    ).entries
    assert report.is_embedding


def test_lift_derived_example():
    curve, report = lift_c3_to_sl2(_triple("t", "1", "t^2"))
    assert curve.entry(1, 2) == P("t^3 - 1")
    assert curve.entry(2, 2) == P("t^2")
    assert report.is_embedding


def test_lift_divisibility_failure():
    with pytest.raises(DivisibilityFails) as exc:
        lift_c3_to_sl2(_triple("t", "t", "t"))
    assert exc.value.remainder == P("-1")


def test_lift_det_is_one_for_random_divisible_triples():
    rng = random.Random("sl2-lift")
    for _ in range(10):
        g1 = UniPoly({1: ONE, 0: Scalar(rng.randint(1, 5))})
        g3 = UniPoly({rng.randint(1, 3): Scalar(rng.randint(1, 4)),
                      0: Scalar(rng.randint(-3, 3))})
        g2 = g1 * g3 - UniPoly.const(ONE)
        curve, _ = lift_c3_to_sl2(C3Triple(g1, g2, g3))
        det = (curve.entry(1, 1) * curve.entry(2, 2)
               - curve.entry(1, 2) * curve.entry(2, 1))
        assert det == P("1")


# -- the divisibility heuristic --------------------------------------------


def test_attempt_divisibility_noop():
    tr = _triple("t", "1", "0")
    moves, out = attempt_divisibility(tr, seed=0)
    assert moves == ()
    assert out == tr


def test_attempt_divisibility_constant_shift():
    tr = _triple("t", "t", "t")
    moves, out = attempt_divisibility(tr, seed=0)
    # the word must replay and the result must be divisible
    assert apply_c3_word(moves, tr) == out
    num = out.g1 * out.g3 - P("1")
    assert (num % out.g2).is_zero()


def test_attempt_divisibility_budget_exhaustion():
    with pytest.raises(HeuristicFailed):
        attempt_divisibility(_triple("t", "t", "t"), seed=0, budget=0)


def test_attempt_divisibility_quotient_ring_solve():
    # gcd(g1, g2) = 1 but no constant shift makes the product land on 1;
    # the linear-algebra step over C[t]/(g2) has to find the payload
    tr = _triple("t", "t^2 + 1", "0")
    moves, out = attempt_divisibility(tr, seed=3)
    assert apply_c3_word(moves, tr) == out
    num = out.g1 * out.g3 - P("1")
    assert (num % out.g2).is_zero()


def test_c3_move_rejects_moved_axis():
    with pytest.raises(ValueError):
        C3Move(2, MultiPoly.parse("y2", TRIPLE_VARS))


# -- plane words -----------------------------------------------------------


def test_elementary_must_fix_origin():
    with pytest.raises(ValueError):
        Elementary(1, P("1 + t"))


def test_linear_must_be_invertible():
    z = Scalar(0)
    with pytest.raises(ValueError):
        Linear(((ONE, z), (ONE, z)))


def test_apply_plane_word_example():
    w = PlaneTameWord((Elementary(1, P("-t^2")),))
    x, z = apply_plane_word(w, (P("t^2 + 1"), P("t")))
    assert (x, z) == (P("1"), P("t"))


def test_ams_trivial():
    word, (a, b) = ams_straighten((P("1"), P("t")))
    assert word.moves == ()
    assert (a, b) == (ONE, Scalar(0))


def test_ams_degree_reduction():
    col = (P("t^2 + 1"), P("t"))
    word, (a, b) = ams_straighten(col)
    x, z = apply_plane_word(word, col)
    sub = UniPoly({1: a, 0: b})
    assert (x, z) == (P("1"), sub)


def test_ams_noninjective_component_rejected():
    # t -> (1, t^3 + t) is not injective over the complex numbers
    # (t = 0 and t = i collide), so the embedding check fires
    with pytest.raises(NotAnEmbedding):
        ams_straighten((P("1"), P("t^3 + t")))


def test_ams_origin_contact():
    with pytest.raises(OriginContact):
        ams_straighten((P("t"), P("t^2")))


# -- lifting plane words to SL_2 -------------------------------------------


def test_lift_plane_word_empty():
    assert len(lift_plane_word(PlaneTameWord(()))) == 0


def test_lift_plane_word_commutes_numerically():
    rng = random.Random("sl2-commute")
    words = [
        PlaneTameWord((Elementary(1, P("t^2 - 2*t")),)),
        PlaneTameWord((Elementary(2, P("3*t^3")),)),
        PlaneTameWord((Linear(((Scalar(2), Scalar(0)),
                               (Scalar(0), ONE / Scalar(2)))),)),
        PlaneTameWord((Elementary(1, P("t")), Linear(((Scalar(0), ONE),
                                                      (-ONE, Scalar(0)))),
                       Elementary(2, P("-2*t^2")))),
    ]
    for w in words:
        lifted = lift_plane_word(w)
        for _ in range(5):
            # random SL_2 matrix from elementary factors
            m = [[ONE, Scalar(0)], [Scalar(0), ONE]]
            for _ in range(4):
                cst = Scalar(rng.randint(-3, 3), rng.randint(-1, 1))
                if rng.random() < 0.5:
                    m = [[m[0][0] + cst * m[1][0], m[0][1] + cst * m[1][1]],
                         m[1]]
                else:
                    m = [m[0],
                         [m[1][0] + cst * m[0][0], m[1][1] + cst * m[0][1]]]
            out = apply_word_matrix(lifted, m)
            xz = (UniPoly.const(m[0][0]), UniPoly.const(m[1][0]))
            px, pz = apply_plane_word(w, xz)
            assert out[0][0] == px.evaluate(Scalar(0))
            assert out[1][0] == pz.evaluate(Scalar(0))


# -- end-to-end conditional rectification ----------------------------------


def test_rectify_sl2_end_to_end():
    cases = [
        [[P("1"), P("0")], [P("t"), P("1")]],
        [[P("t^2 + 1"), P("t")], [P("t"), P("1")]],
        [[P("1"), P("t")], [P("t"), P("1 + t^2")]],
    ]
    for rows in cases:
        c = SlCurve.validate(rows)
        word, (a, b) = rectify_sl2(c)
        sub = UniPoly({1: a, 0: b})
        target = SlCurve(2, [[e.compose(sub) for e in row]
                             for row in standard_curve(2).entries])
        assert apply_word(word, c) == target
        # equivalently, undoing the reparametrization lands on E_21(t)
        assert reparametrize(apply_word(word, c), a, b) == standard_curve(2)


def test_rectify_sl2_rejects_non_embedding():
    rows = [[P("1"), P("0")], [P("t^2"), P("1")]]
    with pytest.raises(NotAnEmbedding):
        rectify_sl2(SlCurve.validate(rows))
