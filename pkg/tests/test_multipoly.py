from hypothesis import given, strategies as st

from slnrectify.multipoly import BIVARS, MultiPoly, divided_difference
from slnrectify.scalars import Scalar
from slnrectify.unipoly import UniPoly

P = UniPoly.parse

small_polys = st.lists(
    st.integers(min_value=-4, max_value=4), min_size=0, max_size=5
).map(lambda cs: UniPoly({k: Scalar(c) for k, c in enumerate(cs)}))


def test_parse_and_render():
    vs = ("x", "y")
    p = MultiPoly.parse("x^2*y - 3*y + 1", vs)
    assert str(p) == "x^2*y - 3*y + 1"
    assert MultiPoly.parse(str(p), vs) == p


def test_eval_unipoly():
    vs = ("a", "b")
    p = MultiPoly.parse("a*b + b^2", vs)
    out = p.eval_unipoly({"a": P("t"), "b": P("t^2")}, "t")
    assert out == P("t^3 + t^4")


def test_divided_difference_of_cube():
    # (t^3 - r^3)/(t - r) = t^2 + t*r + r^2
    q = divided_difference(P("t^3"))
    assert q == MultiPoly.parse("t^2 + t*r + r^2", BIVARS)


def test_divided_difference_linearity():
    p, q = P("t^2 + 1"), P("t^3 - t")
    assert divided_difference(p + q) == divided_difference(p) + divided_difference(q)


@given(small_polys)
def test_divided_difference_diagonal_is_derivative(p):
    # q(t, t) = p'(t)
    q = divided_difference(p)
    diag = q.eval_unipoly({"t": P("t"), "r": P("t")}, "t")
    assert diag == p.derivative()


@given(small_polys)
def test_divided_difference_clears_denominator(p):
    # (t - r) * q = p(t) - p(r)
    vs = BIVARS
    q = divided_difference(p)
    tm = MultiPoly.var("t", vs) - MultiPoly.var("r", vs)
    pt = MultiPoly.from_unipoly(p, vs, "t")
    pr = MultiPoly.from_unipoly(p.rename("r"), vs, "r")
    assert tm * q == pt - pr


def test_substitution_into_polynomial_values():
    vs = ("u", "v")
    p = MultiPoly.parse("u^2 - v", vs)
    val = p.eval_scalar({"u": Scalar(3), "v": Scalar(2)})
    assert val == Scalar(7)
