import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from stconvex.catalog import BuildContext, build_function, build_w
from stconvex.errors import ParseError, SpecInvalid
from stconvex.specparse import Arg, SpecNode, parse_spec, print_spec

idents = st.from_regex(r"[A-Za-z_][A-Za-z_0-9]{0,6}", fullmatch=True).filter(lambda s: s != "i")
finite = st.floats(allow_nan=False, allow_infinity=False, width=64)
numbers = st.one_of(
    st.integers(-10**6, 10**6),
    finite,
    st.builds(complex, finite, finite),
)


def nodes():
    return st.recursive(
        st.builds(SpecNode, idents, st.just(())),
        lambda inner: st.builds(
            SpecNode,
            idents,
            st.lists(st.builds(Arg, st.none() | idents, numbers | inner), min_size=1, max_size=4).map(tuple),
        ),
        max_leaves=8,
    )


def same(a, b):
    if isinstance(a, SpecNode):
        return (isinstance(b, SpecNode) and a.name == b.name and len(a.args) == len(b.args)
                and all(x.key == y.key and same(x.value, y.value) for x, y in zip(a.args, b.args)))
    if type(a) is not type(b):
        return False
    if isinstance(a, complex):
        return same(a.real, b.real) and same(a.imag, b.imag)
    if isinstance(a, float):
        return math.copysign(1, a) == math.copysign(1, b) and a == b
    return a == b


@settings(max_examples=300, deadline=None)
@given(nodes())
def test_print_parse_round_trip(node):
    text = print_spec(node)
    back = parse_spec(text)
    assert same(back, node)
    assert print_spec(back) == text


def test_examples():
    assert parse_spec("identity") == SpecNode("identity")
    assert parse_spec("koebe(0.5)") == SpecNode("koebe", (Arg(None, 0.5),))
    node = parse_spec("synth(g=koebe(0), mu=0.8, w=cmono(0.6,1))")
    assert [a.key for a in node.args] == ["g", "mu", "w"]
    assert node.args[2].value == SpecNode("cmono", (Arg(None, 0.6), Arg(None, 1)))


def test_complex_literals():
    assert parse_spec("f(1.5-2i)").args[0].value == complex(1.5, -2)
    assert parse_spec("f(1 + 2i)").args[0].value == complex(1, 2)
    assert parse_spec("f(−1−0.5i)").args[0].value == complex(-1, -0.5)
    assert print_spec(parse_spec("f( 1 ,x = 2.0 )")) == "f(1, x=2.0)"


@pytest.mark.parametrize(
    "text,pos",
    [("", 0), ("koebe(", 6), ("koebe(0.5", 9), ("koebe(0.5))", 10), ("1abc", 0), ("f(1+2)", 5), ("f(#)", 2), ("koebe()", 6)],
)
def test_parse_errors_carry_position(text, pos):
    with pytest.raises(ParseError) as info:
        parse_spec(text)
    assert info.value.position == pos
    assert info.value.expected


def test_build_function_constructors():
    ctx = BuildContext(64, 0)
    assert build_function("identity", ctx).series.coeffs[1] == 1
    assert np.allclose(build_function("koebe(0.5)", ctx).series.coeffs[1:], 1.0)
    p = build_function("poly(1, 0, 0.2, n=2)", ctx)
    assert p.n_index == 2 and p.series.coeffs[3] == 0.2
    assert build_function("starlike(0.2, 7, 3, 2)", ctx).n_index == 2
    a = build_function("starlike(0.2)", BuildContext(64, 7)).series.coeffs
    b = build_function("starlike(0.2, 7)", ctx).series.coeffs
    assert np.array_equal(a, b)
    z = build_function("zexp(-2)", ctx).series.coeffs
    assert z[3] == pytest.approx(2.0)
    f = build_function("synth(g=koebe(0), mu=0.8, w=cmono(0.6,1), direction=reciprocal)", ctx)
    assert f.n_index == 1


def test_build_w_constructors():
    assert build_w("cmono(0.5, 2)").coeffs[2] == 0.5
    assert build_w("cexp(1, 1)").coeffs[2] == pytest.approx(0.5)
    assert build_w("cmobius(1, 1, 0.5)").coeffs[1] == pytest.approx(0.5)
    assert build_w("wpoly(0.1, 0.2)").coeffs[2] == 0.2


@pytest.mark.parametrize(
    "text",
    ["nope", "koebe(1.5)", "koebe(g=1)", "poly(2)", "poly(1, 0.5, n=2)", "identity(0.5)",
     "synth(g=koebe(0), mu=0.8)", "synth(g=1, mu=0.8, w=cmono(0.5,1))", "koebe(0, 0)",
     "synth(g=koebe(0), mu=0.8, w=cmono(0.5,1), direction=sideways)", "starlike(0.1, 1, 9)"],
)
def test_build_function_rejects(text):
    with pytest.raises(SpecInvalid):
        build_function(text, BuildContext(32))


@pytest.mark.parametrize("text", ["cmono(0.5)", "cmono(0.5, 1.5)", "wpoly", "cmobius(1, 1, 2)", "koebe(0)"])
def test_build_w_rejects(text):
    with pytest.raises(SpecInvalid):
        build_w(text)
