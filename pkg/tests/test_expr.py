"""Parser, evaluator, and printer for chart expressions.

The printer is checked by a round-trip property: parse -> to_string ->
parse must reproduce values and derivatives exactly, and the printed form
must stay inside the grammar (no scientific notation, ever).
"""

import math

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from concirc.expr import (ArityError, EvalDomainError, ExprError, ParseError,
                          UnknownIdentifierError, parse, to_string)
from concirc.fdcheck import fd_gradient, fd_hessian

COORDS = ("t", "x", "y", "z")


def ev(text, point):
    return parse(text, COORDS).val(np.asarray(point, dtype=float))


def test_precedence_and_associativity():
    p = [0.0, 2.0, 3.0, 4.0]
    assert ev("x+y*z", p) == 14.0
    assert ev("(x+y)*z", p) == 20.0
    assert ev("x-y-z", p) == -5.0          # left associative
    assert ev("x/y/z", p) == pytest.approx(2.0 / 3.0 / 4.0)
    assert ev("x^y^2", p) == 2.0 ** 9.0    # right associative
    assert ev("-x^2", p) == -4.0           # unary minus binds looser than ^
    assert ev("(-x)^2", p) == 4.0
    assert ev("x^-1", p) == 0.5            # unary minus allowed in exponent
    assert ev("2*-x", p) == -4.0


def test_function_calls():
    p = [0.5, 0.0, 0.0, 0.0]
    assert ev("sin(t)^2 + cos(t)^2", p) == pytest.approx(1.0)
    assert ev("sqrt(abs(-9))", p) == 3.0
    assert ev("exp(log(7))", p) == pytest.approx(7.0)
    assert ev("tanh(t)*cosh(t) - sinh(t)", p) == pytest.approx(0.0, abs=1e-15)


def test_number_literals():
    p = [0.0] * 4
    assert ev("0.5", p) == 0.5
    assert ev("2.", p) == 2.0
    assert ev("10", p) == 10.0


def test_scientific_notation_is_rejected():
    with pytest.raises(ParseError) as err:
        parse("1e-5", COORDS)
    assert err.value.pos == 1  # rejected at the 'e'


def test_python_pow_is_rejected():
    with pytest.raises(ParseError) as err:
        parse("2**3", COORDS)
    assert err.value.pos == 2  # the second '*'


def test_unknown_identifier_reports_offset():
    with pytest.raises(UnknownIdentifierError) as err:
        parse("x + foo*2", COORDS)
    assert err.value.pos == 4


def test_arity_errors():
    with pytest.raises(ArityError):
        parse("sin(x, y)", COORDS)
    with pytest.raises(ArityError):
        parse("sin()", COORDS)


def test_coordinate_shadowing_a_function_is_rejected():
    with pytest.raises(ExprError):
        parse("sin+1", ("sin", "x"))


def test_malformed_inputs():
    for text in ["", "x+", "(x", "x)", "1..2", "x y", "+", "sin 4"]:
        with pytest.raises(ParseError):
            parse(text, COORDS)


def test_eval_domain_error_carries_subexpression():
    e = parse("1 + log(x - 2)", COORDS)
    with pytest.raises(EvalDomainError) as err:
        e.val(np.array([0.0, 1.0, 0.0, 0.0]))
    assert "log" in err.value.subexpr
    with pytest.raises(EvalDomainError):
        e.jet(np.array([0.0, 1.0, 0.0, 0.0]))


def test_val_and_jet_agree():
    e = parse("exp(2*t)*sin(x) - y/(1+z^2)", COORDS)
    pt = np.array([0.3, 0.7, -0.2, 1.1])
    assert e.val(pt) == pytest.approx(e.jet(pt).value, rel=1e-15)


def test_jet_gradient_matches_finite_differences():
    e = parse("exp(2*t)*sin(x) - y/(1+z^2) + sqrt(4+x*y)", COORDS)
    pt = np.array([0.3, 0.7, -0.2, 1.1])
    j = e.jet(pt)
    fd_g = fd_gradient(e.val, pt)
    assert np.max(np.abs(j.grad - fd_g)) < 1e-6 * (1 + np.max(np.abs(j.grad)))
    fd_h = fd_hessian(e.val, pt)
    assert np.max(np.abs(j.hess - fd_h)) < 1e-5 * (1 + np.max(np.abs(j.hess)))


# ---- round-trip property --------------------------------------------------

_leaf = st.one_of(
    st.sampled_from(list(COORDS)),
    st.floats(min_value=0.001, max_value=100.0).map(
        lambda v: np.format_float_positional(v, unique=True, trim="-")),
    st.integers(0, 40).map(str),
)

_fn = st.sampled_from(["sin", "cos", "tanh", "exp", "abs"])


_exprs = st.recursive(
    _leaf,
    lambda inner: st.one_of(
        st.tuples(st.sampled_from("+-*/"), inner, inner).map(
            lambda t: "(%s)%s(%s)" % (t[1], t[0], t[2])),
        st.tuples(_fn, inner).map(lambda t: "%s(%s)" % (t[0], t[1])),
        st.tuples(inner, st.integers(0, 3)).map(
            lambda t: "(%s)^%d" % (t[0], t[1])),
        inner.map(lambda s: "-(%s)" % s),
    ),
    max_leaves=12,
)


@settings(max_examples=150, deadline=None)
@given(_exprs)
def test_round_trip_preserves_jets(text):
    pt = np.array([0.3, -0.4, 0.9, 1.7])
    try:
        first = parse(text, COORDS)
        jet1 = first.jet(pt)
    except EvalDomainError:
        return  # the random tree hit a pole; nothing to round-trip
    if not (np.isfinite(jet1.value) and np.all(np.isfinite(jet1.grad))
            and np.all(np.isfinite(jet1.hess))):
        return  # inf propagated IEEE-style; bitwise comparison meaningless
    second = parse(to_string(first), COORDS)
    jet2 = second.jet(pt)
    assert jet1.value == jet2.value  # bitwise equality end to end
    assert np.array_equal(jet1.grad, jet2.grad)
    assert np.array_equal(jet1.hess, jet2.hess)


@settings(max_examples=80, deadline=None)
@given(_exprs)
def test_printer_stays_inside_grammar(text):
    try:
        printed = to_string(parse(text, COORDS))
    except ExprError:
        return
    reparsed = parse(printed, COORDS)  # must not raise
    assert to_string(reparsed) == printed  # printing is a fixed point
