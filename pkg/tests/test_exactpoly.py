from fractions import Fraction

import pytest

from covariantes.errors import InvalidInput, NotDivisible, RingMismatch
from covariantes.exactpoly import (
    ScalarField,
    collect,
    divide_out,
    evaluate,
    from_json,
    grade,
    mul,
    normalize,
    parse,
    partial,
    power,
    reduce_mod,
    scalar_ratio,
    substitute,
    to_json,
    to_text,
    var_space,
)
from covariantes.exactpoly import pow as poly_pow

XZ3 = var_space(("a2", "a4", "x", "z"), 3)
XZ5 = var_space(("a4", "x", "z"), 5)
Q = var_space(("a0", "a1", "a2", "a3", "x", "z"), 0)


def test_scalar_field_rejects_composite():
    with pytest.raises(InvalidInput):
        ScalarField(4)


def test_fraction_with_p_in_denominator_is_rejected():
    with pytest.raises(InvalidInput):
        ScalarField(3)(Fraction(1, 3))
    assert ScalarField(5).canonical(ScalarField(5)("1/2")) == 3


def test_cube_of_binomial_mod_3():
    x, z = XZ3.var("x"), XZ3.var("z")
    assert (x + 2 * z) ** 3 == x ** 3 + 2 * z ** 3


def test_sixth_power_mod_3():
    x, z = XZ3.var("x"), XZ3.var("z")
    assert (x + 2 * z) ** 6 == x ** 6 + x ** 3 * z ** 3 + z ** 6


def test_pow_is_power():
    x, z = XZ3.var("x"), XZ3.var("z")
    assert poly_pow(x + z, 3) == power(x + z, 3) == x ** 3 + z ** 3


def test_additive_identity(make_poly):
    p = make_poly(Q)
    assert p + Q.zero == p


@pytest.mark.parametrize("space", [Q, XZ3], ids=["QQ", "GF3"])
def test_ring_axioms_on_samples(space, make_poly):
    for _ in range(10):
        a, b, c = make_poly(space), make_poly(space), make_poly(space)
        assert (a + b) + c == a + (b + c)
        assert (a * b) * c == a * (b * c)
        assert a * b == b * a
        assert a * (b + c) == a * b + a * c
        assert a - a == space.zero


@pytest.mark.parametrize("p", [2, 3, 5])
def test_frobenius(p, make_poly):
    space = var_space(("a0", "a1", "x"), p)
    for _ in range(5):
        f, g = make_poly(space, 3), make_poly(space, 3)
        assert (f + g) ** p == f ** p + g ** p


def test_partial_reduces_falling_factorial():
    a2, x, z = XZ3.var("a2"), XZ3.var("x"), XZ3.var("z")
    assert partial(a2 * x ** 2 * z ** 2, "x", 2) == 2 * a2 * z ** 2
    assert partial(z ** 5, "x").is_zero
    a4, x5, z5 = XZ5.var("a4"), XZ5.var("x"), XZ5.var("z")
    assert partial(a4 * x5 ** 4 * z5 ** 4, "x", 4) == 4 * a4 * z5 ** 4


def test_partial_vanishes_when_factor_divisible_by_p():
    x = XZ3.var("x")
    # 5·4·3 ≡ 0 (mod 3)
    assert partial(x ** 5, "x", 3).is_zero


def test_divide_out():
    a2, a4, x, z = (XZ3.var(v) for v in ("a2", "a4", "x", "z"))
    assert divide_out(2 * a2 * z ** 2, "z", 2) == 2 * a2
    with pytest.raises(NotDivisible):
        divide_out(a2 * z ** 3 + a4 * x ** 3, "z", 1)


def test_substitute_identity_and_shift():
    a2, x, z = XZ3.var("a2"), XZ3.var("x"), XZ3.var("z")
    p = a2 * x ** 6
    assert substitute(p, {}) == p
    assert substitute(p, {"x": x + 2 * z}) == a2 * (x + 2 * z) ** 6


@pytest.mark.parametrize("space", [Q, XZ3], ids=["QQ", "GF3"])
def test_divide_out_undoes_multiplication(space, make_poly):
    for v in ("x", "z"):
        for l in (1, 2, 3):
            p = make_poly(space)
            assert divide_out(mul(p, space.var(v) ** l), v, l) == p


@pytest.mark.parametrize("space", [Q, XZ3], ids=["QQ", "GF3"])
def test_mixed_partials_commute(space, make_poly):
    for _ in range(5):
        p = make_poly(space, terms=6, max_exp=4)
        assert partial(partial(p, "x"), "z") == partial(partial(p, "z"), "x")
        assert partial(partial(p, "x", 2), "z", 3) == partial(partial(p, "z", 3), "x", 2)


def _in_coefficients(space, rng):
    """Polinômio aleatório só nas variáveis a_i (sem x, z)."""
    out = space.zero
    names = [v for v in space.names if v.startswith("a")]
    for _ in range(3):
        term = space.one * rng.randint(1, 6)
        for v in rng.sample(names, 2):
            term = term * space.var(v)
        out = out + term
    return out


@pytest.mark.parametrize("space", [Q, XZ3], ids=["QQ", "GF3"])
def test_simultaneous_substitution_matches_sequential(space, make_poly, rng):
    for _ in range(5):
        p = make_poly(space, terms=5, max_exp=3)
        qx, qz = _in_coefficients(space, rng), _in_coefficients(space, rng)
        sequential = substitute(substitute(p, {"x": qx}), {"z": qz})
        assert substitute(p, {"x": qx, "z": qz}) == sequential


def test_substitute_rejects_unknown_variable():
    with pytest.raises(RingMismatch):
        substitute(XZ3.var("x"), {"y": XZ3.var("z")})


def test_ring_mismatch_on_mixed_spaces():
    with pytest.raises(RingMismatch):
        XZ3.var("x") + XZ5.var("x")


def test_grade_by_weight():
    a1, a2, a3 = Q.var("a1"), Q.var("a2"), Q.var("a3")
    parts = grade(a2 ** 2 + a1 * a3, {"a1": 1, "a2": 2, "a3": 3})
    assert list(parts) == [4]
    assert grade(Q.zero, {"a1": 1}) == {}
    by_degree = grade(Q.var("a0") + a1 * a2, {"a0": 1, "a1": 1, "a2": 1})
    assert sorted(by_degree) == [1, 2]


def test_collect_in_x_z():
    a0, a1, x, z = Q.var("a0"), Q.var("a1"), Q.var("x"), Q.var("z")
    parts = collect(a0 * z ** 2 + a1 * x * z + 3 * a1 * x * z, ["x", "z"])
    assert parts[(1, 1)] == 4 * a1
    assert parts[(0, 2)] == a0


def test_normalize_and_scalar_ratio():
    a0, a1 = Q.var("a0"), Q.var("a1")
    p = 6 * a0 ** 2 - 4 * a1
    assert normalize(p).leading_coefficient() == Q.field.one
    assert scalar_ratio(3 * p, p) == Q.field(3)
    assert scalar_ratio(p + a0, p) is None
    assert scalar_ratio(Q.zero, p) == Q.field.zero


def test_evaluate_at_one():
    space = var_space(("a0", "t"), 0)
    a0, t = space.var("a0"), space.var("t")
    assert evaluate(a0 * t ** 2 + t, {"t": 1}) == a0 + 1


def test_reduce_mod():
    p = parse("1/2*a0^2 - 3*a1*a3", Q)
    reduced = reduce_mod(p, 5)
    assert reduced == parse("3*a0^2 + 2*a1*a3", reduced.space)
    with pytest.raises(InvalidInput):
        reduce_mod(reduced, 5)


def test_canonical_text_reparses():
    p = parse("-3*a1*a3 + a2^2 + 12*a0*(x + z)^2", Q)
    assert parse(to_text(p), Q) == p
    assert to_text(Q.zero) == "0"
    assert to_text(-Q.var("x")) == "-x"


def test_parse_rejects_foreign_symbols():
    with pytest.raises(RingMismatch):
        parse("a9 + x", Q)
    with pytest.raises(InvalidInput):
        parse("x +* z", Q)


def test_json_keeps_ring_and_characteristic():
    p = parse("a2*x^2 + 2*a4*z", XZ3)
    model = to_json(p)
    assert model.ring == list(XZ3.names)
    assert from_json(model, 3) == p
