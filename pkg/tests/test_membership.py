import pytest

from covariantes.covariant import BinaryFormSpec, Covariant, derivative_operator, is_covariant
from covariantes.errors import InvalidInput
from covariantes.exactpoly import normalize, parse, scalar_ratio, to_text
from covariantes.fixtures import load_fixture
from covariantes.membership import (
    algebra_slice,
    graded_exponents,
    in_algebra,
    operator_closure_step,
    unreachability_check_c06,
)

SEXTIC_P5 = BinaryFormSpec(6, 5)


def test_graded_exponents_order():
    assert graded_exponents([(1, 0), (1, 4)], (2, 4)) == [(1, 1)]
    assert graded_exponents([(1, 0), (1, 0)], (2, 0)) == [(2, 0), (1, 1), (0, 2)]
    assert graded_exponents([(1, 4)], (2, 0)) == []


def test_degree_zero_generators_are_rejected():
    with pytest.raises(InvalidInput):
        graded_exponents([(0, 2)], (1, 2))


def test_c44_is_c01_times_c43():
    c01, c43, c44 = (load_fixture(f"quartic_p3_{name}") for name in ("c01", "c43", "c44"))
    result = in_algebra(c44, [c01, c43])
    assert result.member
    assert [exps for _, exps in result.expression] == [(1, 1)]
    assert result.expand() == c44.poly
    assert result.to_json().expression[0].powers[0].gen == 0


def test_zero_target_is_always_member(quartic_p3):
    zero = Covariant.zero(quartic_p3, 2, 0, 4)
    assert in_algebra(zero, []).member


def test_generators_must_share_the_form(quartic, quartic_p3):
    with pytest.raises(InvalidInput):
        in_algebra(Covariant.form(quartic), [Covariant.form(quartic_p3)])


def test_sextic_square_is_not_generated_by_f_and_c():
    f = Covariant.form(SEXTIC_P5)
    c = derivative_operator(f, 2)
    target = load_fixture("sextic_p5_saturation_target")
    result = in_algebra(target, [f, c])
    assert not result.member
    assert result.rank == 0 and result.recheck_rank == 1
    assert sorted(to_text(p) for p in result.x_free_parts) == sorted(["a0^2", "2*a0*a2", "4*a2^2"])
    model = result.to_json()
    assert model.no and model.x_free_parts


def test_slice_spans_products(quartic_p3):
    c01, c41 = load_fixture("quartic_p3_c01"), load_fixture("quartic_p3_c41")
    sl = algebra_slice([c01, c41], (3, 4))
    assert sl.exponents == [(2, 1)]
    assert sl.dimension == 1


def test_c06_cannot_be_reached_by_the_operator():
    report = unreachability_check_c06()
    assert report.steps == [(4, 2)]
    assert report.slice_labels == ["c01^5*c41", "c01^3*c43"]
    a2 = load_fixture("quartic_p3_c01").poly
    assert report.images[0] == 2 * a2 ** 6
    assert report.images[1].is_zero
    assert report.image_rank == 1
    assert report.rank_with_target == 2
    assert not report.reachable
    assert report.candidate_hits == {"c01^5*c41": False, "c01^3*c43": False}


def test_closure_step_finds_a2_from_the_quartic(quartic_p3):
    found = operator_closure_step([Covariant.form(quartic_p3)], 3, l_max=2, degree_bound=1)
    assert [normalize(c.poly) for c in found] == [quartic_p3.a(2)]


def test_closure_step_needs_positive_characteristic(quartic):
    with pytest.raises(InvalidInput):
        operator_closure_step([Covariant.form(quartic)], 0, l_max=1)


def test_sextic_closure_reaches_the_saturation_target():
    f = Covariant.form(SEXTIC_P5)
    c = derivative_operator(f, 2)
    found = operator_closure_step([f, c], 5, l_max=4)
    assert [cov.grade for cov in found] == [(2, 0), (2, 6)]
    assert all(is_covariant(cov) for cov in found)
    assert scalar_ratio(found[0].poly, parse("a3^2 + 4*a2*a4", SEXTIC_P5.space)) is not None
    target = load_fixture("sextic_p5_saturation_target")
    assert scalar_ratio(found[1].poly, target.poly) is not None
    assert in_algebra(target, [f, c] + found).member


def test_closure_step_without_valid_l_is_empty(quartic_p3):
    # 4 − l + 1 e 8 − l + 1 não são múltiplos de 3 para l = 1
    assert operator_closure_step([Covariant.form(quartic_p3)], 3, l_max=1) == []


def test_more_generators_never_lose_membership():
    c01, c41, c43, c44, c63 = (load_fixture(f"quartic_p3_{name}") for name in ("c01", "c41", "c43", "c44", "c63"))
    f = Covariant.form(c01.spec)
    gens = [c01, c43]
    assert in_algebra(c44, gens).member
    for extra in (c41, c63, f, c44):
        gens = gens + [extra]
        result = in_algebra(c44, gens)
        assert result.member
        assert result.expand() == c44.poly
