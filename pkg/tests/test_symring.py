from dataclasses import replace
from itertools import permutations

import pytest

from covariantes.brackets import enumerate_generators
from covariantes.covariant import BinaryFormSpec, Covariant, is_covariant
from covariantes.errors import InvalidInput, NotLinear
from covariantes.exactpoly import ScalarField, normalize, reduce_mod, scalar_ratio, var_space
from covariantes.fixtures import QUARTIC_CHAR0, QUARTIC_CHAR3, load_fixture
from covariantes.linalg import identity
from covariantes.membership import in_algebra
from covariantes.symring import (
    action_matrices,
    covariant_image,
    degree_monomials,
    fixed_space,
    induced_matrix,
    minimal_generators,
    monomial_grade,
    permutation_matrix,
    separating_pipeline,
)

SIGMA_N4 = [
    [0, -1, 0, 0, 0, 0],
    [-1, 0, 0, 0, 0, 0],
    [0, 0, -1, -1, -1, 0],
    [0, 0, 1, 0, 0, 0],
    [0, 0, 0, 1, 0, 0],
    [0, 0, 0, 0, 0, 1],
]
TAU_N4 = [
    [-1, 0, 0, 0, 0, 0],
    [1, 1, 0, 0, 0, 0],
    [0, 0, 1, 0, 0, 0],
    [0, 0, 0, 1, 1, 0],
    [0, 0, 0, 0, -1, 0],
    [0, 0, 0, 0, 0, 1],
]


def canonical_rows(m, field):
    return [[field.canonical(c) for c in row] for row in m.to_list()]


# -------------------- ação linear --------------------

def test_n4_action_matrices(quartic_generators):
    action = action_matrices(4, quartic_generators)
    assert canonical_rows(action.sigma, action.field) == SIGMA_N4
    assert canonical_rows(action.tau, action.field) == TAU_N4


def test_n4_action_matrices_mod_3(quartic_generators):
    action = action_matrices(4, quartic_generators, 3)
    expected = [[c % 3 for c in row] for row in SIGMA_N4]
    assert canonical_rows(action.sigma, action.field) == expected


@pytest.mark.parametrize("n, p", [(2, 0), (3, 0), (4, 0), (4, 3), (5, 0)])
def test_coxeter_relations(n, p):
    assert action_matrices(n, enumerate_generators(n), p).relations_hold()


def test_relations_detect_a_wrong_transposition(quartic_generators):
    action = action_matrices(4, quartic_generators)
    # σ² ≠ 1 para n = 4
    assert not replace(action, tau=action.sigma).relations_hold()


def test_identity_matches_matrix_powers(quartic_generators):
    action = action_matrices(4, quartic_generators)
    eye = identity(action.t, action.field).to_list()
    assert (action.tau ** 2).to_list() == eye
    assert (action.sigma ** 4).to_list() == eye
    assert (action.sigma ** 2).to_list() != eye


def test_generators_must_span_the_orbit(quartic_generators):
    with pytest.raises(NotLinear):
        action_matrices(4, quartic_generators[:1])


def test_permutation_images_are_validated(quartic_generators):
    with pytest.raises(InvalidInput):
        permutation_matrix(4, quartic_generators, [1, 1, 2, 3], ScalarField(0))


# -------------------- espaços fixos --------------------

def test_degree_zero_is_the_constants(quartic_generators):
    action = action_matrices(4, quartic_generators)
    blocks = fixed_space(action, 0)
    assert list(blocks) == [(0, 0)]
    assert blocks[(0, 0)].basis == [action.space.one]


def test_t0_minus_t1_is_invariant_only_mod_3(quartic_generators):
    char0 = fixed_space(action_matrices(4, quartic_generators), 1)
    assert char0[(1, 0)].dimension == 0

    action = action_matrices(4, quartic_generators, 3)
    block = fixed_space(action, 1)[(1, 0)]
    assert block.dimension == 1
    g1, g2 = action.space.var("g1"), action.space.var("g2")
    assert scalar_ratio(block.basis[0], g1 - g2) is not None

    image = covariant_image(block.basis[0], (1, 0), action)
    assert scalar_ratio(image.poly, BinaryFormSpec(4, 3).a(2)) is not None


@pytest.mark.parametrize("p", [0, 5])
def test_fixed_dimension_matches_group_average(quartic_generators, p):
    # |S₄| = 24 é invertível em 0 e 5, então o posto da soma sobre o grupo = dim do espaço fixo
    action = action_matrices(4, quartic_generators, p)
    group = [permutation_matrix(4, quartic_generators, list(images), action.field) for images in permutations(range(1, 5))]
    for grade_, block in fixed_space(action, 2).items():
        monos = _block_monomials(action, 2, grade_)
        total = None
        for m in group:
            induced = induced_matrix(action, m, monos)
            total = induced if total is None else total + induced
        assert total.rank() == block.dimension, grade_


def _block_monomials(action, degree, grade_):
    return [e for e in degree_monomials(action.t, degree) if monomial_grade(e, action.grades) == grade_]


def test_minimal_generators_drop_powers():
    space = var_space(("g1",), 0)
    g = space.var("g1")
    assert minimal_generators({(1, 0): [g], (2, 0): [g ** 2]}) == [g]


def test_minimal_generators_keep_independent_elements():
    space = var_space(("g1", "g2"), 0)
    g1, g2 = space.var("g1"), space.var("g2")
    kept = minimal_generators({(1, 0): [g1], (2, 0): [g1 ** 2 + g2 ** 2, 2 * g1 ** 2]})
    assert len(kept) == 2


# -------------------- pipeline --------------------

def test_pipeline_n2_gives_form_and_discriminant():
    report = separating_pipeline(2, 0, 2)
    spec = BinaryFormSpec(2)
    assert [c.grade for c in report.covariants] == [(1, 2), (2, 0)]
    assert report.covariants[0].poly == normalize(spec.form())
    disc = spec.a(1) ** 2 - 4 * spec.a(0) * spec.a(2)
    assert report.covariants[1].poly == normalize(disc)
    assert len(report.audit) == 2
    assert report.audit[0].startswith("c2,1 = ")


def test_pipeline_with_zero_bound_is_empty():
    report = separating_pipeline(4, 3, 0)
    assert report.covariants == []
    assert report.to_json().covariants == []


def test_pipeline_rejects_negative_bound():
    with pytest.raises(InvalidInput):
        separating_pipeline(4, 0, -1)


def test_quartic_char0_recovers_the_classical_system():
    report = separating_pipeline(4, 0, 3)
    got = {c.grade: c.poly for c in report.covariants}
    expected = {}
    for name in QUARTIC_CHAR0:
        cov = load_fixture(name).normalized()
        expected[cov.grade] = cov.poly
    assert got == expected
    assert all(is_covariant(c) for c in report.covariants)
    model = report.to_json()
    assert len(model.covariants) == 5
    assert model.upstairs_generators >= 5


def test_char5_matches_reduction_of_char0():
    spec5 = BinaryFormSpec(4, 5)
    char0 = separating_pipeline(4, 0, 2).covariants
    char5 = separating_pipeline(4, 5, 2).covariants
    reduced = [Covariant.certify(reduce_mod(c.poly, 5), spec5) for c in char0]
    assert all(in_algebra(c, reduced).member for c in char5)
    assert all(in_algebra(c, char5).member for c in reduced)


@pytest.mark.slow
def test_quartic_char3_up_to_degree_six():
    report = separating_pipeline(4, 3, 6)
    out = report.covariants
    fixtures = [load_fixture(name) for name in QUARTIC_CHAR3]
    assert all(is_covariant(c) for c in out)
    assert all(in_algebra(c, out).member for c in fixtures)
    assert all(in_algebra(c, fixtures).member for c in out)
    a2 = BinaryFormSpec(4, 3).a(2)
    assert any(scalar_ratio(c.poly, a2) is not None for c in out)

    c01, c43, c44 = (load_fixture(f"quartic_p3_{name}") for name in ("c01", "c43", "c44"))
    assert not in_algebra(c43, out).member
    assert in_algebra(c44, out).member
    certificate = in_algebra(c44, [c01, c43])
    assert [exps for _, exps in certificate.expression] == [(1, 1)]
