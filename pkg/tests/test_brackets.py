from itertools import combinations

import pytest

from covariantes.brackets import (
    BracketMonomial,
    BracketPoly,
    act,
    enumerate_generators,
    expand,
    is_reducible,
    parse_bracket_poly,
    parse_monomial,
    root_space,
    straighten,
)
from covariantes.errors import InvalidInput
from covariantes.exactpoly import ScalarField

QQ_FIELD = ScalarField(0)


def texts(gens):
    return [g.text() for g in gens]


def test_n4_generators_match_the_six_known_monomials(quartic_generators):
    assert texts(quartic_generators) == [
        "[12][34]",
        "[14][23]",
        "[1u][2u][34]",
        "[1u][4u][23]",
        "[3u][4u][12]",
        "[1u][2u][3u][4u]",
    ]


def test_n2_generators():
    assert texts(enumerate_generators(2)) == ["[12]", "[1u][2u]"]


def test_n3_generators():
    gens = texts(enumerate_generators(3))
    assert gens == ["[12][13][23]", "[1u][23]", "[3u][12]", "[1u][2u][3u]"]


def test_enumerate_rejects_single_point():
    with pytest.raises(InvalidInput):
        enumerate_generators(1)


@pytest.mark.parametrize("n", [2, 3, 4, 5])
def test_generators_are_regular_and_non_crossing(n):
    for g in enumerate_generators(n):
        d = g.regularity_degree
        assert d in (1, 2)
        assert not g.is_crossing
        pp = sum(m for e, m in g.edges if not e.is_u)
        assert d * n == 2 * pp + g.order


@pytest.mark.parametrize("n", [2, 3, 4, 5])
def test_generators_have_distinct_edge_multisets(n):
    gens = enumerate_generators(n)
    assert len({g.key for g in gens}) == len(gens)


def test_convex_placement_rejects_2u_3u_14():
    assert parse_monomial("[1u][4u][23]", 4).is_crossing is False
    assert parse_monomial("[2u][3u][14]", 4).is_crossing is True


def test_antisymmetry_is_absorbed_in_sign():
    assert parse_monomial("[21]", 2).sign == -1
    assert parse_monomial("[21]^2", 2).sign == 1


def test_parse_comma_form_for_large_n():
    mono = parse_monomial("[1,10][2,u]", 10)
    assert mono.text() == "[2,u][1,10]"


@pytest.mark.parametrize(
    "text, n, expected",
    [
        ("[13][24]", 4, "[12][34] + [14][23]"),
        ("[12][34]", 4, "[12][34]"),
        ("[13][2u]", 3, "[1u][23] + [3u][12]"),
    ],
)
def test_straighten_known_relations(text, n, expected):
    assert straighten(parse_bracket_poly(text, n)) == parse_bracket_poly(expected, n)


def test_expand_definitions():
    space = root_space(2)
    v = space.var
    assert expand(parse_monomial("[12]", 2)) == v("mu1") * v("nu2") - v("nu1") * v("mu2")
    assert expand(parse_monomial("[1u]", 2)) == v("mu1") * v("x") - v("nu1") * v("z")


def _crossing_monomials(n):
    """Todo par de arestas que se cruzam (u na posição n+1)."""
    points = list(range(1, n + 2))
    for a, b, c, d in combinations(points, 4):
        j = "u" if d == n + 1 else d
        yield BracketMonomial.build(n, [(a, c), (b, j)])


@pytest.mark.parametrize("n", [3, 4, 5])
def test_syzygies_are_identities_after_expansion(n):
    for mono in _crossing_monomials(n):
        assert mono.is_crossing
        straight = straighten(mono)
        assert all(not m.is_crossing for m, _ in straight.terms)
        assert expand(straight) == expand(mono)


def test_syzygy_identity_on_sampled_products(rng):
    n = 5
    edges = [(i, j) for i in range(1, n + 1) for j in list(range(i + 1, n + 1)) + ["u"]]
    for _ in range(15):
        pairs = [rng.choice(edges) for _ in range(rng.randint(2, 4))]
        mono = BracketMonomial.build(n, pairs)
        assert expand(straighten(mono)) == expand(mono)


def test_straighten_is_idempotent(rng):
    n = 4
    edges = [(i, j) for i in range(1, n + 1) for j in list(range(i + 1, n + 1)) + ["u"]]
    for _ in range(10):
        mono = BracketMonomial.build(n, [rng.choice(edges) for _ in range(3)])
        once = straighten(mono)
        assert straighten(once) == once


def test_reducibility():
    product = parse_monomial("[12][34]", 4) * parse_monomial("[1u][2u][3u][4u]", 4)
    assert is_reducible(product)
    assert not is_reducible(parse_monomial("[12][34]", 4))
    assert not is_reducible(parse_monomial("[12][13][23]", 3))


def test_reducible_via_known_list():
    known = [parse_monomial("[12][34]", 4)]
    assert is_reducible(parse_monomial("[12]^2[34]^2", 4), known)


def test_bracket_poly_parse_and_text():
    b = parse_bracket_poly("2[12][34] - [14][23] + 1/2[12][34]", 4)
    assert b.text() == "5/2*[12][34] + -[14][23]"
    with pytest.raises(InvalidInput):
        parse_bracket_poly("[12][3", 4)


def test_act_by_cycle_and_transposition():
    t0 = parse_monomial("[12][34]", 4)
    sigma, tau = [2, 3, 4, 1], [2, 1, 3, 4]
    assert act(tau, t0) == parse_bracket_poly("-[12][34]", 4)
    assert act(sigma, t0) == parse_bracket_poly("-[14][23]", 4)


def test_u0_under_cycle_needs_a_syzygy():
    u0 = parse_monomial("[1u][2u][34]", 4)
    moved = act([2, 3, 4, 1], u0)
    assert moved == parse_bracket_poly("-[1u][2u][34] - [1u][4u][23] - [3u][4u][12]", 4)


def test_json_and_dot_exports():
    mono = parse_monomial("[1u][2u]^2[34]", 4)
    assert BracketMonomial.from_json(mono.to_json()) == mono
    dot = mono.to_dot()
    assert dot.count("2 -- u;") == 2


def test_sum_merges_terms():
    a = BracketPoly.of(parse_monomial("[12]", 2), QQ_FIELD)
    assert (a + a.scale(QQ_FIELD(-1))).is_zero
