# covariantes/membership.py
"""Pertinência em álgebras graduadas de covariantes, fatia por fatia.

Cada fatia (grau, ordem) tem dimensão finita: pertinência vira um sistema
linear exato sobre os produtos de geradores daquele grau.
"""
import logging
from dataclasses import dataclass, field
from typing import Dict, List, Optional, Sequence, Tuple

from .covariant import Covariant, admissible_steps, derivative_operator, slices
from .errors import FixtureMismatch, InvalidInput, NoSolution
from .exactpoly import Poly, scalar_ratio, to_text
from .fixtures import load_fixture
from .linalg import coordinates, express, polys_rank, rank, support
from .schemas import CertificateModel, CertificateTermModel, NonMembershipModel, PowerModel

logger = logging.getLogger(__name__)

Grade = Tuple[int, int]
Exponents = Tuple[int, ...]


# -------------------- Monômios graduados --------------------

def graded_exponents(grades: Sequence[Grade], target: Grade) -> List[Exponents]:
    """Vetores e com Σ eᵢ·gradeᵢ = target, em ordem lexicográfica decrescente."""
    if any(g[0] < 1 for g in grades):
        raise InvalidInput("Geradores de grau 0 geram fatias infinitas")
    k = len(grades)
    exps = [0] * k
    out: List[Exponents] = []

    def rec(i: int, d: int, m: int) -> None:
        if i == k:
            if d == 0 and m == 0:
                out.append(tuple(exps))
            return
        gd, gm = grades[i]
        top = d // gd
        if gm:
            top = min(top, m // gm)
        for e in range(top, -1, -1):
            exps[i] = e
            rec(i + 1, d - e * gd, m - e * gm)
        exps[i] = 0

    rec(0, target[0], target[1])
    return out


def degree_exponents(degrees: Sequence[int], degree: int) -> List[Exponents]:
    """Todos os produtos com o a-grau dado, qualquer ordem (mesma ordem lexicográfica)."""
    return graded_exponents([(d, 0) for d in degrees], (degree, 0))


class ProductCache:
    """Produtos de geradores com cache de potências."""

    def __init__(self, gens: Sequence[Covariant]):
        self.gens = list(gens)
        self._powers: Dict[Tuple[int, int], Poly] = {}

    def power(self, i: int, e: int) -> Poly:
        key = (i, e)
        if key not in self._powers:
            self._powers[key] = self.gens[i].poly ** e
        return self._powers[key]

    def product(self, exps: Exponents) -> Covariant:
        spec = self.gens[0].spec
        poly = spec.space.one
        d = m = w = 0
        for i, e in enumerate(exps):
            if e:
                poly = poly * self.power(i, e)
                g = self.gens[i]
                d, m, w = d + e * g.degree, m + e * g.order, w + e * g.weight
        return Covariant(spec, poly, d, m, w)


def monomial_label(exps: Exponents, names: Sequence[str]) -> str:
    parts = [name if e == 1 else f"{name}^{e}" for name, e in zip(names, exps) if e]
    return "*".join(parts) or "1"


@dataclass
class AlgebraSlice:
    generators: List[Covariant]
    grade: Grade
    exponents: List[Exponents]
    span: List[Covariant]

    def polys(self) -> List[Poly]:
        return [c.poly for c in self.span]

    @property
    def dimension(self) -> int:
        return polys_rank(self.polys())


def algebra_slice(gens: Sequence[Covariant], grade: Grade, cache: Optional[ProductCache] = None) -> AlgebraSlice:
    cache = cache or ProductCache(gens)
    exps = graded_exponents([g.grade for g in gens], grade) if gens else []
    return AlgebraSlice(list(gens), grade, exps, [cache.product(e) for e in exps])


# -------------------- Pertinência --------------------

@dataclass
class Membership:
    member: bool
    target: Covariant
    slice: AlgebraSlice
    expression: List[Tuple[object, Exponents]] = field(default_factory=list)
    rank: int = 0
    recheck_rank: int = 0
    x_free_parts: List[Poly] = field(default_factory=list)

    def __bool__(self) -> bool:
        return self.member

    def expand(self) -> Poly:
        """Reexpande o certificado; deve bater com o alvo."""
        out = self.target.spec.space.zero
        cache = ProductCache(self.slice.generators)
        for c, exps in self.expression:
            out = out + cache.product(exps).poly * c
        return out

    def describe(self, names: Optional[Sequence[str]] = None) -> str:
        names = names or [g.name or f"g{i + 1}" for i, g in enumerate(self.slice.generators)]
        if not self.member:
            return f"no (dim fatia {self.rank}, posto com alvo {self.recheck_rank})"
        field_ = self.target.spec.field
        terms = [f"{field_.to_str(c)}*{monomial_label(e, names)}" for c, e in self.expression]
        return "yes: " + (" + ".join(terms) or "0")

    def to_json(self):
        if self.member:
            return CertificateModel(
                target=self.target.to_json(),
                expression=[
                    CertificateTermModel(
                        coeff=self.target.spec.field.to_str(c),
                        powers=[PowerModel(gen=i, exponent=e) for i, e in enumerate(exps) if e],
                    )
                    for c, exps in self.expression
                ],
            )
        return NonMembershipModel(
            slice_dim=self.rank,
            rank=self.rank + 1,
            recheck_rank=self.recheck_rank,
            x_free_parts=[to_text(p) for p in self.x_free_parts],
        )


def _reversed_rank(polys: Sequence[Poly]) -> int:
    """Posto com linhas e colunas em ordem invertida (segunda ordem de eliminação)."""
    if not polys:
        return 0
    basis = list(reversed(support(polys)))
    rows = coordinates(list(reversed(polys)), basis)
    return rank(rows, len(basis), polys[0].space.field)


def x_free_parts(target: Covariant, gens: Sequence[Covariant]) -> List[Poly]:
    """Parte sem x (a fatia z^m) de cada produto com o mesmo a-grau do alvo."""
    if not gens:
        return []
    cache = ProductCache(gens)
    parts = []
    for exps in degree_exponents([g.degree for g in gens], target.degree):
        prod = cache.product(exps)
        parts.append(slices(prod.poly, prod.spec).get(0, prod.spec.space.zero))
    return parts


def in_algebra(target: Covariant, gens: Sequence[Covariant]) -> Membership:
    if any(g.spec != target.spec for g in gens):
        raise InvalidInput("Alvo e geradores precisam da mesma forma binária")
    gens = [g for g in gens if not g.is_zero]
    sl = algebra_slice(gens, target.grade) if gens else AlgebraSlice([], target.grade, [], [])
    if target.is_zero:
        return Membership(True, target, sl)
    coeffs = express(target.poly, sl.polys()) if sl.span else None
    if coeffs is not None:
        expression = [(c, e) for c, e in zip(coeffs, sl.exponents) if c]
        result = Membership(True, target, sl, expression)
        if result.expand() != target.poly:
            raise NoSolution("Certificado não reproduz o alvo")
        logger.info(f"✅ Alvo de grau {target.grade} está na álgebra ({len(expression)} termos)")
        return result
    span_rank = polys_rank(sl.polys())
    recheck = _reversed_rank(sl.polys() + [target.poly])
    if recheck != span_rank + 1:
        raise NoSolution(f"Recontagem de posto divergente: {recheck} vs {span_rank} + 1")
    logger.info(f"❌ Alvo de grau {target.grade} fora da álgebra (posto {span_rank} -> {recheck})")
    return Membership(False, target, sl, rank=span_rank, recheck_rank=recheck, x_free_parts=x_free_parts(target, gens))


# -------------------- Fecho pelo operador --------------------

def _grades_up_to(gens: Sequence[Covariant], degree_bound: int) -> List[Grade]:
    found = set()
    k = len(gens)

    def rec(i: int, d: int, m: int) -> None:
        if i == k:
            if d:
                found.add((d, m))
            return
        g = gens[i]
        e = 0
        while d + e * g.degree <= degree_bound:
            rec(i + 1, d + e * g.degree, m + e * g.order)
            e += 1

    rec(0, 0, 0)
    return sorted(found)


def operator_closure_step(
    gens: Sequence[Covariant], p: int, l_max: int, degree_bound: int = 2
) -> List[Covariant]:
    """Aplica o operador a cada fatia da álgebra (grau ≤ degree_bound) e devolve o que é novo."""
    if p <= 0:
        raise InvalidInput("operator_closure_step exige p > 0")
    gens = [g for g in gens if not g.is_zero]
    if not gens:
        return []
    if any(g.spec.p != p for g in gens):
        raise InvalidInput(f"Geradores fora da característica {p}")
    cache = ProductCache(gens)
    found: List[Covariant] = []
    for grade in _grades_up_to(gens, degree_bound):
        d, m = grade
        valid = [l for l in range(1, l_max + 1) if l < p and 2 * l <= m and (m - l + 1) % p == 0]
        if not valid:
            continue
        sl = algebra_slice(gens, grade, cache)
        for l in valid:
            for exps, element in zip(sl.exponents, sl.span):
                image = derivative_operator(element, l)
                if image.is_zero:
                    continue
                if in_algebra(image, list(gens) + found).member:
                    continue
                image = image.normalized()
                found.append(image)
                logger.info(f"✨ Novo covariante de grau {image.grade} (l={l}, a partir de {exps})")
    return found


# -------------------- Inalcançabilidade de c₀,₆ --------------------

@dataclass
class UnreachabilityReport:
    steps: List[Tuple[int, int]]
    slice_labels: List[str]
    images: List[Poly]
    image_rank: int
    rank_with_target: int
    candidate_hits: Dict[str, bool]

    @property
    def reachable(self) -> bool:
        return self.rank_with_target == self.image_rank


def unreachability_check_c06(m_max: int = 12) -> UnreachabilityReport:
    """c₀,₆ (característica 3) não sai do operador aplicado à fatia (6, 4)."""
    target = load_fixture("quartic_p3_c06")
    names = ["c01", "c41", "c43", "c63"]
    gens = [load_fixture(f"quartic_p3_{name}") for name in names]
    steps = admissible_steps(target.order, target.spec.p, m_max)
    if steps != [(4, 2)]:
        raise FixtureMismatch(f"Pares (m, l) inesperados para c06: {steps}")
    m, l = steps[0]
    sl = algebra_slice(gens, (target.degree, m))
    labels = [monomial_label(e, names) for e in sl.exponents]
    images = [derivative_operator(element, l).poly for element in sl.span]
    hits = {label: scalar_ratio(img, target.poly) is not None and not img.is_zero for label, img in zip(labels, images)}
    image_rank = polys_rank(images)
    with_target = polys_rank(images + [target.poly])
    logger.info(f"Fatia (6, {m}): {labels}; posto {image_rank} -> {with_target} com c06")
    return UnreachabilityReport(steps, labels, images, image_rank, with_target, hits)
