# covariantes/symring.py
"""Simetrização: ação de S_n nos geradores de colchetes, espaços fixos por grau,
geradores mínimos e o pipeline completo até os covariantes.

Os invariantes são calculados como núcleos grau a grau (vale em característica
positiva, onde não há operador de Reynolds).
"""
import logging
from dataclasses import dataclass, field
from functools import cached_property
from itertools import combinations_with_replacement
from typing import Dict, List, Mapping, Optional, Sequence, Tuple

from sympy.polys.matrices import DomainMatrix

from .brackets import BracketMonomial, BracketPoly, act, enumerate_generators, expand, root_space, straighten
from .covariant import BinaryFormSpec, Covariant
from .errors import InvalidInput, NotLinear
from .exactpoly import Monomial, Poly, ScalarField, VarSpace, substitute, var_space
from .linalg import coordinates, identity, in_span, matrix, nullspace
from .membership import Grade, graded_exponents, in_algebra
from .schemas import GradeDimensionModel, PipelineReportModel
from .transfer import to_coefficients

logger = logging.getLogger(__name__)


# -------------------- Ação linear --------------------

def cycle_images(n: int) -> List[int]:
    """σ = (1 2 … n)."""
    return list(range(2, n + 1)) + [1]


def transposition_images(n: int) -> List[int]:
    """τ = (1 2)."""
    return [2, 1] + list(range(3, n + 1))


def permutation_matrix(
    n: int, generators: Sequence[BracketMonomial], images: Sequence[int], field: ScalarField
) -> DomainMatrix:
    """Linha i = coordenadas de π·bᵢ (endireitado) nos geradores."""
    if sorted(images) != list(range(1, n + 1)):
        raise InvalidInput(f"{list(images)} não é uma permutação de 1..{n}")
    index = {g.unsigned(): k for k, g in enumerate(generators)}
    rows = []
    for g in generators:
        moved = act(images, BracketPoly.of(g, field))
        row = [field.zero] * len(generators)
        for mono, c in moved.terms:
            k = index.get(mono)
            if k is None:
                raise NotLinear(f"{g.text()} sai do span dos geradores: aparece {mono.text()}")
            row[k] = c * generators[k].sign
        rows.append(row)
    return matrix(rows, len(generators), field)


@dataclass
class LinearAction:
    n: int
    field: ScalarField
    generators: List[BracketMonomial]
    sigma: DomainMatrix
    tau: DomainMatrix

    @property
    def t(self) -> int:
        return len(self.generators)

    @cached_property
    def space(self) -> VarSpace:
        return var_space(tuple(f"g{i}" for i in range(1, self.t + 1)), self.field.characteristic)

    @property
    def grades(self) -> List[Grade]:
        """(grau de regularidade, ordem) de cada gerador."""
        return [(g.regularity_degree, g.order) for g in self.generators]

    def relations_hold(self) -> bool:
        """Relações de Coxeter de S_n na apresentação ⟨σ, τ⟩."""
        eye = identity(self.t, self.field)
        s, t, n = self.sigma, self.tau, self.n
        checks = [s ** n, t ** 2, (s * t) ** (n - 1)]
        s_inv = s ** (n - 1)
        for k in range(2, n // 2 + 1):
            conj = (s ** k) * t * (s_inv ** k)
            checks.append((t * conj) ** 2)
        # compara entradas: `==` de DomainMatrix distingue denso de esparso
        target = eye.to_list()
        return all(m.to_list() == target for m in checks)


def action_matrices(n: int, generators: Sequence[BracketMonomial], p: int = 0) -> LinearAction:
    field_ = ScalarField(p)
    gens = list(generators)
    sigma = permutation_matrix(n, gens, cycle_images(n), field_)
    tau = permutation_matrix(n, gens, transposition_images(n), field_)
    logger.info(f"Ação de S_{n} em {len(gens)} geradores (característica {p})")
    return LinearAction(n, field_, gens, sigma, tau)


# -------------------- Espaços fixos --------------------

@dataclass
class GradedBasis:
    grade: Grade
    basis: List[Poly] = field(default_factory=list)

    @property
    def dimension(self) -> int:
        return len(self.basis)


def _linear_images(action: LinearAction, m: DomainMatrix) -> Dict[str, Poly]:
    space = action.space
    rows = m.to_list()
    bindings = {}
    for i, row in enumerate(rows):
        terms = {}
        for j, c in enumerate(row):
            if c:
                e = [0] * action.t
                e[j] = 1
                terms[tuple(e)] = c
        bindings[f"g{i + 1}"] = space.from_dict(terms)
    return bindings


def degree_monomials(t: int, degree: int) -> List[Monomial]:
    out = []
    for combo in combinations_with_replacement(range(t), degree):
        e = [0] * t
        for i in combo:
            e[i] += 1
        out.append(tuple(e))
    return out


def monomial_grade(exps: Monomial, grades: Sequence[Grade]) -> Grade:
    return (sum(e * g[0] for e, g in zip(exps, grades)), sum(e * g[1] for e, g in zip(exps, grades)))


def induced_matrix(action: LinearAction, m: DomainMatrix, monomials: Sequence[Monomial]) -> DomainMatrix:
    """Matriz de g em k[g₁..g_t]_D restrita a `monomials`: coluna j = g·monomials[j]."""
    space = action.space
    bindings = _linear_images(action, m)
    images = [substitute(space.monomial(e), bindings) for e in monomials]
    cols = coordinates(images, monomials)
    for img, col in zip(images, cols):
        if len(img.element) != sum(1 for c in col if c):
            raise InvalidInput("Imagem fora do bloco graduado")
    rows = [[cols[j][i] for j in range(len(monomials))] for i in range(len(monomials))]
    return matrix(rows, len(monomials), action.field)


def fixed_space(action: LinearAction, degree: int, max_a_degree: Optional[int] = None) -> Dict[Grade, GradedBasis]:
    """Base de k[g₁..g_t]_degree^{S_n}, bloco a bloco por (a-grau, ordem)."""
    if degree < 0:
        raise InvalidInput("Grau negativo")
    space = action.space
    blocks: Dict[Grade, List[Monomial]] = {}
    for e in degree_monomials(action.t, degree):
        g = monomial_grade(e, action.grades)
        if max_a_degree is None or g[0] <= max_a_degree:
            blocks.setdefault(g, []).append(e)
    out: Dict[Grade, GradedBasis] = {}
    for grade_, monos in sorted(blocks.items()):
        size = len(monos)
        eye = identity(size, action.field)
        stacked = []
        for m in (action.sigma, action.tau):
            stacked.extend((induced_matrix(action, m, monos) - eye).to_list())
        kernel = nullspace(stacked, size, action.field)
        basis = [space.from_dict({e: c for e, c in zip(monos, v) if c}) for v in kernel]
        out[grade_] = GradedBasis(grade_, basis)
        logger.debug(f"Espaço fixo grau {degree}, bloco {grade_}: dim {len(basis)} de {size}")
    return out


# -------------------- Geradores mínimos --------------------

def _canonical_key(p: Poly) -> Tuple:
    f = p.space.field
    return tuple((mono, f.canonical(c)) for mono, c in p.terms())


def minimal_generators(bases: Mapping[Grade, Sequence[Poly]]) -> List[Poly]:
    """Guloso por grau: fica quem não está no span dos produtos dos já aceitos."""
    accepted: List[Tuple[Grade, Poly]] = []
    for grade_ in sorted(bases):
        candidates = sorted((p for p in bases[grade_] if not p.is_zero), key=_canonical_key)
        lower = [(g, p) for g, p in accepted if g != grade_]
        span: List[Poly] = []
        if lower:
            for exps in graded_exponents([g for g, _ in lower], grade_):
                prod = None
                for (_, p), e in zip(lower, exps):
                    if e:
                        prod = p ** e if prod is None else prod * p ** e
                span.append(prod)
        for cand in candidates:
            if in_span(cand, span):
                continue
            accepted.append((grade_, cand))
            span.append(cand)
    return [p for _, p in accepted]


# -------------------- Pipeline --------------------

@dataclass
class PipelineReport:
    n: int
    p: int
    degree_bound: int
    generators: List[BracketMonomial]
    fixed_dimensions: Dict[Grade, int]
    upstairs: List[Poly]
    covariants: List[Covariant]
    vanishing_images: int = 0
    audit: List[str] = field(default_factory=list)

    def to_json(self) -> PipelineReportModel:
        return PipelineReportModel(
            n=self.n,
            p=self.p,
            degree_bound=self.degree_bound,
            generators=[g.text() for g in self.generators],
            fixed_dimensions=[
                GradeDimensionModel(degree=d, order=m, dimension=k) for (d, m), k in sorted(self.fixed_dimensions.items())
            ],
            upstairs_generators=len(self.upstairs),
            vanishing_images=self.vanishing_images,
            covariants=[c.to_json() for c in self.covariants],
            audit=self.audit,
        )


def bracket_image(poly: Poly, generators: Sequence[BracketMonomial], field_: ScalarField) -> BracketPoly:
    """Troca gᵢ pelo i-ésimo gerador de colchetes e endireita."""
    n = generators[0].n
    terms = []
    for exps, c in poly.terms():
        mono = BracketMonomial(n, ())
        for g, e in zip(generators, exps):
            if e:
                mono = mono * g ** e
        terms.append((mono, c))
    return straighten(BracketPoly.from_terms(n, field_, terms))


def covariant_image(poly: Poly, grade_: Grade, action: LinearAction) -> Optional[Covariant]:
    """Imagem de um invariante de cima no anel dos covariantes (None se anular)."""
    n, p = action.n, action.field.characteristic
    target = root_space(n, p)
    bindings = {f"g{i + 1}": expand(g, p) for i, g in enumerate(action.generators)}
    in_roots = substitute(poly, bindings, target=target)
    if in_roots.is_zero:
        return None
    d, r = grade_
    return Covariant.certify(to_coefficients(in_roots, n, d, r), BinaryFormSpec(n, p))


def separating_pipeline(n: int, p: int = 0, degree_bound: int = 2, audit: bool = True) -> PipelineReport:
    if degree_bound < 0:
        raise InvalidInput("degree_bound deve ser ≥ 0")
    generators = enumerate_generators(n)
    if degree_bound == 0:
        return PipelineReport(n, p, 0, generators, {}, [], [])
    action = action_matrices(n, generators, p)

    bases: Dict[Grade, List[Poly]] = {}
    dims: Dict[Grade, int] = {}
    for D in range(1, degree_bound + 1):
        for grade_, gb in fixed_space(action, D, max_a_degree=degree_bound).items():
            bases.setdefault(grade_, []).extend(gb.basis)
            dims[grade_] = dims.get(grade_, 0) + gb.dimension
    logger.info(f"Espaços fixos até grau {degree_bound}: {sum(dims.values())} vetores em {len(dims)} blocos")

    upstairs = minimal_generators(bases)
    logger.info(f"{len(upstairs)} invariantes mínimos em k[g₁..g_{action.t}]")

    covariants: List[Covariant] = []
    chosen: List[Poly] = []
    vanished = 0
    for q in upstairs:
        image = covariant_image(q, monomial_grade(q.terms()[0][0], action.grades), action)
        if image is None:
            vanished += 1
            continue
        if covariants and in_algebra(image, covariants).member:
            continue
        covariants.append(image.normalized())
        chosen.append(q)

    lines = []
    if audit:
        for q, c in zip(chosen, covariants):
            lines.append(f"c{c.order},{c.degree} = {bracket_image(q, generators, action.field).text()}")
    logger.info(f"✅ Pipeline n={n}, p={p}: {len(covariants)} covariantes ({vanished} imagens nulas)")
    return PipelineReport(n, p, degree_bound, generators, dims, upstairs, covariants, vanished, lines)
