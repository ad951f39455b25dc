# covariantes/transfer.py
"""Correspondência Ψ entre polinômios simétricos regulares nas raízes e covariantes.

Ψ(a_k) é o coeficiente de x^k z^{n−k} em ∏(μᵢx − νᵢz); a volta é um sistema
linear exato sobre os monômios isobáricos em a₀..a_n.
"""
import logging
from dataclasses import dataclass
from functools import cached_property, lru_cache
from itertools import permutations
from typing import Dict, Iterator, List, Tuple

from .brackets import BracketPoly, expand, root_space
from .config import get_settings
from .covariant import BinaryFormSpec, Covariant
from .errors import InvalidInput, NoSolution, RingMismatch
from .exactpoly import Monomial, Poly, VarSpace, collect, substitute
from .linalg import express

logger = logging.getLogger(__name__)


class RootConvention:
    """Liga a₀..a_n às variáveis de raiz via f = ∏(μᵢx − νᵢz)."""

    def __init__(self, n: int, characteristic: int = 0):
        self.n = n
        self.spec = BinaryFormSpec(n, characteristic)
        self.space: VarSpace = root_space(n, characteristic)
        self._psi_cache: Dict[Monomial, Poly] = {}

    def expand_form(self) -> Poly:
        out = self.space.one
        for i in range(1, self.n + 1):
            out = out * (self.space.var(f"mu{i}") * self.space.var("x") - self.space.var(f"nu{i}") * self.space.var("z"))
        return out

    @cached_property
    def psi_images(self) -> List[Poly]:
        """Ψ(a_k) para k = 0..n, já sem x e z."""
        coeffs = collect(self.expand_form(), ["x", "z"])
        images = []
        for k in range(self.n + 1):
            c = coeffs.get((k, self.n - k), self.space.zero)
            images.append(c)
        return images

    def psi_monomial(self, exponents: Tuple[int, ...]) -> Poly:
        """Ψ de ∏ a_k^{e_k}, com cache por vetor de expoentes."""
        cached = self._psi_cache.get(exponents)
        if cached is not None:
            return cached
        k = next((i for i, e in enumerate(exponents) if e), None)
        if k is None:
            result = self.space.one
        else:
            rest = exponents[:k] + (exponents[k] - 1,) + exponents[k + 1:]
            result = self.psi_monomial(rest) * self.psi_images[k]
        self._psi_cache[exponents] = result
        return result

    def psi(self, poly: Poly) -> Poly:
        """Ψ como morfismo de anéis k[a, x, z] -> k[μ, ν, x, z]."""
        if poly.space != self.spec.space:
            raise RingMismatch("psi espera um polinômio do anel dos coeficientes")
        if poly.degree_in(["t"]) - {0}:
            raise InvalidInput("psi não aceita o parâmetro t")
        bindings = {f"a{k}": self.psi_images[k] for k in range(self.n + 1)}
        bindings["t"] = self.space.zero
        return substitute(poly, bindings, target=self.space)


@lru_cache(maxsize=None)
def root_convention(n: int, characteristic: int = 0) -> RootConvention:
    return RootConvention(n, characteristic)


# -------------------- Simetrização --------------------

@dataclass(frozen=True)
class SymmetrizationResult:
    poly: BracketPoly
    zero_orbit_sum: bool


def symmetrize(b: BracketPoly) -> SymmetrizationResult:
    """Soma da órbita Σ_{σ∈S_n} σ·b, sem endireitar."""
    degrees = {m.regularity_degree for m, _ in b.terms}
    if None in degrees or len(degrees) > 1:
        raise InvalidInput("symmetrize exige um polinômio de colchetes regular")
    limit = get_settings().max_orbit_points
    if b.n > limit:
        raise InvalidInput(f"Soma de órbita com n = {b.n} > {limit} pontos (n! termos)")
    terms = []
    for images in permutations(range(1, b.n + 1)):
        for mono, c in b.terms:
            terms.append((mono.permuted(images), c))
    result = BracketPoly.from_terms(b.n, b.field, terms)
    vanished = result.is_zero and not b.is_zero
    if vanished:
        logger.warning(f"⚠️ Soma de órbita nula para {b.text()} (característica {b.field.characteristic})")
    return SymmetrizationResult(result, vanished)


def _swap_bindings(space: VarSpace, images: List[int]) -> Dict[str, Poly]:
    bindings = {}
    for i, j in enumerate(images, start=1):
        bindings[f"mu{i}"] = space.var(f"mu{j}")
        bindings[f"nu{i}"] = space.var(f"nu{j}")
    return bindings


def is_symmetric(p: Poly, n: int) -> bool:
    """Invariância pela transposição (1 2) e pelo ciclo (1 2 … n) nos pares (μᵢ, νᵢ)."""
    space = root_space(n, p.space.characteristic)
    if p.space != space:
        raise RingMismatch("is_symmetric espera um polinômio nas variáveis de raiz")
    transposition = [2, 1] + list(range(3, n + 1))
    cycle = list(range(2, n + 1)) + [1]
    return all(substitute(p, _swap_bindings(space, g)) == p for g in (transposition, cycle))


# -------------------- Volta para os coeficientes --------------------

def _a_monomials(n: int, degree: int, weight: int) -> Iterator[Tuple[int, ...]]:
    """Vetores de expoentes em a₀..a_n com grau e peso dados, em ordem lexicográfica decrescente."""
    exps = [0] * (n + 1)

    def rec(k: int, deg: int, w: int) -> Iterator[Tuple[int, ...]]:
        if k == n:
            if deg * n == w:
                exps[n] = deg
                yield tuple(exps)
                exps[n] = 0
            return
        for e in range(deg, -1, -1):
            if e * k > w:
                continue
            exps[k] = e
            yield from rec(k + 1, deg - e, w - e * k)
        exps[k] = 0

    yield from rec(0, degree, weight)


def to_coefficients(p: Poly, n: int, d: int, r: int) -> Poly:
    """O único C em a₀..a_n, x, z com Ψ(C) = p."""
    conv = root_convention(n, p.space.characteristic)
    if p.space != conv.space:
        raise RingMismatch("to_coefficients espera um polinômio nas variáveis de raiz")
    space = conv.space
    mu = [space.index(f"mu{i}") for i in range(1, n + 1)]
    nu = [space.index(f"nu{i}") for i in range(1, n + 1)]
    ix, iz = space.index("x"), space.index("z")

    groups: Dict[Tuple[int, int], Dict[Monomial, object]] = {}
    for mono, c in p.element.items():
        if mono[ix] + mono[iz] != r:
            raise NoSolution(f"Termo de grau {mono[ix] + mono[iz]} em x, z; esperado {r}")
        if any(mono[a] + mono[b] != d for a, b in zip(mu, nu)):
            raise NoSolution(f"Termo não regular de grau {d}")
        weight = sum(mono[a] for a in mu)
        stripped = list(mono)
        stripped[ix] = stripped[iz] = 0
        groups.setdefault((mono[ix], weight), {})[tuple(stripped)] = c

    spec = conv.spec
    target_space = spec.space
    out: Dict[Monomial, object] = {}
    for (i, weight), terms in sorted(groups.items()):
        basis = list(_a_monomials(n, d, weight))
        coeffs = express(space.from_dict(terms), [conv.psi_monomial(e) for e in basis]) if basis else None
        if coeffs is None:
            raise NoSolution(f"Fatia x^{i} de peso {weight} fora da imagem de Ψ")
        for e, c in zip(basis, coeffs):
            if c:
                out[e + (i, r - i, 0)] = c
    logger.debug(f"to_coefficients n={n} d={d} r={r}: {len(out)} termos")
    return target_space.from_dict(out)


def pull_back(b: BracketPoly) -> Covariant:
    """Expande um polinômio de colchetes simétrico e devolve o covariante correspondente."""
    degrees = {m.regularity_degree for m, _ in b.terms}
    orders = {m.order for m, _ in b.terms}
    if None in degrees or len(degrees) > 1 or len(orders) > 1:
        raise InvalidInput("pull_back exige colchetes regulares de grau e ordem fixos")
    spec = BinaryFormSpec(b.n, b.field.characteristic)
    if b.is_zero:
        raise InvalidInput("Polinômio de colchetes nulo")
    d, r = degrees.pop(), orders.pop()
    poly = to_coefficients(expand(b), b.n, d, r)
    if poly.is_zero:
        return Covariant.zero(spec, d, r, (b.n * d - r) // 2)
    return Covariant.certify(poly, spec)
