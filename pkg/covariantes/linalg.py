# covariantes/linalg.py
"""Álgebra linear exata via `DomainMatrix` (coordenadas de polinômios, posto, núcleo, sistemas)."""
import logging
from typing import List, Optional, Sequence

from sympy.polys.matrices import DomainMatrix
from sympy.polys.orderings import grevlex

from .exactpoly import Monomial, Poly, ScalarField

logger = logging.getLogger(__name__)


def matrix(rows: Sequence[Sequence[object]], ncols: int, field: ScalarField) -> DomainMatrix:
    dom = field.domain
    data = [[dom.convert(v) for v in row] for row in rows]
    return DomainMatrix(data, (len(data), ncols), dom)


def identity(size: int, field: ScalarField) -> DomainMatrix:
    return DomainMatrix.eye(size, field.domain).to_dense()


def entries(m: DomainMatrix) -> List[List[object]]:
    return m.to_list()


# -------------------- Coordenadas --------------------

def support(polys: Sequence[Poly]) -> List[Monomial]:
    """Monômios que aparecem em algum polinômio, em ordem canônica."""
    seen = set()
    for p in polys:
        seen.update(p.element.keys())
    return sorted(seen, key=grevlex, reverse=True)


def coordinates(polys: Sequence[Poly], basis: Sequence[Monomial]) -> List[List[object]]:
    """Uma linha por polinômio, uma coluna por monômio de `basis`."""
    if not polys:
        return []
    zero = polys[0].space.field.zero
    return [[p.element.get(m, zero) for m in basis] for p in polys]


# -------------------- Posto, núcleo, sistemas --------------------

def rank(rows: Sequence[Sequence[object]], ncols: int, field: ScalarField) -> int:
    if not rows or ncols == 0:
        return 0
    return matrix(rows, ncols, field).rank()


def nullspace(rows: Sequence[Sequence[object]], ncols: int, field: ScalarField) -> List[List[object]]:
    """Base do núcleo à direita: vetores v com A·v = 0."""
    if ncols == 0:
        return []
    if not rows:
        return [[field.one if i == j else field.zero for j in range(ncols)] for i in range(ncols)]
    basis = matrix(rows, ncols, field).nullspace()
    return [list(row) for row in basis.to_list() if any(row)]


def solve(columns: Sequence[Sequence[object]], target: Sequence[object], field: ScalarField) -> Optional[List[object]]:
    """x com Σ x_j·columns[j] = target, ou None se o sistema for inconsistente.

    Variáveis livres recebem zero; a solução é a lida direto da forma escalonada.
    """
    nrows = len(target)
    ncols = len(columns)
    if nrows == 0:
        return [field.zero] * ncols
    aug = [[columns[j][i] for j in range(ncols)] + [target[i]] for i in range(nrows)]
    reduced, pivots = matrix(aug, ncols + 1, field).rref()
    if ncols in pivots:
        return None
    table = reduced.to_list()
    x = [field.zero] * ncols
    for row, col in enumerate(pivots):
        x[col] = table[row][ncols]
    return x


def polys_rank(polys: Sequence[Poly]) -> int:
    if not polys:
        return 0
    basis = support(polys)
    return rank(coordinates(polys, basis), len(basis), polys[0].space.field)


def in_span(target: Poly, polys: Sequence[Poly]) -> bool:
    if target.is_zero:
        return True
    return polys_rank(list(polys) + [target]) == polys_rank(polys)


def express(target: Poly, polys: Sequence[Poly]) -> Optional[List[object]]:
    """Coeficientes c_j com target = Σ c_j·polys[j], ou None."""
    field = target.space.field
    basis = support(list(polys) + [target])
    cols = coordinates(polys, basis)
    rhs = coordinates([target], basis)[0]
    return solve(cols, rhs, field)

