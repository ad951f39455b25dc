# covariantes/brackets.py
"""Monômios de colchetes como grafos sobre os pontos 1..n e o vértice u.

Convenção geométrica: os pontos 1..n e depois u ficam, nesta ordem, num
polígono convexo; u ocupa a posição n+1 no teste de cruzamento.
"""
import logging
import re
from collections import Counter
from dataclasses import dataclass
from functools import lru_cache
from itertools import combinations_with_replacement
from typing import Dict, Iterable, Iterator, List, Mapping, Optional, Sequence, Tuple, Union

from .errors import InvalidInput
from .exactpoly import Poly, ScalarField, VarSpace, var_space
from .linalg import rank
from .schemas import BracketMonomialModel, EdgeModel

logger = logging.getLogger(__name__)

Endpoint = Union[int, str, None]
CrossingPair = Tuple[Tuple[int, int], Tuple[int, int]]


# -------------------- Arestas --------------------

@dataclass(frozen=True)
class BracketEdge:
    i: int
    j: Optional[int]  # None é o vértice u

    @property
    def is_u(self) -> bool:
        return self.j is None

    def endpoints(self, n: int) -> Tuple[int, int]:
        return (self.i, n + 1 if self.j is None else self.j)

    def sort_key(self) -> Tuple[int, int, int]:
        # arestas para u primeiro, depois ponto-ponto
        return (0, self.i, 0) if self.j is None else (1, self.i, self.j)

    def text(self, n: int) -> str:
        j = "u" if self.j is None else str(self.j)
        if n >= 10:
            return f"[{self.i},{j}]"
        return f"[{self.i}{j}]"


def make_edge(i: int, j: Endpoint, n: int) -> Tuple[int, BracketEdge]:
    """(sinal, aresta) com [ji] = −[ij] aplicado aqui, e só aqui."""
    if j in (None, "u"):
        if not 1 <= i <= n:
            raise InvalidInput(f"Ponto {i} fora de 1..{n}")
        return 1, BracketEdge(i, None)
    j = int(j)
    if not (1 <= i <= n and 1 <= j <= n):
        raise InvalidInput(f"Aresta [{i}{j}] fora de 1..{n}")
    if i == j:
        raise InvalidInput(f"Colchete degenerado [{i}{i}]")
    if i > j:
        return -1, BracketEdge(j, i)
    return 1, BracketEdge(i, j)


def _from_position(i: int, j: int, n: int) -> BracketEdge:
    return BracketEdge(i, None if j == n + 1 else j)


# -------------------- Monômios --------------------

@dataclass(frozen=True)
class BracketMonomial:
    n: int
    edges: Tuple[Tuple[BracketEdge, int], ...]
    sign: int = 1

    @classmethod
    def from_counts(cls, n: int, counts: Mapping[BracketEdge, int], sign: int = 1) -> "BracketMonomial":
        items = sorted(((e, m) for e, m in counts.items() if m), key=lambda em: em[0].sort_key())
        return cls(n, tuple(items), 1 if sign > 0 else -1)

    @classmethod
    def build(cls, n: int, pairs: Iterable[Tuple[int, Endpoint]], sign: int = 1) -> "BracketMonomial":
        counts: Counter = Counter()
        for i, j in pairs:
            s, edge = make_edge(i, j, n)
            sign *= s
            counts[edge] += 1
        return cls.from_counts(n, counts, sign)

    # ---- estrutura de grafo ----

    @property
    def counts(self) -> Dict[BracketEdge, int]:
        return dict(self.edges)

    def valence(self, i: int) -> int:
        return sum(m for e, m in self.edges if e.i == i or e.j == i)

    def valences(self) -> List[int]:
        val = [0] * (self.n + 1)
        for e, m in self.edges:
            val[e.i] += m
            if e.j is not None:
                val[e.j] += m
        return val[1:]

    @property
    def regularity_degree(self) -> Optional[int]:
        val = self.valences()
        return val[0] if len(set(val)) == 1 else None

    @property
    def order(self) -> int:
        return sum(m for e, m in self.edges if e.is_u)

    @property
    def key(self) -> Tuple:
        return tuple((e.sort_key(), m) for e, m in self.edges)

    def unsigned(self) -> "BracketMonomial":
        return self if self.sign == 1 else BracketMonomial(self.n, self.edges, 1)

    def crossing_pairs(self) -> List[CrossingPair]:
        """Pares de arestas que se cruzam, em ordem lexicográfica de extremos."""
        ends = sorted(e.endpoints(self.n) for e, _ in self.edges)
        pairs = []
        for k, (a, c) in enumerate(ends):
            for b, d in ends[k + 1:]:
                if a < b < c < d:
                    pairs.append(((a, c), (b, d)))
        return sorted(pairs)

    @property
    def is_crossing(self) -> bool:
        return bool(self.crossing_pairs())

    def __mul__(self, other: "BracketMonomial") -> "BracketMonomial":
        if self.n != other.n:
            raise InvalidInput("Monômios com quantidades de pontos diferentes")
        counts = Counter(self.counts)
        counts.update(other.counts)
        return BracketMonomial.from_counts(self.n, counts, self.sign * other.sign)

    def __pow__(self, k: int) -> "BracketMonomial":
        counts = {e: m * k for e, m in self.edges}
        return BracketMonomial.from_counts(self.n, counts, self.sign ** k)

    def permuted(self, images: Sequence[int]) -> "BracketMonomial":
        """Reetiqueta o ponto i como images[i-1]; u fica fixo."""
        counts: Counter = Counter()
        sign = self.sign
        for e, m in self.edges:
            s, edge = make_edge(images[e.i - 1], None if e.j is None else images[e.j - 1], self.n)
            sign *= s ** m
            counts[edge] += m
        return BracketMonomial.from_counts(self.n, counts, sign)

    # ---- saída ----

    def text(self) -> str:
        body = "".join(e.text(self.n) + (f"^{m}" if m > 1 else "") for e, m in self.edges) or "1"
        return ("-" if self.sign < 0 else "") + body

    def __str__(self) -> str:
        return self.text()

    def to_json(self) -> BracketMonomialModel:
        return BracketMonomialModel(
            n=self.n,
            sign=self.sign,
            edges=[EdgeModel(i=e.i, j="u" if e.j is None else e.j, m=m) for e, m in self.edges],
        )

    @classmethod
    def from_json(cls, model: BracketMonomialModel) -> "BracketMonomial":
        counts: Counter = Counter()
        sign = model.sign
        for edge in model.edges:
            s, e = make_edge(edge.i, edge.j, model.n)
            sign *= s ** edge.m
            counts[e] += edge.m
        return cls.from_counts(model.n, counts, sign)

    def to_dot(self) -> str:
        """Grafo DOT em layout circular: pontos numerados e u por último."""
        lines = ["graph bracket {", "  layout=circo;", "  node [shape=circle];"]
        lines.append("  " + " ".join(f"{i};" for i in range(1, self.n + 1)) + " u;")
        for e, m in self.edges:
            j = "u" if e.j is None else str(e.j)
            lines.extend(f"  {e.i} -- {j};" for _ in range(m))
        lines.append("}")
        return "\n".join(lines)


_EDGE = re.compile(r"\[\s*(\d+)\s*,\s*(\d+|u)\s*\]|\[(\d)(\d|u)\]")
_FACTOR = re.compile(r"(?:\[\s*\d+\s*,\s*(?:\d+|u)\s*\]|\[\d(?:\d|u)\])(?:\^(\d+))?")


def parse_monomial(text: str, n: int) -> BracketMonomial:
    """Lê "[12][34]^2[1u]" (ou "[1,10]" para n ≥ 10); um "-" inicial troca o sinal."""
    body = text.strip()
    sign = 1
    if body.startswith("-"):
        sign, body = -1, body[1:].strip()
    if body in ("", "1"):
        return BracketMonomial(n, (), sign)
    pairs: List[Tuple[int, Endpoint]] = []
    pos = 0
    for match in _FACTOR.finditer(body):
        if body[pos:match.start()].strip():
            raise InvalidInput(f"Monômio de colchetes ilegível: {text!r}")
        edge = _EDGE.match(match.group(0))
        i, j = (edge.group(1), edge.group(2)) if edge.group(1) else (edge.group(3), edge.group(4))
        pairs.extend([(int(i), j)] * int(match.group(1) or 1))
        pos = match.end()
    if body[pos:].strip():
        raise InvalidInput(f"Monômio de colchetes ilegível: {text!r}")
    return BracketMonomial.build(n, pairs, sign)


# -------------------- Polinômios de colchetes --------------------

@dataclass(frozen=True)
class BracketPoly:
    n: int
    field: ScalarField
    terms: Tuple[Tuple[BracketMonomial, object], ...]  # monômios sem sinal, ordem canônica

    @classmethod
    def from_terms(cls, n: int, field: ScalarField, terms: Iterable[Tuple[BracketMonomial, object]]) -> "BracketPoly":
        acc: Dict[BracketMonomial, object] = {}
        for mono, c in terms:
            if mono.n != n:
                raise InvalidInput("Monômios com quantidades de pontos diferentes")
            c = field(c) if isinstance(c, int) else c
            if mono.sign < 0:
                c = -c
            key = mono.unsigned()
            acc[key] = acc.get(key, field.zero) + c
        items = sorted(((m, c) for m, c in acc.items() if c), key=lambda mc: mc[0].key)
        return cls(n, field, tuple(items))

    @classmethod
    def of(cls, mono: BracketMonomial, field: Optional[ScalarField] = None) -> "BracketPoly":
        return cls.from_terms(mono.n, field or ScalarField(0), [(mono, 1)])

    @property
    def is_zero(self) -> bool:
        return not self.terms

    def as_dict(self) -> Dict[BracketMonomial, object]:
        return dict(self.terms)

    def __add__(self, other: "BracketPoly") -> "BracketPoly":
        return BracketPoly.from_terms(self.n, self.field, self.terms + other.terms)

    def scale(self, c) -> "BracketPoly":
        c = self.field(c) if isinstance(c, int) else c
        return BracketPoly.from_terms(self.n, self.field, ((m, k * c) for m, k in self.terms))

    def __mul__(self, other: "BracketPoly") -> "BracketPoly":
        return BracketPoly.from_terms(
            self.n, self.field, ((m1 * m2, c1 * c2) for m1, c1 in self.terms for m2, c2 in other.terms)
        )

    def text(self) -> str:
        if self.is_zero:
            return "0"
        parts = []
        for mono, c in self.terms:
            coeff = self.field.to_str(c)
            if coeff == "1":
                parts.append(mono.text())
            elif coeff == "-1":
                parts.append("-" + mono.text())
            else:
                parts.append(f"{coeff}*{mono.text()}")
        return " + ".join(parts)

    def __str__(self) -> str:
        return self.text()


_TERM = re.compile(r"([+-]?)\s*(?:(\d+(?:/\d+)?)\s*\*?\s*)?((?:\[[^\]]*\](?:\^\d+)?)+)")


def parse_bracket_poly(text: str, n: int, field: Optional[ScalarField] = None) -> BracketPoly:
    """Lê "2*[13][24] + -[12][34]"; sinais e coeficientes opcionais."""
    field = field or ScalarField(0)
    terms = []
    pos = 0
    compact = text.replace(" ", "")
    for match in _TERM.finditer(compact):
        gap = compact[pos:match.start()].strip("+")
        if gap:
            raise InvalidInput(f"Polinômio de colchetes ilegível: {text!r}")
        sign = -1 if match.group(1) == "-" else 1
        coeff = field(match.group(2) or "1") * field(sign)
        terms.append((parse_monomial(match.group(3), n), coeff))
        pos = match.end()
    if compact[pos:].strip("+") or not terms:
        raise InvalidInput(f"Polinômio de colchetes ilegível: {text!r}")
    return BracketPoly.from_terms(n, field, terms)


# -------------------- Endireitamento --------------------

@lru_cache(maxsize=None)
def _normal_form(mono: BracketMonomial) -> Tuple[Tuple[BracketMonomial, int], ...]:
    """Forma não cruzada de um monômio sem sinal, com coeficientes inteiros."""
    pairs = mono.crossing_pairs()
    if not pairs:
        return ((mono, 1),)
    (a, c), (b, d) = pairs[0]
    n = mono.n
    counts = Counter(mono.counts)
    counts[_from_position(a, c, n)] -= 1
    counts[_from_position(b, d, n)] -= 1
    # [ac][bd] = [ab][cd] + [ad][bc]  (d pode ser u)
    acc: Counter = Counter()
    for first, second in (((a, b), (c, d)), ((a, d), (b, c))):
        new = Counter(counts)
        new[_from_position(*first, n)] += 1
        new[_from_position(*second, n)] += 1
        for m, k in _normal_form(BracketMonomial.from_counts(n, new)):
            acc[m] += k
    return tuple((m, k) for m, k in acc.items() if k)


def straighten(b: Union[BracketPoly, BracketMonomial], field: Optional[ScalarField] = None) -> BracketPoly:
    if isinstance(b, BracketMonomial):
        b = BracketPoly.of(b, field)
    terms = []
    for mono, c in b.terms:
        for nf, k in _normal_form(mono):
            terms.append((nf, c * b.field(k)))
    return BracketPoly.from_terms(b.n, b.field, terms)


# -------------------- Expansão em raízes --------------------

def root_space(n: int, characteristic: int = 0) -> VarSpace:
    names = tuple(f"mu{i}" for i in range(1, n + 1)) + tuple(f"nu{i}" for i in range(1, n + 1)) + ("x", "z")
    return var_space(names, characteristic)


@lru_cache(maxsize=None)
def _edge_power(n: int, characteristic: int, edge: BracketEdge, m: int) -> Poly:
    space = root_space(n, characteristic)
    mu_i, nu_i = space.var(f"mu{edge.i}"), space.var(f"nu{edge.i}")
    if edge.j is None:
        # [iu] = μᵢx − νᵢz
        base = mu_i * space.var("x") - nu_i * space.var("z")
    else:
        base = mu_i * space.var(f"nu{edge.j}") - nu_i * space.var(f"mu{edge.j}")
    return base ** m


def expand(b: Union[BracketPoly, BracketMonomial], characteristic: Optional[int] = None) -> Poly:
    if isinstance(b, BracketMonomial):
        p = characteristic or 0
        out = root_space(b.n, p).one
        for edge, m in b.edges:
            out = out * _edge_power(b.n, p, edge, m)
        return out * b.sign
    p = b.field.characteristic
    out = root_space(b.n, p).zero
    for mono, c in b.terms:
        out = out + expand(mono, p) * c
    return out


# -------------------- Redutibilidade --------------------

def _is_sub(small: BracketMonomial, big: BracketMonomial) -> bool:
    counts = big.counts
    return all(counts.get(e, 0) >= m for e, m in small.edges)


def _regular_split(b: BracketMonomial, part_degree: int) -> bool:
    """Existe sub-multiconjunto com todas as valências iguais a part_degree?"""
    edges = list(b.edges)
    val = [0] * (b.n + 2)

    def rec(k: int, remaining: int) -> bool:
        if remaining == 0:
            return all(v == part_degree for v in val[1:b.n + 1])
        if k == len(edges):
            return False
        e, m = edges[k]
        ends = [e.i] if e.j is None else [e.i, e.j]
        cap = min([m] + [part_degree - val[v] for v in ends])
        for take in range(cap, -1, -1):
            for v in ends:
                val[v] += take
            found = rec(k + 1, remaining - take * len(ends))
            for v in ends:
                val[v] -= take
            if found:
                return True
        return False

    # cada ponto recebe part_degree: soma das valências fixada
    return rec(0, part_degree * b.n)


def is_reducible(b: BracketMonomial, known: Sequence[BracketMonomial] = ()) -> bool:
    d = b.regularity_degree
    if d is None or d < 2:
        return False
    for k in known:
        kd = k.regularity_degree
        if kd is not None and 1 <= kd < d and _is_sub(k, b):
            return True
    return any(_regular_split(b, d1) for d1 in range(1, d // 2 + 1))


# -------------------- Enumeração dos geradores --------------------

def _crosses(e1: Tuple[int, int], e2: Tuple[int, int]) -> bool:
    (a, c), (b, d) = sorted([e1, e2])
    return a < b < c < d


def _regular_noncrossing(n: int, d: int, r: int) -> Iterator[BracketMonomial]:
    """Multigrafos d-regulares sem cruzamento com r arestas para u (DFS ponto a ponto)."""
    rem = [0] + [d] * n
    chosen: List[Tuple[Tuple[int, int], int]] = []
    state = {"u": 0}

    def at_point(i: int) -> Iterator[BracketMonomial]:
        if i > n:
            if state["u"] == r:
                yield BracketMonomial.from_counts(n, {_from_position(a, c, n): m for (a, c), m in chosen})
            return
        options = list(range(i + 1, n + 1)) + [n + 1]
        yield from fill(i, options, 0, rem[i])

    def fill(i: int, options: List[int], k: int, need: int) -> Iterator[BracketMonomial]:
        if need == 0:
            yield from at_point(i + 1)
            return
        if k == len(options):
            return
        j = options[k]
        cap = min(need, r - state["u"]) if j == n + 1 else min(need, rem[j])
        for m in range(cap, -1, -1):
            if m and any(_crosses((i, j), e) for e, _ in chosen):
                continue
            if m:
                chosen.append(((i, j), m))
                rem[i] -= m
                if j == n + 1:
                    state["u"] += m
                else:
                    rem[j] -= m
            yield from fill(i, options, k + 1, need - m)
            if m:
                chosen.pop()
                rem[i] += m
                if j == n + 1:
                    state["u"] -= m
                else:
                    rem[j] += m

    yield from at_point(1)


def _coordinate_rank(polys: Sequence[BracketPoly], field: ScalarField) -> int:
    basis = sorted({m for b in polys for m, _ in b.terms}, key=lambda m: m.key)
    index = {m: k for k, m in enumerate(basis)}
    rows = []
    for b in polys:
        row = [field.zero] * len(basis)
        for m, c in b.terms:
            row[index[m]] = c
        rows.append(row)
    return rank(rows, len(basis), field)


def enumerate_generators(n: int) -> List[BracketMonomial]:
    """Geradores irredutíveis, sem cruzamento e de grau de regularidade ≤ 2."""
    if n < 2:
        raise InvalidInput(f"enumerate_generators exige n ≥ 2 (recebido {n})")
    field = ScalarField(0)
    # invariantes puros só no menor grau d com n·d par
    invariant_degree = 1 if n % 2 == 0 else 2
    accepted: List[BracketMonomial] = []
    for d in (1, 2):
        for r in range(0, min(d * n, 2 * n) + 1):
            if (n * d - r) % 2:
                continue
            if r == 0 and d != invariant_degree:
                continue
            candidates = sorted(_regular_noncrossing(n, d, r), key=lambda b: b.key)
            if not candidates:
                continue
            # produtos endireitados de geradores já aceitos no mesmo grau (d, r)
            span: List[BracketPoly] = []
            for g1, g2 in combinations_with_replacement(accepted, 2):
                if g1.regularity_degree + g2.regularity_degree == d and g1.order + g2.order == r:
                    span.append(straighten(g1 * g2, field))
            for cand in candidates:
                if is_reducible(cand, accepted):
                    continue
                unit = BracketPoly.of(cand, field)
                if span and _coordinate_rank(span + [unit], field) == _coordinate_rank(span, field):
                    logger.debug(f"{cand.text()} descartado: combinação de produtos")
                    continue
                accepted.append(cand)
                span.append(unit)
    accepted.sort(key=lambda b: (b.order, b.regularity_degree, b.key))
    logger.info(f"n={n}: {len(accepted)} geradores de colchetes")
    return accepted


def act(images: Sequence[int], b: Union[BracketMonomial, BracketPoly]) -> BracketPoly:
    """Ação de uma permutação (images[i-1] = π(i)) seguida de endireitamento."""
    if isinstance(b, BracketMonomial):
        b = BracketPoly.of(b)
    moved = BracketPoly.from_terms(b.n, b.field, ((m.permuted(images), c) for m, c in b.terms))
    return straighten(moved)
