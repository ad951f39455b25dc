# covariantes/exactpoly.py
"""Aritmética polinomial exata sobre F_p ou Q.

Tudo roda em cima de `sympy.polys.rings`: um `VarSpace` fixa nomes, corpo e a
ordem grevlex; um `Poly` embrulha um `PolyElement` imutável daquele anel.
"""
import logging
from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property, lru_cache
from typing import Dict, Iterable, List, Mapping, Optional, Sequence, Tuple, Union

from sympy import Symbol, isprime, sympify
from sympy.core.sympify import SympifyError
from sympy.polys.domains import GF, QQ
from sympy.polys.orderings import grevlex
from sympy.polys.polyerrors import CoercionFailed
from sympy.polys.rings import PolyElement, PolyRing

from .errors import InvalidInput, NotDivisible, RingMismatch
from .schemas import PolyModel, TermModel

logger = logging.getLogger(__name__)

Monomial = Tuple[int, ...]
ScalarLike = Union[int, Fraction, str]


# -------------------- Corpo de escalares --------------------

@dataclass(frozen=True)
class ScalarField:
    """F_p (p primo) ou Q quando characteristic == 0."""

    characteristic: int

    def __post_init__(self):
        p = self.characteristic
        if p < 0 or (p > 0 and not isprime(p)):
            raise InvalidInput(f"Característica inválida: {p} (use 0 ou um primo)")

    @cached_property
    def domain(self):
        return QQ if self.characteristic == 0 else GF(self.characteristic)

    @property
    def zero(self):
        return self.domain.zero

    @property
    def one(self):
        return self.domain.one

    def __call__(self, value: ScalarLike):
        if isinstance(value, int):
            return self.domain.convert(value)
        if isinstance(value, str):
            value = Fraction(value.strip())
        if isinstance(value, Fraction):
            if self.characteristic and value.denominator % self.characteristic == 0:
                raise InvalidInput(f"Denominador {value.denominator} não é invertível mod {self.characteristic}")
            if self.characteristic == 0:
                return QQ(value.numerator, value.denominator)
            return self.domain.convert(value.numerator) / self.domain.convert(value.denominator)
        return self.domain.convert(value)

    def canonical(self, c) -> Union[int, Fraction]:
        """Representante canônico: inteiro em [0, p) ou fração reduzida."""
        if self.characteristic:
            return int(c) % self.characteristic
        return Fraction(int(QQ.numer(c)), int(QQ.denom(c)))

    def to_str(self, c) -> str:
        return str(self.canonical(c))

    def inverse(self, c):
        if not c:
            raise ZeroDivisionError("inverso de zero")
        return self.domain.one / c


# -------------------- Espaço de variáveis --------------------

@dataclass(frozen=True)
class VarSpace:
    names: Tuple[str, ...]
    field: ScalarField

    def __post_init__(self):
        if len(set(self.names)) != len(self.names):
            raise InvalidInput(f"Nomes de variáveis repetidos: {self.names}")

    @cached_property
    def ring(self) -> PolyRing:
        return PolyRing(tuple(Symbol(name) for name in self.names), self.field.domain, grevlex)

    @cached_property
    def _positions(self) -> Dict[str, int]:
        return {name: i for i, name in enumerate(self.names)}

    @property
    def characteristic(self) -> int:
        return self.field.characteristic

    def index(self, name: str) -> int:
        try:
            return self._positions[name]
        except KeyError:
            raise RingMismatch(f"Variável {name!r} não pertence a {list(self.names)}")

    def __contains__(self, name: str) -> bool:
        return name in self._positions

    def var(self, name: str) -> "Poly":
        return Poly(self, self.ring.gens[self.index(name)])

    def constant(self, value) -> "Poly":
        if not isinstance(value, (int, Fraction, str)):
            return Poly(self, self.ring.ground_new(value))
        return Poly(self, self.ring.ground_new(self.field(value)))

    @property
    def zero(self) -> "Poly":
        return Poly(self, self.ring.zero)

    @property
    def one(self) -> "Poly":
        return Poly(self, self.ring.one)

    def monomial(self, exponents: Sequence[int], coeff=None) -> "Poly":
        if len(exponents) != len(self.names):
            raise RingMismatch(f"Vetor de expoentes com {len(exponents)} entradas para {len(self.names)} variáveis")
        c = self.field.one if coeff is None else coeff
        return self.from_dict({tuple(exponents): c})

    def from_dict(self, terms: Mapping[Monomial, object]) -> "Poly":
        return Poly(self, self.ring.from_dict(dict(terms)))

    def extended(self, extra: Iterable[str]) -> "VarSpace":
        names = self.names + tuple(n for n in extra if n not in self)
        return VarSpace(names, self.field)


@lru_cache(maxsize=None)
def var_space(names: Tuple[str, ...], characteristic: int) -> VarSpace:
    return VarSpace(tuple(names), ScalarField(characteristic))


# -------------------- Polinômio --------------------

class Poly:
    """Polinômio imutável; nunca alteramos `element` depois da construção."""

    __slots__ = ("space", "element")

    def __init__(self, space: VarSpace, element: PolyElement):
        self.space = space
        self.element = element

    # ---- aritmética ----

    def _coerce(self, other) -> PolyElement:
        if isinstance(other, Poly):
            if other.space != self.space:
                raise RingMismatch(f"Anéis diferentes: {list(self.space.names)} x {list(other.space.names)}")
            return other.element
        if isinstance(other, (int, Fraction)):
            return self.space.ring.ground_new(self.space.field(other))
        return self.space.ring.ground_new(other)

    def __add__(self, other) -> "Poly":
        return Poly(self.space, self.element + self._coerce(other))

    __radd__ = __add__

    def __sub__(self, other) -> "Poly":
        return Poly(self.space, self.element - self._coerce(other))

    def __rsub__(self, other) -> "Poly":
        return Poly(self.space, self._coerce(other) - self.element)

    def __neg__(self) -> "Poly":
        return Poly(self.space, -self.element)

    def __mul__(self, other) -> "Poly":
        return Poly(self.space, self.element * self._coerce(other))

    __rmul__ = __mul__

    def __pow__(self, k: int) -> "Poly":
        if k < 0:
            raise InvalidInput("Expoente negativo")
        return Poly(self.space, self.element ** k)

    def __eq__(self, other) -> bool:
        if isinstance(other, Poly):
            return self.space == other.space and self.element == other.element
        if isinstance(other, int):
            return self.element == self._coerce(other)
        return NotImplemented

    def __hash__(self) -> int:
        return hash((self.space, self.element))

    def __bool__(self) -> bool:
        return bool(self.element)

    def __repr__(self) -> str:
        return f"Poly({to_text(self)})"

    def __str__(self) -> str:
        return to_text(self)

    # ---- inspeção ----

    @property
    def is_zero(self) -> bool:
        return not self.element

    def terms(self) -> List[Tuple[Monomial, object]]:
        """Termos em ordem grevlex decrescente (a ordem canônica)."""
        return sorted(self.element.items(), key=lambda item: grevlex(item[0]), reverse=True)

    def leading_coefficient(self):
        terms = self.terms()
        return terms[0][1] if terms else self.space.field.zero

    def degree_in(self, names: Iterable[str]) -> set:
        """Conjunto dos graus totais nas variáveis dadas (um por termo)."""
        idx = [self.space.index(n) for n in names]
        return {sum(m[i] for i in idx) for m in self.element}

    def variables(self) -> List[str]:
        used = set()
        for mono in self.element:
            used.update(i for i, e in enumerate(mono) if e)
        return [self.space.names[i] for i in sorted(used)]


# -------------------- Operações --------------------

def add(p: Poly, q: Poly) -> Poly:
    return p + q


def mul(p: Poly, q: Poly) -> Poly:
    return p * q


def power(p: Poly, k: int) -> Poly:
    return p ** k


pow = power


def partial(p: Poly, v: str, l: int = 1) -> Poly:
    """Derivada parcial l-ésima; o fatorial descendente é reduzido fator a fator."""
    idx = p.space.index(v)
    field = p.space.field
    out: Dict[Monomial, object] = {}
    for mono, c in p.element.items():
        e = mono[idx]
        if e < l:
            continue
        falling = 1
        for k in range(e - l + 1, e + 1):
            falling *= k
            if field.characteristic:
                falling %= field.characteristic
        coeff = c * field(falling)
        if coeff:
            out[mono[:idx] + (e - l,) + mono[idx + 1:]] = coeff
    return p.space.from_dict(out)


def divide_out(p: Poly, v: str, l: int) -> Poly:
    idx = p.space.index(v)
    out: Dict[Monomial, object] = {}
    for mono, c in p.element.items():
        if mono[idx] < l:
            raise NotDivisible(f"Termo {to_text(p.space.from_dict({mono: c}))} não é divisível por {v}^{l}")
        out[mono[:idx] + (mono[idx] - l,) + mono[idx + 1:]] = c
    return p.space.from_dict(out)


def substitute(p: Poly, bindings: Mapping[str, Poly], target: Optional[VarSpace] = None) -> Poly:
    """Substituição simultânea; variáveis não ligadas vão para a de mesmo nome em `target`."""
    for name in bindings:
        p.space.index(name)
    if target is None:
        spaces = {img.space for img in bindings.values()}
        if len(spaces) > 1:
            raise RingMismatch("Imagens da substituição vivem em anéis diferentes")
        target = spaces.pop() if spaces else p.space
    if target.field != p.space.field:
        raise RingMismatch(f"Corpos diferentes: {p.space.field} x {target.field}")

    images: List[PolyElement] = []
    for name in p.space.names:
        if name in bindings:
            img = bindings[name]
            if img.space != target:
                raise RingMismatch(f"Imagem de {name} fora do anel alvo")
            images.append(img.element)
        elif name in target:
            images.append(target.ring.gens[target.index(name)])
        else:
            # Variável ausente no alvo só é aceitável se não aparece em p
            images.append(None)

    powers: Dict[Tuple[int, int], PolyElement] = {}

    def _power(i: int, e: int) -> PolyElement:
        key = (i, e)
        if key not in powers:
            if images[i] is None:
                raise RingMismatch(f"Variável {p.space.names[i]!r} não existe no anel alvo")
            powers[key] = images[i] ** e
        return powers[key]

    acc: Dict[Monomial, object] = {}
    zero = target.field.zero
    for mono, c in p.element.items():
        term = target.ring.ground_new(c)
        for i, e in enumerate(mono):
            if e:
                term = term * _power(i, e)
                if not term:
                    break
        for m, k in term.items():
            acc[m] = acc.get(m, zero) + k
    return target.from_dict({m: k for m, k in acc.items() if k})


def grade(p: Poly, weights: Mapping[str, int]) -> Dict[int, Poly]:
    """Componentes homogêneas para os pesos dados (variáveis ausentes pesam 0)."""
    w = [weights.get(name, 0) for name in p.space.names]
    buckets: Dict[int, Dict[Monomial, object]] = {}
    for mono, c in p.element.items():
        key = sum(wi * e for wi, e in zip(w, mono))
        buckets.setdefault(key, {})[mono] = c
    return {k: p.space.from_dict(buckets[k]) for k in sorted(buckets)}


def collect(p: Poly, names: Sequence[str]) -> Dict[Tuple[int, ...], Poly]:
    """Coeficientes de p vistos como polinômio nas variáveis `names`."""
    idx = [p.space.index(n) for n in names]
    buckets: Dict[Tuple[int, ...], Dict[Monomial, object]] = {}
    for mono, c in p.element.items():
        key = tuple(mono[i] for i in idx)
        rest = list(mono)
        for i in idx:
            rest[i] = 0
        buckets.setdefault(key, {})[tuple(rest)] = c
    return {k: p.space.from_dict(v) for k, v in sorted(buckets.items())}


def normalize(p: Poly) -> Poly:
    if p.is_zero:
        return p
    return p * p.space.field.inverse(p.leading_coefficient())


def scalar_ratio(p: Poly, q: Poly):
    """c com p = c·q, ou None se não forem proporcionais."""
    if q.is_zero:
        return p.space.field.one if p.is_zero else None
    if p.is_zero:
        return p.space.field.zero
    c = p.leading_coefficient() / q.leading_coefficient()
    return c if p == q * c else None


def evaluate(p: Poly, values: Mapping[str, ScalarLike]) -> Poly:
    return substitute(p, {name: p.space.constant(v) for name, v in values.items()})


def reduce_mod(p: Poly, prime: int) -> Poly:
    """Redução de um polinômio racional para F_prime."""
    if p.space.characteristic != 0:
        raise InvalidInput("reduce_mod espera um polinômio sobre Q")
    space = var_space(p.space.names, prime)
    out = {}
    for mono, c in p.element.items():
        out[mono] = space.field(Fraction(int(QQ.numer(c)), int(QQ.denom(c))))
    return space.from_dict(out)


# -------------------- Texto e JSON --------------------

def to_text(p: Poly) -> str:
    if p.is_zero:
        return "0"
    names = p.space.names
    parts = []
    for mono, c in p.terms():
        factors = "*".join(name if e == 1 else f"{name}^{e}" for name, e in zip(names, mono) if e)
        coeff = p.space.field.to_str(c)
        if not factors:
            parts.append(coeff)
        elif coeff == "1":
            parts.append(factors)
        elif coeff == "-1":
            parts.append(f"-{factors}")
        else:
            parts.append(f"{coeff}*{factors}")
    return " + ".join(parts)


def parse(text: str, space: VarSpace) -> Poly:
    """Lê a forma canônica ou qualquer expressão polinomial (parênteses, racionais, ^)."""
    local = {name: Symbol(name) for name in space.names}
    try:
        expr = sympify(text, locals=local, convert_xor=True)
    except (SympifyError, SyntaxError, TypeError) as e:
        raise InvalidInput(f"Polinômio ilegível: {text!r} ({e})")
    unknown = sorted(str(s) for s in expr.free_symbols if str(s) not in local)
    if unknown:
        raise RingMismatch(f"Variáveis desconhecidas {unknown} para {list(space.names)}")
    # racionais entram por Q e só depois são reduzidos mod p
    rational = var_space(space.names, 0)
    try:
        element = rational.ring.from_expr(expr)
    except (ValueError, TypeError, CoercionFailed) as e:
        raise InvalidInput(f"Expressão não polinomial: {text!r} ({e})")
    poly = Poly(rational, element)
    if space.characteristic:
        return reduce_mod(poly, space.characteristic)
    return Poly(space, element)


def to_json(p: Poly) -> PolyModel:
    return PolyModel(
        ring=list(p.space.names),
        terms=[TermModel(c=p.space.field.to_str(c), e=list(mono)) for mono, c in p.terms()],
    )


def from_json(model: PolyModel, characteristic: int) -> Poly:
    space = var_space(tuple(model.ring), characteristic)
    out: Dict[Monomial, object] = {}
    for term in model.terms:
        if len(term.e) != len(model.ring):
            raise InvalidInput(f"Termo com {len(term.e)} expoentes para {len(model.ring)} variáveis")
        if any(e < 0 for e in term.e):
            raise InvalidInput("Expoentes negativos não são permitidos")
        out[tuple(term.e)] = space.field(term.c)
    return space.from_dict(out)
