# covariantes/covariant.py
"""Covariantes na forma de coeficientes: C = Σ Cᵢ xⁱ z^{m−i} em a₀..a_n.

Verificação exata: toro via contabilidade de pesos, e as duas famílias
unipotentes com um parâmetro simbólico t.
"""
import logging
from dataclasses import dataclass, field
from functools import cached_property
from typing import Dict, List, Literal, Optional, Tuple

from .errors import (
    ConditionFailed,
    FixtureMismatch,
    Inhomogeneous,
    InvalidInput,
    NotDivisible,
    NotIsobaric,
    OperatorInternalError,
)
from .exactpoly import (
    Poly,
    ScalarField,
    VarSpace,
    collect,
    divide_out,
    evaluate,
    from_json as poly_from_json,
    grade,
    normalize,
    parse,
    partial,
    substitute,
    to_json as poly_to_json,
    var_space,
)
from .schemas import CovariantModel, HilbertReportModel, VerdictModel

logger = logging.getLogger(__name__)

Kind = Literal["upper", "lower"]


# -------------------- Forma binária --------------------

@dataclass(frozen=True)
class BinaryFormSpec:
    n: int
    p: int = 0

    def __post_init__(self):
        if self.n < 1:
            raise InvalidInput(f"Grau da forma deve ser ≥ 1 (recebido {self.n})")
        ScalarField(self.p)

    @property
    def field(self) -> ScalarField:
        return self.space.field

    @cached_property
    def space(self) -> VarSpace:
        names = tuple(f"a{i}" for i in range(self.n + 1)) + ("x", "z", "t")
        return var_space(names, self.p)

    @property
    def coefficient_names(self) -> List[str]:
        return [f"a{i}" for i in range(self.n + 1)]

    def a(self, i: int) -> Poly:
        return self.space.var(f"a{i}")

    @property
    def x(self) -> Poly:
        return self.space.var("x")

    @property
    def z(self) -> Poly:
        return self.space.var("z")

    @property
    def t(self) -> Poly:
        return self.space.var("t")

    def form(self) -> Poly:
        """f = Σ aᵢ xⁱ z^{n−i}."""
        f = self.space.zero
        for i in range(self.n + 1):
            f = f + self.a(i) * self.x ** i * self.z ** (self.n - i)
        return f

    def weights(self) -> Dict[str, int]:
        return {f"a{i}": i for i in range(self.n + 1)}


# -------------------- Grau, ordem, peso --------------------

def _check_no_t(poly: Poly) -> None:
    if "t" in poly.space and poly.degree_in(["t"]) - {0}:
        raise InvalidInput("Candidato não pode depender do parâmetro t")


def degree_of(poly: Poly, spec: BinaryFormSpec) -> int:
    degrees = poly.degree_in(spec.coefficient_names)
    if len(degrees) > 1:
        raise Inhomogeneous(f"Candidato não homogêneo nos aᵢ: graus {sorted(degrees)}")
    return degrees.pop() if degrees else 0


def order_of(poly: Poly, spec: BinaryFormSpec) -> int:
    orders = poly.degree_in(["x", "z"])
    if len(orders) > 1:
        raise Inhomogeneous(f"Candidato não homogêneo em x, z: ordens {sorted(orders)}")
    return orders.pop() if orders else 0


def slices(poly: Poly, spec: BinaryFormSpec) -> Dict[int, Poly]:
    """i -> Cᵢ, o coeficiente de xⁱ z^{m−i}."""
    return {i: c for (i, _j), c in collect(poly, ["x", "z"]).items()}


def weight_of(poly: Poly, spec: BinaryFormSpec) -> int:
    """Peso w com cada Cᵢ isobárico de peso w + i."""
    w: Optional[int] = None
    for i, c in slices(poly, spec).items():
        parts = grade(c, spec.weights())
        if len(parts) != 1:
            raise NotIsobaric(f"Fatia x^{i} não é isobárica: pesos {sorted(parts)}")
        wi = next(iter(parts)) - i
        if w is None:
            w = wi
        elif wi != w:
            raise NotIsobaric(f"Fatia x^{i} tem peso {wi + i}, esperado {w + i}")
    return 0 if w is None else w


# -------------------- Covariante --------------------

@dataclass(frozen=True)
class Covariant:
    spec: BinaryFormSpec
    poly: Poly
    degree: int
    order: int
    weight: int
    name: Optional[str] = field(default=None, compare=False)

    @classmethod
    def certify(cls, poly: Poly, spec: BinaryFormSpec, name: Optional[str] = None) -> "Covariant":
        if poly.space != spec.space:
            poly = substitute(poly, {}, target=spec.space)
        _check_no_t(poly)
        if poly.is_zero:
            raise InvalidInput("Polinômio nulo não tem (d, m, w) definidos; use Covariant.zero")
        return cls(spec, poly, degree_of(poly, spec), order_of(poly, spec), weight_of(poly, spec), name)

    @classmethod
    def zero(cls, spec: BinaryFormSpec, degree: int, order: int, weight: int) -> "Covariant":
        return cls(spec, spec.space.zero, degree, order, weight)

    @classmethod
    def form(cls, spec: BinaryFormSpec) -> "Covariant":
        return cls(spec, spec.form(), 1, spec.n, 0, "f")

    @property
    def grade(self) -> Tuple[int, int]:
        return (self.degree, self.order)

    @property
    def is_zero(self) -> bool:
        return self.poly.is_zero

    def __mul__(self, other: "Covariant") -> "Covariant":
        return Covariant(
            self.spec,
            self.poly * other.poly,
            self.degree + other.degree,
            self.order + other.order,
            self.weight + other.weight,
        )

    def __pow__(self, k: int) -> "Covariant":
        return Covariant(self.spec, self.poly ** k, self.degree * k, self.order * k, self.weight * k)

    def scaled(self, c) -> "Covariant":
        return Covariant(self.spec, self.poly * c, self.degree, self.order, self.weight, self.name)

    def normalized(self) -> "Covariant":
        return Covariant(self.spec, normalize(self.poly), self.degree, self.order, self.weight, self.name)

    def slices(self) -> Dict[int, Poly]:
        return slices(self.poly, self.spec)

    def to_json(self) -> CovariantModel:
        return CovariantModel(
            n=self.spec.n, p=self.spec.p, d=self.degree, m=self.order, w=self.weight,
            poly=poly_to_json(self.poly), name=self.name,
        )

    @classmethod
    def from_json(cls, model: CovariantModel) -> "Covariant":
        spec = BinaryFormSpec(model.n, model.p)
        if isinstance(model.poly, str):
            poly = parse(model.poly, spec.space)
        else:
            poly = substitute(poly_from_json(model.poly, model.p), {}, target=spec.space)
        if poly.is_zero:
            return cls(spec, poly, model.d, model.m, model.w, model.name)
        cov = cls.certify(poly, spec, model.name)
        if (cov.degree, cov.order, cov.weight) != (model.d, model.m, model.w):
            raise FixtureMismatch(
                f"{model.name or 'covariante'}: declarado (d,m,w)=({model.d},{model.m},{model.w}), "
                f"calculado ({cov.degree},{cov.order},{cov.weight})"
            )
        return cov


# -------------------- Ação unipotente --------------------

def transformed_coefficients(spec: BinaryFormSpec, kind: Kind) -> List[Poly]:
    """a′ᵢ(a, t): coeficientes de f(x + tz, z) (upper) ou f(x, tx + z) (lower)."""
    x, z, t = spec.x, spec.z, spec.t
    if kind == "upper":
        moved = substitute(spec.form(), {"x": x + t * z})
    elif kind == "lower":
        moved = substitute(spec.form(), {"z": t * x + z})
    else:
        raise InvalidInput(f"Família desconhecida: {kind}")
    coeffs = collect(moved, ["x", "z"])
    return [coeffs.get((i, spec.n - i), spec.space.zero) for i in range(spec.n + 1)]


def act(poly: Poly, spec: BinaryFormSpec, kind: Kind) -> Poly:
    """C(a′(t), X′(t)) com X′ a imagem inversa das variáveis."""
    bindings = {f"a{i}": c for i, c in enumerate(transformed_coefficients(spec, kind))}
    if kind == "upper":
        bindings["x"] = spec.x - spec.t * spec.z
    else:
        bindings["z"] = spec.z - spec.t * spec.x
    return substitute(poly, bindings)


@dataclass(frozen=True)
class Verdict:
    is_covariant: bool
    torus_ok: bool
    family: Optional[str] = None
    reason: Optional[str] = None
    residual: Optional[Poly] = None

    def residual_at(self, t_value: int = 1) -> Optional[Poly]:
        if self.residual is None:
            return None
        return evaluate(self.residual, {"t": t_value})

    def __bool__(self) -> bool:
        return self.is_covariant

    def to_json(self) -> VerdictModel:
        at_one = self.residual_at(1)
        return VerdictModel(
            is_covariant=self.is_covariant,
            torus_ok=self.torus_ok,
            family=self.family,
            reason=self.reason,
            residual=poly_to_json(self.residual) if self.residual is not None else None,
            residual_at_one=poly_to_json(at_one) if at_one is not None else None,
        )


def torus_check(poly: Poly, spec: BinaryFormSpec) -> Tuple[bool, Optional[str]]:
    """Condições do toro: fatias isobáricas e n·d − 2w = m."""
    if poly.is_zero:
        return True, None
    d, m = degree_of(poly, spec), order_of(poly, spec)
    try:
        w = weight_of(poly, spec)
    except NotIsobaric as e:
        return False, e.detail
    if spec.n * d - 2 * w != m:
        return False, f"n·d − 2w = {spec.n * d - 2 * w} ≠ m = {m}"
    return True, None


def is_covariant(candidate, spec: Optional[BinaryFormSpec] = None) -> Verdict:
    if isinstance(candidate, Covariant):
        spec, poly = candidate.spec, candidate.poly
    else:
        poly = candidate
        if spec is None:
            raise InvalidInput("is_covariant precisa do BinaryFormSpec para um Poly cru")
        if poly.space != spec.space:
            poly = substitute(poly, {}, target=spec.space)
    _check_no_t(poly)
    torus_ok, reason = torus_check(poly, spec)
    if not torus_ok:
        logger.info(f"❌ Falhou no toro: {reason}")
        return Verdict(False, False, "torus", reason)
    for kind in ("upper", "lower"):
        residual = act(poly, spec, kind) - poly
        if not residual.is_zero:
            logger.info(f"❌ Resíduo não nulo na família {kind}")
            return Verdict(False, True, kind, "resíduo unipotente não nulo", residual)
    return Verdict(True, True)


# -------------------- Operadores de Hilbert --------------------

def hilbert_delta(poly: Poly, spec: BinaryFormSpec) -> Poly:
    """Δ = Σ i·aᵢ ∂/∂a_{i−1}."""
    out = spec.space.zero
    for i in range(1, spec.n + 1):
        out = out + spec.a(i) * partial(poly, f"a{i - 1}") * i
    return out


def hilbert_D(poly: Poly, spec: BinaryFormSpec) -> Poly:
    """D = Σ (n−i)·aᵢ ∂/∂a_{i+1}."""
    out = spec.space.zero
    for i in range(spec.n):
        out = out + spec.a(i) * partial(poly, f"a{i + 1}") * (spec.n - i)
    return out


@dataclass(frozen=True)
class HilbertReport:
    isobaric_ok: bool
    D_ok: bool
    Delta_ok: bool
    applicable: bool

    @property
    def all_ok(self) -> bool:
        return self.isobaric_ok and self.D_ok and self.Delta_ok

    def to_json(self) -> HilbertReportModel:
        return HilbertReportModel(
            isobaric_ok=self.isobaric_ok, D_ok=self.D_ok, Delta_ok=self.Delta_ok,
            applicable=self.applicable, all_ok=self.all_ok,
        )


def hilbert_conditions(candidate, spec: Optional[BinaryFormSpec] = None) -> HilbertReport:
    """As três condições de Hilbert; `applicable` só vale para p = 0 ou p > nd + m."""
    if isinstance(candidate, Covariant):
        spec, poly = candidate.spec, candidate.poly
    else:
        poly = candidate
        if spec is None:
            raise InvalidInput("hilbert_conditions precisa do BinaryFormSpec para um Poly cru")
        if poly.space != spec.space:
            poly = substitute(poly, {}, target=spec.space)
    d, m = degree_of(poly, spec), order_of(poly, spec)
    isobaric_ok, _ = torus_check(poly, spec)
    D_ok = hilbert_D(poly, spec) == spec.x * partial(poly, "z")
    Delta_ok = hilbert_delta(poly, spec) == spec.z * partial(poly, "x")
    applicable = spec.p == 0 or spec.p > spec.n * d + m
    return HilbertReport(isobaric_ok, D_ok, Delta_ok, applicable)


# -------------------- Operador diferencial em característica p --------------------

def is_boundary(q: Covariant, l: int) -> bool:
    return 2 * l == q.order


def derivative_operator(q: Covariant, l: int) -> Covariant:
    """C = (1/z^l)·∂^l Q/∂x^l, válido quando p | (m₀ − l + 1)."""
    p = q.spec.p
    if p == 0:
        raise InvalidInput("O operador só faz sentido em característica p > 0")
    if l < 1:
        raise InvalidInput(f"l deve ser ≥ 1 (recebido {l})")
    if l >= p:
        raise InvalidInput(f"l = {l} precisa ser menor que p = {p}")
    if 2 * l > q.order:
        raise InvalidInput(f"l = {l} excede m₀/2 = {q.order}/2")
    if (q.order - l + 1) % p:
        raise ConditionFailed(
            f"p = {p} não divide m₀ − l + 1 = {q.order - l + 1}", order=q.order, l=l
        )
    if is_boundary(q, l):
        logger.warning(f"⚠️ Caso de fronteira l = m₀/2 = {l}")
    derived = partial(q.poly, "x", l)
    try:
        c = divide_out(derived, "z", l)
    except NotDivisible as e:
        raise OperatorInternalError(f"Divisão por z^{l} falhou com a congruência satisfeita: {e.detail}")
    logger.debug(f"Operador l={l} em grau {q.grade} -> ordem {q.order - 2 * l}")
    return Covariant(q.spec, c, q.degree, q.order - 2 * l, q.weight + l)


def admissible_steps(target_order: int, p: int, m_max: int) -> List[Tuple[int, int]]:
    """Pares (m, l) com m − 2l = alvo, 1 ≤ l ≤ m/2, l < p e p | (m − l + 1)."""
    steps = []
    for m in range(target_order, m_max + 1):
        if (m - target_order) % 2:
            continue
        l = (m - target_order) // 2
        if 1 <= l < p and 2 * l <= m and (m - l + 1) % p == 0:
            steps.append((m, l))
    return steps
