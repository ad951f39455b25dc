# covariantes/schemas.py
"""Esquemas JSON de entrada e saída (polinômios, colchetes, covariantes, certificados)."""
from typing import Dict, List, Literal, Optional, Union

from pydantic import BaseModel, Field


# -------------------- exactpoly --------------------

class TermModel(BaseModel):
    c: str
    e: List[int]


class PolyModel(BaseModel):
    ring: List[str]
    terms: List[TermModel] = Field(default_factory=list)


# -------------------- brackets --------------------

class EdgeModel(BaseModel):
    i: int
    j: Union[int, Literal["u"]]
    m: int = 1


class BracketMonomialModel(BaseModel):
    n: int
    sign: int = 1
    edges: List[EdgeModel]


# -------------------- covariant --------------------

class CovariantModel(BaseModel):
    n: int
    p: int
    d: int
    m: int
    w: int
    # Fixtures escrevem o polinômio como texto; a saída usa sempre o JSON
    poly: Union[PolyModel, str]
    name: Optional[str] = None


class FixtureModel(CovariantModel):
    # nomes usados em `poly` que apontam para outras fixtures
    refs: Dict[str, str] = Field(default_factory=dict)


class VerdictModel(BaseModel):
    is_covariant: bool
    torus_ok: bool
    family: Optional[str] = None  # upper | lower | torus
    reason: Optional[str] = None
    residual: Optional[PolyModel] = None
    residual_at_one: Optional[PolyModel] = None


class HilbertReportModel(BaseModel):
    isobaric_ok: bool
    D_ok: bool
    Delta_ok: bool
    applicable: bool
    all_ok: bool


class OperatorResultModel(BaseModel):
    l: int
    boundary: bool
    covariant: CovariantModel


# -------------------- membership --------------------

class PowerModel(BaseModel):
    gen: int
    exponent: int


class CertificateTermModel(BaseModel):
    coeff: str
    powers: List[PowerModel]


class CertificateModel(BaseModel):
    target: CovariantModel
    expression: List[CertificateTermModel]


class NonMembershipModel(BaseModel):
    no: bool = True
    slice_dim: int
    rank: int
    recheck_rank: int
    x_free_parts: List[str] = Field(default_factory=list)


# -------------------- symring --------------------

class GradeDimensionModel(BaseModel):
    degree: int
    order: int
    dimension: int


class PipelineReportModel(BaseModel):
    n: int
    p: int
    degree_bound: int
    generators: List[str]
    fixed_dimensions: List[GradeDimensionModel]
    upstairs_generators: int
    vanishing_images: int = 0
    covariants: List[CovariantModel]
    audit: List[str]
