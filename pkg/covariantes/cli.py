# covariantes/cli.py
"""Linha de comando: `python -m covariantes <subcomando> ...`.

Códigos de saída: 0 sucesso/verdadeiro, 1 resultado negativo (não covariante,
não pertence), 2 erro de uso, 3 congruência do operador não satisfeita.
"""
import argparse
import json
import logging
import sys
from pathlib import Path
from typing import Callable, Dict, List, Literal, Optional, Tuple

from pydantic import BaseModel, ValidationError, field_validator
from sqlalchemy.exc import SQLAlchemyError
from sympy import isprime

from .brackets import enumerate_generators, parse_bracket_poly, straighten
from .config import get_settings
from .covariant import BinaryFormSpec, Covariant, derivative_operator, hilbert_conditions, is_boundary, is_covariant
from .database import get_db
from .errors import ConditionFailed, CovariantesError, InvalidInput
from .exactpoly import Poly, ScalarField, from_json, parse, substitute, to_text
from .fixtures import fixture_names, load_fixture
from .membership import in_algebra
from .models import record_run
from .schemas import CovariantModel, OperatorResultModel, PipelineReportModel
from .symring import separating_pipeline
from .transfer import pull_back

logger = logging.getLogger(__name__)

EXIT_OK, EXIT_NEGATIVE, EXIT_USAGE, EXIT_CONDITION = 0, 1, 2, 3

Result = Tuple[int, str]


class RunConfig(BaseModel):
    subcommand: str
    n: Optional[int] = None
    p: int = 0
    degree_bound: int = 2
    l: Optional[int] = None
    format: Literal["text", "json"] = "text"
    source: Optional[str] = None
    expr: Optional[str] = None
    gens: List[str] = []

    @field_validator("p")
    @classmethod
    def prime_or_zero(cls, v: int) -> int:
        if v < 0 or (v > 0 and not isprime(v)):
            raise ValueError(f"característica {v} não é 0 nem primo")
        return v

    @field_validator("degree_bound")
    @classmethod
    def non_negative(cls, v: int) -> int:
        if v < 0:
            raise ValueError("--max-degree deve ser ≥ 0")
        return v

    def spec(self) -> BinaryFormSpec:
        if self.n is None:
            raise InvalidInput(f"{self.subcommand} precisa de --n")
        return BinaryFormSpec(self.n, self.p)


# -------------------- Entradas --------------------

def _read_text(source: str) -> str:
    path = Path(source)
    if not path.is_file():
        raise InvalidInput(f"Arquivo não encontrado: {source}")
    return path.read_text(encoding="utf-8")


def _model_poly(model: CovariantModel) -> Tuple[BinaryFormSpec, Poly]:
    """Polinômio de um JSON de covariante, sem certificar (d, m, w)."""
    spec = BinaryFormSpec(model.n, model.p)
    if isinstance(model.poly, str):
        return spec, parse(model.poly, spec.space)
    return spec, substitute(from_json(model.poly, model.p), {}, target=spec.space)


def load_covariants(source: str) -> List[Covariant]:
    """Nome de fixture, JSON de covariante ou relatório do pipeline."""
    if source in fixture_names():
        return [load_fixture(source)]
    try:
        data = json.loads(_read_text(source))
    except json.JSONDecodeError as e:
        raise InvalidInput(f"{source}: JSON inválido ({e})")
    try:
        if isinstance(data, dict) and "covariants" in data:
            report = PipelineReportModel.model_validate(data)
            return [Covariant.from_json(c) for c in report.covariants]
        if isinstance(data, list):
            return [Covariant.from_json(CovariantModel.model_validate(c)) for c in data]
        return [Covariant.from_json(CovariantModel.model_validate(data))]
    except ValidationError as e:
        raise InvalidInput(f"{source}: formato inesperado ({e.error_count()} erros)")


def load_candidate(config: RunConfig) -> Tuple[BinaryFormSpec, Poly]:
    """Candidato cru para verify/hilbert (pode não ser isobárico)."""
    if config.expr:
        spec = config.spec()
        return spec, parse(config.expr, spec.space)
    if not config.source:
        raise InvalidInput(f"{config.subcommand} precisa de --in ou --expr")
    if config.source in fixture_names():
        cov = load_fixture(config.source)
        return cov.spec, cov.poly
    try:
        model = CovariantModel.model_validate_json(_read_text(config.source))
    except ValidationError as e:
        raise InvalidInput(f"{config.source}: formato inesperado ({e.error_count()} erros)")
    return _model_poly(model)


def _bracket_text(config: RunConfig) -> str:
    if config.expr:
        return config.expr
    if config.source:
        return _read_text(config.source).strip()
    raise InvalidInput(f"{config.subcommand} precisa de --in ou --expr")


def _dump(payload) -> str:
    if isinstance(payload, BaseModel):
        return payload.model_dump_json(indent=2)
    return json.dumps(payload, indent=2, ensure_ascii=False)


def _covariant_line(c: Covariant) -> str:
    label = c.name or f"c{c.order},{c.degree}"
    return f"{label} (d={c.degree}, m={c.order}, w={c.weight}): {to_text(c.poly)}"


# -------------------- Subcomandos --------------------

def cmd_enumerate(config: RunConfig) -> Result:
    if config.n is None:
        raise InvalidInput("enumerate precisa de --n")
    gens = enumerate_generators(config.n)
    if config.format == "json":
        return EXIT_OK, _dump([g.to_json().model_dump() for g in gens])
    return EXIT_OK, "\n".join(g.text() for g in gens)


def cmd_straighten(config: RunConfig) -> Result:
    if config.n is None:
        raise InvalidInput("straighten precisa de --n")
    b = parse_bracket_poly(_bracket_text(config), config.n, ScalarField(config.p))
    result = straighten(b)
    if config.format == "json":
        return EXIT_OK, _dump([{"coeff": result.field.to_str(c), "monomial": m.to_json().model_dump()} for m, c in result.terms])
    return EXIT_OK, result.text()


def cmd_transfer(config: RunConfig) -> Result:
    if config.n is None:
        raise InvalidInput("transfer precisa de --n")
    b = parse_bracket_poly(_bracket_text(config), config.n, ScalarField(config.p))
    cov = pull_back(b)
    if config.format == "json":
        return EXIT_OK, _dump(cov.to_json())
    return EXIT_OK, _covariant_line(cov)


def cmd_pipeline(config: RunConfig) -> Result:
    if config.n is None:
        raise InvalidInput("pipeline precisa de --n")
    report = separating_pipeline(config.n, config.p, config.degree_bound)
    if config.format == "json":
        return EXIT_OK, _dump(report.to_json())
    lines = [_covariant_line(c) for c in report.covariants]
    lines.extend(f"# {line}" for line in report.audit)
    return EXIT_OK, "\n".join(lines)


def cmd_operator(config: RunConfig) -> Result:
    if config.l is None:
        raise InvalidInput("operator precisa de --l")
    if config.source:
        covs = load_covariants(config.source)
        if len(covs) != 1:
            raise InvalidInput("operator espera um único covariante")
        q = covs[0]
    else:
        q = Covariant.form(config.spec())
    boundary = is_boundary(q, config.l)
    result = derivative_operator(q, config.l)
    if config.format == "json":
        return EXIT_OK, _dump(OperatorResultModel(l=config.l, boundary=boundary, covariant=result.to_json()))
    if boundary:
        return EXIT_OK, f"{to_text(result.poly)}  # fronteira l = m₀/2"
    return EXIT_OK, to_text(result.poly)


def cmd_verify(config: RunConfig) -> Result:
    spec, poly = load_candidate(config)
    verdict = is_covariant(poly, spec)
    code = EXIT_OK if verdict.is_covariant else EXIT_NEGATIVE
    if config.format == "json":
        return code, _dump(verdict.to_json())
    if verdict.is_covariant:
        return code, "true"
    lines = [f"false ({verdict.family}): {verdict.reason}"]
    at_one = verdict.residual_at(1)
    if at_one is not None:
        lines.append(f"residual(t=1) = {to_text(at_one)}")
    return code, "\n".join(lines)


def cmd_member(config: RunConfig) -> Result:
    if not config.source:
        raise InvalidInput("member precisa de --in com o alvo")
    targets = load_covariants(config.source)
    if len(targets) != 1:
        raise InvalidInput("member espera um único alvo")
    gens: List[Covariant] = []
    for source in config.gens:
        gens.extend(load_covariants(source))
    result = in_algebra(targets[0], gens)
    code = EXIT_OK if result.member else EXIT_NEGATIVE
    if config.format == "json":
        return code, _dump(result.to_json())
    lines = [result.describe()]
    lines.extend(f"  z-slice: {to_text(p)}" for p in result.x_free_parts)
    return code, "\n".join(lines)


def cmd_hilbert(config: RunConfig) -> Result:
    spec, poly = load_candidate(config)
    report = hilbert_conditions(poly, spec)
    if config.format == "json":
        return EXIT_OK, _dump(report.to_json())
    return EXIT_OK, (
        f"isobaric={report.isobaric_ok} D={report.D_ok} Delta={report.Delta_ok} "
        f"applicable={report.applicable} all_ok={report.all_ok}"
    )


def cmd_fixtures(config: RunConfig) -> Result:
    names = fixture_names()
    if config.format == "json":
        return EXIT_OK, _dump(names)
    return EXIT_OK, "\n".join(names)


COMMANDS: Dict[str, Callable[[RunConfig], Result]] = {
    "enumerate": cmd_enumerate,
    "straighten": cmd_straighten,
    "transfer": cmd_transfer,
    "pipeline": cmd_pipeline,
    "operator": cmd_operator,
    "verify": cmd_verify,
    "member": cmd_member,
    "hilbert": cmd_hilbert,
    "fixtures": cmd_fixtures,
}


# -------------------- Parser e execução --------------------

def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="covariantes", description="Covariantes de formas binárias, exatos.")
    sub = parser.add_subparsers(dest="subcommand", required=True)
    default_format = get_settings().default_format
    for name in COMMANDS:
        p = sub.add_parser(name)
        p.add_argument("--n", type=int, help="grau da forma binária (número de pontos)")
        p.add_argument("--char", dest="p", type=int, default=0, help="característica: 0 ou um primo")
        p.add_argument("--format", choices=["text", "json"], default=default_format)
        if name == "pipeline":
            p.add_argument("--max-degree", dest="degree_bound", type=int, default=2)
        if name == "operator":
            p.add_argument("--l", type=int, required=True)
        if name in ("straighten", "transfer", "operator", "verify", "member", "hilbert"):
            p.add_argument("--in", dest="source", help="arquivo de entrada ou nome de fixture")
        if name in ("straighten", "transfer", "verify", "hilbert"):
            p.add_argument("--expr", help="expressão direto na linha de comando")
        if name == "member":
            p.add_argument("--gens", action="append", default=[], help="geradores (repetível)")
    return parser


def _record(config: RunConfig, code: int, output: str) -> None:
    db_gen = get_db()
    try:
        db = next(db_gen)
        record_run(db, config.subcommand, config.model_dump(exclude={"subcommand"}), code, output)
    except SQLAlchemyError as e:
        logger.warning(f"⚠️ Não foi possível gravar a execução: {e}")
    finally:
        db_gen.close()


def parse_config(argv: Optional[List[str]] = None) -> RunConfig:
    args = build_parser().parse_args(argv)
    try:
        return RunConfig(**{k: v for k, v in vars(args).items() if v is not None})
    except ValidationError as e:
        raise InvalidInput("; ".join(err["msg"] for err in e.errors()))


def execute(config: RunConfig) -> Result:
    try:
        return COMMANDS[config.subcommand](config)
    except ConditionFailed as e:
        return EXIT_CONDITION, e.detail
    except CovariantesError as e:
        return EXIT_USAGE, e.detail


def main(argv: Optional[List[str]] = None) -> int:
    settings = get_settings()
    logging.basicConfig(level=settings.log_level, stream=sys.stderr, format="%(levelname)s %(name)s: %(message)s")
    try:
        config = parse_config(argv)
    except InvalidInput as e:
        print(e.detail, file=sys.stderr)
        return EXIT_USAGE
    code, output = execute(config)
    stream = sys.stdout if code in (EXIT_OK, EXIT_NEGATIVE) else sys.stderr
    if output:
        print(output, file=stream)
    if settings.record_runs:
        _record(config, code, output)
    return code
