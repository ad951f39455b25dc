# covariantes/fixtures.py
"""Covariantes de referência em covariantes/data/*.json.

Uma fixture pode citar outras por nome (`refs`): o texto é lido num anel com
esses nomes extras e depois cada nome é trocado pelo polinômio carregado.
"""
import logging
from functools import lru_cache
from importlib import resources
from typing import List

from pydantic import ValidationError

from .covariant import BinaryFormSpec, Covariant
from .errors import FixtureMismatch
from .exactpoly import parse, substitute
from .schemas import CovariantModel, FixtureModel

logger = logging.getLogger(__name__)

QUARTIC_CHAR0 = ["quartic_p0_c02", "quartic_p0_c03", "quartic_p0_c41", "quartic_p0_c42", "quartic_p0_c63"]
QUARTIC_CHAR3 = [
    "quartic_p3_c01", "quartic_p3_c06", "quartic_p3_c41", "quartic_p3_c44",
    "quartic_p3_c63", "quartic_p3_c84", "quartic_p3_c86",
]


def _data_dir():
    return resources.files("covariantes") / "data"


def fixture_names() -> List[str]:
    return sorted(item.name[:-5] for item in _data_dir().iterdir() if item.name.endswith(".json"))


@lru_cache(maxsize=None)
def load_fixture(name: str) -> Covariant:
    path = _data_dir() / f"{name}.json"
    if not path.is_file():
        raise FixtureMismatch(f"Fixture inexistente: {name}")
    try:
        model = FixtureModel.model_validate_json(path.read_text(encoding="utf-8"))
    except ValidationError as e:
        raise FixtureMismatch(f"Fixture {name} inválida: {e}")
    if not model.refs:
        return Covariant.from_json(CovariantModel(**model.model_dump(exclude={"refs"})))

    spec = BinaryFormSpec(model.n, model.p)
    wide = spec.space.extended(model.refs)
    expression = parse(model.poly, wide)
    bindings = {}
    for symbol, ref in model.refs.items():
        sub = load_fixture(ref)
        if sub.spec != spec:
            raise FixtureMismatch(f"{name}: referência {ref} é de outra forma binária")
        bindings[symbol] = substitute(sub.poly, {}, target=wide)
    poly = substitute(expression, bindings)
    poly = substitute(poly, {}, target=spec.space)
    cov = Covariant.certify(poly, spec, model.name)
    if (cov.degree, cov.order, cov.weight) != (model.d, model.m, model.w):
        raise FixtureMismatch(
            f"{name}: declarado (d,m,w)=({model.d},{model.m},{model.w}), "
            f"calculado ({cov.degree},{cov.order},{cov.weight})"
        )
    logger.debug(f"Fixture {name} carregada ({cov.grade})")
    return cov
