import random

import pytest

from covariantes.brackets import enumerate_generators
from covariantes.config import get_settings
from covariantes.covariant import BinaryFormSpec
from covariantes.exactpoly import Poly, VarSpace


@pytest.fixture(autouse=True)
def isolated_settings(monkeypatch):
    # nenhum teste grava histórico, a menos que peça explicitamente
    monkeypatch.setenv("COVARIANTES_RECORD_RUNS", "false")
    get_settings.cache_clear()
    yield
    get_settings.cache_clear()


@pytest.fixture
def rng():
    return random.Random(20240921)


@pytest.fixture
def quartic():
    return BinaryFormSpec(4, 0)


@pytest.fixture
def quartic_p3():
    return BinaryFormSpec(4, 3)


@pytest.fixture(scope="session")
def quartic_generators():
    return enumerate_generators(4)


def random_poly(space: VarSpace, rng: random.Random, terms: int = 4, max_exp: int = 2) -> Poly:
    out = space.zero
    k = len(space.names)
    for _ in range(terms):
        exps = [rng.randint(0, max_exp) for _ in range(k)]
        out = out + space.monomial(exps, space.field(rng.randint(-6, 6)))
    return out


@pytest.fixture
def make_poly(rng):
    def _make(space: VarSpace, terms: int = 4, max_exp: int = 2) -> Poly:
        return random_poly(space, rng, terms, max_exp)

    return _make
