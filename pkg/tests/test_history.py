import json

import pytest

from covariantes.cli import main
from covariantes.config import get_settings
from covariantes.database import get_db, get_engine
from covariantes.models import RunRecord, record_run


@pytest.fixture
def database_url(tmp_path, monkeypatch):
    url = f"sqlite:///{tmp_path / 'runs.db'}"
    monkeypatch.setenv("COVARIANTES_DATABASE_URL", url)
    get_settings.cache_clear()
    get_engine.cache_clear()
    yield url
    get_engine.cache_clear()


def _records(url):
    db_gen = get_db(url)
    db = next(db_gen)
    try:
        return db.query(RunRecord).order_by(RunRecord.id).all()
    finally:
        db_gen.close()


def test_record_run_stores_hash_only(database_url):
    db_gen = get_db(database_url)
    db = next(db_gen)
    try:
        record = record_run(db, "enumerate", {"n": 4}, 0, "[12][34]")
    finally:
        db_gen.close()
    assert record.id is not None
    stored = _records(database_url)
    assert len(stored) == 1
    assert stored[0].subcommand == "enumerate"
    assert json.loads(stored[0].arguments) == {"n": 4}
    assert len(stored[0].output_sha256) == 64
    assert stored[0].output_size == len("[12][34]")


def test_cli_records_when_enabled(database_url, monkeypatch, capsys):
    monkeypatch.setenv("COVARIANTES_RECORD_RUNS", "true")
    get_settings.cache_clear()
    assert main(["enumerate", "--n", "2"]) == 0
    assert main(["operator", "--n", "4", "--char", "3", "--l", "1"]) == 3
    capsys.readouterr()
    stored = _records(database_url)
    assert [(r.subcommand, r.exit_code) for r in stored] == [("enumerate", 0), ("operator", 3)]


def test_cli_does_not_record_by_default(database_url, capsys):
    assert main(["fixtures"]) == 0
    capsys.readouterr()
    assert _records(database_url) == []
