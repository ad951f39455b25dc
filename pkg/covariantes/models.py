# covariantes/models.py
import hashlib
import json
from datetime import datetime
from typing import Any, Dict

from sqlalchemy import Column, DateTime, Integer, String, Text
from sqlalchemy.orm import Session

from .database import Base


class RunRecord(Base):
    __tablename__ = "runs"

    id = Column(Integer, primary_key=True, index=True)
    subcommand = Column(String, nullable=False, index=True)  # enumerate, pipeline, operator...
    arguments = Column(Text)  # JSON dos argumentos
    exit_code = Column(Integer, nullable=False)
    output_sha256 = Column(String(64))
    output_size = Column(Integer, default=0)
    created_at = Column(DateTime, default=datetime.utcnow)


def record_run(db: Session, subcommand: str, arguments: Dict[str, Any], exit_code: int, output: str) -> RunRecord:
    """Grava uma execução do CLI; a saída em si não é guardada, só o hash."""
    record = RunRecord(
        subcommand=subcommand,
        arguments=json.dumps(arguments, sort_keys=True, default=str),
        exit_code=exit_code,
        output_sha256=hashlib.sha256(output.encode("utf-8")).hexdigest(),
        output_size=len(output),
    )
    db.add(record)
    db.commit()
    db.refresh(record)
    return record
