# covariantes/database.py
from functools import lru_cache

from sqlalchemy import create_engine
from sqlalchemy.engine import Engine
from sqlalchemy.orm import declarative_base, sessionmaker

from .config import get_settings

Base = declarative_base()


@lru_cache()
def get_engine(url: str = "") -> Engine:
    """Engine do histórico. Sem url explícita usa COVARIANTES_DATABASE_URL."""
    url = url or get_settings().database_url
    # Para SQLite local, liberar uso fora da thread criadora
    if url.startswith("sqlite"):
        return create_engine(url, connect_args={"check_same_thread": False})
    # Fix para provedores que ainda entregam postgres://
    if url.startswith("postgres://"):
        url = url.replace("postgres://", "postgresql+psycopg2://", 1)
    return create_engine(url)


def session_factory(engine: Engine) -> sessionmaker:
    return sessionmaker(autocommit=False, autoflush=False, bind=engine)


def get_db(url: str = ""):
    engine = get_engine(url)
    Base.metadata.create_all(bind=engine)
    db = session_factory(engine)()
    try:
        yield db
    finally:
        db.close()
