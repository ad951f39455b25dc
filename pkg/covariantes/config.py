# covariantes/config.py
from functools import lru_cache
from typing import Literal

from dotenv import load_dotenv
from pydantic_settings import BaseSettings, SettingsConfigDict

load_dotenv()


class Settings(BaseSettings):
    model_config = SettingsConfigDict(
        env_prefix="COVARIANTES_",
        env_file=".env",
        extra="ignore",
    )

    app_env: Literal["development", "production"] = "development"
    log_level: str = "WARNING"
    default_format: Literal["text", "json"] = "text"

    # Histórico de execuções do CLI (tabela runs)
    record_runs: bool = False
    database_url: str = "sqlite:///./covariantes.db"

    # Somas de órbita custam n! termos
    max_orbit_points: int = 6


@lru_cache()
def get_settings() -> Settings:
    return Settings()
