import os
from functools import lru_cache

from dotenv import load_dotenv
from pydantic_settings import BaseSettings, SettingsConfigDict

load_dotenv()

VERSION = "0.1.0"


class Settings(BaseSettings):
    LOG_LEVEL: str = "INFO"
    JOBS: int = os.cpu_count() or 1
    OUTPUT_DIR: str = "results"

    # collocation solver (growth rates)
    BVP_TOL: float = 1e-7
    BVP_BC_TOL: float = 1e-10
    BVP_MAX_NODES: int = 20000
    NEWTON_MAX_ATTEMPTS: int = 3

    # shooting solver (basic state)
    SHOOTING_RTOL: float = 1e-12
    SHOOTING_ATOL: float = 1e-14
    SHOOTING_MAX_ITER: int = 50
    SHOOTING_RESIDUAL_TOL: float = 1e-10
    SHOOTING_ACCEPT_TOL: float = 1e-8

    NEUTRAL_TOL: float = 1e-8
    CLASSIFY_TOL: float = 1e-6

    model_config = SettingsConfigDict(
        env_prefix="BIOSTAB_",
        env_file=".env",
        env_file_encoding="utf-8",
        extra="ignore",
    )


@lru_cache(maxsize=1)
def get_settings() -> Settings:
    return Settings()
