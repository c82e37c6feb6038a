from pathlib import Path

from pydantic_settings import BaseSettings

ROOT_DIR = Path(__file__).resolve().parents[2]


class Settings(BaseSettings):
    # Logging
    LOG_LEVEL: str = "WARNING"
    LOG_FORMAT: str = "%(asctime)s - %(name)s - %(levelname)s - %(message)s"

    # Fixtures
    FIXTURES_DIR: Path = ROOT_DIR / "fixtures"

    # Brute-force H^1 guard
    ORACLE_MAX_GROUP_ORDER: int = 12
    ORACLE_MAX_MODULE_RANK: int = 6

    # Reports
    JSON_INDENT: int = 2

    # Environment
    ENVIRONMENT: str = "development"
    DEBUG: bool = False

    class Config:
        env_file = ".env"
        case_sensitive = True

settings = Settings()
