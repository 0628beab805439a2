from pathlib import Path

from pydantic_settings import BaseSettings, PydanticBaseSettingsSource, SettingsConfigDict


class Settings(BaseSettings):
    model_config = SettingsConfigDict(env_file=".env", env_file_encoding="utf-8", extra="ignore")

    ORACLE_BOUND: int = 10_000
    H_DEPTH_SLACK: int = 64
    LEVEL_SET_MAX_STEPS: int = 64
    DEFAULT_PRECISION: int = 12
    CDF_DEPTH: int = 24
    VERIFY_MAX: int = 3000
    API_MAX_LIMIT: int = 200_000
    REPORTS_DIR: Path = Path("reports")
    LOG_LEVEL: str = "INFO"

    @classmethod
    def settings_customise_sources(
        cls,
        settings_cls: type[BaseSettings],
        init_settings: PydanticBaseSettingsSource,
        env_settings: PydanticBaseSettingsSource,
        dotenv_settings: PydanticBaseSettingsSource,
        file_secret_settings: PydanticBaseSettingsSource,
    ) -> tuple[PydanticBaseSettingsSource, ...]:
        # constructor arguments and .env only; the process environment is never read
        return init_settings, dotenv_settings
