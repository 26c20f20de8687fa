from pathlib import Path
from typing import Literal

from pydantic import BaseModel, Field
from pydantic_settings import BaseSettings, PydanticBaseSettingsSource, SettingsConfigDict, YamlConfigSettingsSource


class EngineConfig(BaseModel):
    max_crossings: int = Field(default=24, ge=0, le=24)
    threads: int | None = Field(default=None, ge=1)
    executor: Literal["process", "thread"] = "process"
    verify_boundaries: bool = True


class LoggingConfig(BaseModel):
    level: str = "WARNING"


class AppConfig(BaseSettings):
    model_config = SettingsConfigDict(env_prefix="TORUS_SKEIN_", env_nested_delimiter="__")

    engine: EngineConfig = EngineConfig()
    logging: LoggingConfig = LoggingConfig()
    yaml_file: str = "config.yaml"

    @classmethod
    def settings_customise_sources(
        cls,
        settings_cls: type[BaseSettings],
        init_settings: PydanticBaseSettingsSource,
        env_settings: PydanticBaseSettingsSource,
        dotenv_settings: PydanticBaseSettingsSource,
        file_secret_settings: PydanticBaseSettingsSource,
    ) -> tuple[PydanticBaseSettingsSource, ...]:
        init_kwargs = init_settings.init_kwargs  # type: ignore[attr-defined]
        yaml_file = Path(init_kwargs.get("yaml_file", "config.yaml"))
        return (
            init_settings,
            YamlConfigSettingsSource(settings_cls, yaml_file=yaml_file),
            env_settings,
        )
