from pydantic_settings import BaseSettings, SettingsConfigDict


class Settings(BaseSettings):
    model_config = SettingsConfigDict(env_file=".env", env_ignore_empty=True)

    BEAM_WIDTH: int = 4
    NBEST: int = 3
    MATCH_NODE_FACTOR: float = 10.0

    SUB_LABEL_PREFIX: str = "SUB_"
    GEN_SIZE_FACTOR: int = 15

    LOG_LEVEL: str = "WARNING"


settings = Settings()
