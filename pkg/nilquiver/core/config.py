from pydantic_settings import BaseSettings
from typing import Literal
import os
from dotenv import load_dotenv

load_dotenv()

class Settings(BaseSettings):
    # アプリケーション設定
    APP_NAME: str = "nilquiver"
    DEBUG: bool = os.getenv("DEBUG", "False").lower() == "true"
    LOG_LEVEL: str = os.getenv("LOG_LEVEL", "WARNING")

    # 体の設定 (F_p が既定、Q は小規模な検証用)
    SAMPLING_PRIME: int = int(os.getenv("SAMPLING_PRIME", "1000003"))
    DEFAULT_FIELD: Literal["p", "Q"] = "p"
    RATIONAL_SAMPLE_BOUND: int = 3

    # サンプリング設定
    DEFAULT_SEED: int = int(os.getenv("DEFAULT_SEED", "0"))
    DEFAULT_SAMPLES: int = int(os.getenv("DEFAULT_SAMPLES", "50"))
    PROBE_TRIALS: int = 20
    WORKERS: int = int(os.getenv("WORKERS", "1"))

    # 計算量の上限
    FILTRATION_CAP: int = 100_000
    RESOLUTION_MAX_LEN: int = 2

    class Config:
        env_file = ".env"
        extra = "ignore"

settings = Settings()
