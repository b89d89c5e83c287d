from pydantic_settings import BaseSettings
import os
from dotenv import load_dotenv

load_dotenv()

class Settings(BaseSettings):
    # Truncation
    max_degree: int = int(os.getenv("MAX_DEGREE", "40"))

    # Group enumeration
    group_cap: int = int(os.getenv("GROUP_CAP", "20000"))

    # Product spot-checks
    spotcheck_trials: int = int(os.getenv("SPOTCHECK_TRIALS", "50"))
    spotcheck_seed: int = int(os.getenv("SPOTCHECK_SEED", "0"))

    # Degreewise tables; 1 runs sequentially
    workers: int = int(os.getenv("WORKERS", "1"))

    # Per-spec contexts and per-group invariant rings kept in memory
    cache_size: int = int(os.getenv("CACHE_SIZE", "64"))

    # Application
    log_level: str = os.getenv("LOG_LEVEL", "WARNING")

    class Config:
        env_file = ".env"

settings = Settings()
