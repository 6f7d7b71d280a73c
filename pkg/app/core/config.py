"""
Application configuration
"""
import os

from dotenv import load_dotenv

load_dotenv()


class Settings:
    """Application settings"""

    # Construction
    CARRIER_BUDGET: int = int(os.getenv("SUBOP_CARRIER_BUDGET", "100000"))
    DEFAULT_ITERATIONS: int = int(os.getenv("SUBOP_DEFAULT_ITERATIONS", "1"))
    DEFAULT_FORMAT: str = os.getenv("SUBOP_DEFAULT_FORMAT", "dot")
    MAX_TYPE_DEPTH: int = int(os.getenv("SUBOP_MAX_TYPE_DEPTH", "200"))

    # Cache
    CACHE_ENABLED: bool = os.getenv("CACHE_ENABLED", "true").lower() == "true"
    CACHE_MAX_ENTRIES: int = int(os.getenv("CACHE_MAX_ENTRIES", "256"))
    TYPE_MEMO_MAX_ENTRIES: int = int(os.getenv("TYPE_MEMO_MAX_ENTRIES", "65536"))

    # Metrics
    METRICS_ENABLED: bool = os.getenv("METRICS_ENABLED", "true").lower() == "true"

    # Logging
    LOG_LEVEL: str = os.getenv("LOG_LEVEL", "WARNING")
    LOG_FORMAT: str = os.getenv("LOG_FORMAT", "plain")

    # CLI
    PROG_NAME: str = "subop"
    VERSION: str = "1.0.0"
    DESCRIPTION: str = "Construct and verify the wildcard subtyping relation of a miniature Java-like language"


settings = Settings()
