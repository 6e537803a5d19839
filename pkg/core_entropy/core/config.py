"""
Configuration management with environment variable sanitization
"""

import re
from typing import List

from pydantic_settings import BaseSettings


def sanitize_env_var(value: str) -> str:
    """Remove null bytes and other problematic characters from environment variables"""
    if not value:
        return value

    # Remove null bytes and other control characters
    sanitized = re.sub(r'[\x00-\x08\x0B\x0C\x0E-\x1F\x7F]', '', value)

    # Remove Unicode escape sequences that might cause issues
    sanitized = re.sub(r'\\u0000', '', sanitized)

    return sanitized.strip()


class Settings(BaseSettings):
    """Engine settings with sanitization"""

    # Logging
    DEBUG: bool = False
    LOG_FORMAT: str = "json"

    # Census and addresses
    CENSUS_HORIZON: int = 40
    ADDRESS_MAX_TERMS: int = 64

    # Hoelder scans
    SCAN_MIN_SCALE: int = 4
    SCAN_MAX_SCALE: int = 18
    SCAN_OFFSETS: List[int] = [1, 3]
    ZERO_DELTA_TOLERANCE: float = 1e-10
    FEIGENBAUM_LEVEL: int = 8

    # Spectral radius
    SPECTRAL_TOLERANCE: float = 1e-12
    SPECTRAL_MAX_ITERATIONS: int = 20000
    DENSE_EIGEN_LIMIT: int = 600

    # Performance
    THREADS: int = 1
    CACHE_MAX_SIZE: int = 4096

    class Config:
        env_file = ".env"
        env_prefix = "CORE_ENTROPY_"

    def __init__(self, **kwargs):
        # Sanitize all explicitly passed values
        sanitized_kwargs = {}
        for key, value in kwargs.items():
            if isinstance(value, str):
                sanitized_kwargs[key] = sanitize_env_var(value)
            else:
                sanitized_kwargs[key] = value

        super().__init__(**sanitized_kwargs)

    @property
    def log_format(self) -> str:
        """Get sanitized log format, falling back to json"""
        fmt = sanitize_env_var(self.LOG_FORMAT).lower()
        return fmt if fmt in ("json", "console") else "json"

    @property
    def threads(self) -> int:
        """Worker count for batch commands, never below one"""
        return max(1, self.THREADS)


# Create settings instance
settings = Settings()
