import os
from dotenv import load_dotenv

load_dotenv()

class Settings:
    # Directories
    OUTPUT_DIR = os.getenv("HYPERSECT_OUTPUT_DIR", "exports")

    # Output
    SCHEMA_VERSION = 1

    # Contexts whose equivariant tables are large; the CLI requires --allow-large for them
    LARGE_TYPES = ("E",)

    # Cache Settings
    CONTEXT_CACHE_SIZE = int(os.getenv("HYPERSECT_CONTEXT_CACHE_SIZE", "32"))
    CLASS_CACHE_SIZE = int(os.getenv("HYPERSECT_CLASS_CACHE_SIZE", "8"))

    # Base b of the generic point y_i = b**(i-1) used for classical structure constants.
    # Root coefficients never exceed 6, so any b >= 13 keeps every root nonzero there.
    GENERIC_POINT_BASE = int(os.getenv("HYPERSECT_GENERIC_POINT_BASE", "17"))

    # Logging
    LOG_FORMAT = '%(asctime)s [%(levelname)s] %(name)s: %(message)s'
    LOG_LEVEL = os.getenv("HYPERSECT_LOG_LEVEL", "WARNING")

    @classmethod
    def validate(cls):
        """Validate configuration values"""
        if cls.CONTEXT_CACHE_SIZE <= 0 or cls.CLASS_CACHE_SIZE <= 0:
            raise ValueError("Cache sizes must be positive")
        if cls.GENERIC_POINT_BASE < 13:
            raise ValueError(f"HYPERSECT_GENERIC_POINT_BASE must be at least 13, got {cls.GENERIC_POINT_BASE}")
        if cls.LOG_LEVEL.upper() not in ("DEBUG", "INFO", "WARNING", "ERROR", "CRITICAL"):
            raise ValueError(f"Unknown log level: {cls.LOG_LEVEL}")
        return True
