from pydantic import AliasChoices, Field
from pydantic_settings import BaseSettings


class Settings(BaseSettings):
    # Cache
    cache_dir: str = Field(
        ".reflekt-cache",
        validation_alias=AliasChoices("REFLEKT_CACHE", "REFLEKT_CACHE_DIR", "cache_dir"),
    )

    # Budgets
    budget: int = 1_000_000  # elements per enumerated group
    search_budget: int = 1_000_000  # character combinations in the model search
    aut_budget: int = 20_000  # largest |G| enumerated for automorphisms inside a suite

    # Sampling
    exhaustive_pair_limit: int = 200  # |G| up to which model checks run over all pairs
    sample_pairs: int = 10_000
    seed: int = 0

    # Runner
    workers: int = 1
    report_timings: bool = False
    log_level: str = "INFO"

    @property
    def cache_enabled(self) -> bool:
        """Check if an on-disk cache directory is configured."""
        return bool(self.cache_dir)

    model_config = {
        "env_file": ".env",
        "env_file_encoding": "utf-8",
        "env_prefix": "REFLEKT_",
        "extra": "ignore",
    }


settings = Settings()
