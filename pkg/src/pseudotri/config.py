from __future__ import annotations

from dataclasses import dataclass

from .generate import resolve_seed
from .stretch import StretchConfig

WEIGHT_MODES = ("unit", "random")
METHODS = ("tutte", "henneberg")


@dataclass(frozen=True)
class RunConfig:
    """Settings shared by the command line pipelines.

    The environment variable ``PSEUDOTRI_SEED`` overrides ``seed``.
    """

    seed: int = 0
    weights: str = "unit"
    tolerance: float = 1e-10
    method: str = "tutte"
    n_limit: int = 12

    def __post_init__(self) -> None:
        if not self.tolerance > 0:
            raise ValueError("tolerance must be positive")
        if self.weights not in WEIGHT_MODES:
            raise ValueError(f"weights must be one of {WEIGHT_MODES}")
        if self.method not in METHODS:
            raise ValueError(f"method must be one of {METHODS}")
        if self.n_limit < 1:
            raise ValueError("n_limit must be positive")

    @property
    def effective_seed(self) -> int:
        return resolve_seed(self.seed)

    def stretch_config(self) -> StretchConfig:
        return StretchConfig(weights=self.weights, seed=self.effective_seed, tolerance=self.tolerance)
