from __future__ import annotations

from dataclasses import dataclass, field
from typing import Optional


class BudgetExceeded(RuntimeError):
    """Raised when an input would blow past a configured size budget."""

    def __init__(self, what: str, value: int, limit: int):
        super().__init__(f"{what} = {value} exceeds budget {limit}")
        self.what = what
        self.value = value
        self.limit = limit


@dataclass(frozen=True)
class Budgets:
    max_n: int = 16
    max_edges: int = 64
    max_cycles: int = 10**7
    max_class_bits: int = 20  # representatives = 2**(|E| - n + c)
    max_subset: int = 20  # inclusion-exclusion terms = 2**|N|
    max_automorphisms: int = 10**6

    def __post_init__(self):
        for name, value in vars(self).items():
            if value <= 0:
                raise ValueError(f"budget {name} must be positive, got {value}")

    def check(self, what: str, value: int, limit: int) -> None:
        if value > limit:
            raise BudgetExceeded(what, value, limit)


DEFAULT_BUDGETS = Budgets()


@dataclass(frozen=True)
class RunConfig:
    budgets: Budgets = field(default_factory=Budgets)
    workers: int = 1
    output_format: str = "json"
    cache_dir: Optional[str] = None
    timing: bool = False

    def __post_init__(self):
        if self.workers < 1:
            raise ValueError("workers must be >= 1")
        if self.output_format not in ("json", "csv", "text"):
            raise ValueError(f"unknown output format {self.output_format!r}")
