"""Shared small types: three-valued answers and search budgets."""
from __future__ import annotations

import enum
from dataclasses import dataclass


class Tri(enum.Enum):
    TRUE = "true"
    FALSE = "false"
    UNKNOWN = "unknown"

    @classmethod
    def of(cls, value: bool) -> "Tri":
        return cls.TRUE if value else cls.FALSE

    def __bool__(self) -> bool:
        return self is Tri.TRUE


@dataclass(frozen=True)
class Fuel:
    """Budget for every search loop.

    ``max_steps`` bounds derivation length (and BFS depth per side),
    ``max_term_size`` discards reducts that grow past it, and
    ``max_nodes`` caps the number of distinct terms a single search may visit.
    """

    max_steps: int = 50
    max_term_size: int = 200
    max_nodes: int = 4000

    def __post_init__(self):
        if self.max_steps < 0 or self.max_term_size < 0 or self.max_nodes < 0:
            raise ValueError("fuel components must be non-negative")


DEFAULT_FUEL = Fuel()
