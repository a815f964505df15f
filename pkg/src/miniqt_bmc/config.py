"""Verifier configuration shared by every pipeline stage."""

from __future__ import annotations

from dataclasses import dataclass, field


@dataclass(frozen=True)
class VerifierConfig:
    unwind_bound: int = 10
    unwinding_assertions: bool = True
    include_paths: tuple[str, ...] = ()
    container_capacity: int = 10
    timeout_seconds: int = 600
    mem_limit_kb: int = 14_000_000
    int_width: int = 32
    strict_positive_interval: bool = False

    def __post_init__(self):
        if self.unwind_bound < 1:
            raise ValueError("unwind bound must be >= 1")
        if self.container_capacity < 1:
            raise ValueError("container capacity must be >= 1")
        if self.timeout_seconds < 1:
            raise ValueError("timeout must be >= 1 second")
        if self.mem_limit_kb < 1:
            raise ValueError("memory limit must be positive")
        if self.int_width < 2:
            raise ValueError("int width must be at least 2 bits")

    @property
    def builtin_constants(self) -> dict[str, int]:
        """Magic identifiers resolvable inside model files."""
        return {
            "__CONTAINER_CAPACITY__": self.container_capacity,
            "__TIMER_MIN_INTERVAL__": 1 if self.strict_positive_interval else 0,
        }
