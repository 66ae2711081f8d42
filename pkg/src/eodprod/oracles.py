"""Closed-form EOD answers for paths, cycles, grids and tori.

Each function refuses arguments outside the range where its statement is
known to hold; callers fall back to exact search there.
"""

from __future__ import annotations

from dataclasses import dataclass


class DomainError(ValueError):
    """Argument outside the range covered by the closed-form result."""


@dataclass(frozen=True)
class OracleAnswer:
    value: bool
    source: str

    def render(self) -> str:
        return f"{str(self.value).lower()} ({self.source})"


def path_eod(n: int) -> OracleAnswer:
    if n < 1:
        raise DomainError(f"path order must be positive, got {n}")
    return OracleAnswer(n % 4 != 1, "path theorem: P_n is EOD iff n mod 4 != 1")


def cycle_eod(n: int) -> OracleAnswer:
    if n < 3:
        raise DomainError(f"cycle order must be at least 3, got {n}")
    return OracleAnswer(n % 4 == 0, "cycle theorem: C_n is EOD iff n mod 4 == 0")


def grid_eod(r: int, t: int) -> OracleAnswer:
    """Grid ``P_r □ P_t`` for ``t >= r >= 3``."""
    if not t >= r >= 3:
        raise DomainError(f"grid theorem needs t >= r >= 3, got r={r}, t={t}")
    value = r % 2 == 0 and t % (r + 1) in {1, r - 2, r}
    return OracleAnswer(value, "grid theorem: r even and t mod (r+1) in {1, r-2, r}")


def torus_parallel_eod(r: int, t: int) -> OracleAnswer:
    """Whether ``C_r □ C_t`` has an EOD-set parallel to at least one factor."""
    if r < 3 or t < 3:
        raise DomainError(f"torus factors need at least 3 vertices, got r={r}, t={t}")
    return OracleAnswer(r % 4 == 0 and t % 4 == 0, "torus parallel theorem: 4 | r and 4 | t")


def c4_torus_eod(t: int) -> OracleAnswer:
    if t < 4:
        raise DomainError(f"C4 torus result needs t >= 4, got {t}")
    return OracleAnswer(t % 4 == 0, "C4 torus proposition: C4 x C_t is EOD iff 4 | t")


ORACLES = {
    "path": (path_eod, 1),
    "cycle": (cycle_eod, 1),
    "grid": (grid_eod, 2),
    "torus-parallel": (torus_parallel_eod, 2),
    "c4-torus": (c4_torus_eod, 1),
}
