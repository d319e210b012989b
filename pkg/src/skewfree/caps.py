"""Resource caps for the exponential-size computations.

Word spaces grow like 2^n, so every entry point that expands them is
bounded.  Limits are read at call time so the environment variables can
raise them for a single run.
"""

from __future__ import annotations

import os

DEFAULT_MAX_ENTRIES = 1 << 20
DEFAULT_GENERIC_DEPTH = 12
DEFAULT_MONOMIAL_DEPTH = 20


class ResourceCapError(RuntimeError):
    """Raised instead of attempting a computation past the configured caps."""


def _env_int(name: str, default: int) -> int:
    raw = os.environ.get(name)
    if raw is None:
        return default
    try:
        value = int(raw)
    except ValueError as exc:
        raise ResourceCapError(f"{name} must be an integer, got {raw!r}") from exc
    if value < 1:
        raise ResourceCapError(f"{name} must be positive, got {value}")
    return value


def max_matrix_entries() -> int:
    """Cap on stored (nonzero) coefficient-matrix entries."""
    return _env_int("SKEWFREE_MAX_ENTRIES", DEFAULT_MAX_ENTRIES)


def max_generic_depth() -> int:
    """Cap on word length for the generic rank engine."""
    return _env_int("SKEWFREE_MAX_DEPTH", DEFAULT_GENERIC_DEPTH)


def max_monomial_depth() -> int:
    """Cap on word length for the exponent-set fast path."""
    return _env_int("SKEWFREE_MONOMIAL_MAX_DEPTH", DEFAULT_MONOMIAL_DEPTH)


def check_depth(n: int, cap: int, what: str) -> None:
    if n > cap:
        raise ResourceCapError(
            f"{what} depth {n} exceeds cap {cap}; override via the "
            "SKEWFREE_MAX_DEPTH / SKEWFREE_MONOMIAL_MAX_DEPTH environment variables"
        )


def check_entries(count: int, what: str) -> None:
    cap = max_matrix_entries()
    if count > cap:
        raise ResourceCapError(
            f"{what} needs {count} matrix entries, above cap {cap}; override via "
            "the SKEWFREE_MAX_ENTRIES environment variable"
        )
