"""Configuration constants and caps."""

from __future__ import annotations

import os

from .errors import ResourceCapError

#: Ground sets are bitmasks that must fit a machine word.
MAX_GROUND_SET = 32

#: Largest number of matrix entries built eagerly, overridable by env var.
DEFAULT_ENTRY_CAP = 1 << 28
ENTRY_CAP_ENV = "KELLYMOD_ENTRY_CAP"

#: Smith normal form is for desk-scale matrices only.
SNF_MAX_DIM = 256

#: Up to this many families (or graphs, tournaments) per side a sweep is exhaustive.
EXHAUSTIVE_LIMIT = 1 << 12

#: Sample size and seed used when a sweep degrades to sampling.
DEFAULT_SAMPLE = 1 << 12
DEFAULT_SEED = 1729

#: Reports keep at most this many counterexamples.
MAX_COUNTEREXAMPLES = 10

#: Largest order for which hypomorphy uses exhaustive canonical codes.
MAX_CANONICAL_ORDER = 7


def entry_cap() -> int:
    raw = os.environ.get(ENTRY_CAP_ENV)
    if raw is None:
        return DEFAULT_ENTRY_CAP
    try:
        cap = int(raw)
    except ValueError:
        raise ValueError(f"{ENTRY_CAP_ENV} must be an integer, got {raw!r}") from None
    if cap <= 0:
        raise ValueError(f"{ENTRY_CAP_ENV} must be positive, got {cap}")
    return cap


def check_ground_set(v: int) -> None:
    if not 0 <= v <= MAX_GROUND_SET:
        raise ResourceCapError(
            f"ground set size v={v} outside supported range 0..{MAX_GROUND_SET}"
        )
