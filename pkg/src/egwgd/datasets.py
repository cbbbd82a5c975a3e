"""Built-in benchmark data and dataset file parsing."""

from __future__ import annotations

import numpy as np

from .exceptions import DomainError

__all__ = ["AARSET", "FIXTURES", "load_values"]

# Aarset (1987): lifetimes of 50 devices, the canonical bathtub-hazard
# benchmark.  Sum 2284.3, n = 50.
AARSET = np.array([
    0.1, 0.2, 1.0, 1.0, 1.0, 1.0, 1.0, 2.0, 3.0, 6.0,
    7.0, 11.0, 12.0, 18.0, 18.0, 18.0, 18.0, 18.0, 21.0, 32.0,
    36.0, 40.0, 45.0, 46.0, 47.0, 50.0, 55.0, 60.0, 63.0, 63.0,
    67.0, 67.0, 67.0, 67.0, 72.0, 75.0, 79.0, 82.0, 82.0, 83.0,
    84.0, 84.0, 84.0, 85.0, 85.0, 85.0, 85.0, 85.0, 86.0, 86.0,
])
AARSET.flags.writeable = False

FIXTURES = {"aarset": AARSET}


def load_values(source: str) -> np.ndarray:
    """Load lifetimes from a fixture name or a text file.

    Files may be newline- or comma-delimited; ``#`` starts a comment.
    Raises DomainError naming the offending line for non-positive values.
    """
    key = source.strip().lower()
    if key in FIXTURES:
        return FIXTURES[key].copy()
    values = []
    with open(source, "r", encoding="utf-8") as fh:
        for lineno, line in enumerate(fh, start=1):
            text = line.split("#", 1)[0].strip()
            if not text:
                continue
            for tok in text.replace(",", " ").split():
                try:
                    v = float(tok)
                except ValueError as exc:
                    raise DomainError(f"{source}:{lineno}: not a number: {tok!r}") from exc
                if not v > 0.0:
                    raise DomainError(f"{source}:{lineno}: non-positive value {tok}")
                values.append(v)
    if not values:
        raise DomainError(f"{source}: no data values found")
    return np.asarray(values, dtype=float)
