"""Lipschitz constants, the difference-quotient (De Leeuw) transform and
flatness profiles for functions sampled on a finite pointed metric space."""

from __future__ import annotations

import csv
from dataclasses import dataclass
from pathlib import Path

import numpy as np

from .metric import MAX_POINTS, PointedMetricSpace

_BLOCK = 512


class BasePointError(ValueError):
    """A sampled function does not vanish at the base point."""


@dataclass(frozen=True, eq=False)
class SampledFunction:
    space: PointedMetricSpace
    values: np.ndarray

    def __post_init__(self):
        values = np.array(self.values, dtype=float).reshape(-1)
        if values.shape[0] != self.space.size:
            raise ValueError(f"{values.shape[0]} values for a space of "
                             f"{self.space.size} points")
        if values[self.space.base_index] != 0:
            raise BasePointError(
                f"value at base point {self.space.base_label!r} is "
                f"{values[self.space.base_index]!r}, expected 0")
        values.setflags(write=False)
        object.__setattr__(self, "values", values)

    def __len__(self) -> int:
        return self.values.shape[0]

    def scaled(self, c: float) -> "SampledFunction":
        return SampledFunction(self.space, c * self.values)


@dataclass(frozen=True)
class FlatnessProfile:
    thresholds: np.ndarray
    sups: np.ndarray

    def as_rows(self):
        return list(zip(self.thresholds.tolist(), self.sups.tolist()))


def _check_size(n: int) -> None:
    if n > MAX_POINTS:
        raise ValueError(f"{n} points exceeds the exact-scan limit of "
                         f"{MAX_POINTS}")


def _quotient_rows(values, dist, rows):
    """|Phi(f)| restricted to the given rows; diagonal entries set to 0."""
    num = values[rows, None] - values[None, :]
    d = dist[rows]
    q = np.zeros_like(d)
    np.divide(num, d, out=q, where=d > 0)
    return np.abs(q)


def lip_of(values, dist, lower=0.0, upper=np.inf) -> float:
    """max |v_i - v_j| / d_ij over pairs with lower < d_ij < upper.

    The quotient is formed exactly as in :func:`de_leeuw`, so the two agree
    bit for bit. Returns 0 when no pair qualifies.
    """
    values = np.asarray(values, dtype=float)
    dist = np.asarray(dist, dtype=float)
    n = values.shape[0]
    _check_size(n)
    best = 0.0
    for start in range(0, n, _BLOCK):
        rows = np.arange(start, min(start + _BLOCK, n))
        q = _quotient_rows(values, dist, rows)
        if lower <= 0 and upper == np.inf:
            best = max(best, float(q.max()))  # diagonal quotients are 0
            continue
        d = dist[rows]
        keep = (d > lower) & (d < upper)
        if keep.any():
            best = max(best, float(q[keep].max()))
    return best


def lip_constant(f: SampledFunction) -> float:
    """Lip_d(f) = max over x != y of |f(x) - f(y)| / d(x, y)."""
    if f.space.size < 2:
        return 0.0
    return lip_of(f.values, f.space.dist)


def de_leeuw(f: SampledFunction) -> np.ndarray:
    """Difference-quotient matrix Phi[i, j] = (f_i - f_j) / d_ij.

    Only the off-diagonal entries are meaningful; the diagonal (which lies
    outside the domain of pairs x != y) is filled with 0.
    """
    _check_size(len(f))
    v = f.values
    d = f.space.dist
    phi = np.zeros_like(d)
    np.divide(v[:, None] - v[None, :], d, out=phi, where=d > 0)
    return phi


def flatness_profile(f: SampledFunction, thresholds) -> FlatnessProfile:
    """Restricted difference-quotient sups over pairs with 0 < d(x,y) < t."""
    t = np.asarray(thresholds, dtype=float).reshape(-1)
    if t.size == 0:
        raise ValueError("need at least one threshold")
    if np.any(t <= 0) or np.any(np.diff(t) <= 0):
        raise ValueError("thresholds must be positive and strictly ascending")
    sups = np.array([lip_of(f.values, f.space.dist, 0.0, tk) for tk in t])
    return FlatnessProfile(t, sups)


def sup_distance(f: SampledFunction, g: SampledFunction) -> float:
    if f.space is not g.space and not (
            f.space.labels == g.space.labels
            and np.array_equal(f.space.dist, g.space.dist)):
        raise ValueError("functions live on different spaces")
    return float(np.max(np.abs(f.values - g.values)))


def normalize_to_unit_ball(values, dist) -> tuple[np.ndarray, float]:
    """Divide by r = max{1, Lip} so the result lies in the closed unit ball.

    r is nudged upward by ulps while rounding in the division leaves the
    recomputed constant above 1. Returns ``(values / r, r)``.
    """
    values = np.asarray(values, dtype=float)
    r = max(1.0, lip_of(values, dist))
    out = values / r
    while lip_of(out, dist) > 1.0:
        r = float(np.nextafter(r, np.inf))
        out = values / r
    return out, r


def load_function_csv(path, space: PointedMetricSpace) -> SampledFunction:
    """Read ``label,value`` rows (optional header) aligned to the space."""
    values = {}
    with Path(path).open(newline="") as fh:
        for row in csv.reader(fh):
            if not row or row[0].startswith("#"):
                continue
            label, raw = row[0].strip(), row[1].strip()
            try:
                val = float(raw)
            except ValueError:
                if not values:
                    continue  # header
                raise
            values[label] = val
    missing = [lab for lab in space.labels if str(lab) not in values]
    if missing:
        raise ValueError(f"no value for labels {missing[:5]}")
    return SampledFunction(space, [values[str(lab)] for lab in space.labels])


def write_function_csv(f: SampledFunction, path) -> None:
    with Path(path).open("w", newline="") as fh:
        w = csv.writer(fh)
        w.writerow(["label", "value"])
        for lab, v in zip(f.space.labels, f.values):
            w.writerow([lab, repr(float(v))])
