"""Finite pointed metric spaces.

A :class:`PointedMetricSpace` is a labelled distance matrix with a
distinguished base point. Everything downstream (Lipschitz constants,
cone interpolants, nets) works on these matrices.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass, field
from pathlib import Path
from typing import Sequence

import numpy as np

#: relative slack accepted in the triangle inequality (floating-point noise)
TRIANGLE_RTOL = 1e-9

#: largest space on which exact pair scans are performed
MAX_POINTS = 4096

TWO_PI = 2.0 * math.pi


class MetricError(ValueError):
    """Raised when a distance matrix does not define a pointed metric space."""


@dataclass(frozen=True, eq=False)
class PointedMetricSpace:
    labels: tuple
    dist: np.ndarray
    base_index: int
    coords: np.ndarray | None = field(default=None, repr=False)

    @property
    def size(self) -> int:
        return len(self.labels)

    def __len__(self) -> int:
        return len(self.labels)

    @property
    def base_label(self):
        return self.labels[self.base_index]

    def index_of(self, label) -> int:
        key = str(label)
        for i, lab in enumerate(self.labels):
            if str(lab) == key:
                return i
        raise KeyError(f"unknown label {label!r}")


@dataclass(frozen=True)
class NetCover:
    space: PointedMetricSpace
    centers: tuple[int, ...]
    radius: float

    def nearest_center(self) -> np.ndarray:
        """Index (into ``centers``) of the closest center for every point."""
        sub = self.space.dist[:, list(self.centers)]
        return np.argmin(sub, axis=1)


def _first_triangle_violation(dist: np.ndarray, tol: float):
    """Lexicographically smallest (i, j, k) with d[i,k] > d[i,j] + d[j,k] + tol."""
    best = None
    for j in range(dist.shape[0]):
        bad = dist > dist[:, j][:, None] + dist[j, :][None, :] + tol
        if bad.any():
            i, k = np.argwhere(bad)[0]
            cand = (int(i), j, int(k))
            if best is None or cand < best:
                best = cand
    return best


def build_space(labels: Sequence, dist_matrix, base_index: int = 0,
                coords=None) -> PointedMetricSpace:
    """Validate a distance matrix and wrap it as a pointed metric space.

    Raises
    ------
    MetricError
        If the matrix is not square, not symmetric, has a nonzero
        diagonal, negative or zero off-diagonal entries, breaks the
        triangle inequality, or the base index is out of range.
    """
    dist = np.array(dist_matrix, dtype=float)
    labels = tuple(labels)
    n = len(labels)
    if n < 1:
        raise MetricError("a space needs at least one point")
    if dist.ndim != 2 or dist.shape != (n, n):
        raise MetricError(f"distance matrix shape {dist.shape} does not match "
                          f"{n} labels")
    if len(set(map(str, labels))) != n:
        raise MetricError("labels must be distinct")
    if not 0 <= base_index < n:
        raise MetricError(f"base index {base_index} out of range for {n} points")
    if not np.all(np.isfinite(dist)):
        raise MetricError("distances must be finite")
    if np.any(np.diag(dist) != 0):
        raise MetricError("diagonal entries must be 0")
    if not np.array_equal(dist, dist.T):
        i, j = np.argwhere(dist != dist.T)[0]
        raise MetricError(f"asymmetric matrix at ({i}, {j})")
    if np.any(dist < 0):
        i, j = np.argwhere(dist < 0)[0]
        raise MetricError(f"negative distance at ({i}, {j})")
    off = ~np.eye(n, dtype=bool)
    if np.any(dist[off] == 0):
        i, j = np.argwhere((dist == 0) & off)[0]
        raise MetricError(f"zero distance between distinct points ({i}, {j})")
    tol = TRIANGLE_RTOL * (dist.max() if n > 1 else 0.0)
    bad = _first_triangle_violation(dist, tol)
    if bad is not None:
        i, j, k = bad
        raise MetricError(f"triangle inequality violated at {bad}: "
                          f"d[{i},{k}]={dist[i, k]!r} > "
                          f"d[{i},{j}]+d[{j},{k}]={dist[i, j] + dist[j, k]!r}")
    dist.setflags(write=False)
    if coords is not None:
        coords = np.array(coords, dtype=float)
        coords.setflags(write=False)
    return PointedMetricSpace(labels, dist, int(base_index), coords)


def snowflake(space: PointedMetricSpace, alpha: float) -> PointedMetricSpace:
    """Return the Hölder space (X, d**alpha), 0 < alpha <= 1."""
    if not 0 < alpha <= 1:
        raise MetricError(f"alpha must lie in (0, 1], got {alpha}")
    if alpha == 1:
        return space
    return build_space(space.labels, space.dist ** alpha, space.base_index,
                       space.coords)


def diameter(space: PointedMetricSpace) -> float:
    return float(space.dist.max()) if space.size > 1 else 0.0


def min_separation(space: PointedMetricSpace) -> float:
    """Smallest distance between distinct points (inf for a singleton)."""
    if space.size < 2:
        return math.inf
    off = ~np.eye(space.size, dtype=bool)
    return float(space.dist[off].min())


def ball(space: PointedMetricSpace, center: int, radius: float) -> np.ndarray:
    """Indices y with d(y, center) < radius (open ball)."""
    return np.flatnonzero(space.dist[center] < radius)


def greedy_net(space: PointedMetricSpace, radius: float) -> NetCover:
    """Deterministic greedy cover by open balls of the given radius.

    Starts from the base point and repeatedly adds the lowest-index point
    not yet covered.
    """
    if not radius > 0:
        raise MetricError(f"radius must be positive, got {radius}")
    centers = [space.base_index]
    covered = space.dist[space.base_index] < radius
    while not covered.all():
        nxt = int(np.argmin(covered))  # first False
        centers.append(nxt)
        covered |= space.dist[nxt] < radius
    return NetCover(space, tuple(centers), float(radius))


def is_cover(net: NetCover) -> bool:
    sub = net.space.dist[:, list(net.centers)]
    return bool(np.all(sub.min(axis=1) < net.radius))


# -- coordinate metrics -------------------------------------------------------

def canonical_angle(t):
    """Map angles into [0, 2*pi)."""
    t = np.mod(np.asarray(t, dtype=float), TWO_PI)
    # np.mod can round up to exactly 2*pi for tiny negative inputs
    return np.where(t >= TWO_PI, 0.0, t)


def torus_distance(t, s):
    """min{|t-s|, |t-s-2pi|, |t-s+2pi|} for angles canonicalized to [0, 2pi)."""
    t = canonical_angle(t)
    s = canonical_angle(s)
    diff = t - s
    return np.minimum(np.abs(diff),
                      np.minimum(np.abs(diff - TWO_PI), np.abs(diff + TWO_PI)))


def distance_matrix(coords, metric: str = "euclidean") -> np.ndarray:
    x = np.asarray(coords, dtype=float)
    if metric == "euclidean":
        if x.ndim == 1:
            x = x[:, None]
        diff = x[:, None, :] - x[None, :, :]
        return np.sqrt((diff ** 2).sum(axis=-1))
    x = x.reshape(-1)
    if metric == "interval":
        return np.abs(x[:, None] - x[None, :])
    if metric == "torus":
        return torus_distance(x[:, None], x[None, :])
    raise MetricError(f"unknown metric {metric!r}")


def space_from_coords(coords, metric: str = "euclidean", labels=None,
                      base_index: int = 0) -> PointedMetricSpace:
    coords = np.asarray(coords, dtype=float)
    if metric == "torus":
        coords = canonical_angle(coords)
    if labels is None:
        labels = list(range(len(coords)))
    return build_space(labels, distance_matrix(coords, metric), base_index,
                       coords)


# -- JSON ---------------------------------------------------------------------

def load_space(path) -> PointedMetricSpace:
    """Read a space from JSON.

    Either ``{"labels", "base", "dist"}`` or ``{"labels", "base", "coords",
    "metric"}`` with metric one of euclidean, torus, interval.
    """
    data = json.loads(Path(path).read_text())
    return space_from_dict(data)


def space_from_dict(data: dict) -> PointedMetricSpace:
    labels = data["labels"]
    base = data.get("base", labels[0])
    keys = [str(lab) for lab in labels]
    if str(base) not in keys:
        raise MetricError(f"base label {base!r} not among labels")
    base_index = keys.index(str(base))
    if "dist" in data:
        return build_space(labels, data["dist"], base_index)
    if "coords" in data:
        return space_from_coords(data["coords"], data.get("metric", "euclidean"),
                                 labels, base_index)
    raise MetricError("space JSON needs either 'dist' or 'coords'")


def space_to_dict(space: PointedMetricSpace) -> dict:
    return {"labels": list(space.labels), "base": space.base_label,
            "dist": space.dist.tolist()}
