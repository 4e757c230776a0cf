"""Named test functions and seeded random space generators."""

from __future__ import annotations

import numpy as np
from scipy.cluster.hierarchy import cophenet, linkage
from scipy.spatial.distance import pdist, squareform

from .lipschitz import SampledFunction, lip_of, normalize_to_unit_ball
from .metric import MetricError, build_space, snowflake, space_from_coords, torus_distance

MAX_RETRIES = 20


class CatalogError(ValueError):
    pass


def _split(name: str) -> tuple[str, list[str]]:
    head, *args = name.split(":")
    return head, args


# -- spaces -------------------------------------------------------------------

def euclidean_space(k: int, N: int, rng: np.random.Generator):
    """N points uniform in [0,1]^k, base point 0. Resamples on failure."""
    for _ in range(MAX_RETRIES):
        pts = rng.random((N, k))
        try:
            return space_from_coords(pts, "euclidean")
        except MetricError:
            continue
    raise MetricError(f"could not draw a valid euclidean:{k}:{N} space")


def ultrametric_space(N: int, rng: np.random.Generator):
    """Cophenetic distances of an average-linkage tree on random points."""
    for _ in range(MAX_RETRIES):
        pts = rng.random((N, 2))
        if N == 1:
            return build_space([0], [[0.0]], 0)
        coph = cophenet(linkage(pdist(pts), method="average"))
        try:
            return build_space(list(range(N)), squareform(coph), 0)
        except MetricError:
            continue
    raise MetricError(f"could not draw a valid ultrametric:{N} space")


def interval_space(N: int):
    """N evenly spaced points on [0, 1], base point 0."""
    return space_from_coords(np.linspace(0.0, 1.0, N), "interval")


def torus_space(N: int):
    return space_from_coords(2 * np.pi * np.arange(N) / N, "torus")


RANDOM_SPACES = ("euclidean", "ultrametric")


def make_space(name: str, seed: int | None = None):
    """Generator names: euclidean:k:N, ultrametric:N, interval:N, torus:N."""
    head, args = _split(name)
    try:
        if head in RANDOM_SPACES and seed is None:
            raise CatalogError(f"space generator {name!r} needs a seed")
        rng = np.random.default_rng(seed)
        if head == "euclidean":
            k, N = int(args[0]), int(args[1])
            return euclidean_space(k, N, rng)
        if head == "ultrametric":
            return ultrametric_space(int(args[0]), rng)
        if head == "interval":
            return interval_space(int(args[0]))
        if head == "torus":
            return torus_space(int(args[0]))
    except (IndexError, ValueError) as exc:
        if isinstance(exc, CatalogError):
            raise
        raise CatalogError(f"bad space generator {name!r}: {exc}") from exc
    raise CatalogError(f"unknown space generator {name!r}")


# -- functions on finite spaces (cone construction) ---------------------------

def random_unit_ball(space, alpha: float, rng: np.random.Generator) -> SampledFunction:
    """Random values, zero at the base, rescaled to Hölder-alpha constant 1."""
    v = rng.standard_normal(space.size)
    v[space.base_index] = 0.0
    if space.size < 2:
        return SampledFunction(space, v)
    da = snowflake(space, alpha).dist
    lip = lip_of(v, da)
    if lip > 0:
        v = v / lip
    v, _ = normalize_to_unit_ball(v, da)
    return SampledFunction(space, v)


def space_function(name: str, space, alpha: float, seed: int | None = None) -> SampledFunction:
    """Catalog: zero, identity (1-D coordinates), dist-to-base, random."""
    head, _ = _split(name)
    b = space.base_index
    if head == "zero":
        return SampledFunction(space, np.zeros(space.size))
    if head == "identity":
        if space.coords is None or space.coords.ndim != 1:
            raise CatalogError("identity needs a space with 1-D coordinates")
        return SampledFunction(space, space.coords - space.coords[b])
    if head == "dist-to-base":
        return SampledFunction(space, space.dist[b] ** alpha)
    if head == "random":
        if seed is None:
            raise CatalogError("the random function needs a seed")
        return random_unit_ball(space, alpha, np.random.default_rng(seed + 1))
    raise CatalogError(f"unknown function {name!r}")


# -- functions on [0, 1] (Bernstein) ------------------------------------------

def interval_function(name: str):
    """Catalog: power:p, zero, identity, hat:c. Every entry vanishes at 0."""
    head, args = _split(name)
    if head == "zero":
        return lambda x: np.zeros_like(np.asarray(x, dtype=float))
    if head == "identity":
        return lambda x: np.asarray(x, dtype=float)
    if head == "power":
        p = float(args[0])
        if p <= 0:
            raise CatalogError("power exponent must be positive")
        return lambda x: np.asarray(x, dtype=float) ** p
    if head == "hat":
        c = float(args[0])
        if not 0 < c <= 1:
            raise CatalogError("hat peak must lie in (0, 1]")
        return lambda x: np.maximum(c - np.abs(np.asarray(x, dtype=float) - c), 0.0)
    raise CatalogError(f"unknown interval function {name!r}")


# -- functions on the circle (Fejér) ------------------------------------------

SAWTOOTH_TEETH = 4


def torus_function(name: str):
    """Catalog: sin, dist-to-zero:a, sawtooth-holder:a. Every entry vanishes at 0.

    ``sawtooth-holder:a`` is d(4t, 0)**a / 4**a, a Hölder-a function with
    constant at most 1 and four cusps.
    """
    head, args = _split(name)
    if head == "sin":
        return lambda t: np.sin(np.asarray(t, dtype=float))
    if head == "zero":
        return lambda t: np.zeros_like(np.asarray(t, dtype=float))
    if head == "dist-to-zero":
        a = float(args[0])
        return lambda t: torus_distance(t, 0.0) ** a
    if head == "sawtooth-holder":
        a = float(args[0])
        m = SAWTOOTH_TEETH
        return lambda t: torus_distance(m * np.asarray(t, dtype=float), 0.0) ** a / m ** a
    raise CatalogError(f"unknown torus function {name!r}")
