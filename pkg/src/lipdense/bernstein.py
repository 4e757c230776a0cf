"""Bernstein polynomial approximants on [0, 1] and their Hölder-ball checks."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable

import numpy as np
from scipy.special import gammaln

from .lipschitz import lip_of
from .trace import ConvergenceTrace, TraceRecord, Verdict, check

HOLDER_TOL = 1e-9
MIN_GRID = 8


class UnitBallError(ValueError):
    """The input function is not in the Hölder unit ball on the grid."""


@dataclass(frozen=True, eq=False)
class BernsteinApproximant:
    n: int
    coefficients: np.ndarray  # f(k/n), k = 0..n

    def __call__(self, x):
        return bernstein_eval(self, x)


def bernstein_build(f: Callable, n: int) -> BernsteinApproximant:
    if n < 1:
        raise ValueError(f"degree must be at least 1, got {n}")
    nodes = np.arange(n + 1) / n
    coef = np.asarray(f(nodes), dtype=float).reshape(n + 1)
    coef.setflags(write=False)
    return BernsteinApproximant(n, coef)


def bernstein_eval(approx: BernsteinApproximant, x):
    """Evaluate B_n(f, x) by the de Casteljau recurrence.

    Every step is a convex combination, so the scheme is stable for any
    degree and preserves sign and endpoint values exactly.
    """
    x = np.asarray(x, dtype=float)
    if np.any((x < 0) | (x > 1)):
        raise ValueError("Bernstein polynomials are evaluated on [0, 1]")
    flat = x.reshape(-1)
    b = np.repeat(approx.coefficients[:, None], flat.size, axis=1)
    s = 1.0 - flat
    for _ in range(approx.n):
        b = s * b[:-1] + flat * b[1:]
    return b[0].reshape(x.shape)


def bernstein_direct(coefficients, x):
    """Defining sum with log-space binomials. Reference evaluator for tests."""
    c = np.asarray(coefficients, dtype=float)
    n = c.size - 1
    x = np.atleast_1d(np.asarray(x, dtype=float))
    k = np.arange(n + 1)
    logc = gammaln(n + 1) - gammaln(k + 1) - gammaln(n - k + 1)
    out = np.empty_like(x)
    for i, xi in enumerate(x):
        with np.errstate(divide="ignore", invalid="ignore"):
            logb = logc + k * np.log(xi) + (n - k) * np.log1p(-xi)
        basis = np.exp(logb)
        # 0 * log(0) terms at the endpoints
        if xi == 0:
            basis = (k == 0).astype(float)
        elif xi == 1:
            basis = (k == n).astype(float)
        out[i] = basis @ c
    return out


def bernstein_density_check(f: Callable, alpha: float, grid_size: int = 256,
                            degrees=(4, 16, 64, 256)) -> ConvergenceTrace:
    """Grid Hölder constant, grid Lipschitz constant and sup error per degree."""
    if grid_size < MIN_GRID:
        raise ValueError(f"grid needs at least {MIN_GRID} points, got {grid_size}")
    if not 0 < alpha < 1:
        raise ValueError(f"alpha must lie in (0, 1), got {alpha}")
    x = np.linspace(0.0, 1.0, grid_size)
    d = np.abs(x[:, None] - x[None, :])
    da = d ** alpha
    fx = np.asarray(f(x), dtype=float)
    lip_f = lip_of(fx, da)
    if lip_f > 1.0 + HOLDER_TOL:
        raise UnitBallError(f"grid Hölder-{alpha} constant of f is {lip_f:.6g} > 1")
    trace = ConvergenceTrace("bernstein", alpha,
                             meta={"grid": grid_size, "lip_alpha_f": lip_f,
                                   "f0": float(fx[0])})
    for n in degrees:
        approx = bernstein_build(f, n)
        bx = bernstein_eval(approx, x)
        ends = max(abs(bx[0] - approx.coefficients[0]),
                   abs(bx[-1] - approx.coefficients[-1]))
        trace.records.append(TraceRecord(
            n=int(n), size=int(n), lip_alpha=lip_of(bx, da), lip_base=lip_of(bx, d),
            sup_error=float(np.max(np.abs(bx - fx))),
            extras={"endpoint_residual": float(ends), "min_value": float(bx.min()),
                    "min_coefficient": float(approx.coefficients.min())}))
    return trace


def check_trace(trace: ConvergenceTrace) -> list[Verdict]:
    lip_f = trace.meta["lip_alpha_f"]
    vs = []
    for r in trace.records:
        vs.append(check("holder_ball", r.lip_alpha, lip_f + HOLDER_TOL, r.n))
        vs.append(check("endpoint_interpolation", r.extras["endpoint_residual"],
                        1e-12, r.n))
        if r.extras["min_coefficient"] >= 0:
            vs.append(check("positivity", -r.extras["min_value"], 0.0, r.n))
    vs.append(error_decrease(trace))
    return vs


def error_decrease(trace: ConvergenceTrace, floor: float = 1e-12) -> Verdict:
    """Sup errors strictly decrease along the trace, unless all are at the floor."""
    errs = trace.column("sup_error")
    if max(errs) <= floor:
        return Verdict("error_decrease", True, floor - max(errs),
                       detail="exact reproduction")
    gaps = [a - b for a, b in zip(errs, errs[1:])]
    worst = min(gaps) if gaps else 0.0
    return Verdict("error_decrease", bool(all(g > 0 for g in gaps)), worst)
