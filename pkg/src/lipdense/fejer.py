"""Fejér kernel and Fejér means on the circle R/2piZ, sampled on a uniform grid.

Fourier coefficients are discrete sums over the grid, so on grid nodes the
coefficient form of sigma_n coincides with the discrete convolution against
the sampled kernel. Since the sampled kernel is nonnegative with mean 1 for
n < N, sigma_n never increases a translation-invariant Hölder constant.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import lru_cache

import numpy as np

from .bernstein import UnitBallError, error_decrease
from .lipschitz import lip_of
from .metric import TWO_PI, canonical_angle, torus_distance
from .trace import ConvergenceTrace, TraceRecord, Verdict, check

HOLDER_TOL = 1e-9
IMAG_TOL = 1e-10


class AliasingError(ValueError):
    pass


@dataclass(frozen=True, eq=False)
class TorusGrid:
    size: int
    nodes: np.ndarray = field(init=False, repr=False)

    def __post_init__(self):
        if self.size < 1:
            raise ValueError("grid needs at least one node")
        object.__setattr__(self, "nodes", TWO_PI * np.arange(self.size) / self.size)

    def dist(self) -> np.ndarray:
        return torus_distance(self.nodes[:, None], self.nodes[None, :])


def fejer_weights(n: int) -> np.ndarray:
    """Cesàro weights 1 - |j|/(n+1) for j = 0..n."""
    return 1.0 - np.arange(n + 1) / (n + 1.0)


def fejer_kernel(n: int, t):
    """K_n(t) = (sin((n+1)t/2) / sin(t/2))**2 / (n+1), with K_n(0) = n+1."""
    if n < 0:
        raise ValueError("order must be nonnegative")
    # even and 2pi-periodic: reduce to [0, pi] so both sines keep relative accuracy
    u = torus_distance(t, 0.0)
    half = np.sin(u / 2.0)
    num = np.sin((n + 1) * u / 2.0)
    safe = np.where(half == 0, 1.0, half)
    return np.where(half == 0, float(n + 1), (num / safe) ** 2 / (n + 1))


def fejer_kernel_sum(n: int, t):
    """Sum form of the kernel: sum_{|j|<=n} (1 - |j|/(n+1)) e^{ijt}."""
    t = canonical_angle(t)
    w = fejer_weights(n)
    out = np.full(np.shape(t), w[0])
    for j in range(1, n + 1):
        out = out + 2.0 * w[j] * np.cos(j * t)
    return out


@lru_cache(maxsize=8)
def _roots(N: int) -> np.ndarray:
    r = np.exp(1j * TWO_PI * np.arange(N) / N)
    r.setflags(write=False)
    return r


def _grid_exp(N: int, j: int) -> np.ndarray:
    """e^{ij t_k} on the grid; j*k is reduced mod N in integers first."""
    return _roots(N)[(j * np.arange(N)) % N]


def fourier_coeffs(samples, n: int) -> np.ndarray:
    """Discrete coefficients f^(j) = (1/N) sum_k f(t_k) e^{-ij t_k}, j = -n..n.

    Index ``n + j`` of the returned array holds f^(j).
    """
    s = np.asarray(samples, dtype=float).reshape(-1)
    N = s.size
    if n < 0:
        raise ValueError("order must be nonnegative")
    if 2 * n > N:
        raise AliasingError(f"grid of {N} nodes cannot resolve order {n} "
                            f"(need N >= 2n)")
    out = np.empty(2 * n + 1, dtype=complex)
    for j in range(-n, n + 1):
        out[n + j] = np.dot(_grid_exp(N, -j), s) / N
    return out


@dataclass(frozen=True, eq=False)
class FejerMean:
    n: int
    fourier_coeffs: np.ndarray
    recentered: bool
    grid_size: int
    offset: float = 0.0  # sigma_n(0), subtracted when recentered

    def _sum(self, exp_of) -> np.ndarray:
        # ascending |j|, pairing +j and -j, for a reproducible summation order
        c, n = self.fourier_coeffs, self.n
        w = fejer_weights(n)
        acc = w[0] * c[n] * np.ones_like(exp_of(0))
        for j in range(1, n + 1):
            acc = acc + w[j] * (c[n + j] * exp_of(j) + c[n - j] * exp_of(-j))
        return acc

    def _real(self, z) -> np.ndarray:
        resid = float(np.max(np.abs(z.imag))) if z.size else 0.0
        if resid > IMAG_TOL:
            raise ValueError(f"imaginary residue {resid:.3e} exceeds {IMAG_TOL}")
        out = z.real
        return out - self.offset if self.recentered else out

    def __call__(self, t):
        t = canonical_angle(t)
        flat = np.atleast_1d(t).reshape(-1)
        vals = self._real(self._sum(lambda j: np.exp(1j * j * flat)))
        return vals.reshape(np.shape(t))

    def on_grid(self) -> np.ndarray:
        N = self.grid_size
        return self._real(self._sum(lambda j: _grid_exp(N, j)))


def fejer_mean(samples, n: int, recenter: bool = False) -> tuple[FejerMean, np.ndarray]:
    """sigma_n (or beta_n = sigma_n - sigma_n(0)) and its values on the grid."""
    s = np.asarray(samples, dtype=float).reshape(-1)
    coeffs = fourier_coeffs(s, n)
    sigma = FejerMean(n, coeffs, False, s.size)
    grid = sigma.on_grid()
    if not recenter:
        return sigma, grid
    beta = FejerMean(n, coeffs, True, s.size, offset=float(grid[0]))
    return beta, grid - grid[0]


def fejer_convolution(samples, n: int) -> np.ndarray:
    """(1/N) sum_k K_n(tau_k) f(t - tau_k) on the grid, kernel in closed form."""
    s = np.asarray(samples, dtype=float).reshape(-1)
    N = s.size
    kern = fejer_kernel(n, TorusGrid(N).nodes)
    idx = (np.arange(N)[:, None] - np.arange(N)[None, :]) % N
    return (s[idx] * kern[None, :]).sum(axis=1) / N


def fejer_density_check(samples, alpha: float, orders=(4, 16, 64, 256)) -> ConvergenceTrace:
    """Contraction, littleness certificate and pointwise error of beta_n per order."""
    if not 0 < alpha < 1:
        raise ValueError(f"alpha must lie in (0, 1), got {alpha}")
    f = np.asarray(samples, dtype=float).reshape(-1)
    grid = TorusGrid(f.size)
    d = grid.dist()
    da = d ** alpha
    lip_f = lip_of(f, da)
    if lip_f > 1.0 + HOLDER_TOL:
        raise UnitBallError(f"grid Hölder-{alpha} constant of f is {lip_f:.6g} > 1")
    trace = ConvergenceTrace("fejer", alpha, meta={"grid": f.size,
                                                   "lip_alpha_f": lip_f})
    for n in orders:
        _, sigma = fejer_mean(f, n)
        beta_fn, beta = fejer_mean(f, n, recenter=True)
        kern = fejer_kernel(n, grid.nodes)
        conv = fejer_convolution(f, n)
        lip_sigma = lip_of(sigma, da)
        trace.records.append(TraceRecord(
            n=int(n), size=int(n), lip_alpha=lip_sigma, lip_base=lip_of(sigma, d),
            sup_error=float(np.max(np.abs(beta - f))),
            extras={"lip_alpha_beta": lip_of(beta, da),
                    "beta_at_zero": float(beta_fn(0.0)[()]),
                    "beta_grid_zero": float(beta[0]),
                    "kernel_min": float(kern.min()),
                    "kernel_mean": float(kern.mean()),
                    "convolution_gap": float(np.max(np.abs(conv - sigma)))}))
    return trace


def check_trace(trace: ConvergenceTrace) -> list[Verdict]:
    lip_f = trace.meta["lip_alpha_f"]
    vs = []
    for r in trace.records:
        e = r.extras
        vs.append(check("contraction", r.lip_alpha, lip_f + HOLDER_TOL, r.n))
        vs.append(Verdict("recentering", e["beta_at_zero"] == 0.0
                          and e["beta_grid_zero"] == 0.0,
                          -abs(e["beta_at_zero"]), r.n))
        vs.append(check("shift_invariance",
                        abs(e["lip_alpha_beta"] - r.lip_alpha), 1e-12, r.n))
        vs.append(check("kernel_nonnegative", -e["kernel_min"], 0.0, r.n))
        vs.append(check("kernel_mean", abs(e["kernel_mean"] - 1.0), 1e-10, r.n))
        vs.append(check("convolution_agreement", e["convolution_gap"], 1e-8, r.n))
    vs.append(error_decrease(trace))
    return vs
