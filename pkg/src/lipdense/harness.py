"""Experiment configuration, execution and report/plot emission."""

from __future__ import annotations

import json
import logging
import os
import time
from dataclasses import asdict, dataclass, field
from pathlib import Path

import numpy as np

from . import __version__, bernstein, catalog, cone, fejer
from .lipschitz import load_function_csv
from .metric import load_space
from .trace import ConvergenceTrace, Verdict, trace_csv

log = logging.getLogger(__name__)

OUT_ENV = "LIPDENSE_OUT"
CONSTRUCTIONS = ("cone", "bernstein", "fejer")


class ConfigError(ValueError):
    pass


def default_out_dir() -> Path:
    return Path(os.environ.get(OUT_ENV, "."))


@dataclass
class ExperimentConfig:
    construction: str
    fn: str
    alpha: float
    indices: list[int]
    space: str | None = None
    grid: int = 256
    seed: int | None = None
    out: str | None = None
    plot: str | None = None

    def validate(self) -> None:
        if self.construction not in CONSTRUCTIONS:
            raise ConfigError(f"construction: expected one of {CONSTRUCTIONS}, "
                              f"got {self.construction!r}")
        if not 0 < self.alpha < 1:
            raise ConfigError(f"alpha: must lie in (0, 1), got {self.alpha}")
        if not self.indices:
            raise ConfigError("indices: at least one value required")
        if any(i < 1 for i in self.indices):
            raise ConfigError(f"indices: values must be positive, got {self.indices}")
        if any(b <= a for a, b in zip(self.indices, self.indices[1:])):
            raise ConfigError(f"indices: values must be strictly ascending, "
                              f"got {self.indices}")
        if self.grid < 1:
            raise ConfigError(f"grid: must be positive, got {self.grid}")
        if self.construction == "cone":
            if not self.space:
                raise ConfigError("space: required for the cone construction")
            head = self.space.split(":")[0]
            if (head in catalog.RANDOM_SPACES and not Path(self.space).exists()
                    and self.seed is None):
                raise ConfigError(f"seed: required with random space {self.space!r}")
        if self.fn.split(":")[0] == "random" and self.seed is None:
            raise ConfigError("seed: required with the random function")

    def out_dir(self) -> Path:
        return Path(self.out) if self.out else default_out_dir()


@dataclass
class ReportBundle:
    config: ExperimentConfig
    trace: ConvergenceTrace
    verdicts: list[Verdict]
    meta: dict = field(default_factory=dict)

    @property
    def passed(self) -> bool:
        return all(v.passed for v in self.verdicts)

    def csv_text(self) -> str:
        return trace_csv(self.trace, self.verdicts)

    def to_dict(self) -> dict:
        return {"config": asdict(self.config), "meta": self.meta,
                "passed": self.passed,
                "verdicts": [asdict(v) for v in self.verdicts],
                "trace": self.trace.to_dict()}


def _is_file(src: str) -> bool:
    return Path(src).is_file()


def _values_from_csv(path) -> tuple[np.ndarray, np.ndarray]:
    import csv
    xs, ys = [], []
    with open(path, newline="") as fh:
        for row in csv.reader(fh):
            if not row or row[0].startswith("#"):
                continue
            try:
                x, y = float(row[0]), float(row[1])
            except ValueError:
                continue  # header
            xs.append(x)
            ys.append(y)
    return np.asarray(xs), np.asarray(ys)


def _run_cone(cfg: ExperimentConfig) -> tuple[ConvergenceTrace, list[Verdict]]:
    space = (load_space(cfg.space) if _is_file(cfg.space)
             else catalog.make_space(cfg.space, cfg.seed))
    if _is_file(cfg.fn):
        f = load_function_csv(cfg.fn, space)
    else:
        f = catalog.space_function(cfg.fn, space, cfg.alpha, cfg.seed)
    trace, _ = cone.little_approx_sequence(space, f, cfg.alpha, max(cfg.indices))
    if not trace.meta["unit_ball"]:
        log.warning("Lip_{d^%s}(f) = %.6g exceeds 1; certificates scaled by it",
                    cfg.alpha, trace.meta["lip_alpha_f"])
    keep = set(cfg.indices)
    trace.records = [r for r in trace.records if r.n in keep]
    return trace, cone.check_trace(trace)


def _run_bernstein(cfg: ExperimentConfig):
    if _is_file(cfg.fn):
        xs, ys = _values_from_csv(cfg.fn)
        f = lambda x: np.interp(x, xs, ys)  # noqa: E731
    else:
        f = catalog.interval_function(cfg.fn)
    if float(np.asarray(f(np.array([0.0])))[0]) != 0.0:
        raise ConfigError("fn: must vanish at the base point 0")
    trace = bernstein.bernstein_density_check(f, cfg.alpha, cfg.grid, cfg.indices)
    return trace, bernstein.check_trace(trace)


def _run_fejer(cfg: ExperimentConfig):
    if _is_file(cfg.fn):
        _, samples = _values_from_csv(cfg.fn)
    else:
        f = catalog.torus_function(cfg.fn)
        samples = f(fejer.TorusGrid(cfg.grid).nodes)
    if samples[0] != 0.0:
        raise ConfigError("fn: must vanish at the base node t = 0")
    trace = fejer.fejer_density_check(samples, cfg.alpha, cfg.indices)
    return trace, fejer.check_trace(trace)


_RUNNERS = {"cone": _run_cone, "bernstein": _run_bernstein, "fejer": _run_fejer}


def run_experiment(cfg: ExperimentConfig, write: bool = True) -> ReportBundle:
    """Run the selected density check; write ``<construction>_trace.csv`` and
    ``<construction>_report.json`` (plus the plot, if requested)."""
    cfg.validate()
    start = time.perf_counter()
    try:
        trace, verdicts = _RUNNERS[cfg.construction](cfg)
    except (bernstein.UnitBallError, fejer.AliasingError) as exc:
        raise ConfigError(str(exc)) from exc
    bundle = ReportBundle(cfg, trace, verdicts, meta={
        "version": __version__, "wall_time_s": time.perf_counter() - start})
    if write:
        out = cfg.out_dir()
        out.mkdir(parents=True, exist_ok=True)
        stem = cfg.construction
        (out / f"{stem}_trace.csv").write_text(bundle.csv_text())
        (out / f"{stem}_report.json").write_text(
            json.dumps(bundle.to_dict(), indent=2, default=float))
        if cfg.plot:
            emit_plot(trace, cfg.plot)
    return bundle


def load_report(path) -> dict:
    return json.loads(Path(path).read_text())


def emit_plot(trace: ConvergenceTrace, path) -> Path:
    """Line chart of sup error, Hölder constant and bound against n (log-y, SVG)."""
    if not len(trace):
        raise ValueError("cannot plot an empty trace")
    import matplotlib
    matplotlib.use("Agg")
    import matplotlib.pyplot as plt

    def positive(vals):
        return [v if v is not None and v > 0 else np.nan for v in vals]

    n = trace.column("n")
    fig, ax = plt.subplots(figsize=(6, 4))
    ax.semilogy(n, positive(trace.column("sup_error")), "o-", label="sup error")
    ax.semilogy(n, positive(trace.column("lip_alpha")), "s--",
                label=rf"Lip$_{{d^{{{trace.alpha}}}}}$")
    bounds = trace.column("bound")
    if any(b is not None for b in bounds):
        ax.semilogy(n, positive(bounds), "k:", label="error bound")
    ax.set_xlabel("n")
    ax.set_title(f"{trace.construction}, alpha = {trace.alpha}")
    ax.grid(True, which="both", alpha=0.3)
    ax.legend()
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    fig.savefig(path, format=path.suffix.lstrip(".") or "svg",
                bbox_inches="tight")
    plt.close(fig)
    return path
