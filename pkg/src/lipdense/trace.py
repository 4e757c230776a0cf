"""Convergence traces and invariant verdicts shared by the three constructions."""

from __future__ import annotations

import csv
import io
import math
from dataclasses import asdict, dataclass, field

CSV_COLUMNS = ("n", "net_size_or_degree", "lip_alpha", "lip_base",
               "sup_error", "paper_bound", "verdict")


@dataclass
class TraceRecord:
    n: int
    size: int
    lip_alpha: float
    lip_base: float
    sup_error: float
    bound: float | None = None
    extras: dict = field(default_factory=dict)


@dataclass
class Verdict:
    name: str
    passed: bool
    slack: float
    n: int | None = None
    detail: str = ""

    def line(self) -> str:
        where = "" if self.n is None else f" n={self.n}"
        status = "PASS" if self.passed else "FAIL"
        return f"{status} {self.name}{where} slack={self.slack:.3e} {self.detail}".rstrip()


def check(name: str, measured: float, limit: float, n=None, detail="") -> Verdict:
    """Verdict for ``measured <= limit``; slack is ``limit - measured``."""
    return Verdict(name, bool(measured <= limit), float(limit - measured), n,
                   detail)


@dataclass
class ConvergenceTrace:
    construction: str
    alpha: float
    records: list[TraceRecord] = field(default_factory=list)
    meta: dict = field(default_factory=dict)

    def __len__(self) -> int:
        return len(self.records)

    def column(self, name: str) -> list:
        return [getattr(r, name) for r in self.records]

    def to_dict(self) -> dict:
        return {"construction": self.construction, "alpha": self.alpha,
                "meta": self.meta,
                "records": [asdict(r) for r in self.records]}

    @classmethod
    def from_dict(cls, data: dict) -> "ConvergenceTrace":
        recs = [TraceRecord(**r) for r in data["records"]]
        return cls(data["construction"], data["alpha"], recs,
                   data.get("meta", {}))


def _fmt(x) -> str:
    if x is None or (isinstance(x, float) and math.isnan(x)):
        return ""
    if isinstance(x, float):
        return repr(x)
    return str(x)


def trace_csv(trace: ConvergenceTrace, verdicts: list[Verdict]) -> str:
    """Render the fixed CSV schema; a row passes iff all its verdicts pass."""
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(CSV_COLUMNS)
    for r in trace.records:
        ok = all(v.passed for v in verdicts if v.n == r.n)
        w.writerow([r.n, r.size, _fmt(r.lip_alpha), _fmt(r.lip_base),
                    _fmt(r.sup_error), _fmt(r.bound), "pass" if ok else "fail"])
    return buf.getvalue()


def read_trace_csv(text: str) -> list[dict]:
    rows = list(csv.DictReader(io.StringIO(text)))
    for row in rows:
        for key in CSV_COLUMNS[:-1]:
            row[key] = float(row[key]) if row[key] != "" else None
    return rows
