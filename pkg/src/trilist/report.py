"""Machine-readable benchmark records."""

from __future__ import annotations

import csv
import io
from dataclasses import asdict, dataclass, field

from .engine import CostModel, RunStats

SCHEMA_VERSION = 1


@dataclass
class BenchReport:
    dataset: str
    n: int
    m: int
    algorithm: str
    order: str
    local_order: str
    workers: int
    stats: RunStats
    phases: dict[str, float]
    cost_model: CostModel
    repeats: int = 1
    deterministic: bool = True
    schema_version: int = SCHEMA_VERSION
    diagnostics: dict | None = field(default=None)

    @property
    def consistent(self) -> bool:
        """Probe counter agrees with the cost model where the two are defined to match."""
        if self.stats.algorithm == "aot":
            return self.stats.probes == self.cost_model.aot_cost
        if self.stats.algorithm == "kclist3":
            return self.stats.probes == self.cost_model.kclist_cost
        if self.stats.algorithm == "cf_hash":
            return self.stats.probes == self.cost_model.aot_cost
        return self.stats.merge_comparisons <= self.cost_model.cf_cost

    def as_dict(self) -> dict:
        d = asdict(self)
        d["consistent"] = self.consistent
        return d

    def flat(self) -> dict:
        """One CSV row."""
        row = {
            "schema_version": self.schema_version,
            "dataset": self.dataset,
            "n": self.n,
            "m": self.m,
            "algorithm": self.algorithm,
            "order": self.order,
            "local_order": self.local_order,
            "workers": self.workers,
            "repeats": self.repeats,
            "deterministic": self.deterministic,
            "consistent": self.consistent,
        }
        row.update({k: v for k, v in self.stats.as_dict().items() if k != "algorithm"})
        row.update({f"time_{k}": v for k, v in self.phases.items()})
        row.update(self.cost_model.as_dict())
        return row


def to_csv(reports: list[BenchReport]) -> str:
    if not reports:
        return ""
    rows = [r.flat() for r in reports]
    buf = io.StringIO()
    writer = csv.DictWriter(buf, fieldnames=list(rows[0]))
    writer.writeheader()
    writer.writerows(rows)
    return buf.getvalue()
