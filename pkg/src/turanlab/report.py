"""Machine-readable run reports and their JSON / CSV / table renderings."""

from __future__ import annotations

import csv
import io
import json
from dataclasses import asdict, dataclass, field
from typing import Any

from . import __version__


@dataclass
class RunReport:
    command: str
    entry: str
    params: dict[str, Any]
    rows: list[dict[str, Any]]
    version: str = __version__
    # Volatile fields; only emitted when explicitly requested.
    timing: float | None = None
    cache_hits: list[int] | None = None
    regression: list[dict[str, Any]] = field(default_factory=list)

    def to_dict(self) -> dict[str, Any]:
        d = asdict(self)
        for key in ("timing", "cache_hits"):
            if d[key] is None:
                del d[key]
        return d

    @classmethod
    def from_dict(cls, d: dict[str, Any]) -> RunReport:
        return cls(**d)

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=2, ensure_ascii=False) + "\n"


def _cell(value: Any) -> str:
    if isinstance(value, bool):
        return "yes" if value else "no"
    if isinstance(value, (list, tuple)):
        return " ".join(_cell(v) for v in value)
    if isinstance(value, dict):
        return json.dumps(value, sort_keys=True, separators=(",", ":"))
    return "" if value is None else str(value)


def render_csv(report: RunReport) -> str:
    if not report.rows:
        return ""
    cols = list(report.rows[0])
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(["entry"] + cols)
    for row in report.rows:
        w.writerow([report.entry] + [_cell(row.get(c)) for c in cols])
    return buf.getvalue()


def render_table(report: RunReport) -> str:
    head = f"{report.command} {report.entry}"
    if not report.rows:
        return head + "\n(no rows)\n"
    cols = list(report.rows[0])
    cells = [[_cell(r.get(c)) for c in cols] for r in report.rows]
    widths = [max(len(c), *(len(row[i]) for row in cells)) for i, c in enumerate(cols)]
    lines = [head, "  ".join(c.ljust(w) for c, w in zip(cols, widths)).rstrip()]
    lines += ["  ".join(v.ljust(w) for v, w in zip(row, widths)).rstrip() for row in cells]
    for mismatch in report.regression:
        lines.append(f"REGRESSION n={mismatch['n']}: expected {mismatch['expected']}, got {mismatch['got']}")
    if report.timing is not None:
        lines.append(f"time: {report.timing:.3f}s  cache hits: {report.cache_hits}")
    return "\n".join(lines) + "\n"


def render(report: RunReport, emit: str) -> str:
    if emit == "json":
        return report.to_json()
    if emit == "csv":
        return render_csv(report)
    return render_table(report)
