"""Machine-readable verification reports: JSON, delimited CSV, and a
rendered pass/fail summary figure.

Reports are deterministic for a given configuration: cases are sorted by
their identifying inputs, never by execution order, so parallel and serial
runs produce identical output (the wall-time field excepted).
"""

from __future__ import annotations

import csv
import json
import time
from dataclasses import dataclass, field as dc_field
from pathlib import Path


@dataclass(frozen=True)
class CaseRecord:
    case_id: str
    inputs: dict
    expected: str
    computed: str
    verdict: bool

    def to_json(self) -> dict:
        return {"case": self.case_id, "inputs": self.inputs,
                "expected": self.expected, "computed": self.computed,
                "verdict": "pass" if self.verdict else "FAIL"}


@dataclass
class VerificationReport:
    command: str
    config: dict
    cases: list = dc_field(default_factory=list)
    wall_time: float = 0.0

    @property
    def failures(self) -> int:
        return sum(1 for c in self.cases if not c.verdict)

    @property
    def exit_code(self) -> int:
        return 0 if self.failures == 0 else 1

    def sort_cases(self):
        self.cases.sort(key=lambda c: c.case_id)

    def to_json(self) -> dict:
        return {
            "command": self.command,
            "config": self.config,
            "cases": [c.to_json() for c in self.cases],
            "summary": {"cases": len(self.cases),
                        "passes": len(self.cases) - self.failures,
                        "failures": self.failures},
            "wall_time": self.wall_time,
        }


def run_report(command: str, config: dict, case_iter) -> VerificationReport:
    """Build a sorted report; case_iter may be an iterable of CaseRecord or a
    zero-argument callable producing one (so the wall time covers the run)."""
    t0 = time.perf_counter()
    report = VerificationReport(command, config)
    report.cases = list(case_iter() if callable(case_iter) else case_iter)
    report.sort_cases()
    report.wall_time = time.perf_counter() - t0
    return report


def write_json(report: VerificationReport, path) -> None:
    Path(path).write_text(json.dumps(report.to_json(), indent=2) + "\n")


def write_csv(report: VerificationReport, path) -> None:
    with open(path, "w", newline="") as fh:
        writer = csv.writer(fh)
        writer.writerow(["case", "inputs", "expected", "computed", "verdict"])
        for c in report.cases:
            writer.writerow([c.case_id, json.dumps(c.inputs, sort_keys=True),
                             c.expected, c.computed,
                             "pass" if c.verdict else "FAIL"])


def write_figure(report: VerificationReport, path) -> None:
    """Pass/fail grid: one row per field-like input group, one column per n."""
    import matplotlib
    matplotlib.use("Agg")
    import matplotlib.pyplot as plt

    def row_key(c):
        parts = [str(v) for k, v in sorted(c.inputs.items()) if k not in ("n",)]
        return ",".join(parts) or "all"

    ns = sorted({c.inputs.get("n", 0) for c in report.cases})
    rows = sorted({row_key(c) for c in report.cases})
    n_index = {n: i for i, n in enumerate(ns)}
    r_index = {r: i for i, r in enumerate(rows)}
    grid = [[float("nan")] * len(ns) for _ in rows]
    for c in report.cases:
        grid[r_index[row_key(c)]][n_index[c.inputs.get("n", 0)]] = 1.0 if c.verdict else 0.0

    fig, ax = plt.subplots(figsize=(max(6, len(ns) * 0.12), max(2, len(rows) * 0.3)))
    cmap = matplotlib.colors.ListedColormap(["#c0392b", "#27ae60"])
    ax.imshow(grid, aspect="auto", cmap=cmap, vmin=0, vmax=1, interpolation="nearest")
    ax.set_yticks(range(len(rows)), rows, fontsize=7)
    step = max(1, len(ns) // 24)
    ax.set_xticks(range(0, len(ns), step), [str(n) for n in ns[::step]], fontsize=7)
    ax.set_xlabel("n")
    ax.set_title(f"{report.command}: {len(report.cases)} cases, "
                 f"{report.failures} failures")
    fig.tight_layout()
    fig.savefig(path, dpi=150)
    plt.close(fig)


def emit(report: VerificationReport, json_path=None, csv_path=None,
         figures_dir=None, quiet=False) -> None:
    if json_path:
        write_json(report, json_path)
    if csv_path:
        write_csv(report, csv_path)
    if figures_dir:
        out = Path(figures_dir)
        out.mkdir(parents=True, exist_ok=True)
        write_figure(report, out / f"{report.command.replace(' ', '_')}.png")
    if not quiet:
        for c in report.cases:
            if not c.verdict:
                print(f"FAIL {c.case_id}: expected {c.expected}, got {c.computed}")
        s = report.to_json()["summary"]
        print(f"{report.command}: {s['passes']}/{s['cases']} passed "
              f"({report.wall_time:.2f}s)")
