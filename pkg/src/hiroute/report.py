"""Render benchmark reports: summary CSV plus matplotlib figures."""

from __future__ import annotations

import csv
from collections import defaultdict
from pathlib import Path

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt  # noqa: E402


def _read_rows(csv_path):
    with open(csv_path, newline="") as f:
        reader = csv.DictReader(f)
        rows = list(reader)
    return rows


def _quartiles(values):
    values = sorted(values)
    n = len(values)

    def q(p):
        if n == 1:
            return values[0]
        idx = p * (n - 1)
        lo = int(idx)
        hi = min(lo + 1, n - 1)
        frac = idx - lo
        return values[lo] * (1 - frac) + values[hi] * frac

    return q(0.25), q(0.5), q(0.75)


def write_summary(rows, out_path):
    """Aggregate per (scenario, algorithm) into a plot-ready summary CSV.

    Carries quartiles, mean, and 1.5-IQR whisker bounds of the running
    time so the box plot can be rebuilt from the file alone.
    """
    groups = defaultdict(list)
    for row in rows:
        groups[(row["scenario"], row["algorithm"])].append(row)
    with open(out_path, "w", newline="") as f:
        writer = csv.writer(f, lineterminator="\n")
        writer.writerow(
            [
                "scenario",
                "algorithm",
                "queries",
                "mean_running_time_ns",
                "q1_running_time_ns",
                "median_running_time_ns",
                "q3_running_time_ns",
                "whisker_low_ns",
                "whisker_high_ns",
                "mean_queue_pushes",
                "mean_settled_nodes",
                "mean_length_increase",
            ]
        )
        for (scenario, algorithm), members in sorted(groups.items()):
            times = [int(r["running_time_ns"]) for r in members]
            pushes = [int(r["queue_pushes"]) for r in members]
            settled = [int(r["settled_nodes"]) for r in members]
            incr = []
            for r in members:
                if r["distance"] != "inf" and r["lower_bound_distance"] not in (
                    "inf",
                    "0",
                ):
                    incr.append(
                        int(r["distance"]) / int(r["lower_bound_distance"]) - 1.0
                    )
            q1, med, q3 = _quartiles(times)
            iqr = q3 - q1
            lo = min((t for t in times if t >= q1 - 1.5 * iqr), default=min(times))
            hi = max((t for t in times if t <= q3 + 1.5 * iqr), default=max(times))
            writer.writerow(
                [
                    scenario,
                    algorithm,
                    len(members),
                    sum(times) / len(times),
                    q1,
                    med,
                    q3,
                    lo,
                    hi,
                    sum(pushes) / len(pushes),
                    sum(settled) / len(settled),
                    sum(incr) / len(incr) if incr else "",
                ]
            )


def render_report(csv_path, out_dir) -> list[Path]:
    """Write summary.csv plus running-time and queue-push figures.

    Returns the paths of everything written.
    """
    out_dir = Path(out_dir)
    out_dir.mkdir(parents=True, exist_ok=True)
    rows = _read_rows(csv_path)
    if not rows:
        raise ValueError(f"no query records in {csv_path}")
    written = []

    summary_path = out_dir / "summary.csv"
    write_summary(rows, summary_path)
    written.append(summary_path)

    groups = defaultdict(list)
    for row in rows:
        groups[(row["scenario"], row["algorithm"])].append(row)
    labels = [f"{s}\n{a}" for s, a in sorted(groups)]
    time_series = [
        [int(r["running_time_ns"]) / 1e6 for r in groups[key]]
        for key in sorted(groups)
    ]
    push_series = [
        [int(r["queue_pushes"]) for r in groups[key]] for key in sorted(groups)
    ]

    fig, ax = plt.subplots(figsize=(max(6, 1.2 * len(labels)), 4.5))
    ax.boxplot(time_series, tick_labels=labels, whis=1.5, showmeans=True)
    ax.set_yscale("log")
    ax.set_ylabel("running time [ms]")
    ax.set_title("Per-query running times")
    fig.tight_layout()
    times_path = out_dir / "running_times.png"
    fig.savefig(times_path, dpi=150)
    plt.close(fig)
    written.append(times_path)

    fig, ax = plt.subplots(figsize=(max(6, 1.2 * len(labels)), 4.5))
    ax.boxplot(push_series, tick_labels=labels, whis=1.5, showmeans=True)
    ax.set_yscale("symlog")
    ax.set_ylabel("queue pushes")
    ax.set_title("Per-query queue pushes")
    fig.tight_layout()
    pushes_path = out_dir / "queue_pushes.png"
    fig.savefig(pushes_path, dpi=150)
    plt.close(fig)
    written.append(pushes_path)
    return written
