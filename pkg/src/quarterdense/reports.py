"""Report writers: delimited tables, JSON certificates, and figures.

Every experiment path emits its table as CSV and, next to it, a rendered
PNG of the same data; verification reports are JSON-first, with graph6
strings for certificates and counterexamples.
"""

from __future__ import annotations

import csv
import json
from fractions import Fraction
from pathlib import Path
from typing import Optional, Sequence

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt  # noqa: E402


def _default(obj):
    if isinstance(obj, Fraction):
        return str(obj)
    if isinstance(obj, (set, frozenset)):
        return sorted(obj)
    raise TypeError(f"not JSON serializable: {type(obj)}")


def write_json(path: Path, obj) -> Path:
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    path.write_text(json.dumps(obj, indent=2, default=_default, sort_keys=True) + "\n")
    return path


def write_csv(path: Path, rows: Sequence[dict], fieldnames: Optional[Sequence[str]] = None) -> Path:
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    if fieldnames is None:
        fieldnames = list(rows[0].keys()) if rows else []
    with path.open("w", newline="") as fh:
        writer = csv.DictWriter(fh, fieldnames=fieldnames)
        writer.writeheader()
        for row in rows:
            writer.writerow(row)
    return path


def fig_biclique_growth(rows: Sequence[dict], path: Path, bound_factor: float = 4.0) -> Path:
    """Complement bi-clique sizes against log2 n with the 4 log2 n guide."""
    path = Path(path)
    fig, ax = plt.subplots(figsize=(6, 4))
    ns = sorted({r["n"] for r in rows})
    for n in ns:
        ys = [r["size"] for r in rows if r["n"] == n]
        ax.scatter([n] * len(ys), ys, s=18, color="tab:blue", alpha=0.7)
    import math

    xs = ns
    ax.plot(xs, [bound_factor * math.log2(n) for n in xs], "r--", label=f"{bound_factor:g} log2 n")
    ax.set_xlabel("n")
    ax.set_ylabel("largest balanced empty pair")
    ax.set_title("four-clique construction: complement bi-clique growth")
    ax.legend()
    fig.tight_layout()
    fig.savefig(path, dpi=150)
    plt.close(fig)
    return path


def fig_separator_measurements(rows: Sequence[dict], path: Path) -> Path:
    """Separator size against sqrt(crossings) on log-log axes."""
    path = Path(path)
    fig, ax = plt.subplots(figsize=(6, 4))
    xs = [r["crossings"] for r in rows]
    ys = [r["separator_size"] for r in rows]
    ax.loglog(xs, ys, "o", color="tab:blue", label="measured")
    import math

    xr = sorted(set(xs))
    if xr:
        c = ys[0] / math.sqrt(xs[0]) if xs[0] else 1.0
        ax.loglog(xr, [c * math.sqrt(x) for x in xr], "r--", label="sqrt reference")
    ax.set_xlabel("crossings")
    ax.set_ylabel("planarization separator size")
    ax.set_title("separator scaling")
    ax.legend()
    fig.tight_layout()
    fig.savefig(path, dpi=150)
    plt.close(fig)
    return path


def fig_embedding_outcomes(rows: Sequence[dict], path: Path) -> Path:
    """Success count and failure-step histogram for an embedding batch."""
    path = Path(path)
    fig, ax = plt.subplots(figsize=(6, 4))
    steps = [r["failure_step"] for r in rows if r["failure_step"] != ""]
    succ = sum(1 for r in rows if r["success"])
    if steps:
        ax.hist(steps, bins=range(1, max(steps) + 2), color="tab:red", alpha=0.7, label="failures by step")
    ax.axhline(succ, color="tab:green", linestyle="--", label=f"successes: {succ}/{len(rows)}")
    ax.set_xlabel("failure step")
    ax.set_ylabel("runs")
    ax.set_title("embedding batch outcomes")
    ax.legend()
    fig.tight_layout()
    fig.savefig(path, dpi=150)
    plt.close(fig)
    return path


def fig_min_phi_histogram(values: Sequence[Fraction], path: Path) -> Path:
    """Distribution of exact minima with the 1/4 threshold marked."""
    path = Path(path)
    fig, ax = plt.subplots(figsize=(6, 4))
    ax.hist([float(v) for v in values], bins=24, color="tab:blue", alpha=0.8)
    ax.axvline(0.25, color="tab:red", linestyle="--", label="1/4")
    ax.set_xlabel("min phi")
    ax.set_ylabel("graphs")
    ax.set_title("exact simplex minima over admissible-free graphs")
    ax.legend()
    fig.tight_layout()
    fig.savefig(path, dpi=150)
    plt.close(fig)
    return path
