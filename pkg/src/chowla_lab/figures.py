"""Matplotlib renderers for the report bundle.

Figures are written next to the delimited output of the ``report`` command.
Only file output is supported (Agg backend); nothing here opens a window.
"""

from __future__ import annotations

import math
from typing import Iterable, Sequence

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt  # noqa: E402

from .oracle import FrontierEntry, SidonExperiment  # noqa: E402
from .reports import LemmaReport  # noqa: E402


def sidon_ratio_figure(experiments: Sequence[SidonExperiment], path: str) -> None:
    """Certified norm over sqrt(n) for the difference-set construction."""
    ns = [e.n for e in experiments]
    ratios = [e.ratio for e in experiments]
    bounds = [e.symmetric_bound / math.sqrt(e.n) for e in experiments]
    fig, ax = plt.subplots(figsize=(6, 4))
    ax.plot(ns, ratios, "o-", label="certified norm / sqrt(n)")
    ax.plot(ns, bounds, "s--", color="gray", label="algebraic bound m / sqrt(n)")
    ax.set_xlabel("n = |A|")
    ax.set_ylabel("one-sided norm / sqrt(n)")
    ax.set_title("Sidon difference-set upper bound")
    ax.legend()
    ax.grid(True, alpha=0.3)
    fig.tight_layout()
    fig.savefig(path, dpi=150)
    plt.close(fig)


def frontier_figure(entries: Sequence[FrontierEntry], path: str) -> None:
    """Exact minima k(n, M) of n-term cosine sums, one line per pool bound M."""
    by_m: dict[int, list[FrontierEntry]] = {}
    for e in entries:
        by_m.setdefault(e.m_bound, []).append(e)
    fig, ax = plt.subplots(figsize=(6, 4))
    for m_bound in sorted(by_m):
        rows = sorted(by_m[m_bound], key=lambda e: e.n)
        ax.plot([r.n for r in rows], [r.k_value for r in rows],
                "o-", label=f"M = {m_bound}")
    ax.set_xlabel("n (terms in the cosine sum)")
    ax.set_ylabel("k(n, M), cosine convention")
    ax.set_title("Brute-force frontier")
    ax.legend()
    ax.grid(True, alpha=0.3)
    fig.tight_layout()
    fig.savefig(path, dpi=150)
    plt.close(fig)


def slack_histogram(reports: Iterable[LemmaReport], path: str) -> None:
    """Distribution of inequality slacks across a verification run."""
    slacks = [r.slack for r in reports if not r.vacuous]
    fig, ax = plt.subplots(figsize=(6, 4))
    if slacks:
        ax.hist(slacks, bins=40, color="steelblue", edgecolor="black")
    ax.set_xlabel("slack (rhs - lhs)")
    ax.set_ylabel("checks")
    ax.set_title("Inequality slack distribution")
    ax.grid(True, alpha=0.3)
    fig.tight_layout()
    fig.savefig(path, dpi=150)
    plt.close(fig)
