"""Matplotlib rendering of scaling tables and bisection traces.

Figures are written straight to files (Agg backend) next to the
delimited/JSON output; nothing here affects computed numbers.
"""

from __future__ import annotations

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt  # noqa: E402

from .mclab import PcEstimate, wilson_interval  # noqa: E402


def render_scaling_figure(rows, path: str, kind: str) -> str:
    rows = [r for r in rows if r.p_modified is not None]
    if not rows:
        raise ValueError("no complete rows to plot")
    ns = [r.n for r in rows]
    fig, (ax1, ax2) = plt.subplots(1, 2, figsize=(9.0, 3.6))
    ax1.plot(ns, [r.p_expectation for r in rows], "o-", label="p_E")
    ax1.plot(ns, [r.p_modified for r in rows], "s-", label="p~_E")
    pc_rows = [r for r in rows if r.pc is not None]
    if pc_rows:
        ax1.errorbar(
            [r.n for r in pc_rows],
            [r.pc.p_hat for r in pc_rows],
            yerr=[
                [r.pc.p_hat - r.pc.ci_low for r in pc_rows],
                [r.pc.ci_high - r.pc.p_hat for r in pc_rows],
            ],
            fmt="^",
            capsize=3,
            label="p_c (MC)",
        )
    ax1.set_xscale("log")
    ax1.set_yscale("log")
    ax1.set_xlabel("n")
    ax1.set_ylabel("probability")
    ax1.set_title(f"{kind}: thresholds vs n")
    ax1.legend()
    ax2.plot(ns, [r.n_p_modified for r in rows], "s-", label="n * p~_E")
    if pc_rows:
        ax2.plot(
            [r.n for r in pc_rows],
            [r.pc_n_over_log_n for r in pc_rows],
            "^-",
            label="p_c * n / log n",
        )
    ax2.set_xlabel("n")
    ax2.set_ylabel("scaled value")
    ax2.set_title("scaling bands")
    ax2.legend()
    fig.tight_layout()
    fig.savefig(path, dpi=150)
    plt.close(fig)
    return path


def render_trace_figure(est: PcEstimate, path: str) -> str:
    fig, ax = plt.subplots(figsize=(6.0, 3.6))
    if est.probes:
        probes = sorted(est.probes, key=lambda pr: pr.p)
        xs = [pr.p for pr in probes]
        ys = [pr.successes / pr.samples for pr in probes]
        bars = [wilson_interval(pr.successes, pr.samples) for pr in probes]
        ax.errorbar(
            xs,
            ys,
            yerr=[[y - lo for y, (lo, _) in zip(ys, bars)], [hi - y for y, (_, hi) in zip(ys, bars)]],
            fmt="o",
            capsize=3,
            label="probe success",
        )
    ax.axhline(0.5, color="grey", lw=0.8, ls="--")
    ax.axvline(est.p_hat, color="C3", lw=1.0, label=f"p_hat = {est.p_hat:.4g}")
    ax.set_xlabel("p")
    ax.set_ylabel("P(contains pattern)")
    ax.set_title(f"bisection trace (n={est.n}, {est.method})")
    ax.legend()
    fig.tight_layout()
    fig.savefig(path, dpi=150)
    plt.close(fig)
    return path
