"""Figure rendering for sweep results (written alongside the CSV output)."""

from __future__ import annotations

import math
from pathlib import Path

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt

from .sweeps import SweepResult

_X_LABELS = {
    "snr": "SNR (dB)",
    "snapshots": "snapshots",
    "irs_elements": "IRS elements",
    "az_deviation": "azimuth deviation from look direction (deg)",
    "el_deviation": "elevation deviation from look direction (deg)",
}


def render_sweep(result: SweepResult, path: str | Path) -> Path:
    """Render the CRLB (and empirical, if present) RMSE curves to an image file."""
    path = Path(path)
    xs = [r.x for r in result.rows]
    to_deg = math.degrees

    fig, ax = plt.subplots(figsize=(7, 4.5))
    ax.semilogy(xs, [to_deg(r.crlb_rmse_az) for r in result.rows], "o-", label="CRLB azimuth")
    ax.semilogy(xs, [to_deg(r.crlb_rmse_el) for r in result.rows], "s-", label="CRLB elevation")
    if result.has_empirical:
        ax.semilogy(
            xs,
            [to_deg(r.emp_rmse_az) if r.emp_rmse_az is not None else math.nan for r in result.rows],
            "o--", label="empirical azimuth",
        )
        ax.semilogy(
            xs,
            [to_deg(r.emp_rmse_el) if r.emp_rmse_el is not None else math.nan for r in result.rows],
            "s--", label="empirical elevation",
        )
    if result.kind == "snapshots":
        ax.set_xscale("log")
    ax.set_xlabel(_X_LABELS.get(result.kind, result.kind))
    ax.set_ylabel("RMSE (deg)")
    ax.grid(True, which="both", alpha=0.4)
    ax.legend()
    fig.tight_layout()
    fig.savefig(path, dpi=150)
    plt.close(fig)
    return path
