#!/usr/bin/env python3
"""Quick plots of simulator output.

    plot_figures.py trace OUT_DIR      entanglement partition and omega_RC vs time
    plot_figures.py sweep OUT_DIR      eta and phi columns vs the swept value
"""

import sys
from pathlib import Path

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt
import pandas as pd


def plot_trace(out: Path) -> None:
    for path in sorted(out.glob("trace_site*.csv")):
        df = pd.read_csv(path)
        fig, ax = plt.subplots(figsize=(6, 4))
        for col in df.columns[1:-1]:
            ax.plot(df["time_ps"], df[col], label=col)
        ax.plot(df["time_ps"], df["omega_RC"], "k--", label="omega_RC")
        ax.set_xlabel("t (ps)")
        ax.legend()
        fig.tight_layout()
        fig.savefig(path.with_suffix(".png"), dpi=150)
        plt.close(fig)


def plot_sweep(out: Path) -> None:
    df = pd.read_csv(out / "results.csv")
    var = df.columns[0]
    df = df[df["status"] == "ok"]
    columns = ["eta"] + [c for c in df.columns if c.startswith("phi_")]
    for col in columns:
        fig, ax = plt.subplots(figsize=(5, 4))
        for site, rows in df.groupby("initial_site"):
            ax.plot(rows[var], rows[col], "o-", ms=3, label=f"site {site}")
        if var != "correlation_length_angstrom":
            ax.set_xscale("log")
        ax.set_xlabel(var)
        ax.set_ylabel(col)
        ax.legend()
        fig.tight_layout()
        fig.savefig(out / f"{col}.png", dpi=150)
        plt.close(fig)


def main() -> int:
    if len(sys.argv) != 3 or sys.argv[1] not in ("trace", "sweep"):
        print(__doc__, file=sys.stderr)
        return 2
    out = Path(sys.argv[2])
    plot_trace(out) if sys.argv[1] == "trace" else plot_sweep(out)
    return 0


if __name__ == "__main__":
    sys.exit(main())
