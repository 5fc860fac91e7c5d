#!/usr/bin/env python3
"""Plot trajectory CSVs produced by `vsgsim simulate`.

Accepts one or more CSV files (they overlay, which makes decoupler on/off
comparisons easy) and draws four panels: source/grid active power, reactive
power, frequency, and the adapted control constants.

    vsgsim simulate rx25_high_z --decoupler off --out base.csv
    vsgsim simulate rx25_high_z --decoupler on  --out dec.csv
    python3 tools/plot_csv.py base.csv dec.csv --out rx25_high_z.png
"""

import argparse
import csv
import pathlib
import sys

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt


def read_trajectory(path):
    """Return {column: [floats]} for one trajectory CSV, skipping footers."""
    with open(path, newline="") as f:
        reader = csv.reader(f)
        header = next(reader)
        data = {name: [] for name in header}
        for row in reader:
            if not row or row[0].startswith("#"):
                continue
            for name, cell in zip(header, row):
                data[name].append(float(cell))
    return data


def main():
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("csv", nargs="+", help="trajectory CSV file(s)")
    parser.add_argument("--out", help="output image path (default: show nothing, "
                                      "write <first-csv>.png)")
    args = parser.parse_args()

    out = args.out or str(pathlib.Path(args.csv[0]).with_suffix(".png"))

    fig, axes = plt.subplots(4, 1, figsize=(9, 11), sharex=True)
    for path in args.csv:
        run = read_trajectory(path)
        label = pathlib.Path(path).stem
        t = run["t"]
        axes[0].plot(t, [p / 1e3 for p in run["p_e"]], label=f"{label} p_e")
        axes[0].plot(t, [p / 1e3 for p in run["p_grid"]], "--",
                     label=f"{label} p_grid")
        axes[1].plot(t, [q / 1e3 for q in run["q_e"]], label=f"{label} q_e")
        axes[2].plot(t, run["omega"], label=label)
        axes[3].plot(t, [d / 1e3 for d in run["d"]], label=f"{label} d/1000")
        axes[3].plot(t, run["j"], "--", label=f"{label} j")
        axes[3].plot(t, [k * 100 for k in run["k_q"]], ":",
                     label=f"{label} 100 k_q")

    axes[0].set_ylabel("active power [kW]")
    axes[1].set_ylabel("reactive power [kvar]")
    axes[2].set_ylabel("omega [rad/s]")
    axes[3].set_ylabel("control constants")
    axes[3].set_xlabel("t [s]")
    for ax in axes:
        ax.grid(True, alpha=0.3)
        ax.legend(loc="best", fontsize=8)

    fig.tight_layout()
    fig.savefig(out, dpi=130)
    print(f"wrote {out}")


if __name__ == "__main__":
    sys.exit(main())
