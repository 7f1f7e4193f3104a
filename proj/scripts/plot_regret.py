"""Plot mean pseudo-regret curves from a `bandit run` CSV.

Example only; not part of the build or the test suite.

    python3 scripts/plot_regret.py configs/gaussian_pair.csv -o regret.png
"""

import argparse

import matplotlib.pyplot as plt
import pandas as pd


def main() -> None:
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("csv")
    parser.add_argument("-o", "--output", default="regret.png")
    args = parser.parse_args()

    df = pd.read_csv(args.csv)
    # Each policy was run once to the largest horizon; its rows cover every checkpoint.
    df = df[df["horizon"] == df["horizon"].max()]
    stats = df.groupby(["policy", "checkpoint"])["pseudo_regret"].agg(["mean", "sem"]).reset_index()

    fig, ax = plt.subplots(figsize=(7, 4.5))
    for policy, g in stats.groupby("policy"):
        ax.plot(g["checkpoint"], g["mean"], marker="o", ms=3, label=policy)
        ax.fill_between(g["checkpoint"], g["mean"] - 3 * g["sem"], g["mean"] + 3 * g["sem"], alpha=0.2)
    ax.set_xscale("log")
    ax.set_xlabel("round n")
    ax.set_ylabel("pseudo-regret")
    ax.legend(fontsize=8)
    fig.tight_layout()
    fig.savefig(args.output, dpi=150)


if __name__ == "__main__":
    main()
