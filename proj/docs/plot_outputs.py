#!/usr/bin/env python3
"""Quick-look plots of tbsim outputs.

    plot_outputs.py run DIR        |J|, |M| and the squeezing spectrum of a simulate run
    plot_outputs.py sweep FILE     r_l against sqrt(N_p) from sweep.csv
"""
import argparse
from pathlib import Path

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt
import numpy as np


def load(path):
    with open(path) as f:
        lines = [line for line in f if not line.startswith("#")]
    return np.genfromtxt(lines, delimiter=",", names=True)


def kernel_image(ax, path, title):
    d = load(path)
    nu = np.unique(d["nu_s"])
    n = nu.size
    img = d["abs"].reshape(n, n)
    ax.imshow(img.T, origin="lower", extent=[nu[0], nu[-1], nu[0], nu[-1]], cmap="viridis")
    ax.set_xlabel(r"$\nu_s$")
    ax.set_ylabel(r"$\nu_i$")
    ax.set_title(title)


def plot_run(directory):
    directory = Path(directory)
    panels = [p for p in ("jsa.csv", "moment.csv") if (directory / p).exists()]
    fig, axes = plt.subplots(1, len(panels) + 1, figsize=(4.5 * (len(panels) + 1), 4))
    axes = np.atleast_1d(axes)
    for ax, name in zip(axes, panels):
        kernel_image(ax, directory / name, "|J|" if name == "jsa.csv" else "|M|")
    sq = load(directory / "squeezing.csv")
    axes[-1].semilogy(sq["mode"], sq["r"], "o")
    axes[-1].set_xlabel("mode")
    axes[-1].set_ylabel("r")
    fig.tight_layout()
    out = directory / "overview.png"
    fig.savefig(out, dpi=120)
    print(out)


def plot_sweep(path):
    d = load(path)
    fig, ax = plt.subplots(figsize=(5, 4))
    for l in range(1, 5):
        ax.loglog(d["sqrt_np"], d[f"r_{l}"], label=f"$r_{l}$")
    low = d["r_1"][0] / d["sqrt_np"][0]
    ax.loglog(d["sqrt_np"], low * d["sqrt_np"], "k--", lw=0.8, label="linear")
    ax.set_xlabel(r"$\sqrt{N_p}$")
    ax.set_ylabel("r")
    ax.legend()
    fig.tight_layout()
    out = Path(path).with_suffix(".png")
    fig.savefig(out, dpi=120)
    print(out)


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("kind", choices=["run", "sweep"])
    ap.add_argument("path")
    args = ap.parse_args()
    plot_run(args.path) if args.kind == "run" else plot_sweep(args.path)


if __name__ == "__main__":
    main()
