#!/usr/bin/env python3
"""Regenerate all figure data products into ./figure_data/.

Runs the four CLI exports at their default resolutions:

  map      parameter-space Heisenberg-area map, zero-skewness curve,
           localization border, constant-duration diagonals
  gallery  time/frequency wavelet gallery over beta, gamma in
           {1/3, 1, 3, 9, 27} with Gaussian/quartic approximants
  curves   inverse Heisenberg area and Gaussian similarity vs duration
           for gamma = 1..6 and the Morlet wavelet
  limits   lognormal- and band-pass-limit sup deviations

Takes a couple of minutes single-threaded; set MORSEKIT_THREADS to
parallelize the map sweep (outputs are thread-count independent).
"""

import sys
import time
from pathlib import Path

from morsekit.cli import main

OUT = Path("figure_data")


def run(label, argv):
    t0 = time.time()
    rc = main(argv)
    print(f"[{label}] exit={rc} ({time.time() - t0:.1f}s)")
    if rc != 0:
        sys.exit(rc)


if __name__ == "__main__":
    run("map", ["map", "--out", str(OUT / "map")])
    run("gallery", ["gallery", "--out", str(OUT / "gallery")])
    run(
        "curves",
        ["curves", "--out", str(OUT / "curves"), "--pgrid", "0.5:0.05:8"],
    )
    run(
        "limits-lognormal",
        [
            "limits",
            "--pvalue", "3",
            "--gamma", "1,0.5,0.1,0.01",
            "--target", "lognormal",
            "--out", str(OUT / "limits_lognormal"),
        ],
    )
    run(
        "limits-shannon",
        [
            "limits",
            "--pvalue", "1.5",
            "--gamma", "100,1000",
            "--target", "shannon",
            "--out", str(OUT / "limits_shannon"),
        ],
    )
    print(f"wrote {OUT}/")
