"""Regenerate tests/goldens/oracle_values.json from the independent oracles.

    python tests/make_goldens.py

Takes roughly a quarter of an hour; the output is committed and only read by the tests.
"""
import json
import os
import sys
import warnings

sys.path.insert(0, os.path.dirname(__file__))

from genop import desitter as ds  # noqa: E402
from genop import sbo  # noqa: E402
from genop.suites import COV_SECTION, FOURIER_PROBES, FOURIER_SECTIONS, POISSON_H  # noqa: E402
from oracles import (  # noqa: E402
    SYMBOLIC_LIBRARY, beta_oracle, holographic_oracle, poisson_oracle, rc_symbolic, sbo_oracle,
)

OUT = os.path.join(os.path.dirname(__file__), "goldens", "oracle_values.json")
# slow oracle values are checkpointed here so an interrupted run can resume
PARTIAL = OUT + ".partial"

HOLO_PAIRS = ((0.3, -0.4), (-0.9, 0.5), (1.5, 0.2))
POISSON_POINTS = ((0.4, 1.1), (-0.7, 2.5), (1.2, 5.0))
RC_POINTS = (0.0, 0.35 + 0.2j, -0.6)
RC_ORDERS = (0, 1, 3, 5)
BETA_CASES = ((-0.5, 1.75), (-0.3, 0.8 + 0.6j), (-0.85, 2.5 - 1.0j))
FOURIER_LAMBDA = 1.2


def c(v):
    return [complex(v).real, complex(v).imag]


def _cached(key, fn):
    done = {}
    if os.path.exists(PARTIAL):
        with open(PARTIAL) as fh:
            done = json.load(fh)
    if key not in done:
        done[key] = c(fn())
        with open(PARTIAL, "w") as fh:
            json.dump(done, fh)
    return done[key]


def main():
    warnings.simplefilter("ignore")
    out = {"sbo": [], "holographic": [], "poisson": [], "brackets": [], "beta": [], "fourier_sbo": []}
    f = sbo.bump_2d(**COV_SECTION)
    for side in "+-":
        for z in (-1.0, 0.0, 1.0):
            out["sbo"].append({"side": side, "mu": -0.5, "z": z, "value": _cached(f"sbo {side} {z}", lambda: sbo_oracle(side, -0.5, f, z))})
            print("sbo", side, z, flush=True)
    h = sbo.bump_1d(**POISSON_H)
    for side in "+-":
        for mu in (-0.5, -0.3):
            for z1, z2 in HOLO_PAIRS:
                out["holographic"].append({"side": side, "mu": mu, "z1": z1, "z2": z2,
                                           "value": c(holographic_oracle(side, mu, h, z1, z2))})
    for side in "+-":
        for t, th in POISSON_POINTS:
            p = ds.DeSitterPoint.from_hyperbolic(t, th)
            out["poisson"].append({"side": side, "lam": 1.6, "t": t, "theta": th,
                                   "value": c(poisson_oracle(side, 1.6, h, p.ambient))})
    for name, expr in SYMBOLIC_LIBRARY.items():
        for z in RC_POINTS:
            for ell in RC_ORDERS:
                out["brackets"].append({"function": name, "z": c(z), "ell": ell,
                                        "value": c(rc_symbolic(expr, ell, z))})
    for lam, w in BETA_CASES:
        out["beta"].append({"lam": lam, "w": c(w), "value": c(beta_oracle(lam, w))})
    fs = sbo.bump_2d(**FOURIER_SECTIONS[0])
    for z in FOURIER_PROBES:
        out["fourier_sbo"].append({"lam": FOURIER_LAMBDA, "z": z,
                                   "value": _cached(f"fourier {z}",
                                                   lambda: sbo_oracle("+", -FOURIER_LAMBDA / 2, fs, z))})
        print("fourier", z, flush=True)
    with open(OUT, "w") as fh:
        json.dump(out, fh, indent=1, sort_keys=True)
        fh.write("\n")
    os.remove(PARTIAL)


if __name__ == "__main__":
    main()
