"""Time the compiled kernels against the numpy fallback at full scale (N = 1000).

    python benchmarks/bench_kernels.py [--repeat 5]
"""
import argparse
import timeit

import numpy as np
from scipy.special import gammaln

from photonstat import kernels
from photonstat.combinatorics import bunching_series, log_derangements
from photonstat.spectral import kn_series
from photonstat.statistics import log_base_weights, nc_grid


def cases():
    out = {}
    for n_max in (1000, 3000):
        log_kn = kn_series(0.5, n_max).log_values()
        args = (log_kn, log_derangements(n_max), gammaln(np.arange(n_max + 1) + 1.0))
        out[f"log_bunching_table n_max={n_max}"] = ("log_bunching_table", args)
    freqs = np.random.default_rng(0).normal(size=(1_000_000, 6))
    out["cyclic_overlap_sums 1e6 x 6"] = ("cyclic_overlap_sums", (freqs, 0.125))
    base = log_base_weights(bunching_series(0.5, 1000), 1000)
    log_c = np.log(nc_grid() / 1000)
    out[f"scan_moments N=1000 x {log_c.size} Nc"] = ("scan_moments", (base, log_c))
    return out


def main():
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--repeat", type=int, default=5)
    args = parser.parse_args()

    names = sorted(kernels.BACKENDS)
    print(f"{'kernel':<40}" + "".join(f"{n:>12}" for n in names) + f"{'speedup':>10}")
    for label, (fn, fargs) in cases().items():
        best = {}
        for name in names:
            f = getattr(kernels.BACKENDS[name], fn)
            best[name] = min(timeit.repeat(lambda: f(*fargs), number=1, repeat=args.repeat))
        line = f"{label:<40}" + "".join(f"{best[n] * 1e3:>10.1f}ms" for n in names)
        if "compiled" in best:
            line += f"{best['python'] / best['compiled']:>9.1f}x"
        print(line)


if __name__ == "__main__":
    main()
