"""``photonstat`` command-line interface.

Every command writes CSV files (the data contract) into ``--out`` and, with
``--svg``, matching SVG figures.

Exit status: 0 success, 2 configuration error, 3 domain error, 4 I/O error,
5 route-mismatch failure in ``table1``.
"""
from __future__ import annotations

import argparse
import csv
import math
import sys
from pathlib import Path

import numpy as np

from . import __version__
from .combinatorics import bunching_series
from .config import COMMANDS, ConfigError, build_config, overrides_from_strings, read_config_file
from .errors import PhotonStatError, RouteUnavailableError
from .montecarlo import mc_kn_estimate
from .spectral import (
    SpectralModel,
    bunching_factor_S,
    fit_alpha,
    kn_closed_form,
    kn_determinant,
    kn_series,
    kn_table,
)
from .statistics import (
    EnsembleParams,
    coherence_scan,
    ensemble_distribution,
    modified_bose_einstein,
    nc_grid,
    transition_point,
)

EXIT_OK = 0
EXIT_CONFIG = 2
EXIT_DOMAIN = 3
EXIT_IO = 4
EXIT_CHECK = 5

TABLE1_TOL = 1e-10


def _fmt(x):
    if x is None:
        return ""
    if isinstance(x, (int, np.integer)):
        return str(int(x))
    return f"{float(x):.12g}"


def write_csv(path: Path, header, rows):
    path.parent.mkdir(parents=True, exist_ok=True)
    with open(path, "w", newline="", encoding="utf-8") as fh:
        writer = csv.writer(fh, lineterminator="\n")
        writer.writerow(header)
        for row in rows:
            writer.writerow([_fmt(v) for v in row])
    print(f"wrote {path}")


def _svg(cfg, name, curves, xlabel, ylabel, logx=False):
    if not cfg.emit_svg:
        return
    from .plotting import line_plot

    path = cfg.output_dir / name
    line_plot(path, curves, xlabel, ylabel, logx=logx)
    print(f"wrote {path}")


def cmd_table1(cfg):
    rows = []
    worst = 0.0
    for K in cfg.K_list:
        model = SpectralModel.from_indistinguishability(K)
        for n in range(2, 7):
            tab = kn_table(n, K)
            closed = kn_closed_form(n, K)
            try:
                det = kn_determinant(n, model)
            except RouteUnavailableError:
                det = None
            vals = [v for v in (tab, closed, det) if v is not None]
            diff = max(vals) - min(vals)
            worst = max(worst, diff)
            rows.append((K, n, tab, closed, det, diff))
    write_csv(cfg.output_dir / "table1.csv",
              ("K", "n", "Kn_table", "Kn_closed", "Kn_det", "abs_max_diff"), rows)
    if worst > TABLE1_TOL:
        print(f"photonstat: table1 route mismatch {worst:.3g} > {TABLE1_TOL:g}", file=sys.stderr)
        return EXIT_CHECK
    return EXIT_OK


def cmd_kn_curve(cfg):
    rows, curves = [], []
    n = np.arange(1, cfg.n_max + 1)
    for K in cfg.K_list:
        series = kn_series(K, cfg.n_max)
        with np.errstate(divide="ignore"):
            logk = np.log(series.values)
        rows.extend((K, int(i), v, lv) for i, v, lv in zip(n, series.values, logk))
        curves.append((f"K={K:g}", n, logk))
    write_csv(cfg.output_dir / "kn_curve.csv", ("K", "n", "Kn", "ln_Kn"), rows)
    _svg(cfg, "fig2a.svg", curves, "photon number n", "ln K_n")
    return EXIT_OK


def cmd_bunching_curve(cfg):
    rows, curves = [], []
    n = np.arange(cfg.n_max + 1)
    for K in cfg.K_list:
        table = bunching_series(K, cfg.n_max)
        reduced = table.log_B_over_factorial()
        rows.extend((K, int(i), lb, r) for i, lb, r in zip(n, table.log_B, reduced))
        curves.append((f"K={K:g}", n, reduced))
    write_csv(cfg.output_dir / "bunching_curve.csv",
              ("K", "n", "log_Bn", "log_Bn_minus_log_nfact"), rows)
    _svg(cfg, "fig2c.svg", curves, "photon number n", "ln(B_n / n!)")
    return EXIT_OK


def cmd_fit(cfg):
    lo, hi = cfg.fit_window
    rows = []
    for K in cfg.K_list:
        res = fit_alpha(kn_series(K, max(cfg.n_max, hi)), lo, hi)
        rows.append((K, res.alpha, res.S, bunching_factor_S(K), res.residual))
    write_csv(cfg.output_dir / "fit.csv", ("K", "alpha_fit", "S_fit", "S_analytic", "residual"), rows)
    ks = np.linspace(0.0, 1.0, 201)
    _svg(cfg, "fig2b.svg",
         [("2K/(1+K)", ks, [bunching_factor_S(k) for k in ks]),
          ("o fit", [r[0] for r in rows], [r[2] for r in rows])],
         "K", "S = exp(-alpha)")
    return EXIT_OK


def _scan(cfg):
    grid = nc_grid(cfg.nc_min, cfg.nc_max, cfg.nc_points)
    out = []
    for K in cfg.K_list:
        g2, nbar = coherence_scan(K, cfg.N, grid)
        out.append((K, g2, nbar))
    return grid, out


def cmd_g2_scan(cfg):
    grid, scans = _scan(cfg)
    rows = [(K, nc, g) for K, g2, _ in scans for nc, g in zip(grid, g2)]
    write_csv(cfg.output_dir / "g2_scan.csv", ("K", "Nc", "g2"), rows)
    _svg(cfg, "fig3a.svg", [(f"K={K:g}", grid, g2) for K, g2, _ in reversed(scans)],
         "Nc", "g2(0)", logx=True)
    return EXIT_OK


def cmd_nbar_scan(cfg):
    grid, scans = _scan(cfg)
    rows = [(K, nc, m) for K, _, nbar in scans for nc, m in zip(grid, nbar)]
    write_csv(cfg.output_dir / "nbar_scan.csv", ("K", "Nc", "nbar"), rows)
    _svg(cfg, "fig3b.svg", [(f"K={K:g}", grid, nbar) for K, _, nbar in reversed(scans)],
         "Nc", "mean photon number", logx=True)
    return EXIT_OK


def cmd_transition(cfg):
    rows, problems = [], []
    for K in cfg.K_list:
        try:
            res = transition_point(K, cfg.N, cfg.nc_min, cfg.nc_max, cfg.nc_points)
        except PhotonStatError as exc:
            one_over_S = 1.0 / bunching_factor_S(K) if K > 0 else None
            rows.append((K, None, one_over_S, None))
            problems.append(f"K={K:g}: {exc}")
            continue
        rows.append((K, res.Nc_star, res.one_over_S, res.ratio))
    write_csv(cfg.output_dir / "transition.csv", ("K", "Nc_star", "one_over_S", "ratio"), rows)
    if problems:
        path = cfg.output_dir / "transition_diagnostics.txt"  # directory exists after write_csv
        path.write_text("\n".join(problems) + "\n", encoding="utf-8")
        print(f"wrote {path}")
    return EXIT_OK


def cmd_mbe_compare(cfg):
    (K,) = cfg.K_list
    S = bunching_factor_S(K)
    if S == 0:
        raise ConfigError("mbe-compare needs K > 0")
    # fails before any output when Nc*S >= 1
    modified_bose_einstein(cfg.ncs / S, S, 0)
    Nc = cfg.ncs / S
    p = ensemble_distribution(EnsembleParams.from_Nc(cfg.N, Nc, K)).probabilities
    rows = []
    for n in range(min(50, cfg.N - 1) + 1):
        rows.append((n, p[n], modified_bose_einstein(Nc, S, n), p[n + 1] / p[n], Nc * S))
    write_csv(cfg.output_dir / "mbe_compare.csv", ("n", "P_exact", "P_mbe", "ratio_exact", "NcS"), rows)
    return EXIT_OK


def cmd_mc_validate(cfg):
    rows = []
    for K in cfg.K_list:
        model = SpectralModel.from_indistinguishability(K)
        for n in range(2, cfg.n_max + 1):
            est = mc_kn_estimate(n, model, cfg.samples, cfg.seed, workers=cfg.workers)
            exact = kn_closed_form(n, K)
            diff = est.mean - exact
            z = diff / est.std_error if est.std_error > 0 else (0.0 if diff == 0 else math.inf)
            rows.append((n, K, est.mean, est.std_error, exact, z))
    write_csv(cfg.output_dir / "mc_validate.csv",
              ("n", "K", "mc_mean", "std_error", "analytic", "z_score"), rows)
    return EXIT_OK


HANDLERS = {
    "table1": cmd_table1,
    "kn-curve": cmd_kn_curve,
    "bunching-curve": cmd_bunching_curve,
    "fit": cmd_fit,
    "g2-scan": cmd_g2_scan,
    "nbar-scan": cmd_nbar_scan,
    "mbe-compare": cmd_mbe_compare,
    "mc-validate": cmd_mc_validate,
    "transition": cmd_transition,
}


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise ConfigError(message)


def make_parser():
    common = _Parser(add_help=False)
    s = argparse.SUPPRESS
    common.add_argument("--K", default=s, help="comma-separated pairwise indistinguishabilities")
    common.add_argument("--N", default=s, help="emitter count (default 1000)")
    common.add_argument("--n-max", dest="n_max", default=s, help="largest photon order")
    common.add_argument("--nc-range", dest="nc_range", default=s,
                        help="MIN:MAX[:POINTS_PER_DECADE] logarithmic Nc grid")
    common.add_argument("--fit-window", dest="fit_window", default=s, help="LO:HI photon orders")
    common.add_argument("--samples", default=s, help="Monte Carlo samples per estimate")
    common.add_argument("--seed", default=s, help="unsigned 64-bit master seed")
    common.add_argument("--workers", default=s, help="Monte Carlo worker threads")
    common.add_argument("--ncs", default=s, help="Nc*S for mbe-compare (must be < 1)")
    common.add_argument("--out", default=s, help="output directory")
    common.add_argument("--svg", action="store_const", const="true", default=s,
                        help="also write SVG figures")
    common.add_argument("--config", default=s, help="key = value config file")

    parser = _Parser(prog="photonstat", description=__doc__.splitlines()[0])
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)
    for name in COMMANDS:
        sub.add_parser(name, parents=[common], help=HANDLERS[name].__name__[4:].replace("_", " "))
    return parser


def load_config(argv):
    args = vars(make_parser().parse_args(argv))
    command = args.pop("command")
    config_path = args.pop("config", None)
    file_layer = read_config_file(config_path) if config_path else {}
    flag_layer = overrides_from_strings(args)
    return build_config(command, file_layer, flag_layer)


def main(argv=None) -> int:
    try:
        cfg = load_config(argv)
    except ConfigError as exc:
        print(f"photonstat: error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    except SystemExit as exc:  # --help / --version
        return int(exc.code or 0)
    try:
        return HANDLERS[cfg.command](cfg)
    except ConfigError as exc:
        print(f"photonstat: error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    except (PhotonStatError, ValueError, ArithmeticError) as exc:
        print(f"photonstat: domain error: {exc}", file=sys.stderr)
        return EXIT_DOMAIN
    except OSError as exc:
        print(f"photonstat: I/O error: {exc}", file=sys.stderr)
        return EXIT_IO


if __name__ == "__main__":
    sys.exit(main())
