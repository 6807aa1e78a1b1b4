"""Run configuration: defaults, ``key = value`` config files and validation."""
from __future__ import annotations

import math
from dataclasses import dataclass, fields, replace
from pathlib import Path

COMMANDS = (
    "table1",
    "kn-curve",
    "bunching-curve",
    "fit",
    "g2-scan",
    "nbar-scan",
    "mbe-compare",
    "mc-validate",
    "transition",
)

DEFAULT_K = tuple(round(0.1 * i, 10) for i in range(1, 11))
TABLE1_K = tuple(round(0.05 * i, 10) for i in range(1, 21))

# per-command overrides of the generic defaults
_COMMAND_DEFAULTS = {
    "table1": {"K_list": TABLE1_K},
    "mbe-compare": {"K_list": (0.5,)},
    "mc-validate": {"K_list": (0.3, 0.5, 0.8), "n_max": 6},
    "kn-curve": {"n_max": 200},
    "bunching-curve": {"n_max": 200},
}


class ConfigError(ValueError):
    """Invalid configuration value or file."""


@dataclass(frozen=True)
class RunConfig:
    command: str
    K_list: tuple = DEFAULT_K
    N: int = 1000
    n_max: int = 1000
    nc_min: float = 1e-4
    nc_max: float = 1e4
    nc_points: int = 200
    fit_window: tuple = (50, 200)
    samples: int = 1_000_000
    seed: int = 42
    output_dir: Path = Path(".")
    emit_svg: bool = False
    ncs: float = 0.5
    workers: int = 1

    def validate(self) -> "RunConfig":
        if self.command not in COMMANDS:
            raise ConfigError(f"unknown command {self.command!r}")
        if not self.K_list:
            raise ConfigError("K list is empty")
        for K in self.K_list:
            if not (math.isfinite(K) and 0 <= K <= 1):
                raise ConfigError(f"K values must lie in [0, 1], got {K}")
        if self.N < 1:
            raise ConfigError(f"N must be >= 1, got {self.N}")
        if self.n_max < 2:
            raise ConfigError(f"n-max must be >= 2, got {self.n_max}")
        if not (0 < self.nc_min < self.nc_max and math.isfinite(self.nc_max)):
            raise ConfigError(f"nc-range needs 0 < min < max, got {self.nc_min}:{self.nc_max}")
        if self.nc_points < 1:
            raise ConfigError(f"nc-range points per decade must be >= 1, got {self.nc_points}")
        lo, hi = self.fit_window
        if not 2 <= lo or hi - lo < 2:
            raise ConfigError(f"fit-window needs 2 <= lo and at least 3 points, got {lo}:{hi}")
        if self.samples < 1000:
            raise ConfigError(f"samples must be >= 1000, got {self.samples}")
        if not 0 <= self.seed < 2**64:
            raise ConfigError(f"seed must be an unsigned 64-bit integer, got {self.seed}")
        if not (math.isfinite(self.ncs) and self.ncs > 0):
            raise ConfigError(f"ncs must be positive, got {self.ncs}")
        if self.workers < 1:
            raise ConfigError(f"workers must be >= 1, got {self.workers}")
        if self.command == "mbe-compare" and len(self.K_list) != 1:
            raise ConfigError("mbe-compare takes exactly one K value")
        return self


def parse_K_list(text: str) -> tuple:
    try:
        values = tuple(float(v) for v in text.split(",") if v.strip())
    except ValueError:
        raise ConfigError(f"cannot parse K list {text!r}") from None
    return tuple(sorted(values))


def parse_nc_range(text: str) -> tuple:
    parts = text.split(":")
    try:
        if len(parts) == 2:
            return float(parts[0]), float(parts[1]), None
        if len(parts) == 3:
            return float(parts[0]), float(parts[1]), int(parts[2])
    except ValueError:
        pass
    raise ConfigError(f"nc-range must look like MIN:MAX[:POINTS_PER_DECADE], got {text!r}")


def parse_window(text: str) -> tuple:
    try:
        lo, hi = (int(v) for v in text.split(":"))
    except ValueError:
        raise ConfigError(f"fit-window must look like LO:HI, got {text!r}") from None
    return lo, hi


def _parse_bool(text: str) -> bool:
    t = text.strip().lower()
    if t in ("1", "true", "yes", "on"):
        return True
    if t in ("0", "false", "no", "off"):
        return False
    raise ConfigError(f"not a boolean: {text!r}")


def _to_int(text, key):
    try:
        return int(float(text)) if "e" in text.lower() else int(text)
    except ValueError:
        raise ConfigError(f"{key} must be an integer, got {text!r}") from None


def _to_float(text, key):
    try:
        return float(text)
    except ValueError:
        raise ConfigError(f"{key} must be a number, got {text!r}") from None


def read_config_file(path) -> dict:
    """Parse a flat ``key = value`` file into RunConfig overrides."""
    try:
        text = Path(path).read_text(encoding="utf-8")
    except OSError as exc:
        raise ConfigError(f"cannot read config file {path}: {exc.strerror}") from None
    raw = {}
    for lineno, line in enumerate(text.splitlines(), 1):
        line = line.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise ConfigError(f"{path}:{lineno}: expected key = value")
        key, value = (s.strip() for s in line.split("=", 1))
        raw[key.replace("-", "_")] = value
    return overrides_from_strings(raw)


def overrides_from_strings(raw: dict) -> dict:
    out = {}
    for key, value in raw.items():
        if key == "K":
            out["K_list"] = parse_K_list(value)
        elif key == "N":
            out["N"] = _to_int(value, key)
        elif key == "n_max":
            out["n_max"] = _to_int(value, key)
        elif key == "nc_range":
            lo, hi, pts = parse_nc_range(value)
            out.update(nc_min=lo, nc_max=hi)
            if pts is not None:
                out["nc_points"] = pts
        elif key == "fit_window":
            out["fit_window"] = parse_window(value)
        elif key in ("samples", "seed", "workers"):
            out[key] = _to_int(value, key)
        elif key == "ncs":
            out["ncs"] = _to_float(value, key)
        elif key in ("out", "output_dir"):
            out["output_dir"] = Path(value)
        elif key == "svg":
            out["emit_svg"] = _parse_bool(value)
        else:
            raise ConfigError(f"unknown config key {key!r}")
    return out


def build_config(command: str, file_overrides: dict | None = None, flag_overrides: dict | None = None) -> RunConfig:
    """Defaults < command defaults < config file < command-line flags."""
    known = {f.name for f in fields(RunConfig)}
    cfg = RunConfig(command=command)
    cfg = replace(cfg, **_COMMAND_DEFAULTS.get(command, {}))
    for layer in (file_overrides or {}, flag_overrides or {}):
        unknown = set(layer) - known
        if unknown:
            raise ConfigError(f"unknown settings: {', '.join(sorted(unknown))}")
        cfg = replace(cfg, **layer)
    return cfg.validate()
