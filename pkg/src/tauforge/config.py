"""Run configuration: defaults, flat ``key = value`` files, and TAUFORGE_* overrides.

Precedence (lowest first): defaults, config file, environment, command line.
"""

from __future__ import annotations

import os
from dataclasses import dataclass, field, fields, replace
from typing import Any, Mapping, Optional

ENV_PREFIX = "TAUFORGE_"


class ConfigError(ValueError):
    pass


def _ints(s: str) -> tuple[int, ...]:
    return tuple(int(x) for x in str(s).replace(" ", "").split(",") if x)


def _floats(s: str) -> tuple[float, ...]:
    return tuple(float(x) for x in str(s).replace(" ", "").split(",") if x)


def _bool(s: str) -> bool:
    v = str(s).strip().lower()
    if v in ("1", "true", "yes", "on"):
        return True
    if v in ("0", "false", "no", "off"):
        return False
    raise ValueError(f"not a boolean: {s!r}")


def _opt_float(s: str) -> Optional[float]:
    return None if str(s).strip().lower() in ("", "none") else float(s)


def _opt_int(s: str) -> Optional[int]:
    return None if str(s).strip().lower() in ("", "none") else int(s)


def _opt_str(s: str) -> Optional[str]:
    return None if str(s).strip() == "" else str(s).strip()


@dataclass(frozen=True)
class RunConfig:
    tau: Optional[int] = None
    tau_file: Optional[str] = None
    max_k: int = 3
    orders: tuple[int, ...] = (2, 3, 4)
    heavy_max_k: int = 2  # largest staircase index that also gets order n = 4
    q: tuple[float, ...] = (0.05, 0.1, 0.3)
    theta_points: int = 100
    sine_points: int = 1000
    tolerance: Optional[float] = None
    convention: str = "mumford"
    seed: int = 0
    trials: int = 20
    jobs: int = field(default_factory=lambda: os.cpu_count() or 1)
    format: str = "text"
    timing: bool = True

    def validate(self) -> "RunConfig":
        if self.tau is not None and self.tau < 1:
            raise ConfigError("staircase index k must be >= 1")
        if self.max_k < 1:
            raise ConfigError("max_k must be >= 1")
        if any(n < 2 for n in self.orders):
            raise ConfigError("generated identity orders must be >= 2")
        if self.tolerance is not None and not self.tolerance > 0:
            raise ConfigError("tolerance must be positive")
        if any(not abs(q) < 1 for q in self.q) or not self.q:
            raise ConfigError("every nome must satisfy |q| < 1")
        if self.theta_points < 1 or self.sine_points < 1 or self.trials < 1:
            raise ConfigError("point counts and trials must be positive")
        if self.jobs < 1:
            raise ConfigError("jobs must be >= 1")
        if self.format not in ("text", "json"):
            raise ConfigError("format must be text or json")
        if self.convention not in ("mumford", "unit"):
            raise ConfigError("convention must be mumford or unit")
        return self

    def public_dict(self) -> dict[str, Any]:
        """Config fields that affect results (jobs, format and timing do not)."""
        d = {f.name: getattr(self, f.name) for f in fields(self)}
        for k in ("jobs", "format", "timing"):
            d.pop(k)
        return {k: list(v) if isinstance(v, tuple) else v for k, v in d.items()}


_PARSERS = {
    "tau": _opt_int,
    "tau_file": _opt_str,
    "max_k": int,
    "orders": _ints,
    "heavy_max_k": int,
    "q": _floats,
    "theta_points": int,
    "sine_points": int,
    "tolerance": _opt_float,
    "convention": str,
    "seed": int,
    "trials": int,
    "jobs": int,
    "format": str,
    "timing": _bool,
}


def _apply(cfg: RunConfig, raw: Mapping[str, str], source: str) -> RunConfig:
    updates = {}
    for key, val in raw.items():
        name = key.strip().lower().replace("-", "_")
        if name not in _PARSERS:
            raise ConfigError(f"{source}: unknown key {key!r}")
        try:
            updates[name] = _PARSERS[name](val)
        except ValueError as exc:
            raise ConfigError(f"{source}: bad value for {key!r}: {exc}") from None
    return replace(cfg, **updates)


def parse_config_text(text: str, source: str = "config") -> dict[str, str]:
    out = {}
    for n, line in enumerate(text.splitlines(), 1):
        s = line.split("#", 1)[0].strip()
        if not s:
            continue
        if "=" not in s:
            raise ConfigError(f"{source}:{n}: expected 'key = value'")
        k, v = s.split("=", 1)
        out[k.strip()] = v.strip()
    return out


def load_config(path: Optional[str] = None, env: Optional[Mapping[str, str]] = None,
                overrides: Optional[Mapping[str, Any]] = None) -> RunConfig:
    cfg = RunConfig()
    if path:
        try:
            with open(path, encoding="utf-8") as fh:
                text = fh.read()
        except OSError as exc:
            raise ConfigError(f"cannot read config file: {exc}") from None
        cfg = _apply(cfg, parse_config_text(text, path), path)
    env = os.environ if env is None else env
    env_raw = {k[len(ENV_PREFIX):]: v for k, v in env.items()
               if k.startswith(ENV_PREFIX) and k != ENV_PREFIX + "CONFIG"}
    if env_raw:
        cfg = _apply(cfg, env_raw, "environment")
    if overrides:
        cfg = replace(cfg, **{k: v for k, v in overrides.items() if v is not None})
    return cfg.validate()
