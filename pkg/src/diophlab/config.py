"""Run configuration: defaults, TOML loading, flag overrides.

Every CLI output echoes the effective config so runs are reproducible.
"""

from __future__ import annotations

import dataclasses
import os
from dataclasses import dataclass
from fractions import Fraction

try:
    import tomllib
except ModuleNotFoundError:  # python < 3.11
    import tomli as tomllib

__all__ = ["Config", "load_config", "DEFAULT_CONFIG"]


@dataclass
class Config:
    precision: int = 256          # default working precision (bits)
    precision_cap: int = 4096     # escalation cap before PrecisionInsufficient
    tau: Fraction = Fraction(1, 1000)       # membership tolerance
    lambda_min: float = 0.1       # minimum fitted decay rate for a certificate
    r2_min: float = 0.9           # minimum R^2 of the decay fit
    lll_delta: Fraction = Fraction(99, 100)
    height_bound: int = 10_000    # default relation-search height bound
    degree_bound: int = 4         # default polynomial-relation degree bound
    enum_cap: int = 1_000_000     # pigeonhole enumeration cap
    rho: float = 0.5              # cluster density threshold for std_estimate
    seed: int = 0
    divisible_bound: int = 10     # B for the DivisibleByAll constraint
    seq_length: int = 12          # default constructed sequence length
    hat_cap: int = 6              # stage cap for hat_element (k! growth)
    witness_bound: int = 10_000   # scaling_witness per-index search bound

    def __post_init__(self):
        if not (1 <= self.precision <= self.precision_cap):
            raise ValueError("precision out of range")
        if not (Fraction(1, 4) < self.lll_delta < 1):
            raise ValueError("lll_delta must be in (1/4, 1)")
        if not (0 < float(self.tau)):
            raise ValueError("tau must be positive")
        if not (0 < self.rho <= 1):
            raise ValueError("rho must be in (0, 1]")

    def to_json(self) -> dict:
        out = {}
        for f in dataclasses.fields(self):
            v = getattr(self, f.name)
            out[f.name] = str(v) if isinstance(v, Fraction) else v
        return out

    def replace(self, **kw) -> "Config":
        return dataclasses.replace(self, **kw)


DEFAULT_CONFIG = Config()

_FRACTION_FIELDS = {"tau", "lll_delta"}


def _coerce(name, value):
    if name in _FRACTION_FIELDS:
        return Fraction(str(value))
    return value


def load_config(path: str | None = None, overrides: dict | None = None) -> Config:
    """Config from TOML file (or $DIOPHLAB_CONFIG), then keyword overrides."""
    data: dict = {}
    path = path or os.environ.get("DIOPHLAB_CONFIG")
    if path:
        with open(path, "rb") as fh:
            data.update(tomllib.load(fh))
    if overrides:
        data.update({k: v for k, v in overrides.items() if v is not None})
    known = {f.name for f in dataclasses.fields(Config)}
    unknown = set(data) - known
    if unknown:
        raise ValueError(f"unknown config keys: {sorted(unknown)}")
    return Config(**{k: _coerce(k, v) for k, v in data.items()})
