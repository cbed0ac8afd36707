"""Run configuration: a flat JSON object with physics and output settings.

Every key is optional; omitted keys take the defaults below.  Unknown keys
and out-of-range values are rejected with a ConfigError naming the key, so
typos fail loudly instead of silently running the default physics.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass

from .bands import BandParams
from .entanglement import PolarizationAxis
from .pairing import GapSpec, parse_channel


class ConfigError(ValueError):
    """Invalid run configuration (bad key, type, or value)."""


DEFAULTS = {
    "t": 1.0,
    "mu": 0.0,
    "lambda": 0.5,
    "theta_soc": 0.0,
    "channel": "s",
    "r": 1.0,
    "delta0": 0.2,
    "theta_gap": 0.0,
    "theta": 0.0,
    "phi": 0.0,
    "grid_n": 256,
    "temperature": 0.01,
    "sigma_e": 0.02,
    "sigma_delta": 0.05,
    "filling": None,
    "band_gap": 10.0,
    "omega1": None,
    "b_matrix_element": 1.0,
    "output": None,
    "format": "csv",
}

_POSITIVE = ("t", "delta0", "temperature", "sigma_e", "sigma_delta")
_ANGLE_HALF_PI = ("theta_soc", "theta_gap")


def _number(key: str, value) -> float:
    if isinstance(value, bool) or not isinstance(value, (int, float)):
        raise ConfigError(f"config key {key!r} must be a number, got {value!r}")
    v = float(value)
    if not math.isfinite(v):
        raise ConfigError(f"config key {key!r} must be finite, got {value!r}")
    return v


@dataclass(frozen=True)
class RunConfig:
    """Validated configuration, grouped into the library's parameter types."""

    band: BandParams
    gap: GapSpec
    polarization: PolarizationAxis
    grid_n: int
    temperature: float
    sigma_e: float
    sigma_delta: float
    filling_target: float | None
    band_gap: float
    omega1: float | None
    b_matrix_element: float
    output: str | None
    fmt: str
    explicit: frozenset[str]

    def photon_frequencies(self) -> tuple[float, float]:
        """(omega1, omega2) honoring the pair constraint; balanced unless
        omega1 was given explicitly."""
        w1 = self.band_gap if self.omega1 is None else self.omega1
        return w1, 2.0 * self.band_gap - w1


def config_from_mapping(mapping: dict) -> RunConfig:
    unknown = sorted(set(mapping) - set(DEFAULTS))
    if unknown:
        raise ConfigError(f"unknown config keys: {', '.join(unknown)}")
    merged = {**DEFAULTS, **mapping}

    if "mu" in mapping and "filling" in mapping and mapping["filling"] is not None:
        raise ConfigError(
            "config keys 'mu' and 'filling' are mutually exclusive; "
            "give one or the other"
        )

    numbers: dict[str, float] = {}
    for key in (
        "t",
        "mu",
        "lambda",
        "theta_soc",
        "r",
        "delta0",
        "theta_gap",
        "theta",
        "phi",
        "temperature",
        "sigma_e",
        "sigma_delta",
        "band_gap",
        "b_matrix_element",
    ):
        numbers[key] = _number(key, merged[key])
    for key in _POSITIVE:
        if numbers[key] <= 0.0:
            raise ConfigError(f"config key {key!r} must be positive, got {numbers[key]}")
    if numbers["lambda"] < 0.0:
        raise ConfigError(f"config key 'lambda' must be non-negative, got {numbers['lambda']}")
    for key in _ANGLE_HALF_PI:
        if not 0.0 <= numbers[key] <= math.pi / 2:
            raise ConfigError(
                f"config key {key!r} must lie in [0, pi/2], got {numbers[key]}"
            )
    if not 0.0 <= numbers["r"] <= 1.0:
        raise ConfigError(f"config key 'r' must lie in [0, 1], got {numbers['r']}")
    if not 0.0 <= numbers["theta"] <= math.pi:
        raise ConfigError(
            f"config key 'theta' must lie in [0, pi], got {numbers['theta']}"
        )
    if not 0.0 <= numbers["phi"] < 2.0 * math.pi:
        raise ConfigError(
            f"config key 'phi' must lie in [0, 2*pi), got {numbers['phi']}"
        )

    grid_n = merged["grid_n"]
    if isinstance(grid_n, bool) or not isinstance(grid_n, int):
        raise ConfigError(f"config key 'grid_n' must be an integer, got {grid_n!r}")
    if grid_n < 2:
        raise ConfigError(f"config key 'grid_n' must be at least 2, got {grid_n}")

    filling = merged["filling"]
    if filling is not None:
        filling = _number("filling", filling)
        if not 0.0 < filling < 2.0:
            raise ConfigError(
                f"config key 'filling' must lie in (0, 2), got {filling}"
            )

    omega1 = merged["omega1"]
    if omega1 is not None:
        omega1 = _number("omega1", omega1)

    try:
        channel = parse_channel(merged["channel"])
    except ValueError as exc:
        raise ConfigError(f"config key 'channel': {exc}") from None

    fmt = merged["format"]
    if fmt not in ("csv", "json"):
        raise ConfigError(
            f"config key 'format' must be 'csv' or 'json', got {fmt!r}"
        )
    output = merged["output"]
    if output is not None and not isinstance(output, str):
        raise ConfigError(f"config key 'output' must be a string, got {output!r}")

    band = BandParams(
        t=numbers["t"],
        mu=numbers["mu"],
        lam=numbers["lambda"],
        theta_soc=numbers["theta_soc"],
    )
    gap = GapSpec(
        channel=channel,
        r=numbers["r"],
        delta0=numbers["delta0"],
        theta_gap=numbers["theta_gap"],
    )
    pol = PolarizationAxis(theta=numbers["theta"], phi=numbers["phi"])
    return RunConfig(
        band=band,
        gap=gap,
        polarization=pol,
        grid_n=grid_n,
        temperature=numbers["temperature"],
        sigma_e=numbers["sigma_e"],
        sigma_delta=numbers["sigma_delta"],
        filling_target=filling,
        band_gap=numbers["band_gap"],
        omega1=omega1,
        b_matrix_element=numbers["b_matrix_element"],
        output=output,
        fmt=fmt,
        explicit=frozenset(mapping),
    )


def parse_config(text: str) -> RunConfig:
    """Parse a JSON config document; '' and '{}' give pure defaults."""
    if not text.strip():
        return config_from_mapping({})
    try:
        mapping = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ConfigError(f"config is not valid JSON: {exc}") from None
    if not isinstance(mapping, dict):
        raise ConfigError("config must be a JSON object at top level")
    return config_from_mapping(mapping)
