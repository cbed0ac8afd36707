"""Parameter sweeps and figure-data emission.

`run_sweep` varies one parameter and tabulates either the purity (for gap
and axis parameters) or the emission density matrix (for omega1).
`emit_figure_data` writes the CSV files behind each published panel; the
physics parameters that define a panel (angles, mixing values, channel
sets) are pinned here, while resolution-type settings (grid size, smearing,
temperature, delta0) follow the run configuration.
"""

from __future__ import annotations

import csv
import math
from dataclasses import dataclass, replace
from pathlib import Path

import numpy as np

from .bands import (
    HELICITIES,
    BandParams,
    dos,
    fermi_surface,
    helical_dispersion,
    solve_mu,
)
from .config import ConfigError, RunConfig
from .emission import PhotonPair, two_photon_density_matrix
from .entanglement import BASIS, PolarizationAxis, purity
from .lattice import high_symmetry_path, make_grid
from .pairing import GapSpec, SingletChannel

SWEEP_AXES = ("r", "theta", "phi", "theta_soc", "filling", "omega1")

RHO_COLUMNS = tuple(f"rho_{a}_{b}" for a in BASIS for b in BASIS)

_CHANNEL_ORDER = (
    SingletChannel.S,
    SingletChannel.S_STAR,
    SingletChannel.D_X2Y2,
    SingletChannel.D_XY,
)


@dataclass(frozen=True)
class SweepSpec:
    """One-axis sweep: which parameter, which values, around which config."""

    axis: str
    values: tuple[float, ...]
    config: RunConfig

    def __post_init__(self):
        if self.axis not in SWEEP_AXES:
            raise ConfigError(
                f"unknown sweep axis {self.axis!r}; expected one of "
                f"{', '.join(SWEEP_AXES)}"
            )
        if not self.values:
            raise ConfigError("sweep needs at least one value")
        for v in self.values:
            _check_axis_value(self.axis, v)


def _check_axis_value(axis: str, v: float) -> None:
    if not math.isfinite(v):
        raise ConfigError(f"sweep value for {axis!r} must be finite, got {v}")
    if axis == "r" and not 0.0 <= v <= 1.0:
        raise ConfigError(f"sweep value for 'r' must lie in [0, 1], got {v}")
    if axis == "theta" and not 0.0 <= v <= math.pi:
        raise ConfigError(f"sweep value for 'theta' must lie in [0, pi], got {v}")
    if axis == "phi" and not 0.0 <= v < 2.0 * math.pi:
        raise ConfigError(f"sweep value for 'phi' must lie in [0, 2*pi), got {v}")
    if axis == "theta_soc" and not 0.0 <= v <= math.pi / 2:
        raise ConfigError(
            f"sweep value for 'theta_soc' must lie in [0, pi/2], got {v}"
        )
    if axis == "filling" and not 0.0 < v < 2.0:
        raise ConfigError(f"sweep value for 'filling' must lie in (0, 2), got {v}")


@dataclass(frozen=True)
class SweepTable:
    columns: tuple[str, ...]
    rows: np.ndarray  # shape (len(values), len(columns))


def resolved_band(cfg: RunConfig, grid, threads: int = 1) -> BandParams:
    """Band parameters with mu solved from the filling target, if one is set."""
    if cfg.filling_target is None:
        return cfg.band
    mu = solve_mu(cfg.filling_target, cfg.band, grid, cfg.temperature)
    return replace(cfg.band, mu=mu)


def run_sweep(spec: SweepSpec, threads: int = 1) -> SweepTable:
    """Evaluate the sweep; rows come back in ascending axis order."""
    cfg = spec.config
    values = tuple(sorted(spec.values))
    grid = make_grid(cfg.grid_n)

    if spec.axis == "omega1":
        band = resolved_band(cfg, grid, threads)
        rows = []
        for w1 in values:
            pair = PhotonPair(
                omega1=w1, omega2=2.0 * cfg.band_gap - w1, band_gap=cfg.band_gap
            )
            res = two_photon_density_matrix(
                pair,
                band,
                cfg.gap,
                cfg.polarization,
                grid,
                cfg.temperature,
                cfg.sigma_delta,
                cfg.b_matrix_element,
                threads,
            )
            rows.append(
                [w1, pair.omega2, res.rho.trace, *res.rho.values.ravel()]
            )
        return SweepTable(
            columns=("omega1", "omega2", "trace", *RHO_COLUMNS),
            rows=np.array(rows),
        )

    rows = []
    for v in values:
        gap, pol = cfg.gap, cfg.polarization
        if spec.axis == "r":
            gap = replace(gap, r=v)
        elif spec.axis == "theta":
            pol = PolarizationAxis(theta=v, phi=pol.phi)
        elif spec.axis == "phi":
            pol = PolarizationAxis(theta=pol.theta, phi=v)
        # theta_soc and filling leave the polarization weights untouched;
        # the purity is computed the same way and comes out constant.
        rows.append([v, purity(gap, pol, grid, threads)])
    return SweepTable(columns=(spec.axis, "purity"), rows=np.array(rows))


def format_value(v) -> str:
    """CSV cell formatting: 17 significant digits for floats."""
    if isinstance(v, str):
        return v
    if isinstance(v, (int, np.integer)):
        return str(int(v))
    return format(float(v), ".17g")


def write_csv(path: Path, columns, rows) -> Path:
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    with open(path, "w", newline="") as fh:
        writer = csv.writer(fh)
        writer.writerow(columns)
        for row in rows:
            writer.writerow([format_value(v) for v in row])
    return path


def sweep_to_csv(table: SweepTable, path: Path) -> Path:
    return write_csv(path, table.columns, table.rows)


# --- figure emitters -------------------------------------------------------

_FIG4_THETAS = tuple(i * math.pi / 8.0 for i in range(5))
_FIG5_PHIS = tuple(i * math.pi / 12.0 for i in range(7))
_FIG67_RS = (0.0, 0.25, 0.5, 0.75, 1.0)
_FIG8_RS = (1.0, 0.5, 0.0)
_R_AXIS = tuple(np.linspace(0.0, 1.0, 101))
_ANGLE_AXIS = tuple(np.linspace(0.0, math.pi / 2.0, 101))


def _fig2a(cfg, out_dir, threads):
    path = high_symmetry_path(samples_per_leg=256)
    k = (path.kx, path.ky)
    rows = np.column_stack(
        [
            path.arc,
            helical_dispersion(k, -1, cfg.band),
            helical_dispersion(k, +1, cfg.band),
        ]
    )
    main = write_csv(
        out_dir / "fig2a.csv", ("path_coordinate", "eps_minus", "eps_plus"), rows
    )
    ticks = write_csv(
        out_dir / "fig2a_ticks.csv",
        ("label", "path_coordinate"),
        list(zip(path.labels, path.vertex_arcs)),
    )
    return [main, ticks]


def _fig2b(cfg, out_dir, threads):
    grid = make_grid(cfg.grid_n)
    curve = dos(cfg.band, grid, sigma_e=cfg.sigma_e, threads=threads)
    rows = np.column_stack([curve.energies, curve.density])
    return [write_csv(out_dir / "fig2b.csv", ("energy", "dos"), rows)]


def _fig2cf(cfg, out_dir, threads):
    panels = (
        ("c", 0.0, 0.8),
        ("d", math.pi / 4.0, 0.8),
        ("e", 0.0, 1.2),
        ("f", math.pi / 4.0, 1.2),
    )
    grid = make_grid(cfg.grid_n)
    paths = []
    for name, theta_soc, target in panels:
        band = replace(cfg.band, theta_soc=theta_soc)
        band = replace(band, mu=solve_mu(target, band, grid, cfg.temperature))
        rows = []
        for xi in HELICITIES:
            surface = fermi_surface(band, grid, xi)
            for ci, contour in enumerate(surface.contours):
                for kx, ky in contour.vertices:
                    rows.append([ci, xi, kx, ky])
        paths.append(
            write_csv(
                out_dir / f"fig2{name}.csv", ("contour", "xi", "kx", "ky"), rows
            )
        )
    return paths


def _fig3(cfg, out_dir, threads):
    pol = PolarizationAxis(theta=0.0, phi=0.0)
    grid = make_grid(cfg.grid_n)
    columns = [np.asarray(_R_AXIS)]
    for channel in _CHANNEL_ORDER:
        gammas = [
            purity(
                GapSpec(
                    channel=channel,
                    r=r,
                    delta0=cfg.gap.delta0,
                    theta_gap=cfg.gap.theta_gap,
                ),
                pol,
                grid,
                threads,
            )
            for r in _R_AXIS
        ]
        columns.append(np.asarray(gammas))
    rows = np.column_stack(columns)
    return [
        write_csv(
            out_dir / "fig3.csv", ("r", "s", "s_star", "d_x2y2", "d_xy"), rows
        )
    ]


def _purity_r_scan(cfg, pol, grid, threads):
    return [
        purity(replace(cfg.gap, r=r), pol, grid, threads) for r in _R_AXIS
    ]


def _fig4(cfg, out_dir, threads):
    grid = make_grid(cfg.grid_n)
    paths = []
    for i, theta in enumerate(_FIG4_THETAS):
        pol = PolarizationAxis(theta=theta, phi=0.0)
        gammas = _purity_r_scan(cfg, pol, grid, threads)
        rows = [[r, theta, g] for r, g in zip(_R_AXIS, gammas)]
        paths.append(
            write_csv(out_dir / f"fig4_theta_{i}.csv", ("r", "theta", "purity"), rows)
        )
    return paths


def _fig5(cfg, out_dir, threads):
    grid = make_grid(cfg.grid_n)
    paths = []
    for i, phi in enumerate(_FIG5_PHIS):
        pol = PolarizationAxis(theta=math.pi / 2.0, phi=phi)
        gammas = _purity_r_scan(cfg, pol, grid, threads)
        rows = [[r, phi, g] for r, g in zip(_R_AXIS, gammas)]
        paths.append(
            write_csv(out_dir / f"fig5_phi_{i}.csv", ("r", "phi", "purity"), rows)
        )
    return paths


def _fig6(cfg, out_dir, threads):
    grid = make_grid(cfg.grid_n)
    paths = []
    for i, r in enumerate(_FIG67_RS):
        gap = replace(cfg.gap, r=r)
        rows = [
            [theta, r, purity(gap, PolarizationAxis(theta=theta, phi=0.0), grid, threads)]
            for theta in _ANGLE_AXIS
        ]
        paths.append(
            write_csv(out_dir / f"fig6_r_{i}.csv", ("theta", "r", "purity"), rows)
        )
    return paths


def _fig7(cfg, out_dir, threads):
    grid = make_grid(cfg.grid_n)
    paths = []
    for i, r in enumerate(_FIG67_RS):
        gap = replace(cfg.gap, r=r)
        rows = [
            [
                phi,
                r,
                purity(
                    gap, PolarizationAxis(theta=math.pi / 2.0, phi=phi), grid, threads
                ),
            ]
            for phi in _ANGLE_AXIS
        ]
        paths.append(
            write_csv(out_dir / f"fig7_r_{i}.csv", ("phi", "r", "purity"), rows)
        )
    return paths


def _fig8(cfg, out_dir, threads):
    # Emission needs the pair line on top of the quasiparticle spectrum;
    # with the default (large) band gap nothing recombines, so unless the
    # config explicitly pins band_gap the panel is emitted at resonance
    # band_gap = 0, where omega1 = omega2 = 0 sits inside the band.
    band_gap = cfg.band_gap if "band_gap" in cfg.explicit else 0.0
    pair = PhotonPair.balanced(band_gap)
    pol = PolarizationAxis(theta=math.pi / 2.0, phi=0.0)
    grid = make_grid(cfg.grid_n)
    band = resolved_band(cfg, grid, threads)
    rows = []
    for channel in _CHANNEL_ORDER:
        for r in _FIG8_RS:
            gap = GapSpec(
                channel=channel,
                r=r,
                delta0=cfg.gap.delta0,
                theta_gap=cfg.gap.theta_gap,
            )
            res = two_photon_density_matrix(
                pair,
                band,
                gap,
                pol,
                grid,
                cfg.temperature,
                cfg.sigma_delta,
                cfg.b_matrix_element,
                threads,
            )
            shown = res.rho_normalized
            entries = (
                np.zeros(16) if shown is None else shown.values.ravel()
            )
            rows.append([channel.value, r, res.rho.trace, *entries])
    return [
        write_csv(
            out_dir / "fig8.csv",
            ("channel", "r", "trace", *RHO_COLUMNS),
            rows,
        )
    ]


FIGURES = {
    "fig2a": _fig2a,
    "fig2b": _fig2b,
    "fig2cf": _fig2cf,
    "fig3": _fig3,
    "fig4": _fig4,
    "fig5": _fig5,
    "fig6": _fig6,
    "fig7": _fig7,
    "fig8": _fig8,
}


def emit_figure_data(
    figure_id: str, cfg: RunConfig, out_dir, threads: int = 1
) -> list[Path]:
    """Write the CSV data behind one figure; returns the created paths."""
    try:
        emitter = FIGURES[figure_id]
    except KeyError:
        raise ConfigError(
            f"unknown figure id {figure_id!r}; expected one of "
            f"{', '.join(sorted(FIGURES))}"
        ) from None
    out_dir = Path(out_dir)
    out_dir.mkdir(parents=True, exist_ok=True)
    return emitter(cfg, out_dir, threads)
