"""Command-line interface.

Every subcommand reads an optional JSON config (--config), applies flag
overrides, runs one computation, and writes CSV/JSON output.  Exit codes:
0 success, 2 invalid configuration or arguments, 1 runtime failure.
"""

from __future__ import annotations

import argparse
import json
import sys
from dataclasses import replace
from pathlib import Path

import numpy as np

from .bands import (
    HELICITIES,
    dos,
    fermi_surface,
    filling,
    helical_dispersion,
    solve_mu,
)
from .config import ConfigError, RunConfig, config_from_mapping
from .emission import PhotonPair, two_photon_density_matrix
from .lattice import high_symmetry_path, make_grid
from .sweeps import (
    FIGURES,
    RHO_COLUMNS,
    SWEEP_AXES,
    SweepSpec,
    emit_figure_data,
    resolved_band,
    run_sweep,
    sweep_to_csv,
    write_csv,
)


def _add_global_flags(parser: argparse.ArgumentParser, suppress: bool) -> None:
    d = argparse.SUPPRESS if suppress else None
    parser.add_argument("--config", type=Path, default=d, help="JSON config file")
    parser.add_argument("--out", type=Path, default=d, help="output path (or directory for `figure`)")
    parser.add_argument("--grid", type=int, default=d, help="override grid_n")
    parser.add_argument(
        "--threads",
        type=int,
        default=1 if not suppress else argparse.SUPPRESS,
        help="worker threads; affects speed only, results are identical",
    )


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="cooperlight",
        description=(
            "Purity and polarization density matrix of photon pairs emitted "
            "by Cooper-pair recombination in a Rashba-Dresselhaus "
            "superconducting quantum well."
        ),
    )
    _add_global_flags(parser, suppress=False)
    shared = argparse.ArgumentParser(add_help=False)
    _add_global_flags(shared, suppress=True)
    sub = parser.add_subparsers(dest="command", required=True)

    sub.add_parser("dos", parents=[shared], help="density of states CSV")

    p_bands = sub.add_parser(
        "bands", parents=[shared], help="helical bands along the symmetry path"
    )
    p_bands.add_argument(
        "--samples-per-leg", type=int, default=256, help="path sampling density"
    )

    sub.add_parser(
        "fermi-surface", parents=[shared], help="zero-energy contours CSV"
    )

    p_mu = sub.add_parser(
        "solve-mu", parents=[shared], help="chemical potential for a target filling"
    )
    p_mu.add_argument("--target", type=float, help="target filling in (0, 2)")

    p_sweep = sub.add_parser(
        "purity-sweep", parents=[shared], help="one-parameter sweep CSV"
    )
    p_sweep.add_argument("--axis", default="r", choices=SWEEP_AXES)
    p_sweep.add_argument("--start", type=float, default=None)
    p_sweep.add_argument("--stop", type=float, default=None)
    p_sweep.add_argument("--count", type=int, default=None)
    p_sweep.add_argument(
        "--values", default=None, help="comma-separated explicit sweep values"
    )

    sub.add_parser(
        "emission-matrix",
        parents=[shared],
        help="weighted polarization density matrix (JSON or CSV)",
    )

    p_fig = sub.add_parser(
        "figure", parents=[shared], help="emit the data files behind a figure"
    )
    p_fig.add_argument("id", choices=sorted(FIGURES), help="figure identifier")

    return parser


def _load_config(args) -> RunConfig:
    mapping: dict = {}
    if args.config is not None:
        try:
            text = Path(args.config).read_text()
        except OSError as exc:
            raise ConfigError(f"cannot read config file: {exc}") from None
        try:
            loaded = json.loads(text) if text.strip() else {}
        except json.JSONDecodeError as exc:
            raise ConfigError(f"config is not valid JSON: {exc}") from None
        if not isinstance(loaded, dict):
            raise ConfigError("config must be a JSON object at top level")
        mapping = loaded
    if args.grid is not None:
        mapping["grid_n"] = args.grid
    return config_from_mapping(mapping)


def _out_path(args, cfg: RunConfig, default: str) -> Path:
    if args.out is not None:
        return Path(args.out)
    if cfg.output:
        return Path(cfg.output)
    return Path(default)


def _cmd_dos(args, cfg: RunConfig) -> int:
    grid = make_grid(cfg.grid_n)
    band = resolved_band(cfg, grid, args.threads)
    curve = dos(band, grid, sigma_e=cfg.sigma_e, threads=args.threads)
    rows = np.column_stack([curve.energies, curve.density])
    path = write_csv(_out_path(args, cfg, "dos.csv"), ("energy", "dos"), rows)
    print(f"wrote {path}")
    return 0


def _cmd_bands(args, cfg: RunConfig) -> int:
    path_obj = high_symmetry_path(samples_per_leg=args.samples_per_leg)
    k = (path_obj.kx, path_obj.ky)
    grid = make_grid(cfg.grid_n)
    band = resolved_band(cfg, grid, args.threads)
    rows = np.column_stack(
        [
            path_obj.arc,
            helical_dispersion(k, -1, band),
            helical_dispersion(k, +1, band),
        ]
    )
    out = _out_path(args, cfg, "bands.csv")
    main = write_csv(out, ("path_coordinate", "eps_minus", "eps_plus"), rows)
    ticks = write_csv(
        out.with_name(out.stem + "_ticks" + out.suffix),
        ("label", "path_coordinate"),
        list(zip(path_obj.labels, path_obj.vertex_arcs)),
    )
    print(f"wrote {main}")
    print(f"wrote {ticks}")
    return 0


def _cmd_fermi_surface(args, cfg: RunConfig) -> int:
    grid = make_grid(cfg.grid_n)
    band = resolved_band(cfg, grid, args.threads)
    rows = []
    for xi in HELICITIES:
        surface = fermi_surface(band, grid, xi)
        for ci, contour in enumerate(surface.contours):
            for kx, ky in contour.vertices:
                rows.append([ci, xi, kx, ky])
    path = write_csv(
        _out_path(args, cfg, "fermi_surface.csv"),
        ("contour", "xi", "kx", "ky"),
        rows,
    )
    print(f"wrote {path}")
    return 0


def _cmd_solve_mu(args, cfg: RunConfig) -> int:
    target = args.target if args.target is not None else cfg.filling_target
    if target is None:
        raise ConfigError(
            "solve-mu needs a target: pass --target or set 'filling' in the config"
        )
    grid = make_grid(cfg.grid_n)
    mu = solve_mu(target, cfg.band, grid, cfg.temperature)
    achieved = filling(replace(cfg.band, mu=mu), grid, cfg.temperature)
    print(f"mu = {mu:.17g}")
    print(f"filling = {achieved:.17g}")
    if args.out is not None or cfg.output:
        path = write_csv(
            _out_path(args, cfg, "mu.csv"),
            ("target", "mu", "filling"),
            [[target, mu, achieved]],
        )
        print(f"wrote {path}")
    return 0


def _sweep_values(args) -> tuple[float, ...]:
    if args.values is not None:
        try:
            return tuple(float(s) for s in str(args.values).split(","))
        except ValueError:
            raise ConfigError(
                f"--values must be a comma-separated number list, got {args.values!r}"
            ) from None
    start = 0.0 if args.start is None else args.start
    stop = 1.0 if args.stop is None else args.stop
    count = 101 if args.count is None else args.count
    if count < 1:
        raise ConfigError(f"--count must be at least 1, got {count}")
    if stop < start:
        raise ConfigError(f"--stop must be >= --start, got {start}..{stop}")
    return tuple(np.linspace(start, stop, count))


def _cmd_purity_sweep(args, cfg: RunConfig) -> int:
    spec = SweepSpec(axis=args.axis, values=_sweep_values(args), config=cfg)
    table = run_sweep(spec, threads=args.threads)
    path = sweep_to_csv(table, _out_path(args, cfg, "purity_sweep.csv"))
    print(f"wrote {path}")
    return 0


def _cmd_emission_matrix(args, cfg: RunConfig) -> int:
    grid = make_grid(cfg.grid_n)
    band = resolved_band(cfg, grid, args.threads)
    w1, w2 = cfg.photon_frequencies()
    pair = PhotonPair(omega1=w1, omega2=w2, band_gap=cfg.band_gap)
    result = two_photon_density_matrix(
        pair,
        band,
        cfg.gap,
        cfg.polarization,
        grid,
        cfg.temperature,
        cfg.sigma_delta,
        cfg.b_matrix_element,
        args.threads,
    )
    if cfg.fmt == "json":
        path = _out_path(args, cfg, "emission.json")
        path.parent.mkdir(parents=True, exist_ok=True)
        path.write_text(
            json.dumps(result.to_json_dict(), indent=2, sort_keys=True) + "\n"
        )
    else:
        path = write_csv(
            _out_path(args, cfg, "emission.csv"),
            ("trace", *RHO_COLUMNS),
            [[result.rho.trace, *result.rho.values.ravel()]],
        )
    print(f"wrote {path}")
    return 0


def _cmd_figure(args, cfg: RunConfig) -> int:
    out_dir = args.out if args.out is not None else Path(cfg.output or ".")
    paths = emit_figure_data(args.id, cfg, out_dir, threads=args.threads)
    for p in paths:
        print(f"wrote {p}")
    return 0


_COMMANDS = {
    "dos": _cmd_dos,
    "bands": _cmd_bands,
    "fermi-surface": _cmd_fermi_surface,
    "solve-mu": _cmd_solve_mu,
    "purity-sweep": _cmd_purity_sweep,
    "emission-matrix": _cmd_emission_matrix,
    "figure": _cmd_figure,
}


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        cfg = _load_config(args)
        return _COMMANDS[args.command](args, cfg)
    except ConfigError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except Exception as exc:  # noqa: BLE001 - CLI boundary
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
