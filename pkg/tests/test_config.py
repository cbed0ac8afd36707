"""Config parsing, sweep machinery, and figure-data emission tests."""

import csv
import math

import numpy as np
import pytest

from cooperlight import (
    ConfigError,
    GapSpec,
    PhotonPair,
    PolarizationAxis,
    SingletChannel,
    SweepSpec,
    config_from_mapping,
    emit_figure_data,
    make_grid,
    parse_config,
    purity,
    run_sweep,
    two_photon_density_matrix,
)
from cooperlight.sweeps import (
    RHO_COLUMNS,
    format_value,
    resolved_band,
    sweep_to_csv,
    write_csv,
)


def read_csv(path):
    with open(path, newline="") as fh:
        rows = list(csv.reader(fh))
    return rows[0], rows[1:]


def test_defaults():
    cfg = config_from_mapping({})
    assert cfg.band.t == 1.0 and cfg.band.mu == 0.0
    assert cfg.band.lam == 0.5 and cfg.band.theta_soc == 0.0
    assert cfg.gap.channel is SingletChannel.S
    assert cfg.gap.r == 1.0 and cfg.gap.delta0 == 0.2 and cfg.gap.theta_gap == 0.0
    assert cfg.polarization.theta == 0.0 and cfg.polarization.phi == 0.0
    assert cfg.grid_n == 256
    assert cfg.temperature == 0.01
    assert cfg.sigma_e == 0.02 and cfg.sigma_delta == 0.05
    assert cfg.filling_target is None
    assert cfg.band_gap == 10.0 and cfg.omega1 is None
    assert cfg.b_matrix_element == 1.0
    assert cfg.output is None and cfg.fmt == "csv"
    assert cfg.explicit == frozenset()


def test_explicit_keys_are_tracked():
    cfg = config_from_mapping({"r": 0.5, "grid_n": 64})
    assert cfg.explicit == frozenset({"r", "grid_n"})
    assert cfg.gap.r == 0.5 and cfg.grid_n == 64


def test_unknown_key_rejected():
    with pytest.raises(ConfigError, match="bogus"):
        config_from_mapping({"bogus": 1})


def test_mu_and_filling_are_exclusive():
    with pytest.raises(ConfigError, match="mutually exclusive"):
        config_from_mapping({"mu": 0.1, "filling": 1.0})
    cfg = config_from_mapping({"mu": 0.1, "filling": None})
    assert cfg.band.mu == 0.1 and cfg.filling_target is None
    cfg = config_from_mapping({"filling": 0.8})
    assert cfg.filling_target == 0.8


@pytest.mark.parametrize(
    "mapping",
    [
        {"r": 1.5},
        {"r": -0.1},
        {"theta": 4.0},
        {"phi": 6.5},
        {"theta_soc": 2.0},
        {"theta_gap": -0.1},
        {"t": 0.0},
        {"t": -1.0},
        {"temperature": 0.0},
        {"sigma_e": -0.02},
        {"sigma_delta": 0.0},
        {"lambda": -0.5},
        {"delta0": 0.0},
        {"grid_n": 1},
        {"grid_n": True},
        {"grid_n": 2.5},
        {"r": "half"},
        {"r": True},
        {"mu": float("nan")},
        {"filling": 0.0},
        {"filling": 2.0},
        {"channel": "p_wave"},
        {"format": "yaml"},
        {"output": 5},
        {"omega1": "big"},
    ],
)
def test_rejected_values(mapping):
    with pytest.raises(ConfigError):
        config_from_mapping(mapping)


def test_channel_aliases_accepted():
    assert config_from_mapping({"channel": "dxy"}).gap.channel is SingletChannel.D_XY
    assert (
        config_from_mapping({"channel": "s-star"}).gap.channel is SingletChannel.S_STAR
    )
    assert (
        config_from_mapping({"channel": "dx2-y2"}).gap.channel
        is SingletChannel.D_X2Y2
    )


def test_photon_frequencies():
    cfg = config_from_mapping({})
    assert cfg.photon_frequencies() == (10.0, 10.0)
    cfg = config_from_mapping({"omega1": 9.5})
    assert cfg.photon_frequencies() == (9.5, 10.5)
    cfg = config_from_mapping({"omega1": 0.3, "band_gap": 0.0})
    assert cfg.photon_frequencies() == (0.3, -0.3)


def test_parse_config_text():
    assert parse_config("").explicit == frozenset()
    assert parse_config("{}").explicit == frozenset()
    cfg = parse_config('{"r": 0.25, "channel": "d_xy"}')
    assert cfg.gap.r == 0.25 and cfg.gap.channel is SingletChannel.D_XY
    with pytest.raises(ConfigError, match="JSON"):
        parse_config("not json")
    with pytest.raises(ConfigError, match="object"):
        parse_config("[1, 2]")


def test_sweep_spec_validation():
    cfg = config_from_mapping({"grid_n": 16})
    with pytest.raises(ConfigError, match="axis"):
        SweepSpec(axis="delta0", values=(0.1,), config=cfg)
    with pytest.raises(ConfigError, match="at least one"):
        SweepSpec(axis="r", values=(), config=cfg)
    with pytest.raises(ConfigError):
        SweepSpec(axis="r", values=(0.5, 1.2), config=cfg)
    with pytest.raises(ConfigError):
        SweepSpec(axis="filling", values=(2.0,), config=cfg)
    with pytest.raises(ConfigError):
        SweepSpec(axis="theta", values=(float("inf"),), config=cfg)


def test_run_sweep_r_axis_sorts_and_hits_pure_singlet():
    cfg = config_from_mapping({"grid_n": 32})
    table = run_sweep(SweepSpec(axis="r", values=(0.25, 1.0, 0.0), config=cfg))
    assert table.columns == ("r", "purity")
    assert list(table.rows[:, 0]) == [0.0, 0.25, 1.0]
    assert table.rows[-1, 1] == 2.0
    grid = make_grid(32)
    direct = purity(GapSpec(channel="s", r=0.25, delta0=0.2), PolarizationAxis(), grid)
    assert table.rows[1, 1] == direct


def test_run_sweep_angle_axes():
    cfg = config_from_mapping({"grid_n": 32, "r": 0.5})
    grid = make_grid(32)
    table = run_sweep(SweepSpec(axis="theta", values=(1.0, 0.2), config=cfg))
    assert list(table.rows[:, 0]) == [0.2, 1.0]
    want = purity(cfg.gap, PolarizationAxis(theta=0.2, phi=0.0), grid)
    assert table.rows[0, 1] == want

    table = run_sweep(SweepSpec(axis="phi", values=(0.4,), config=cfg))
    want = purity(cfg.gap, PolarizationAxis(theta=0.0, phi=0.4), grid)
    assert table.rows[0, 1] == want


def test_run_sweep_band_axes_leave_purity_constant():
    # The polarization weights never see the normal-state band, so sweeping
    # band-only knobs tabulates a flat curve.
    cfg = config_from_mapping({"grid_n": 16, "r": 0.3})
    table = run_sweep(
        SweepSpec(axis="theta_soc", values=(0.0, 0.5, math.pi / 2), config=cfg)
    )
    assert table.rows[0, 1] == table.rows[1, 1] == table.rows[2, 1]
    table = run_sweep(SweepSpec(axis="filling", values=(0.8, 1.2), config=cfg))
    assert table.rows[0, 1] == table.rows[1, 1]


def test_run_sweep_omega1_tabulates_density_matrix():
    cfg = config_from_mapping(
        {"grid_n": 32, "r": 0.5, "band_gap": 0.0, "theta": 0.9}
    )
    table = run_sweep(
        SweepSpec(axis="omega1", values=(0.3, -0.3, 0.0), config=cfg)
    )
    assert table.columns == ("omega1", "omega2", "trace", *RHO_COLUMNS)
    assert list(table.rows[:, 0]) == [-0.3, 0.0, 0.3]
    assert np.all(table.rows[:, 1] == -table.rows[:, 0])
    assert np.all(table.rows[:, 2] > 0.0)
    grid = make_grid(32)
    res = two_photon_density_matrix(
        PhotonPair.balanced(0.0), cfg.band, cfg.gap, cfg.polarization,
        grid, cfg.temperature, cfg.sigma_delta,
    )
    assert table.rows[1, 2] == res.rho.trace
    assert np.array_equal(table.rows[1, 3:], res.rho.values.ravel())
    # off-pattern entries stay zero all along the sweep
    assert np.all(table.rows[:, 3 + 1] == 0.0)  # rho_LL_LR


def test_format_value():
    assert format_value(2.0) == "2"
    assert format_value(0.1) == "0.10000000000000001"
    assert format_value(5) == "5"
    assert format_value(np.int64(7)) == "7"
    assert format_value(np.float64(0.5)) == "0.5"
    assert format_value("s_star") == "s_star"


def test_write_csv_round_trip(tmp_path):
    path = tmp_path / "deep" / "table.csv"
    out = write_csv(path, ("a", "b"), [[1, 0.1], [2, 2.0]])
    assert out == path and path.exists()
    header, rows = read_csv(path)
    assert header == ["a", "b"]
    assert rows == [["1", "0.10000000000000001"], ["2", "2"]]
    first = path.read_bytes()
    write_csv(path, ("a", "b"), [[1, 0.1], [2, 2.0]])
    assert path.read_bytes() == first


def test_sweep_to_csv(tmp_path):
    cfg = config_from_mapping({"grid_n": 16})
    table = run_sweep(SweepSpec(axis="r", values=(0.0, 1.0), config=cfg))
    path = sweep_to_csv(table, tmp_path / "sweep.csv")
    header, rows = read_csv(path)
    assert header == ["r", "purity"]
    assert len(rows) == 2
    assert float(rows[1][1]) == 2.0


def test_resolved_band():
    grid = make_grid(64)
    cfg = config_from_mapping({"grid_n": 64})
    assert resolved_band(cfg, grid) is cfg.band
    cfg = config_from_mapping({"grid_n": 64, "filling": 1.0})
    band = resolved_band(cfg, grid)
    assert abs(band.mu) < 1e-6
    assert band.t == cfg.band.t and band.lam == cfg.band.lam


def test_emit_figure_data_rejects_unknown_id(tmp_path):
    cfg = config_from_mapping({"grid_n": 8})
    with pytest.raises(ConfigError, match="fig9"):
        emit_figure_data("fig9", cfg, tmp_path)


def test_fig2a_band_path_files(tmp_path):
    cfg = config_from_mapping({"grid_n": 8})
    paths = emit_figure_data("fig2a", cfg, tmp_path)
    assert [p.name for p in paths] == ["fig2a.csv", "fig2a_ticks.csv"]
    header, rows = read_csv(paths[0])
    assert header == ["path_coordinate", "eps_minus", "eps_plus"]
    assert len(rows) == 3 * 256 - 2
    header, ticks = read_csv(paths[1])
    assert [row[0] for row in ticks] == ["Gamma", "K", "M", "Gamma"]
    assert float(ticks[0][1]) == 0.0


def test_fig3_purity_curves(tmp_path):
    cfg = config_from_mapping({"grid_n": 16})
    (path,) = emit_figure_data("fig3", cfg, tmp_path)
    header, rows = read_csv(path)
    assert header == ["r", "s", "s_star", "d_x2y2", "d_xy"]
    assert len(rows) == 101
    assert float(rows[0][0]) == 0.0 and float(rows[-1][0]) == 1.0
    last = [float(v) for v in rows[-1][1:]]
    assert last[0] == 2.0
    assert last[0] >= last[1] >= last[2] >= last[3]
    assert last[3] < last[0]


def test_fig4_one_file_per_polar_angle(tmp_path):
    cfg = config_from_mapping({"grid_n": 8, "channel": "d_xy"})
    paths = emit_figure_data("fig4", cfg, tmp_path)
    assert len(paths) == 5
    header, rows = read_csv(paths[2])
    assert header == ["r", "theta", "purity"]
    assert len(rows) == 101
    assert float(rows[0][1]) == pytest.approx(2.0 * math.pi / 8.0)


def test_fig8_emission_table_runs_at_resonance_by_default(tmp_path):
    cfg = config_from_mapping({"grid_n": 16})
    (path,) = emit_figure_data("fig8", cfg, tmp_path)
    header, rows = read_csv(path)
    assert header == ["channel", "r", "trace", *RHO_COLUMNS]
    assert len(rows) == 12
    assert [row[0] for row in rows[:3]] == ["s", "s", "s"]
    assert [float(row[1]) for row in rows[:3]] == [1.0, 0.5, 0.0]
    for row in rows:
        assert float(row[2]) > 0.0
        if float(row[1]) == 1.0:
            values = np.array([float(v) for v in row[3:]]).reshape(4, 4)
            assert values[0, 0] == 0.0 and values[3, 3] == 0.0
            assert values[1, 1] > 0.0


def test_fig8_with_explicit_band_gap_can_be_dark(tmp_path):
    cfg = config_from_mapping({"grid_n": 8, "band_gap": 10.0})
    (path,) = emit_figure_data("fig8", cfg, tmp_path)
    _, rows = read_csv(path)
    assert len(rows) == 12
    for row in rows:
        assert float(row[2]) == 0.0
        assert all(float(v) == 0.0 for v in row[3:])
