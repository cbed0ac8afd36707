import math

import numpy as np
import pytest

from cooperlight.pairing import (
    GapSpec,
    SingletChannel,
    dvector_magnitude,
    pairing_fractions,
    parse_channel,
    projected_gap,
    singlet_gap,
    structure_factor,
    triplet_dvector,
)

ALL_CHANNELS = list(SingletChannel)


def test_structure_factor_table():
    assert structure_factor(SingletChannel.S, (1.2, -0.4)) == 1.0
    assert structure_factor(SingletChannel.S_STAR, (0.0, 0.0)) == pytest.approx(2.0)
    assert structure_factor(SingletChannel.S_STAR, (math.pi / 2, math.pi / 2)) == (
        pytest.approx(0.0, abs=1e-15)
    )
    assert structure_factor(SingletChannel.D_X2Y2, (0.0, math.pi)) == pytest.approx(
        2.0
    )
    assert structure_factor(SingletChannel.D_X2Y2, (math.pi, 0.0)) == pytest.approx(
        -2.0
    )
    assert structure_factor(
        SingletChannel.D_XY, (math.pi / 2, math.pi / 2)
    ) == pytest.approx(1.0)
    assert structure_factor(
        SingletChannel.D_XY, (math.pi / 2, -math.pi / 2)
    ) == pytest.approx(-1.0)


@pytest.mark.parametrize("channel", ALL_CHANNELS)
def test_structure_factor_even_parity(channel):
    rng = np.random.default_rng(11)
    k = rng.uniform(-math.pi, math.pi, size=(2, 50))
    plus = structure_factor(channel, (k[0], k[1]))
    minus = structure_factor(channel, (-k[0], -k[1]))
    np.testing.assert_array_equal(plus, minus)


def test_parse_channel_aliases():
    assert parse_channel("s") is SingletChannel.S
    assert parse_channel("S-Star") is SingletChannel.S_STAR
    assert parse_channel("s_star") is SingletChannel.S_STAR
    assert parse_channel("DX2Y2") is SingletChannel.D_X2Y2
    assert parse_channel("dxy") is SingletChannel.D_XY
    assert parse_channel(SingletChannel.D_XY) is SingletChannel.D_XY
    with pytest.raises(ValueError, match="unknown singlet channel"):
        parse_channel("p_wave")


def test_gap_spec_validation_and_coercion():
    g = GapSpec(channel="dxy", r=0.5)
    assert g.channel is SingletChannel.D_XY
    with pytest.raises(ValueError):
        GapSpec(r=1.2)
    with pytest.raises(ValueError):
        GapSpec(r=-0.1)
    with pytest.raises(ValueError):
        GapSpec(delta0=0.0)
    with pytest.raises(ValueError):
        GapSpec(theta_gap=3.0)


def test_singlet_gap_scaling():
    g = GapSpec(channel="s_star", r=0.3, delta0=0.2)
    k = (0.7, -1.1)
    assert singlet_gap(k, g) == pytest.approx(
        0.3 * 0.2 * (math.cos(0.7) + math.cos(-1.1))
    )


def test_triplet_dvector_follows_soc_field():
    g = GapSpec(channel="s", r=0.25, delta0=0.4, theta_gap=0.0)
    dx, dy = triplet_dvector((math.pi / 2, 0.0), g)
    assert dx == pytest.approx(0.0, abs=1e-15)
    assert dy == pytest.approx(-0.75 * 0.4)
    assert dvector_magnitude((math.pi / 2, 0.0), g) == pytest.approx(0.3)


def test_triplet_dvector_odd_parity():
    g = GapSpec(channel="s", r=0.1, delta0=0.2, theta_gap=0.4)
    rng = np.random.default_rng(3)
    k = rng.uniform(-math.pi, math.pi, size=(2, 40))
    dxp, dyp = triplet_dvector((k[0], k[1]), g)
    dxm, dym = triplet_dvector((-k[0], -k[1]), g)
    np.testing.assert_array_equal(dxp, -dxm)
    np.testing.assert_array_equal(dyp, -dym)


def test_projected_gap_examples():
    g = GapSpec(channel="s", r=0.5, delta0=0.2)
    k = (math.pi / 2, 0.0)
    # psi = 0.1, |d| = 0.1 at this k
    assert projected_gap(k, +1, g) == pytest.approx(0.2)
    assert projected_gap(k, -1, g) == pytest.approx(0.0, abs=1e-15)
    with pytest.raises(ValueError):
        projected_gap(k, 0, g)


@pytest.mark.parametrize("channel", ALL_CHANNELS)
def test_projected_gap_triangle_inequality(channel, grid64):
    g = GapSpec(channel=channel, r=0.6, delta0=0.2, theta_gap=0.3)
    k = (grid64.kx, grid64.ky)
    lhs = np.abs(projected_gap(k, -1, g))
    rhs = np.abs(singlet_gap(k, g)) + dvector_magnitude(k, g)
    assert np.all(lhs <= rhs + 1e-15)


@pytest.mark.parametrize("channel", ALL_CHANNELS)
@pytest.mark.parametrize("xi", [1, -1])
def test_pairing_fractions_normalized_everywhere(channel, xi, grid128):
    k = (grid128.kx, grid128.ky)
    for r in np.linspace(0.0, 1.0, 11):
        frac = pairing_fractions(k, xi, GapSpec(channel=channel, r=r))
        s = frac.a * frac.a + frac.b * frac.b
        assert np.all(np.abs(s[frac.defined] - 1.0) <= 1e-12)
        # undefined points are zeroed, not normalized
        assert np.all(s[~frac.defined] == 0.0)


def test_pairing_fractions_sign_tracks_helicity():
    g = GapSpec(channel="s", r=0.4)
    k = (0.9, 0.3)
    up = pairing_fractions(k, +1, g)
    dn = pairing_fractions(k, -1, g)
    assert float(up.b) > 0.0
    assert float(dn.b) == -float(up.b)
    assert float(up.a) == float(dn.a)


def test_pairing_fractions_pure_limits():
    k = (0.9, 0.3)
    singlet = pairing_fractions(k, +1, GapSpec(channel="s", r=1.0))
    assert float(singlet.a) == 1.0 and float(singlet.b) == 0.0
    triplet = pairing_fractions(k, +1, GapSpec(channel="s", r=0.0))
    assert float(triplet.a) == 0.0 and float(triplet.b) == 1.0


def test_pairing_fractions_node_detection():
    # d_xy singlet node on the kx axis: r = 1 leaves no gap at all there
    frac = pairing_fractions((0.7, 0.0), +1, GapSpec(channel="d_xy", r=1.0))
    assert not bool(frac.defined)
    assert float(frac.a) == 0.0 and float(frac.b) == 0.0
    # mixing in triplet weight re-opens it
    frac2 = pairing_fractions((0.7, 0.0), +1, GapSpec(channel="d_xy", r=0.5))
    assert bool(frac2.defined)
