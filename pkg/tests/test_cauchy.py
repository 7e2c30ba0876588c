import warnings
from math import comb

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

import ndnls_ist as ni
from ndnls_ist.cauchy import cauchy_minus, cauchy_plus, hilbert

M = 2048
Z = 24.0


def _nodes():
    return ni.SpectralGrid(M, Z).nodes


def _pole_sum(z, poles, residues):
    f = np.zeros_like(z, dtype=np.complex128)
    for p, c in zip(poles, residues):
        f = f + c / (z - p)
    return f


def _binomial_pole_field(z, half_plane, npoles, scale=1.0 + 0.0j):
    """Finite pole sum in one half-plane whose residues cancel the leading
    npoles-1 tail moments, so the field honors the edge-decay precondition."""
    s = 1j if half_plane == "upper" else -1j
    poles = [s * (j + 1) for j in range(npoles)]
    residues = [scale * (-1) ** j * comb(npoles - 1, j) for j in range(npoles)]
    return _pole_sum(z, poles, residues), poles, residues


def _random_field(seed, n=M):
    rng = np.random.default_rng(seed)
    return rng.standard_normal(n) + 1j * rng.standard_normal(n)


class TestProjectionAlgebra:
    @settings(max_examples=15, deadline=None)
    @given(seed=st.integers(0, 2**31))
    def test_identity_and_idempotence(self, seed):
        # note C- o C- = -C-: with C+ - C- = I and C- C+ = 0 one has
        # C- = C-(C+ - C-) = -(C- o C-), so -C- is the complementary projection
        f = _random_field(seed, 512)
        cp = cauchy_plus(f, check_decay=False)
        cm = cauchy_minus(f, check_decay=False)
        assert np.abs(cp - cm - f).max() < 1e-13
        assert np.abs(cauchy_plus(cp, check_decay=False) - cp).max() < 1e-13
        assert np.abs(cauchy_minus(cm, check_decay=False) + cm).max() < 1e-13
        assert np.abs(cauchy_plus(cm, check_decay=False)).max() < 1e-13
        assert np.abs(cauchy_minus(cp, check_decay=False)).max() < 1e-13

    def test_zero_mode_convention(self):
        ones = np.ones(64, dtype=np.complex128)
        assert np.allclose(cauchy_plus(ones, check_decay=False), 1.0)
        assert np.abs(cauchy_minus(ones, check_decay=False)).max() < 1e-14

    def test_minus_equals_plus_minus_identity(self):
        f = _random_field(11, 256)
        np.testing.assert_array_equal(
            cauchy_minus(f, check_decay=False),
            cauchy_plus(f, check_decay=False) - f,
        )


class TestHilbert:
    def test_zero(self):
        assert np.all(hilbert(np.zeros(32)) == 0)

    def test_l2_bound_and_involution(self):
        f = _random_field(5, 512)
        f -= f.mean()
        hf = hilbert(f, check_decay=False)
        assert np.linalg.norm(hf) <= np.linalg.norm(f) * (1 + 1e-12)
        assert np.linalg.norm(hf) == pytest.approx(np.linalg.norm(f), rel=1e-12)
        hhf = hilbert(hf, check_decay=False)
        assert np.abs(hhf + f).max() < 1e-12


class TestAnalyticityOracle:
    """Residue-calculus oracle on pole sums that satisfy the edge-decay
    precondition (moment-cancelled residues, all poles in one half-plane)."""

    @pytest.mark.parametrize("npoles", [7, 9])
    def test_lower_halfplane_poles(self, npoles):
        z = _nodes()
        f, _, _ = _binomial_pole_field(z, "lower", npoles, scale=0.7 - 0.2j)
        sup = np.abs(f).max()
        with warnings.catch_warnings():
            warnings.simplefilter("error")  # decay precondition must hold
            cp = cauchy_plus(f)
            cm = cauchy_minus(f)
        assert np.abs(cp - f).max() / sup <= 1e-6
        assert np.abs(cm).max() / sup <= 1e-6

    @pytest.mark.parametrize("npoles", [7, 9])
    def test_upper_halfplane_poles(self, npoles):
        z = _nodes()
        f, _, _ = _binomial_pole_field(z, "upper", npoles)
        sup = np.abs(f).max()
        with warnings.catch_warnings():
            warnings.simplefilter("error")
            cp = cauchy_plus(f)
            cm = cauchy_minus(f)
        assert np.abs(cp).max() / sup <= 1e-6
        assert np.abs(cm + f).max() / sup <= 1e-6

    def test_single_pole_fields_warn_and_degrade_gracefully(self):
        # The literal single-pole fields violate the documented edge-decay
        # precondition by four orders of magnitude, so the periodized operator
        # only reproduces the residue answer at the periodization level.
        z = _nodes()
        f = 1.0 / (z + 1j)
        with pytest.warns(ni.EdgeDecayWarning):
            cp = cauchy_plus(f)
        interior = np.abs(z) < Z / 2
        assert np.abs(cp - f)[interior].max() <= 0.1
        g = 1.0 / (z - 1j)
        with pytest.warns(ni.EdgeDecayWarning):
            cm = cauchy_minus(g)
        assert np.abs(cm + g)[interior].max() <= 0.1

    def test_lorentzian_matches_partial_fractions(self):
        # 1/(z^2+1) = (i/2)[1/(z+i) - 1/(z-i)]: C+ keeps (i/2)/(z+i), C- gives (i/2)/(z-i)
        z = _nodes()
        f = 1.0 / (z**2 + 1.0)
        with pytest.warns(ni.EdgeDecayWarning):
            cp = cauchy_plus(f)
        with pytest.warns(ni.EdgeDecayWarning):
            cm = cauchy_minus(f)
        interior = np.abs(z) < Z / 2
        assert np.abs(cp - 0.5j / (z + 1j))[interior].max() <= 0.1
        assert np.abs(cm - 0.5j / (z - 1j))[interior].max() <= 0.1
        # the grid identity is exact regardless
        assert np.abs(cp - cm - f).max() < 1e-14

    def test_gaussian_round_trip_needs_no_warning(self):
        z = _nodes()
        f = np.exp(-(z**2)) * (1 + 0.3j)
        with warnings.catch_warnings():
            warnings.simplefilter("error")
            cp = cauchy_plus(f)
            cm = cauchy_minus(f)
        assert np.abs(cp - cm - f).max() < 1e-14
