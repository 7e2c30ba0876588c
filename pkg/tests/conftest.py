"""Shared fixtures: the default-resolution pipeline objects are expensive, so
they are computed once per session and reused by unit and acceptance tests."""

import numpy as np
import pytest

import ndnls_ist as ni

GAUSS_AMP = 0.095
DEFAULT_N = 2048
DEFAULT_L = 12.0
DEFAULT_M = 2048
DEFAULT_Z = 24.0


@pytest.fixture(scope="session")
def default_grids():
    return ni.build_grids(DEFAULT_N, DEFAULT_L, DEFAULT_M, DEFAULT_Z)


@pytest.fixture(scope="session")
def gauss_potential(default_grids):
    grid, _ = default_grids
    return ni.Potential.from_samples(grid, ni.model.gaussian_samples(grid, GAUSS_AMP))


@pytest.fixture(scope="session")
def gauss_scattering(default_grids, gauss_potential):
    _, sgrid = default_grids
    return ni.scattering_data(gauss_potential, sgrid)


@pytest.fixture(scope="session")
def gauss_reflection(gauss_scattering):
    return ni.reflection(gauss_scattering)


@pytest.fixture(scope="session")
def gauss_delta(gauss_reflection):
    return ni.solve_scalar_delta(gauss_reflection)


@pytest.fixture(scope="session")
def gauss_deltified(gauss_reflection, gauss_delta):
    return ni.deltify(gauss_reflection, gauss_delta)


@pytest.fixture(scope="session")
def gauss_roundtrip(default_grids, gauss_potential):
    _, sgrid = default_grids
    return ni.ist_solve(gauss_potential, sgrid, 0.0)


@pytest.fixture(scope="session")
def small_grids():
    return ni.build_grids(256, DEFAULT_L, 256, DEFAULT_Z)


@pytest.fixture(scope="session")
def small_gauss(small_grids):
    grid, _ = small_grids
    return ni.Potential.from_samples(grid, ni.model.gaussian_samples(grid, GAUSS_AMP))


def relative_l2(got, want):
    return float(np.linalg.norm(got - want) / np.linalg.norm(want))
