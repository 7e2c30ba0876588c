"""Cauchy projections and the Hilbert transform on the uniform spectral grid.

Realized as Fourier multipliers: C+ keeps the modes with frequency >= 0
(zero mode wholly in C+), C- is minus the complementary restriction, so
C+ - C- = I holds exactly on the grid and both are exactly idempotent.
The construction periodizes the line; accuracy against the line operators
needs the input to decay at the grid edges.
"""

from __future__ import annotations

import warnings

import numpy as np

from .errors import EdgeDecayWarning

EDGE_DECAY_RATIO = 1e-6


def _check_edge_decay(values: np.ndarray) -> None:
    sup = np.abs(values).max()
    if sup == 0.0:
        return
    edge = max(abs(values[..., 0].max()), abs(values[..., -1].max()))
    if edge > EDGE_DECAY_RATIO * sup:
        warnings.warn(
            f"field does not decay at the grid edges (edge/sup = {edge / sup:.2e}); "
            "periodized Cauchy projections lose accuracy",
            EdgeDecayWarning,
            stacklevel=3,
        )


def _nonneg_mask(n: int) -> np.ndarray:
    freqs = np.fft.fftfreq(n)
    mask = freqs >= 0.0
    mask[n // 2] = True  # Nyquist counted with the nonnegative half
    return mask


def cauchy_plus(values: np.ndarray, check_decay: bool = True) -> np.ndarray:
    """Boundary value from the upper half-plane: keep frequencies >= 0."""
    values = np.asarray(values, dtype=np.complex128)
    if check_decay:
        _check_edge_decay(values)
    fh = np.fft.fft(values)
    fh[..., ~_nonneg_mask(values.shape[-1])] = 0.0
    return np.fft.ifft(fh)


def cauchy_minus(values: np.ndarray, check_decay: bool = True) -> np.ndarray:
    """Boundary value from the lower half-plane; C+ - C- = I by construction."""
    return cauchy_plus(values, check_decay) - np.asarray(values, dtype=np.complex128)


def hilbert(values: np.ndarray, check_decay: bool = True) -> np.ndarray:
    """H = i (C+ + C-); multiplier i*sign(frequency), meaningful for mean-zero fields."""
    cp = cauchy_plus(values, check_decay)
    return 1j * (2.0 * cp - np.asarray(values, dtype=np.complex128))
