"""Per-x solves of the coupled Cauchy-projection boundary systems (plain and
deltified flavors) and the scalar jump factorization.

The alternating fixed point

    m = e1 + P_m(n * rho_m),   n = e2 + P_n(m * rho_n)

is geometric for gate-passing data; a Krylov solve of the stacked linearized
system backs it up near the admissibility boundary.

Periodization control: the projections are Fourier multipliers on a periodized
grid, so their output carries O(1/Z_work^2) kernel distortion.  Solves run on a
zero-padded copy of the spectral grid whose padding factor grows with the grid
resolution, keeping that distortion refining at the same rate as everything
else; returned fields are restricted to the caller's grid.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
import scipy.sparse.linalg as spla

from .cauchy import cauchy_minus, cauchy_plus
from .errors import BranchSafetyError, ConfigError, ConvergenceError
from .model import SpectralGrid
from .scattering import ReflectionData


@dataclass
class BoundaryPair:
    x: float
    m: np.ndarray  # (2, M)
    n: np.ndarray  # (2, M)
    flavor: str  # "plain" | "deltified"
    residual: float
    iterations: int
    contraction: float | None = None


@dataclass
class DeltaPair:
    grid: SpectralGrid
    delta_plus: np.ndarray
    delta_minus: np.ndarray


@dataclass
class DeltifiedReflection:
    grid: SpectralGrid
    r_delta_plus: np.ndarray
    r_delta_minus: np.ndarray


def default_pad_factor(m: int) -> int:
    """Padding factor coupled to resolution so periodization error refines too."""
    return int(min(16, max(1, m // 512)))


def _pad(values: np.ndarray, factor: int) -> np.ndarray:
    if factor == 1:
        return values.copy()
    m = values.shape[-1]
    out = np.zeros(values.shape[:-1] + (factor * m,), dtype=np.complex128)
    lo = (factor - 1) * m // 2
    out[..., lo: lo + m] = values
    return out


def _restrict(values: np.ndarray, factor: int, m: int) -> np.ndarray:
    if factor == 1:
        return values
    lo = (factor - 1) * m // 2
    return values[..., lo: lo + m]


def _padded_nodes(grid: SpectralGrid, factor: int) -> np.ndarray:
    mp = factor * grid.m
    return -factor * grid.half_extent + (np.arange(mp) + 0.5) * grid.spacing


def _solve_pair(rho_m: np.ndarray, rho_n: np.ndarray, proj_m, proj_n,
                tol: float, max_iter: int):
    """Fixed point of m = e1 + P_m(n rho_m), n = e2 + P_n(m rho_n) (componentwise)."""
    mp = rho_m.shape[-1]
    m1 = np.ones(mp, dtype=np.complex128)
    m2 = np.zeros(mp, dtype=np.complex128)
    n1 = np.zeros(mp, dtype=np.complex128)
    n2 = np.ones(mp, dtype=np.complex128)

    sweeps = max(1, max_iter // 2)
    ratios: list[float] = []
    prev_inc = None
    converged = False
    it = 0
    for it in range(1, sweeps + 1):
        m1_new = 1.0 + proj_m(n1 * rho_m)
        m2_new = proj_m(n2 * rho_m)
        inc = max(np.abs(m1_new - m1).max(), np.abs(m2_new - m2).max())
        m1, m2 = m1_new, m2_new
        n1_new = proj_n(m1 * rho_n)
        n2_new = 1.0 + proj_n(m2 * rho_n)
        inc = max(inc, np.abs(n1_new - n1).max(), np.abs(n2_new - n2).max())
        n1, n2 = n1_new, n2_new
        if prev_inc is not None and prev_inc > 0:
            ratios.append(inc / prev_inc)
        prev_inc = inc
        if inc <= tol:
            converged = True
            break
    contraction = float(np.median(ratios)) if ratios else 0.0

    if not converged:
        # Krylov fallback on the stacked linearized system (I - K) v = c
        def apply(vec):
            vm1, vm2, vn1, vn2 = vec.reshape(4, mp)
            return np.concatenate([
                vm1 - proj_m(vn1 * rho_m),
                vm2 - proj_m(vn2 * rho_m),
                vn1 - proj_n(vm1 * rho_n),
                vn2 - proj_n(vm2 * rho_n),
            ])

        op = spla.LinearOperator((4 * mp, 4 * mp), matvec=apply, dtype=np.complex128)
        rhs = np.concatenate([
            np.ones(mp), np.zeros(mp), np.zeros(mp), np.ones(mp)
        ]).astype(np.complex128)
        x0 = np.concatenate([m1, m2, n1, n2])
        sol, _ = spla.lgmres(op, rhs, x0=x0, rtol=0.0, atol=0.1 * tol,
                             maxiter=max_iter - sweeps)
        m1, m2, n1, n2 = sol.reshape(4, mp)
        it = max_iter

    # residual certificate: defect of the defining equations with final values
    res = max(
        np.abs(m1 - 1.0 - proj_m(n1 * rho_m)).max(),
        np.abs(m2 - proj_m(n2 * rho_m)).max(),
        np.abs(n1 - proj_n(m1 * rho_n)).max(),
        np.abs(n2 - 1.0 - proj_n(m2 * rho_n)).max(),
    )
    if res > tol:
        raise ConvergenceError("boundary-pair solve did not reach tolerance",
                               residual=float(res), contraction=contraction)
    return np.stack([m1, m2]), np.stack([n1, n2]), float(res), it, contraction


def _boundary_solve(grid: SpectralGrid, coeff_m: np.ndarray, coeff_n: np.ndarray,
                    flavor: str, x: float, tol: float, max_iter: int,
                    pad: int | None):
    factor = default_pad_factor(grid.m) if pad is None else pad
    nodes = _padded_nodes(grid, factor)
    rho_m = _pad(coeff_m, factor) * np.exp(2j * nodes * x)
    rho_n = _pad(coeff_n, factor) * np.exp(-2j * nodes * x)
    if flavor == "plain":
        proj_m = lambda f: cauchy_minus(f, check_decay=False)
        proj_n = lambda f: cauchy_plus(f, check_decay=False)
    elif flavor == "deltified":
        proj_m = lambda f: cauchy_plus(f, check_decay=False)
        proj_n = lambda f: cauchy_minus(f, check_decay=False)
    else:
        raise ConfigError(f"unknown flavor {flavor!r}")
    m, n, res, it, contraction = _solve_pair(rho_m, rho_n, proj_m, proj_n, tol, max_iter)
    return BoundaryPair(
        x=x,
        m=_restrict(m, factor, grid.m),
        n=_restrict(n, factor, grid.m),
        flavor=flavor,
        residual=res,
        iterations=it,
        contraction=contraction,
    )


def solve_boundary_pair(r: ReflectionData, x: float, tol: float = 1e-10,
                        max_iter: int = 200, pad: int | None = None) -> BoundaryPair:
    """Plain flavor: m_- = e1 + C^-(n_+ r_- e^{2izx}), n_+ = e2 + C^+(m_- r_+ e^{-2izx})."""
    return _boundary_solve(r.grid, r.r_minus, r.r_plus, "plain", x, tol, max_iter, pad)


def solve_boundary_pair_delta(rd: DeltifiedReflection, x: float, tol: float = 1e-10,
                              max_iter: int = 200, pad: int | None = None) -> BoundaryPair:
    """Deltified flavor with the projection roles exchanged."""
    return _boundary_solve(rd.grid, rd.r_delta_minus, rd.r_delta_plus, "deltified",
                           x, tol, max_iter, pad)


def solve_scalar_delta(r: ReflectionData, pad: int | None = None) -> DeltaPair:
    """delta_+- = exp(C^+-(log(1 + r_+ r_-))) with the principal logarithm."""
    omega = r.r_plus * r.r_minus
    if np.abs(omega).max() >= 1.0:
        raise BranchSafetyError("sup |r_+ r_-| >= 1: scalar jump not factorizable")
    one_plus = 1.0 + omega
    if np.abs(one_plus).min() <= 0.05:
        raise BranchSafetyError("|1 + r_+ r_-| <= 0.05 somewhere: logarithm branch unsafe")
    grid = r.grid
    factor = default_pad_factor(grid.m) if pad is None else pad
    log_jump = _pad(np.log(one_plus), factor)
    dp = np.exp(cauchy_plus(log_jump, check_decay=False))
    dm = np.exp(cauchy_minus(log_jump, check_decay=False))
    return DeltaPair(
        grid=grid,
        delta_plus=_restrict(dp, factor, grid.m),
        delta_minus=_restrict(dm, factor, grid.m),
    )


def deltify(r: ReflectionData, d: DeltaPair) -> DeltifiedReflection:
    """Conjugate the reflection data by the scalar factorization."""
    prod = d.delta_plus * d.delta_minus
    return DeltifiedReflection(
        grid=r.grid,
        r_delta_plus=prod * r.r_plus,
        r_delta_minus=r.r_minus / prod,
    )
