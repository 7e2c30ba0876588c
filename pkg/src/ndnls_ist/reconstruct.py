"""Reconstruction of the potential from boundary-pair solutions: the two
integral formulas (plain flavor on x >= 0, deltified on x < 0), and the phase
unwinding that extracts u from the product u * exp(i Theta)."""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from . import model
from .errors import ConfigError, ConvergenceError, GateError
from .evolution import evolve_reflection
from .model import Potential, SpectralGrid
from .rh import (BoundaryPair, DeltifiedReflection, deltify, solve_boundary_pair,
                 solve_boundary_pair_delta, solve_scalar_delta)
from .scattering import ReflectionData, reflection, scattering_data


@dataclass
class SolveOptions:
    tol: float = 1e-10
    max_iter: int = 200
    stride: int = 8
    pad: int | None = None
    jost_order: int = 3


@dataclass
class ReconstructionOutput:
    x_nodes: np.ndarray
    w: np.ndarray
    s: np.ndarray
    u: np.ndarray
    theta: np.ndarray
    iterations: int
    diagnostics: list = field(default_factory=list)  # (x, flavor, iterations, residual)


def _require_flavor(pair: BoundaryPair) -> None:
    want = "plain" if pair.x >= 0 else "deltified"
    if pair.flavor != want:
        raise ConfigError(
            f"boundary pair at x = {pair.x:.6g} has flavor {pair.flavor!r}, need {want!r}"
        )


def reconstruct_w(pairs, r: ReflectionData, rd: DeltifiedReflection) -> np.ndarray:
    """w(x) = u e^{i Theta} from the first-component integral formula."""
    z = r.grid.nodes
    dz = r.grid.spacing
    out = np.empty(len(pairs), dtype=np.complex128)
    for i, pair in enumerate(pairs):
        _require_flavor(pair)
        coeff = r.r_plus if pair.flavor == "plain" else rd.r_delta_plus
        out[i] = (2.0 / (np.pi * 1j)) * dz * np.sum(
            pair.m[0] * coeff * np.exp(-2j * z * pair.x)
        )
    return out


def reconstruct_s(pairs, r: ReflectionData, rd: DeltifiedReflection) -> np.ndarray:
    """s(x) = P d/dx(v P) with P = e^{(1/2i) int_x^inf uv}, second-component formula."""
    z = r.grid.nodes
    dz = r.grid.spacing
    out = np.empty(len(pairs), dtype=np.complex128)
    for i, pair in enumerate(pairs):
        _require_flavor(pair)
        coeff = r.r_minus if pair.flavor == "plain" else rd.r_delta_minus
        out[i] = (1.0 / np.pi) * dz * np.sum(
            pair.n[1] * coeff * np.exp(2j * z * pair.x)
        )
    return out


def _tail_integral(values: np.ndarray, spacing: float) -> np.ndarray:
    """Trapezoid of int_x^{x_max} f dy at every node (zero at the right edge)."""
    seg = 0.5 * (values[1:] + values[:-1]) * spacing
    out = np.zeros_like(values)
    out[:-1] = np.cumsum(seg[::-1])[::-1]
    return out


def phase_unwind(w: np.ndarray, x_nodes: np.ndarray, tol: float = 1e-10,
                 max_iter: int = 100):
    """Fixed point Theta(x) = int_x^inf u v dy with u = w e^{-i Theta}.

    The reconstruction grid must be closed under x -> -x.
    """
    nx = len(x_nodes)
    spacing = float(x_nodes[1] - x_nodes[0])
    reflect = (nx - np.arange(nx)) % nx
    if not np.allclose(x_nodes[reflect][1:], -x_nodes[1:], atol=1e-12 * max(1.0, abs(x_nodes[0]))):
        raise ConfigError("reconstruction grid is not closed under reflection")
    theta = np.zeros(nx, dtype=np.complex128)
    increment = np.inf
    with np.errstate(over="ignore", invalid="ignore"):
        for it in range(1, max_iter + 1):
            u = w * np.exp(-1j * theta)
            v = 1j * np.conj(u[reflect])
            theta_new = _tail_integral(u * v, spacing)
            increment = float(np.abs(theta_new - theta).max())
            if not np.isfinite(increment):
                break
            theta = theta_new
            if increment <= tol:
                return w * np.exp(-1j * theta), theta, it
    raise ConvergenceError("phase unwinding did not contract", residual=increment)


def ist_solve(p: Potential, sgrid: SpectralGrid, t: float,
              opts: SolveOptions | None = None) -> ReconstructionOutput:
    """Full inverse-scattering pipeline: u(., t) from u(., 0)."""
    opts = opts or SolveOptions()
    gate = model.gate_functional(p)
    if not gate.passed:
        raise GateError(gate.value, gate.threshold)
    if p.grid.n % opts.stride != 0:
        raise ConfigError(f"stride {opts.stride} does not divide N = {p.grid.n}")

    sd = scattering_data(p, sgrid, order=opts.jost_order)
    refl = evolve_reflection(reflection(sd), t)
    dpair = solve_scalar_delta(refl, pad=opts.pad)
    rdelta = deltify(refl, dpair)

    x_nodes = p.grid.nodes[:: opts.stride]
    pairs = []
    for x in x_nodes:
        if x >= 0:
            pair = solve_boundary_pair(refl, float(x), opts.tol, opts.max_iter, opts.pad)
        else:
            pair = solve_boundary_pair_delta(rdelta, float(x), opts.tol, opts.max_iter,
                                             opts.pad)
        pairs.append(pair)

    w = reconstruct_w(pairs, refl, rdelta)
    s = reconstruct_s(pairs, refl, rdelta)
    u, theta, iterations = phase_unwind(w, x_nodes, opts.tol, max(1, opts.max_iter // 2))
    diagnostics = [(pair.x, pair.flavor, pair.iterations, pair.residual) for pair in pairs]
    return ReconstructionOutput(x_nodes=x_nodes, w=w, s=s, u=u, theta=theta,
                                iterations=iterations, diagnostics=diagnostics)
