"""Exact time evolution of scattering and reflection data: pure phase rotation
e^{+-4 i z^2 t} of the off-diagonal data, with a, d frozen."""

from __future__ import annotations

import numpy as np

from .scattering import ReflectionData, ScatteringData


def evolve_reflection(r: ReflectionData, t: float) -> ReflectionData:
    phase = np.exp(4j * r.grid.nodes**2 * t)
    return ReflectionData(
        grid=r.grid,
        r_plus=r.r_plus / phase,
        r_minus=r.r_minus * phase,
        sup_r1=r.sup_r1,
        sup_r2=r.sup_r2,
    )


def evolve_scattering(sd: ScatteringData, t: float) -> ScatteringData:
    phase = np.exp(4j * sd.grid.nodes**2 * t)
    return ScatteringData(
        grid=sd.grid,
        a=sd.a.copy(),
        d=sd.d.copy(),
        b2=sd.b2 * phase,
        c2=sd.c2 / phase,
        a_inf=sd.a_inf,
        d_inf=sd.d_inf,
    )
