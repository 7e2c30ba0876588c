"""Flat dotted-key configuration: `section.key = value` per line, `#` comments,
documented defaults for anything missing."""

from __future__ import annotations

import os
from dataclasses import dataclass, fields

import numpy as np

from . import model
from .errors import ConfigError
from .model import Potential, SpatialGrid, SpectralGrid

IC_TYPES = ("gaussian", "sech", "samples_file")


@dataclass(frozen=True)
class Config:
    grid_n: int = 2048
    grid_l: float = 12.0
    spectral_m: int = 2048
    spectral_z: float = 24.0
    ic_type: str = "gaussian"
    ic_amplitude: float = 0.095
    ic_width: float = 1.0
    ic_center: float = 0.0
    ic_path: str = ""
    time_t: float = 0.0
    time_dt: float = 1e-4
    solver_tol: float = 1e-10
    solver_max_iter: int = 200
    output_dir: str = "."
    output_nx_stride: int = 8


_KEY_MAP = {
    "grid.N": ("grid_n", int),
    "grid.L": ("grid_l", float),
    "spectral.M": ("spectral_m", int),
    "spectral.Z": ("spectral_z", float),
    "ic.type": ("ic_type", str),
    "ic.amplitude": ("ic_amplitude", float),
    "ic.width": ("ic_width", float),
    "ic.center": ("ic_center", float),
    "ic.path": ("ic_path", str),
    "time.t": ("time_t", float),
    "time.dt": ("time_dt", float),
    "solver.tol": ("solver_tol", float),
    "solver.max_iter": ("solver_max_iter", int),
    "output.dir": ("output_dir", str),
    "output.nx_stride": ("output_nx_stride", int),
}


def _validate(cfg: Config) -> Config:
    if cfg.grid_n % 2 != 0 or cfg.grid_n < 8:
        raise ConfigError(f"grid.N must be even and >= 8, got {cfg.grid_n}")
    if cfg.spectral_m % 2 != 0 or cfg.spectral_m < 8:
        raise ConfigError(f"spectral.M must be even and >= 8, got {cfg.spectral_m}")
    for name, value in (("grid.L", cfg.grid_l), ("spectral.Z", cfg.spectral_z),
                        ("time.dt", cfg.time_dt), ("solver.tol", cfg.solver_tol),
                        ("ic.width", cfg.ic_width)):
        if not (np.isfinite(value) and value > 0):
            raise ConfigError(f"{name} must be positive and finite, got {value}")
    for name, value in (("ic.amplitude", cfg.ic_amplitude), ("ic.center", cfg.ic_center),
                        ("time.t", cfg.time_t)):
        if not np.isfinite(value):
            raise ConfigError(f"{name} must be finite, got {value}")
    if cfg.ic_type not in IC_TYPES:
        raise ConfigError(f"ic.type must be one of {IC_TYPES}, got {cfg.ic_type!r}")
    if cfg.ic_type == "samples_file" and not cfg.ic_path:
        raise ConfigError("ic.type = samples_file requires ic.path")
    if cfg.solver_max_iter < 1:
        raise ConfigError(f"solver.max_iter must be >= 1, got {cfg.solver_max_iter}")
    if cfg.output_nx_stride < 1 or cfg.grid_n % cfg.output_nx_stride != 0:
        raise ConfigError(
            f"output.nx_stride ({cfg.output_nx_stride}) must divide grid.N ({cfg.grid_n})"
        )
    return cfg


def parse_config(path: str | None) -> Config:
    """Parse and validate; a missing path means all defaults."""
    values: dict[str, object] = {}
    if path is not None:
        if not os.path.isfile(path):
            raise ConfigError(f"config file not found: {path}")
        with open(path, encoding="utf-8") as fh:
            for lineno, raw in enumerate(fh, start=1):
                line = raw.strip()
                if not line or line.startswith("#"):
                    continue
                if "=" not in line:
                    raise ConfigError(f"{path}:{lineno}: expected 'key = value'")
                key, _, text = line.partition("=")
                key = key.strip()
                text = text.strip()
                if key not in _KEY_MAP:
                    raise ConfigError(f"{path}:{lineno}: unknown key {key!r}")
                field_name, cast = _KEY_MAP[key]
                try:
                    values[field_name] = cast(text) if cast is not str else text
                except ValueError as exc:
                    raise ConfigError(f"{path}:{lineno}: bad value for {key}: {text!r}") from exc
    return _validate(Config(**values))


def build_from_config(cfg: Config):
    """Grids and the initial potential described by a validated Config."""
    grid, sgrid = model.build_grids(cfg.grid_n, cfg.grid_l, cfg.spectral_m, cfg.spectral_z)
    if cfg.ic_type == "gaussian":
        samples = model.gaussian_samples(grid, cfg.ic_amplitude, cfg.ic_width, cfg.ic_center)
    elif cfg.ic_type == "sech":
        samples = model.sech_samples(grid, cfg.ic_amplitude, cfg.ic_width, cfg.ic_center)
    else:
        samples = _read_samples(cfg.ic_path, grid)
    return grid, sgrid, Potential.from_samples(grid, samples)


def _read_samples(path: str, grid: SpatialGrid) -> np.ndarray:
    if not os.path.isfile(path):
        raise ConfigError(f"samples file not found: {path}")
    try:
        table = np.loadtxt(path, delimiter=",", skiprows=1, dtype=float)
    except ValueError as exc:
        raise ConfigError(f"cannot parse samples file {path}: {exc}") from exc
    if table.ndim != 2 or table.shape[1] < 3:
        raise ConfigError(f"samples file {path} needs columns x,u_re,u_im")
    if table.shape[0] != grid.n:
        raise ConfigError(
            f"samples file has {table.shape[0]} rows, grid has {grid.n} nodes"
        )
    if not np.allclose(table[:, 0], grid.nodes, atol=1e-9 * grid.half_extent):
        raise ConfigError("samples file x column does not match the grid nodes")
    return table[:, 1] + 1j * table[:, 2]
