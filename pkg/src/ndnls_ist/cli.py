"""Command dispatch and bit-stable CSV output.

Commands: check, scatter, evolve, solve, oracle, compare.
Exit codes: 0 success, 2 gate/admissibility failure, 3 convergence failure,
4 invalid configuration, 1 anything else.
"""

from __future__ import annotations

import argparse
import os
import sys

import numpy as np

from . import model
from .config import Config, build_from_config, parse_config
from .errors import (BlowUpError, BranchSafetyError, ConfigError, ConvergenceError,
                     DomainTooSmallError, GateError, PipelineError,
                     SpectralSingularityError)
from .evolution import evolve_scattering
from .oracle import OracleConfig, run as oracle_run
from .reconstruct import SolveOptions, ist_solve
from .scattering import reflection, scattering_data

COMMANDS = ("check", "scatter", "evolve", "solve", "oracle", "compare")

SCATTERING_COLUMNS = ("z", "a_re", "a_im", "d_re", "d_im", "B2_re", "B2_im",
                      "C2_re", "C2_im", "r_plus_re", "r_plus_im",
                      "r_minus_re", "r_minus_im")
SOLUTION_COLUMNS = ("x", "u_re", "u_im", "u_abs", "w_re", "w_im")
ORACLE_COLUMNS = ("x", "u_re", "u_im", "u_abs")
COMPARE_COLUMNS = ("x", "u_ist_abs", "u_oracle_abs", "diff_abs")
RH_DIAG_COLUMNS = ("x", "flavor", "iterations", "residual")


def _fmt(value) -> str:
    return format(float(value), ".17g")


def _write_csv(path: str, columns, rows) -> None:
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        fh.write(",".join(columns) + "\n")
        for row in rows:
            fh.write(",".join(row) + "\n")


def _out_path(cfg: Config, out_override: str | None, name: str) -> str:
    out_dir = out_override if out_override is not None else cfg.output_dir
    os.makedirs(out_dir, exist_ok=True)
    return os.path.join(out_dir, name)


def _solve_options(cfg: Config) -> SolveOptions:
    return SolveOptions(tol=cfg.solver_tol, max_iter=cfg.solver_max_iter,
                        stride=cfg.output_nx_stride)


def _scattering_rows(sgrid, sd, refl):
    for i, z in enumerate(sgrid.nodes):
        yield (
            _fmt(z),
            _fmt(sd.a[i].real), _fmt(sd.a[i].imag),
            _fmt(sd.d[i].real), _fmt(sd.d[i].imag),
            _fmt(sd.b2[i].real), _fmt(sd.b2[i].imag),
            _fmt(sd.c2[i].real), _fmt(sd.c2[i].imag),
            _fmt(refl.r_plus[i].real), _fmt(refl.r_plus[i].imag),
            _fmt(refl.r_minus[i].real), _fmt(refl.r_minus[i].imag),
        )


def _require_gate(p) -> None:
    gate = model.gate_functional(p)
    if not gate.passed:
        raise GateError(gate.value, gate.threshold)


def cmd_check(cfg: Config, t: float, out_dir: str | None) -> int:
    _, sgrid, p = build_from_config(cfg)
    gate = model.gate_functional(p)
    status = "PASS" if gate.passed else "FAIL"
    print(f"gate value = {gate.value:.6f} (threshold {gate.threshold}): {status}")
    if not gate.passed:
        return 2
    sd = scattering_data(p, sgrid)
    z = sgrid.nodes
    unimod = np.abs(sd.a * sd.d + sd.b2 * sd.c2 / (4.0 * z) - 1.0).max()
    sym_a = np.abs(sd.a - np.conj(sgrid.negate(sd.a))).max()
    sym_d = np.abs(sd.d - np.conj(sgrid.negate(sd.d))).max()
    refl = reflection(sd)
    print(f"unimodularity max defect = {unimod:.3e}")
    print(f"schwarz symmetry defect: a = {sym_a:.3e}, d = {sym_d:.3e}")
    print(f"sup |r1| = {refl.sup_r1:.6f}, sup |r2| = {refl.sup_r2:.6f}")
    return 0


def cmd_scatter(cfg: Config, t: float, out_dir: str | None) -> int:
    _, sgrid, p = build_from_config(cfg)
    _require_gate(p)
    sd = scattering_data(p, sgrid)
    refl = reflection(sd)
    path = _out_path(cfg, out_dir, "scattering.csv")
    _write_csv(path, SCATTERING_COLUMNS, _scattering_rows(sgrid, sd, refl))
    print(f"wrote {path}")
    return 0


def cmd_evolve(cfg: Config, t: float, out_dir: str | None) -> int:
    _, sgrid, p = build_from_config(cfg)
    _require_gate(p)
    sd = evolve_scattering(scattering_data(p, sgrid), t)
    refl = reflection(sd)
    path = _out_path(cfg, out_dir, "scattering.csv")
    _write_csv(path, SCATTERING_COLUMNS, _scattering_rows(sgrid, sd, refl))
    print(f"wrote {path} at t = {t:g}")
    return 0


def _write_solution(cfg: Config, out_dir: str | None, result) -> str:
    rows = (
        (
            _fmt(x),
            _fmt(result.u[i].real), _fmt(result.u[i].imag), _fmt(abs(result.u[i])),
            _fmt(result.w[i].real), _fmt(result.w[i].imag),
        )
        for i, x in enumerate(result.x_nodes)
    )
    path = _out_path(cfg, out_dir, "solution.csv")
    _write_csv(path, SOLUTION_COLUMNS, rows)
    diag_rows = (
        (_fmt(x), flavor, str(int(iters)), _fmt(residual))
        for x, flavor, iters, residual in result.diagnostics
    )
    _write_csv(_out_path(cfg, out_dir, "rh_diag.csv"), RH_DIAG_COLUMNS, diag_rows)
    return path


def cmd_solve(cfg: Config, t: float, out_dir: str | None) -> int:
    grid, sgrid, p = build_from_config(cfg)
    result = ist_solve(p, sgrid, t, _solve_options(cfg))
    path = _write_solution(cfg, out_dir, result)
    print(f"wrote {path} at t = {t:g}")
    return 0


def cmd_oracle(cfg: Config, t: float, out_dir: str | None) -> int:
    grid, _, p = build_from_config(cfg)
    state = oracle_run(p, t, OracleConfig(dt=cfg.time_dt))
    rows = (
        (_fmt(x), _fmt(state.u.values[i].real), _fmt(state.u.values[i].imag),
         _fmt(abs(state.u.values[i])))
        for i, x in enumerate(grid.nodes)
    )
    path = _out_path(cfg, out_dir, "oracle.csv")
    _write_csv(path, ORACLE_COLUMNS, rows)
    print(f"wrote {path} at t = {t:g}")
    return 0


def cmd_compare(cfg: Config, t: float, out_dir: str | None) -> int:
    from scipy.interpolate import CubicSpline

    grid, sgrid, p = build_from_config(cfg)
    result = ist_solve(p, sgrid, t, _solve_options(cfg))
    state = oracle_run(p, t, OracleConfig(dt=cfg.time_dt))
    # periodic-aware spline upsampling of the strided IST solution
    xs = np.append(result.x_nodes, grid.half_extent)
    us = np.append(result.u, result.u[0])
    spline_re = CubicSpline(xs, us.real)
    spline_im = CubicSpline(xs, us.imag)
    u_ist = spline_re(grid.nodes) + 1j * spline_im(grid.nodes)
    u_or = state.u.values
    diff = np.abs(u_ist - u_or)
    rel_l2 = float(np.linalg.norm(u_ist - u_or) / np.linalg.norm(u_or))
    rows = (
        (_fmt(x), _fmt(abs(u_ist[i])), _fmt(abs(u_or[i])), _fmt(diff[i]))
        for i, x in enumerate(grid.nodes)
    )
    path = _out_path(cfg, out_dir, "compare.csv")
    _write_csv(path, COMPARE_COLUMNS, rows)
    print(f"wrote {path}")
    print(f"relative_l2_error = {rel_l2:.6e} at t = {t:g}")
    return 0


_HANDLERS = {
    "check": cmd_check,
    "scatter": cmd_scatter,
    "evolve": cmd_evolve,
    "solve": cmd_solve,
    "oracle": cmd_oracle,
    "compare": cmd_compare,
}


def dispatch(command: str, cfg: Config, t_override: float | None = None,
             out_override: str | None = None) -> int:
    if command not in _HANDLERS:
        raise ConfigError(f"unknown command {command!r}")
    t = cfg.time_t if t_override is None else t_override
    try:
        return _HANDLERS[command](cfg, t, out_override)
    except ConfigError:
        raise
    except GateError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except SpectralSingularityError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except (ConvergenceError, BranchSafetyError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 3
    except (BlowUpError, DomainTooSmallError, PipelineError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


def main(argv=None) -> int:
    parser = argparse.ArgumentParser(
        prog="ndnls",
        description="Inverse-scattering solver for the nonlocal derivative NLS equation",
    )
    parser.add_argument("command", choices=COMMANDS)
    parser.add_argument("--config", default=None, help="path to a key = value config file")
    parser.add_argument("--t", type=float, default=None, help="override time.t")
    parser.add_argument("--out", default=None, help="override output.dir")
    args = parser.parse_args(argv)
    try:
        cfg = parse_config(args.config)
        return dispatch(args.command, cfg, args.t, args.out)
    except ConfigError as exc:
        print(f"config error: {exc}", file=sys.stderr)
        return 4


if __name__ == "__main__":
    sys.exit(main())
