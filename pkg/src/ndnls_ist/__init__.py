"""Numerical inverse-scattering solver for the integrable nonlocal derivative
NLS equation, with a direct pseudo-spectral integrator as an independent
oracle and a comparison harness."""

from .cauchy import cauchy_minus, cauchy_plus, hilbert
from .config import Config, build_from_config, parse_config
from .errors import (BlowUpError, BranchSafetyError, ConfigError, ConvergenceError,
                     DomainTooSmallError, EdgeDecayWarning, GateError,
                     KPlaneUnstableError, PipelineError, SpectralSingularityError)
from .evolution import evolve_reflection, evolve_scattering
from .model import (ComplexField, GateReport, Potential, SpatialGrid, SpectralGrid,
                    build_grids, build_potential_matrices, gate_functional,
                    nonlocal_conjugate, sobolev_norms)
from .oracle import (InvarianceReport, OracleConfig, OracleState, nonlocal_mass,
                     rhs, run, scattering_invariance_check)
from .reconstruct import (ReconstructionOutput, SolveOptions, ist_solve,
                          phase_unwind, reconstruct_s, reconstruct_w)
from .rh import (BoundaryPair, DeltaPair, DeltifiedReflection, deltify,
                 solve_boundary_pair, solve_boundary_pair_delta, solve_scalar_delta)
from .scattering import (JostSolution, ReflectionData, ScatteringData,
                         a_by_integral_form, kplane_crosscheck, reflection,
                         scattering_data, solve_jost, volterra_residual)

__version__ = "0.1.0"
