"""Explicit symplectic splitting integrators for separable Hamiltonians,
with harmonic-oscillator order analysis, coefficient search and benchmarks."""

__version__ = "0.1.0"

from .analysis import (DecompositionSetting, KappaSpectrum, RecurrenceTable,
                       ZetaSpectrum, decompose, decompose_recurrence,
                       kappa_spectrum, kappa_zero_tolerance,
                       momentum_kappa_spectrum, spectrum_report, verify_order)
from .benchmarks import (BenchmarkRecord, PrecessionResult, build_system,
                         energy_error_sweep, exact_flow_errors, geometric_grid,
                         lrl_vector, perihelion_rate, precession_to_csv,
                         sweep_to_csv, trace_export)
from .coefficients import (Provenance, SchemeTag, SplittingCoefficients,
                           ValidationReport, catalog, complete_symmetric,
                           leapfrog, load_coefficient_file, resolve_method,
                           ruth_coefficients, save_coefficient_file, validate)
from .engine import (IntegrationFault, PhaseState, StepPlan, integrate,
                     make_plan, sho_step_matrix, sho_step_matrix_exact, step,
                     step_reverse, substep_trace)
from .optimizer import SearchResult, SearchSpec, campaign, minimize, objective
from .precision import (DEFAULT_PRECISION_BITS, parse_decimal, to_decimal,
                        working_precision)
from .series import (TauSeries, series_add, series_eval, series_mul,
                     series_scale, series_sub)
from .systems import (KeplerParams, SeparableSystem, gradient_check,
                      henon_heiles, henon_heiles_y_plane, kepler_exact_flow,
                      load_kepler_params, sho, sho_exact_flow, sun_mercury)
