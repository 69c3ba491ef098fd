"""Spectral toolkit for Jacobi matrices: transfer matrices, Floquet
discriminants, band structures, the integrated density of states, and bounds
on the total length of the absolutely continuous spectrum."""

from .bands import BandStructure, ac_measure, band_length_bounds, band_structure, verify_theorem2
from .bounds import BoundReport, geometric_mean, global_bound, polya_lower_bound, theorem1_bound, verify_polya_ac
from .errors import InvalidModelError, JacobiError, NumericalError, SizeLimitError
from .extremal import (NodeSystem, chebyshev_T, interp_T, monic_extremal_on_interval, prop_formula_rhs,
                       verify_nesting)
from .ids import IdsProfile, deift_simon_lhs, ids_exact, ids_truncation, verify_deift_simon
from .model import (FinitePrefix, OperatorSpec, Window, make_constant, make_free, make_two_value, repeat_period,
                    unroll)
from .polynomial import Polynomial
from .transfer import (corner_det, discriminant_eval, discriminant_poly, lyapunov_estimate, one_step,
                       transfer_matrix)
from .tridiag import Tridiag, eigenvalues, k_n, sturm_count

__version__ = "0.1.0"
