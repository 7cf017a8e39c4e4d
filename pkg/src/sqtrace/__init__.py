"""Numerical verification of trace inequalities for superquadratic functions."""

from .errors import SqTraceError
from .functions import catalog, check_convex, check_superquadratic, parse_function
from .hermitian import Spectrum, apply_function, eig, eigvals, is_psd, matrix_abs, matrix_sqrt, trace_function, trace_of
from .majorization import eigen_majorization, hlp_transfer, lemma2_bound, majorizes
from .maps import State, UnitalMap, apply_map, state_eval
from .matching import MatchingBound, optimal_matching
from .report import VerificationReport

__all__ = [
    "MatchingBound",
    "SqTraceError",
    "Spectrum",
    "State",
    "UnitalMap",
    "VerificationReport",
    "apply_function",
    "apply_map",
    "catalog",
    "check_convex",
    "check_superquadratic",
    "eig",
    "eigen_majorization",
    "eigvals",
    "hlp_transfer",
    "is_psd",
    "lemma2_bound",
    "majorizes",
    "matrix_abs",
    "matrix_sqrt",
    "optimal_matching",
    "parse_function",
    "state_eval",
    "trace_function",
    "trace_of",
]
