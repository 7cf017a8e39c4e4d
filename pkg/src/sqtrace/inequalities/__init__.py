"""One verifier per trace inequality.  Each returns a ``VerificationReport``."""

from .hansen_pedersen import conjecture_margin, hansen_pedersen_trace, isometry_jensen, min_correction_trace_jensen
from .jensen import jensen_map_state, jensen_scalar, jensen_vector_state
from .klein import klein_convex, klein_superquadratic, klein_upper_bound, relative_entropy, trace_pairing_bound
from .peierls import peierls
from .trace_jensen import trace_jensen_superquadratic

__all__ = [
    "conjecture_margin",
    "hansen_pedersen_trace",
    "isometry_jensen",
    "jensen_map_state",
    "jensen_scalar",
    "jensen_vector_state",
    "klein_convex",
    "klein_superquadratic",
    "klein_upper_bound",
    "min_correction_trace_jensen",
    "peierls",
    "relative_entropy",
    "trace_jensen_superquadratic",
    "trace_pairing_bound",
]
