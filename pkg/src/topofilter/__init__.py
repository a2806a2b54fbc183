"""Classical LTI digital filters realized as sheaves over line complexes."""

from .engine import (
    Comparison,
    RunResult,
    compare,
    direct_form_oracle,
    impulse_response,
    metric_invariance_check,
    run_filter,
    run_state_space,
)
from .errors import *  # noqa: F401,F403
from .filters import (
    FilterCoefficients,
    StateSpaceModel,
    allpole_maps,
    fir_maps,
    normalize_coefficients,
    polezero_maps,
    state_space,
)
from .sheaf import (
    LinearMap,
    SheafDiagram,
    StateSection,
    ViolationReport,
    apply_map,
    section_from_states,
    verify_section,
)
from .simplicial import LineComplex, SimplexId, boundary, build_line_complex, directly_connected, face

__version__ = "0.1.0"
