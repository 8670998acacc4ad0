"""Numerics for parabolic character varieties of free groups in SL(2, C) and SL(3, C)."""
from .boundary import (
    BoundaryVector,
    SurfaceData,
    boundary,
    boundary_par,
    diagram_check,
    dim_estimate,
    relative_fiber_membership,
    word_evaluate,
)
from .kempf_ness import KNReport, KNResidual, closed_orbit_probe, kn_flow, kn_function, kn_residual
from .linalg import (
    centralizer_basis,
    hermitian_exp,
    hermitian_log,
    polar_decompose,
    random_group_element,
    random_unitary,
)
from .reduction import TorusContext, eta, eta_inverse, fingerprint, is_regular
from .retraction import ParabolicData, RepTuple, RetractionPath, build_retraction, evaluate_path, orbit_solve, phi
from .traces import (
    ClassPoint,
    TraceVector,
    class_coordinates,
    fricke_cubic,
    sl2_lift,
    sl2_seven_traces,
    sl2_trace_triple,
    sl3_nine_traces,
    sl3_transpose_involution,
)

__version__ = "0.1.0"
