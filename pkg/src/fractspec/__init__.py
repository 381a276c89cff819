"""Dimension spectra of self-similar curves.

Analytic machinery (similarity equation, divider dimension, thermodynamic
multifractal spectrum, Renyi dimensions) alongside geometric construction
of prefractal and expanded polylines and an empirical neighborhood-area
dimension estimator.
"""

from .errors import CapExceededError, SolverError
from .ifs import (
    Generatrix,
    SelfSimilarSystem,
    Similarity2D,
    build_generatrix,
    build_system,
    overlap_heuristic,
    system_from_generatrix,
    with_weights,
)
from .prefractal import (
    CompositionCensus,
    ExpandedPolyline,
    ExpansionSchedule,
    Polyline,
    census,
    diameter,
    diameter_bruteforce,
    expand,
    iterate,
    unit_segment_count,
)
from .dimension import (
    DiscreteSpectrumEntry,
    discrete_mf_spectrum,
    divider_dim,
    hausdorff_dim,
    mf_dim_max,
    mf_dim_min,
    mix_exponent,
    schedule_for,
)
from .multifractal import (
    CaseAReport,
    HessianReport,
    LegendreReport,
    SpectrumCurve,
    SpectrumPoint,
    alpha_bounds,
    alpha_of,
    case_a_identification,
    critical_point,
    d_tilde,
    default_lambda_grid,
    equal_weight_point,
    f_of,
    frequency_vector,
    hessian_check,
    information_dim,
    legendre_consistency,
    omega_min,
    renyi,
    shrink_and_invert,
    solve_omega,
    spectrum,
)
from .sausage import (
    DimEstimate,
    SausageSample,
    estimate_mf_dim,
    sausage_area,
    sausage_area_bruteforce,
)

__all__ = [name for name in dir() if not name.startswith("_")]
__version__ = "0.1.0"
