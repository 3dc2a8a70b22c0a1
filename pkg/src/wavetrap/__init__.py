"""Internal-wave billiards in trapezoids: exact return maps and their dynamics."""

from .circle_map import (
    PLLift,
    lift_eval,
    lift_from_json,
    lift_iter,
    lift_to_json,
    make_lift,
    power_break_data,
    power_lift,
    translation_lift,
    trapezoid_lift,
)
from .classify import (
    DynamicsClassification,
    basin_demo,
    classify,
    co_orbital,
    fixed_set,
    integer_directions,
    parity_check,
    smooth_fixed_points,
)
from .dilation import (
    INFINITY,
    Mobius,
    Reduction,
    ae_rationality_experiment,
    closed_leaf_exists,
    conjugacy_witness,
    fundamental_domain,
    g_lift,
    mobius,
    mobius_apply,
    reduce_direction,
    surface_params,
    veech_generators,
)
from .errors import (
    NumericError,
    ParameterError,
    WavetrapError,
)
from .families import family_from_name
from .geometry import (
    GeneralTable,
    TrapezoidParams,
    general_table,
    maas_coords,
    maas_params,
    parabola_table,
    table_from_json,
    tent_table,
    trapezoid_params,
    unfold_trapezoid,
    validate_table,
)
from .rotation import (
    Certified,
    Enclosure,
    compare_rho,
    rho_certify,
    rho_estimate,
    rho_value,
    staircase,
)
from .scalar import exact, exact_from_float, parse_scalar, scalar_str, to_float
from .tongues import closed_form_oracle, render_phase_diagram, scan, tongue_interval
from .tracer import (
    first_return,
    first_return_lift,
    table_lift,
    trace_segments,
    trace_svg,
)

__version__ = "0.1.0"

__all__ = [
    "PLLift",
    "lift_eval",
    "lift_from_json",
    "lift_iter",
    "lift_to_json",
    "make_lift",
    "power_break_data",
    "power_lift",
    "translation_lift",
    "trapezoid_lift",
    "DynamicsClassification",
    "basin_demo",
    "classify",
    "co_orbital",
    "fixed_set",
    "integer_directions",
    "parity_check",
    "smooth_fixed_points",
    "INFINITY",
    "Mobius",
    "Reduction",
    "ae_rationality_experiment",
    "closed_leaf_exists",
    "conjugacy_witness",
    "fundamental_domain",
    "g_lift",
    "mobius",
    "mobius_apply",
    "reduce_direction",
    "surface_params",
    "veech_generators",
    "NumericError",
    "ParameterError",
    "WavetrapError",
    "family_from_name",
    "GeneralTable",
    "TrapezoidParams",
    "general_table",
    "maas_coords",
    "maas_params",
    "parabola_table",
    "table_from_json",
    "tent_table",
    "trapezoid_params",
    "unfold_trapezoid",
    "validate_table",
    "Certified",
    "Enclosure",
    "compare_rho",
    "rho_certify",
    "rho_estimate",
    "rho_value",
    "staircase",
    "exact",
    "exact_from_float",
    "parse_scalar",
    "scalar_str",
    "to_float",
    "closed_form_oracle",
    "render_phase_diagram",
    "scan",
    "tongue_interval",
    "first_return",
    "first_return_lift",
    "table_lift",
    "trace_segments",
    "trace_svg",
    "__version__",
]
