"""Vector configurations, Gale duality, lattice bodies, and the explicit
zonotope constructions used to bound covering radii."""

from .configs import (
    DimensionMismatchError,
    NotColooplessError,
    NotSortedError,
    RankDeficientError,
    UnknownLabelError,
    VectorConfiguration,
    all_minors,
    config_from_json_dict,
    cosimple_minor_exists,
    deletion,
    diagonal,
    doubled_config,
    gale_dual,
    has_lvp,
    has_lvp_symmetric,
    is_coloopless,
    is_cosimple,
    lvp_counterexample_search,
    rectangle_config,
    reduce_to_lr,
    triangular_disk_config,
    width3_diagonal,
    width_with_functional,
    zonotope_contains,
)
from .bodies import (
    BoundTooLargeError,
    CenteredBody,
    Exactly,
    GreaterThan,
    LatticeDescription,
    UnboundedBodyError,
    first_c_minimum,
    lattice_width_upto,
    successive_minima_2d,
)
from .constructions import (
    almost_coloopless_zonotope,
    cusick_parallelepiped,
    lattice_point_count,
    lattice_points_enumerated,
    lr_zonotope,
)

__all__ = [
    "VectorConfiguration",
    "LatticeDescription",
    "CenteredBody",
    "RankDeficientError",
    "UnknownLabelError",
    "NotColooplessError",
    "NotSortedError",
    "DimensionMismatchError",
    "BoundTooLargeError",
    "UnboundedBodyError",
    "Exactly",
    "GreaterThan",
    "config_from_json_dict",
    "gale_dual",
    "is_coloopless",
    "is_cosimple",
    "deletion",
    "diagonal",
    "doubled_config",
    "has_lvp",
    "has_lvp_symmetric",
    "rectangle_config",
    "triangular_disk_config",
    "all_minors",
    "cosimple_minor_exists",
    "reduce_to_lr",
    "width_with_functional",
    "width3_diagonal",
    "zonotope_contains",
    "lvp_counterexample_search",
    "first_c_minimum",
    "successive_minima_2d",
    "lattice_width_upto",
    "cusick_parallelepiped",
    "almost_coloopless_zonotope",
    "lr_zonotope",
    "lattice_point_count",
    "lattice_points_enumerated",
]
