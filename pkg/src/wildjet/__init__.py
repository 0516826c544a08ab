"""Wild ramification of covers of a formal surface along parameterized arcs."""
from .arc import (
    Arc, HNExpansion, Tangent, blow_up, blowups_to_smooth, degree, equation_of_regular_arc, hn_expand,
    intersect, intersect_via_equation, multiplicity, rebuild_arc, singularity_degree, strict_transform,
    tangent,
)
from .cover import (
    ASCover, BranchData, ElemAbelianCover, KummerCover, branch_data, delta, dump_cover, dumps_cover,
    filtration_on_arc, jet_threshold, kummer_lift_count, lift_arc_kummer, load_cover, loads_cover,
    restrict_to_arc, wild_jumps_on_arc,
)
from .errors import ArcInBranchLocus, InfiniteIntersection, NoRoot, PrecisionExhausted
from .field import GF, FieldElement, field, lth_root, pth_root
from .lab import (
    ExperimentReport, JetSample, generic_jump_scan, sample_arc, strong_filtration_check,
    swan_infinity_estimate, verify_jet_order,
)
from .localfield import (
    ASClass, Filtration, PLFunction, as_reduce, compose_w, filtration_cyclic_p, filtration_elem_abelian,
    swan_conductor, w_function, wild_jumps,
)
from .series import (
    DEFAULT_PRECISION, BiSeries, LaurentSeries, compose, eval_biseries, invert, lth_root_series,
    parse_biseries, parse_series, reparameterize, valuation,
)

__version__ = "0.1.0"
