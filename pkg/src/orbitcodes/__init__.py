"""Cyclic orbit subspace codes over finite extension fields."""
from __future__ import annotations

from .distance import (
    DistanceReport,
    RepProfile,
    classify_direct_sum,
    distance,
    distance_bounds,
    distance_bruteforce,
    distance_multiset,
    orbit_representatives,
    subfield_coset_upper_bound,
)
from .errors import OrbitCodesError
from .field import Field, FieldSpec, default_modulus, make_field, phi, phi_inv
from .linkage import (
    ConstituentCode,
    LinkedCode,
    check_cardinality_bound,
    greedy_partial_spread,
    link_cyclic,
    link_many,
    link_two,
    verify_union_of_orbits,
)
from .orbit import (
    OrbitAnalysis,
    OrbitCode,
    analyze,
    best_friend_degree,
    enumerate_orbit,
    friends,
    is_partial_spread,
    orbit_cardinality,
    orbit_code,
    spread_code,
    stab_plus_beta_degree,
    stabilizer_order,
)
from .search import SearchResult, SearchSpec, exhaustive_search, k3sb_family, random_search
from .subspace import (
    Subspace,
    dual,
    from_generators,
    from_logs,
    from_rows,
    intersection,
    is_space_over,
    normalize_contains_one,
    scalar_multiply,
    subspace_distance,
)

__version__ = "0.1.0"
