"""Finite simplicial complexes as limits of towers of finite posets.

The package builds, for a finite simplicial complex, the sequence of finite
posets on the vertices of its iterated barycentric subdivisions, the bonding
maps between levels, and an exact thread codec between points of the
realization and coherent sequences through the levels.  Everything is exact:
rational barycentric coordinates, integer homology, deterministic canonical
orderings.
"""

from .complexes import (
    RationalPoint,
    Simplex,
    SimplicialComplex,
    dist_sq,
    link,
    open_star,
    star,
    support,
    validate_complex,
)
from .posets import (
    FinitePoset,
    PosetMap,
    are_isomorphic,
    check_order_isomorphism,
    core,
    face_poset,
    is_order_preserving,
    min_open,
    order_complex,
    to_dot,
    up_set,
)
from .subdivision import (
    SubdividedComplex,
    embed_point,
    lift_point,
    mesh_sq_bound,
    sd_coordinates,
    stage_vertex_label,
    subdivide,
)
from .tower import (
    DecodedRegion,
    ThreadPrefix,
    Tower,
    TowerLevel,
    basic_preimage,
    bond,
    build_level,
    decode_thread,
    encode_thread,
    image_of_open,
    project_point,
    separation_stage,
    validate_thread,
)
from .homology import BettiProfile, ChainComplexZ, betti, chain_complex
from .approx import (
    PLMap,
    SimplicialMap,
    SystemMorphism,
    approximate,
    carrier_homotopy_check,
    check_naturality,
    homotopy_sample_points,
    induce_level_map,
    iterated_sd_map,
    limit_map,
    require_simplicial,
    sd_map,
    validate_simplicial,
)
from .verify import VerificationReport, verify_all, verify_suite

__version__ = "0.1.0"
