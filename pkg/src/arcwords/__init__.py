"""Words over arc generators of singular transformation semigroups.

An arc (a->b) is the idempotent fixing everything except a, which it sends
to b.  Given a digraph D on [n], the semigroup generated by the arcs along
the edges of D consists of singular transformations; this package measures
and constructs shortest generator words, explores structural
characterisations of the digraphs involved, and tabulates extremal word
lengths over digraph classes.
"""

from .transform import (
    Arc,
    OrbitStats,
    Transformation,
    compose,
    constant,
    evaluate,
    hi_bound,
    identity,
    kernel_partition,
    orbit_stats,
    parse_transformation,
    parse_word,
    word_to_text,
)
from .digraph import (
    Digraph,
    DigraphParseError,
    ForbiddenPattern,
    FAMILY_NAMES,
    Metrics,
    StrongDecomposition,
    band_bipartition,
    canonical_form,
    closure,
    digraph_to_text,
    family,
    find_forbidden,
    is_acyclic,
    is_band_digraph,
    is_closed,
    is_connected,
    is_semicomplete,
    is_strong,
    is_tournament,
    longest_paths,
    metrics,
    parse_digraph,
    relabel,
    satisfies_star,
    satisfies_star_star,
    star_star_violation,
    star_violation,
    strong_components,
)
from .semigroup import (
    NotAMember,
    RankProfile,
    RankRow,
    SemigroupIndex,
    component_hi_bound,
    decode_transformation,
    encode_transformation,
    explore,
    load_index,
    save_index,
)
from .constructions import (
    ConstructedWord,
    ConstructionError,
    PreconditionError,
    WitnessPair,
    acyclic_witness,
    check_word,
    cycle_witness,
    express_band,
    express_complete_optimal,
    express_constant,
    express_star_optimal,
    idempotent_with_image,
    idempotent_with_kernel,
    tournament_arc_word,
    tournament_express,
)

__version__ = "0.1.0"

__all__ = [
    "Arc",
    "ConstructedWord",
    "ConstructionError",
    "Digraph",
    "DigraphParseError",
    "FAMILY_NAMES",
    "ForbiddenPattern",
    "Metrics",
    "NotAMember",
    "OrbitStats",
    "PreconditionError",
    "RankProfile",
    "RankRow",
    "SemigroupIndex",
    "StrongDecomposition",
    "Transformation",
    "WitnessPair",
    "acyclic_witness",
    "band_bipartition",
    "canonical_form",
    "check_word",
    "closure",
    "compose",
    "component_hi_bound",
    "constant",
    "cycle_witness",
    "decode_transformation",
    "digraph_to_text",
    "encode_transformation",
    "evaluate",
    "explore",
    "express_band",
    "express_complete_optimal",
    "express_constant",
    "express_star_optimal",
    "family",
    "find_forbidden",
    "hi_bound",
    "identity",
    "idempotent_with_image",
    "idempotent_with_kernel",
    "is_acyclic",
    "is_band_digraph",
    "is_closed",
    "is_connected",
    "is_semicomplete",
    "is_strong",
    "is_tournament",
    "kernel_partition",
    "load_index",
    "longest_paths",
    "metrics",
    "orbit_stats",
    "parse_digraph",
    "parse_transformation",
    "parse_word",
    "relabel",
    "satisfies_star",
    "satisfies_star_star",
    "save_index",
    "star_star_violation",
    "star_violation",
    "strong_components",
    "tournament_arc_word",
    "tournament_express",
    "word_to_text",
    "__version__",
]
