"""Braid words mapped into involution-generated targets with pentagon
relations, verified against an exact geometric event tracer."""

from .braids import (
    BraidWord,
    braid,
    braid_free_reduce,
    braid_inverse,
    parse_braid,
    print_braid,
    relation_instances,
)
from .generators import (
    BraidGen,
    GammaGen,
    GGen,
    canonicalize_quad,
    quads_of_subset,
    select_quad,
)
from .geom2d import (
    Choreography,
    Event,
    Move,
    Pt2,
    base_config,
    braid_choreography,
    choreography_from_json,
    choreography_to_json,
    concat,
    events_to_word,
    generator_choreography,
    incircle_sign,
    load_choreography,
    pt2,
    reverse,
    subdivide,
    trace,
)
from .geom3d import (
    Choreo3,
    Event3,
    Move3,
    Pt3,
    choreo3_from_json,
    choreo3_to_json,
    concat3,
    loop_word,
    orient3d_sign,
    pt3,
    reverse3,
    trace3,
)
from .homs import (
    HomConfig,
    generator_image,
    inside_count,
    letter_slot,
    map_braid,
    passage_g,
    passage_gamma,
    passage_gamma_r,
)
from .words import (
    GammaWord,
    GWord,
    InvariantClass,
    MultiWord,
    commute_normalize,
    forget_to_g,
    free_reduce,
    gamma_columns,
    invariant,
    invariant_equal,
    invert,
    parse_gamma_word,
    parse_gword,
    parse_multi_word,
    parse_word,
    pentagon_faces,
    pentagon_rows,
    word_to_text,
)

__version__ = "0.1.0"
