"""Maps from pure braid words into the three involution-generated targets.

Each braid letter b(i,j) is sent to a product of "passage" words, one per
point that the moving strand passes.  A passage word is assembled from three
literal double products whose letters are indexed by the printed expressions

    part II :  p in 1..y-1, q in 1..n-y      letter on (y-p, y+p | x, y)
    part I  :  p in 2..y-1, q in 1..p-1      letter on (p,   q   | x, y)
    part III:  p in 1..n-y+1, q in 0..n-p+1  letter on (n-p, n-q | x, y)

for a passage of strand x anchored at strand y, multiplied as II * I * III.
The inner bound variable of part II never appears in its letter, so each of
its letters occurs with multiplicity n-y; factors whose four indices collide
or leave 1..n are dropped.  No index expression is repaired: the geometric
tracer (`formula_mode="traced"`) is the semantic oracle, and discrepancies
between the two modes are reported, never silently reconciled.

Two assembly patterns for the full letter image are printed in different
places and are both exposed:

    "flip"    : P(i,i+1) ... P(i,j)  P(j,i)  P(j-1,i)^-1 ... P(i+1,i)^-1
    "doubled" : P(i,i+1) ... P(i,j)  P(i,j)  P(i,j-1)^-1 ... P(i,i+1)^-1

The 4-subset target always uses "doubled" (its only printed form); the
cyclic-quadruple targets default to "flip".
"""

from __future__ import annotations

import functools
from dataclasses import dataclass

from .braids import BraidWord
from .errors import IndexRangeError
from .generators import GGen, select_quad
from .words import GammaWord, GWord, MultiWord, free_reduce, invert

TARGETS = ("g", "gamma", "gammar")


@dataclass(frozen=True)
class HomConfig:
    n: int
    target: str = "gamma"
    r: int = 1
    formula_mode: str = "literal"  # "literal" | "traced"
    assembly: str = "flip"  # "flip" | "doubled"

    def __post_init__(self):
        if self.n < 1:
            raise IndexRangeError(f"need n >= 1, got {self.n}")
        if self.target not in TARGETS:
            raise IndexRangeError(f"target must be one of {TARGETS}, got {self.target!r}")
        if self.r < 1:
            raise IndexRangeError(f"need r >= 1, got {self.r}")
        if self.target != "gammar" and self.r != 1:
            raise IndexRangeError("r > 1 requires target 'gammar'")
        if self.formula_mode not in ("literal", "traced"):
            raise IndexRangeError(f"unknown formula_mode {self.formula_mode!r}")
        if self.assembly not in ("flip", "doubled"):
            raise IndexRangeError(f"unknown assembly {self.assembly!r}")


def inside_count(a: int, b: int, c: int) -> int:
    """Base points strictly inside the circle through base points a, b, c.

    For the standard parabola configuration the points inside the circle
    through the sorted triple lo < mid < hi are exactly 1..lo-1 and
    mid+1..hi-1, i.e. lo + hi - mid - 2 of them.
    """
    lo, mid, hi = sorted((a, b, c))
    if lo == mid or mid == hi:
        raise IndexRangeError(f"indices must be distinct, got {(a, b, c)}")
    return lo + hi - mid - 2


def letter_slot(p: int, q: int, mover: int, anchor: int, r: int) -> int:
    """Slot of the product letter on (p, q | mover, anchor) in the r-fold target.

    The base count is inside_count(p, q, anchor); one more when the moving
    strand's base point sits strictly inside the circle through p, q, anchor
    (below all three, or between the middle and largest).  Reduced mod r.
    """
    if r < 1:
        raise IndexRangeError(f"need r >= 1, got {r}")
    lo, mid, hi = sorted((p, q, anchor))
    if len({p, q, mover, anchor}) != 4:
        raise IndexRangeError(f"indices must be distinct, got {(p, q, mover, anchor)}")
    inside = mover < lo or mid < mover < hi
    return (inside_count(p, q, anchor) + (1 if inside else 0)) % r


def _passage_pairs(n: int, mover: int, anchor: int):
    """(p, q) far-point pairs of one passage word, in printed product order.

    Yields only pairs whose letter has four distinct in-range indices.
    """
    y = anchor

    def ok(p, q):
        return 1 <= p <= n and 1 <= q <= n and len({p, q, mover, anchor}) == 4

    # part II (letter independent of the inner bound variable)
    for p in range(1, y):
        for _ in range(1, n - y + 1):
            if ok(y - p, y + p):
                yield (y - p, y + p)
    # part I
    for p in range(2, y):
        for q in range(1, p):
            if ok(p, q):
                yield (p, q)
    # part III
    for p in range(1, n - y + 2):
        for q in range(0, n - p + 2):
            if ok(n - p, n - q):
                yield (n - p, n - q)


def passage_g(cfg: HomConfig, i: int, j: int) -> GWord:
    """Image word of one passage of strand i over strand j, 4-subset letters."""
    return GWord(
        tuple(GGen((p, q, i, j)) for p, q in _passage_pairs(cfg.n, i, j))
    )


def passage_gamma(cfg: HomConfig, mover: int, anchor: int) -> GammaWord:
    """Image word of one passage, cyclic-quadruple letters."""
    return GammaWord(
        tuple(
            select_quad(p, q, mover, anchor)
            for p, q in _passage_pairs(cfg.n, mover, anchor)
        )
    )


def passage_gamma_r(cfg: HomConfig, mover: int, anchor: int) -> MultiWord:
    """Image word of one passage with slot tags for the r-fold target."""
    return MultiWord(
        cfg.r,
        tuple(
            (letter_slot(p, q, mover, anchor, cfg.r), select_quad(p, q, mover, anchor))
            for p, q in _passage_pairs(cfg.n, mover, anchor)
        ),
    )


def _empty_word(cfg: HomConfig):
    if cfg.target == "g":
        return GWord()
    if cfg.target == "gamma":
        return GammaWord()
    return MultiWord(cfg.r)


def _concat(words):
    out = None
    for w in words:
        out = w if out is None else out * w
    return out


def generator_image(cfg: HomConfig, i: int, j: int):
    """Image of the braid letter b(i,j), unreduced."""
    if not 1 <= i < j <= cfg.n:
        raise IndexRangeError(f"need 1 <= i < j <= n, got ({i},{j}) with n={cfg.n}")
    if cfg.formula_mode == "traced":
        return _traced_generator_image(cfg, i, j)
    if cfg.target == "g":
        passage = lambda x, y: passage_g(cfg, x, y)
        assembly = "doubled"
    elif cfg.target == "gamma":
        passage = lambda x, y: passage_gamma(cfg, x, y)
        assembly = cfg.assembly
    else:
        passage = lambda x, y: passage_gamma_r(cfg, x, y)
        assembly = cfg.assembly

    head = [passage(i, k) for k in range(i + 1, j + 1)]
    if assembly == "doubled":
        middle = [passage(i, j)]
        tail = [invert(passage(i, k)) for k in range(j - 1, i, -1)]
    else:
        middle = [passage(j, i)]
        tail = [invert(passage(k, i)) for k in range(j - 1, i, -1)]
    return _concat(head + middle + tail)


def _traced_generator_image(cfg: HomConfig, i: int, j: int):
    from . import geom2d

    events = _traced_events(cfg.n, i, j)
    return geom2d.events_to_word(events, cfg.target, cfg.r)


@functools.lru_cache(maxsize=None)
def _traced_events(n: int, i: int, j: int):
    from . import geom2d

    return tuple(geom2d.trace(geom2d.generator_choreography(n, i, j)))


def map_braid(cfg: HomConfig, w: BraidWord, *, reduced: bool = True):
    """Image of a braid word: letterwise substitution, inverses by reversal."""
    if w.n > cfg.n:
        raise IndexRangeError(f"braid word has n={w.n} but config has n={cfg.n}")
    out = _empty_word(cfg)
    for g in w.letters:
        img = generator_image(cfg, g.i, g.j)
        if g.exponent < 0:
            img = invert(img)
        for _ in range(abs(g.exponent)):
            out = out * img
    return free_reduce(out) if reduced else out
