import random
from fractions import Fraction

import pytest

from braidgamma.errors import (
    CollinearTripleError,
    DegenerateError,
    ValidationError,
)
from braidgamma.generators import GammaGen
from braidgamma.geom3d import (
    Choreo3,
    Move3,
    choreo3_from_json,
    choreo3_to_json,
    concat3,
    loop_word,
    orient3d_sign,
    pt3,
    reverse3,
    trace3,
)
from braidgamma.words import GammaWord, free_reduce, invariant_equal, invert


def orient3d_cofactor_oracle(a, b, c, d):
    """Independent 4x4 determinant by cofactor expansion along the last column."""
    rows = [list(a) + [1], list(b) + [1], list(c) + [1], list(d) + [1]]

    def det3(m):
        return (
            m[0][0] * (m[1][1] * m[2][2] - m[1][2] * m[2][1])
            - m[0][1] * (m[1][0] * m[2][2] - m[1][2] * m[2][0])
            + m[0][2] * (m[1][0] * m[2][1] - m[1][1] * m[2][0])
        )

    total = 0
    for k in range(4):
        minor = [r[:3] for r in rows[:k] + rows[k + 1 :]]
        total += (-1) ** (k + 3) * rows[k][3] * det3(minor)
    return (total > 0) - (total < 0)


def test_orient3d_examples():
    a, b, c, d = pt3(0, 0, 0), pt3(1, 0, 0), pt3(0, 1, 0), pt3(0, 0, 1)
    assert orient3d_sign(a, b, c, d) != 0
    assert orient3d_sign(a, b, c, pt3(7, -3, 0)) == 0
    assert orient3d_sign(b, a, c, d) == -orient3d_sign(a, b, c, d)


def test_orient3d_against_cofactor_oracle():
    rng = random.Random(79)
    for _ in range(500):
        pts = [
            pt3(
                Fraction(rng.randrange(-64, 64), 8),
                Fraction(rng.randrange(-64, 64), 8),
                Fraction(rng.randrange(-64, 64), 8),
            )
            for _ in range(4)
        ]
        assert orient3d_sign(*pts) == orient3d_cofactor_oracle(*pts)


# ---------------------------------------------------------------------------
# standard configurations
# ---------------------------------------------------------------------------

A, B, C = pt3(0, 0, 0), pt3(10, 1, 0), pt3(3, 9, 0)


def crossing(n_extra, cross_at, extras, there_and_back=False):
    """Mover crosses plane(A, B, C) vertically at cross_at (a 2D point)."""
    m0 = pt3(cross_at[0], cross_at[1], -4)
    m1 = pt3(cross_at[0], cross_at[1], 6)
    pts = (A, B, C) + tuple(extras) + (m0,)
    n = 4 + n_extra
    moves = (Move3(n, m1), Move3(n, m0)) if there_and_back else (Move3(n, m1),)
    return Choreo3(n, pts, moves, loop=there_and_back)


def test_convex_one_sided_crossing_is_special():
    ch = crossing(2, (11, 9), (pt3(2, 3, 7), pt3(6, 2, 5)), there_and_back=True)
    events = trace3(ch)
    plane_events = [e for e in events if e.subset.members == (1, 2, 3, 6)]
    assert len(plane_events) == 2
    for e in plane_events:
        assert e.convex and e.one_sided and e.special and e.side != 0
    word = loop_word(ch)
    assert free_reduce(word) == GammaWord()
    assert loop_word(reverse3(ch)) == invert(word)


def test_nonconvex_crossing_is_not_special():
    # crossing point strictly inside triangle ABC
    ch = crossing(2, (4, 3), (pt3(2, 3, 7), pt3(6, 2, 5)))
    events = [e for e in trace3(ch) if e.subset.members == (1, 2, 3, 6)]
    assert len(events) == 1
    assert not events[0].convex and events[0].quad is None
    assert events[0].one_sided
    assert not events[0].special


def test_two_sided_crossing_is_not_special():
    ch = crossing(2, (11, 9), (pt3(2, 3, 7), pt3(6, 2, -5)))
    events = [e for e in trace3(ch) if e.subset.members == (1, 2, 3, 6)]
    assert len(events) == 1
    assert events[0].convex
    assert not events[0].one_sided and events[0].side == 0
    assert not events[0].special


def test_quad_letter_ignores_viewing_side():
    # reading the cyclic order from the other side reverses the cycle, which
    # the dihedral canonicalization absorbs
    ch = crossing(2, (11, 9), (pt3(2, 3, 7), pt3(6, 2, 5)))
    (e,) = [x for x in trace3(ch) if x.subset.members == (1, 2, 3, 6)]
    assert GammaGen(tuple(reversed(e.quad.cycle))) == e.quad


def test_static_coplanar_quadruple_is_degenerate():
    pts = (A, B, C, pt3(7, 7, 0), pt3(1, 1, 5))
    ch = Choreo3(5, pts, (Move3(5, pt3(1, 1, 6)),))
    with pytest.raises(DegenerateError):
        trace3(ch)


def test_fifth_point_on_event_plane_is_degenerate():
    # the bystander sits exactly in the z=0 plane the mover crosses
    ch = crossing(1, (11, 9), (pt3(-6, 4, 0),))
    with pytest.raises(DegenerateError):
        trace3(ch)


def test_endpoint_wall_contact_is_degenerate():
    pts = (A, B, C, pt3(11, 9, 0))
    ch = Choreo3(4, pts, (Move3(4, pt3(11, 9, 5)),))
    with pytest.raises(DegenerateError):
        trace3(ch)


def test_collinear_triples_are_rejected():
    with pytest.raises(CollinearTripleError):
        Choreo3(4, (A, B, pt3(20, 2, 0), pt3(1, 1, 1))).validate()
    # collinearity hit exactly at an event time
    ch = Choreo3(
        4,
        (A, B, pt3(3, 9, 2), pt3(20, 2, -1)),
        (Move3(4, pt3(20, 2, 1)),),
    )
    with pytest.raises(CollinearTripleError):
        trace3(ch)


def test_disjoint_quads_commute_at_invariant_level():
    # two far-apart clusters crossed in either order; the movers travel inside
    # thin slabs so only their own cluster plane is crossed
    far = 200
    q = Fraction(1, 40)
    D1 = (pt3(0, 0, 0), pt3(10, 1, 0), pt3(3, 9, 0))
    D2 = (pt3(far, 0, 50), pt3(far + 13, 2, 50), pt3(far + 4, 11, 50))
    m1_lo, m1_hi = pt3(11, 9, -q), pt3(11, 9, q)
    m2_lo, m2_hi = pt3(far + 15, 8, 50 - q), pt3(far + 15, 8, 50 + q)
    pts = D1 + D2 + (m1_lo, m2_lo)

    first_then_second = Choreo3(
        8, pts,
        (Move3(7, m1_hi), Move3(7, m1_lo), Move3(8, m2_hi), Move3(8, m2_lo)),
        loop=True,
    )
    second_then_first = Choreo3(
        8, pts,
        (Move3(8, m2_hi), Move3(8, m2_lo), Move3(7, m1_hi), Move3(7, m1_lo)),
        loop=True,
    )
    w1 = loop_word(first_then_second)
    w2 = loop_word(second_then_first)
    assert len(w1) == len(w2) == 4
    assert sorted(w1.letters) == sorted(w2.letters)
    assert {len(set(x.subset) & set(y.subset)) for x in w1 for y in w2} <= {0, 4}
    assert invariant_equal(w1, w2, 8)
    assert w1 != w2  # the orders genuinely differ


def test_loop_word_requires_loop():
    ch = crossing(2, (11, 9), (pt3(2, 3, 7), pt3(6, 2, 5)))
    with pytest.raises(ValidationError):
        loop_word(ch)


def test_static_choreography_is_empty():
    ch = Choreo3(4, (A, B, C, pt3(1, 1, 5)), (), loop=True)
    assert trace3(ch) == [] and loop_word(ch) == GammaWord()


def test_json_roundtrip_and_concat():
    ch = crossing(2, (11, 9), (pt3(2, 3, 7), pt3(6, 2, 5)), there_and_back=True)
    data = choreo3_to_json(ch)
    assert data["dim"] == 3
    assert choreo3_from_json(data) == ch
    both = concat3(ch, ch)
    assert both.loop and len(both.moves) == 4
    from braidgamma.geom2d import choreography_from_json

    assert choreography_from_json(data) == ch  # dim dispatch
