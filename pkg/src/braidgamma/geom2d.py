"""Exact planar event tracer for piecewise-linear point choreographies.

A choreography moves one point per unit time segment while the rest stand
still.  A wall crossing happens when four points become concyclic (or
collinear); with one moving point the incircle determinant restricted to a
segment is a polynomial of degree at most two in the time parameter, so every
event time is either rational or a quadratic irrational, and event detection,
ordering, and labeling are carried out entirely in exact arithmetic.

Each event records the four points in their circular order (canonicalized as
a cyclic-quadruple generator, so orientation and starting point are
irrelevant) plus the number of other points strictly inside the event
circle.  Tangential touches (double roots) cross nothing, emit nothing, and
raise UnstableWarning; genuinely degenerate contacts (five concyclic,
wall contact at a waypoint, a tuple riding a wall for a whole segment) raise
DegenerateError.
"""

from __future__ import annotations

import functools
import itertools
import json
import math
import warnings
from dataclasses import dataclass
from fractions import Fraction

from .errors import (
    DegenerateError,
    EndpointMismatchError,
    UnstableWarning,
    ValidationError,
)
from .exact import rat_from_str, rat_to_str, sign
from .generators import GammaGen, GGen
from .roots import AlgebraicRoot, ConstantZero, EndpointZero, isolate_unit_roots
from .words import GammaWord, GWord, MultiWord


@dataclass(frozen=True)
class Pt2:
    x: Fraction
    y: Fraction

    def __iter__(self):
        return iter((self.x, self.y))


def pt2(x, y) -> Pt2:
    return Pt2(Fraction(x), Fraction(y))


def orient2d(a: Pt2, b: Pt2, c: Pt2) -> int:
    """Sign of the signed area of (a, b, c): +1 counterclockwise."""
    return sign((b.x - a.x) * (c.y - a.y) - (b.y - a.y) * (c.x - a.x))


def _incircle_raw(a: Pt2, b: Pt2, c: Pt2, p: Pt2) -> Fraction:
    adx, ady = a.x - p.x, a.y - p.y
    bdx, bdy = b.x - p.x, b.y - p.y
    cdx, cdy = c.x - p.x, c.y - p.y
    ad2 = adx * adx + ady * ady
    bd2 = bdx * bdx + bdy * bdy
    cd2 = cdx * cdx + cdy * cdy
    return (
        adx * (bdy * cd2 - bd2 * cdy)
        - ady * (bdx * cd2 - bd2 * cdx)
        + ad2 * (bdx * cdy - bdy * cdx)
    )


def incircle_sign(a: Pt2, b: Pt2, c: Pt2, p: Pt2) -> int:
    """0 iff the four points are concyclic or collinear; +1 iff p is strictly
    inside the circle through a, b, c (any orientation).

    When a, b, c are themselves collinear there is no circle; the returned
    sign then reports the side of their common line on which p lies, positive
    to the left of the walk a -> b -> c.
    """
    s = sign(_incircle_raw(a, b, c, p))
    o = orient2d(a, b, c)
    return s if o >= 0 else -s


def circumcenter(a: Pt2, b: Pt2, c: Pt2) -> Pt2:
    """Exact circumcenter of a non-degenerate triangle."""
    d = 2 * ((b.x - a.x) * (c.y - a.y) - (b.y - a.y) * (c.x - a.x))
    if d == 0:
        raise ValidationError("circumcenter of collinear points")
    b2 = b.x * b.x + b.y * b.y - a.x * a.x - a.y * a.y
    c2 = c.x * c.x + c.y * c.y - a.x * a.x - a.y * a.y
    ux = (c.y - a.y) * b2 - (b.y - a.y) * c2
    uy = (b.x - a.x) * c2 - (c.x - a.x) * b2
    return Pt2(ux / d, uy / d)


# ---------------------------------------------------------------------------
# base configuration
# ---------------------------------------------------------------------------


@functools.lru_cache(maxsize=None)
def base_config(n: int, *, max_base: int = 1 << 20) -> tuple[Pt2, ...]:
    """n points on the squaring parabola at geometrically growing abscissae.

    The base B (a power of two, starting at 4) is accepted only after two
    exact checks: no four points concyclic, and for every sorted triple
    (j, p, q) the points strictly inside the circle through P_j, P_p, P_q are
    exactly P_1..P_{j-1} and P_{p+1}..P_{q-1}.
    """
    if n < 1:
        raise ValidationError(f"need n >= 1, got {n}")
    B = 4
    while B <= max_base:
        t = [Fraction(B) ** k for k in range(1, n + 1)]
        pts = tuple(Pt2(v, v * v) for v in t)
        if _base_config_ok(pts):
            return pts
        B *= 2
    raise ValidationError(f"no admissible base found up to {max_base}")


def _base_config_ok(pts) -> bool:
    n = len(pts)
    for quad in itertools.combinations(range(n), 4):
        if incircle_sign(pts[quad[0]], pts[quad[1]], pts[quad[2]], pts[quad[3]]) == 0:
            return False
    for j, p, q in itertools.combinations(range(1, n + 1), 3):
        for k in range(1, n + 1):
            if k in (j, p, q):
                continue
            expected = k < j or p < k < q
            s = incircle_sign(pts[j - 1], pts[p - 1], pts[q - 1], pts[k - 1])
            if s == 0 or (s > 0) != expected:
                return False
    return True


# ---------------------------------------------------------------------------
# choreographies
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class Move:
    point: int
    to: Pt2


@dataclass(frozen=True)
class Choreography:
    """A motion plan: one point interpolates linearly per unit time segment."""

    n: int
    start: tuple[Pt2, ...]
    moves: tuple[Move, ...] = ()
    loop: bool = False

    def configs(self) -> list[tuple[Pt2, ...]]:
        out = [self.start]
        cur = list(self.start)
        for m in self.moves:
            cur[m.point - 1] = m.to
            out.append(tuple(cur))
        return out

    @property
    def end(self) -> tuple[Pt2, ...]:
        return self.configs()[-1]

    def position(self, t: Fraction) -> tuple[Pt2, ...]:
        """Configuration at global time t in [0, len(moves)]."""
        t = Fraction(t)
        if not 0 <= t <= len(self.moves):
            raise ValidationError(f"time {t} outside [0, {len(self.moves)}]")
        configs = self.configs()
        seg = min(int(t), len(self.moves) - 1) if self.moves else 0
        if not self.moves or t == len(self.moves):
            return configs[-1]
        local = t - seg
        cur = list(configs[seg])
        m = self.moves[seg]
        p0 = cur[m.point - 1]
        cur[m.point - 1] = Pt2(
            p0.x + local * (m.to.x - p0.x), p0.y + local * (m.to.y - p0.y)
        )
        return tuple(cur)

    def validate(self) -> None:
        if self.n < 1 or len(self.start) != self.n:
            raise ValidationError(f"expected {self.n} start points, got {len(self.start)}")
        configs = self.configs()
        for which, cfg in enumerate(configs):
            if len(set(cfg)) != self.n:
                raise ValidationError(f"coincident points at waypoint {which}")
        for seg, m in enumerate(self.moves):
            if not 1 <= m.point <= self.n:
                raise ValidationError(f"move {seg} names point {m.point} outside 1..{self.n}")
            p0 = configs[seg][m.point - 1]
            dx, dy = m.to.x - p0.x, m.to.y - p0.y
            if dx == 0 and dy == 0:
                continue
            for k, s in enumerate(configs[seg], start=1):
                if k == m.point:
                    continue
                # does p0 + t*(dx,dy) hit s for 0 < t < 1?
                if dx != 0:
                    t = (s.x - p0.x) / dx
                    hit = p0.y + t * dy == s.y
                else:
                    if s.x != p0.x:
                        continue
                    t = (s.y - p0.y) / dy
                    hit = True
                if hit and 0 < t < 1:
                    raise ValidationError(
                        f"point {m.point} collides with point {k} inside segment {seg}"
                    )
        if self.loop and configs[-1] != self.start:
            raise ValidationError("loop flag set but final configuration differs from start")


def concat(ch1: Choreography, ch2: Choreography) -> Choreography:
    if ch1.n != ch2.n:
        raise EndpointMismatchError("choreographies have different n")
    if ch1.end != ch2.start:
        raise EndpointMismatchError("second choreography does not start where the first ends")
    return Choreography(
        ch1.n, ch1.start, ch1.moves + ch2.moves, loop=ch1.start == ch2.end
    )


def reverse(ch: Choreography) -> Choreography:
    configs = ch.configs()
    moves = tuple(
        Move(ch.moves[k].point, configs[k][ch.moves[k].point - 1])
        for k in range(len(ch.moves) - 1, -1, -1)
    )
    return Choreography(ch.n, configs[-1], moves, loop=ch.loop)


def subdivide(ch: Choreography, seg: int, at: Fraction = Fraction(1, 2)) -> Choreography:
    """Split segment `seg` at local parameter `at` (event words are unchanged)."""
    if not 0 < Fraction(at) < 1:
        raise ValidationError("subdivision parameter must be strictly inside (0,1)")
    configs = ch.configs()
    m = ch.moves[seg]
    p0 = configs[seg][m.point - 1]
    at = Fraction(at)
    mid = Pt2(p0.x + at * (m.to.x - p0.x), p0.y + at * (m.to.y - p0.y))
    moves = ch.moves[:seg] + (Move(m.point, mid), m) + ch.moves[seg + 1 :]
    return Choreography(ch.n, ch.start, moves, loop=ch.loop)


# ---------------------------------------------------------------------------
# tracing
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class Event:
    """One wall crossing: four points concyclic (or collinear) with odd contact."""

    segment: int
    time: AlgebraicRoot
    quad: GammaGen
    subset: GGen
    inside: int
    collinear_wall: bool = False


def _incircle_coeffs(a, b, c, m0, m1):
    """Integer coefficients of det(t) = incircle(a, b, c, M(t)), degree <= 2.

    Only the mover's row of the lifted determinant depends on t, so the true
    degree is at most two and interpolation at t = 0, 1/2, 1 is exact.
    """
    half = Fraction(1, 2)
    mid = Pt2(m0.x + half * (m1.x - m0.x), m0.y + half * (m1.y - m0.y))
    p0 = _incircle_raw(a, b, c, m0)
    ph = _incircle_raw(a, b, c, mid)
    p1 = _incircle_raw(a, b, c, m1)
    c2 = 2 * (p1 + p0 - 2 * ph)
    c1 = p1 - p0 - c2
    c0 = p0
    den = math.lcm(c0.denominator, c1.denominator, c2.denominator)
    return (int(c0 * den), int(c1 * den), int(c2 * den))


# linear forms (alpha, beta) standing for alpha + beta * t
def _lf_const(v: Fraction):
    return (Fraction(v), Fraction(0))


def _lf_sub(u, v):
    return (u[0] - v[0], u[1] - v[1])


def _lf_mul(u, v):
    assert u[1] == 0 or v[1] == 0, "product of two non-constant forms"
    return (u[0] * v[0], u[0] * v[1] + u[1] * v[0])


def _angular_cycle(root: AlgebraicRoot, center: Pt2, points) -> tuple[int, ...]:
    """Indices of `points` (index, x-form, y-form) in circular order around center."""

    def half(v):
        sy = root.linear_sign(*v[1])
        if sy != 0:
            return 0 if sy > 0 else 1
        sx = root.linear_sign(*v[0])
        assert sx != 0, "point coincides with the circumcenter"
        return 0 if sx > 0 else 1

    vecs = {
        idx: (_lf_sub(fx, _lf_const(center.x)), _lf_sub(fy, _lf_const(center.y)))
        for idx, fx, fy in points
    }

    def cmp(i, j):
        hi, hj = half(vecs[i]), half(vecs[j])
        if hi != hj:
            return -1 if hi < hj else 1
        cx = _lf_sub(
            _lf_mul(vecs[i][0], vecs[j][1]), _lf_mul(vecs[i][1], vecs[j][0])
        )
        s = root.linear_sign(*cx)
        assert s != 0, "two event points on one ray from the circumcenter"
        return -1 if s > 0 else 1

    return tuple(sorted(vecs, key=functools.cmp_to_key(cmp)))


def trace(ch: Choreography) -> list[Event]:
    """All wall crossings of a valid choreography, ordered by (segment, time)."""
    ch.validate()
    configs = ch.configs()
    events: list[Event] = []
    for seg, move in enumerate(ch.moves):
        cfg = configs[seg]
        mover = move.point
        others = [k for k in range(1, ch.n + 1) if k != mover]
        for quad in itertools.combinations(others, 4):
            pts = [cfg[k - 1] for k in quad]
            if incircle_sign(*pts) == 0:
                raise DegenerateError(
                    "four static points are concyclic or collinear",
                    segment=seg,
                    subsets=[quad],
                )
        m0, m1 = cfg[mover - 1], move.to
        if m0 == m1:
            continue
        found: list[tuple[AlgebraicRoot, tuple[int, int, int]]] = []
        for triple in itertools.combinations(others, 3):
            a, b, c = (cfg[k - 1] for k in triple)
            coeffs = _incircle_coeffs(a, b, c, m0, m1)
            subset = tuple(sorted(triple + (mover,)))
            try:
                roots, tangencies = isolate_unit_roots(coeffs)
            except ConstantZero:
                raise DegenerateError(
                    "tuple rides a common circle for a whole segment",
                    segment=seg,
                    subsets=[subset],
                ) from None
            except EndpointZero as exc:
                raise DegenerateError(
                    "wall contact exactly at a waypoint",
                    segment=seg,
                    subsets=[subset],
                    window=f"t={exc.where}",
                ) from None
            for tau in tangencies:
                warnings.warn(
                    UnstableWarning(
                        "tangential wall contact crosses nothing and emits nothing",
                        segment=seg,
                        subset=subset,
                        time=tau,
                    )
                )
            found.extend((root, triple) for root in roots)
        if not found:
            continue
        events.extend(_segment_events(ch.n, seg, cfg, mover, m0, m1, found))
    return events


def _segment_events(n, seg, cfg, mover, m0, m1, found):
    found.sort(key=functools.cmp_to_key(lambda u, v: u[0].compare(v[0])))
    groups: list[list[tuple[AlgebraicRoot, tuple]]] = []
    for item in found:
        if groups and groups[-1][0][0].compare(item[0]) == 0:
            groups[-1].append(item)
        else:
            groups.append([item])
    for group in groups:
        if len(group) == 1:
            continue
        for (_, t1), (_, t2) in itertools.combinations(group, 2):
            if len(set(t1) & set(t2)) >= 2:  # plus the shared mover: >= 3 indices
                raise DegenerateError(
                    "five or more points on one circle (simultaneous events share 3 indices)",
                    segment=seg,
                    subsets=[t1 + (mover,), t2 + (mover,)],
                )
        group.sort(key=lambda item: item[1])

    samples = _sample_times([g[0][0] for g in groups])
    out = []
    for k, group in enumerate(groups):
        for root, triple in group:
            out.append(
                _build_event(
                    n, seg, cfg, mover, m0, m1, root, triple, samples[k], samples[k + 1]
                )
            )
    return out


def _separate_roots(a, b) -> None:
    """Shrink isolating intervals until a's upper bound is at most b's lower
    bound, strictly past any rational root (a < b is already known)."""
    if a.is_rational():
        b.refine_below(a.exact)
        return
    if b.is_rational():
        a.refine_above(b.exact)
        return
    while a.hi > b.lo:
        a.refine()
        b.refine()


def _sample_times(roots) -> list[Fraction]:
    """Rationals interleaving the sorted distinct roots, clear of all of them."""
    for a, b in zip(roots, roots[1:]):
        _separate_roots(a, b)
    if not roots[0].is_rational():
        roots[0].refine_below(Fraction(0))
    if not roots[-1].is_rational():
        roots[-1].refine_above(Fraction(1))
    bounds = [Fraction(0)]
    for r in roots:
        lo = r.exact if r.is_rational() else r.lo
        hi = r.exact if r.is_rational() else r.hi
        bounds.append(lo)
        bounds.append(hi)
    bounds.append(Fraction(1))
    return [(bounds[2 * k] + bounds[2 * k + 1]) / 2 for k in range(len(roots) + 1)]


def _build_event(n, seg, cfg, mover, m0, m1, root, triple, t_left, t_right):
    a, b, c = (cfg[k - 1] for k in triple)
    subset = tuple(sorted(triple + (mover,)))
    bystanders = [k for k in range(1, n + 1) if k not in subset]
    mx = (m0.x, m1.x - m0.x)
    my = (m0.y, m1.y - m0.y)
    if orient2d(a, b, c) != 0:
        center = circumcenter(a, b, c)
        points = [(k, _lf_const(cfg[k - 1].x), _lf_const(cfg[k - 1].y)) for k in triple]
        points.append((mover, mx, my))
        cycle = _angular_cycle(root, center, points)
        inside = 0
        for k in bystanders:
            s = incircle_sign(a, b, c, cfg[k - 1])
            if s == 0:
                raise DegenerateError(
                    "a fifth point lies exactly on the event circle",
                    segment=seg,
                    subsets=[subset + (k,)],
                )
            inside += s > 0
        return Event(seg, root, GammaGen(cycle), GGen(subset), inside)

    # collinear wall: order along the line, closed up projectively
    d = (b.x - a.x, b.y - a.y)
    coord = {}
    for k in triple:
        p = cfg[k - 1]
        coord[k] = _lf_const((p.x - a.x) * d[0] + (p.y - a.y) * d[1])
    coord[mover] = (
        (mx[0] - a.x) * d[0] + (my[0] - a.y) * d[1],
        mx[1] * d[0] + my[1] * d[1],
    )

    def cmp(i, j):
        s = root.linear_sign(*_lf_sub(coord[i], coord[j]))
        assert s != 0, "distinct points share a coordinate on the wall line"
        return s

    cycle = tuple(sorted(coord, key=functools.cmp_to_key(cmp)))
    side = {}
    for k in bystanders:
        s = orient2d(a, b, cfg[k - 1])
        if s == 0:
            raise DegenerateError(
                "a fifth point lies exactly on the event line",
                segment=seg,
                subsets=[subset + (k,)],
            )
        side[k] = s

    def mover_at(t):
        return Pt2(m0.x + t * (m1.x - m0.x), m0.y + t * (m1.y - m0.y))

    counts = []
    for t in (t_left, t_right):
        ms = orient2d(a, b, mover_at(t))
        assert ms != 0
        counts.append(sum(1 for k in bystanders if side[k] == -ms))
    if counts[0] != counts[1]:
        raise DegenerateError(
            "inside count disagrees on the two sides of a collinear wall",
            segment=seg,
            subsets=[subset],
            window=f"({t_left}, {t_right})",
        )
    return Event(seg, root, GammaGen(cycle), GGen(subset), counts[0], collinear_wall=True)


def events_to_word(events, target: str, r: int = 1):
    """Letter per event. Slots in the r-fold target are inside counts mod r."""
    if target == "g":
        return GWord(tuple(e.subset for e in events))
    if target == "gamma":
        return GammaWord(tuple(e.quad for e in events))
    if target == "gammar":
        return MultiWord(r, tuple((e.inside % r, e.quad) for e in events))
    raise ValidationError(f"unknown target {target!r}")


# ---------------------------------------------------------------------------
# the standard generator choreography
# ---------------------------------------------------------------------------


def generator_choreography(n: int, i: int, j: int) -> Choreography:
    """Loop realizing the two-strand twist b(i,j) over the base configuration.

    Four stages, all waypoints strictly above the parabola by half the
    smallest vertical gap: point i flies over i+1..j and parks right of j;
    point j hops over it; point i flies home; point j returns.  Straight
    flights between lifted points stay above every intermediate base point
    because chords of a convex graph lie above it.
    """
    if not 1 <= i < j <= n:
        raise ValidationError(f"need 1 <= i < j <= n, got ({i},{j}), n={n}")
    pts = base_config(n)
    xs = [p.x for p in pts]
    ys = [p.y for p in pts]
    eps = min(ys[k + 1] - ys[k] for k in range(n - 1)) / 2 if n >= 2 else Fraction(1)
    gap = (xs[j] - xs[j - 1]) if j < n else (xs[n - 1] - xs[n - 2])
    xl = xs[j - 1] + gap / 2
    xl2 = xs[j - 1] + 3 * gap / 4
    yl, yl2 = xl * xl, xl2 * xl2
    xi, yi = xs[i - 1], ys[i - 1]
    xj, yj = xs[j - 1], ys[j - 1]
    moves = (
        Move(i, Pt2(xi, yi + eps)),
        Move(i, Pt2(xl, yl + eps)),
        Move(i, Pt2(xl, yl)),
        Move(j, Pt2(xj, yl2 + eps)),
        Move(j, Pt2(xl2, yl2 + eps)),
        Move(j, Pt2(xl2, yl2)),
        Move(i, Pt2(xl, yl + eps)),
        Move(i, Pt2(xi, yi + eps)),
        Move(i, Pt2(xi, yi)),
        Move(j, Pt2(xl2, yl2 + eps)),
        Move(j, Pt2(xj, yj + eps)),
        Move(j, Pt2(xj, yj)),
    )
    ch = Choreography(n, pts, moves, loop=True)
    ch.validate()
    return ch


def braid_choreography(w) -> Choreography:
    """Concatenated generator loops realizing a braid word (inverses reversed)."""
    from .braids import BraidWord

    assert isinstance(w, BraidWord)
    ch = Choreography(w.n, base_config(w.n), (), loop=True)
    for g in w.letters:
        piece = generator_choreography(w.n, g.i, g.j)
        if g.exponent < 0:
            piece = reverse(piece)
        for _ in range(abs(g.exponent)):
            ch = concat(ch, piece)
    return ch


# ---------------------------------------------------------------------------
# JSON interchange
# ---------------------------------------------------------------------------


def choreography_to_json(ch: Choreography) -> dict:
    return {
        "n": ch.n,
        "dim": 2,
        "points": [[rat_to_str(p.x), rat_to_str(p.y)] for p in ch.start],
        "moves": [
            {"point": m.point, "to": [rat_to_str(m.to.x), rat_to_str(m.to.y)]}
            for m in ch.moves
        ],
        "loop": ch.loop,
    }


def choreography_from_json(data: dict):
    """Build a 2D or 3D choreography from the documented JSON schema."""
    if not isinstance(data, dict) or "dim" not in data:
        raise ValidationError("choreography JSON must be an object with a 'dim' field")
    dim = data["dim"]
    if dim == 3:
        from . import geom3d

        return geom3d.choreo3_from_json(data)
    if dim != 2:
        raise ValidationError(f"unsupported dim {dim!r}")
    try:
        n = int(data["n"])
        start = tuple(Pt2(rat_from_str(x), rat_from_str(y)) for x, y in data["points"])
        moves = tuple(
            Move(int(m["point"]), Pt2(rat_from_str(m["to"][0]), rat_from_str(m["to"][1])))
            for m in data.get("moves", ())
        )
        loop = bool(data.get("loop", False))
    except (KeyError, TypeError, ValueError) as exc:
        raise ValidationError(f"malformed choreography JSON: {exc}") from None
    return Choreography(n, start, moves, loop=loop)


def load_choreography(path: str):
    with open(path, "r", encoding="utf-8") as fh:
        return choreography_from_json(json.load(fh))
