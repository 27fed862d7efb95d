"""Generator types: braid letters, 4-subset letters, and cyclic-quadruple letters.

A cyclic quadruple is an arrangement of four distinct strand indices on an
(unoriented, unbased) 4-cycle, so each 4-subset carries exactly three distinct
quadruples: 4!/8 = 3 orbits of the dihedral symmetry group.  We store the
canonical orbit representative chosen by the rule

    first entry  = smallest index,
    second entry = the smaller of its two cycle neighbours.

Equality of canonical forms then decides equality of generators.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass

from .errors import DuplicateIndexError, IndexRangeError


def _check_indices(idxs) -> tuple[int, ...]:
    idxs = tuple(idxs)
    for v in idxs:
        if not isinstance(v, int) or isinstance(v, bool) or v < 1:
            raise IndexRangeError(f"strand index must be a positive integer, got {v!r}")
    if len(set(idxs)) != len(idxs):
        raise DuplicateIndexError(f"indices must be distinct, got {idxs}")
    return idxs


def _canonical_cycle(cycle: tuple[int, int, int, int]) -> tuple[int, int, int, int]:
    k = cycle.index(min(cycle))
    fwd, bwd = cycle[(k + 1) % 4], cycle[(k - 1) % 4]
    step = 1 if fwd < bwd else -1
    return tuple(cycle[(k + step * t) % 4] for t in range(4))


@dataclass(frozen=True, order=True)
class GammaGen:
    """A cyclic-quadruple generator, stored canonically (see module docstring)."""

    cycle: tuple[int, int, int, int]

    def __post_init__(self):
        cycle = _check_indices(self.cycle)
        if len(cycle) != 4:
            raise IndexRangeError(f"a cyclic quadruple needs 4 indices, got {len(cycle)}")
        object.__setattr__(self, "cycle", _canonical_cycle(cycle))

    @property
    def subset(self) -> tuple[int, int, int, int]:
        return tuple(sorted(self.cycle))

    def __str__(self):
        return "d(%d,%d,%d,%d)" % self.cycle


@dataclass(frozen=True, order=True)
class GGen:
    """An order-free generator on a 4-subset of strand indices."""

    members: tuple[int, int, int, int]

    def __post_init__(self):
        members = _check_indices(self.members)
        if len(members) != 4:
            raise IndexRangeError(f"a 4-subset generator needs 4 indices, got {len(members)}")
        object.__setattr__(self, "members", tuple(sorted(members)))

    def __str__(self):
        return "a{%d,%d,%d,%d}" % self.members


@dataclass(frozen=True)
class BraidGen:
    """One signed letter of a pure braid word: the full twist of strands i < j."""

    i: int
    j: int
    exponent: int = 1

    def __post_init__(self):
        for v in (self.i, self.j):
            if not isinstance(v, int) or isinstance(v, bool) or v < 1:
                raise IndexRangeError(f"strand index must be a positive integer, got {v!r}")
        if self.i >= self.j:
            raise IndexRangeError(f"braid letter needs i < j, got ({self.i},{self.j})")
        if self.exponent == 0:
            raise IndexRangeError("braid letter exponent must be nonzero")

    def __str__(self):
        base = f"b({self.i},{self.j})"
        return base if self.exponent == 1 else f"{base}^{self.exponent}"


def canonicalize_quad(raw) -> GammaGen:
    """Canonical representative of the dihedral orbit of an ordered quadruple."""
    return GammaGen(tuple(raw))


def quads_of_subset(subset) -> list[GammaGen]:
    """The 3 distinct cyclic quadruples on a 4-subset, lexicographically ordered."""
    members = _check_indices(subset)
    if len(members) != 4:
        raise IndexRangeError(f"expected a 4-subset, got {len(members)} indices")
    quads = sorted({GammaGen(p) for p in itertools.permutations(members)})
    assert len(quads) == 3
    return quads


def select_quad(p: int, q: int, r: int, s: int, *, swap_pair: bool = False) -> GammaGen:
    """Quadruple for far points p, q and a close pair (r, s) anchored at s.

    The three points p, q, s sit on a common circle in ascending cyclic order;
    r is inserted immediately before s.  Written out, the six cases are

        (p,q,r,s) if p<q<s    (p,r,s,q) if p<s<q    (r,s,p,q) if s<p<q
        (q,p,r,s) if q<p<s    (q,r,s,p) if q<s<p    (r,s,q,p) if s<q<p

    With swap_pair=True the close pair is read in the other order, i.e. r is
    inserted immediately *after* the anchor s; the result is in general a
    different generator (the moving point approaches the anchor from the
    other side along the circle).
    """
    _check_indices((p, q, r, s))
    base = sorted((p, q, s))
    k = base.index(s)
    base.insert(k + 1 if swap_pair else k, r)
    return GammaGen(tuple(base))
