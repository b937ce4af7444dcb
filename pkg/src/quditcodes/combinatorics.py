"""Occupation vectors, tail orbits, support enumeration, and sparsity.

An occupation vector u is a length-d tuple of naturals summing to N; it
labels the permutation-invariant basis vector built from the multiset with
u_j copies of symbol j.  The tail orbit of u is its equivalence class
under permutations of entries 1..d-1 (entry 0 fixed); doubly
permutation-invariant code words carry one amplitude per tail orbit.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from typing import Iterable, Iterator, List, Optional, Sequence, Tuple

from .arith import InvalidInputError

OccupationVector = Tuple[int, ...]


def check_occupation(u: Sequence[int], d: Optional[int] = None,
                     N: Optional[int] = None) -> OccupationVector:
    u = tuple(u)
    if d is not None and len(u) != d:
        raise InvalidInputError(f"expected length {d}, got {u}")
    if len(u) < 3 or len(u) % 2 == 0:
        raise InvalidInputError(f"dimension must be odd and >= 3, got {len(u)}")
    if any(x < 0 for x in u):
        raise InvalidInputError(f"negative entry in {u}")
    if N is not None and sum(u) != N:
        raise InvalidInputError(f"{u} does not sum to {N}")
    return u


def weight(u: Sequence[int]) -> int:
    """(sum_j j*u_j) mod d: the clock-operator eigenvalue exponent of |S_u>."""
    d = len(u)
    return sum(j * x for j, x in enumerate(u)) % d


def cyclic_shift(u: Sequence[int], a: int) -> OccupationVector:
    """Relabel symbols j -> j+a (mod d): result[j] = u[j-a].

    This is the occupation-vector action of the a-th power of the logical
    shift operator; weight(result) = weight(u) + a*sum(u) mod d.
    """
    d = len(u)
    a %= d
    return tuple(u[(j - a) % d] for j in range(d))


@dataclass(frozen=True)
class TailOrbit:
    """Canonical representative (tail sorted non-increasing) and orbit size."""

    representative: OccupationVector
    size: int

    @property
    def d(self) -> int:
        return len(self.representative)


def canonical_representative(u: Sequence[int]) -> OccupationVector:
    return (u[0],) + tuple(sorted(u[1:], reverse=True))


def tail_orbit(u: Sequence[int]) -> TailOrbit:
    u = tuple(u)
    rep = canonical_representative(u)
    tail = rep[1:]
    size = math.factorial(len(tail))
    for m in set(tail):
        size //= math.factorial(tail.count(m))
    return TailOrbit(rep, size)


def expand_orbit(rep: Sequence[int]) -> List[OccupationVector]:
    """All distinct rearrangements of entries 1..d-1 (entry 0 fixed)."""
    head, tail = rep[0], tuple(rep[1:])
    members = sorted({(head,) + perm for perm in itertools.permutations(tail)})
    return members


def iter_support_representatives(d: int, N: int) -> Iterator[OccupationVector]:
    """Canonical tail-orbit representatives with congruent tail entries and
    weight 0, in lexicographic order.

    These are exactly the occupation vectors eligible to carry an amplitude
    in a doubly permutation-invariant weight-zero code word.
    """
    if d < 3 or d % 2 == 0:
        raise InvalidInputError(f"dimension must be odd and >= 3, got {d}")
    if N < 1:
        raise InvalidInputError(f"need N >= 1, got {N}")
    reps = []
    for residue in range(d):
        for tail in _nonincreasing_tails(d - 1, N, residue, d, upper=N):
            head = N - sum(tail)
            u = (head,) + tail
            if weight(u) == 0:
                reps.append(u)
    reps.sort()
    yield from reps


def _nonincreasing_tails(length: int, budget: int, residue: int, modulus: int,
                         upper: int) -> Iterator[Tuple[int, ...]]:
    if length == 0:
        yield ()
        return
    value = upper - (upper - residue) % modulus
    while value >= 0:
        if value <= budget:
            for rest in _nonincreasing_tails(length - 1, budget - value,
                                             residue, modulus, value):
                yield (value,) + rest
        value -= modulus


def enumerate_supports(d: int, N: int, limit: Optional[int] = None) -> List[TailOrbit]:
    """Tail orbits of all eligible support representatives, optionally capped."""
    orbits = []
    for rep in iter_support_representatives(d, N):
        orbits.append(tail_orbit(rep))
        if limit is not None and len(orbits) >= limit:
            break
    return orbits


def sparsity_distance(u: Sequence[int], v: Sequence[int]
                      ) -> Tuple[int, int, Tuple[int, ...]]:
    """Shift-minimized L1 distance between two occupation vectors.

    Returns (min distance, argmin shift delta, sorted nonzero differences
    u_x - v_{x+delta} at the minimizing shift).  Ties break on smallest
    delta.
    """
    if len(u) != len(v) or sum(u) != sum(v):
        raise InvalidInputError("vectors must share (d, N)")
    d = len(u)
    best = None
    for delta in range(d):
        diffs = tuple(u[x] - v[(x + delta) % d] for x in range(d))
        dist = sum(abs(t) for t in diffs)
        if best is None or dist < best[0]:
            best = (dist, delta, tuple(sorted(t for t in diffs if t)))
    return best


@dataclass(frozen=True)
class SparsityViolation:
    u: OccupationVector
    v: OccupationVector
    delta: int
    distance: int
    pattern: Tuple[int, ...]


def is_effectively_sparse(support: Iterable[Sequence[int]]
                          ) -> Tuple[bool, Optional[SparsityViolation]]:
    """Check that no pair of support vectors is reachable by one dit flip or
    by a double flip on distinct index pairs, under any cyclic relabeling.

    Distance 2 is always forbidden; distance 4 is allowed only for the
    {+2, -2} pattern (a repeated same-pair flip, which the diagonal
    quadratic form handles).  The exact self-coincidence (u == v shifted,
    at distance 0) is skipped; for weight-zero supports with N coprime
    residue it can only occur at delta = 0 with u == v.
    """
    members = [tuple(u) for u in support]
    d = len(members[0]) if members else 0
    for u in members:
        for v in members:
            for delta in range(d):
                diffs = [u[x] - v[(x + delta) % d] for x in range(d)]
                dist = sum(abs(t) for t in diffs)
                if dist == 0:
                    continue
                pattern = tuple(sorted(t for t in diffs if t))
                if dist == 2 or (dist == 4 and pattern != (-2, 2)):
                    return False, SparsityViolation(u, v, delta, dist, pattern)
    return True, None


def expand_support(orbits: Iterable[TailOrbit]) -> List[OccupationVector]:
    """Concatenated member lists of a collection of tail orbits."""
    members: List[OccupationVector] = []
    for orbit in orbits:
        members.extend(expand_orbit(orbit.representative))
    return members
