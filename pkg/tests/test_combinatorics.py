import itertools
import math

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from quditcodes.arith import InvalidInputError
from quditcodes.combinatorics import (canonical_representative, check_occupation,
                                      cyclic_shift, enumerate_supports,
                                      expand_orbit, expand_support,
                                      is_effectively_sparse,
                                      iter_support_representatives,
                                      sparsity_distance, tail_orbit, weight)


def occupations(d=3, max_total=15):
    return st.lists(st.integers(0, max_total), min_size=d, max_size=d).map(tuple)


# ---------------------------------------------------------------------------
# shifts and weights


@given(occupations(), st.integers(-5, 10), st.integers(-5, 10))
def test_shift_composes(u, a, b):
    assert cyclic_shift(cyclic_shift(u, a), b) == cyclic_shift(u, a + b)
    assert cyclic_shift(u, 0) == u


@given(occupations(5, 10), st.integers(0, 6))
def test_weight_under_shift(u, a):
    d = len(u)
    assert weight(cyclic_shift(u, a)) == (weight(u) + a * sum(u)) % d


def test_shift_moves_counts_forward():
    assert cyclic_shift((3, 5, 5), 1) == (5, 3, 5)
    assert cyclic_shift((13, 0, 0), 2) == (0, 0, 13)


def test_check_occupation():
    assert check_occupation([1, 2, 3], 3, 6) == (1, 2, 3)
    with pytest.raises(InvalidInputError):
        check_occupation([1, 2], None, None)  # even length
    with pytest.raises(InvalidInputError):
        check_occupation([1, -1, 3])
    with pytest.raises(InvalidInputError):
        check_occupation([1, 2, 3], 3, 7)


# ---------------------------------------------------------------------------
# tail orbits


@given(occupations(5, 6))
def test_canonical_representative_idempotent(u):
    rep = canonical_representative(u)
    assert canonical_representative(rep) == rep
    assert rep[0] == u[0] and sorted(rep[1:]) == sorted(u[1:])


@given(occupations(5, 6))
def test_orbit_size_matches_expansion(u):
    orbit = tail_orbit(u)
    members = expand_orbit(orbit.representative)
    assert len(members) == orbit.size
    assert all(m[0] == u[0] for m in members)
    assert tuple(u) in members


def test_qutrit_orbit_sizes():
    assert tail_orbit((13, 0, 0)).size == 1
    assert tail_orbit((4, 9, 0)).size == 2
    assert tail_orbit((3, 5, 5)).size == 1


# ---------------------------------------------------------------------------
# support enumeration


def brute_force_representatives(d, N):
    reps = set()
    for u in itertools.product(range(N + 1), repeat=d):
        if sum(u) != N or weight(u) != 0:
            continue
        if any(x % d != u[1] % d for x in u[1:]):
            continue
        reps.add(canonical_representative(u))
    return sorted(reps)


@pytest.mark.parametrize("d, N", [(3, 13), (3, 7), (5, 6), (5, 16)])
def test_representatives_match_brute_force(d, N):
    assert list(iter_support_representatives(d, N)) == \
        brute_force_representatives(d, N)


def test_known_representative_counts():
    assert len(list(iter_support_representatives(3, 13))) == 21
    assert len(list(iter_support_representatives(5, 16))) == 15


def test_enumerate_supports_limit():
    orbits = enumerate_supports(3, 13, limit=5)
    assert len(orbits) == 5
    assert all(o.representative == canonical_representative(o.representative)
               for o in orbits)


def test_iter_support_representatives_rejects_bad_input():
    with pytest.raises(InvalidInputError):
        list(iter_support_representatives(4, 10))
    with pytest.raises(InvalidInputError):
        list(iter_support_representatives(3, 0))


# ---------------------------------------------------------------------------
# sparsity


@given(occupations(3, 8), occupations(3, 8))
@settings(max_examples=80)
def test_sparsity_distance_symmetry(u, v):
    if sum(u) != sum(v):
        with pytest.raises(InvalidInputError):
            sparsity_distance(u, v)
        return
    du, _, _ = sparsity_distance(u, v)
    dv, _, _ = sparsity_distance(v, u)
    assert du == dv
    assert sparsity_distance(u, u)[0] == 0


def test_sparsity_distance_witness():
    dist, delta, pattern = sparsity_distance((3, 5, 5), (5, 3, 5))
    # (5,3,5) is (3,5,5) shifted by one, so the minimizing shift matches
    # them exactly.
    assert (dist, pattern) == (0, ())
    # (4,9,0) vs (3,5,5): shifts give distances 10, 12, 8; the minimum
    # wins and the nonzero differences come back sorted.
    assert sparsity_distance((4, 9, 0), (3, 5, 5)) == (8, 1, (-3, -1, 4))


def test_effective_sparsity_allows_repeated_pair_flip():
    # (3,5,5) -> +2 at symbol 0, -2 at symbol 1 -> (5,3,5), which is a
    # shift of (3,5,5): distance 4 with pattern {+2,-2} is tolerated.
    members = expand_support([tail_orbit(u) for u in
                              ((13, 0, 0), (4, 9, 0), (3, 5, 5))])
    ok, witness = is_effectively_sparse(members)
    assert ok and witness is None


def test_effective_sparsity_rejects_single_flip():
    # (2,3,3,3,3,3,3) is two flips of its own shift at distance 2.
    members = expand_support([tail_orbit(u) for u in
                              ((20, 0, 0, 0, 0, 0, 0),
                               (6, 14, 0, 0, 0, 0, 0),
                               (2, 3, 3, 3, 3, 3, 3))])
    ok, witness = is_effectively_sparse(members)
    assert not ok
    assert witness.distance == 2
    assert witness.u == (2, 3, 3, 3, 3, 3, 3)


def test_strict_sparsity_of_large_codes():
    for support in (((16, 0, 0, 0, 0), (6, 10, 0, 0, 0), (0, 4, 4, 4, 4)),
                    ((36,) + (0,) * 6, (8, 28) + (0,) * 5, (0,) + (6,) * 6)):
        members = expand_support([tail_orbit(u) for u in support])
        ok, _ = is_effectively_sparse(members)
        assert ok
        # strict: every distinct pair (including self against a shift)
        # sits at distance > 4
        d = len(support[0])
        for u in members:
            for v in members:
                for delta in range(d):
                    w = cyclic_shift(v, delta)
                    dist = sum(abs(a - b) for a, b in zip(u, w))
                    assert dist == 0 or dist > 4
