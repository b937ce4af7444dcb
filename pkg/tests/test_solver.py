import itertools
from fractions import Fraction

import pytest

from quditcodes.arith import InvalidInputError, RadicalSum
from quditcodes.codes import validate
from quditcodes.combinatorics import (expand_orbit, is_effectively_sparse,
                                      iter_support_representatives)
from quditcodes.solver import (build_qf_system, family_code, family_support,
                               passes_prefilter, search, solve_system)

QUTRIT_SUPPORT = ((13, 0, 0), (4, 9, 0), (3, 5, 5))


def proportional(row, reference):
    pairs = [(a, b) for a, b in zip(row, reference) if a or b]
    if any(a == 0 or b == 0 for a, b in pairs):
        return False
    scale = Fraction(pairs[0][0], pairs[0][1])
    return all(Fraction(a, b) == scale for a, b in pairs)


# ---------------------------------------------------------------------------
# system construction


def test_qutrit_system_rows():
    system = build_qf_system(3, 13, QUTRIT_SUPPORT)
    references = ((13, -1, -2), (169, -121, 4), (13, 71, -22))
    for row, reference in zip(system.rows, references):
        assert proportional(row, reference), (row, reference)
    assert system.normalization == (1, 2, 1)


def test_rows_invariant_under_support_reordering():
    base = build_qf_system(3, 13, QUTRIT_SUPPORT)
    for perm in itertools.permutations(range(3)):
        support = [QUTRIT_SUPPORT[i] for i in perm]
        system = build_qf_system(3, 13, support)
        for row, reference in zip(system.rows, base.rows):
            assert tuple(row[perm.index(i)] for i in range(3)) == reference


def test_system_rejects_non_sparse_support():
    with pytest.raises(InvalidInputError, match="sparse"):
        build_qf_system(7, 20, ((20, 0, 0, 0, 0, 0, 0),
                                (2, 3, 3, 3, 3, 3, 3)))


def test_system_to_json():
    system = build_qf_system(3, 13, QUTRIT_SUPPORT)
    payload = system.to_json()
    assert payload["d"] == 3 and payload["N"] == 13
    assert payload["normalization"] == [1, 2, 1]
    assert len(payload["rows"]) == 3


# ---------------------------------------------------------------------------
# solving


def test_qutrit_solution_is_unique_and_exact():
    system = build_qf_system(3, 13, QUTRIT_SUPPORT)
    solutions = solve_system(system)
    assert len(solutions) == 1
    solution = solutions[0]
    assert solution.xi == (Fraction(41, 405), Fraction(13, 81),
                           Fraction(26, 45))
    # normalization row (1,2,1) dotted with xi sums to one
    assert sum(s * x for s, x in zip((1, 2, 1), solution.xi)) == 1
    amplitudes = {o.representative: o.amplitude
                  for o in solution.code.orbits}
    assert amplitudes[(13, 0, 0)] == RadicalSum.sqrt(Fraction(41, 5),
                                                     Fraction(1, 9))
    assert amplitudes[(4, 9, 0)] == RadicalSum.sqrt(Fraction(1, 55),
                                                    Fraction(1, 9))
    assert amplitudes[(3, 5, 5)] == RadicalSum.sqrt(Fraction(1, 385),
                                                    Fraction(1, 18))
    assert validate(solution.code).passed


def test_solution_residuals_vanish():
    system = build_qf_system(3, 13, QUTRIT_SUPPORT)
    xi = solve_system(system)[0].xi
    for row in system.rows:
        assert sum(c * x for c, x in zip(row, xi)) == 0


def test_infeasible_support_yields_no_solutions():
    # Both members of this support see the same sign of the shifted phase
    # difference, so the first form admits no positive solution.
    system = build_qf_system(3, 13, ((13, 0, 0), (10, 3, 0)))
    assert solve_system(system) == []


def test_solver_drops_zero_coordinates():
    # With four orbits the cone is spanned by rays supported on subsets;
    # solutions must never carry zero amplitudes.
    reps = list(iter_support_representatives(3, 13))
    for subset in itertools.combinations(reps, 4):
        members = [m for rep in subset for m in expand_orbit(rep)]
        if not is_effectively_sparse(members)[0]:
            continue
        system = build_qf_system(3, 13, subset)
        for solution in solve_system(system):
            assert all(x >= 0 for x in solution.xi)
            assert all(not o.amplitude.is_zero()
                       for o in solution.code.orbits)
            assert len(solution.code.orbits) == sum(1 for x in solution.xi
                                                    if x)
        break


# ---------------------------------------------------------------------------
# prefilter soundness


def test_prefilter_never_excludes_a_solvable_support():
    reps = list(iter_support_representatives(3, 13))
    for subset in itertools.combinations(reps, 3):
        members = [m for rep in subset for m in expand_orbit(rep)]
        if not is_effectively_sparse(members)[0]:
            continue
        if passes_prefilter(subset):
            continue
        system = build_qf_system(3, 13, subset)
        assert solve_system(system) == [], subset


# ---------------------------------------------------------------------------
# the three-orbit family


def test_family_support_shape():
    a, b, c = family_support(5)
    assert a == (16, 0, 0, 0, 0)
    assert b == (6, 10, 0, 0, 0)
    assert c == (0, 4, 4, 4, 4)
    with pytest.raises(InvalidInputError):
        family_support(3)
    with pytest.raises(InvalidInputError):
        family_support(6)


def test_family_d5_matches_shipped_code(corpus):
    code, note = family_code(5)
    shipped = corpus["c2_d5_n16"]
    assert code.support_representatives() == shipped.support_representatives()
    for ours, theirs in zip(code.orbits, shipped.orbits):
        assert ours.amplitude == theirs.amplitude
    assert note.solved_alpha_sq == (Fraction(1, 125), Fraction(2, 125125),
                                    Fraction(1, 131381250))


def test_family_d7_matches_shipped_code(corpus):
    code, note = family_code(7)
    shipped = corpus["c3_d7_n36"]
    assert code.support_representatives() == shipped.support_representatives()
    for ours, theirs in zip(code.orbits, shipped.orbits):
        assert ours.amplitude == theirs.amplitude
    assert note.solved_alpha_sq[0] == Fraction(13, 343)


def test_family_discrepancy_note():
    # The closed forms reproduce the first two solved amplitudes but not
    # the third, at every d; the note must report the mismatch as data.
    for d in (5, 7, 9):
        _, note = family_code(d)
        assert note.agreement == (True, True, False)
        payload = note.to_json()
        assert payload["agreement"] == [True, True, False]
        assert payload["d"] == d


# ---------------------------------------------------------------------------
# search


def test_search_rejects_bad_arguments():
    with pytest.raises(InvalidInputError):
        search(3, 12, 3)
    with pytest.raises(InvalidInputError):
        search(3, 13, 1)
    with pytest.raises(InvalidInputError):
        search(9, 21, 3)


def test_search_d5_finds_published_support():
    result = search(5, 16, 3)
    assert result.exhausted
    supports = [c.support_representatives() for c in result.codes]
    assert ((0, 4, 4, 4, 4), (6, 10, 0, 0, 0), (16, 0, 0, 0, 0)) in supports
    for code in result.codes:
        assert validate(code).passed


def test_search_d3_finds_only_fully_verified_codes():
    result = search(3, 13, 3)
    assert result.exhausted
    supports = {c.support_representatives() for c in result.codes}
    assert supports == {
        ((1, 6, 6), (4, 9, 0), (7, 3, 3)),
        ((1, 6, 6), (4, 9, 0), (11, 1, 1)),
        ((1, 6, 6), (4, 9, 0), (13, 0, 0)),
    }
    # The (3,5,5)-supported code solves the quadratic forms but fails the
    # full check, so it must not be reported.
    assert tuple(sorted(QUTRIT_SUPPORT)) not in supports


def test_search_respects_candidate_cap():
    result = search(3, 13, 3, max_candidates=2,
                    verify=lambda code: False)
    assert result.candidates_tried == 2
    assert not result.exhausted
    assert result.codes == []


def test_search_with_custom_verifier():
    result = search(3, 13, 3, verify=lambda code: True)
    supports = {c.support_representatives() for c in result.codes}
    assert tuple(sorted(QUTRIT_SUPPORT)) in supports
