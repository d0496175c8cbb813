import random
from fractions import Fraction

import pytest

from echcap import (Ball, Ellipsoid, INTERIOR_STRICT, Polydisk, WEAK,
                    ball_capacities, disjoint_union_capacities)
from echcap.obstructions import (biran_sufficiency, embedding_obstruction,
                                 f_lower_bound, f_lower_bound_all_k, g_d,
                                 g_lower_bound, lambda_d_path,
                                 packing_obstructions)

F = Fraction


# -- embedding obstructions ----------------------------------------------------

def test_equal_sequences_give_no_weak_obstruction():
    verdict = embedding_obstruction(Ellipsoid(1, 2), Polydisk(1, 1), 50, WEAK)
    assert not verdict.obstructed


def test_ball_into_itself_strictly_obstructed():
    verdict = embedding_obstruction(Ball(1), Ball(1), 10, INTERIOR_STRICT)
    assert verdict.obstructed
    assert verdict.witness_k == 1
    assert verdict.lower.as_fraction() == 1


def test_ellipsoid_into_small_ball_obstructed():
    verdict = embedding_obstruction(Ellipsoid(2, 1), Ball(F(3, 2)), 20, WEAK)
    assert verdict.obstructed
    assert verdict.witness_k == 2
    assert verdict.lower.as_fraction() == 2
    assert verdict.upper.as_fraction() == F(3, 2)


# -- ellipsoid-into-ball bound -------------------------------------------------

def test_f_lower_bound_known_values():
    assert f_lower_bound(2, 10) == 2
    assert f_lower_bound(5, 10) == F(5, 2)
    assert f_lower_bound(1, 10) == 1


def test_f_lower_bound_monotone():
    values_in_d = [f_lower_bound(F(7, 2), d) for d in range(1, 12)]
    assert all(x <= y for x, y in zip(values_in_d, values_in_d[1:]))
    grid = [F(1) + F(i, 4) for i in range(12)]
    values_in_a = [f_lower_bound(a, 8) for a in grid]
    assert all(v >= 1 for v in values_in_a)
    assert all(x <= y for x, y in zip(values_in_a, values_in_a[1:]))


def test_f_lower_bound_matches_all_k_form():
    for a in [F(2), F(5), F(7, 2), F(13, 4)]:
        for dmax in (2, 4, 6):
            kmax = (dmax * dmax + 3 * dmax + 2) // 2
            assert f_lower_bound(a, dmax) == f_lower_bound_all_k(a, kmax)


# -- polydisk-into-ball bound --------------------------------------------------

def test_lambda_d_path_known_vertices():
    assert lambda_d_path(1) == [(0, 2), (1, 1), (2, 0)]
    assert lambda_d_path(2) == [(0, 5), (1, 2), (2, 1), (5, 0)]
    assert lambda_d_path(6) == [(0, 27), (1, 13), (2, 9), (3, 6), (4, 5),
                                (5, 4), (6, 3), (9, 2), (13, 1), (27, 0)]


def test_g_d_against_feasible_set_scan():
    def brute(a, d):
        need = (d + 1) * (d + 2) // 2
        best = None
        for m in range(3 * d * d + 1):
            n = -(-need // (m + 1)) - 1
            cand = (a * m + n) / d
            if best is None or cand < best:
                best = cand
        return best

    grid = [F(1), F(3, 2), F(2), F(7, 3), F(19, 5)]
    for d in range(1, 13):
        for a in grid:
            assert g_d(a, d) == brute(a, d)


def test_g_known_pieces():
    assert all(g_d(a, 1) == 2 for a in [F(1), F(2), F(10)])
    assert g_d(F(5, 2), 6) == (3 * F(5, 2) + 6) / 6
    assert g_d(F(7, 2), 6) == (2 * F(7, 2) + 9) / 6


def ga_expected(a):
    if a <= 2:
        return F(2)
    if a <= 3:
        return 1 + a / 2
    return F(3, 2) + a / 3


def test_g_lower_bound_piecewise():
    for i in range(31):
        a = 1 + 3 * F(i, 30)  # spans [1, 4]
        assert g_lower_bound(a, 6) == ga_expected(a)


def test_g_lower_bound_examples():
    assert g_lower_bound(2, 6) == 2
    assert g_lower_bound(F(7, 2), 6) == F(8, 3)


def test_g_at_d48_just_above_four():
    for a in [F(41, 10), F(29, 7), F(83, 20)]:
        assert g_d(a, 48) == F(19, 12) + 5 * a / 16


# -- ball packing --------------------------------------------------------------

def test_packing_tuple_constraints_respected():
    report = packing_obstructions([F(1, 2), F(1, 2)], 3)
    for ineq in report.inequalities:
        total = sum(d * d + d for d in ineq.multipliers)
        assert total <= ineq.bound ** 2 + 3 * ineq.bound


def test_packing_two_equal_balls_binding_inequality():
    for a, expect_hold in [(F(1, 4), True), (F(49, 100), True),
                           (F(1, 2), False), (F(3, 5), False), (F(1), False)]:
        report = packing_obstructions([a, a], 4)
        assert report.all_hold is expect_hold
        binding = [q for q in report.inequalities
                   if q.multipliers == (1, 1) and q.bound == 1]
        assert len(binding) == 1
        assert binding[0].satisfied == (2 * a < 1)


def test_single_unit_ball_is_obstructed():
    report = packing_obstructions([F(1)], 2)
    violated = [q for q in report.inequalities if not q.satisfied]
    assert any(q.multipliers == (1,) and q.bound == 1 for q in violated)


def test_quarter_ball_unobstructed():
    assert packing_obstructions([F(1, 4)], 6).all_hold


def test_packing_proof_chain():
    sizes = [F(1), F(1, 2)]
    report = packing_obstructions(sizes, 8)
    kmax = max(sum(d * d + d for d in q.multipliers) // 2
               for q in report.inequalities)
    union = disjoint_union_capacities(
        [ball_capacities(a, kmax) for a in sizes], kmax)
    for q in report.inequalities:
        k = sum(d * d + d for d in q.multipliers) // 2
        assert q.lhs <= union[k].as_fraction()


def test_volume_constraint_emerges_from_packing():
    rng = random.Random(23)
    checked = 0
    for _ in range(80):
        a1 = F(rng.randint(1, 99), 100)
        a2 = F(rng.randint(1, 99), 100)
        if packing_obstructions([a1, a2], 30).all_hold:
            checked += 1
            assert a1 * a1 + a2 * a2 <= F(102, 100)
    assert checked >= 5


# -- sufficiency conditions ----------------------------------------------------

def test_biran_volume_failure():
    assert biran_sufficiency([1, 1], 5).status == "fails_volume"


def test_biran_two_half_balls_sufficient():
    verdict = biran_sufficiency([F(1, 2), F(1, 2)], 10)
    assert verdict.sufficient


def test_biran_three_quarters_sufficient():
    assert biran_sufficiency([F(3, 4)], 10).sufficient


def test_biran_inequality_failure():
    verdict = biran_sufficiency([F(4, 5), F(11, 20)], 10)
    assert verdict.status == "fails_inequality"
    assert verdict.bound == 1
    assert sorted(verdict.multipliers) == [1, 1]


def test_biran_rejects_bad_input():
    with pytest.raises(ValueError):
        biran_sufficiency([], 3)
    with pytest.raises(ValueError):
        biran_sufficiency([F(0)], 3)
