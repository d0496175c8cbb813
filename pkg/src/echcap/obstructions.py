"""Embedding obstructions assembled from capacity sequences.

Covers the ellipsoid-into-ball bound, the polydisk-into-ball bound evaluated
on the lower hull of its feasible set, ball packing inequalities, and the
classical sufficiency conditions for packing a ball.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterator, List, Optional, Sequence, Tuple

from .capacities import WEAK, capacities, dominates, nk_sequence
from .domains import Domain
from .values import CapacityValue, RationalLike, as_fraction


@dataclass(frozen=True)
class ObstructionVerdict:
    """Either no obstruction up to kmax, or a witness index with both values."""

    obstructed: bool
    kmax: int
    witness_k: Optional[int] = None
    lower: Optional[CapacityValue] = None
    upper: Optional[CapacityValue] = None


def embedding_obstruction(inner: Domain, outer: Domain, kmax: int,
                          mode: str = WEAK,
                          node_limit: Optional[int] = None) -> ObstructionVerdict:
    """Test the capacity inequalities for embedding inner into outer.

    Obstructed exactly when some c_k(inner) exceeds c_k(outer) (or fails
    strictness in interior_strict mode); the witness is the first such k.
    """
    if kmax < 1:
        raise ValueError("kmax must be >= 1")
    lower = capacities(inner, kmax, node_limit=node_limit)
    upper = capacities(outer, kmax, node_limit=node_limit)
    verdict = dominates(lower, upper, mode)
    if verdict.dominated:
        return ObstructionVerdict(False, kmax)
    return ObstructionVerdict(True, kmax, verdict.k, verdict.lower, verdict.upper)


def f_lower_bound(a: RationalLike, dmax: int) -> Fraction:
    """Lower bound for the ellipsoid-into-ball function at aspect ratio a.

    max over d = 1..dmax of (a,1)_{(d^2+3d+2)/2} / d; exact.
    """
    a = as_fraction(a)
    if a < 1:
        raise ValueError("aspect ratio a must be >= 1")
    if dmax < 1:
        raise ValueError("dmax must be >= 1")
    need = (dmax * dmax + 3 * dmax + 2) // 2
    seq = [v.as_fraction() for v in nk_sequence(a, 1, need)]
    best = Fraction(0)
    for d in range(1, dmax + 1):
        k = (d * d + 3 * d + 2) // 2
        best = max(best, seq[k - 1] / d)
    return best


def f_lower_bound_all_k(a: RationalLike, kmax: int) -> Fraction:
    """Cross-check form of f_lower_bound: sup over k = 2..kmax of the ratio
    (a,1)_k / (1,1)_k.  Agrees with the d-indexed form at matching ranges."""
    a = as_fraction(a)
    if kmax < 2:
        raise ValueError("kmax must be >= 2")
    top = [v.as_fraction() for v in nk_sequence(a, 1, kmax)]
    bot = [v.as_fraction() for v in nk_sequence(1, 1, kmax)]
    return max(top[k - 1] / bot[k - 1] for k in range(2, kmax + 1))


def lambda_d_path(d: int) -> List[Tuple[int, int]]:
    """Lattice points of the staircase of {(m, n) : (m+1)(n+1) >= (d+1)(d+2)/2}
    that lie on its lower-left convex hull, ordered by increasing m.

    Collinear points on a hull edge are kept: they are listed as vertices of
    the path, and keeping them cannot change a linear minimization.
    """
    if d < 1:
        raise ValueError("d must be >= 1")
    need = (d + 1) * (d + 2) // 2
    staircase = []
    for m in range(need):
        n = -(-need // (m + 1)) - 1
        staircase.append((m, n))
    hull: List[Tuple[int, int]] = []
    for p in staircase:
        # pop strictly concave middle points; collinear ones stay
        while len(hull) >= 2:
            (ax, ay), (bx, by) = hull[-2], hull[-1]
            if (bx - ax) * (p[1] - by) - (by - ay) * (p[0] - bx) < 0:
                hull.pop()
            else:
                break
        hull.append(p)
    return hull


def g_d(a: RationalLike, d: int) -> Fraction:
    """min{(a*m + n)/d : (m+1)(n+1) >= (d+1)(d+2)/2}, by scanning the hull.

    The minimum of a linear objective over the feasible set is attained at a
    hull vertex; scanning all of them also covers the case where a matches an
    edge slope and two vertices tie.
    """
    a = as_fraction(a)
    if a < 1:
        raise ValueError("aspect ratio a must be >= 1")
    return min((a * m + n) / d for m, n in lambda_d_path(d))


def g_lower_bound(a: RationalLike, dmax: int) -> Fraction:
    """Lower bound for the polydisk-into-ball function: max of g_d, d <= dmax."""
    if dmax < 1:
        raise ValueError("dmax must be >= 1")
    a = as_fraction(a)
    return max(g_d(a, d) for d in range(1, dmax + 1))


@dataclass(frozen=True)
class PackingInequality:
    """One inequality sum(d_i * a_i) < d from the ball packing obstruction."""

    multipliers: Tuple[int, ...]
    bound: int
    lhs: Fraction
    satisfied: bool


@dataclass(frozen=True)
class PackingReport:
    inequalities: Tuple[PackingInequality, ...]
    all_hold: bool


def _multiplier_tuples(n: int, budget: int) -> Iterator[Tuple[int, ...]]:
    """All tuples (d_1..d_n) of nonnegative ints with sum(d_i^2 + d_i) <= budget."""
    def rec(prefix: List[int], remaining: int, slots: int):
        if slots == 0:
            yield tuple(prefix)
            return
        d = 0
        while d * d + d <= remaining:
            prefix.append(d)
            yield from rec(prefix, remaining - d * d - d, slots - 1)
            prefix.pop()
            d += 1
    yield from rec([], budget, n)


def packing_obstructions(a_list: Sequence[RationalLike],
                         dmax: int) -> PackingReport:
    """Evaluate every packing inequality with bound d <= dmax.

    Tuples range over nonnegative multipliers with sum(d_i^2 + d_i) <= d^2+3d,
    not all zero.  all_hold means no obstruction was found.
    """
    sizes = [as_fraction(a) for a in a_list]
    if not sizes or any(a <= 0 for a in sizes):
        raise ValueError("need a nonempty list of positive sizes")
    if dmax < 1:
        raise ValueError("dmax must be >= 1")
    inequalities = []
    all_hold = True
    for d in range(1, dmax + 1):
        budget = d * d + 3 * d
        for mult in _multiplier_tuples(len(sizes), budget):
            lhs = sum((m * a for m, a in zip(mult, sizes)), Fraction(0))
            ok = lhs < d
            all_hold = all_hold and ok
            inequalities.append(PackingInequality(mult, d, lhs, ok))
    return PackingReport(tuple(inequalities), all_hold)


@dataclass(frozen=True)
class BiranVerdict:
    """sufficient | fails_volume | fails_inequality (with the failing tuple)."""

    status: str
    multipliers: Optional[Tuple[int, ...]] = None
    bound: Optional[int] = None

    @property
    def sufficient(self) -> bool:
        return self.status == "sufficient"


def _biran_tuples(n: int, total: int, square_total: int) -> Iterator[Tuple[int, ...]]:
    """Nonnegative tuples with sum = total and sum of squares = square_total."""
    def rec(prefix: List[int], rem: int, rem_sq: int, slots: int):
        if slots == 0:
            if rem == 0 and rem_sq == 0:
                yield tuple(prefix)
            return
        # each unit of sum costs at least one unit of square
        if rem > rem_sq or rem * rem > rem_sq * slots:
            return
        top = min(rem, math.isqrt(rem_sq))
        for d in range(top, -1, -1):
            prefix.append(d)
            yield from rec(prefix, rem - d, rem_sq - d * d, slots - 1)
            prefix.pop()
    yield from rec([], total, square_total, n)


def biran_sufficiency(a_list: Sequence[RationalLike], dmax: int) -> BiranVerdict:
    """Sufficiency test for packing balls of sizes a_i into the unit ball:
    the volume constraint plus the inequality family indexed by tuples with
    sum d_i = 3d - 1 and sum d_i^2 = d^2 + 1, checked for d <= dmax."""
    sizes = [as_fraction(a) for a in a_list]
    if not sizes or any(a <= 0 for a in sizes):
        raise ValueError("need a nonempty list of positive sizes")
    if dmax < 1:
        raise ValueError("dmax must be >= 1")
    if sum(a * a for a in sizes) > 1:
        return BiranVerdict("fails_volume")
    for d in range(1, dmax + 1):
        for mult in _biran_tuples(len(sizes), 3 * d - 1, d * d + 1):
            lhs = sum((m * a for m, a in zip(mult, sizes)), Fraction(0))
            if lhs > d:
                return BiranVerdict("fails_inequality", mult, d)
    return BiranVerdict("sufficient")
