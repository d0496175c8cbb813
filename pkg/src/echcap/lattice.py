"""Convex lattice polygons, planar norms, and length-minimizing enumeration.

Polygons are stored up to translation: the lexicographically smallest vertex
sits at the origin.  Degenerate polygons are allowed: a single point has no
edges, a segment is traversed as the edge pair {v, -v}.

The enumeration engine represents a convex polygon as a multiset of edge
vectors (primitive direction x multiplicity) that is sorted by angle and sums
to zero, and searches that space depth-first under a perimeter budget.  It is
complete: every canonical polygon whose perimeter fits the budget is visited
exactly once.
"""

from __future__ import annotations

import math
import os
from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property, cmp_to_key
from math import gcd
from typing import Callable, Dict, List, Optional, Sequence, Tuple

from .errors import NotPrimitive, ToricEnumerationBudgetExceeded
from .values import CapacityValue, RationalLike, as_fraction

DEFAULT_NODE_LIMIT = 10_000_000

IntPoint = Tuple[int, int]


def resolve_node_limit(node_limit: Optional[int]) -> int:
    """Explicit argument wins, then ECHCAP_NODE_LIMIT, then the default."""
    if node_limit is not None:
        return int(node_limit)
    env = os.environ.get("ECHCAP_NODE_LIMIT")
    return int(env) if env else DEFAULT_NODE_LIMIT


# ---------------------------------------------------------------------------
# norms
# ---------------------------------------------------------------------------

def _pair(v) -> Tuple[Fraction, Fraction]:
    x, y = v
    return (as_fraction(x), as_fraction(y))


class Norm:
    """Symmetric positively homogeneous gauge on the plane."""

    def length(self, vector) -> CapacityValue:
        raise NotImplementedError

    def dual_eval(self, covector) -> CapacityValue:
        """Value of the dual norm on a covector."""
        raise NotImplementedError

    def dual_ball_area(self) -> CapacityValue:
        """Area of the dual-norm unit ball (the volume of the toric domain)."""
        raise NotImplementedError

    def scale(self, factor: RationalLike) -> "Norm":
        raise NotImplementedError

    # internal hooks for the enumeration engine
    def _float_length(self) -> Callable[[int, int], float]:
        raise NotImplementedError

    def _coordinate_extent(self) -> Tuple[float, float]:
        """max |x| and max |y| over the (primal) unit ball."""
        raise NotImplementedError


@dataclass(frozen=True)
class Euclidean(Norm):
    """The round norm.  Lengths are exact when sqrt(x^2+y^2) is an integer."""

    def length(self, vector) -> CapacityValue:
        x, y = _pair(vector)
        return CapacityValue.sqrt_rational(x * x + y * y)

    def dual_eval(self, covector) -> CapacityValue:
        return self.length(covector)

    def dual_ball_area(self) -> CapacityValue:
        return CapacityValue.approx(math.pi, 2.0 * math.ulp(math.pi))

    def scale(self, factor):
        raise ValueError("the Euclidean norm has no size parameter to scale")

    def _float_length(self):
        return math.hypot

    def _coordinate_extent(self):
        return (1.0, 1.0)


@dataclass(frozen=True)
class WeightedL1(Norm):
    """|(x, y)| = a|x|/2 + b|y|/2 with positive rational weights."""

    a: Fraction
    b: Fraction

    def __post_init__(self):
        object.__setattr__(self, "a", as_fraction(self.a))
        object.__setattr__(self, "b", as_fraction(self.b))
        if self.a <= 0 or self.b <= 0:
            raise ValueError("weighted L1 norm needs positive weights")

    def length(self, vector) -> CapacityValue:
        x, y = _pair(vector)
        return CapacityValue.exact(self.a * abs(x) / 2 + self.b * abs(y) / 2)

    def dual_eval(self, covector) -> CapacityValue:
        p, q = _pair(covector)
        return CapacityValue.exact(max(2 * abs(p) / self.a, 2 * abs(q) / self.b))

    def dual_ball_area(self) -> CapacityValue:
        # dual unit ball is the rectangle |p1| <= a/2, |p2| <= b/2
        return CapacityValue.exact(self.a * self.b)

    def scale(self, factor):
        c = as_fraction(factor)
        if c <= 0:
            raise ValueError("scale factor must be positive")
        return WeightedL1(self.a * c, self.b * c)

    def _float_length(self):
        fa, fb = float(self.a) / 2.0, float(self.b) / 2.0
        return lambda x, y: fa * abs(x) + fb * abs(y)

    def _coordinate_extent(self):
        return (2.0 / float(self.a), 2.0 / float(self.b))


@dataclass(frozen=True)
class Polygonal(Norm):
    """Gauge of a centrally symmetric convex polygon with rational vertices."""

    vertices: Tuple[Tuple[Fraction, Fraction], ...]

    def __post_init__(self):
        verts = [_pair(v) for v in self.vertices]
        if len(verts) < 4:
            raise ValueError("polygonal unit ball needs at least 4 vertices")
        verts.sort(key=lambda p: (math.atan2(p[1], p[0]), p[0] * p[0] + p[1] * p[1]))
        for (x, y) in verts:
            if x == 0 and y == 0:
                raise ValueError("origin cannot be a vertex of the unit ball")
        n = len(verts)
        for i in range(n):
            ax, ay = verts[i]
            bx, by = verts[(i + 1) % n]
            cx, cy = verts[(i + 2) % n]
            if (bx - ax) * (cy - by) - (by - ay) * (cx - bx) <= 0:
                raise ValueError("unit ball vertices must be in strictly convex position")
            if ax * by - ay * bx <= 0:
                raise ValueError("unit ball must contain the origin in its interior")
        if set(verts) != {(-x, -y) for (x, y) in verts}:
            raise ValueError("unit ball must be centrally symmetric")
        object.__setattr__(self, "vertices", tuple(verts))

    @cached_property
    def polar(self) -> Tuple[Tuple[Fraction, Fraction], ...]:
        """Vertices of the polar dual (one per edge of the unit ball)."""
        out = []
        n = len(self.vertices)
        for i in range(n):
            ax, ay = self.vertices[i]
            bx, by = self.vertices[(i + 1) % n]
            d = ax * by - ay * bx
            out.append(((by - ay) / d, (ax - bx) / d))
        return tuple(out)

    def length(self, vector) -> CapacityValue:
        x, y = _pair(vector)
        return CapacityValue.exact(max(ux * x + uy * y for ux, uy in self.polar))

    def dual_eval(self, covector) -> CapacityValue:
        p, q = _pair(covector)
        return CapacityValue.exact(max(p * vx + q * vy for vx, vy in self.vertices))

    def dual_ball_area(self) -> CapacityValue:
        return CapacityValue.exact(_shoelace2(self.polar) / 2)

    def scale(self, factor):
        c = as_fraction(factor)
        if c <= 0:
            raise ValueError("scale factor must be positive")
        return Polygonal(tuple((x / c, y / c) for x, y in self.vertices))

    def _float_length(self):
        polar = tuple((float(ux), float(uy)) for ux, uy in self.polar)
        def flen(x, y):
            return max(ux * x + uy * y for ux, uy in polar)
        return flen

    def _coordinate_extent(self):
        return (max(abs(float(x)) for x, _ in self.vertices),
                max(abs(float(y)) for _, y in self.vertices))


EUCLIDEAN = Euclidean()


def _shoelace2(verts: Sequence[Tuple[Fraction, Fraction]]) -> Fraction:
    total = Fraction(0)
    n = len(verts)
    for i in range(n):
        ax, ay = verts[i]
        bx, by = verts[(i + 1) % n]
        total += ax * by - ay * bx
    return total


# ---------------------------------------------------------------------------
# lattice polygons
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class LatticePolygon:
    """Possibly degenerate convex lattice polygon, canonical under translation.

    vertices are counterclockwise, integer, and start at the lexicographically
    smallest vertex which is the origin.  Use from_vertices() for arbitrary
    input; the bare constructor trusts its argument.
    """

    vertices: Tuple[IntPoint, ...]

    @staticmethod
    def point() -> "LatticePolygon":
        return LatticePolygon(((0, 0),))

    @classmethod
    def from_vertices(cls, points: Sequence[Sequence[int]]) -> "LatticePolygon":
        verts = [(int(x), int(y)) for x, y in points]
        if not verts:
            raise ValueError("a polygon needs at least one vertex")
        if len(verts) == 1:
            return cls(_canonical(verts))
        if len(verts) == 2:
            if verts[0] == verts[1]:
                raise ValueError("segment endpoints must be distinct")
            return cls(_canonical(verts))
        n = len(verts)
        for i in range(n):
            ax, ay = verts[i]
            bx, by = verts[(i + 1) % n]
            cx, cy = verts[(i + 2) % n]
            turn = (bx - ax) * (cy - by) - (by - ay) * (cx - bx)
            if turn <= 0:
                raise ValueError(
                    "vertices must be strictly convex and counterclockwise "
                    f"(violated at {verts[(i + 1) % n]})"
                )
        return cls(_canonical(verts))

    @property
    def kind(self) -> str:
        n = len(self.vertices)
        return "point" if n == 1 else "segment" if n == 2 else "proper"

    @cached_property
    def edges(self) -> Tuple[IntPoint, ...]:
        verts = self.vertices
        if len(verts) == 1:
            return ()
        if len(verts) == 2:
            (ax, ay), (bx, by) = verts
            return ((bx - ax, by - ay), (ax - bx, ay - by))
        out = []
        n = len(verts)
        for i in range(n):
            ax, ay = verts[i]
            bx, by = verts[(i + 1) % n]
            out.append((bx - ax, by - ay))
        return tuple(out)

    @cached_property
    def area2(self) -> int:
        """Twice the enclosed area (0 for degenerate polygons)."""
        verts = self.vertices
        if len(verts) < 3:
            return 0
        total = 0
        n = len(verts)
        for i in range(n):
            ax, ay = verts[i]
            bx, by = verts[(i + 1) % n]
            total += ax * by - ay * bx
        return total

    @cached_property
    def boundary_count(self) -> int:
        """Number of lattice points on the boundary."""
        if self.kind == "point":
            return 1
        if self.kind == "segment":
            (ax, ay), (bx, by) = self.vertices
            return gcd(abs(bx - ax), abs(by - ay)) + 1
        return sum(gcd(abs(dx), abs(dy)) for dx, dy in self.edges)

    @cached_property
    def lattice_point_count(self) -> int:
        """Lattice points in the closed region, by Pick's theorem."""
        if self.kind in ("point", "segment"):
            return self.boundary_count
        b = self.boundary_count
        assert (self.area2 + b) % 2 == 0
        return (self.area2 + b) // 2 + 1


def _canonical(verts: Sequence[IntPoint]) -> Tuple[IntPoint, ...]:
    i = min(range(len(verts)), key=lambda j: verts[j])
    ox, oy = verts[i]
    rotated = verts[i:] + list(verts[:i])
    return tuple((x - ox, y - oy) for x, y in rotated)


def lattice_point_count(polygon: LatticePolygon) -> int:
    return polygon.lattice_point_count


def area(polygon: LatticePolygon) -> Fraction:
    return Fraction(polygon.area2, 2)


def perimeter(polygon: LatticePolygon, norm: Norm) -> CapacityValue:
    total = CapacityValue.exact(0)
    for edge in polygon.edges:
        total = total + norm.length(edge)
    return total


def dual_norm_eval(norm: Norm, covector) -> CapacityValue:
    return norm.dual_eval(covector)


# ---------------------------------------------------------------------------
# labeled generators (combinatorial model of the torus boundary generators)
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class LabeledGenerator:
    """A lattice polygon with an 'e' or 'h' label on each edge."""

    polygon: LatticePolygon
    labels: Tuple[str, ...]

    def __post_init__(self):
        labels = tuple(self.labels)
        object.__setattr__(self, "labels", labels)
        if len(labels) != len(self.polygon.edges):
            raise ValueError(
                f"need {len(self.polygon.edges)} labels, got {len(labels)}"
            )
        if any(label not in ("e", "h") for label in labels):
            raise ValueError("labels must be 'e' or 'h'")


def generator_grading(gen: LabeledGenerator) -> int:
    """2 * (enclosed lattice points - 1) - (number of 'h' labels)."""
    return 2 * (gen.polygon.lattice_point_count - 1) - gen.labels.count("h")


def generator_action(gen: LabeledGenerator, norm: Norm) -> CapacityValue:
    # labels carry no action weight
    return perimeter(gen.polygon, norm)


def reeb_orbit_data(norm: Norm, m: int, n: int):
    """Direction (cos t, sin t) and action of the primitive orbit class (m, n)."""
    m, n = int(m), int(n)
    if gcd(abs(m), abs(n)) != 1:
        raise NotPrimitive(f"({m}, {n}) is not primitive")
    r = math.hypot(m, n)
    return (m / r, n / r), norm.length((m, n))


# ---------------------------------------------------------------------------
# enumeration engine
# ---------------------------------------------------------------------------

def _coerce_budget(budget) -> Tuple[float, Optional[Fraction]]:
    """Accept CapacityValue, Fraction, int, or float budgets."""
    if isinstance(budget, CapacityValue):
        if budget.is_infinite:
            raise ValueError("length budget must be finite")
        return budget.value, budget.frac
    if isinstance(budget, float):
        if not math.isfinite(budget):
            raise ValueError("length budget must be finite")
        return budget, None
    f = as_fraction(budget)
    return float(f), f


def _upper_directions(norm: Norm, limit: float):
    """Primitive vectors in the upper half-plane (y > 0, or y == 0 and x > 0)
    with norm <= limit, sorted by angle from (1, 0)."""
    wx, wy = norm._coordinate_extent()
    bx = int(limit * wx + 1e-9)
    by = int(limit * wy + 1e-9)
    flen = norm._float_length()
    dirs = [(x, 0) for x in (1,) if flen(1, 0) <= limit]
    for y in range(1, by + 1):
        for x in range(-bx, bx + 1):
            if gcd(abs(x), y) == 1 and flen(x, y) <= limit:
                dirs.append((x, y))

    def angle_cmp(a, b):
        cross = a[0] * b[1] - a[1] * b[0]
        return -1 if cross > 0 else (1 if cross < 0 else 0)

    dirs.sort(key=cmp_to_key(angle_cmp))
    return dirs


class _Chain:
    """A convex chain of upper half-plane edges, recorded during the search.

    weight = (twice the area between the chain and the chords to the origin)
    plus (number of boundary lattice steps); pairing two chains of equal
    displacement d yields the closed polygon whose lattice point count is
    (weight1 + weight2) / 2 + 1.
    """

    __slots__ = ("picks", "length_f", "weight", "nedges", "_exact")

    def __init__(self, picks, length_f, weight):
        self.picks = picks          # tuple of (px, py, mult), increasing angle
        self.length_f = length_f
        self.weight = weight
        self.nedges = len(picks)    # distinct edge directions contributed
        self._exact = None


class _LengthContext:
    """Per-direction length cache plus per-chain exact length memo."""

    def __init__(self, norm: Norm):
        self.norm = norm
        self.unit: Dict[IntPoint, CapacityValue] = {}

    def chain_length(self, chain: _Chain) -> CapacityValue:
        if chain._exact is None:
            unit = self.unit
            total = CapacityValue.exact(0)
            for px, py, c in chain.picks:
                cv = unit.get((px, py))
                if cv is None:
                    cv = unit[(px, py)] = self.norm.length((px, py))
                total = total + cv.scaled(c)
            chain._exact = total
        return chain._exact


def _enumerate_chains(norm: Norm, budget_f: float, max_count: Optional[int],
                      node_limit: Optional[int], emit) -> None:
    """Emit every nonempty upper-half convex chain with length + |displacement|
    within the budget.  emit(dx, dy, chain) is called once per chain.

    Any closed polygon of perimeter <= budget splits uniquely into such a
    chain and the negation of another one with the same displacement, so this
    search is the complete half of the polygon search space.
    """
    limit = resolve_node_limit(node_limit)
    slack = 1e-9 * max(1.0, budget_f)
    limit_f = budget_f + slack
    # an edge vector e of a closed polygon satisfies 2|e| <= perimeter
    dirs = _upper_directions(norm, limit_f / 2.0)
    if not dirs:
        return
    ndirs = len(dirs)
    flen = norm._float_length()
    dir_flen = [flen(x, y) for x, y in dirs]
    nodes = 0
    picks: List[Tuple[int, int, int]] = []
    # a chain with weight w pairs to a polygon of count >= (w + 1)/2 + 1
    weight_cap = None if max_count is None else 2 * max_count - 3

    def rec(start: int, sx: int, sy: int, two_area: int,
            length: float, total_mult: int) -> None:
        nonlocal nodes
        for j in range(start, ndirs):
            px, py = dirs[j]
            fl = dir_flen[j]
            c = 0
            csx, csy, c2a, clen, cmult = sx, sy, two_area, length, total_mult
            appended = False
            while True:
                nodes += 1
                if nodes > limit:
                    raise ToricEnumerationBudgetExceeded(
                        f"polygon search exceeded {limit} nodes"
                    )
                c2a += csx * py - csy * px
                csx += px
                csy += py
                clen += fl
                cmult += 1
                c += 1
                if weight_cap is not None and c2a + cmult > weight_cap:
                    break
                if clen + flen(csx, csy) > limit_f:
                    break
                if appended:
                    picks[-1] = (px, py, c)
                else:
                    picks.append((px, py, c))
                    appended = True
                emit(csx, csy, _Chain(tuple(picks), clen, c2a + cmult))
                rec(j + 1, csx, csy, c2a, clen, cmult)
            if appended:
                picks.pop()

    rec(0, 0, 0, 0, 0.0, 0)


def _polygon_from_pair(upper: _Chain, lower: _Chain) -> LatticePolygon:
    """Close an upper chain against the negation of another with the same
    displacement.  Both edge blocks are already in increasing angular order."""
    verts = []
    x = y = 0
    for px, py, c in upper.picks:
        verts.append((x, y))
        x += px * c
        y += py * c
    for px, py, c in lower.picks:
        verts.append((x, y))
        x -= px * c
        y -= py * c
    assert (x, y) == (0, 0)
    return LatticePolygon(_canonical(verts))


def _pair_perimeter(upper: _Chain, lower: _Chain,
                    ctx: _LengthContext) -> CapacityValue:
    return ctx.chain_length(upper) + ctx.chain_length(lower)


def enumerate_polygons(target_count: int, norm: Norm, length_budget,
                       node_limit: Optional[int] = None) -> List[LatticePolygon]:
    """All canonical convex lattice polygons enclosing exactly target_count
    lattice points with perimeter <= length_budget, sorted canonically.

    Points and segments are included.  The enumeration is complete and
    duplicate-free; it raises ToricEnumerationBudgetExceeded if the search
    needs more nodes than the configured limit.
    """
    if target_count < 1:
        raise ValueError("target_count must be >= 1")
    budget_f, budget_frac = _coerce_budget(length_budget)
    if budget_f < 0:
        raise ValueError("length budget must be >= 0")
    slack = 1e-9 * max(1.0, budget_f)

    def within_budget(perim: CapacityValue) -> bool:
        if budget_frac is not None and perim.is_exact:
            return perim.frac <= budget_frac
        return perim.value - perim.err <= budget_f + slack

    found: List[LatticePolygon] = []
    if target_count == 1:
        found.append(LatticePolygon.point())

    # chains grouped by displacement, then by weight
    by_disp: Dict[IntPoint, Dict[int, List[_Chain]]] = {}

    def emit(dx, dy, chain):
        by_disp.setdefault((dx, dy), {}).setdefault(chain.weight, []).append(chain)

    _enumerate_chains(norm, budget_f, target_count, node_limit, emit)

    ctx = _LengthContext(norm)
    want = 2 * (target_count - 1)
    for disp, by_weight in by_disp.items():
        for w1, chains1 in by_weight.items():
            chains2 = by_weight.get(want - w1)
            if not chains2:
                continue
            for c1 in chains1:
                for c2 in chains2:
                    if c1.length_f + c2.length_f > budget_f + slack:
                        continue
                    perim = _pair_perimeter(c1, c2, ctx)
                    if within_budget(perim):
                        found.append(_polygon_from_pair(c1, c2))
    found.sort(key=lambda p: (len(p.vertices), p.vertices))
    return found


# -- bucketed minima, cached per norm -----------------------------------------

@dataclass
class _Candidate:
    value: CapacityValue
    witness: LatticePolygon
    tie: bool


class _CellTable:
    """Per displacement, per (weight, direction-count) minimum-length chains.

    Minima over polygon perimeters only ever need the cheapest chain of each
    cell, because perimeters add across the two chains of a pair.
    """

    def __init__(self, ctx: _LengthContext, eps: float):
        self.ctx = ctx
        self.eps = eps
        self.cells: Dict[IntPoint, Dict[Tuple[int, int], Tuple[_Chain, bool]]] = {}

    def offer(self, dx: int, dy: int, chain: _Chain) -> None:
        per_disp = self.cells.setdefault((dx, dy), {})
        key = (chain.weight, chain.nedges)
        cur = per_disp.get(key)
        if cur is None:
            per_disp[key] = (chain, False)
            return
        best, tie = cur
        if chain.length_f < best.length_f - self.eps:
            per_disp[key] = (chain, False)
        elif chain.length_f <= best.length_f + self.eps:
            a = self.ctx.chain_length(chain)
            b = self.ctx.chain_length(best)
            cmp = a.compare(b)
            if cmp < 0:
                per_disp[key] = (chain, False)
            elif cmp > 0:
                pass
            else:
                ambiguous = not a._is_definite_tie(b)
                if chain.picks < best.picks:
                    per_disp[key] = (chain, tie or ambiguous)
                else:
                    per_disp[key] = (best, tie or ambiguous)


class _Buckets:
    """count -> edge_count -> minimal candidate, assembled from chain pairs."""

    def __init__(self):
        self.by_count: Dict[int, Dict[int, _Candidate]] = {}

    def offer(self, poly: LatticePolygon, perim: CapacityValue, tie: bool):
        edges = len(poly.edges)
        count = poly.lattice_point_count
        per_edge = self.by_count.setdefault(count, {})
        cand = per_edge.get(edges)
        if cand is None:
            per_edge[edges] = _Candidate(perim, poly, tie)
            return
        c = perim.compare(cand.value)
        if c < 0:
            per_edge[edges] = _Candidate(perim, poly, tie)
        elif c == 0:
            ambiguous = tie or cand.tie or not perim._is_definite_tie(cand.value)
            if (len(poly.vertices), poly.vertices) < \
                    (len(cand.witness.vertices), cand.witness.vertices):
                per_edge[edges] = _Candidate(perim, poly, ambiguous)
            else:
                cand.tie = ambiguous


def _assemble_buckets(norm: Norm, budget_f: float, max_count: Optional[int],
                      node_limit: Optional[int]) -> _Buckets:
    eps = 1e-9 * max(1.0, budget_f)
    ctx = _LengthContext(norm)
    table = _CellTable(ctx, eps)
    _enumerate_chains(norm, budget_f, max_count, node_limit, table.offer)

    buckets = _Buckets()
    buckets.offer(LatticePolygon.point(), CapacityValue.exact(0), False)
    for disp, per_disp in table.cells.items():
        cells = list(per_disp.values())
        n = len(cells)
        for i in range(n):
            chain1, tie1 = cells[i]
            for j in range(i, n):
                chain2, tie2 = cells[j]
                if max_count is not None:
                    if (chain1.weight + chain2.weight) // 2 + 1 > max_count:
                        continue
                if chain1.length_f + chain2.length_f > budget_f + eps:
                    continue
                perim = _pair_perimeter(chain1, chain2, ctx)
                poly = _polygon_from_pair(chain1, chain2)
                twin = _polygon_from_pair(chain2, chain1)
                if (len(twin.vertices), twin.vertices) < \
                        (len(poly.vertices), poly.vertices):
                    poly = twin
                buckets.offer(poly, perim, tie1 or tie2)
    return buckets


@dataclass
class _CacheEntry:
    budget_f: float
    max_count: Optional[int]
    buckets: _Buckets


_SEARCH_CACHE: Dict[Norm, List[_CacheEntry]] = {}


def clear_search_cache() -> None:
    _SEARCH_CACHE.clear()


def _bucketed_minima(norm: Norm, budget, max_count: Optional[int],
                     node_limit: Optional[int]) -> _Buckets:
    budget_f, _ = _coerce_budget(budget)
    entries = _SEARCH_CACHE.setdefault(norm, [])
    for entry in entries:
        if entry.budget_f >= budget_f - 1e-12 and (
                entry.max_count is None
                or (max_count is not None and entry.max_count >= max_count)):
            return entry.buckets
    buckets = _assemble_buckets(norm, budget_f, max_count, node_limit)
    entries.append(_CacheEntry(budget_f, max_count, buckets))
    return buckets


def _initial_budget(norm: Norm, k: int) -> CapacityValue:
    """Perimeter of the cheapest rectangle (or segment) construction that is
    guaranteed to dominate some polygon with exactly k+1 lattice points."""
    if k == 0:
        return CapacityValue.exact(0)
    target = k + 1
    unit_x = norm.length((1, 0))
    unit_y = norm.length((0, 1))
    best: Optional[CapacityValue] = None
    for m in range(0, k + 1):
        n = -(-target // (m + 1)) - 1
        perim = unit_x.scaled(2 * m) + unit_y.scaled(2 * n)
        if best is None or perim.compare(best) < 0:
            best = perim
    # segments along the unit ball's own vertex directions can beat the axes
    # for skewed polygonal norms
    if isinstance(norm, Polygonal):
        for vx, vy in norm.vertices:
            px, py = vx.numerator * vy.denominator, vy.numerator * vx.denominator
            g = gcd(abs(px), abs(py))
            if g == 0:
                continue
            perim = norm.length((px // g, py // g)).scaled(2 * k)
            if perim.compare(best) < 0:
                best = perim
    return best


@dataclass(frozen=True)
class ToricCapacity:
    """Minimum perimeter at fixed enclosed lattice point count, with witness.

    tie is True when another polygon matched the minimum within the
    approximate comparison window; the reported witness is then the
    deterministic preference (fewest vertices, lexicographically first).
    """

    value: CapacityValue
    witness: LatticePolygon
    tie: bool

    def __iter__(self):
        return iter((self.value, self.witness))


def toric_capacity(norm: Norm, k: int, node_limit: Optional[int] = None,
                   allow_at_least: bool = False) -> ToricCapacity:
    """Minimum norm-perimeter over lattice polygons with exactly k+1 enclosed
    lattice points, with a minimizing witness polygon.

    allow_at_least relaxes "exactly k+1" to counts in [k+1, 2(k+1)]; it
    exists only so the two readings can be compared in reports.  The upper
    cutoff is where the count-pruned search stops being complete.
    """
    if k < 0:
        raise ValueError("k must be >= 0")
    budget = _initial_budget(norm, k)
    cap = 2 * (k + 1) if allow_at_least else k + 1
    buckets = _bucketed_minima(norm, budget, cap, node_limit)
    best: Optional[_Candidate] = None
    for count, per_edge in buckets.by_count.items():
        if count < k + 1 or count > cap or (count != k + 1 and not allow_at_least):
            continue
        for cand in per_edge.values():
            best = _prefer(best, cand)
    if best is None:
        raise RuntimeError(f"no polygon with {k + 1} lattice points found "
                           f"within budget {budget!r}; search is incomplete")
    return ToricCapacity(best.value, best.witness, best.tie)


def _prefer(best: Optional[_Candidate], cand: _Candidate) -> _Candidate:
    if best is None:
        return _Candidate(cand.value, cand.witness, cand.tie)
    c = cand.value.compare(best.value)
    if c < 0:
        return _Candidate(cand.value, cand.witness, cand.tie)
    if c == 0:
        ambiguous = (cand.tie or best.tie
                     or not cand.value._is_definite_tie(best.value))
        if (len(cand.witness.vertices), cand.witness.vertices) < \
                (len(best.witness.vertices), best.witness.vertices):
            return _Candidate(cand.value, cand.witness, ambiguous)
        best.tie = ambiguous
    return best


def min_action_at_grading(norm: Norm, grading: int, budget=None,
                          node_limit: Optional[int] = None) -> CapacityValue:
    """Minimum generator action over labeled generators of the given grading.

    A polygon with c enclosed points and E edges supports grading 2k exactly
    when 0 <= 2(c - 1 - k) <= E, by labeling that many edges 'h'.  The search
    budget defaults to the rectangle construction for k, which the all-'e'
    minimizer always fits.
    """
    if grading < 0 or grading % 2 != 0:
        raise ValueError("grading must be a nonnegative even integer")
    k = grading // 2
    if budget is None:
        budget = _initial_budget(norm, k)
    # edge count never exceeds boundary count which never exceeds the
    # enclosed count, so 2(c - 1 - k) <= E <= c bounds c <= 2(k + 1)
    buckets = _bucketed_minima(norm, budget, 2 * (k + 1), node_limit)
    best: Optional[_Candidate] = None
    for count, per_edge in buckets.by_count.items():
        needed_h = 2 * (count - 1 - k)
        if needed_h < 0:
            continue
        for edges, cand in per_edge.items():
            if needed_h <= edges:
                best = _prefer(best, cand)
    if best is None:
        raise RuntimeError(f"no generator of grading {grading} found within "
                           f"budget {budget!r}")
    return best.value
