"""Desk-scale numerics for the volume asymptotics and the action bound.

The guiding quantity is c_k^2 / (4 k vol): for the model domains it tends to
1 as k grows, at rate O(1/sqrt(k)) from the boundary terms of the lattice
counts, which is what the tolerances in the test suite are sized for.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import List, Optional, Tuple

from .capacities import capacities
from .domains import (Ball, DisjointUnion, Domain, Ellipsoid, Polydisk,
                      ToricNorm, describe)
from .values import CapacityValue

TORIC_TRACE_KMAX = 25  # polygon search cost caps toric traces well below asymptopia


def volume(domain: Domain) -> CapacityValue:
    """Symplectic volume; exact except for the round toric domain (pi)."""
    if isinstance(domain, Ball):
        return CapacityValue.exact(domain.a * domain.a / 2)
    if isinstance(domain, Ellipsoid):
        return CapacityValue.exact(domain.a * domain.b / 2)
    if isinstance(domain, Polydisk):
        return CapacityValue.exact(domain.a * domain.b)
    if isinstance(domain, ToricNorm):
        return domain.norm.dual_ball_area()
    if isinstance(domain, DisjointUnion):
        total = CapacityValue.exact(0)
        for part in domain.parts:
            total = total + volume(part)
        return total
    raise TypeError(f"unsupported domain {domain!r}")


def contains_polydisk(domain: Domain) -> bool:
    """Polydisks have only piecewise smooth boundary; results that assume a
    genuine contact boundary are labeled exploratory for them."""
    if isinstance(domain, Polydisk):
        return True
    if isinstance(domain, DisjointUnion):
        return any(contains_polydisk(p) for p in domain.parts)
    return False


@dataclass(frozen=True)
class TracePoint:
    k: int
    c_k: CapacityValue
    ratio: float


@dataclass(frozen=True)
class VolumeReport:
    """Sampled trace of c_k^2 / (4 k vol) together with the exact volumes."""

    label: str
    vol_x: CapacityValue
    vol_y: CapacityValue          # boundary contact volume, = 2 vol_x
    trace: Tuple[TracePoint, ...]
    final_ratio: float
    max_deviation_last_decade: float
    truncated: bool


def _sample_points(kmax: int, stride: int) -> List[int]:
    ks = list(range(stride, kmax + 1, stride))
    if not ks or ks[-1] != kmax:
        ks.append(kmax)
    return ks


def _ratio(c_k: CapacityValue, k: int, vol: CapacityValue) -> float:
    if c_k.is_exact and vol.is_exact:
        return float(c_k.frac * c_k.frac / (4 * k * vol.frac))
    return (c_k.value * c_k.value) / (4.0 * k * vol.value)


def volume_ratio_trace(domain: Domain, kmax: int, stride: int = 1,
                       node_limit: Optional[int] = None) -> VolumeReport:
    """Sampled convergence trace of c_k^2 / (4 k vol) up to kmax.

    Toric domains are truncated (and flagged) because the polygon search
    limits how far their sequences can go.  Two-part unions evaluate the
    max-plus convolution only at the sampled indices, which keeps large kmax
    affordable; unions with more parts pay for the full convolution table.
    """
    if kmax < 1:
        raise ValueError("kmax must be >= 1")
    if stride < 1:
        raise ValueError("stride must be >= 1")
    vol = volume(domain)
    truncated = False
    if isinstance(domain, ToricNorm):
        truncated = True  # never near the k -> infinity regime
        kmax = min(kmax, TORIC_TRACE_KMAX)

    ks = _sample_points(kmax, stride)
    trace: List[TracePoint] = []
    if isinstance(domain, DisjointUnion) and len(domain.parts) == 2:
        # evaluate the max-plus convolution only at the sampled indices;
        # the full table would cost kmax^2
        first = capacities(domain.parts[0], kmax, node_limit=node_limit)
        second = capacities(domain.parts[1], kmax, node_limit=node_limit)
        for k in ks:
            best = first.entries[0] + second.entries[k]
            for i in range(1, k + 1):
                cand = first.entries[i] + second.entries[k - i]
                if cand.compare(best) > 0:
                    best = cand
            trace.append(TracePoint(k, best, _ratio(best, k, vol)))
    else:
        seq = capacities(domain, kmax, node_limit=node_limit)
        for k in ks:
            c_k = seq[k]
            trace.append(TracePoint(k, c_k, _ratio(c_k, k, vol)))

    last_decade = [p for p in trace if p.k * 10 >= kmax]
    max_dev = max(abs(p.ratio - 1.0) for p in last_decade)
    return VolumeReport(
        label=describe(domain),
        vol_x=vol,
        vol_y=vol.scaled(2),
        trace=tuple(trace),
        final_ratio=trace[-1].ratio,
        max_deviation_last_decade=max_dev,
        truncated=truncated,
    )


@dataclass(frozen=True)
class QwVerdict:
    """Whether c_k < sqrt(2 k vol_Y) held for every k = 1..kmax."""

    holds: bool
    kmax: int
    k: Optional[int] = None
    exploratory: bool = False


def qw_check(domain: Domain, kmax: int,
             node_limit: Optional[int] = None) -> QwVerdict:
    """Check c_k < sqrt(2 k vol_Y) for k = 1..kmax (squared, hence exact for
    rational capacities).  Exploratory for polydisks, whose boundary is only
    piecewise smooth."""
    if kmax < 1:
        raise ValueError("kmax must be >= 1")
    exploratory = contains_polydisk(domain)
    if isinstance(domain, ToricNorm):
        kmax = min(kmax, TORIC_TRACE_KMAX)
    vol_y = volume(domain).scaled(2)
    seq = capacities(domain, kmax, node_limit=node_limit)
    for k in range(1, kmax + 1):
        c_k = seq[k]
        if c_k.is_exact and vol_y.is_exact:
            ok = c_k.frac * c_k.frac < 2 * k * vol_y.frac
        else:
            # conservative float comparison: shrink the bound and grow c_k
            # by their error allowances
            bound = math.sqrt(2.0 * k * (vol_y.value - vol_y.err))
            ok = c_k.value + c_k.err < bound
        if not ok:
            return QwVerdict(False, kmax, k, exploratory)
    return QwVerdict(True, kmax, None, exploratory)


def weinstein_bound(domain: Domain) -> CapacityValue:
    """sqrt(2 vol_Y), the conjectured bound on the shortest orbit action."""
    vol_y = volume(domain).scaled(2)
    if vol_y.is_exact:
        return CapacityValue.sqrt_rational(2 * vol_y.frac)
    v = math.sqrt(2.0 * vol_y.value)
    return CapacityValue.approx(v, 2.0 * math.ulp(v))
