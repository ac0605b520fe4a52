"""Exact integrality gaps for knapsack minimization.

The additive gap of one right hand side is
IG_c(a, b) = IP_c(a, b) - LP_c(a, b), and the quantity of interest is its
maximum over all representable b, written Gap_c(a).  On any solution of
a.x = b the cost splits as c.x = slope * b + l.x' (basis_reduction), so
IG never depends on b through the slope term: it equals the minimum of
l.x' over solutions, which the residue table bounds from below.  Past the
tightness threshold B* the table witness lifts to a genuine solution, so

    IG_c(a, b) = minima[b mod a_tau]        for every b >= B*,

and Gap_c(a) is the larger of the table maximum and a finite scan of the
representable b < B*.  Everything here is exact rational arithmetic.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .core import (
    KnapsackInstance,
    RationalLike,
    basis_reduction,
    cost_vector,
)
from .errors import NegativeRhs, ValidationError
from .group import group_minima, tightness_threshold
from .guardrail import check_cells


def _check_rhs(b: int) -> None:
    if not isinstance(b, int) or isinstance(b, bool):
        raise ValidationError(f"b must be an integer, got {b!r}")
    if b < 0:
        raise NegativeRhs(f"b = {b} < 0, right hand side must be nonnegative")


def ip_value(
    inst: KnapsackInstance,
    c: Sequence[RationalLike],
    b: int,
    *,
    max_cells: int | None = None,
) -> Fraction | None:
    """Exact integer optimum IP_c(a, b), or None when b is not representable.

    Dynamic program over right hand sides 0..b; every solution of a.x = t
    decomposes as a solution of t - a_i plus one use of coordinate i, so the
    recursion is exhaustive.  Negative cost entries are fine, the state
    space is bounded by b regardless.
    """
    _check_rhs(b)
    costs = cost_vector(c, inst.n)
    check_cells(b + 1, f"value table up to b = {b}", max_cells)
    value: list[Fraction | None] = [None] * (b + 1)
    value[0] = Fraction(0)
    a = inst.a
    for t in range(1, b + 1):
        best: Fraction | None = None
        for ai, ci in zip(a, costs):
            if ai <= t:
                prev = value[t - ai]
                if prev is not None:
                    cand = prev + ci
                    if best is None or cand < best:
                        best = cand
        value[t] = best
    return value[b]


def integrality_gap(
    inst: KnapsackInstance,
    c: Sequence[RationalLike],
    b: int,
    *,
    max_cells: int | None = None,
) -> Fraction | None:
    """IG_c(a, b) = IP - LP for one right hand side, None when infeasible."""
    ip = ip_value(inst, c, b, max_cells=max_cells)
    if ip is None:
        return None
    costs = cost_vector(c, inst.n)
    slope = min(ci / ai for ci, ai in zip(costs, inst.a))
    return ip - slope * b


@dataclass(frozen=True)
class GapReport:
    """Gap_c(a) with the data needed to audit it.

    gap is the exact maximum, witness_b the smallest right hand side
    attaining it, threshold the tightness bound B*, tail_gap the residue
    table maximum governing all b >= B*, scan_gap the maximum over
    representable b < B*, tau the 0-based pivot position and generic whether
    the cost slope minimizer was unique.
    """

    gap: Fraction
    witness_b: int
    threshold: int
    tail_gap: Fraction
    scan_gap: Fraction
    tau: int
    generic: bool


def gap_exact(
    inst: KnapsackInstance,
    c: Sequence[RationalLike],
    *,
    max_cells: int | None = None,
) -> GapReport:
    """Exact Gap_c(a) = max over representable b of IG_c(a, b).

    Builds the residue table for the reduced costs, reads off the tail
    behavior, and sweeps the finitely many b below the tightness threshold
    with one dynamic program in the reduced costs (the arc for the pivot
    coordinate carries weight zero).  Ties between the pre-threshold scan
    and the tail resolve toward the scan, so witness_b is the smallest
    attaining b overall.
    """
    red = basis_reduction(inst, c)
    table = group_minima(inst, red.tau, red.l, max_cells=max_cells)
    m = table.modulus
    bstar = tightness_threshold(table)
    tail = max(table.minima)

    scan_best: Fraction | int = 0
    scan_b: int | None = None
    if bstar > 0:
        check_cells(bstar, f"gap scan up to threshold {bstar}", max_cells)
        weights = [Fraction(0)] * inst.n
        for pos, lw in zip(red.positions, red.l):
            weights[pos] = lw
        a = inst.a
        dist: list[Fraction | int | None] = [None] * bstar
        dist[0] = 0
        scan_b = 0
        for t in range(1, bstar):
            best = None
            for ai, wi in zip(a, weights):
                if ai <= t:
                    prev = dist[t - ai]
                    if prev is not None:
                        cand = prev + wi
                        if best is None or cand < best:
                            best = cand
            dist[t] = best
            if best is not None and best > scan_best:
                scan_best = best
                scan_b = t

    if scan_b is not None and scan_best >= tail:
        gap = scan_best
        witness = scan_b
    else:
        gap = tail
        witness = min(
            bstar + (r - bstar) % m
            for r, value in enumerate(table.minima)
            if value == tail
        )
    return GapReport(
        gap=Fraction(gap),
        witness_b=witness,
        threshold=bstar,
        tail_gap=Fraction(tail),
        scan_gap=Fraction(scan_best),
        tau=red.tau,
        generic=red.generic,
    )


def gap_bruteforce(
    inst: KnapsackInstance,
    c: Sequence[RationalLike],
    b_max: int,
    *,
    max_cells: int | None = None,
) -> Fraction:
    """Max of IG_c(a, b) over representable b <= b_max, by direct sweep.

    One dynamic program in the original costs, no residue table, no reduced
    costs; meant as an independent check value for gap_exact, which it
    matches whenever b_max >= threshold + a_tau.
    """
    _check_rhs(b_max)
    costs = cost_vector(c, inst.n)
    check_cells(b_max + 1, f"value table up to b = {b_max}", max_cells)
    slope = min(ci / ai for ci, ai in zip(costs, inst.a))
    a = inst.a
    value: list[Fraction | None] = [None] * (b_max + 1)
    value[0] = Fraction(0)
    best = Fraction(0)
    for t in range(1, b_max + 1):
        cur: Fraction | None = None
        for ai, ci in zip(a, costs):
            if ai <= t:
                prev = value[t - ai]
                if prev is not None:
                    cand = prev + ci
                    if cur is None or cand < cur:
                        cur = cand
        value[t] = cur
        if cur is not None:
            ig = cur - slope * t
            if ig > best:
                best = ig
    return best
