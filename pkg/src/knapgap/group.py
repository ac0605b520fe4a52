"""Residue-class minima, Frobenius numbers and covering radii.

Fix a position tau of the instance and write m = a_tau.  For nonnegative
weights w on the remaining coefficients, group_minima solves, for every
residue r modulo m,

    minima[r] = min { w.x : sum_j gen_j x_j = r (mod m), x integer >= 0 }

where gen runs over the coefficients other than a_tau in their original
order.  This is a single-source shortest path problem on the cyclic group
Z_m: arcs go from r to (r + gen_j) mod m at cost w_j, the source is residue
0, and coprimality of the instance guarantees every residue is reachable.
Distances are exact (integer or Fraction), computed with a monotone priority
queue.

Taking the weights to be the coefficients themselves makes minima[r] the
smallest integer congruent to r mod m that is representable without using
a_tau, so b is representable exactly when b >= minima[b mod m] within its
class.  With tau a position of a minimal coefficient this yields the
Frobenius number

    g(a) = max_r minima[r] - a_tau

with the convention g = -1 when some coefficient equals 1 (every b >= 0 is
then representable, and the formula above lands on -1 by itself).

Two identities connect g(a) to lattice covering radii of the simplex
conv{0, a_1 e_1, ..., a_n e_n} scaled by the corresponding lattice: the
radius against the full null lattice is g(a) + a_1 + ... + a_n, and against
the integer lattice of the last coordinate's complement it is g(a) + a_n.
Both are exposed as trivial wrappers so callers do not re-derive them.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field
from fractions import Fraction
from heapq import heappop, heappush
from itertools import product
from typing import Sequence

from .core import KnapsackInstance, RationalLike, as_fraction
from .errors import NegativeWeight, NoPointInBox, ValidationError
from .guardrail import check_cells

Weight = Fraction | int


def _normalize_weights(
    weights: Sequence[RationalLike], count: int
) -> tuple[Weight, ...]:
    """Coerce weights to Fractions, or plain ints when all are integral."""
    values = [as_fraction(w, f"w[{i + 1}]") for i, w in enumerate(weights)]
    if len(values) != count:
        raise ValidationError(
            f"expected {count} weights (one per coefficient other than tau), "
            f"got {len(values)}"
        )
    for i, w in enumerate(values):
        if w < 0:
            raise NegativeWeight(f"w[{i + 1}] = {w} < 0, weights must be nonnegative")
    if all(w.denominator == 1 for w in values):
        return tuple(int(w) for w in values)
    return tuple(values)


@dataclass(eq=False)
class GroupTable:
    """Per-residue minima table plus lazily derived witness data.

    Treat instances as immutable.  `minima[r]` is the exact optimum for
    residue r; `witness[r]` is one optimal solution vector (coordinates
    follow `positions`, the original indices other than tau); `load[r]` is
    the value sum_j gen_j * witness[r][j], an ordinary integer.

    Witnesses are reconstructed from the finished table by a breadth-first
    search from residue 0 over tight arcs, the arcs r -> r + gen_j with
    minima[(r + gen_j) mod m] == minima[r] + w_j.  Every residue is reached
    this way (drop one generator from an optimal solution and the remainder
    is optimal for its own class, hence tight), first discovery wins, and
    generators are scanned in order, so ties go to the smaller generator
    position.  Unlike a backward greedy walk this stays acyclic even when
    some weights are zero.
    """

    modulus: int
    tau: int
    positions: tuple[int, ...]
    generators: tuple[int, ...]
    weights: tuple[Weight, ...]
    minima: list[Weight]
    _tree: tuple[list[int], list[int], list[int], list[int]] | None = field(
        default=None, repr=False
    )

    def _tight_tree(self) -> tuple[list[int], list[int], list[int], list[int]]:
        if self._tree is not None:
            return self._tree
        m = self.modulus
        pred_res = [-1] * m
        pred_gen = [-1] * m
        load = [0] * m
        order: list[int] = [0]
        seen = bytearray(m)
        seen[0] = 1
        minima = self.minima
        arcs = [(g % m, g, w) for g, w in zip(self.generators, self.weights)]
        queue = deque([0])
        while queue:
            r = queue.popleft()
            base = minima[r]
            for k, (step, gen, w) in enumerate(arcs):
                nr = r + step
                if nr >= m:
                    nr -= m
                if not seen[nr] and minima[nr] == base + w:
                    seen[nr] = 1
                    pred_res[nr] = r
                    pred_gen[nr] = k
                    load[nr] = load[r] + gen
                    order.append(nr)
                    queue.append(nr)
        if not all(seen):
            raise AssertionError("tight-arc search failed to reach every residue")
        self._tree = (pred_res, pred_gen, load, order)
        return self._tree

    @property
    def load(self) -> list[int]:
        return self._tight_tree()[2]

    @property
    def witness(self) -> list[tuple[int, ...]]:
        pred_res, pred_gen, _, order = self._tight_tree()
        k = len(self.generators)
        out: list[tuple[int, ...] | None] = [None] * self.modulus
        out[0] = (0,) * k
        for r in order[1:]:
            prev = out[pred_res[r]]
            assert prev is not None
            j = pred_gen[r]
            out[r] = prev[:j] + (prev[j] + 1,) + prev[j + 1 :]
        return out  # type: ignore[return-value]


def group_minima(
    inst: KnapsackInstance,
    tau: int,
    weights: Sequence[RationalLike],
    *,
    max_cells: int | None = None,
) -> GroupTable:
    """Exact residue-class minima modulo a_tau by Dijkstra's algorithm.

    tau is a 0-based position into the instance; weights are nonnegative
    rationals, one per remaining coefficient in original order.  The table
    has a_tau rows, which is checked against the cell guardrail before
    allocation.
    """
    if not 0 <= tau < inst.n:
        raise ValidationError(f"tau = {tau} out of range for n = {inst.n}")
    positions = tuple(j for j in range(inst.n) if j != tau)
    generators = tuple(inst.a[j] for j in positions)
    w = _normalize_weights(weights, inst.n - 1)
    m = inst.a[tau]
    check_cells(m, f"residue table modulo {m}", max_cells)

    zero: Weight = 0 if all(isinstance(x, int) for x in w) else Fraction(0)
    dist: list[Weight | None] = [None] * m
    dist[0] = zero
    done = bytearray(m)
    # Self-loop arcs (generator divisible by m) can never improve a label.
    arcs = [(g % m, wj) for g, wj in zip(generators, w) if g % m != 0]
    heap: list[tuple[Weight, int]] = [(zero, 0)]
    while heap:
        d, r = heappop(heap)
        if done[r]:
            continue
        done[r] = 1
        for step, wj in arcs:
            nr = r + step
            if nr >= m:
                nr -= m
            nd = d + wj
            old = dist[nr]
            if old is None or nd < old:
                dist[nr] = nd
                heappush(heap, (nd, nr))
    if any(d is None for d in dist):
        raise AssertionError("residue graph not strongly reachable, gcd broken")
    return GroupTable(
        modulus=m,
        tau=tau,
        positions=positions,
        generators=generators,
        weights=w,
        minima=dist,  # type: ignore[arg-type]
    )


def lattice_gap(table: GroupTable) -> Weight:
    """Largest residue-class minimum, the worst case over right hand sides."""
    return max(table.minima)


def tightness_threshold(table: GroupTable) -> int:
    """Smallest B such that every b >= B inherits its class minimum.

    Lifting the witness of class b mod m by x_tau = (b - load) / a_tau gives
    a genuine solution as soon as b is at least the largest witness load, so
    past this threshold the per-b optimum and the residue table agree.
    """
    return max(table.load)


def frobenius(inst: KnapsackInstance, *, max_cells: int | None = None) -> int:
    """Frobenius number: the largest integer not representable as a.x.

    Returns -1 when some coefficient equals 1 and every b >= 0 is
    representable.  Runs group_minima with the coefficients as their own
    weights, modulo a minimal coefficient.
    """
    tau = inst.a.index(inst.min_entry)
    positions = (j for j in range(inst.n) if j != tau)
    weights = tuple(inst.a[j] for j in positions)
    table = group_minima(inst, tau, weights, max_cells=max_cells)
    return max(table.minima) - inst.a[tau]


def frobenius_sieve_oracle(
    inst: KnapsackInstance, *, max_cells: int | None = None
) -> int:
    """Frobenius number by a representability sieve, no shortest paths.

    Marks every representable integer up to the classical product bound
    min(a) * max(a) - min(a) - max(a); nothing above that bound can be
    missed.  The marking runs on a big-integer bitset: closing the set under
    adding k * a_i for all k only needs the doubled shifts a_i, 2 a_i,
    4 a_i, ... because any multiple is a sum of distinct such pieces.
    Deliberately independent of the residue-table route so the two can
    corroborate each other.
    """
    lo, hi = inst.min_entry, inst.norm_inf
    bound = lo * hi - lo - hi
    if bound < 0:
        return -1
    check_cells(bound + 1, f"representability sieve up to {bound}", max_cells)
    full = (1 << (bound + 1)) - 1
    mask = 1
    for coin in inst.a:
        shift = coin
        while shift <= bound:
            mask |= mask << shift
            mask &= full
            shift <<= 1
    missing = ~mask & full
    return missing.bit_length() - 1 if missing else -1


def group_min_bruteforce(
    inst: KnapsackInstance,
    tau: int,
    weights: Sequence[RationalLike],
    r: int,
    radius: int,
    *,
    max_cells: int | None = None,
) -> Fraction:
    """Exhaustive check value for group_minima on one residue class.

    Enumerates the full box 0..radius in every coordinate and minimizes the
    weighted sum over points congruent to r.  Raises NoPointInBox when the
    box misses the class entirely (radius too small).
    """
    if not 0 <= tau < inst.n:
        raise ValidationError(f"tau = {tau} out of range for n = {inst.n}")
    if radius < 0:
        raise ValidationError(f"radius = {radius} must be nonnegative")
    m = inst.a[tau]
    if not 0 <= r < m:
        raise ValidationError(f"residue r = {r} out of range modulo {m}")
    positions = tuple(j for j in range(inst.n) if j != tau)
    generators = tuple(inst.a[j] for j in positions)
    w = _normalize_weights(weights, inst.n - 1)
    check_cells(
        (radius + 1) ** len(generators), "brute-force enumeration box", max_cells
    )
    best: Weight | None = None
    for x in product(range(radius + 1), repeat=len(generators)):
        if sum(g * xi for g, xi in zip(generators, x)) % m != r:
            continue
        value = sum(wj * xi for wj, xi in zip(w, x))
        if best is None or value < best:
            best = value
    if best is None:
        raise NoPointInBox(
            f"no point of residue class {r} mod {m} in box 0..{radius}"
        )
    return Fraction(best)


def covering_radius_simplex(
    inst: KnapsackInstance, *, max_cells: int | None = None
) -> int:
    """Covering radius of the coefficient simplex: g(a) + a_1 + ... + a_n."""
    return frobenius(inst, max_cells=max_cells) + sum(inst.a)


def covering_radius_integral(
    inst: KnapsackInstance, *, max_cells: int | None = None
) -> int:
    """Covering radius against the plain integer lattice: g(a) + a_n.

    a_n is the last coefficient in the order given.
    """
    return frobenius(inst, max_cells=max_cells) + inst.a[-1]
