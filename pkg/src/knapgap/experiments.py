"""Randomized desk-scale experiments on normalized gap sizes.

For a sampled instance the quantity of interest is the best possible ratio
Gap_c(a) / (||a||_inf^epsilon * ||c||_1) over nonzero costs.  That maximum
is not directly computable, but it is bracketed by two cheap quantities:

  ratio_lower: the ratio achieved by the cost (a_1, ..., a_{n-1}, 0), whose
      exact gap is g(a) + a_n, so the value is
      (g(a) + a_n) / (||a||_inf^epsilon * (a_1 + ... + a_{n-1}));
  ratio_upper: from the Frobenius-number gap bound, every cost satisfies
      Gap_c / ||c||_1 <= f(a) / min(a) with f(a) = g(a) + a_1 + ... + a_n,
      so the max ratio is at most f(a) / (min(a) * ||a||_inf^epsilon).

The harness reports these brackets, never the unknown max itself.  The only
irrational ingredient, ||a||_inf^epsilon, is directionally rounded (up in
the lower bracket's denominator, down in the upper's), and each reported
ratio is then rounded outward to a dyadic rational with denominator
2**bits.  Every record therefore keeps its bracket side exactly, and exact
means over thousands of records stay cheap because all denominators share
the same power of two.

The theoretical backdrop: for n >= 3 the sampled fraction of instances with
ratio above t decays at least like t^(-alpha) with
alpha = (n - 2) / ((1 - epsilon) n), so means are bounded once
epsilon > 2/n, while for epsilon = 1/(n-1) the lower bracket's mean stays
bounded away from zero.
"""

from __future__ import annotations

import json
import math
import multiprocessing
from csv import writer as csv_writer
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from pathlib import Path
from typing import IO, Iterable, Sequence

from .core import KnapsackInstance, RationalLike, as_fraction
from .errors import (
    BadEpsilon,
    DimensionTooSmall,
    InsufficientSamples,
    ValidationError,
)
from .group import frobenius
from .instances import draw_instance
from .rounding import DEFAULT_BITS, dyadic_ceil, dyadic_floor, pow_bounds

MIN_TAIL_SAMPLES = 100


def tail_exponent(epsilon: RationalLike, n: int) -> Fraction:
    """Exact tail exponent (n - 2) / ((1 - epsilon) * n), for n >= 3."""
    eps = as_fraction(epsilon, "epsilon")
    if not 0 < eps < 1:
        raise BadEpsilon(f"epsilon = {eps} must lie strictly between 0 and 1")
    if n < 3:
        raise DimensionTooSmall(f"n = {n} < 3, the tail exponent degenerates")
    return Fraction(n - 2) / ((1 - eps) * n)


@dataclass(frozen=True)
class ExperimentConfig:
    """Sampling plus normalization parameters for one experiment run."""

    n: int
    T: int
    count: int
    seed: int
    epsilon: Fraction
    thresholds: tuple[Fraction, ...] = ()
    bits: int = DEFAULT_BITS

    def __post_init__(self) -> None:
        if self.n < 2:
            raise DimensionTooSmall(f"n = {self.n} < 2")
        if self.T < 1:
            raise ValidationError(f"T = {self.T} < 1")
        if self.count < 1:
            raise ValidationError(f"count = {self.count} < 1")
        object.__setattr__(self, "epsilon", as_fraction(self.epsilon, "epsilon"))
        if not 0 < self.epsilon < 1:
            raise BadEpsilon(
                f"epsilon = {self.epsilon} must lie strictly between 0 and 1"
            )
        object.__setattr__(
            self,
            "thresholds",
            tuple(as_fraction(t, "threshold") for t in self.thresholds),
        )
        for t in self.thresholds:
            if t <= 0:
                raise ValidationError(f"threshold t = {t} must be positive")
        if not 0 <= self.seed < 2**64:
            raise ValidationError("seed must fit in 64 bits")
        if self.bits < 8:
            raise ValidationError(f"bits = {self.bits} too small for sound rounding")


@dataclass(frozen=True)
class SampleRecord:
    """One sampled instance with its bracket values."""

    index: int
    instance: KnapsackInstance
    g: int
    f: int
    ratio_lower: Fraction
    ratio_upper: Fraction


@lru_cache(maxsize=4096)
def _norm_power(norm: int, eps: Fraction, bits: int) -> tuple[Fraction, Fraction]:
    return pow_bounds(norm, eps, bits)


def bracket_ratios(
    inst: KnapsackInstance,
    epsilon: Fraction,
    bits: int = DEFAULT_BITS,
    *,
    g: int | None = None,
) -> tuple[Fraction, Fraction]:
    """Certified (ratio_lower, ratio_upper) bracket for one instance.

    The returned values are dyadic rationals with denominator 2**bits; the
    lower one never exceeds the true lower bracket and the upper one never
    undercuts the true upper bracket, so downstream exact comparisons keep
    their direction.
    """
    if g is None:
        g = frobenius(inst)
    total = sum(inst.a)
    power_lo, power_hi = _norm_power(inst.norm_inf, epsilon, bits)
    head = total - inst.a[-1]
    lower = dyadic_floor(Fraction(g + inst.a[-1]) / (power_hi * head), bits)
    upper = dyadic_ceil(Fraction(g + total) / (inst.min_entry * power_lo), bits)
    return lower, upper


def compute_record(config: ExperimentConfig, index: int) -> SampleRecord:
    """Deterministically compute the record owned by (config.seed, index)."""
    inst, _ = draw_instance(config.seed, index, config.n, config.T)
    g = frobenius(inst)
    lower, upper = bracket_ratios(inst, config.epsilon, config.bits, g=g)
    return SampleRecord(
        index=index,
        instance=inst,
        g=g,
        f=g + sum(inst.a),
        ratio_lower=lower,
        ratio_upper=upper,
    )


def _record_batch(args: tuple[ExperimentConfig, int, int]) -> list[SampleRecord]:
    config, start, stop = args
    return [compute_record(config, i) for i in range(start, stop)]


def sample_records(config: ExperimentConfig, jobs: int = 1) -> list[SampleRecord]:
    """All records for a config, in index order, optionally in parallel.

    Record i depends only on (seed, i), so any partition of the index range
    across workers reassembles to the same list; jobs changes wall time,
    never output.
    """
    if jobs < 1:
        raise ValueError(f"jobs = {jobs} must be >= 1")
    if jobs == 1 or config.count < 2 * jobs:
        return _record_batch((config, 0, config.count))
    step = -(-config.count // jobs)
    chunks = [
        (config, start, min(start + step, config.count))
        for start in range(0, config.count, step)
    ]
    method = "fork" if "fork" in multiprocessing.get_all_start_methods() else "spawn"
    with multiprocessing.get_context(method).Pool(jobs) as pool:
        parts = pool.map(_record_batch, chunks)
    out: list[SampleRecord] = []
    for part in parts:
        out.extend(part)
    return out


@dataclass(frozen=True)
class ExperimentSummary:
    """Digest of one experiment run.

    Survival maps give, per threshold t, the exact fraction of records whose
    bracket value exceeds t (both brackets reported).  fitted_slope is the
    least-squares slope of log survival against log t for the upper bracket,
    using only thresholds where at least MIN_TAIL_SAMPLES records survive;
    None when fewer than two thresholds qualify.  Means are exact rationals.
    """

    n: int
    T: int
    count: int
    seed: int
    epsilon: Fraction
    thresholds: tuple[Fraction, ...]
    bits: int
    survival_upper: tuple[tuple[Fraction, Fraction], ...]
    survival_lower: tuple[tuple[Fraction, Fraction], ...]
    fitted_slope: float | None
    mean_upper: Fraction
    mean_lower: Fraction
    alpha_theoretical: Fraction
    flags: tuple[str, ...]


def _survival(
    values: Sequence[Fraction], thresholds: Sequence[Fraction], count: int
) -> tuple[tuple[Fraction, Fraction], ...]:
    ordered = sorted(values)
    out = []
    for t in thresholds:
        # Number of values strictly above t, via binary search on the sorted
        # list (bisect cannot be used directly with exact > on Fractions
        # without a key, so do it manually).
        lo, hi = 0, count
        while lo < hi:
            mid = (lo + hi) // 2
            if ordered[mid] > t:
                hi = mid
            else:
                lo = mid + 1
        out.append((t, Fraction(count - lo, count)))
    return tuple(out)


def _fit_slope(
    survival: Sequence[tuple[Fraction, Fraction]], count: int
) -> float | None:
    pts = [
        (math.log(float(t)), math.log(float(frac)))
        for t, frac in survival
        if frac * count >= MIN_TAIL_SAMPLES and frac > 0
    ]
    if len(pts) < 2:
        return None
    xs = [p[0] for p in pts]
    ys = [p[1] for p in pts]
    xbar = sum(xs) / len(xs)
    ybar = sum(ys) / len(ys)
    sxx = sum((x - xbar) ** 2 for x in xs)
    if sxx == 0:
        return None
    sxy = sum((x - xbar) * (y - ybar) for x, y in zip(xs, ys))
    return sxy / sxx


def summarize(
    config: ExperimentConfig, records: Sequence[SampleRecord]
) -> ExperimentSummary:
    """Aggregate records into survival fractions, a tail fit and exact means."""
    count = len(records)
    uppers = [r.ratio_upper for r in records]
    lowers = [r.ratio_lower for r in records]
    survival_upper = _survival(uppers, config.thresholds, count)
    survival_lower = _survival(lowers, config.thresholds, count)
    flags = []
    if config.epsilon * config.n <= 2:
        flags.append("epsilon_at_or_below_2_over_n")
    if config.T == 1:
        flags.append("degenerate_T1")
    return ExperimentSummary(
        n=config.n,
        T=config.T,
        count=count,
        seed=config.seed,
        epsilon=config.epsilon,
        thresholds=config.thresholds,
        bits=config.bits,
        survival_upper=survival_upper,
        survival_lower=survival_lower,
        fitted_slope=_fit_slope(survival_upper, count),
        mean_upper=sum(uppers, Fraction(0)) / count,
        mean_lower=sum(lowers, Fraction(0)) / count,
        alpha_theoretical=tail_exponent(config.epsilon, config.n),
        flags=tuple(flags),
    )


def tail_experiment(
    config: ExperimentConfig, jobs: int = 1
) -> tuple[ExperimentSummary, list[SampleRecord]]:
    """Sample and fit the upper bracket's survival tail.

    Requires n >= 3 and at least one threshold; raises InsufficientSamples
    when fewer than MIN_TAIL_SAMPLES records exceed the smallest threshold
    or when fewer than two thresholds qualify for the fit.
    """
    if config.n < 3:
        raise DimensionTooSmall(f"n = {config.n} < 3, tail law needs n >= 3")
    if not config.thresholds:
        raise ValidationError("tail experiment needs at least one threshold")
    records = sample_records(config, jobs)
    smallest = min(config.thresholds)
    above = sum(1 for r in records if r.ratio_upper > smallest)
    if above < MIN_TAIL_SAMPLES:
        raise InsufficientSamples(
            f"only {above} of {config.count} samples above t = {smallest}, "
            f"need {MIN_TAIL_SAMPLES}"
        )
    summary = summarize(config, records)
    if summary.fitted_slope is None:
        raise InsufficientSamples(
            "fewer than two thresholds kept enough samples to fit a slope"
        )
    return summary, records


def mean_experiment(
    configs: Sequence[ExperimentConfig], jobs: int = 1
) -> tuple[list[ExperimentSummary], list[list[SampleRecord]]]:
    """Exact bracket means along a ladder of sampling boxes.

    Intended for a fixed (n, epsilon, count, seed) with increasing T; each
    config is summarized independently.  Configs with epsilon <= 2/n are
    processed but flagged, since only larger epsilon guarantees a bounded
    mean in the limit.
    """
    if not configs:
        raise ValidationError("mean experiment needs at least one config")
    summaries = []
    batches = []
    for config in configs:
        if config.n < 3:
            raise DimensionTooSmall(f"n = {config.n} < 3, mean law needs n >= 3")
        records = sample_records(config, jobs)
        summaries.append(summarize(config, records))
        batches.append(records)
    return summaries, batches


# ---------------------------------------------------------------------------
# Serialization.  CSV rows carry both display decimals (12 significant
# digits) and exact p/q columns; JSON mirrors the summary with every exact
# value as a p/q string.  Output is byte-stable for fixed inputs.


def csv_header(n: int) -> list[str]:
    cols = ["n", "T", "seed", "index"]
    cols += [f"a_{i}" for i in range(1, n + 1)]
    cols += ["g", "f", "ratio_lower", "ratio_upper"]
    cols += ["ratio_lower_exact", "ratio_upper_exact"]
    return cols


def _decimal12(x: Fraction) -> str:
    return format(float(x), ".12g")


def write_records_csv(
    handle: IO[str],
    runs: Iterable[tuple[ExperimentConfig, Sequence[SampleRecord]]],
) -> None:
    """Write one or more (config, records) runs as a single CSV stream.

    All runs must share the same n so the header is well defined.
    """
    runs = list(runs)
    if not runs:
        raise ValidationError("nothing to export")
    n = runs[0][0].n
    if any(cfg.n != n for cfg, _ in runs):
        raise ValidationError("cannot mix dimensions in one CSV file")
    out = csv_writer(handle, lineterminator="\n")
    out.writerow(csv_header(n))
    for config, records in runs:
        for r in records:
            row = [config.n, config.T, config.seed, r.index]
            row += list(r.instance.a)
            row += [
                r.g,
                r.f,
                _decimal12(r.ratio_lower),
                _decimal12(r.ratio_upper),
                str(r.ratio_lower),
                str(r.ratio_upper),
            ]
            out.writerow(row)


def export_records_csv(
    path: str | Path,
    runs: Iterable[tuple[ExperimentConfig, Sequence[SampleRecord]]],
) -> None:
    with open(path, "w", encoding="utf-8", newline="") as handle:
        write_records_csv(handle, runs)


def summary_json_dict(summary: ExperimentSummary) -> dict:
    """JSON-ready mirror of a summary, exact values as p/q strings."""
    return {
        "config": {
            "n": summary.n,
            "T": summary.T,
            "count": summary.count,
            "seed": summary.seed,
            "epsilon": str(summary.epsilon),
            "thresholds": [str(t) for t in summary.thresholds],
            "bits": summary.bits,
        },
        "alpha_theoretical": str(summary.alpha_theoretical),
        "fitted_slope": summary.fitted_slope,
        "empirical_mean": {
            "ratio_upper": str(summary.mean_upper),
            "ratio_lower": str(summary.mean_lower),
            "ratio_upper_decimal": _decimal12(summary.mean_upper),
            "ratio_lower_decimal": _decimal12(summary.mean_lower),
        },
        "empirical_tail": {
            "ratio_upper": [
                {"t": str(t), "survival": str(s), "survival_decimal": _decimal12(s)}
                for t, s in summary.survival_upper
            ],
            "ratio_lower": [
                {"t": str(t), "survival": str(s), "survival_decimal": _decimal12(s)}
                for t, s in summary.survival_lower
            ],
        },
        "flags": list(summary.flags),
    }


def summary_to_json(summary: ExperimentSummary) -> str:
    return json.dumps(summary_json_dict(summary), indent=2)
