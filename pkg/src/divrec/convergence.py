"""Convergence experiments: empirical ratios along checkpoint schedules.

A schedule is a geometric grid of sample sizes; a family names one of the
three density setups plus its parameter. Running a family walks the range
once in ascending order, snapshotting the running count or sum at each
checkpoint, so a table over [1e3 .. 1e7] costs the same sieve work as the
single largest point and the row at N equals a from-scratch run at N.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence, Union

import numpy as np

from . import densities
from .accumulators import ExactRatioSum, NeumaierSum
from .limits import EXACT_PHI_SUM_MAX_N, SIEVE_MAX_N
from .sieves import factorize, iter_sieve_tables


@dataclass(frozen=True)
class CheckpointSchedule:
    """Geometric grid round(start * ratio**k), k = 0, 1, ..., clipped at stop.

    Points are strictly increasing (duplicates after rounding collapse); the
    first point is start and the last is stop whenever start <= stop, and a
    start beyond stop yields the empty grid.
    """

    start: int
    stop: int
    ratio: Fraction

    def __post_init__(self) -> None:
        if self.start < 1 or self.stop < 1:
            raise ValueError("schedule endpoints must be at least 1")
        object.__setattr__(self, "ratio", Fraction(self.ratio))
        if self.ratio <= 1:
            raise ValueError(f"schedule ratio must exceed 1, got {self.ratio}")

    @property
    def points(self) -> list[int]:
        if self.start > self.stop:
            return []
        pts: list[int] = []
        k = 0
        while True:
            raw = round(self.start * self.ratio**k)
            value = min(raw, self.stop)
            if not pts or value > pts[-1]:
                pts.append(value)
            if raw >= self.stop:
                return pts
            k += 1


@dataclass(frozen=True)
class ConvergenceRow:
    """One checkpoint: empirical ratio against the predicted limit.

    ``empirical_exact`` carries the full-precision ratio when the family
    computes one (integer counts and exact-mode sums); float families leave
    it None.
    """

    N: int
    empirical: float
    predicted: float
    abs_err: float
    rel_err: float
    empirical_exact: Fraction | None = None


def _row(
    N: int, empirical: float, predicted: float, exact: Fraction | None = None
) -> ConvergenceRow:
    abs_err = abs(empirical - predicted)
    rel_err = abs_err / abs(predicted) if predicted else float("nan")
    return ConvergenceRow(N, empirical, predicted, abs_err, rel_err, exact)


@dataclass(frozen=True)
class OddlyFamily:
    """Integers whose largest m-power divisor has odd exponent."""

    m: int


@dataclass(frozen=True)
class SquarefreeFamily:
    """Square-free integers divisible by square-free t."""

    t: int


@dataclass(frozen=True)
class PhiSumFamily:
    """Totient-ratio sums over multiples of m; mode 'float' or 'exact'."""

    m: int
    mode: str = "float"


Family = Union[OddlyFamily, SquarefreeFamily, PhiSumFamily]


def run_convergence(
    family: Family, schedule: CheckpointSchedule, *, threads: int = 1
) -> list[ConvergenceRow]:
    """One row per checkpoint, computed in a single ascending pass.

    Parameter validation is delegated to the family's counters, so a bad
    modulus or a non-square-free t raises ValueError and an over-cap stop
    raises RangeLimitError before any work starts.
    """
    points = schedule.points
    if isinstance(family, OddlyFamily):
        pred = densities.predicted_density_oddly(family.m)
        rows = []
        for N in points:
            c = densities.count_oddly_divisible_fast(family.m, N)
            rows.append(_row(N, c / N, pred.float_value, Fraction(c, N)))
        return rows
    if isinstance(family, SquarefreeFamily):
        pred = densities.predicted_density_squarefree(
            [p for p, _ in factorize(family.t)]
        )
        counts = _squarefree_checkpoint_counts(family.t, points, threads)
        return [
            _row(N, c / N, pred.float_value, Fraction(c, N))
            for N, c in zip(points, counts)
        ]
    if isinstance(family, PhiSumFamily):
        pred = densities.predicted_phi_density(family.m)
        if family.mode == "exact":
            sums = _phi_checkpoint_sums_exact(family.m, points, threads)
            return [
                _row(N, float(s) / N, pred.float_value, s / N)
                for N, s in zip(points, sums)
            ]
        if family.mode == "float":
            sums = _phi_checkpoint_sums_float(family.m, points, threads)
            return [
                _row(N, s / N, pred.float_value) for N, s in zip(points, sums)
            ]
        raise ValueError(f"unknown phi-sum mode {family.mode!r}")
    raise ValueError(f"unknown family {family!r}")


def _checked_points(points: Sequence[int], cap: int) -> list[int]:
    densities._check_count_range(points[-1], cap)
    return list(points)


def _squarefree_checkpoint_counts(
    t: int, points: Sequence[int], threads: int
) -> list[int]:
    densities._squarefree_prime_factors(t)
    if not points:
        return []
    points = _checked_points(points, SIEVE_MAX_N)
    results = []
    running = 0
    idx = 0
    for table in iter_sieve_tables(1, points[-1], threads=threads):
        while idx < len(points) and points[idx] <= table.hi:
            partial = densities._count_squarefree_multiples_in_table(
                table, t, upto=points[idx]
            )
            results.append(running + partial)
            idx += 1
        running += densities._count_squarefree_multiples_in_table(table, t)
    return results


def _phi_checkpoint_sums_float(
    m: int, points: Sequence[int], threads: int
) -> list[float]:
    if m < 1:
        raise ValueError(f"need modulus m >= 1, got {m}")
    if not points:
        return []
    points = _checked_points(points, SIEVE_MAX_N)
    acc = NeumaierSum()
    results = []
    idx = 0
    for phis, ns in densities._phi_ratio_segments(m, points[-1], threads):
        ratios = phis / ns
        done = 0
        # snapshot exactly at each checkpoint without disturbing term order
        while idx < len(points) and points[idx] <= ns[-1]:
            upto = int(np.searchsorted(ns, points[idx], side="right"))
            acc.extend(ratios[done:upto].tolist())
            done = upto
            results.append(acc.value)
            idx += 1
        acc.extend(ratios[done:].tolist())
    while idx < len(points):  # checkpoints below m, or past the last multiple
        results.append(acc.value)
        idx += 1
    return results


def _phi_checkpoint_sums_exact(
    m: int, points: Sequence[int], threads: int
) -> list[Fraction]:
    if m < 1:
        raise ValueError(f"need modulus m >= 1, got {m}")
    if not points:
        return []
    points = _checked_points(points, EXACT_PHI_SUM_MAX_N)
    acc = ExactRatioSum()
    results = []
    idx = 0
    for phis, ns in densities._phi_ratio_segments(m, points[-1], threads):
        for ph, n in zip(phis.tolist(), ns.tolist()):
            while idx < len(points) and points[idx] < n:
                results.append(acc.value)
                idx += 1
            acc.add(ph, n)
            while idx < len(points) and points[idx] == n:
                results.append(acc.value)
                idx += 1
    while idx < len(points):
        results.append(acc.value)
        idx += 1
    return results


CSV_HEADER = "N,empirical,predicted,abs_err,rel_err"


def _fmt(x: float) -> str:
    return format(x, ".12g")


def emit_report(
    rows: Sequence[ConvergenceRow],
    fmt: str = "csv",
    *,
    include_exact: bool = False,
) -> bytes:
    """Render rows as CSV or JSON bytes.

    CSV prints the header and one line per row, floats at 12 significant
    digits. JSON is an array of objects with the same five keys; with
    ``include_exact`` set, rows carrying a full-precision ratio also get
    numerator/denominator strings.
    """
    if fmt == "csv":
        lines = [CSV_HEADER]
        for r in rows:
            lines.append(
                f"{r.N},{_fmt(r.empirical)},{_fmt(r.predicted)},"
                f"{_fmt(r.abs_err)},{_fmt(r.rel_err)}"
            )
        return ("\n".join(lines) + "\n").encode("ascii")
    if fmt == "json":
        payload = []
        for r in rows:
            entry = {
                "N": r.N,
                "empirical": r.empirical,
                "predicted": r.predicted,
                "abs_err": r.abs_err,
                "rel_err": r.rel_err,
            }
            if include_exact and r.empirical_exact is not None:
                entry["empirical_numerator"] = str(r.empirical_exact.numerator)
                entry["empirical_denominator"] = str(r.empirical_exact.denominator)
            payload.append(entry)
        return (json.dumps(payload, indent=2) + "\n").encode("ascii")
    raise ValueError(f"unknown report format {fmt!r}, expected 'csv' or 'json'")
