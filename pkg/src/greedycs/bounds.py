"""Reconstruction error-bound constants for the pursuit family and the
OMP-versus-KOMP comparison built on them.

For a signal x with best t-term approximation x_t measured as
y = phi x + w, running t iterations of OMP yields an estimate whose error
obeys

    ||x - x~||  <=  (1 + C1) ||x - x_t||  +  (C1/sqrt(t)) ||x - x_t||_1
                    +  C1 ||w||,

with C1 growing like sqrt(t) for well-behaved isometry constants. K-fold
pursuit admits the analogous constant C_K ~ sqrt(t/K), and its best
t-term truncation satisfies the same shape of bound with coefficients
(3 + 2 C_K, C_K/sqrt(t), 2). Comparing shifted constants 2 C_K + 2
against C1 + 2 tells for which K the truncated K-fold guarantee beats the
plain OMP guarantee.

All evaluations are plain double-precision arithmetic over a delta model:
either a fitted power law delta_l = delta2 * l**beta or a table of
measured constants.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

from .errors import BoundUndefined, OrderOutOfRange
from .rip import RipReport


@dataclass(frozen=True)
class DeltaModel:
    """Order -> delta oracle used by the bound formulas.

    power_law evaluates delta2 * order**beta for any order; table looks up
    measured values and raises OrderOutOfRange for anything missing.
    Values >= 1 are legal outputs here; the bound formulas treat them as
    saturated and raise BoundUndefined.
    """

    kind: str = "power_law"     # "power_law" | "table"
    delta2: float = 0.0
    beta: float = 0.0
    table: dict[int, float] = field(default_factory=dict)

    def __post_init__(self):
        if self.kind not in ("power_law", "table"):
            raise ValueError(f"unknown delta model kind {self.kind!r}")
        if self.kind == "power_law" and self.delta2 < 0:
            raise ValueError("delta2 must be >= 0")

    @classmethod
    def power_law(cls, delta2: float, beta: float) -> "DeltaModel":
        return cls(kind="power_law", delta2=delta2, beta=beta)

    @classmethod
    def from_table(cls, table: dict[int, float]) -> "DeltaModel":
        return cls(kind="table", table=dict(table))

    @classmethod
    def from_report(cls, report: RipReport) -> "DeltaModel":
        return cls.from_table(report.as_table())

    def delta_at(self, order: int) -> float:
        if order < 1:
            raise ValueError("order must be >= 1")
        if self.kind == "power_law":
            return self.delta2 * order ** self.beta
        try:
            return self.table[order]
        except KeyError:
            raise OrderOutOfRange(f"delta table lacks order {order}")


def omp_error_constant(model: DeltaModel, t: int) -> float:
    """The OMP bound constant C1(t).

    Undefined (raises BoundUndefined) when delta_{2t} >= 1 or when
    delta_{t+1} * (1 + sqrt(t)) >= 1; with all deltas zero it reduces to
    sqrt(t) + 3.
    """
    if t < 1:
        raise ValueError("t must be >= 1")
    d_t = model.delta_at(t)
    d_2t = model.delta_at(2 * t)
    d_t1 = model.delta_at(t + 1)
    if d_2t >= 1.0:
        raise BoundUndefined(f"delta_{2 * t} = {d_2t:.6g} >= 1")
    rt = math.sqrt(t)
    gap = 1.0 - d_t1 * (1.0 + rt)
    if gap <= 0.0:
        raise BoundUndefined(
            f"delta_{t + 1} * (1 + sqrt({t})) = {d_t1 * (1.0 + rt):.6g} >= 1"
        )
    c_prime = (
        math.sqrt(1.0 + d_t) / math.sqrt(1.0 - d_2t)
        * (rt + math.sqrt(1.0 + d_t1)) / gap
        + 2.0 / math.sqrt(1.0 - d_2t)
    )
    return math.sqrt(1.0 + d_t) * c_prime


def komp_error_constant(model: DeltaModel, t: int, k: int) -> float:
    """The K-fold pursuit bound constant C_K(t), with the supporting order
    t_k = (k - 1) t + k.

    Undefined when delta_{(k+1)t} >= 1 or delta_{t_k} * (1 + sqrt(t/k)) >= 1;
    with all deltas zero it reduces to sqrt(t/k) + 3. The k = 1 value is the
    specialization of this formula, which is close to but not identical to
    omp_error_constant (the two are derived through different supports).
    """
    if t < 1 or k < 1:
        raise ValueError("t and k must be >= 1")
    t_k = (k - 1) * t + k
    d_t = model.delta_at(t)
    d_k = model.delta_at(k)
    d_tk = model.delta_at(t_k)
    d_k1t = model.delta_at((k + 1) * t)
    if d_k1t >= 1.0:
        raise BoundUndefined(f"delta_{(k + 1) * t} = {d_k1t:.6g} >= 1")
    rtk = math.sqrt(t / k)
    gap = 1.0 - d_tk * (1.0 + rtk)
    if gap <= 0.0:
        raise BoundUndefined(
            f"delta_{t_k} * (1 + sqrt({t}/{k})) = {d_tk * (1.0 + rtk):.6g} >= 1"
        )
    c_dprime = (rtk * math.sqrt(1.0 + d_k) + math.sqrt(1.0 + d_tk)) / gap
    c_prime = (
        math.sqrt(1.0 + d_tk) / math.sqrt(1.0 - d_k1t) * c_dprime
        + 2.0 / math.sqrt(1.0 - d_k1t)
    )
    return math.sqrt(1.0 + d_t) * c_prime


@dataclass(frozen=True)
class BoundRow:
    """One K of the comparison table. comparison_value is 2 C_K + 2 for
    k >= 2 and C1 itself for the k = 1 reference row; crossover marks the
    K at which the truncated K-fold guarantee beats the OMP guarantee."""

    k: int
    constant: float | None
    comparison_value: float | None
    defined: bool
    crossover: bool


@dataclass(frozen=True)
class BoundTable:
    t: int
    rows: list[BoundRow]

    def first_crossover(self) -> int | None:
        for row in self.rows:
            if row.crossover:
                return row.k
        return None


def compare_omp_komp(
    model: DeltaModel, t: int, k_range=range(1, 21)
) -> BoundTable:
    """Tabulate C_K against the OMP constant over k_range.

    Row k >= 2 carries (C_K, 2 C_K + 2) and its crossover flag is true when
    2 C_K + 2 < C1 + 2, i.e. when 2 C_K < C1. Rows whose constants are
    undefined under the model are kept with defined=False and never flagged.
    """
    try:
        c1 = omp_error_constant(model, t)
    except BoundUndefined:
        c1 = None
    rows = []
    for k in sorted(set(int(k) for k in k_range)):
        if k == 1:
            rows.append(BoundRow(
                k=1, constant=c1, comparison_value=c1,
                defined=c1 is not None, crossover=False,
            ))
            continue
        try:
            ck = komp_error_constant(model, t, k)
        except BoundUndefined:
            rows.append(BoundRow(
                k=k, constant=None, comparison_value=None,
                defined=False, crossover=False,
            ))
            continue
        crossed = c1 is not None and 2.0 * ck < c1
        rows.append(BoundRow(
            k=k, constant=ck, comparison_value=2.0 * ck + 2.0,
            defined=True, crossover=crossed,
        ))
    return BoundTable(t=t, rows=rows)


def _check_error_terms(err2: float, err1: float, noise2: float):
    if err2 < 0 or err1 < 0 or noise2 < 0:
        raise ValueError("error norms must be >= 0")


def omp_error_bound(
    model: DeltaModel, t: int, err2: float, err1: float, noise2: float
) -> float:
    """Guaranteed ceiling on ||x - x~|| after t OMP iterations, given the
    optimal t-term tail norms err2 = ||x - x_t||, err1 = ||x - x_t||_1 and
    the noise norm."""
    _check_error_terms(err2, err1, noise2)
    c1 = omp_error_constant(model, t)
    return (1.0 + c1) * err2 + c1 / math.sqrt(t) * err1 + c1 * noise2


def komp_error_bound(
    model: DeltaModel, t: int, k: int, err2: float, err1: float, noise2: float
) -> float:
    """Ceiling on ||x - x~|| for the raw (up to k*t sparse) K-fold estimate."""
    _check_error_terms(err2, err1, noise2)
    ck = komp_error_constant(model, t, k)
    return (1.0 + ck) * err2 + ck / math.sqrt(t) * err1 + ck * noise2


def komp_truncated_error_bound(
    model: DeltaModel, t: int, k: int, err2: float, err1: float, noise2: float
) -> float:
    """Ceiling on ||x - x~_t|| for the best t-term truncation of a K-fold
    estimate: (3 + 2 C_K) err2 + (C_K/sqrt(t)) err1 + 2 noise2."""
    _check_error_terms(err2, err1, noise2)
    ck = komp_error_constant(model, t, k)
    return (3.0 + 2.0 * ck) * err2 + ck / math.sqrt(t) * err1 + 2.0 * noise2
