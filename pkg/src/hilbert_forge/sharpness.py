"""Near-extremal families for the classical constant π/sin(π/p).

Integral mode uses ``f(x) = x^(-1/p)`` and ``g(y) = y^(-1/q)`` on ``[1, T]``,
so both norm powers equal ``ln T``; discrete mode uses ``a_m = m^(-1/p)``,
``b_n = n^(-1/q)`` for ``m, n <= N``.  The ratio LHS/RHS stays below 1 and
creeps up to 1 like ``1 - c/ln T``.
"""
from __future__ import annotations

import csv
import io
import math
from dataclasses import dataclass
from typing import Iterable, TextIO

import numpy as np

from .errors import DomainError, ToleranceUnreachable
from .funcspace import TruncatedPower, TruncatedPowerSequence
from .quadrature import integrate_kernel_double
from .series import diagonal_cap, double_sum_kernel
from .specialfn import HolderPair, hilbert_constant

__all__ = [
    "ProbeResult",
    "probe_integral",
    "probe_discrete",
    "extremal_ratio_integral",
    "extremal_ratio_discrete",
    "write_probe_csv",
    "CSV_COLUMNS",
]

CSV_COLUMNS = ("probe", "lhs", "lhs_error", "rhs", "rhs_error", "ratio")
_EPS = np.finfo(float).eps


@dataclass(frozen=True)
class ProbeResult:
    probe: float
    lhs: float
    lhs_error: float
    rhs: float
    rhs_error: float

    @property
    def ratio(self) -> float:
        return self.lhs / self.rhs

    @property
    def ratio_error(self) -> float:
        return self.ratio * (self.lhs_error / self.lhs + self.rhs_error / self.rhs)

    def row(self) -> tuple:
        return (self.probe, self.lhs, self.lhs_error, self.rhs, self.rhs_error, self.ratio)


def probe_integral(pair: HolderPair, T: float, tol: float = 1e-10) -> ProbeResult:
    if not T > 1:
        raise DomainError(f"truncation T must exceed 1, got {T!r}")
    f = TruncatedPower(-1.0 / pair.p, 1.0, float(T))
    g = TruncatedPower(-1.0 / pair.q, 1.0, float(T))
    res = integrate_kernel_double(f, g, 1.0, tol=0.0, rel_tol=tol)
    log_t = math.log(T)
    # ∫_1^T x^-1 dx = ln T for both factors
    rhs = hilbert_constant(pair) * log_t
    return ProbeResult(float(T), res.value, res.error_bound, rhs, 4.0 * _EPS * rhs)


def probe_discrete(pair: HolderPair, N: int, tol: float = 1e-12) -> ProbeResult:
    if int(N) != N or N < 2:
        raise DomainError(f"cutoff N must be an integer >= 2, got {N!r}")
    N = int(N)
    if N > diagonal_cap():
        raise ToleranceUnreachable(f"N={N} exceeds the term cap {diagonal_cap()}")
    a = TruncatedPowerSequence(-1.0 / pair.p, N)
    b = TruncatedPowerSequence(-1.0 / pair.q, N)
    lhs, lhs_err = double_sum_kernel(a, b, 0, tol)
    harmonic = math.fsum(1.0 / np.arange(1, N + 1, dtype=float))
    rhs = hilbert_constant(pair) * harmonic
    return ProbeResult(float(N), lhs, lhs_err, rhs, 4.0 * _EPS * rhs * math.log2(N + 1))


def extremal_ratio_integral(pair: HolderPair, T: float, tol: float = 1e-10) -> float:
    """LHS/RHS of the integral inequality on the truncated power family."""
    return probe_integral(pair, T, tol).ratio


def extremal_ratio_discrete(pair: HolderPair, N: int, tol: float = 1e-12) -> float:
    """LHS/RHS of the discrete inequality on the truncated power sequences."""
    return probe_discrete(pair, N, tol).ratio


def write_probe_csv(rows: Iterable[ProbeResult], out: TextIO | None = None) -> str:
    """Write the probe table (header row first) and return it as text."""
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(CSV_COLUMNS)
    for r in rows:
        writer.writerow([format(float(v), ".17g") for v in r.row()])
    text = buf.getvalue()
    if out is not None:
        out.write(text)
    return text


def is_monotone(results: list[ProbeResult]) -> bool:
    """Ratios strictly increase with the probe and stay inside (0, 1)."""
    ordered = sorted(results, key=lambda r: r.probe)
    inside = all(0.0 < r.ratio - r.ratio_error and r.ratio + r.ratio_error < 1.0 for r in ordered)
    rising = all(b.ratio - b.ratio_error > a.ratio + a.ratio_error for a, b in zip(ordered, ordered[1:]))
    return inside and rising
