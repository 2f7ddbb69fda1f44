"""Double series with the kernel 1/(m + n + offset).

The sum is regrouped along diagonals ``m + n = const``: the kernel is
constant there, so the truncated square reduces to one convolution of the
two term arrays.  The part outside the square is bounded by the smaller of

* ``sup kernel * (tail l1 mass) * (total l1 mass)`` when both are summable;
* ``π/sin(π/p) * ||tail||_p * ||other||_q`` over a few conjugate pairs
  (the classical discrete inequality applied to the truncated sequences).
"""
from __future__ import annotations

import math

import numpy as np
from scipy import signal

from .errors import DomainError, IndexMismatch, ToleranceUnreachable
from .funcspace import SequenceFamily, lp_norm_power, term_cap
from .specialfn import HolderPair, hilbert_constant

__all__ = ["double_sum_kernel", "diagonal_cap", "DEFAULT_DIAGONAL_CAP"]

DEFAULT_DIAGONAL_CAP = 2**22
_EPS = np.finfo(float).eps
_TINY = np.finfo(float).smallest_subnormal
_CANDIDATE_P = (1.1, 1.25, 1.5, 2.0, 3.0, 5.0, 10.0)
_DIRECT_LIMIT = 2048
_HEAD = 64


def diagonal_cap() -> int:
    return min(DEFAULT_DIAGONAL_CAP, term_cap())


def _power_total_bound(seq: SequenceFamily, p: float, head: np.ndarray) -> float:
    """Upper bound on the full p-power sum from the leading terms and the tail bound."""
    k = len(head)
    return math.fsum(head**p) * (1 + 4 * _EPS) + seq.power_tail_bound(p, k)


def _region_bound(tail_seq, other_seq, other_head, count, offset, hint):
    """Bound for terms whose first index lies beyond position ``count``."""
    best = math.inf
    start = tail_seq.start_index
    if tail_seq.has_lp(1.0) and other_seq.has_lp(1.0):
        tail_mass = tail_seq.power_tail_bound(1.0, count)
        other_mass = _power_total_bound(other_seq, 1.0, other_head)
        sup_kernel = 1.0 / (count + 2 * start + offset)
        best = min(best, sup_kernel * tail_mass * other_mass)
    candidates = ([hint] if hint else []) + list(_CANDIDATE_P)
    for p in candidates:
        q = p / (p - 1.0)
        if not (tail_seq.has_lp(p) and other_seq.has_lp(q)):
            continue
        tail_p = tail_seq.power_tail_bound(p, count)
        other_q = _power_total_bound(other_seq, q, other_head)
        bound = hilbert_constant(HolderPair(p)) * tail_p ** (1.0 / p) * other_q ** (1.0 / q)
        best = min(best, bound)
    return best


def _tail(a, b, ha, hb, count, offset, hint) -> float:
    return _region_bound(a, b, hb, count, offset, hint) + _region_bound(b, a, ha, count, offset, hint)


def _convolve(x: np.ndarray, y: np.ndarray) -> np.ndarray:
    if len(x) <= _DIRECT_LIMIT:
        return np.convolve(x, y)
    return signal.fftconvolve(x, y)


def _canonical(a: SequenceFamily, b: SequenceFamily):
    ka, kb = a.describe(), b.describe()
    return (b, a) if kb < ka else (a, b)


def double_sum_kernel(
    a: SequenceFamily,
    b: SequenceFamily,
    offset: int,
    tol: float = 1e-10,
    pair: HolderPair | None = None,
) -> tuple[float, float]:
    """``Σ_m Σ_n a_m b_n / (m + n + offset)`` and an absolute error bound.

    ``offset = 0`` sums from index 1, ``offset = 1`` from index 0; both
    sequences must declare the matching ``start_index``.  ``pair`` is an
    optional hint for the tail bound (any conjugate pair for which the
    truncated sequences have finite norms is valid).
    """
    if offset not in (0, 1):
        raise DomainError(f"offset must be 0 or 1, got {offset!r}")
    need = 1 if offset == 0 else 0
    for seq in (a, b):
        if seq.start_index != need:
            raise IndexMismatch(f"offset {offset} needs start_index {need}, got {seq.describe()}")
    if a.scale == 0 or b.scale == 0:
        return 0.0, 0.0
    a, b = _canonical(a, b)
    hint = pair.p if pair is not None else None

    finite = [s.support_size for s in (a, b) if math.isfinite(s.support_size)]
    if len(finite) == 2:
        count = max(finite)
        ta, tb = a.terms(count), b.terms(count)
        tail = 0.0
    else:
        ha, hb = a.terms(_HEAD), b.terms(_HEAD)
        cap = diagonal_cap()
        tail = _tail(a, b, ha, hb, cap, offset, hint)
        if tail > 0.5 * tol:
            raise ToleranceUnreachable(
                f"double sum of {a.describe()} and {b.describe()} needs more than {cap} "
                f"indices per axis for tol={tol:g} (tail bound {tail:.3g} at the cap)"
            )
        count = max([256, *finite])
        while count < cap:
            tail = _tail(a, b, ha, hb, count, offset, hint)
            if tail <= 0.5 * tol:
                break
            count *= 2
        count = min(count, cap)
        tail = _tail(a, b, ha, hb, count, offset, hint)
        ta, tb = a.terms(count), b.terms(count)

    conv = _convolve(ta, tb)
    denom = np.arange(len(conv), dtype=float) + 2 * a.start_index + offset
    body = conv / denom
    value = math.fsum(body)
    rounding = 10.0 * _EPS * math.log2(2.0 * len(conv)) * float(np.sum(ta)) * float(np.sum(tb)) / denom[0]
    # products that fall into the subnormal range lose relative accuracy
    underflow = 4.0 * len(ta) * len(tb) * _TINY
    err = tail + rounding + underflow
    return float(value), float(err)


def power_sum(seq: SequenceFamily, p: float, tol: float) -> tuple[float, float]:
    """Thin alias kept next to the double sums for the verifiers."""
    return lp_norm_power(seq, p, tol)
