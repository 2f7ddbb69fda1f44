"""Gamma function and the constants appearing on the right-hand sides.

Gamma is evaluated with the g=7, n=9 Lanczos sum for x >= 1/2 and the
reflection formula below that.  The bound constants are assembled in log
space so that large kernel powers do not overflow intermediate values.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import TYPE_CHECKING

from .errors import DomainError

if TYPE_CHECKING:  # pragma: no cover
    from .funcspace import KernelParams

__all__ = [
    "HolderPair",
    "BoundConstants",
    "gamma",
    "log_gamma",
    "hilbert_constant",
    "bound_constants",
    "gamma_arguments",
]

_LANCZOS_G = 7.0
_LANCZOS_COEF = (
    0.99999999999980993,
    676.5203681218851,
    -1259.1392167224028,
    771.32342877765313,
    -176.61502916214059,
    12.507343278686905,
    -0.13857109526572012,
    9.9843695780195716e-6,
    1.5056327351493116e-7,
)
_HALF_LOG_TWO_PI = 0.5 * math.log(2.0 * math.pi)
_GAMMA_MAX_ARG = 171.6243769563027  # Gamma(x) > DBL_MAX beyond this


@dataclass(frozen=True)
class HolderPair:
    """Conjugate exponents; ``q`` is derived as ``p / (p - 1)`` on construction."""

    p: float
    q: float = field(init=False)

    def __post_init__(self):
        p = float(self.p)
        if not math.isfinite(p) or p <= 1.0:
            raise DomainError(f"exponent p must satisfy p > 1, got {self.p!r}")
        object.__setattr__(self, "p", p)
        object.__setattr__(self, "q", p / (p - 1.0))

    def swapped(self) -> "HolderPair":
        """The pair (q, p) with both stored values exchanged, not recomputed."""
        out = object.__new__(HolderPair)
        object.__setattr__(out, "p", self.q)
        object.__setattr__(out, "q", self.p)
        return out


@dataclass(frozen=True)
class BoundConstants:
    C: float
    C_prime: float


def _lanczos_sum(z: float) -> float:
    # z = x - 1
    acc = _LANCZOS_COEF[0]
    for i in range(1, len(_LANCZOS_COEF)):
        acc += _LANCZOS_COEF[i] / (z + i)
    return acc


def gamma(x: float) -> float:
    """Gamma function for real ``x > 0``.

    Raises ``DomainError`` for ``x <= 0`` and ``OverflowError`` when the
    result is not representable as a double.
    """
    x = float(x)
    if not x > 0.0:
        raise DomainError(f"gamma requires x > 0, got {x!r}")
    if x > _GAMMA_MAX_ARG:
        raise OverflowError(f"gamma({x}) exceeds the double range")
    if x < 0.5:
        return math.pi / (math.sin(math.pi * x) * gamma(1.0 - x))
    z = x - 1.0
    t = z + _LANCZOS_G + 0.5
    # split the power so t**(z+0.5) cannot overflow before exp(-t) is applied
    half = t ** (0.5 * (z + 0.5))
    value = math.sqrt(2.0 * math.pi) * half * math.exp(-t) * half * _lanczos_sum(z)
    if math.isinf(value):
        raise OverflowError(f"gamma({x}) exceeds the double range")
    return value


def log_gamma(x: float) -> float:
    """Natural log of Gamma for real ``x > 0``."""
    x = float(x)
    if not x > 0.0:
        raise DomainError(f"log_gamma requires x > 0, got {x!r}")
    if x < 0.5:
        # Gamma(x) Gamma(1-x) = pi / sin(pi x), sin(pi x) > 0 on (0, 1/2)
        return math.log(math.pi / math.sin(math.pi * x)) - log_gamma(1.0 - x)
    if x == 1.0 or x == 2.0:
        return 0.0
    z = x - 1.0
    t = z + _LANCZOS_G + 0.5
    return _HALF_LOG_TWO_PI + (z + 0.5) * math.log(t) - t + math.log(_lanczos_sum(z))


def hilbert_constant(pair: HolderPair) -> float:
    """pi / sin(pi/p), the classical constant; symmetric under p <-> q."""
    # min(1/p, 1/q) makes the value bitwise symmetric in the pair
    a = min(1.0 / pair.p, 1.0 / pair.q)
    return math.pi / math.sin(math.pi * a)


def gamma_arguments(pair: HolderPair, lam: float, n: int, gamma_shift: float) -> dict[str, float]:
    """The four Gamma arguments of C and C', keyed by a readable label."""
    return {
        "λ/p − n": lam / pair.p - n,
        "λ/q − n": lam / pair.q - n,
        "λ/p − γ − n": lam / pair.p - gamma_shift - n,
        "λ/q − γ − n": lam / pair.q - gamma_shift - n,
    }


def _check_positive(args: dict[str, float]) -> None:
    for label, value in args.items():
        if not value > 0.0:
            raise DomainError(f"Gamma argument {label} = {value:.17g} not positive")


def bound_constants(pair: HolderPair, params: "KernelParams") -> BoundConstants:
    """C and C' for the weighted kernel inequalities.

    Every Gamma argument must be strictly positive; the first one that is
    not is named in the raised ``DomainError``.
    """
    args = gamma_arguments(pair, params.lam, params.n, params.gamma_shift)
    _check_positive(args)
    lg_lam = log_gamma(params.lam)
    vals = list(args.values())
    log_c = log_gamma(vals[0]) + log_gamma(vals[1]) - lg_lam
    log_cp = log_gamma(vals[2]) + log_gamma(vals[3]) - lg_lam
    c = math.exp(log_c)
    c_prime = c if params.gamma_shift == 0 else math.exp(log_cp)
    return BoundConstants(C=c, C_prime=c_prime)
