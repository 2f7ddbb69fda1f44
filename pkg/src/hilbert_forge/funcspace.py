"""Test functions and sequences with exact derivatives and norms.

Functions
---------
``MonomialExponential(s, b, scale)``
    ``scale * x**s * exp(-b x)``.
``IntegratedMonomialExponential(s, b, depth, scale)``
    The ``depth``-fold antiderivative from 0 of ``scale * x**s * exp(-b x)``;
    derivatives of order ``< depth`` vanish at 0 and orders ``<= depth`` are
    positive on ``(0, inf)``.
``TruncatedPower(exponent, lower, upper)``
    ``x**exponent`` on ``[lower, upper]`` and 0 elsewhere (order 0 only).

Sequences
---------
``PowerDecay``, ``Geometric``, ``Explicit`` and ``TruncatedPowerSequence``;
see :func:`lp_norm_power` for how their power sums are evaluated.
"""
from __future__ import annotations

import math
import os
from dataclasses import dataclass, field
from typing import Any, Union

import numpy as np
from scipy import special

from .errors import DomainError, ToleranceUnreachable
from .specialfn import HolderPair

__all__ = [
    "KernelParams",
    "MonomialExponential",
    "IntegratedMonomialExponential",
    "TruncatedPower",
    "TestFunction",
    "PowerDecay",
    "Geometric",
    "Explicit",
    "TruncatedPowerSequence",
    "SequenceFamily",
    "eval_derivative",
    "check_admissible",
    "lp_norm_power",
    "positivity_grid",
    "function_from_dict",
    "sequence_from_dict",
    "term_cap",
]

DEFAULT_TERM_CAP = 10**8
POSITIVITY_GRID = np.geomspace(1e-6, 1e3, 256)
GAMMA_MARGIN = 1e-9


def term_cap() -> int:
    """Evaluation/term cap, overridable through ``HILBERT_FORGE_CAP``."""
    raw = os.environ.get("HILBERT_FORGE_CAP")
    if raw:
        return int(float(raw))
    return DEFAULT_TERM_CAP


def positivity_grid() -> np.ndarray:
    return POSITIVITY_GRID.copy()


def _fmt(x: float) -> str:
    return format(float(x), ".17g")


@dataclass(frozen=True)
class KernelParams:
    """Kernel power ``lam``, weight shift ``gamma_shift`` and derivative order ``n``."""

    lam: float
    gamma_shift: float = 0.0
    n: int = 0

    def __post_init__(self):
        if int(self.n) != self.n or self.n < 0:
            raise DomainError(f"derivative order n must be a nonnegative integer, got {self.n!r}")
        if not (math.isfinite(self.lam) and self.lam > 0):
            raise DomainError(f"kernel power must be positive, got {self.lam!r}")
        if not math.isfinite(self.gamma_shift):
            raise DomainError("gamma_shift must be finite")
        object.__setattr__(self, "n", int(self.n))
        object.__setattr__(self, "lam", float(self.lam))
        object.__setattr__(self, "gamma_shift", float(self.gamma_shift))

    def gamma_interval(self, pair: HolderPair) -> tuple[float, float]:
        return (self.n - self.lam / pair.p, self.lam / pair.q - self.n)

    def violations(self, pair: HolderPair) -> list[str]:
        """Hypotheses on (lambda, gamma, n) that fail for this pair."""
        out = []
        if not self.lam > 2 * self.n:
            out.append(f"λ > 2n fails (λ={_fmt(self.lam)}, n={self.n})")
        lo, hi = self.gamma_interval(pair)
        g = self.gamma_shift
        if not (lo + GAMMA_MARGIN < g < hi - GAMMA_MARGIN):
            out.append(f"γ={_fmt(g)} outside ({_fmt(lo)}, {_fmt(hi)})")
        return out

    def describe(self) -> str:
        return f"λ={_fmt(self.lam)} γ={_fmt(self.gamma_shift)} n={self.n}"


# ---------------------------------------------------------------------------
# test functions


def _falling(s: float, k: int) -> float:
    out = 1.0
    for i in range(k):
        out *= s - i
    return out


def _monomial_exp_poly(s: float, b: float, order: int, x: np.ndarray) -> np.ndarray:
    """d^order/dx^order [x^s e^{-bx}] with the exponential factor removed."""
    total = np.zeros_like(x)
    for k in range(order + 1):
        coef = math.comb(order, k) * _falling(s, k) * (-b) ** (order - k)
        if coef == 0.0:
            continue
        power = s - k
        with np.errstate(divide="ignore"):
            if power == 0:
                term = np.ones_like(x)
            else:
                term = np.power(x, power)
        total = total + coef * term
    return total


@dataclass(frozen=True)
class MonomialExponential:
    s: float = 0.0
    b: float = 1.0
    scale: float = 1.0

    family = "MonomialExponential"
    max_order = 10

    def __post_init__(self):
        if not self.s >= 0:
            raise DomainError(f"MonomialExponential needs s >= 0, got {self.s!r}")
        if not self.b > 0:
            raise DomainError(f"MonomialExponential needs b > 0, got {self.b!r}")
        if not self.scale >= 0:
            raise DomainError(f"scale must be nonnegative, got {self.scale!r}")

    def derivative(self, order: int, x):
        x = np.asarray(x, dtype=float)
        poly = _monomial_exp_poly(self.s, self.b, order, x)
        return self.scale * np.exp(-self.b * x) * poly

    def derivative_sign(self, order: int, x):
        x = np.asarray(x, dtype=float)
        return np.sign(self.scale * _monomial_exp_poly(self.s, self.b, order, x))

    def exponent_at_zero(self, order: int) -> float:
        """Leading power of x in f^(order) as x -> 0."""
        s = self.s
        if float(s).is_integer() and s < order:
            return 0.0
        return s - order

    def growth_at_infinity(self, order: int) -> float:
        return -math.inf

    def breakpoints(self) -> tuple[float, ...]:
        return ()

    def scale_points(self) -> tuple[float, ...]:
        return (1.0 / self.b, (self.s + 1.0) / self.b, 10.0 * (self.s + 1.0) / self.b)

    def support(self) -> tuple[float, float]:
        return (0.0, math.inf)

    def to_dict(self) -> dict:
        return {"family": self.family, "s": self.s, "b": self.b, "scale": self.scale}

    def describe(self) -> str:
        return f"MonomialExponential(s={_fmt(self.s)},b={_fmt(self.b)},scale={_fmt(self.scale)})"


@dataclass(frozen=True)
class IntegratedMonomialExponential:
    s: float = 0.0
    b: float = 1.0
    depth: int = 1
    scale: float = 1.0

    family = "IntegratedMonomialExponential"

    def __post_init__(self):
        if not self.s >= 0:
            raise DomainError(f"needs s >= 0, got {self.s!r}")
        if not self.b > 0:
            raise DomainError(f"needs b > 0, got {self.b!r}")
        if int(self.depth) != self.depth or not 1 <= self.depth <= 4:
            raise DomainError(f"depth must be an integer in [1, 4], got {self.depth!r}")
        if not self.scale >= 0:
            raise DomainError(f"scale must be nonnegative, got {self.scale!r}")
        object.__setattr__(self, "depth", int(self.depth))

    @property
    def max_order(self) -> int:
        return self.depth + 6

    def _antiderivative(self, m: int, x: np.ndarray) -> np.ndarray:
        # (1/m!) ∫_0^x (x-t)^m t^s e^{-bt} dt, binomially expanded
        s, b = self.s, self.b
        total = np.zeros_like(x)
        for j in range(m + 1):
            a = s + j + 1.0
            lower = np.exp(special.gammaln(a) - a * math.log(b)) * special.gammainc(a, b * x)
            total = total + math.comb(m, j) * (-1.0) ** j * np.power(x, m - j) * lower
        return total / math.factorial(m)

    def derivative(self, order: int, x):
        x = np.asarray(x, dtype=float)
        d = self.depth
        if order < d:
            return self.scale * self._antiderivative(d - order - 1, x)
        return self.scale * np.exp(-self.b * x) * _monomial_exp_poly(self.s, self.b, order - d, x)

    def derivative_sign(self, order: int, x):
        x = np.asarray(x, dtype=float)
        if order < self.depth:
            return np.sign(self.derivative(order, x))
        return np.sign(self.scale * _monomial_exp_poly(self.s, self.b, order - self.depth, x))

    def exponent_at_zero(self, order: int) -> float:
        d = self.depth
        if order <= d:
            return self.s + d - order
        return MonomialExponential(self.s, self.b).exponent_at_zero(order - d)

    def growth_at_infinity(self, order: int) -> float:
        if order < self.depth:
            return float(self.depth - order - 1)
        return -math.inf

    def breakpoints(self) -> tuple[float, ...]:
        return ()

    def scale_points(self) -> tuple[float, ...]:
        return (1.0 / self.b, (self.s + 1.0) / self.b, 10.0 * (self.s + 1.0) / self.b)

    def support(self) -> tuple[float, float]:
        return (0.0, math.inf)

    def to_dict(self) -> dict:
        return {"family": self.family, "s": self.s, "b": self.b, "depth": self.depth, "scale": self.scale}

    def describe(self) -> str:
        return (
            f"IntegratedMonomialExponential(s={_fmt(self.s)},b={_fmt(self.b)},"
            f"depth={self.depth},scale={_fmt(self.scale)})"
        )


@dataclass(frozen=True)
class TruncatedPower:
    exponent: float
    lower: float = 1.0
    upper: float = math.inf
    scale: float = 1.0

    family = "TruncatedPower"
    max_order = 0

    def __post_init__(self):
        if not (self.lower > 0 and self.upper > self.lower):
            raise DomainError(f"need 0 < lower < upper, got [{self.lower!r}, {self.upper!r}]")
        if not math.isfinite(self.upper):
            raise DomainError("TruncatedPower needs a finite upper endpoint")
        if not self.scale >= 0:
            raise DomainError(f"scale must be nonnegative, got {self.scale!r}")

    def derivative(self, order: int, x):
        if order != 0:
            raise DomainError("TruncatedPower supports order 0 only")
        x = np.asarray(x, dtype=float)
        inside = (x >= self.lower) & (x <= self.upper)
        safe = np.where(inside, x, 1.0)
        return np.where(inside, self.scale * np.power(safe, self.exponent), 0.0)

    def derivative_sign(self, order: int, x):
        return np.sign(self.derivative(order, x))

    def exponent_at_zero(self, order: int) -> float:
        return math.inf  # vanishes identically near 0

    def growth_at_infinity(self, order: int) -> float:
        return -math.inf

    def breakpoints(self) -> tuple[float, ...]:
        return (self.lower, self.upper)

    def scale_points(self) -> tuple[float, ...]:
        return ()

    def support(self) -> tuple[float, float]:
        return (self.lower, self.upper)

    def to_dict(self) -> dict:
        return {
            "family": self.family,
            "exponent": self.exponent,
            "lower": self.lower,
            "upper": self.upper,
            "scale": self.scale,
        }

    def describe(self) -> str:
        return (
            f"TruncatedPower(exponent={_fmt(self.exponent)},lower={_fmt(self.lower)},"
            f"upper={_fmt(self.upper)},scale={_fmt(self.scale)})"
        )


TestFunction = Union[MonomialExponential, IntegratedMonomialExponential, TruncatedPower]

_FUNCTION_FAMILIES = {
    "MonomialExponential": MonomialExponential,
    "IntegratedMonomialExponential": IntegratedMonomialExponential,
    "TruncatedPower": TruncatedPower,
}


def function_from_dict(desc: dict[str, Any]) -> TestFunction:
    desc = dict(desc)
    name = desc.pop("family", None)
    if name not in _FUNCTION_FAMILIES:
        raise DomainError(f"unknown function family {name!r}")
    try:
        return _FUNCTION_FAMILIES[name](**desc)
    except TypeError as exc:
        raise DomainError(f"bad parameters for {name}: {exc}") from None


def eval_derivative(f: TestFunction, order: int, x):
    """Closed-form ``f^(order)(x)``; scalar in, scalar out."""
    if int(order) != order or order < 0 or order > f.max_order:
        raise DomainError(f"{f.family} does not support derivative order {order!r}")
    if np.any(np.asarray(x) < 0):
        raise DomainError("x must be nonnegative")
    out = f.derivative(int(order), x)
    return float(out) if np.ndim(out) == 0 else out


def check_admissible(
    f: TestFunction,
    pair: HolderPair,
    params: KernelParams,
    shifts: tuple[float, ...] | None = None,
) -> list[str]:
    """Return the hypotheses that ``f`` violates (empty list when admissible).

    Checks are (i) vanishing derivatives of order < n at 0, (ii) positivity of
    every order 0..n on :data:`POSITIVITY_GRID` (within the support), and
    (iii) finiteness of ``∫ x^w (f^(n))^p`` with ``w = p(n+1) - p*shift - λ - 1``
    for each weight shift (default ``(0, γ)``), by endpoint exponents.
    """
    n = params.n
    p = pair.p
    out: list[str] = []
    if n > f.max_order:
        out.append(f"family supports n={f.max_order} only" if f.max_order else "family supports n=0 only")
        return out
    if f.scale == 0:
        out.append("f is identically zero")
        return out

    for k in range(n):
        v = f.derivative(k, 0.0)
        if v != 0.0:
            out.append("f(0) ≠ 0" if k == 0 else f"f^({k})(0) ≠ 0")

    lo, hi = f.support()
    grid = POSITIVITY_GRID[(POSITIVITY_GRID >= lo) & (POSITIVITY_GRID <= hi)]
    for k in range(n + 1):
        sign = f.derivative_sign(k, grid)
        bad = grid[~(sign > 0)]
        if bad.size:
            name = "f" if k == 0 else f"f^({k})"
            out.append(f"{name} not positive at x={_fmt(bad[0])}")

    if shifts is None:
        shifts = (0.0, params.gamma_shift) if params.gamma_shift != 0 else (0.0,)
    sigma0 = f.exponent_at_zero(n)
    growth = f.growth_at_infinity(n)
    for shift in shifts:
        w = p * (n + 1) - p * shift - params.lam - 1.0
        if sigma0 != math.inf and not (w + p * sigma0 > -1.0):
            out.append(f"weighted integral diverges at 0 (exponent {_fmt(w + p * sigma0)} ≤ -1)")
        if growth != -math.inf and not (w + p * growth < -1.0):
            out.append(f"weighted integral diverges at ∞ (exponent {_fmt(w + p * growth)} ≥ -1)")
    return out


# ---------------------------------------------------------------------------
# sequences


def _power_tail_bracket(beta: float, m: int) -> tuple[float, float]:
    """Bracket for sum_{u > m} u^-beta, beta > 1, m >= 1 (convexity)."""
    lo = m ** (1.0 - beta) / (beta - 1.0) - 0.5 * m ** (-beta)
    hi = (m + 0.5) ** (1.0 - beta) / (beta - 1.0)
    return max(lo, 0.0), hi


def _check_start(start: int) -> int:
    if start not in (0, 1):
        raise DomainError(f"start_index must be 0 or 1, got {start!r}")
    return int(start)


@dataclass(frozen=True)
class PowerDecay:
    """``scale * u**(-alpha)`` with ``u = m - start + 1``."""

    alpha: float
    scale: float = 1.0
    start_index: int = 1

    family = "PowerDecay"

    def __post_init__(self):
        _check_start(self.start_index)
        if not self.alpha > 0:
            raise DomainError(f"PowerDecay needs alpha > 0, got {self.alpha!r}")
        if not self.scale >= 0:
            raise DomainError("scale must be nonnegative")

    @property
    def support_size(self) -> float:
        return math.inf

    def terms(self, count: int) -> np.ndarray:
        u = np.arange(1, count + 1, dtype=float)
        return self.scale * u ** (-self.alpha)

    def has_lp(self, p: float) -> bool:
        return self.scale == 0 or self.alpha * p > 1.0

    def power_tail_bound(self, p: float, count: int) -> float:
        """Upper bound on sum of a^p over terms beyond the first ``count``."""
        if self.scale == 0:
            return 0.0
        if not self.has_lp(p):
            return math.inf
        return self.scale**p * _power_tail_bracket(self.alpha * p, count)[1]

    def power_tail_bracket(self, p: float, count: int) -> tuple[float, float]:
        if self.scale == 0:
            return 0.0, 0.0
        lo, hi = _power_tail_bracket(self.alpha * p, count)
        return self.scale**p * lo, self.scale**p * hi

    def to_dict(self) -> dict:
        return {"family": self.family, "alpha": self.alpha, "scale": self.scale, "start_index": self.start_index}

    def describe(self) -> str:
        return f"PowerDecay(alpha={_fmt(self.alpha)},scale={_fmt(self.scale)},start={self.start_index})"


@dataclass(frozen=True)
class Geometric:
    """``scale * r**m`` for ``m >= start_index`` (absolute index)."""

    r: float
    scale: float = 1.0
    start_index: int = 1

    family = "Geometric"

    def __post_init__(self):
        _check_start(self.start_index)
        if not 0.0 < self.r < 1.0:
            raise DomainError(f"Geometric needs 0 < r < 1, got {self.r!r}")
        if not self.scale >= 0:
            raise DomainError("scale must be nonnegative")

    @property
    def support_size(self) -> float:
        return math.inf

    def terms(self, count: int) -> np.ndarray:
        m = np.arange(self.start_index, self.start_index + count, dtype=float)
        return self.scale * self.r**m

    def has_lp(self, p: float) -> bool:
        return True

    def power_total(self, p: float) -> float:
        rp = self.r**p
        return self.scale**p * rp**self.start_index / -math.expm1(p * math.log(self.r))

    def power_tail_bound(self, p: float, count: int) -> float:
        rp = self.r**p
        return self.scale**p * rp ** (self.start_index + count) / -math.expm1(p * math.log(self.r))

    def to_dict(self) -> dict:
        return {"family": self.family, "r": self.r, "scale": self.scale, "start_index": self.start_index}

    def describe(self) -> str:
        return f"Geometric(r={_fmt(self.r)},scale={_fmt(self.scale)},start={self.start_index})"


@dataclass(frozen=True)
class Explicit:
    """Finitely many listed terms starting at ``start_index``, zero afterwards."""

    values: tuple[float, ...] = field(default_factory=tuple)
    start_index: int = 1

    family = "Explicit"

    def __post_init__(self):
        _check_start(self.start_index)
        vals = tuple(float(v) for v in self.values)
        if any(not (math.isfinite(v) and v >= 0) for v in vals):
            raise DomainError("Explicit terms must be finite and nonnegative")
        object.__setattr__(self, "values", vals)

    @property
    def scale(self) -> float:
        return max(self.values, default=0.0)

    @property
    def support_size(self) -> int:
        return len(self.values)

    def terms(self, count: int) -> np.ndarray:
        out = np.zeros(count)
        k = min(count, len(self.values))
        out[:k] = self.values[:k]
        return out

    def has_lp(self, p: float) -> bool:
        return True

    def power_tail_bound(self, p: float, count: int) -> float:
        return float(sum(v**p for v in self.values[count:]))

    def to_dict(self) -> dict:
        return {"family": self.family, "values": list(self.values), "start_index": self.start_index}

    def describe(self) -> str:
        vals = ",".join(_fmt(v) for v in self.values)
        return f"Explicit([{vals}],start={self.start_index})"


@dataclass(frozen=True)
class TruncatedPowerSequence:
    """``scale * u**exponent`` for ``u = m - start + 1`` in ``1..N``."""

    exponent: float
    N: int
    scale: float = 1.0
    start_index: int = 1

    family = "TruncatedPower"

    def __post_init__(self):
        _check_start(self.start_index)
        if int(self.N) != self.N or self.N < 1:
            raise DomainError(f"cutoff N must be a positive integer, got {self.N!r}")
        if not self.scale >= 0:
            raise DomainError("scale must be nonnegative")
        object.__setattr__(self, "N", int(self.N))

    @property
    def support_size(self) -> int:
        return self.N

    def terms(self, count: int) -> np.ndarray:
        out = np.zeros(count)
        k = min(count, self.N)
        out[:k] = self.scale * np.arange(1, k + 1, dtype=float) ** self.exponent
        return out

    def has_lp(self, p: float) -> bool:
        return True

    def power_tail_bound(self, p: float, count: int) -> float:
        if count >= self.N:
            return 0.0
        u = np.arange(count + 1, self.N + 1, dtype=float)
        return float(math.fsum(self.scale**p * u ** (self.exponent * p)))

    def to_dict(self) -> dict:
        return {
            "family": self.family,
            "exponent": self.exponent,
            "N": self.N,
            "scale": self.scale,
            "start_index": self.start_index,
        }

    def describe(self) -> str:
        return (
            f"TruncatedPower(exponent={_fmt(self.exponent)},N={self.N},"
            f"scale={_fmt(self.scale)},start={self.start_index})"
        )


SequenceFamily = Union[PowerDecay, Geometric, Explicit, TruncatedPowerSequence]

_SEQUENCE_FAMILIES = {
    "PowerDecay": PowerDecay,
    "Geometric": Geometric,
    "Explicit": Explicit,
    "TruncatedPower": TruncatedPowerSequence,
}


def sequence_from_dict(desc: dict[str, Any]) -> SequenceFamily:
    desc = dict(desc)
    name = desc.pop("family", None)
    if name not in _SEQUENCE_FAMILIES:
        raise DomainError(f"unknown sequence family {name!r}")
    if name == "Explicit" and "values" in desc:
        desc["values"] = tuple(desc["values"])
    try:
        return _SEQUENCE_FAMILIES[name](**desc)
    except TypeError as exc:
        raise DomainError(f"bad parameters for {name}: {exc}") from None


def _rounding_bound(values: np.ndarray) -> float:
    # fsum is correctly rounded; the power evaluations contribute a few ulps each
    return 4.0 * np.finfo(float).eps * float(np.sum(values))


def lp_norm_power(seq: SequenceFamily, p: float, tol: float = 1e-12) -> tuple[float, float]:
    """``sum a_m**p`` and a bound on its absolute error (at most ``tol``).

    Geometric sums are closed form.  Power-law tails are bracketed between
    the trapezoid and midpoint integral comparisons, which is far tighter
    than the one-sided ``M**(1-beta)/(beta-1)`` estimate.
    """
    if not p > 0:
        raise DomainError(f"p must be positive, got {p!r}")
    if isinstance(seq, DropFirst):
        if math.isfinite(seq.support_size):
            body = seq.terms(int(seq.support_size)) ** p
            return math.fsum(body), _rounding_bound(body)
        value, err = lp_norm_power(seq.base, p, tol)
        head = float(seq.base.terms(1)[0]) ** p
        return max(value - head, 0.0), err + 4.0 * np.finfo(float).eps * value
    if isinstance(seq, Geometric):
        value = seq.power_total(p)
        return value, 8.0 * np.finfo(float).eps * value
    if isinstance(seq, (Explicit, TruncatedPowerSequence)):
        body = seq.terms(seq.support_size) ** p
        return math.fsum(body), _rounding_bound(body)
    if isinstance(seq, PowerDecay):
        if seq.scale == 0:
            return 0.0, 0.0
        if not seq.has_lp(p):
            raise DomainError(f"PowerDecay(alpha={seq.alpha}) is not p-summable for p={p}")
        cap = term_cap()
        m = 64
        while True:
            lo, hi = seq.power_tail_bracket(p, m)
            if 0.5 * (hi - lo) <= 0.5 * tol:
                break
            m *= 2
            if m > cap:
                raise ToleranceUnreachable(
                    f"power sum of {seq.describe()} needs more than {cap} terms for tol={tol:g}"
                )
        body = seq.terms(m) ** p
        partial = math.fsum(body)
        err = 0.5 * (hi - lo) + _rounding_bound(body)
        if err > tol:
            raise ToleranceUnreachable(f"rounding alone exceeds tol={tol:g}")
        return partial + 0.5 * (lo + hi), err
    raise DomainError(f"unsupported sequence {seq!r}")


@dataclass(frozen=True)
class DropFirst:
    """View of a start-0 sequence with its index-0 term replaced by 0."""

    base: SequenceFamily

    family = "DropFirst"

    @property
    def start_index(self) -> int:
        return self.base.start_index

    @property
    def scale(self) -> float:
        return self.base.scale

    @property
    def support_size(self):
        return self.base.support_size

    def terms(self, count: int) -> np.ndarray:
        out = np.array(self.base.terms(count), dtype=float)
        if count:
            out[0] = 0.0
        return out

    def has_lp(self, p: float) -> bool:
        return self.base.has_lp(p)

    def power_tail_bound(self, p: float, count: int) -> float:
        if count == 0:
            return self.base.power_tail_bound(p, 1)
        return self.base.power_tail_bound(p, count)

    def describe(self) -> str:
        return f"DropFirst({self.base.describe()})"


def first_term(seq: SequenceFamily) -> float:
    return float(seq.terms(1)[0])
