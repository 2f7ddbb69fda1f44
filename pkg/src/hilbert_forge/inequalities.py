"""Verifiers: evaluate both sides of each inequality with error budgets.

Every verifier returns a :class:`VerificationReport` normalised so that the
inequality asserts ``lhs <= rhs``.  Tolerances passed to verifiers are
relative; double integrals and double series are driven to ``tol`` times
the right-hand side, which is the scale the verdict is decided on.
"""
from __future__ import annotations

import enum
import math
import time
from dataclasses import dataclass, field
from typing import Sequence

import numpy as np

from .errors import DivergenceDetected, DomainError, IndexMismatch, ToleranceUnreachable
from .funcspace import (
    DropFirst,
    Explicit,
    KernelParams,
    SequenceFamily,
    TestFunction,
    check_admissible,
    first_term,
    lp_norm_power,
)
from .quadrature import QuadResult, integrate_kernel_double, integrate_semi_infinite
from .series import double_sum_kernel
from .specialfn import HolderPair, bound_constants, gamma_arguments, hilbert_constant, log_gamma

__all__ = [
    "Verdict",
    "VerificationReport",
    "SumDiscreteInstance",
    "SumIntegralInstance",
    "INEQUALITY_IDS",
    "verify_hilbert_integral",
    "verify_hilbert_discrete",
    "verify_lemma_offset_discrete",
    "verify_sum_discrete",
    "verify_weighted_integral",
    "verify_sum_integral",
    "check_superadditivity",
    "weighted_norm_power",
    "lp_function_power",
]

REPORT_VERSION = 1
INEQUALITY_IDS = (
    "hilbert_integral",
    "hilbert_discrete",
    "lemma_2_2",
    "lemma_2_3",
    "lemma_2_4",
    "thm_2_1",
    "thm_2_2",
    "lemma_2_1",
)
_EPS = np.finfo(float).eps


class Verdict(str, enum.Enum):
    HOLDS = "HOLDS"
    HOLDS_WITHIN_ERROR = "HOLDS_WITHIN_ERROR"
    VIOLATED = "VIOLATED"
    INADMISSIBLE = "INADMISSIBLE"


@dataclass
class VerificationReport:
    inequality_id: str
    lhs: float
    lhs_error: float
    rhs: float
    rhs_error: float
    ratio: float
    verdict: Verdict
    instance_descriptor: str
    wall_time_ms: float = 0.0
    details: dict = field(default_factory=dict, repr=False, compare=False)

    def to_dict(self) -> dict:
        return {
            "version": REPORT_VERSION,
            "inequality_id": self.inequality_id,
            "instance_descriptor": self.instance_descriptor,
            "lhs": self.lhs,
            "lhs_error": self.lhs_error,
            "rhs": self.rhs,
            "rhs_error": self.rhs_error,
            "ratio": self.ratio,
            "verdict": self.verdict.value,
            "wall_time_ms": self.wall_time_ms,
        }

    @property
    def holds(self) -> bool:
        return self.verdict in (Verdict.HOLDS, Verdict.HOLDS_WITHIN_ERROR)


def classify(lhs: float, lhs_error: float, rhs: float, rhs_error: float) -> Verdict:
    if lhs + lhs_error <= rhs - rhs_error:
        return Verdict.HOLDS
    if lhs - lhs_error > rhs + rhs_error:
        return Verdict.VIOLATED
    return Verdict.HOLDS_WITHIN_ERROR


def _report(ident, lhs, lhs_err, rhs, rhs_err, descriptor, started, details=None) -> VerificationReport:
    ratio = lhs / rhs if rhs > 0 else math.nan
    return VerificationReport(
        inequality_id=ident,
        lhs=float(lhs),
        lhs_error=float(lhs_err),
        rhs=float(rhs),
        rhs_error=float(rhs_err),
        ratio=float(ratio),
        verdict=classify(lhs, lhs_err, rhs, rhs_err),
        instance_descriptor=descriptor,
        wall_time_ms=1000.0 * (time.perf_counter() - started),
        details=details or {},
    )


def _inadmissible(ident, descriptor, reasons, started) -> VerificationReport:
    text = descriptor + " | inadmissible: " + "; ".join(reasons)
    return VerificationReport(
        inequality_id=ident,
        lhs=math.nan,
        lhs_error=math.nan,
        rhs=math.nan,
        rhs_error=math.nan,
        ratio=math.nan,
        verdict=Verdict.INADMISSIBLE,
        instance_descriptor=text,
        wall_time_ms=1000.0 * (time.perf_counter() - started),
        details={"reasons": list(reasons)},
    )


def _fmt(x: float) -> str:
    return format(float(x), ".17g")


def _product_rhs(const, a, da, b, db, p, q):
    """``const * a^(1/p) * b^(1/q)`` with first-order error propagation."""
    value = const * a ** (1.0 / p) * b ** (1.0 / q)
    err = value * (da / (p * a) + db / (q * b)) + 4.0 * _EPS * value
    return value, err


# ---------------------------------------------------------------------------
# norms of functions


def _points(f: TestFunction) -> tuple[float, ...]:
    return tuple(f.breakpoints()) + tuple(f.scale_points())


def lp_function_power(f: TestFunction, p: float, tol: float = 1e-10) -> QuadResult:
    """``∫_0^∞ f(x)^p dx`` to relative tolerance ``tol``."""
    if f.scale == 0:
        return QuadResult(0.0, 0.0, 1, True)
    sigma = f.exponent_at_zero(0)
    growth = f.growth_at_infinity(0)
    if sigma != math.inf and not p * sigma > -1:
        raise DivergenceDetected("∫ f^p diverges at 0")
    if growth != -math.inf and not p * growth < -1:
        raise DivergenceDetected("∫ f^p diverges at ∞")
    return integrate_semi_infinite(lambda x: np.abs(f.derivative(0, x)) ** p, tol=0.0, rel_tol=tol, points=_points(f))


def weighted_norm_power(f: TestFunction, p: float, weight_exp: float, order: int, tol: float = 1e-10) -> QuadResult:
    """``∫_0^∞ x^weight_exp |f^(order)(x)|^p dx`` to relative tolerance ``tol``."""
    if f.scale == 0:
        return QuadResult(0.0, 0.0, 1, True)
    sigma = f.exponent_at_zero(order)
    growth = f.growth_at_infinity(order)
    if sigma != math.inf and not weight_exp + p * sigma > -1:
        raise DivergenceDetected("weighted integral diverges at 0")
    if growth != -math.inf and not weight_exp + p * growth < -1:
        raise DivergenceDetected("weighted integral diverges at ∞")

    def integrand(x):
        return x**weight_exp * np.abs(f.derivative(order, x)) ** p

    return integrate_semi_infinite(integrand, tol=0.0, rel_tol=tol, points=_points(f))


def _lp_admissible(f: TestFunction, p: float, name: str) -> list[str]:
    out = []
    if f.scale == 0:
        return [f"{name} has zero norm"]
    sigma = f.exponent_at_zero(0)
    growth = f.growth_at_infinity(0)
    if sigma != math.inf and not p * sigma > -1:
        out.append(f"∫{name}^p diverges at 0")
    if growth != -math.inf and not p * growth < -1:
        out.append(f"∫{name}^p diverges at ∞")
    lo, hi = f.support()
    grid = np.geomspace(max(lo, 1e-6), min(hi, 1e3), 256)
    if np.any(f.derivative_sign(0, grid) < 0):
        out.append(f"{name} takes negative values")
    return out


# ---------------------------------------------------------------------------
# integral inequalities


def verify_hilbert_integral(f: TestFunction, g: TestFunction, pair: HolderPair, tol: float = 1e-8) -> VerificationReport:
    """``∫∫ f(x)g(y)/(x+y) ≤ π/sin(π/p) ‖f‖_p ‖g‖_q``."""
    started = time.perf_counter()
    ident = "hilbert_integral"
    desc = f"p={_fmt(pair.p)} f={f.describe()} g={g.describe()}"
    reasons = _lp_admissible(f, pair.p, "f") + _lp_admissible(g, pair.q, "g")
    if reasons:
        return _inadmissible(ident, desc, reasons, started)
    A = lp_function_power(f, pair.p, tol)
    B = lp_function_power(g, pair.q, tol)
    if A.value <= 0 or B.value <= 0:
        return _inadmissible(ident, desc, ["zero norm"], started)
    rhs, rhs_err = _product_rhs(hilbert_constant(pair), A.value, A.error_bound, B.value, B.error_bound, pair.p, pair.q)
    try:
        lhs = integrate_kernel_double(f, g, 1.0, tol=0.0, rel_tol=tol)
    except DivergenceDetected as exc:
        return _inadmissible(ident, desc, [str(exc)], started)
    details = {"norm_p": A, "norm_q": B, "kernel": lhs, "converged": A.converged and B.converged and lhs.converged}
    return _report(ident, lhs.value, lhs.error_bound, rhs, rhs_err, desc, started, details)


def _weights(pair: HolderPair, params: KernelParams, shift: float) -> tuple[float, float]:
    """Weight exponents for f (p side) and g (q side); symmetric in the shift."""
    n, lam = params.n, params.lam
    return (
        pair.p * (n + 1) - pair.p * shift - lam - 1.0,
        pair.q * (n + 1) - pair.q * shift - lam - 1.0,
    )


def _constant_violations(pair: HolderPair, params: KernelParams, labels: Sequence[str]) -> list[str]:
    args = gamma_arguments(pair, params.lam, params.n, params.gamma_shift)
    return [f"Gamma argument {k} = {_fmt(args[k])} not positive" for k in labels if not args[k] > 0]


def verify_weighted_integral(
    f: TestFunction,
    g: TestFunction,
    pair: HolderPair,
    params: KernelParams,
    variant: str = "C",
    tol: float = 1e-8,
) -> VerificationReport:
    """Weighted kernel inequality with constant ``C`` or ``C'``.

    Variant ``C`` uses weights ``x^(p(n+1)-λ-1)`` and ``y^(q(n+1)-λ-1)``;
    variant ``C_prime`` uses ``x^(p(n+1)-pγ-λ-1)`` and ``y^(q(n+1)-qγ-λ-1)``.
    The descriptor records the printed y-weight ``q(n+1)-pγ-λ-1`` as well.

    ``C_prime_balanced`` is a diagnostic: weights ``x^(p(n+1)-pγ-λ-1)`` and
    ``y^(q(n+1)+qγ-λ-1)`` with ``Γ(λ/p+γ-n)Γ(λ/q-γ-n)/Γ(λ)``.  Unlike the
    ``C_prime`` form it is invariant under ``f(x) -> f(tx), g(y) -> g(ty)``.
    """
    started = time.perf_counter()
    if variant not in ("C", "C_prime", "C_prime_balanced"):
        raise DomainError(f"variant must be 'C', 'C_prime' or 'C_prime_balanced', got {variant!r}")
    if variant == "C_prime_balanced":
        return _verify_balanced(f, g, pair, params, tol, started)
    ident = "lemma_2_3" if variant == "C" else "lemma_2_4"
    n = params.n
    desc = f"p={_fmt(pair.p)} {params.describe()} f={f.describe()} g={g.describe()}"
    if variant == "C":
        reasons = _constant_violations(pair, params, ("λ/p − n", "λ/q − n"))
        shift = 0.0
    else:
        desc += " | y-weight as printed: q(n+1)-pγ-λ-1; evaluated: q(n+1)-qγ-λ-1"
        reasons = params.violations(pair) + _constant_violations(pair, params, ("λ/p − γ − n", "λ/q − γ − n"))
        shift = params.gamma_shift
    if reasons:
        return _inadmissible(ident, desc, reasons, started)
    reasons = [f"f: {r}" for r in check_admissible(f, pair, params, shifts=(shift,))]
    reasons += [f"g: {r}" for r in check_admissible(g, pair.swapped(), params, shifts=(shift,))]
    if reasons:
        return _inadmissible(ident, desc, reasons, started)

    if variant == "C":
        const = bound_constants(pair, KernelParams(params.lam, 0.0, n)).C
    else:
        # only the shifted Gamma arguments enter C'; C itself may be undefined here
        args = gamma_arguments(pair, params.lam, n, params.gamma_shift)
        const = math.exp(log_gamma(args["λ/p − γ − n"]) + log_gamma(args["λ/q − γ − n"]) - log_gamma(params.lam))
    wp, wq = _weights(pair, params, shift)
    try:
        A = weighted_norm_power(f, pair.p, wp, n, tol)
        B = weighted_norm_power(g, pair.q, wq, n, tol)
        if A.value <= 0 or B.value <= 0:
            return _inadmissible(ident, desc, ["zero weighted norm"], started)
        rhs, rhs_err = _product_rhs(const, A.value, A.error_bound, B.value, B.error_bound, pair.p, pair.q)
        lhs = integrate_kernel_double(f, g, params.lam, tol=0.0, rel_tol=tol)
    except DivergenceDetected as exc:
        return _inadmissible(ident, desc, [str(exc)], started)
    details = {"constant": const, "norm_p": A, "norm_q": B, "kernel": lhs}
    return _report(ident, lhs.value, lhs.error_bound, rhs, rhs_err, desc, started, details)


def _verify_balanced(f, g, pair, params, tol, started) -> VerificationReport:
    ident = "lemma_2_4"
    n, gam = params.n, params.gamma_shift
    desc = f"p={_fmt(pair.p)} {params.describe()} f={f.describe()} g={g.describe()} | balanced weights"
    a1 = params.lam / pair.p + gam - n
    a2 = params.lam / pair.q - gam - n
    reasons = params.violations(pair)
    reasons += [f"Gamma argument {k} = {_fmt(v)} not positive" for k, v in (("λ/p + γ − n", a1), ("λ/q − γ − n", a2)) if not v > 0]
    if reasons:
        return _inadmissible(ident, desc, reasons, started)
    reasons = [f"f: {r}" for r in check_admissible(f, pair, params, shifts=(gam,))]
    reasons += [f"g: {r}" for r in check_admissible(g, pair.swapped(), params, shifts=(-gam,))]
    if reasons:
        return _inadmissible(ident, desc, reasons, started)
    const = math.exp(log_gamma(a1) + log_gamma(a2) - log_gamma(params.lam))
    wp = pair.p * (n + 1) - pair.p * gam - params.lam - 1.0
    wq = pair.q * (n + 1) + pair.q * gam - params.lam - 1.0
    try:
        A = weighted_norm_power(f, pair.p, wp, n, tol)
        B = weighted_norm_power(g, pair.q, wq, n, tol)
        rhs, rhs_err = _product_rhs(const, A.value, A.error_bound, B.value, B.error_bound, pair.p, pair.q)
        lhs = integrate_kernel_double(f, g, params.lam, tol=0.0, rel_tol=tol)
    except DivergenceDetected as exc:
        return _inadmissible(ident, desc, [str(exc)], started)
    return _report(ident, lhs.value, lhs.error_bound, rhs, rhs_err, desc, started, {"constant": const})


@dataclass(frozen=True)
class SumIntegralInstance:
    f: TestFunction
    g: TestFunction
    pair: HolderPair
    params: KernelParams
    m: int = 1

    def __post_init__(self):
        if int(self.m) != self.m or self.m < 1:
            raise DomainError(f"multiplicity m must be a positive integer, got {self.m!r}")


def verify_sum_integral(inst: SumIntegralInstance, tol: float = 1e-8) -> VerificationReport:
    """The combined bound with multiplicity ``m``; ``m = 1`` is the two-constant form.

    ``details`` carries both single-constant right-hand sides so callers can
    check ``(m+1) RHS_m >= RHS_C + m RHS_C'``.
    """
    started = time.perf_counter()
    ident = "thm_2_2"
    f, g, pair, params, m = inst.f, inst.g, inst.pair, inst.params, inst.m
    p, q, n, gam = pair.p, pair.q, params.n, params.gamma_shift
    desc = (
        f"p={_fmt(p)} {params.describe()} m={m} f={f.describe()} g={g.describe()}"
        " | g-power as printed: (g^(n))^p; evaluated: (g^(n))^q"
    )
    reasons = params.violations(pair) + _constant_violations(pair, params, tuple(gamma_arguments(pair, 1, 0, 0)))
    if reasons:
        return _inadmissible(ident, desc, reasons, started)
    reasons = [f"f: {r}" for r in check_admissible(f, pair, params, shifts=(0.0, gam))]
    reasons += [f"g: {r}" for r in check_admissible(g, pair.swapped(), params, shifts=(0.0, gam))]
    if reasons:
        return _inadmissible(ident, desc, reasons, started)
    consts = bound_constants(pair, params)
    C, Cp = consts.C, consts.C_prime
    wp0, wq0 = _weights(pair, params, 0.0)
    wpg, wqg = _weights(pair, params, gam)
    try:
        I0 = weighted_norm_power(f, p, wp0, n, tol)
        J0 = weighted_norm_power(g, q, wq0, n, tol)
        if gam == 0:
            Ig, Jg = I0, J0
        else:
            Ig = weighted_norm_power(f, p, wpg, n, tol)
            Jg = weighted_norm_power(g, q, wqg, n, tol)
        lhs = integrate_kernel_double(f, g, params.lam, tol=0.0, rel_tol=tol)
    except DivergenceDetected as exc:
        return _inadmissible(ident, desc, [str(exc)], started)
    if min(I0.value, J0.value, Ig.value, Jg.value) <= 0:
        return _inadmissible(ident, desc, ["zero weighted norm"], started)

    A = C * I0.value + m * Cp * Ig.value
    dA = C * I0.error_bound + m * Cp * Ig.error_bound
    B = C * J0.value + m * Cp * Jg.value
    dB = C * J0.error_bound + m * Cp * Jg.error_bound
    rhs, rhs_err = _product_rhs(1.0 / (m + 1), A, dA, B, dB, p, q)
    rhs_c, rhs_c_err = _product_rhs(C, I0.value, I0.error_bound, J0.value, J0.error_bound, p, q)
    rhs_cp, rhs_cp_err = _product_rhs(Cp, Ig.value, Ig.error_bound, Jg.value, Jg.error_bound, p, q)
    details = {
        "C": C,
        "C_prime": Cp,
        "rhs_C": (rhs_c, rhs_c_err),
        "rhs_C_prime": (rhs_cp, rhs_cp_err),
        "kernel": lhs,
    }
    return _report(ident, lhs.value, lhs.error_bound, rhs, rhs_err, desc, started, details)


# ---------------------------------------------------------------------------
# discrete inequalities


def _seq_power(seq: SequenceFamily, p: float, tol: float) -> tuple[float, float]:
    if seq.scale == 0:
        return 0.0, 0.0
    if not seq.has_lp(p):
        raise DivergenceDetected(f"{seq.describe()} is not {p:g}-summable")
    return lp_norm_power(seq, p, tol * seq.scale**p)


def _double_sum(a, b, offset, tol_abs, pair):
    """Double sum, loosening the tolerance when the term cap is reached."""
    goal = tol_abs
    for _ in range(4):
        try:
            return double_sum_kernel(a, b, offset, goal, pair)
        except ToleranceUnreachable:
            goal *= 100.0
    return double_sum_kernel(a, b, offset, goal, pair)


def _check_starts(ident, seqs, start):
    for s in seqs:
        if s.start_index != start:
            raise IndexMismatch(f"{ident} needs start_index {start}, got {s.describe()}")


def _verify_two_sequence(ident, a, b, pair, offset, tol):
    started = time.perf_counter()
    desc = f"p={_fmt(pair.p)} a={a.describe()} b={b.describe()}"
    _check_starts(ident, (a, b), 1 if offset == 0 else 0)
    try:
        A = _seq_power(a, pair.p, tol)
        B = _seq_power(b, pair.q, tol)
    except DivergenceDetected as exc:
        return _inadmissible(ident, desc, [str(exc)], started)
    if A[0] <= 0 or B[0] <= 0:
        return _inadmissible(ident, desc, ["zero norm"], started)
    rhs, rhs_err = _product_rhs(hilbert_constant(pair), A[0], A[1], B[0], B[1], pair.p, pair.q)
    lhs, lhs_err = _double_sum(a, b, offset, tol * rhs, pair)
    return _report(ident, lhs, lhs_err, rhs, rhs_err, desc, started)


def verify_hilbert_discrete(a: SequenceFamily, b: SequenceFamily, pair: HolderPair, tol: float = 1e-10) -> VerificationReport:
    """``Σ_{m,n≥1} a_m b_n/(m+n) ≤ π/sin(π/p) ‖a‖_p ‖b‖_q``."""
    return _verify_two_sequence("hilbert_discrete", a, b, pair, 0, tol)


def verify_lemma_offset_discrete(c: SequenceFamily, d: SequenceFamily, pair: HolderPair, tol: float = 1e-10) -> VerificationReport:
    """``Σ_{m,n≥0} c_m d_n/(m+n+1) ≤ π/sin(π/p) ‖c‖_p ‖d‖_q``."""
    return _verify_two_sequence("lemma_2_2", c, d, pair, 1, tol)


@dataclass(frozen=True)
class SumDiscreteInstance:
    a: SequenceFamily
    b: SequenceFamily
    c: SequenceFamily
    d: SequenceFamily
    pair: HolderPair
    k: int = 1

    def __post_init__(self):
        if int(self.k) != self.k or self.k < 1:
            raise DomainError(f"multiplicity k must be a positive integer, got {self.k!r}")
        _check_starts("SumDiscreteInstance a/b", (self.a, self.b), 1)
        _check_starts("SumDiscreteInstance c/d", (self.c, self.d), 0)


def verify_sum_discrete(inst: SumDiscreteInstance, tol: float = 1e-10) -> VerificationReport:
    """Multiplicity-``k`` sum form.

    LHS = ``k c_0 d_0 + Σ_{m,n≥1} [a_m b_n/(m+n) + k c_m d_n/(m+n+1)]``;
    the ``c``-part runs over indices ``≥ 1`` exactly as stated, so the cross
    terms ``c_0 d_n`` and ``c_m d_0`` do not appear.
    """
    started = time.perf_counter()
    ident = "thm_2_1"
    a, b, c, d, pair, k = inst.a, inst.b, inst.c, inst.d, inst.pair, inst.k
    p, q = pair.p, pair.q
    desc = f"p={_fmt(p)} k={k} a={a.describe()} b={b.describe()} c={c.describe()} d={d.describe()}"
    try:
        Ap = _seq_power(a, p, tol)
        Bq = _seq_power(b, q, tol)
        Cp = _seq_power(c, p, tol)
        Dq = _seq_power(d, q, tol)
    except DivergenceDetected as exc:
        return _inadmissible(ident, desc, [str(exc)], started)
    P = Ap[0] + k * Cp[0]
    Q = Bq[0] + k * Dq[0]
    if P <= 0 or Q <= 0:
        return _inadmissible(ident, desc, ["zero norm"], started)
    rhs, rhs_err = _product_rhs(hilbert_constant(pair), P, Ap[1] + k * Cp[1], Q, Bq[1] + k * Dq[1], p, q)

    c0, d0 = first_term(c), first_term(d)
    lhs_ab, err_ab = _double_sum(a, b, 0, 0.5 * tol * rhs, pair)
    if c.scale == 0 or d.scale == 0:
        lhs_cd, err_cd = 0.0, 0.0
    else:
        lhs_cd, err_cd = _double_sum(DropFirst(c), DropFirst(d), 1, 0.5 * tol * rhs / k, pair)
    lhs = k * c0 * d0 + lhs_ab + k * lhs_cd
    lhs_err = err_ab + k * err_cd + 4.0 * _EPS * abs(lhs)
    if k * c0 * d0 == 0 and lhs_cd == 0:
        lhs_err = err_ab
    return _report(ident, lhs, lhs_err, rhs, rhs_err, desc, started)


# ---------------------------------------------------------------------------
# superadditivity of weighted geometric means


def check_superadditivity(a_list: Sequence[float], b_list: Sequence[float], alphas: Sequence[float]) -> VerificationReport:
    """``Π a_i^α_i + Π b_i^α_i ≤ Π (a_i + b_i)^α_i`` with equality iff a_i/b_i is constant.

    Reported with ``lhs`` the sum of products so the usual ``lhs ≤ rhs``
    convention applies.
    """
    started = time.perf_counter()
    a = np.asarray(a_list, dtype=float)
    b = np.asarray(b_list, dtype=float)
    w = np.asarray(alphas, dtype=float)
    if not (a.shape == b.shape == w.shape) or a.ndim != 1 or a.size == 0:
        raise DomainError("a, b and alphas must be equal-length nonempty sequences")
    if abs(math.fsum(w) - 1.0) > 1e-12:
        raise DomainError(f"weights must sum to 1, got {math.fsum(w):.17g}")
    if np.any(w <= 0) or np.any(a < 0) or np.any(b <= 0):
        raise DomainError("need alpha_i > 0, a_i >= 0 and b_i > 0")

    def geo(x):
        if np.any(x == 0):
            return 0.0
        return math.exp(math.fsum(w * np.log(x)))

    pa, pb, pab = geo(a), geo(b), geo(a + b)
    lhs = pa + pb
    rhs = pab
    slack = 4.0 * (a.size + 2) * _EPS
    desc = (
        "a=[" + ",".join(_fmt(x) for x in a) + "] b=[" + ",".join(_fmt(x) for x in b)
        + "] alpha=[" + ",".join(_fmt(x) for x in w) + "]"
    )
    return _report("lemma_2_1", lhs, slack * lhs, rhs, slack * rhs, desc, started)
