import math

import mpmath
import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from scipy import integrate

from hilbert_forge.errors import DomainError, IndexMismatch
from hilbert_forge.funcspace import (
    Explicit,
    Geometric,
    IntegratedMonomialExponential,
    KernelParams,
    MonomialExponential,
    PowerDecay,
)
from hilbert_forge.inequalities import (
    SumDiscreteInstance,
    SumIntegralInstance,
    Verdict,
    check_superadditivity,
    classify,
    verify_hilbert_discrete,
    verify_hilbert_integral,
    verify_lemma_offset_discrete,
    verify_sum_discrete,
    verify_sum_integral,
    verify_weighted_integral,
)
from hilbert_forge.specialfn import HolderPair

P2 = HolderPair(2)
EXP = MonomialExponential(0.0, 1.0)
XEXP = MonomialExponential(1.0, 1.0)
ZERO_SEQ1 = Explicit((0.0,), 1)
ZERO_SEQ0 = Explicit((0.0,), 0)


def agree(r1, r2):
    """Both sides match to the combined error bounds of the two reports."""
    return (
        abs(r1.lhs - r2.lhs) <= r1.lhs_error + r2.lhs_error + 1e-15
        and abs(r1.rhs - r2.rhs) <= r1.rhs_error + r2.rhs_error + 1e-15
    )


def report_invariants(r):
    if r.verdict is Verdict.INADMISSIBLE:
        return
    assert r.lhs_error >= 0 and r.rhs_error >= 0
    assert (r.verdict is Verdict.HOLDS) == (r.lhs + r.lhs_error <= r.rhs - r.rhs_error)
    assert (r.verdict is Verdict.VIOLATED) == (r.lhs - r.lhs_error > r.rhs + r.rhs_error)
    if r.rhs > 0:
        assert r.ratio >= 0
    if r.verdict is Verdict.HOLDS:
        assert r.ratio <= 1 + (r.lhs_error + r.rhs_error) / r.rhs


# verdict rule


@pytest.mark.parametrize(
    "args, verdict",
    [
        ((1.0, 0.1, 2.0, 0.1), Verdict.HOLDS),
        ((1.0, 0.1, 1.05, 0.1), Verdict.HOLDS_WITHIN_ERROR),
        ((2.0, 0.1, 1.0, 0.1), Verdict.VIOLATED),
        ((1.0, 0.0, 1.0, 0.0), Verdict.HOLDS),
    ],
)
def test_classify(args, verdict):
    assert classify(*args) is verdict


@given(
    st.floats(min_value=0, max_value=10),
    st.floats(min_value=0, max_value=1),
    st.floats(min_value=0, max_value=10),
    st.floats(min_value=0, max_value=1),
)
def test_classify_partition(lhs, le, rhs, re):
    v = classify(lhs, le, rhs, re)
    assert (v is Verdict.HOLDS) == (lhs + le <= rhs - re)
    assert (v is Verdict.VIOLATED) == (lhs - le > rhs + re)


# classical integral inequality


def test_hilbert_integral_exponential():
    r = verify_hilbert_integral(EXP, EXP, P2)
    assert r.verdict is Verdict.HOLDS
    assert abs(r.lhs - 1.0) <= r.lhs_error
    assert abs(r.rhs - math.pi / 2) <= r.rhs_error + 1e-15
    report_invariants(r)


def test_hilbert_integral_monomial_exponential():
    r = verify_hilbert_integral(XEXP, XEXP, P2)
    assert r.verdict is Verdict.HOLDS
    assert abs(r.lhs - 1 / 3) <= r.lhs_error
    assert abs(r.rhs - math.pi / 4) <= r.rhs_error + 1e-15


def test_hilbert_integral_zero_is_inadmissible():
    r = verify_hilbert_integral(MonomialExponential(0.0, 1.0, 0.0), MonomialExponential(0.0, 1.0, 0.0), P2)
    assert r.verdict is Verdict.INADMISSIBLE and math.isnan(r.ratio)


def test_hilbert_integral_divergent_norm_is_inadmissible():
    # 1 - e^-x tends to 1, so ∫ f^2 = ∞
    r = verify_hilbert_integral(IntegratedMonomialExponential(0.0, 1.0, 1), EXP, P2)
    assert r.verdict is Verdict.INADMISSIBLE


@pytest.mark.parametrize("p", [1.25, 3.0, 5.0])
def test_hilbert_integral_other_exponents(p):
    pair = HolderPair(p)
    f, g = MonomialExponential(0.5, 2.0), MonomialExponential(1.0, 2.0)
    r = verify_hilbert_integral(f, g, pair)
    # ∫∫ x^a y^c e^(-b(x+y))/(x+y) = Γ(a+c+1) B(a+1, c+1) / b^(a+c+1)
    exact = mpmath.gamma(2.5) * mpmath.beta(1.5, 2) / mpmath.mpf(2) ** 2.5
    assert abs(r.lhs - float(exact)) <= r.lhs_error
    # ∫ (x^a e^(-bx))^p = Γ(ap+1) / (bp)^(ap+1)
    A = mpmath.gamma(0.5 * p + 1) / (2 * mpmath.mpf(p)) ** (0.5 * p + 1)
    B = mpmath.gamma(pair.q + 1) / (2 * mpmath.mpf(pair.q)) ** (pair.q + 1)
    rhs = mpmath.pi / mpmath.sin(mpmath.pi / p) * A ** (1 / mpmath.mpf(p)) * B ** (1 / mpmath.mpf(pair.q))
    assert abs(r.rhs - float(rhs)) <= r.rhs_error
    assert r.verdict is Verdict.HOLDS


# classical discrete inequality and the offset form


def test_hilbert_discrete_geometric():
    r = verify_hilbert_discrete(Geometric(0.5), Geometric(0.5), P2)
    assert r.verdict is Verdict.HOLDS
    assert abs(r.lhs - 0.3068528194400547) <= r.lhs_error + 1e-15
    assert abs(r.rhs - math.pi / 3) <= r.rhs_error + 1e-15


def test_hilbert_discrete_single_term():
    r = verify_hilbert_discrete(Explicit((1.0,), 1), Explicit((1.0,), 1), P2)
    assert r.lhs == 0.5 and r.rhs == pytest.approx(math.pi, rel=1e-15)
    assert r.verdict is Verdict.HOLDS


def test_hilbert_discrete_zero_norm():
    r = verify_hilbert_discrete(Explicit((1.0,), 1), Explicit((0.0,), 1), P2)
    assert r.verdict is Verdict.INADMISSIBLE


def test_hilbert_discrete_not_summable():
    r = verify_hilbert_discrete(PowerDecay(0.4), Geometric(0.5), P2)
    assert r.verdict is Verdict.INADMISSIBLE


def test_hilbert_discrete_start_index_enforced():
    with pytest.raises(IndexMismatch):
        verify_hilbert_discrete(Geometric(0.5, 1.0, 0), Geometric(0.5), P2)


def test_offset_lemma_examples():
    r = verify_lemma_offset_discrete(Explicit((1.0, 0.0), 0), Explicit((1.0, 0.0), 0), P2)
    assert r.lhs == 1.0 and r.rhs == pytest.approx(math.pi, rel=1e-15)
    r = verify_lemma_offset_discrete(Geometric(0.5, 1.0, 0), Geometric(0.5, 1.0, 0), P2)
    assert abs(r.lhs - 2.0) <= r.lhs_error
    assert abs(r.rhs - math.pi * 4 / 3) <= r.rhs_error + 1e-15
    assert r.verdict is Verdict.HOLDS
    with pytest.raises(DomainError):
        verify_lemma_offset_discrete(Geometric(0.5, 1.0, 0), Geometric(0.5, 1.0, 0), HolderPair(1))


def test_offset_lemma_brute_force():
    c = Explicit((0.3, 1.2, 0.0, 2.0), 0)
    d = Explicit((1.0, 0.5, 0.25), 0)
    r = verify_lemma_offset_discrete(c, d, HolderPair(3))
    exact = sum(x * y / (i + j + 1) for i, x in enumerate(c.values) for j, y in enumerate(d.values))
    assert abs(r.lhs - exact) <= r.lhs_error + 1e-15
    assert r.verdict is Verdict.HOLDS


# multiplicity sum form


def test_sum_discrete_example():
    inst = SumDiscreteInstance(Explicit((1.0,), 1), Explicit((1.0,), 1), Explicit((1.0, 0.0), 0), Explicit((1.0, 0.0), 0), P2, 1)
    r = verify_sum_discrete(inst)
    assert r.lhs == pytest.approx(1.5, abs=1e-15)
    assert r.rhs == pytest.approx(2 * math.pi, rel=1e-15)
    assert r.verdict is Verdict.HOLDS


@pytest.mark.parametrize("k", [1, 2, 5, 8])
def test_sum_discrete_vanishing_cd_reduces(k):
    a, b = Geometric(0.4), PowerDecay(1.5)
    r = verify_sum_discrete(SumDiscreteInstance(a, b, ZERO_SEQ0, ZERO_SEQ0, HolderPair(1.5), k))
    ref = verify_hilbert_discrete(a, b, HolderPair(1.5))
    assert agree(r, ref)


def test_sum_discrete_vanishing_ab_reduces():
    c, d = Geometric(0.6, 2.0, 0), Geometric(0.3, 1.0, 0)
    r = verify_sum_discrete(SumDiscreteInstance(ZERO_SEQ1, ZERO_SEQ1, c, d, P2, 1))
    ref = verify_lemma_offset_discrete(c, d, P2)
    assert abs(r.rhs - ref.rhs) <= r.rhs_error + ref.rhs_error
    # the sum form omits the cross terms c_0 d_n and c_m d_0 (m, n >= 1);
    # Σ_{n>=1} r^n/(n+1) = (-ln(1-r) - r)/r
    def tail(x):
        return (-math.log1p(-x) - x) / x

    cross = 2.0 * tail(0.3) + 1.0 * 2.0 * tail(0.6)
    assert abs(r.lhs + cross - ref.lhs) <= r.lhs_error + ref.lhs_error + 1e-14


def test_sum_discrete_vanishing_ab_reduces_with_zero_heads():
    c = Explicit((0.0, 1.0, 0.5, 0.25), 0)
    d = Explicit((0.0, 2.0, 1.0), 0)
    r = verify_sum_discrete(SumDiscreteInstance(ZERO_SEQ1, ZERO_SEQ1, c, d, P2, 1))
    assert agree(r, verify_lemma_offset_discrete(c, d, P2))


def test_sum_discrete_brute_force():
    a, b = Explicit((1.0, 2.0), 1), Explicit((0.5, 0.5, 1.0), 1)
    c, d = Explicit((2.0, 1.0, 1.0), 0), Explicit((1.0, 3.0), 0)
    for k in (1, 3):
        r = verify_sum_discrete(SumDiscreteInstance(a, b, c, d, HolderPair(2.5), k))
        ab = sum(x * y / (i + j + 2) for i, x in enumerate(a.values) for j, y in enumerate(b.values))
        cd = sum(x * y / (i + j + 1) for i, x in enumerate(c.values) for j, y in enumerate(d.values) if i >= 1 and j >= 1)
        exact = k * 2.0 * 1.0 + ab + k * cd
        assert abs(r.lhs - exact) <= r.lhs_error + 1e-14
        p, q = 2.5, 2.5 / 1.5
        P = sum(x**p for x in a.values) + k * sum(x**p for x in c.values)
        Q = sum(x**q for x in b.values) + k * sum(x**q for x in d.values)
        assert r.rhs == pytest.approx(math.pi / math.sin(math.pi / p) * P ** (1 / p) * Q ** (1 / q), rel=1e-13)
        assert r.verdict is Verdict.HOLDS


def test_sum_discrete_rejects_bad_multiplicity():
    with pytest.raises(DomainError):
        SumDiscreteInstance(Geometric(0.5), Geometric(0.5), ZERO_SEQ0, ZERO_SEQ0, P2, 0)
    with pytest.raises(IndexMismatch):
        SumDiscreteInstance(Geometric(0.5), Geometric(0.5), Geometric(0.5), ZERO_SEQ0, P2, 1)


# weighted integral bounds


def test_weighted_c_matches_classical_at_base_case():
    r = verify_weighted_integral(EXP, EXP, P2, KernelParams(1.0, 0.0, 0), "C")
    ref = verify_hilbert_integral(EXP, EXP, P2)
    assert agree(r, ref)


def test_weighted_c_rejects_nonmonotone_derivative():
    r = verify_weighted_integral(XEXP, XEXP, P2, KernelParams(3.0, 0.0, 1), "C")
    assert r.verdict is Verdict.INADMISSIBLE
    assert "not positive" in r.instance_descriptor
    assert (1 - 2.0) * math.exp(-2.0) < 0


def test_weighted_c_integrated_family_against_independent_quadrature():
    f = IntegratedMonomialExponential(0.0, 1.0, 1)  # 1 - e^-x, f' = e^-x > 0
    r = verify_weighted_integral(f, f, P2, KernelParams(3.0, 0.0, 1), "C")
    assert r.verdict is Verdict.HOLDS
    # coarse scipy cubature agrees to 1e-3; the polar form in mpmath gives 1/2
    ref, _ = integrate.dblquad(
        lambda y, x: (1 - math.exp(-x)) * (1 - math.exp(-y)) / (x + y) ** 3, 0, np.inf, 0, np.inf, epsabs=1e-6, epsrel=1e-6
    )
    assert abs(r.lhs - ref) <= 1e-3
    with mpmath.workdps(20):
        polar = mpmath.quad(
            lambda s, u: s**-2 * (1 - mpmath.e ** (-s * u)) * (1 - mpmath.e ** (-s * (1 - u))), [0, 1, 10, mpmath.inf], [0, 0.5, 1]
        )
    assert abs(r.lhs - float(polar)) <= r.lhs_error + 1e-15
    # weighted norm ∫ x^(2·2-3-1) e^(-2x) dx = 1/2 on each side, C = Γ(1/2)^2/Γ(3) = π/2
    assert r.rhs == pytest.approx(math.pi / 2 * 0.5, rel=1e-8)


def test_weighted_variant_validation():
    with pytest.raises(DomainError):
        verify_weighted_integral(EXP, EXP, P2, KernelParams(1.0), "D")


def test_weighted_c_prime_printed_form_counterexample():
    # e^-x on both sides at λ=1, n=0, γ=-1/4: LHS = 1 exactly, while the
    # constant Γ(3/4)^2 times the two weighted norms (each Γ(3/2)/2^(3/2)) is smaller
    r = verify_weighted_integral(EXP, EXP, P2, KernelParams(1.0, -0.25, 0), "C_prime")
    expected = float(mpmath.gamma(0.75) ** 2 * mpmath.gamma(1.5) / mpmath.mpf(2) ** 1.5)
    assert abs(r.lhs - 1.0) <= r.lhs_error
    assert abs(r.rhs - expected) <= r.rhs_error + 1e-15
    assert r.ratio == pytest.approx(1 / expected, rel=1e-8)
    assert r.verdict is Verdict.VIOLATED


@pytest.mark.parametrize("t", [0.25, 1.0, 4.0])
def test_balanced_form_dilation_invariant(t):
    params = KernelParams(1.0, -0.25, 0)
    base = verify_weighted_integral(EXP, EXP, P2, params, "C_prime_balanced")
    r = verify_weighted_integral(MonomialExponential(0.0, t), MonomialExponential(0.0, t), P2, params, "C_prime_balanced")
    assert abs(r.ratio - base.ratio) <= 1e-7
    assert r.verdict is Verdict.HOLDS


def test_printed_form_scales_under_dilation():
    params = KernelParams(1.0, -0.25, 0)
    ratios = [
        verify_weighted_integral(MonomialExponential(0.0, t), MonomialExponential(0.0, t), P2, params, "C_prime").ratio
        for t in (1.0, 4.0)
    ]
    # ratio ∝ t^(-2γ) = t^(1/2)
    assert ratios[1] / ratios[0] == pytest.approx(2.0, rel=1e-7)


def test_c_prime_negative_gamma_argument_inadmissible():
    # inside the γ interval but λ/p − γ − n < 0
    pair = HolderPair(3)
    lo, hi = KernelParams(1.0).gamma_interval(pair)
    gam = lo + 0.75 * (hi - lo)
    r = verify_weighted_integral(EXP, EXP, pair, KernelParams(1.0, gam, 0), "C_prime")
    assert r.verdict is Verdict.INADMISSIBLE
    assert "not positive" in r.instance_descriptor


# combined bound with multiplicity


def test_sum_integral_reduces_to_c_at_zero_shift():
    f = IntegratedMonomialExponential(0.0, 1.0, 1)
    params = KernelParams(3.0, 0.0, 1)
    r = verify_sum_integral(SumIntegralInstance(f, f, P2, params, 1))
    ref = verify_weighted_integral(f, f, P2, params, "C")
    assert agree(r, ref)


@pytest.mark.parametrize("m", [1, 2, 5])
def test_sum_integral_structure(m):
    params = KernelParams(1.0, 0.25, 0)
    r = verify_sum_integral(SumIntegralInstance(EXP, EXP, P2, params, m))
    assert abs(r.lhs - 1.0) <= r.lhs_error
    rc, rc_err = r.details["rhs_C"]
    rp, rp_err = r.details["rhs_C_prime"]
    assert (m + 1) * (r.rhs + r.rhs_error) >= rc - rc_err + m * (rp - rp_err)
    assert min(rc, rp) - rc_err - rp_err <= r.rhs <= max(rc, rp) + rc_err + rp_err


def test_sum_integral_multiplicity_validated():
    with pytest.raises(DomainError):
        SumIntegralInstance(EXP, EXP, P2, KernelParams(1.0), 0)


# weighted geometric means


def test_superadditivity_equality():
    r = check_superadditivity([1, 1], [1, 1], [0.5, 0.5])
    assert r.lhs == 2.0 and r.rhs == 2.0 and r.ratio == 1.0
    assert r.verdict is Verdict.HOLDS_WITHIN_ERROR


def test_superadditivity_strict():
    r = check_superadditivity([4, 1], [1, 4], [0.5, 0.5])
    assert r.lhs == pytest.approx(4.0, rel=1e-15) and r.rhs == pytest.approx(5.0, rel=1e-15)
    assert r.verdict is Verdict.HOLDS


def test_superadditivity_rejects_bad_weights():
    with pytest.raises(DomainError):
        check_superadditivity([1, 1], [1, 1], [0.7, 0.4])
    with pytest.raises(DomainError):
        check_superadditivity([1, 1], [1, 0], [0.5, 0.5])


@given(
    st.lists(st.tuples(st.floats(0.0, 1e3), st.floats(1e-3, 1e3), st.floats(0.05, 1.0)), min_size=1, max_size=8)
)
@settings(max_examples=300)
def test_superadditivity_property(rows):
    a = [x for x, _, _ in rows]
    b = [y for _, y, _ in rows]
    w = np.array([z for _, _, z in rows])
    w = list(w / w.sum())
    if abs(math.fsum(w) - 1) > 1e-12:
        return
    r = check_superadditivity(a, b, w)
    assert r.holds
    report_invariants(r)


@given(st.lists(st.floats(1e-2, 1e2), min_size=1, max_size=6), st.floats(1e-2, 1e2))
@settings(max_examples=200)
def test_superadditivity_equality_cases(b, c):
    a = [c * x for x in b]
    w = [1 / len(b)] * len(b)
    if abs(math.fsum(w) - 1) > 1e-12:
        return
    r = check_superadditivity(a, b, w)
    assert abs(r.ratio - 1) <= 1e-12


# broad property sweep


@given(
    st.sampled_from([1.25, 1.5, 2.0, 3.0, 5.0]),
    st.floats(0.05, 0.9),
    st.floats(0.05, 0.9),
    st.floats(0.1, 5.0),
)
@settings(max_examples=60, deadline=None)
def test_discrete_reports_never_violate(p, r, s, scale):
    rep = verify_hilbert_discrete(Geometric(r, scale), Geometric(s), HolderPair(p))
    assert rep.verdict in (Verdict.HOLDS, Verdict.HOLDS_WITHIN_ERROR)
    report_invariants(rep)
