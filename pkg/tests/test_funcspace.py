import math

import mpmath
import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from scipy import integrate

from hilbert_forge.errors import DomainError, ToleranceUnreachable
from hilbert_forge.funcspace import (
    DropFirst,
    Explicit,
    Geometric,
    IntegratedMonomialExponential,
    KernelParams,
    MonomialExponential,
    PowerDecay,
    TruncatedPower,
    TruncatedPowerSequence,
    check_admissible,
    eval_derivative,
    function_from_dict,
    lp_norm_power,
    sequence_from_dict,
)
from hilbert_forge.specialfn import HolderPair

P2 = HolderPair(2)


def mp_derivative(s, b, x, order):
    """High-precision numerical derivative of x^s e^(-bx)."""
    with mpmath.workdps(40):
        return float(mpmath.diff(lambda t: t**s * mpmath.exp(-b * t), mpmath.mpf(x), order))


# kernel params


def test_kernel_params_interval_and_violations():
    kp = KernelParams(3.0, 0.0, 1)
    assert kp.gamma_interval(P2) == (1 - 1.5, 1.5 - 1)
    assert kp.violations(P2) == []
    assert any("λ > 2n" in v for v in KernelParams(2.0, 0.0, 1).violations(P2))
    assert any("outside" in v for v in KernelParams(3.0, 0.5, 1).violations(P2))


def test_kernel_params_margin():
    lo, hi = KernelParams(1.0).gamma_interval(P2)
    assert KernelParams(1.0, hi - 1e-10).violations(P2)
    assert not KernelParams(1.0, hi - 1e-8).violations(P2)


@pytest.mark.parametrize("bad", [dict(lam=0.0), dict(lam=-1.0), dict(lam=1.0, n=-1), dict(lam=1.0, n=0.5)])
def test_kernel_params_rejects(bad):
    with pytest.raises(DomainError):
        KernelParams(**bad)


# derivatives


def test_derivative_examples():
    assert eval_derivative(MonomialExponential(1.0, 1.0), 1, 0.0) == 1.0
    assert eval_derivative(MonomialExponential(0.0, 1.0), 0, 0.0) == 1.0
    val = eval_derivative(MonomialExponential(2.0, 1.0), 2, 1.0)
    fd = mp_derivative(2.0, 1.0, 1.0, 2)
    assert val == pytest.approx(-math.exp(-1), abs=1e-14)
    assert abs(val - fd) <= 1e-6


@pytest.mark.parametrize("s, b", [(0.0, 1.0), (1.0, 2.0), (2.5, 0.5), (4.0, 1.5), (3.0, 3.0)])
@pytest.mark.parametrize("order", [0, 1, 2, 3, 4])
def test_derivative_matches_high_precision_oracle(s, b, order):
    f = MonomialExponential(s, b)
    for x in np.linspace(0.1, 10, 25):
        fd = mp_derivative(s, b, x, order)
        assert abs(eval_derivative(f, order, x) - fd) <= 1e-12 * max(1.0, abs(fd))


@pytest.mark.parametrize("s, b, depth", [(0.0, 1.0, 1), (1.0, 2.0, 2), (2.5, 0.5, 3), (0.5, 1.0, 4)])
def test_integrated_family_against_mpmath(s, b, depth):
    f = IntegratedMonomialExponential(s, b, depth)
    for x in (0.05, 0.7, 3.0, 12.0):
        # repeated integral from 0 equals the Cauchy formula with (x-t)^(depth-1)/(depth-1)!
        exact = mpmath.quad(lambda t: (x - t) ** (depth - 1) * t**s * mpmath.e ** (-b * t), [0, x]) / math.factorial(depth - 1)
        assert float(f.derivative(0, x)) == pytest.approx(float(exact), rel=1e-11)
        top = float(f.derivative(depth, x))
        assert top == pytest.approx(x**s * math.exp(-b * x), rel=1e-13)


def test_vanishing_boundary_exact():
    for n in range(1, 5):
        f = MonomialExponential(float(n) + 0.5, 1.0)
        for k in range(n):
            assert eval_derivative(f, k, 0.0) == 0.0
        g = IntegratedMonomialExponential(1.0, 1.0, n)
        for k in range(n):
            assert float(g.derivative(k, 0.0)) == 0.0


def test_truncated_power_order_zero_only():
    f = TruncatedPower(-0.5, 1.0, 100.0)
    assert float(f.derivative(0, 4.0)) == 0.5
    assert float(f.derivative(0, 0.5)) == 0.0
    with pytest.raises(DomainError):
        eval_derivative(f, 1, 2.0)


# admissibility


def test_check_admissible_examples():
    # x e^-x has f' = (1-x) e^-x < 0 beyond x = 1: positivity of f' fails (see README)
    v = check_admissible(MonomialExponential(1.0, 1.0), P2, KernelParams(3.0, 0.0, 1))
    assert any("not positive" in r for r in v)
    v = check_admissible(MonomialExponential(0.0, 1.0), P2, KernelParams(3.0, 0.0, 1))
    assert "f(0) ≠ 0" in v
    v = check_admissible(TruncatedPower(-0.5, 1.0, 100.0), P2, KernelParams(3.0, 0.0, 1))
    assert "family supports n=0 only" in v


def test_check_admissible_accepts_integrated_family():
    f = IntegratedMonomialExponential(1.0, 1.0, 1)
    assert check_admissible(f, P2, KernelParams(3.0, 0.0, 1)) == []
    f2 = IntegratedMonomialExponential(1.0, 1.0, 2)
    assert check_admissible(f2, P2, KernelParams(5.0, 0.0, 2)) == []


def test_check_admissible_flags_weighted_divergence():
    # weight exponent 2*1 - 3 - 1 = -2 at n=0; e^-x gives exponent -2 <= -1 at the origin
    v = check_admissible(MonomialExponential(0.0, 1.0), P2, KernelParams(3.0, 0.0, 0))
    assert any("diverges at 0" in r for r in v)


def test_check_admissible_weighted_integral_oracle():
    # the endpoint verdict agrees with direct numerical integration
    f = IntegratedMonomialExponential(1.0, 1.0, 1)
    w = 2 * 2 - 3 - 1
    val, err = integrate.quad(lambda x: x**w * (x * math.exp(-x)) ** 2, 0, np.inf)
    assert math.isfinite(val) and val > 0


def test_zero_function_inadmissible():
    assert "f is identically zero" in check_admissible(MonomialExponential(0.0, 1.0, scale=0.0), P2, KernelParams(1.0))


def test_descriptor_round_trip():
    for f in (MonomialExponential(1.5, 2.0, 3.0), IntegratedMonomialExponential(1.0, 0.5, 2), TruncatedPower(-0.5, 1.0, 9.0)):
        g = function_from_dict(f.to_dict())
        assert g == f and g.describe() == f.describe()
    for s in (PowerDecay(1.5, 2.0), Geometric(0.3, 1.0, 0), Explicit((1.0, 2.0), 0), TruncatedPowerSequence(-0.5, 10)):
        t = sequence_from_dict(s.to_dict())
        assert t == s and t.describe() == s.describe()
    with pytest.raises(DomainError):
        function_from_dict({"family": "Nope"})


# sequences


def test_lp_norm_examples():
    v, e = lp_norm_power(Geometric(0.5), 2.0, 1e-12)
    assert abs(v - 1 / 3) <= e + 1e-16
    v, e = lp_norm_power(Explicit((1.0, 0.0, 0.0), 0), 3.0)
    assert v == 1.0
    v, e = lp_norm_power(PowerDecay(1.0), 2.0, 1e-10)
    assert abs(v - math.pi**2 / 6) <= e <= 1e-10


@pytest.mark.parametrize("alpha, p", [(1.0, 1.5), (0.75, 2.0), (2.0, 1.1), (1.0, 3.0)])
def test_power_decay_against_zeta(alpha, p):
    v, e = lp_norm_power(PowerDecay(alpha), p, 1e-9)
    exact = float(mpmath.zeta(alpha * p))
    assert abs(v - exact) <= e <= 1e-9


def test_power_decay_tail_bracket_contains_truth():
    seq = PowerDecay(0.8)
    p = 2.0
    for m in (1, 10, 1000):
        lo, hi = seq.power_tail_bracket(p, m)
        exact = float(mpmath.zeta(1.6, m + 1))
        assert lo <= exact <= hi


def test_power_decay_rejects_non_summable():
    assert not PowerDecay(0.5).has_lp(2.0)
    with pytest.raises(Exception):
        lp_norm_power(PowerDecay(0.5), 2.0)


def test_power_decay_unreachable_tolerance(monkeypatch):
    monkeypatch.setenv("HILBERT_FORGE_CAP", "1000")
    with pytest.raises(ToleranceUnreachable):
        lp_norm_power(PowerDecay(0.6), 2.0, 1e-12)


def test_norm_monotone_in_p():
    vals = [lp_norm_power(Geometric(0.5), p)[0] for p in (2.0, 3.0, 4.0)]
    assert vals[0] >= vals[1] >= vals[2]


def test_geometric_start_and_scale():
    seq = Geometric(0.5, 2.0, 0)
    assert np.allclose(seq.terms(4), [2.0, 1.0, 0.5, 0.25])
    v, _ = lp_norm_power(seq, 2.0)
    assert v == pytest.approx(4.0 / (1 - 0.25), rel=1e-15)


def test_drop_first_view():
    seq = Explicit((3.0, 1.0, 2.0), 0)
    view = DropFirst(seq)
    assert list(view.terms(3)) == [0.0, 1.0, 2.0]
    assert lp_norm_power(view, 2.0)[0] == pytest.approx(5.0)


def test_truncated_power_sequence():
    seq = TruncatedPowerSequence(-0.5, 4)
    assert np.allclose(seq.terms(6), [1, 2**-0.5, 3**-0.5, 0.5, 0, 0])
    v, _ = lp_norm_power(seq, 2.0)
    assert v == pytest.approx(1 + 1 / 2 + 1 / 3 + 1 / 4, rel=1e-15)


@given(st.floats(min_value=0.01, max_value=0.99), st.floats(min_value=1.05, max_value=8.0))
@settings(max_examples=150)
def test_geometric_norm_closed_form(r, p):
    v, e = lp_norm_power(Geometric(r), p, 1e-12)
    with mpmath.workdps(40):
        rp = mpmath.mpf(r) ** p
        exact = float(rp / (1 - rp))
    assert abs(v - exact) <= e


@given(st.floats(min_value=0.0, max_value=6.0), st.floats(min_value=0.1, max_value=5.0), st.floats(min_value=1e-3, max_value=50.0))
@settings(max_examples=200)
def test_monomial_exponential_nonnegative(s, b, x):
    assert eval_derivative(MonomialExponential(s, b), 0, x) >= 0.0
