"""Numerical verification of Hilbert-type integral and series inequalities."""
from .errors import DivergenceDetected, DomainError, IndexMismatch, NonConvergence, ToleranceUnreachable
from .funcspace import (
    Explicit,
    Geometric,
    IntegratedMonomialExponential,
    KernelParams,
    MonomialExponential,
    PowerDecay,
    TruncatedPower,
    TruncatedPowerSequence,
    check_admissible,
    function_from_dict,
    lp_norm_power,
    sequence_from_dict,
)
from .inequalities import (
    INEQUALITY_IDS,
    SumDiscreteInstance,
    SumIntegralInstance,
    Verdict,
    VerificationReport,
    check_superadditivity,
    verify_hilbert_discrete,
    verify_hilbert_integral,
    verify_lemma_offset_discrete,
    verify_sum_discrete,
    verify_sum_integral,
    verify_weighted_integral,
)
from .quadrature import QuadResult, integrate_interval, integrate_kernel_double, integrate_semi_infinite
from .series import double_sum_kernel
from .sharpness import extremal_ratio_discrete, extremal_ratio_integral
from .specialfn import BoundConstants, HolderPair, bound_constants, gamma, hilbert_constant, log_gamma

__version__ = "0.1.0"
