"""Certified lower bounds for p-adic linear forms in logarithms of rationals.

The package computes, with rigorous outward rounding, explicit bounds of the
shape |Lambda_p|_p > c * H^(-omega) for

    Lambda_p = lambda_0 + lambda_1 log(1+alpha_1) + ... + lambda_m log(1+alpha_m)

with rational alpha_i and integer coefficients of height at most H, and
verifies the certificates empirically against exact p-adic evaluations.
"""

from .bounds import (
    BoundCertificate,
    CertifyResult,
    Condition,
    Mgt1Constants,
    Mlt1Constants,
    ProblemInstance,
    THEOREM_IDS,
    YuBound,
    YuParams,
    certify,
    check_conditions,
    constants_Mgt1,
    constants_Mlt1,
    f_value,
    omega_product,
    select_k,
    yu_bound,
)
from .errors import BudgetExceededError, InternalConsistencyError
from .harness import (
    ExamplesReport,
    LinearFormValue,
    VerificationReport,
    eval_linear_form,
    exhaustive_min,
    pipeline_check,
    reproduce_examples,
    sample_verify,
)
from .intervals import DomainError, IntervalScalar, elementary
from .lambertw import lambert_w_m1
from .lcm import LcmTable, lcm_upto, rosser_holds
from .pade import (
    AlphaVector,
    PadePolynomials,
    PadeSystem,
    B_values_at,
    build_pade,
    closed_form_delta,
    determinant_delta,
    eval_B_at_one,
    order_check,
    remainder_S,
    select_nonzero_row,
    sigma_coeffs,
)
from .padic import PadicValue, padic_log, padic_valuation

__version__ = "0.1.0"

__all__ = [
    "AlphaVector",
    "BoundCertificate",
    "BudgetExceededError",
    "B_values_at",
    "CertifyResult",
    "Condition",
    "DomainError",
    "ExamplesReport",
    "IntervalScalar",
    "InternalConsistencyError",
    "LcmTable",
    "LinearFormValue",
    "Mgt1Constants",
    "Mlt1Constants",
    "PadePolynomials",
    "PadeSystem",
    "PadicValue",
    "ProblemInstance",
    "THEOREM_IDS",
    "VerificationReport",
    "YuBound",
    "YuParams",
    "build_pade",
    "certify",
    "check_conditions",
    "closed_form_delta",
    "constants_Mgt1",
    "constants_Mlt1",
    "determinant_delta",
    "elementary",
    "eval_B_at_one",
    "eval_linear_form",
    "exhaustive_min",
    "f_value",
    "lambert_w_m1",
    "lcm_upto",
    "omega_product",
    "order_check",
    "padic_log",
    "padic_valuation",
    "pipeline_check",
    "remainder_S",
    "reproduce_examples",
    "rosser_holds",
    "sample_verify",
    "select_k",
    "select_nonzero_row",
    "sigma_coeffs",
    "yu_bound",
]
