"""Exact q-series engine for theta constants with rational characteristics,
with an identity-verification registry and a floating-point residue checker.
"""

from .cyclotomic import CycNum, cyclotomic_polynomial, zeta, zeta_frac
from .qseries import PuiseuxSeries, ZeroSeries, OrderTooHigh
from .theta import (Characteristic, ThetaSpec, reduce_characteristic,
                    theta_constant, theta_derivative_reduced,
                    theta_triple_product, theta_zero_location, mumford_convert)
from .eta import EtaQuotient, eta_series, eta_quotient_series, parse_eta_quotient
from .arith import CountFamily, count, generating_series, check_count_relation
from .expr import SeriesExpr, evaluate
from .registry import (REGISTRY, Identity, VerificationReport, verify,
                       verify_all, registry_ids, get_identity)
from .numerics import (EvalParams, EllipticRatio, theta_eval, theta_deriv_eval,
                       quasi_periodicity_check, residue_sum, residue_at)
from .proofs import PROOFS

__version__ = "1.0.0"
