"""Exact arithmetic for one-dimensional p-adic integral value transformations."""

from .digits import DigitString, digit_length, from_digits, pad_to_length, to_digits
from .dynamics import CensusRecord, Classification, Orbit, census, classify_rule, fixed_points, orbit
from .errors import (
    ArityError,
    BaseMismatchError,
    DomainError,
    EnumerationTooLargeError,
    IndexOutOfRangeError,
    InvalidBaseError,
    InvalidDigitError,
    InvalidScalarError,
    InvalidTableError,
    IVTError,
    LengthError,
    UnstableMetricError,
)
from .metric import (
    DerivativeReport,
    TriangleViolation,
    check_triangle,
    check_triple,
    derivative_at,
    derivative_sweep,
    distance,
    norm,
)
from .rules import (
    BasisCoefficients,
    Rule,
    add_rules,
    basis_rules,
    bijective_rules,
    combine_basis,
    decompose_basis,
    embed_basis,
    embed_extended,
    enumerate_rules,
    is_bijective,
    is_linear,
    linear_rules,
    mul_rules,
    neg_rule,
    rule_from_index,
    rule_from_table,
    scalar_mul,
)
from .transform import KRule, evaluate, evaluate_k, iterate

__version__ = "0.1.0"
