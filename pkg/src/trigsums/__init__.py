"""Finite trigonometric and character sums, verified by discrete Fourier analysis.

Two arithmetic backends evaluate every sum: exact cyclotomic-field arithmetic
(``ExactBackend``) and high-precision complex floats (``FloatBackend``).
"""

__version__ = "0.1.0"

from .scalars import (
    ApproxComplex,
    CycloNumber,
    ExactBackend,
    FloatBackend,
    cyclo_inverse,
    cyclo_mul,
    cyclotomic_polynomial,
    embed_complex,
    root_of_unity_power,
)
from .dft import PeriodicFn, TransformPair, convolve, dft, dot_sum, inverse_dft, parity, trig_table
from .characters import (
    Character,
    ClassNumberResult,
    class_number,
    classify,
    enumerate_characters,
    gauss_sum,
    jacobi_symbol,
    kronecker_character,
)
from .identities import CheckResult, IdentityRecord, applicable, catalog, char_cot_transform, check, eval_lhs, eval_rhs, lookup

__all__ = [
    "__version__",
    "applicable",
    "ApproxComplex",
    "catalog",
    "char_cot_transform",
    "Character",
    "check",
    "CheckResult",
    "class_number",
    "classify",
    "ClassNumberResult",
    "convolve",
    "cyclo_inverse",
    "cyclo_mul",
    "CycloNumber",
    "cyclotomic_polynomial",
    "dft",
    "dot_sum",
    "embed_complex",
    "enumerate_characters",
    "eval_lhs",
    "eval_rhs",
    "ExactBackend",
    "FloatBackend",
    "gauss_sum",
    "IdentityRecord",
    "inverse_dft",
    "jacobi_symbol",
    "kronecker_character",
    "lookup",
    "parity",
    "PeriodicFn",
    "root_of_unity_power",
    "TransformPair",
    "trig_table",
]
