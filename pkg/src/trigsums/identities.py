"""Catalog of finite trigonometric and character-sum identities.

Every entry pairs a literal finite sum (``lhs``) with its closed form
(``rhs``), an applicability predicate, and a parameter enumerator used by
sweeps.  Both sides are evaluated on a backend:

* float: mpmath complex arithmetic at a chosen precision;
* exact: the cyclotomic field Q(zeta_L) with L = lcm(4, 2k, denominator of
  x).  That field contains i, exp(i*pi*j/k) and sqrt(k), so every trig value
  and every closed form is an exact field element and a pass means the
  difference is literally zero.

Angles ``x`` are given in turns (``x_turns``), i.e. the angle is 2*pi*x_turns.
Characters are selected with ``chi``: ``"kronecker"`` (default) is the
Jacobi-symbol character n -> (n | k); ``"enum:<i>"`` picks the i-th entry of
``enumerate_characters(k)``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from math import comb, gcd, lcm
from typing import Callable, Iterable, Iterator, Optional, Union

import mpmath

from .characters import (
    Character,
    class_number,
    enumerate_characters,
    kronecker_character,
    kronecker_real_odd_exists,
)
from .scalars import ApproxComplex, CycloNumber, ExactBackend, FloatBackend, DEFAULT_PRECISION

__all__ = [
    "CheckResult",
    "EXACT_X_SAMPLES",
    "FLOAT_X_SAMPLES",
    "IdentityRecord",
    "applicable",
    "catalog",
    "char_cot_transform",
    "check",
    "eval_lhs",
    "eval_rhs",
    "lookup",
    "make_backend",
]

Backend = Union[ExactBackend, FloatBackend]
Params = dict

# sample angles in turns: 0, pi/6, pi/4, 2*pi/5
FLOAT_X_SAMPLES = (Fraction(0), Fraction(1, 12), Fraction(1, 8), Fraction(1, 5))
# pi/2 costs nothing extra: Q(zeta_4k) already holds i
EXACT_X_SAMPLES = (Fraction(0), Fraction(1, 4))
MAX_POWER_A = 6
CHAR_POWER_A = (1, 3, 5)
COSPOW_MAX_A = 15


@dataclass(frozen=True)
class IdentityRecord:
    id: str
    anchor: str
    params: tuple[str, ...]
    hypothesis: str
    lhs: Callable[[Params, Backend], object]
    rhs: Callable[[Params, Backend], object]
    reason: Callable[[Params], Optional[str]]
    bindings: Callable[[int, str, bool], Iterator[tuple[Params, bool]]]
    uses_modulus: bool = True
    uses_character: bool = False
    exact_form: str = "both sides in Q(zeta_L), L = lcm(4, 2k); no multiplier needed"

    def field_modulus(self, p: Params) -> int:
        if not self.uses_modulus:
            return 1
        L = lcm(4, 2 * p["k"])
        x = p.get("x_turns")
        if x is not None:
            L = lcm(L, Fraction(x).denominator)
        return L


@dataclass
class CheckResult:
    identity: str
    params: Params
    backend: str
    lhs: object = None
    rhs: object = None
    residual: object = None
    verdict: str = "not_applicable"
    reason: Optional[str] = None
    probe: bool = False

    @property
    def passed(self) -> bool:
        return self.verdict == "pass"

    def to_dict(self) -> dict:
        return {
            "identity": self.identity,
            "params": _params_json(self.params),
            "backend": self.backend,
            "lhs": _scalar_str(self.lhs),
            "lhs_display": _scalar_display(self.lhs),
            "rhs": _scalar_str(self.rhs),
            "rhs_display": _scalar_display(self.rhs),
            "residual": None if self.residual is None else _real_str(self.residual),
            "verdict": self.verdict,
            "reason": self.reason,
            "probe": self.probe,
            "tag": "imprimitive_probe" if self.probe else "primitive_only",
        }


# ---------------------------------------------------------------------------
# serialization helpers


def _params_json(p: Params) -> dict:
    out = {}
    for key, v in p.items():
        out[key] = str(v) if isinstance(v, Fraction) else v
    return out


def _real_str(x) -> str:
    if isinstance(x, (int, Fraction)):
        return str(x)
    if isinstance(x, float):
        return repr(x)
    return mpmath.nstr(x, max(15, int(x.context.prec * 0.30103)), min_fixed=-math.inf, max_fixed=math.inf) if hasattr(x, "context") else str(x)


def _complex_parts(v: ApproxComplex, digits: int) -> str:
    re = mpmath.nstr(v.real, digits)
    im = mpmath.nstr(v.imag, digits)
    sign = "-" if im.startswith("-") else "+"
    return f"{re}{sign}{im.lstrip('-')}i"


def _scalar_str(x) -> Optional[str]:
    if x is None:
        return None
    if isinstance(x, CycloNumber):
        return f"{x} (z = zeta_{x.modulus})"
    if isinstance(x, ApproxComplex):
        return _complex_parts(x, int(x.precision_bits * 0.30103) + 1)
    return str(x)


def _scalar_display(x) -> Optional[str]:
    if x is None:
        return None
    if isinstance(x, CycloNumber):
        x = x.embed(128)
    if isinstance(x, ApproxComplex):
        if abs(x.imag) < mpmath.mpf(2) ** -60:
            return mpmath.nstr(x.real, 15)
        return _complex_parts(x, 15)
    return str(x)


# ---------------------------------------------------------------------------
# parameter handling


def _normalize(p: Params) -> Params:
    p = dict(p)
    if "x_turns" in p:
        p["x_turns"] = Fraction(p["x_turns"])
    return p


def _character(p: Params) -> Character:
    sel = p.get("chi", "kronecker")
    k = p["k"]
    if sel == "kronecker":
        return kronecker_character(k)
    if isinstance(sel, str) and sel.startswith("enum:"):
        return enumerate_characters(k)[int(sel[5:])]
    raise ValueError(f"unknown character selector {sel!r}")


def _h(k: int) -> int:
    return class_number(k).h


def _total(B: Backend, terms: Iterable) -> object:
    acc = B.zero()
    for t in terms:
        acc = acc + t
    return acc


def _char_total(B: Backend, chi: Character, term: Callable[[int], object]) -> object:
    """sum_{j=1}^{k-1} chi(j) * term(j) for a real character, skipping chi(j) = 0."""
    acc = B.zero()
    for j in range(1, chi.modulus):
        c = chi(j)
        if c == 1:
            acc = acc + term(j)
        elif c == -1:
            acc = acc - term(j)
    return acc


# hypotheses ---------------------------------------------------------------


def _k_any(min_k: int = 1):
    def reason(p: Params) -> Optional[str]:
        if p["k"] < min_k:
            return f"k must be at least {min_k}"
        return None

    return reason


def _k_odd(p: Params) -> Optional[str]:
    k = p["k"]
    if k < 1:
        return "k must be positive"
    if k % 2 == 0:
        return "k must be odd"
    return None


def _with(base: Callable[[Params], Optional[str]], *extra: Callable[[Params], Optional[str]]):
    def reason(p: Params) -> Optional[str]:
        r = base(p)
        if r:
            return r
        for check in extra:
            r = check(p)
            if r:
                return r
        return None

    return reason


def _a_between(p: Params) -> Optional[str]:
    if not 0 < p["a"] < p["k"]:
        return "need 0 < a < k"
    return None


def _ab_below_k(p: Params) -> Optional[str]:
    a, b = p["a"], p["b"]
    if a < 1 or b < 1:
        return "a and b must be positive"
    if a * b >= p["k"]:
        return "need ab < k"
    return None


def _primitive_char(p: Params) -> Optional[str]:
    k = p["k"]
    if k % 2 == 0:
        return "k must be odd"
    if k < 7:
        return "k must be at least 7"
    sel = p.get("chi", "kronecker")
    if not kronecker_real_odd_exists(k):
        return f"no real primitive odd character mod {k}"
    if sel != "kronecker":
        chi = _character(p)
        if not (chi.is_real and chi.is_odd and chi.is_primitive and not chi.is_principal):
            return "character must be nonprincipal, real, primitive and odd"
    return None


def _real_odd_char(p: Params) -> Optional[str]:
    """Hypothesis of the sine/cosine power family: nonprincipal, real, odd."""
    k = p["k"]
    sel = p.get("chi", "kronecker")
    if sel == "kronecker":
        if not kronecker_real_odd_exists(k):
            return f"no real primitive odd character mod {k}"
        return None
    chi = _character(p)
    if chi.is_principal or not chi.is_real or not chi.is_odd:
        return "character must be nonprincipal, real and odd"
    return None


def _char_power_params(p: Params) -> Optional[str]:
    a, b = p["a"], p["b"]
    if a < 1 or a % 2 == 0:
        return "a must be an odd positive integer"
    if b < 1 or a * b >= p["k"]:
        return "need 1 <= ab < k"
    return None


# bindings -----------------------------------------------------------------


def _x_samples(kind: str) -> tuple[Fraction, ...]:
    return EXACT_X_SAMPLES if kind == "exact" else FLOAT_X_SAMPLES


def _probe_chars(k: int) -> list[str]:
    out = []
    for i, c in enumerate(enumerate_characters(k)):
        if c.is_real and c.is_odd and not c.is_principal and not c.is_primitive:
            out.append(f"enum:{i}")
    return out


def _only_k(k: int, kind: str, probe: bool):
    yield {"k": k}, False


def _a_range(k: int, kind: str, probe: bool):
    for a in range(1, k):
        yield {"k": k, "a": a}, False


def _power_bindings(k: int, kind: str, probe: bool):
    for a in range(1, MAX_POWER_A + 1):
        for b in range(1, k):
            if a * b >= k:
                break
            for x in _x_samples(kind):
                yield {"k": k, "a": a, "b": b, "x_turns": x}, False


def _binom_bindings(k: int, kind: str, probe: bool):
    if k >= 1:
        yield {"a": k}, False


def _char_selectors(k: int, probe: bool) -> list[tuple[str, bool]]:
    sels = []
    if kronecker_real_odd_exists(k):
        sels.append(("kronecker", False))
    if probe:
        sels.extend((s, True) for s in _probe_chars(k))
    return sels


def _char_power_bindings(k: int, kind: str, probe: bool):
    for sel, is_probe in _char_selectors(k, probe):
        for a in CHAR_POWER_A:
            for b in range(1, k):
                if a * b >= k:
                    break
                for x in _x_samples(kind):
                    yield {"k": k, "a": a, "b": b, "x_turns": x, "chi": sel}, is_probe


def _char_sin_bindings(k: int, kind: str, probe: bool):
    for sel, is_probe in _char_selectors(k, probe):
        for b in range(1, 2 * k):
            if b % k:
                yield {"k": k, "b": b, "chi": sel}, is_probe


def _char_k_bindings(k: int, kind: str, probe: bool):
    yield {"k": k, "chi": "kronecker"}, False


def _coprime_b(k: int, kind: str, probe: bool):
    for b in range(1, k):
        if gcd(b, k) == 1:
            yield {"k": k, "b": b, "chi": "kronecker"}, False


def _b_through_k(k: int, kind: str, probe: bool):
    for b in range(1, k + 1):
        yield {"k": k, "b": b, "chi": "kronecker"}, False


def _a_through_k(k: int, kind: str, probe: bool):
    for a in range(1, k + 1):
        yield {"k": k, "a": a, "chi": "kronecker"}, False


def _cospow_bindings(k: int, kind: str, probe: bool):
    # a - 3 < 2k, capped to keep the triple sum small
    for a in range(1, min(2 * k + 2, COSPOW_MAX_A) + 1, 2):
        yield {"k": k, "a": a, "chi": "kronecker"}, False


# ---------------------------------------------------------------------------
# left- and right-hand sides


def _half(j: int, k: int) -> Fraction:
    """pi*j/k in turns."""
    return Fraction(j, 2 * k)


def _full(j: int, k: int) -> Fraction:
    """2*pi*j/k in turns."""
    return Fraction(j, k)


# sums without characters


def _stern_lhs(p, B):
    k = p["k"]
    return _total(B, (B.tan(_half(j, k)) ** 2 for j in range(1, k)))


def _cot2_lhs(p, B):
    k = p["k"]
    return _total(B, (B.cot(_half(j, k)) ** 2 for j in range(1, k)))


def _csc2_lhs(p, B):
    k = p["k"]
    return _total(B, (B.csc(_full(j, k)) ** 2 for j in range(1, k)))


def _sec2_lhs(p, B):
    k = p["k"]
    return _total(B, (B.sec(_full(j, k)) ** 2 for j in range(1, k)))


def _eisenstein_lhs(p, B):
    k, a = p["k"], p["a"]
    return _total(B, (B.cot(_half(j, k)) * B.sin(_full(a * j, k)) for j in range(1, k)))


def _tan_sin_lhs(p, B):
    k, a = p["k"], p["a"]
    return _total(B, (B.tan(_half(j, k)) * B.sin(_full(a * j, k)) for j in range(1, k)))


def _sin_csc_lhs(p, B):
    k, a = p["k"], p["a"]
    return _total(B, (B.sin(_full(a * j, k)) * B.csc(_full(j, k)) for j in range(1, k)))


def _tan_csc_lhs(p, B):
    k = p["k"]
    return _total(B, (B.tan(_half(j, k)) * B.csc(_full(j, k)) for j in range(1, k)))


def _cot_csc_lhs(p, B):
    k = p["k"]
    return _total(B, (B.cot(_half(j, k)) * B.csc(_full(j, k)) for j in range(1, k)))


def _tan4_lhs(p, B):
    k = p["k"]
    # the j = 0 term is tan(0)^4 = 0
    return _total(B, (B.tan(_half(j, k)) ** 4 for j in range(1, k)))


def _sin_power_lhs(p, B):
    k, a, b, x = p["k"], p["a"], p["b"], p["x_turns"]
    return _total(B, (B.sin(_half(b * j, k) + x) ** (2 * a) for j in range(k)))


def _cos_power_lhs(p, B):
    k, a, b, x = p["k"], p["a"], p["b"], p["x_turns"]
    return _total(B, (B.cos(_half(b * j, k) + x) ** (2 * a) for j in range(k)))


def _power_rhs(p, B):
    k, a = p["k"], p["a"]
    return B.const(Fraction(k * comb(2 * a, a), 4**a))


def _binom_square_lhs(p, B):
    a = p["a"]
    return B.const(sum(comb(a, m) ** 2 for m in range(a + 1)))


def _binom_alt_lhs(p, B):
    a = p["a"]
    return B.const(sum((-1) ** m * 4 ** (a - m) * comb(2 * m, m) * comb(a, m) for m in range(a + 1)))


def _central_binom(p, B):
    a = p["a"]
    return B.const(comb(2 * a, a))


# character sums


def _char_sin_power_lhs(p, B):
    k, a, b, x = p["k"], p["a"], p["b"], p["x_turns"]
    chi = _character(p)
    return _char_total(B, chi, lambda j: B.sin(_full(b * j, k) + x) ** a)


def _char_sin_power_rhs(p, B):
    k, a, b, x = p["k"], p["a"], p["b"], p["x_turns"]
    chi = _character(p)
    acc = B.zero()
    half_a = (a - 1) // 2
    for m in range(half_a + 1):
        n = a * b - 2 * m * b
        c = chi(n)
        if c:
            sign = -1 if (half_a - m) % 2 else 1
            acc = acc + B.cos((a - 2 * m) * x) * (sign * c * comb(a, m))
    return acc * B.sqrt(k) * Fraction(1, 2 ** (a - 1))


def _char_cos_power_lhs(p, B):
    k, a, b, x = p["k"], p["a"], p["b"], p["x_turns"]
    chi = _character(p)
    return _char_total(B, chi, lambda j: B.cos(_full(b * j, k) + x) ** a)


def _char_cos_power_rhs(p, B):
    k, a, b, x = p["k"], p["a"], p["b"], p["x_turns"]
    chi = _character(p)
    acc = B.zero()
    for m in range((a - 1) // 2 + 1):
        c = chi(a * b - 2 * m * b)
        if c:
            acc = acc + B.sin((a - 2 * m) * x) * (c * comb(a, m))
    # overall sign is negative (substitute x -> x + pi/2 in the sine version)
    return -(acc * B.sqrt(k) * Fraction(1, 2 ** (a - 1)))


def _char_sin_lhs(p, B):
    k, b = p["k"], p["b"]
    chi = _character(p)
    return _char_total(B, chi, lambda j: B.sin(_full(b * j, k)))


def _char_sin_rhs(p, B):
    chi = _character(p)
    return B.sqrt(p["k"]) * chi(p["b"])


def _bz_cot_lhs(p, B):
    k = p["k"]
    return _char_total(B, _character(p), lambda j: B.cot(_half(j, k)))


def _bz_cot_rhs(p, B):
    k = p["k"]
    return B.sqrt(k) * (2 * _h(k))


def _bz_cot_b_lhs(p, B):
    k, b = p["k"], p["b"]
    return _char_total(B, _character(p), lambda j: B.cot(_half(j * b, k)))


def _bz_cot_b_rhs(p, B):
    k, b = p["k"], p["b"]
    return B.sqrt(k) * (2 * _character(p)(b) * _h(k))


def _bz_tan_lhs(p, B):
    k = p["k"]
    return _char_total(B, _character(p), lambda j: B.tan(_half(j, k)))


def _bz_tan_rhs(p, B):
    k = p["k"]
    return B.sqrt(k) * ((2 - 4 * _character(p)(2)) * _h(k))


def _bz_csc_lhs(p, B):
    k = p["k"]
    return _char_total(B, _character(p), lambda j: B.csc(_full(j, k)))


def _bz_csc_rhs(p, B):
    k = p["k"]
    return B.sqrt(k) * (2 * (1 - _character(p)(2)) * _h(k))


def _cospow_lhs(p, B):
    k, a = p["k"], p["a"]
    return _char_total(B, _character(p), lambda j: B.cot(_half(j, k)) * B.cos(_half(j, k)) ** (a - 1))


def _cospow_rhs(p, B):
    k, a = p["k"], p["a"]
    chi = _character(p)
    top = (a - 1) // 2
    triple = 0
    for n in range(top + 1):
        for m in range((top - n) // 2 + 1):
            s = top - n - 2 * m
            triple += chi(n) * comb(a + 1, s)
    return B.sqrt(k) * (2 * (_h(k) - Fraction(triple, 2 ** (a - 1))))


def _cot_cos_lhs(p, B):
    k, b = p["k"], p["b"]
    return _char_total(B, _character(p), lambda j: B.cot(_half(j, k)) * B.cos(_full(b * j, k)))


def _cot_cos_rhs(p, B):
    k, b = p["k"], p["b"]
    chi = _character(p)
    return B.sqrt(k) * (2 * _h(k) - chi(b) - 2 * sum(chi(n) for n in range(1, b)))


def _cot2_sin_lhs(p, B):
    k, a = p["k"], p["a"]
    return _char_total(B, _character(p), lambda j: B.cot(_half(j, k)) ** 2 * B.sin(_full(a * j, k)))


def _cot2_sin_rhs(p, B):
    k, a = p["k"], p["a"]
    chi = _character(p)
    tail = sum(chi(m) * (a - m) for m in range(a))
    return B.sqrt(k) * (4 * a * _h(k) - chi(a) - 4 * tail)


def _sin2_over_sin4_lhs(p, B):
    k = p["k"]
    return _char_total(B, _character(p), lambda j: B.sin(_half(j, k)) ** 2 * B.csc(_full(2 * j, k)))


def _sin2_over_sin4_rhs(p, B):
    k = p["k"]
    return B.sqrt(k) * (Fraction(3, 2) * (_character(p)(2) - 1) * _h(k))


def _sin2_cot_lhs(p, B):
    k = p["k"]
    return _char_total(B, _character(p), lambda j: B.sin(_half(j, k)) ** 2 * B.cot(_half(j, k)))


def _sin2_cot_rhs(p, B):
    return B.sqrt(p["k"]) * Fraction(1, 2)


def _sin2_tan_lhs(p, B):
    k = p["k"]
    return _char_total(B, _character(p), lambda j: B.sin(_half(j, k)) ** 2 * B.tan(_half(j, k)))


def _sin2_tan_rhs(p, B):
    k = p["k"]
    return B.sqrt(k) * (Fraction(-1, 2) + (2 - 4 * _character(p)(2)) * _h(k))


def _sin2_tan2_lhs(p, B):
    k = p["k"]
    return _char_total(B, _character(p), lambda j: B.sin(_half(j, k)) ** 2 * B.tan(_full(j, k)))


def _sin2_tan2_rhs(p, B):
    k = p["k"]
    return B.sqrt(k) * (Fraction(-1, 2) + (_character(p)(2) - 2) * _h(k))


def _const(f: Callable[[Params], object]):
    return lambda p, B: B.const(f(p))


# ---------------------------------------------------------------------------
# the catalog


def _build() -> tuple[IdentityRecord, ...]:
    R = IdentityRecord
    char_reason = _primitive_char
    return (
        R("stern_tan2", "Stern: sum tan^2(pi j/k) = k^2 - k", ("k",), "k odd",
          _stern_lhs, _const(lambda p: p["k"] ** 2 - p["k"]), _k_odd, _only_k),
        R("cot2_sum", "sum cot^2(pi j/k) = (k-1)(k-2)/3", ("k",), "k >= 2",
          _cot2_lhs, _const(lambda p: Fraction((p["k"] - 1) * (p["k"] - 2), 3)), _k_any(2), _only_k),
        R("csc2_sum", "sum csc^2(2 pi j/k) = (k^2 - 1)/3", ("k",), "k odd",
          _csc2_lhs, _const(lambda p: Fraction(p["k"] ** 2 - 1, 3)), _k_odd, _only_k),
        R("sec2_sum", "sum sec^2(2 pi j/k) = k^2 - 1", ("k",), "k odd",
          _sec2_lhs, _const(lambda p: p["k"] ** 2 - 1), _k_odd, _only_k),
        R("eisenstein_cot_sin", "Eisenstein: sum cot(pi j/k) sin(2 pi a j/k) = k - 2a",
          ("k", "a"), "0 < a < k",
          _eisenstein_lhs, _const(lambda p: p["k"] - 2 * p["a"]), _with(_k_any(2), _a_between), _a_range),
        R("tan_sin", "sum tan(pi j/k) sin(2 pi a j/k) = (-1)^(a+1) k", ("k", "a"), "k odd, 0 < a < k",
          _tan_sin_lhs, _const(lambda p: (-1) ** (p["a"] + 1) * p["k"]), _with(_k_odd, _a_between), _a_range),
        R("sin_csc", "sum sin(2 pi a j/k) csc(2 pi j/k) = k - a (a odd), -a (a even)",
          ("k", "a"), "k odd, 0 < a < k",
          _sin_csc_lhs, _const(lambda p: p["k"] - p["a"] if p["a"] % 2 else -p["a"]),
          _with(_k_odd, _a_between), _a_range),
        R("tan_csc", "sum tan(pi j/k) csc(2 pi j/k) = (k^2 - 1)/2", ("k",), "k odd",
          _tan_csc_lhs, _const(lambda p: Fraction(p["k"] ** 2 - 1, 2)), _k_odd, _only_k),
        R("cot_csc", "sum cot(pi j/k) csc(2 pi j/k) = (k^2 - 1)/6", ("k",), "k odd",
          _cot_csc_lhs, _const(lambda p: Fraction(p["k"] ** 2 - 1, 6)), _k_odd, _only_k),
        R("tan4_sum", "sum_{j=0}^{k-1} tan^4(pi j/k) = k(k-1)(k^2+k-3)/3", ("k",), "k odd",
          _tan4_lhs, _const(lambda p: Fraction(p["k"] * (p["k"] - 1) * (p["k"] ** 2 + p["k"] - 3), 3)),
          _k_odd, _only_k),
        R("sin_power_sum", "sum_{j=0}^{k-1} sin^(2a)(b pi j/k + x) = k binom(2a,a)/4^a",
          ("k", "a", "b", "x_turns"), "0 < ab < k, any real x",
          _sin_power_lhs, _power_rhs, _with(_k_any(2), _ab_below_k), _power_bindings,
          exact_form="exact when x is a rational number of turns; L = lcm(4, 2k, denominator of x)"),
        R("cos_power_sum", "sum_{j=0}^{k-1} cos^(2a)(b pi j/k + x) = k binom(2a,a)/4^a",
          ("k", "a", "b", "x_turns"), "0 < ab < k, any real x",
          _cos_power_lhs, _power_rhs, _with(_k_any(2), _ab_below_k), _power_bindings,
          exact_form="exact when x is a rational number of turns; L = lcm(4, 2k, denominator of x)"),
        R("binom_square", "sum_m binom(a,m)^2 = binom(2a,a)", ("a",), "a >= 1",
          _binom_square_lhs, _central_binom, lambda p: None if p["a"] >= 1 else "a must be positive",
          _binom_bindings, uses_modulus=False, exact_form="integer arithmetic"),
        R("binom_alt", "sum_m (-1)^m 4^(a-m) binom(2m,m) binom(a,m) = binom(2a,a)", ("a",), "a >= 1",
          _binom_alt_lhs, _central_binom, lambda p: None if p["a"] >= 1 else "a must be positive",
          _binom_bindings, uses_modulus=False, exact_form="integer arithmetic"),
        R("char_sin_power",
          "sum chi(j) sin^a(2 pi b j/k + x) = sqrt(k)/2^(a-1) sum_{n+2mb=ab} (-1)^(m-(a-1)/2) binom(a,m) cos((a-2m)x) chi(n)",
          ("k", "a", "b", "x_turns", "chi"), "chi nonprincipal, real, odd; a odd; 1 <= ab < k",
          _char_sin_power_lhs, _char_sin_power_rhs, _with(_real_odd_char, _char_power_params),
          _char_power_bindings, uses_character=True,
          exact_form="exact when x is a rational number of turns; L = lcm(4, 2k, denominator of x)"),
        R("char_cos_power",
          "sum chi(j) cos^a(2 pi b j/k + x) = -sqrt(k)/2^(a-1) sum_{n+2mb=ab} binom(a,m) sin((a-2m)x) chi(n)",
          ("k", "a", "b", "x_turns", "chi"), "chi nonprincipal, real, odd; a odd; 1 <= ab < k",
          _char_cos_power_lhs, _char_cos_power_rhs, _with(_real_odd_char, _char_power_params),
          _char_power_bindings, uses_character=True,
          exact_form="exact when x is a rational number of turns; L = lcm(4, 2k, denominator of x)"),
        R("char_sin", "sum chi(j) sin(2 pi b j/k) = sqrt(k) chi(b)", ("k", "b", "chi"),
          "chi nonprincipal, real, odd; k does not divide b",
          _char_sin_lhs, _char_sin_rhs,
          _with(_real_odd_char, lambda p: "k must not divide b" if p["b"] % p["k"] == 0 else None),
          _char_sin_bindings, uses_character=True),
        R("bz_cot", "Berndt-Zaharescu: sum chi(j) cot(pi j/k) = 2 sqrt(k) h(-k)", ("k", "chi"),
          "chi nonprincipal, real, primitive, odd; k >= 7 odd",
          _bz_cot_lhs, _bz_cot_rhs, char_reason, _char_k_bindings, uses_character=True),
        R("bz_cot_b", "sum chi(j) cot(pi j b/k) = 2 sqrt(k) chi(b) h(-k)", ("k", "b", "chi"),
          "chi nonprincipal, real, primitive, odd; k >= 7 odd; gcd(b, k) = 1",
          _bz_cot_b_lhs, _bz_cot_b_rhs,
          _with(char_reason, lambda p: None if gcd(p["b"], p["k"]) == 1 else "need gcd(b, k) = 1"),
          _coprime_b, uses_character=True),
        R("bz_tan", "Berndt-Zaharescu: sum chi(j) tan(pi j/k) = sqrt(k)(2 - 4 chi(2)) h(-k)", ("k", "chi"),
          "chi nonprincipal, real, primitive, odd; k >= 7 odd",
          _bz_tan_lhs, _bz_tan_rhs, char_reason, _char_k_bindings, uses_character=True),
        R("bz_csc", "sum chi(j) csc(2 pi j/k) = 2 sqrt(k)(1 - chi(2)) h(-k)", ("k", "chi"),
          "chi nonprincipal, real, primitive, odd; k >= 7 odd",
          _bz_csc_lhs, _bz_csc_rhs, char_reason, _char_k_bindings, uses_character=True),
        R("bz_cot_cospow",
          "Berndt-Zaharescu: sum chi(j) cot(pi j/k) cos^(a-1)(pi j/k) = 2 sqrt(k)(h(-k) - 2^(1-a) sum_{n+2m+s=(a-1)/2} chi(n) binom(a+1,s))",
          ("k", "a", "chi"), "chi nonprincipal, real, primitive, odd; k >= 7 odd; a odd, a - 3 < 2k",
          _cospow_lhs, _cospow_rhs,
          _with(char_reason, lambda p: None if p["a"] >= 1 and p["a"] % 2 and p["a"] - 3 < 2 * p["k"]
                else "a must be odd and positive with a - 3 < 2k"),
          _cospow_bindings, uses_character=True),
        R("bz_cot_cos",
          "Berndt-Zaharescu: sum chi(j) cot(pi j/k) cos(2 pi b j/k) = sqrt(k)(2 h(-k) - chi(b) - 2 sum_{n<b} chi(n))",
          ("k", "b", "chi"), "chi nonprincipal, real, primitive, odd; k >= 7 odd; 1 <= b <= k",
          _cot_cos_lhs, _cot_cos_rhs,
          _with(char_reason, lambda p: None if 1 <= p["b"] <= p["k"] else "need 1 <= b <= k"),
          _b_through_k, uses_character=True),
        R("cot2_sin",
          "sum chi(j) cot^2(pi j/k) sin(2 pi a j/k) = sqrt(k)(4a h(-k) - chi(a) - 4 sum_{m<a} chi(m)(a-m))",
          ("k", "a", "chi"), "chi nonprincipal, real, primitive, odd; k >= 7 odd; a >= 0",
          _cot2_sin_lhs, _cot2_sin_rhs,
          _with(char_reason, lambda p: None if p["a"] >= 0 else "a must be nonnegative"),
          _a_through_k, uses_character=True),
        R("char_sin2_over_sin4",
          "Berndt-Zaharescu: sum chi(j) sin^2(pi j/k)/sin(4 pi j/k) = (3 sqrt(k)/2)(chi(2) - 1) h(-k)",
          ("k", "chi"), "chi nonprincipal, real, primitive, odd; k >= 7 odd",
          _sin2_over_sin4_lhs, _sin2_over_sin4_rhs, char_reason, _char_k_bindings, uses_character=True),
        R("char_sin2_cot", "sum chi(j) sin^2(pi j/k) cot(pi j/k) = sqrt(k)/2", ("k", "chi"),
          "chi nonprincipal, real, primitive, odd; k >= 7 odd",
          _sin2_cot_lhs, _sin2_cot_rhs, char_reason, _char_k_bindings, uses_character=True),
        R("char_sin2_tan", "sum chi(j) sin^2(pi j/k) tan(pi j/k) = sqrt(k)(-1/2 + (2 - 4 chi(2)) h(-k))",
          ("k", "chi"), "chi nonprincipal, real, primitive, odd; k >= 7 odd",
          _sin2_tan_lhs, _sin2_tan_rhs, char_reason, _char_k_bindings, uses_character=True),
        R("char_sin2_tan2", "sum chi(j) sin^2(pi j/k) tan(2 pi j/k) = sqrt(k)(-1/2 + (chi(2) - 2) h(-k))",
          ("k", "chi"), "chi nonprincipal, real, primitive, odd; k >= 7 odd",
          _sin2_tan2_lhs, _sin2_tan2_rhs, char_reason, _char_k_bindings, uses_character=True),
    )


_CATALOG = _build()
_BY_ID = {r.id: r for r in _CATALOG}
assert len(_BY_ID) == len(_CATALOG), "duplicate identity id"


def catalog() -> tuple[IdentityRecord, ...]:
    return _CATALOG


def lookup(identity: str) -> IdentityRecord:
    try:
        return _BY_ID[identity]
    except KeyError:
        raise KeyError(f"unknown identity {identity!r}") from None


def applicable(identity: str, params: Params) -> tuple[bool, Optional[str]]:
    """(True, None) or (False, reason naming the violated hypothesis)."""
    rec = lookup(identity)
    p = _normalize(params)
    missing = [name for name in rec.params if name not in p and name != "chi"]
    if missing:
        return False, f"missing parameters: {', '.join(missing)}"
    reason = rec.reason(p)
    return (reason is None), reason


def make_backend(
    rec: IdentityRecord,
    params: Params,
    backend: Union[str, Backend] = "float",
    precision: int = DEFAULT_PRECISION,
    tolerance=None,
) -> Backend:
    if isinstance(backend, (ExactBackend, FloatBackend)):
        return backend
    if backend == "exact":
        return ExactBackend(rec.field_modulus(_normalize(params)))
    if backend == "float":
        return FloatBackend(precision, tolerance)
    raise ValueError(f"unknown backend {backend!r}")


def _require(identity: str, params: Params) -> tuple[IdentityRecord, Params]:
    ok, reason = applicable(identity, params)
    if not ok:
        raise ValueError(f"{identity} not applicable: {reason}")
    return lookup(identity), _normalize(params)


def eval_lhs(identity: str, params: Params, backend: Union[str, Backend] = "float"):
    rec, p = _require(identity, params)
    return rec.lhs(p, make_backend(rec, p, backend))


def eval_rhs(identity: str, params: Params, backend: Union[str, Backend] = "float"):
    rec, p = _require(identity, params)
    return rec.rhs(p, make_backend(rec, p, backend))


def check(
    identity: str,
    params: Params,
    backend: Union[str, Backend] = "float",
    precision: int = DEFAULT_PRECISION,
    tolerance=None,
    probe: bool = False,
) -> CheckResult:
    """Evaluate both sides and compare; failures are reported in the result, not raised."""
    rec = lookup(identity)
    p = _normalize(params)
    ok, reason = applicable(identity, p)
    if not ok:
        descriptor = backend if isinstance(backend, str) else backend.descriptor
        return CheckResult(identity, p, descriptor, verdict="not_applicable", reason=reason, probe=probe)
    B = make_backend(rec, p, backend, precision, tolerance)
    result = CheckResult(identity, p, B.descriptor, probe=probe)
    try:
        lhs = rec.lhs(p, B)
        rhs = rec.rhs(p, B)
    except (ZeroDivisionError, ValueError) as exc:
        result.verdict = "fail"
        result.reason = f"evaluation error: {exc}"
        return result
    diff = lhs - rhs
    result.lhs, result.rhs = lhs, rhs
    result.residual = B.residual(diff)
    if isinstance(B, ExactBackend):
        result.verdict = "pass" if diff.is_zero() else "fail"
    else:
        result.verdict = "pass" if result.residual <= B.tolerance else "fail"
    return result


def bindings(identity: str, k: int, backend_kind: str = "float", probe: bool = False) -> list[tuple[Params, bool]]:
    """In-hypothesis parameter bindings for one modulus, in lexicographic order."""
    rec = lookup(identity)
    out = [(p, is_probe) for p, is_probe in rec.bindings(k, backend_kind, probe) if rec.reason(p) is None]
    order = {name: i for i, name in enumerate(rec.params)}

    def key(item):
        p, is_probe = item
        return tuple(str(p[name]) if name == "chi" else p[name] for name in sorted(p, key=order.get))

    out.sort(key=key)
    return out


_REAL_ODD_FAMILY = ("char_sin_power", "char_cos_power", "char_sin")


def modulus_reason(identity: str, k: int) -> Optional[str]:
    """Why k admits no binding at all (None when at least one binding exists)."""
    rec = lookup(identity)
    if any(rec.reason(p) is None for p, _ in rec.bindings(k, "float", False)):
        return None
    if not rec.uses_modulus:
        return "a must be positive"
    if rec.id in _REAL_ODD_FAMILY:
        r = _real_odd_char({"k": k})
    elif rec.uses_character:
        r = _primitive_char({"k": k})
    else:
        r = rec.reason({"k": k, "a": 1, "b": 1, "x_turns": Fraction(0)})
    return r or "no parameters satisfy the hypotheses for this k"


# ---------------------------------------------------------------------------
# character-weighted cotangent transforms


def char_cot_transform(chi: Character, n: int, power: int = 1, backend: Union[str, Backend] = "float",
                       debug: bool = False):
    """(1/k) sum_j chi(j) cot^power(pi j/k) omega^(jn) in closed form.

    power 1:  (2h + chi(n) - 2 sum_{m<=n} chi(m)) / sqrt(k)
    power 2:  i (4nh - chi(n) - 4 sum_{m<=n} chi(m)(n - m)) / sqrt(k)

    chi must be nonprincipal, real, primitive and odd with k >= 7 odd.  With
    ``debug=True`` the closed form is compared against the direct sum.
    """
    k = chi.modulus
    if not (chi.is_real and chi.is_odd and chi.is_primitive and not chi.is_principal) or k < 7 or k % 2 == 0:
        raise ValueError("character must be nonprincipal, real, primitive and odd with k >= 7 odd")
    if power not in (1, 2):
        raise ValueError("power must be 1 or 2")
    if not 0 <= n < k:
        raise ValueError("need 0 <= n < k")
    if isinstance(backend, str):
        backend = ExactBackend(4 * k) if backend == "exact" else FloatBackend()
    B = backend
    h = _h(k)
    inv_sqrt = B.sqrt(k) * Fraction(1, k)
    if power == 1:
        value = inv_sqrt * (2 * h + chi(n) - 2 * sum(chi(m) for m in range(n + 1)))
    else:
        inner = 4 * n * h - chi(n) - 4 * sum(chi(m) * (n - m) for m in range(n + 1))
        value = B.imag_unit() * inv_sqrt * inner
    if debug:
        direct = _char_total(B, chi, lambda j: B.cot(_half(j, k)) ** power * B.root_of_unity(k, j * n))
        direct = direct * Fraction(1, k)
        assert B.is_zero(direct - value), "char_cot_transform: closed form disagrees with direct sum"
    return value
