"""Periodic functions on Z, their discrete Fourier transforms, and transform tables.

Convention, with ``omega = exp(2*pi*i/k)``::

    dft(f)(n)         = sum_j f(j) * omega**(-j*n)
    inverse_dft(F)(n) = (1/k) * sum_j F(j) * omega**(j*n)

Transforms are direct O(k^2) sums so they work unchanged over the exact
cyclotomic backend.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import lcm
from typing import Callable, Literal, Optional, Sequence

from .scalars import (
    ApproxComplex,
    CycloNumber,
    ExactBackend,
    FloatBackend,
    ModulusMismatch,
    cyclo_linear_combination,
    inv_one_minus_root,
)

__all__ = [
    "PAIR_NAMES",
    "PeriodicFn",
    "TransformPair",
    "convolve",
    "delta",
    "dft",
    "dot_sum",
    "inverse_dft",
    "parity",
    "trig_table",
]

Parity = Literal["even", "odd", "neither"]


def _default_backend(k: int, values: Sequence) -> ExactBackend | FloatBackend:
    bits = [v.precision_bits for v in values if isinstance(v, ApproxComplex)]
    if bits:
        return FloatBackend(min(bits))
    modulus = k
    for v in values:
        if isinstance(v, CycloNumber):
            modulus = lcm(modulus, v.modulus)
    return ExactBackend(modulus)


@dataclass(frozen=True)
class PeriodicFn:
    """A k-periodic function on Z, stored as its values at 0..k-1."""

    values: tuple
    backend: ExactBackend | FloatBackend

    def __init__(self, values: Sequence, backend: ExactBackend | FloatBackend | None = None):
        values = tuple(values)
        if not values:
            raise ValueError("a periodic function needs at least one value")
        if backend is None:
            backend = _default_backend(len(values), values)
        if isinstance(backend, ExactBackend) and backend.modulus % len(values):
            raise ModulusMismatch(len(values), backend.modulus)
        object.__setattr__(self, "values", tuple(backend.const(v) for v in values))
        object.__setattr__(self, "backend", backend)

    @classmethod
    def from_function(
        cls, k: int, fn: Callable[[int], object], backend: ExactBackend | FloatBackend | None = None
    ) -> "PeriodicFn":
        return cls([fn(n) for n in range(k)], backend if backend is not None else ExactBackend(k))

    @property
    def modulus(self) -> int:
        return len(self.values)

    def __call__(self, n: int):
        return self.values[n % len(self.values)]

    def __getitem__(self, n: int):
        return self(n)

    def __len__(self) -> int:
        return len(self.values)

    def _other(self, other: "PeriodicFn") -> "PeriodicFn":
        if other.modulus != self.modulus:
            raise ModulusMismatch(self.modulus, other.modulus)
        return other

    def __add__(self, other: "PeriodicFn") -> "PeriodicFn":
        other = self._other(other)
        return PeriodicFn([a + b for a, b in zip(self.values, other.values)], self.backend)

    def __sub__(self, other: "PeriodicFn") -> "PeriodicFn":
        other = self._other(other)
        return PeriodicFn([a - b for a, b in zip(self.values, other.values)], self.backend)

    def __mul__(self, other):
        if isinstance(other, PeriodicFn):
            other = self._other(other)
            return PeriodicFn([a * b for a, b in zip(self.values, other.values)], self.backend)
        return PeriodicFn([a * other for a in self.values], self.backend)

    __rmul__ = __mul__

    def __neg__(self) -> "PeriodicFn":
        return PeriodicFn([-a for a in self.values], self.backend)

    def reflect(self) -> "PeriodicFn":
        """n -> f(-n)."""
        return PeriodicFn([self(-n) for n in range(self.modulus)], self.backend)

    def equals(self, other: "PeriodicFn") -> bool:
        """Pointwise equality: exact on the cyclotomic backend, within tolerance on floats."""
        if other.modulus != self.modulus:
            return False
        return all(self.backend.is_zero(a - b) for a, b in zip(self.values, other.values))

    def with_backend(self, backend) -> "PeriodicFn":
        return PeriodicFn(self.values, backend)


def delta(k: int, a: int = 0, backend=None) -> PeriodicFn:
    """Indicator of the residue class a mod k."""
    return PeriodicFn.from_function(k, lambda n: 1 if (n - a) % k == 0 else 0, backend)


def _transform(f: PeriodicFn, sign: int) -> list:
    k = f.modulus
    B = f.backend
    if isinstance(B, ExactBackend):
        L = B.modulus
        step = L // k
        return [
            cyclo_linear_combination(L, ((f.values[j], sign * j * n * step) for j in range(k)))
            for n in range(k)
        ]
    powers = [B.root_of_unity(k, sign * m) for m in range(k)]
    out = []
    for n in range(k):
        acc = B.zero()
        for j in range(k):
            v = f.values[j]
            acc = acc + v * powers[(j * n) % k]
        out.append(acc)
    return out


def dft(f: PeriodicFn) -> PeriodicFn:
    """hat f(n) = sum_j f(j) omega^(-jn)."""
    return PeriodicFn(_transform(f, -1), f.backend)


def inverse_dft(F: PeriodicFn) -> PeriodicFn:
    """f(n) = (1/k) sum_j F(j) omega^(jn)."""
    k = F.modulus
    return PeriodicFn([v * Fraction(1, k) for v in _transform(F, 1)], F.backend)


def convolve(f: PeriodicFn, g: PeriodicFn) -> PeriodicFn:
    """(f*g)(n) = sum_j f(j) g(n-j)."""
    if f.modulus != g.modulus:
        raise ModulusMismatch(f.modulus, g.modulus)
    k = f.modulus
    B = f.backend
    out = []
    for n in range(k):
        acc = B.zero()
        for j in range(k):
            a = f.values[j]
            b = g.values[(n - j) % k]
            acc = acc + a * b
        out.append(acc)
    return PeriodicFn(out, B)


def parity(f: PeriodicFn) -> Parity:
    """Classify f as even, odd, or neither by comparing f(n) with f(k-n).

    The zero function is reported as even.
    """
    k = f.modulus
    B = f.backend
    if all(B.is_zero(f(n) - f(-n)) for n in range(k)):
        return "even"
    if all(B.is_zero(f(n) + f(-n)) for n in range(k)):
        return "odd"
    return "neither"


def dot_sum(
    f: PeriodicFn,
    g: PeriodicFn,
    mode: Literal["reflect", "same_sign"] = "reflect",
    debug: bool = False,
):
    """``sum f(m) g(-m)`` (reflect) or ``sum f(m) g(m)`` (same_sign).

    Each equals ``(+-1/k) * sum hat f(j) hat g(j)``; with ``debug=True`` both
    sides are computed and compared, and AssertionError is raised on
    disagreement.  same_sign needs f or g to be even or odd, since the sign
    of the Fourier side comes from that parity.
    """
    if f.modulus != g.modulus:
        raise ModulusMismatch(f.modulus, g.modulus)
    k = f.modulus
    B = f.backend
    if mode == "reflect":
        direct = B.zero()
        for m in range(k):
            direct = direct + f(m) * g(-m)
        sign = 1
    elif mode == "same_sign":
        pf, pg = parity(f), parity(g)
        if pf == "odd" or pg == "odd":
            sign = -1
        elif pf == "even" or pg == "even":
            sign = 1
        else:
            raise ValueError("same_sign needs f or g to be even or odd")
        direct = B.zero()
        for m in range(k):
            direct = direct + f(m) * g(m)
    else:
        raise ValueError(f"unknown mode {mode!r}")
    if debug:
        fh, gh = dft(f), dft(g)
        fourier = B.zero()
        for j in range(k):
            fourier = fourier + fh(j) * gh(j)
        fourier = fourier * Fraction(sign, k)
        assert B.is_zero(direct - fourier), "dot_sum: direct and Fourier sides disagree"
    return direct


# ---------------------------------------------------------------------------
# tabulated transform pairs

PAIR_NAMES = (
    "sin_a",
    "cos_a",
    "sawtooth_cot",
    "signed_alternating_tan",
    "sin_squared",
    "tan_double",
)


@dataclass(frozen=True)
class TransformPair:
    name: str
    k: int
    a: Optional[int]
    time_side: PeriodicFn
    freq_side: PeriodicFn

    def holds(self) -> bool:
        return dft(self.time_side).equals(self.freq_side)


def pair_valid(name: str, k: int, a: Optional[int] = None) -> bool:
    if k < 1:
        return False
    if name in ("sin_a", "cos_a"):
        return a is not None and 0 < a < k and 2 * a != k
    if name in ("sawtooth_cot", "signed_alternating_tan"):
        return k % 2 == 1
    if name == "sin_squared":
        return True
    if name == "tan_double":
        return k % 4 == 3
    raise ValueError(f"unknown transform pair {name!r}")


def sawtooth(n: int, k: int) -> Fraction:
    """{n/k} - 1/2, and 0 when k | n."""
    r = n % k
    return Fraction(0) if r == 0 else Fraction(r, k) - Fraction(1, 2)


def signed_alternating(n: int, k: int) -> int:
    """(-1)^(n mod k) with the least positive residue, and 0 when k | n."""
    r = n % k
    return 0 if r == 0 else (-1) ** r


def tan_double_table(n: int, k: int) -> int:
    """Inverse-transform table of i*tan(2 pi n/k): sign by (n mod k) mod 4."""
    r = n % k
    if r == 0:
        return 0
    return 1 if r % 4 in (0, 1) else -1


def trig_table(name: str, k: int, a: Optional[int] = None, backend=None) -> TransformPair:
    """Both sides of one of the tabulated transform pairs.

    The default backend is exact, in the smallest cyclotomic field holding
    both sides (always Q(omega_k) here).
    """
    if name not in PAIR_NAMES:
        raise ValueError(f"unknown transform pair {name!r}")
    if not pair_valid(name, k, a):
        raise ValueError(f"pair not defined for these parameters: {name}, k={k}, a={a}")
    B = backend if backend is not None else ExactBackend(k)
    i = B.imag_unit() if isinstance(B, FloatBackend) else None
    half = Fraction(1, 2)

    def hit(n: int, m: int) -> bool:
        return (n - m) % k == 0

    if name == "sin_a":
        time = [half if hit(n, -a) else -half if hit(n, a) else 0 for n in range(k)]
        freq = [_i_sin(B, i, Fraction(a * n, k)) for n in range(k)]
    elif name == "cos_a":
        time = [half if hit(n, -a) or hit(n, a) else 0 for n in range(k)]
        freq = [B.cos(Fraction(a * n, k)) for n in range(k)]
    elif name == "sawtooth_cot":
        time = [sawtooth(n, k) for n in range(k)]
        freq = [0] + [_i_cot(B, i, Fraction(n, 2 * k)) * half for n in range(1, k)]
    elif name == "signed_alternating_tan":
        time = [signed_alternating(n, k) for n in range(k)]
        freq = [_i_tan(B, i, Fraction(n, 2 * k)) for n in range(k)]
    elif name == "sin_squared":
        quarter = Fraction(1, 4)
        time = [
            (half if hit(n, 0) else 0) - (quarter if hit(n, -1) else 0) - (quarter if hit(n, 1) else 0)
            for n in range(k)
        ]
        # sin^2(pi n/k) = (1 - cos(2 pi n/k))/2, which needs no i
        freq = [(1 - B.cos(Fraction(n, k))) * half for n in range(k)]
    else:  # tan_double
        time = [tan_double_table(n, k) for n in range(k)]
        freq = [_i_tan(B, i, Fraction(n, k)) for n in range(k)]
    return TransformPair(name, k, a, PeriodicFn(time, B), PeriodicFn(freq, B))


# i*sin, i*cot, i*tan as elements of Q(omega_k): with w = exp(2 pi i t),
#   i*sin(2 pi t) = (w - 1/w)/2, i*cot(pi s) = -(u + 1)/(u - 1), i*tan(pi s) = (u - 1)/(u + 1)
# where u = exp(2 pi i s).  The float backend just multiplies by i.


def _i_sin(B, i, t: Fraction):
    if i is not None:
        return i * B.sin(t)
    return (B.cis(t) - B.cis(-t)) * Fraction(1, 2)


def _i_cot(B, i, t: Fraction):
    if i is not None:
        return i * B.cot(t)
    u = B.cis(2 * t)
    # 1/(u - 1) = -1/(1 - u)
    return (u + 1) * inv_one_minus_root(B.modulus, round(2 * t * B.modulus))


def _i_tan(B, i, t: Fraction):
    if i is not None:
        return i * B.tan(t)
    u = B.cis(2 * t)
    # u + 1 = 1 - (-u)
    return (u - 1) * inv_one_minus_root(B.modulus, round(2 * t * B.modulus), negate=True)
