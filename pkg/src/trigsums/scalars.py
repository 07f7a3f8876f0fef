"""Scalar systems: exact cyclotomic numbers and arbitrary-precision complex floats.

Both kinds of scalar support ``+ - * /``, unary minus, integer powers,
``conj()`` and mixing with ``int``/``Fraction``.  A *backend* bundles a
scalar system with the constructors the higher layers need (rationals,
roots of unity, trig values at rational multiples of a full turn, square
roots of integers) and with the zero test used for verdicts.

Angles handed to a backend are measured in *turns*: ``t`` stands for the
angle ``2*pi*t``.
"""

from __future__ import annotations

import math
from fractions import Fraction
from functools import lru_cache
from numbers import Rational
from typing import Iterable, Sequence, Union

import mpmath
from mpmath.ctx_mp_python import _mpc, _mpf

__all__ = [
    "ApproxComplex",
    "CycloNumber",
    "ExactBackend",
    "FloatBackend",
    "ModulusMismatch",
    "cyclo_inverse",
    "cyclo_linear_combination",
    "cyclo_mul",
    "cyclotomic_polynomial",
    "embed_complex",
    "inv_one_minus_root",
    "euler_phi",
    "root_of_unity_power",
]

RationalLike = Union[int, Fraction]

DEFAULT_PRECISION = 256


class ModulusMismatch(ValueError):
    """Raised when two cyclotomic numbers from different fields are combined."""

    def __init__(self, left: int, right: int):
        super().__init__(f"cyclotomic modulus mismatch: {left} vs {right}")
        self.left = left
        self.right = right


# ---------------------------------------------------------------------------
# integer polynomials (ascending coefficient lists)


def _poly_mul(a: Sequence[int], b: Sequence[int]) -> list[int]:
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] += x * y
    return out


def _poly_divexact(num: Sequence[int], den: Sequence[int]) -> list[int]:
    """Quotient of ``num`` by the monic ``den``; the remainder must vanish."""
    rem = list(num)
    d = len(den) - 1
    quot = [0] * (len(rem) - d)
    for deg in range(len(rem) - 1, d - 1, -1):
        c = rem[deg]
        if c:
            quot[deg - d] = c
            for i, y in enumerate(den):
                rem[deg - d + i] -= c * y
    if any(rem[:d]):
        raise ArithmeticError("polynomial division is not exact")
    return quot


@lru_cache(maxsize=None)
def _divisors(n: int) -> tuple[int, ...]:
    small, large = [], []
    i = 1
    while i * i <= n:
        if n % i == 0:
            small.append(i)
            if i * i != n:
                large.append(n // i)
        i += 1
    return tuple(small + large[::-1])


@lru_cache(maxsize=None)
def euler_phi(n: int) -> int:
    result, m, p = n, n, 2
    while p * p <= m:
        if m % p == 0:
            while m % p == 0:
                m //= p
            result -= result // p
        p += 1
    if m > 1:
        result -= result // m
    return result


@lru_cache(maxsize=None)
def _cyclotomic(k: int) -> tuple[int, ...]:
    if k < 1:
        raise ValueError("cyclotomic polynomial needs k >= 1")
    num = [-1] + [0] * (k - 1) + [1]
    den = [1]
    for d in _divisors(k)[:-1]:
        den = _poly_mul(den, _cyclotomic(d))
    return tuple(_poly_divexact(num, den))


def cyclotomic_polynomial(k: int) -> list[int]:
    """Coefficients of the k-th cyclotomic polynomial, lowest degree first."""
    return list(_cyclotomic(k))


@lru_cache(maxsize=None)
def _reduction_terms(k: int) -> tuple[int, tuple[tuple[int, int], ...]]:
    phi = _cyclotomic(k)
    d = len(phi) - 1
    return d, tuple((i, c) for i, c in enumerate(phi[:-1]) if c)


def _reduce(k: int, poly: list[int]) -> list[int]:
    """Reduce an integer polynomial modulo Phi_k; returns exactly phi(k) coefficients.

    Mutates ``poly``.
    """
    d, terms = _reduction_terms(k)
    if len(poly) > k:
        # x^k = 1 holds in the field, so fold first
        folded = poly[:k]
        for i in range(k, len(poly)):
            folded[i % k] += poly[i]
        poly = folded
    if len(poly) <= d:
        return poly + [0] * (d - len(poly))
    for deg in range(len(poly) - 1, d - 1, -1):
        c = poly[deg]
        if c:
            base = deg - d
            for i, ci in terms:
                poly[base + i] -= c * ci
    del poly[d:]
    return poly


def _kronecker_mul(a: Sequence[int], b: Sequence[int]) -> list[int]:
    """Product of integer polynomials by packing them into one big integer."""
    bound = max(map(abs, a)) * max(map(abs, b)) * min(len(a), len(b))
    if bound == 0:
        return [0] * (len(a) + len(b) - 1)
    shift = bound.bit_length() + 2
    packed_a = 0
    for c in reversed(a):
        packed_a = (packed_a << shift) + c
    packed_b = 0
    for c in reversed(b):
        packed_b = (packed_b << shift) + c
    x = packed_a * packed_b
    mask = (1 << shift) - 1
    half = 1 << (shift - 1)
    full = 1 << shift
    out = []
    for _ in range(len(a) + len(b) - 1):
        c = x & mask
        x >>= shift
        if c >= half:
            c -= full
            x += 1
        out.append(c)
    return out


# ---------------------------------------------------------------------------
# exact cyclotomic numbers


class CycloNumber:
    """An element of Q(zeta_k), stored reduced modulo the k-th cyclotomic polynomial.

    Internally the coefficients are integers over one positive common
    denominator in lowest terms, so equal numbers have equal representations.
    """

    __slots__ = ("modulus", "_num", "_den")

    def __init__(self, modulus: int, coeffs: Iterable[RationalLike] = ()):
        if modulus < 1:
            raise ValueError("modulus must be positive")
        fracs = [Fraction(c) for c in coeffs]
        den = 1
        for f in fracs:
            den = den * f.denominator // math.gcd(den, f.denominator)
        nums = [f.numerator * (den // f.denominator) for f in fracs]
        self._set(modulus, _reduce(modulus, nums), den)

    def _set(self, modulus: int, nums: list[int], den: int) -> None:
        g = math.gcd(den, *nums)
        if g > 1:
            nums = [c // g for c in nums]
            den //= g
        self.modulus = modulus
        self._num = tuple(nums)
        self._den = den

    @classmethod
    def _raw(cls, modulus: int, nums: list[int], den: int = 1) -> "CycloNumber":
        """Build from already-reduced integer numerators (length phi(modulus))."""
        obj = cls.__new__(cls)
        if den < 0:
            nums = [-c for c in nums]
            den = -den
        obj._set(modulus, nums, den)
        return obj

    @classmethod
    def from_rational(cls, modulus: int, q: RationalLike) -> "CycloNumber":
        q = Fraction(q)
        nums = [0] * euler_phi(modulus)
        nums[0] = q.numerator
        return cls._raw(modulus, nums, q.denominator)

    @classmethod
    def zeta_power(cls, modulus: int, j: int) -> "CycloNumber":
        return _zeta_power(modulus, j % modulus)

    # -- inspection ---------------------------------------------------------

    @property
    def coeffs(self) -> tuple[Fraction, ...]:
        return tuple(Fraction(c, self._den) for c in self._num)

    @property
    def degree(self) -> int:
        return len(self._num)

    def is_zero(self) -> bool:
        return not any(self._num)

    def is_rational(self) -> bool:
        return not any(self._num[1:])

    def rational_value(self) -> Fraction:
        if not self.is_rational():
            raise ValueError("cyclotomic number is not rational")
        return Fraction(self._num[0] if self._num else 0, self._den)

    def __bool__(self) -> bool:
        return not self.is_zero()

    def __eq__(self, other: object) -> bool:
        if isinstance(other, (int, Fraction)):
            return self.is_rational() and self.rational_value() == other
        if not isinstance(other, CycloNumber):
            return NotImplemented
        return (
            self.modulus == other.modulus
            and self._den == other._den
            and self._num == other._num
        )

    def __hash__(self) -> int:
        return hash((self.modulus, self._num, self._den))

    def __repr__(self) -> str:
        return f"CycloNumber({self.modulus}, {self})"

    def __str__(self) -> str:
        parts = []
        for i, c in enumerate(self._num):
            if not c:
                continue
            q = Fraction(c, self._den)
            mag = abs(q)
            if i == 0:
                term = str(mag)
            else:
                mono = "z" if i == 1 else f"z^{i}"
                term = mono if mag == 1 else f"{mag}*{mono}"
            parts.append(("-" if q < 0 else "+", term))
        if not parts:
            return "0"
        text = ("-" if parts[0][0] == "-" else "") + parts[0][1]
        for sign, term in parts[1:]:
            text += f" {sign} {term}"
        return text

    # -- arithmetic ---------------------------------------------------------

    def _coerce(self, other) -> "CycloNumber":
        if isinstance(other, CycloNumber):
            if other.modulus != self.modulus:
                raise ModulusMismatch(self.modulus, other.modulus)
            return other
        if isinstance(other, (int, Fraction)):
            return CycloNumber.from_rational(self.modulus, other)
        if isinstance(other, Rational):
            return CycloNumber.from_rational(self.modulus, Fraction(other))
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        d1, d2 = self._den, other._den
        if d1 == d2:
            nums = [x + y for x, y in zip(self._num, other._num)]
            return CycloNumber._raw(self.modulus, nums, d1)
        nums = [x * d2 + y * d1 for x, y in zip(self._num, other._num)]
        return CycloNumber._raw(self.modulus, nums, d1 * d2)

    __radd__ = __add__

    def __neg__(self) -> "CycloNumber":
        return CycloNumber._raw(self.modulus, [-c for c in self._num], self._den)

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return other + (-self)

    def __mul__(self, other):
        if isinstance(other, int):
            return CycloNumber._raw(self.modulus, [c * other for c in self._num], self._den)
        if isinstance(other, Fraction):
            return CycloNumber._raw(
                self.modulus,
                [c * other.numerator for c in self._num],
                self._den * other.denominator,
            )
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return cyclo_mul(self, other)

    __rmul__ = __mul__

    def __truediv__(self, other):
        if isinstance(other, (int, Fraction)):
            if other == 0:
                raise ZeroDivisionError("division by zero in cyclotomic field")
            return self * (1 / Fraction(other))
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return cyclo_mul(self, cyclo_inverse(other))

    def __rtruediv__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return cyclo_mul(other, cyclo_inverse(self))

    def __pow__(self, exponent: int) -> "CycloNumber":
        if not isinstance(exponent, int):
            return NotImplemented
        base = self
        if exponent < 0:
            base, exponent = cyclo_inverse(self), -exponent
        result = CycloNumber.from_rational(self.modulus, 1)
        while exponent:
            if exponent & 1:
                result = result * base
            exponent >>= 1
            if exponent:
                base = base * base
        return result

    def galois(self, t: int) -> "CycloNumber":
        """Apply the automorphism zeta -> zeta^t (t must be a unit mod the modulus)."""
        k = self.modulus
        if math.gcd(t, k) != 1:
            raise ValueError(f"{t} is not a unit modulo {k}")
        poly = [0] * k
        for i, c in enumerate(self._num):
            if c:
                poly[(i * t) % k] += c
        return CycloNumber._raw(k, _reduce(k, poly), self._den)

    def conj(self) -> "CycloNumber":
        return self.galois(-1)

    def shifted(self, e: int) -> "CycloNumber":
        """Multiply by zeta^e."""
        k = self.modulus
        poly = [0] * k
        for i, c in enumerate(self._num):
            if c:
                poly[(i + e) % k] += c
        return CycloNumber._raw(k, _reduce(k, poly), self._den)

    def lift(self, modulus: int) -> "CycloNumber":
        """The same number viewed inside Q(zeta_modulus); self.modulus must divide it."""
        if modulus == self.modulus:
            return self
        if modulus % self.modulus:
            raise ModulusMismatch(self.modulus, modulus)
        step = modulus // self.modulus
        poly = [0] * modulus
        for i, c in enumerate(self._num):
            poly[i * step] = c
        return CycloNumber._raw(modulus, _reduce(modulus, poly), self._den)

    def embed(self, precision_bits: int = DEFAULT_PRECISION) -> "ApproxComplex":
        return embed_complex(self, precision_bits)

    def __complex__(self) -> complex:
        return complex(embed_complex(self, 64).value)


@lru_cache(maxsize=4096)
def _zeta_power(k: int, j: int) -> CycloNumber:
    poly = [0] * (j + 1)
    poly[j] = 1
    return CycloNumber._raw(k, _reduce(k, poly), 1)


def root_of_unity_power(k: int, j: int) -> CycloNumber:
    """omega^j in Q(omega), omega = exp(2*pi*i/k)."""
    return CycloNumber.zeta_power(k, j)


def cyclo_mul(a: CycloNumber, b: CycloNumber) -> CycloNumber:
    if a.modulus != b.modulus:
        raise ModulusMismatch(a.modulus, b.modulus)
    k = a.modulus
    if a.is_zero() or b.is_zero():
        return CycloNumber._raw(k, [0] * len(a._num), 1)
    prod = _kronecker_mul(a._num, b._num)
    return CycloNumber._raw(k, _reduce(k, prod), a._den * b._den)


def cyclo_linear_combination(
    modulus: int, terms: Iterable[tuple[Union[CycloNumber, RationalLike], int]]
) -> CycloNumber:
    """Sum of ``c * zeta^e`` over ``(c, e)`` pairs, reduced once at the end."""
    items = []
    den = 1
    for c, e in terms:
        if isinstance(c, CycloNumber):
            if c.modulus != modulus:
                raise ModulusMismatch(modulus, c.modulus)
            if c.is_zero():
                continue
            nums, cden = c._num, c._den
        else:
            q = Fraction(c)
            if not q:
                continue
            nums, cden = (q.numerator,), q.denominator
        den = den * cden // math.gcd(den, cden)
        items.append((nums, cden, e))
    poly = [0] * modulus
    for nums, cden, e in items:
        scale = den // cden
        for i, c in enumerate(nums):
            if c:
                poly[(i + e) % modulus] += c * scale
    return CycloNumber._raw(modulus, _reduce(modulus, poly), den)


def _frac_divmod(num: list[Fraction], den: list[Fraction]) -> tuple[list[Fraction], list[Fraction]]:
    rem = list(num)
    d = len(den) - 1
    lead = den[-1]
    quot = [Fraction(0)] * max(len(rem) - d, 1)
    for deg in range(len(rem) - 1, d - 1, -1):
        c = rem[deg]
        if c:
            q = c / lead
            quot[deg - d] = q
            for i, y in enumerate(den):
                if y:
                    rem[deg - d + i] -= q * y
    rem = rem[:d] or [Fraction(0)]
    while len(rem) > 1 and not rem[-1]:
        rem.pop()
    return quot, rem


def _frac_trim(p: list[Fraction]) -> list[Fraction]:
    p = list(p)
    while len(p) > 1 and not p[-1]:
        p.pop()
    return p


def cyclo_inverse(a: CycloNumber) -> CycloNumber:
    """Multiplicative inverse via the extended Euclidean algorithm over Q."""
    if a.is_zero():
        raise ZeroDivisionError("division by zero in cyclotomic field")
    return _cyclo_inverse(a)


@lru_cache(maxsize=2048)
def _cyclo_inverse(a: CycloNumber) -> CycloNumber:
    k = a.modulus
    nz = [i for i, c in enumerate(a._num) if c]
    if len(nz) == 1:
        # monomial c*z^e: inverse is z^(k-e)/c
        e = nz[0]
        c = Fraction(a._num[e], a._den)
        poly = [0] * k
        poly[(-e) % k] = 1
        return CycloNumber._raw(k, _reduce(k, poly), 1) * (1 / c)
    r0 = [Fraction(c) for c in _cyclotomic(k)]
    r1 = _frac_trim([Fraction(c, a._den) for c in a._num])
    s0: list[Fraction] = [Fraction(0)]
    s1: list[Fraction] = [Fraction(1)]
    while any(r1):
        q, r = _frac_divmod(r0, r1)
        qs = [Fraction(0)] * (len(q) + len(s1) - 1)
        for i, x in enumerate(q):
            if x:
                for j, y in enumerate(s1):
                    qs[i + j] += x * y
        n = max(len(s0), len(qs))
        s_next = [
            (s0[i] if i < len(s0) else 0) - (qs[i] if i < len(qs) else 0) for i in range(n)
        ]
        r0, r1 = r1, r
        s0, s1 = s1, _frac_trim(s_next)
    # r0 is the (constant) gcd
    if len(r0) != 1:
        raise ArithmeticError("cyclotomic polynomial is not coprime to operand")
    return CycloNumber(k, [c / r0[0] for c in s0])


# ---------------------------------------------------------------------------
# arbitrary-precision complex floats


@lru_cache(maxsize=None)
def _context(bits: int) -> mpmath.ctx_mp.MPContext:
    ctx = mpmath.MPContext()
    ctx.prec = bits
    return ctx


class ApproxComplex:
    """A complex number carried at a fixed binary working precision."""

    __slots__ = ("value", "precision_bits")

    def __init__(self, value, precision_bits: int = DEFAULT_PRECISION):
        ctx = _context(precision_bits)
        if isinstance(value, Fraction):
            value = ctx.mpf(value.numerator) / value.denominator
        self.value = ctx.mpc(value)
        self.precision_bits = precision_bits

    @classmethod
    def _wrap(cls, value, bits: int) -> "ApproxComplex":
        obj = cls.__new__(cls)
        obj.value = value
        obj.precision_bits = bits
        return obj

    @property
    def real(self):
        return self.value.real

    @property
    def imag(self):
        return self.value.imag

    def __abs__(self):
        return _context(self.precision_bits).fabs(self.value)

    def is_zero(self) -> bool:
        return abs(self) < mpmath.mpf(2) ** (-(self.precision_bits // 2))

    def _pair(self, other):
        if isinstance(other, ApproxComplex):
            bits = min(self.precision_bits, other.precision_bits)
            ctx = _context(bits)
            a = self.value if self.precision_bits == bits else ctx.mpc(self.value)
            b = other.value if other.precision_bits == bits else ctx.mpc(other.value)
            return a, b, bits
        if isinstance(other, CycloNumber):
            return self._pair(embed_complex(other, self.precision_bits))
        ctx = _context(self.precision_bits)
        if isinstance(other, int):
            return self.value, other, self.precision_bits
        if isinstance(other, Fraction):
            return self.value, ctx.mpf(other.numerator) / other.denominator, self.precision_bits
        if isinstance(other, (float, complex, _mpf, _mpc)):
            return self.value, ctx.mpc(other), self.precision_bits
        return None

    def __add__(self, other):
        p = self._pair(other)
        if p is None:
            return NotImplemented
        return ApproxComplex._wrap(p[0] + p[1], p[2])

    __radd__ = __add__

    def __sub__(self, other):
        p = self._pair(other)
        if p is None:
            return NotImplemented
        return ApproxComplex._wrap(p[0] - p[1], p[2])

    def __rsub__(self, other):
        p = self._pair(other)
        if p is None:
            return NotImplemented
        return ApproxComplex._wrap(p[1] - p[0], p[2])

    def __mul__(self, other):
        p = self._pair(other)
        if p is None:
            return NotImplemented
        return ApproxComplex._wrap(p[0] * p[1], p[2])

    __rmul__ = __mul__

    def __truediv__(self, other):
        p = self._pair(other)
        if p is None:
            return NotImplemented
        if not p[1]:
            raise ZeroDivisionError("complex division by zero")
        return ApproxComplex._wrap(p[0] / p[1], p[2])

    def __rtruediv__(self, other):
        p = self._pair(other)
        if p is None:
            return NotImplemented
        return ApproxComplex._wrap(p[1] / p[0], p[2])

    def __neg__(self) -> "ApproxComplex":
        return ApproxComplex._wrap(-self.value, self.precision_bits)

    def __pow__(self, exponent: int) -> "ApproxComplex":
        if not isinstance(exponent, int):
            return NotImplemented
        return ApproxComplex._wrap(self.value**exponent, self.precision_bits)

    def conj(self) -> "ApproxComplex":
        return ApproxComplex._wrap(self.value.conjugate(), self.precision_bits)

    def __complex__(self) -> complex:
        return complex(self.value)

    def __repr__(self) -> str:
        return f"ApproxComplex({mpmath.nstr(self.value, 20)}, bits={self.precision_bits})"


def embed_complex(a: CycloNumber, precision_bits: int = DEFAULT_PRECISION) -> ApproxComplex:
    """Evaluate a cyclotomic number at exp(2*pi*i/k)."""
    if precision_bits < 32:
        raise ValueError("precision_bits must be at least 32")
    guard = _context(precision_bits + 32)
    k = a.modulus
    total = guard.mpc(0)
    for i, c in enumerate(a._num):
        if c:
            total += c * guard.expjpi(guard.mpf(2 * i) / k)
    total /= a._den
    return ApproxComplex(total, precision_bits)


# ---------------------------------------------------------------------------
# backends


def _turn(t) -> Fraction:
    t = Fraction(t)
    return t - math.floor(t)


def _squarefree_split(n: int) -> tuple[int, int]:
    """n = c**2 * s with s squarefree; returns (c, s)."""
    c, s, p = 1, 1, 2
    while p * p <= n:
        e = 0
        while n % p == 0:
            n //= p
            e += 1
        c *= p ** (e // 2)
        if e % 2:
            s *= p
        p += 1
    return c, s * n


def _jacobi(n: int, k: int) -> int:
    n %= k
    result = 1
    while n:
        while n % 2 == 0:
            n //= 2
            if k % 8 in (3, 5):
                result = -result
        n, k = k, n
        if n % 4 == 3 and k % 4 == 3:
            result = -result
        n %= k
    return result if k == 1 else 0


class ExactBackend:
    """Exact arithmetic in the cyclotomic field Q(zeta_L)."""

    kind = "exact"

    def __init__(self, modulus: int):
        if modulus < 1:
            raise ValueError("modulus must be positive")
        self.modulus = modulus

    def __repr__(self) -> str:
        return f"ExactBackend({self.modulus})"

    def __eq__(self, other: object) -> bool:
        return isinstance(other, ExactBackend) and other.modulus == self.modulus

    def __hash__(self) -> int:
        return hash(("exact", self.modulus))

    @property
    def descriptor(self) -> str:
        return f"exact/Q(zeta_{self.modulus})"

    @property
    def tolerance(self) -> int:
        return 0

    def zero(self) -> CycloNumber:
        return CycloNumber.from_rational(self.modulus, 0)

    def one(self) -> CycloNumber:
        return CycloNumber.from_rational(self.modulus, 1)

    def const(self, q) -> CycloNumber:
        if isinstance(q, CycloNumber):
            return q.lift(self.modulus)
        return CycloNumber.from_rational(self.modulus, q)

    def supports(self, t) -> bool:
        return (Fraction(t) * self.modulus).denominator == 1

    def cis(self, t) -> CycloNumber:
        """exp(2*pi*i*t)."""
        e = Fraction(t) * self.modulus
        if e.denominator != 1:
            raise ValueError(f"exp(2 pi i * {t}) does not lie in Q(zeta_{self.modulus})")
        return CycloNumber.zeta_power(self.modulus, int(e))

    def root_of_unity(self, n: int, j: int) -> CycloNumber:
        return self.cis(Fraction(j, n))

    def imag_unit(self) -> CycloNumber:
        return self.cis(Fraction(1, 4))

    def sin(self, t) -> CycloNumber:
        return _exact_trig(self.modulus, "sin", _turn(t))

    def cos(self, t) -> CycloNumber:
        return _exact_trig(self.modulus, "cos", _turn(t))

    def tan(self, t) -> CycloNumber:
        return _exact_trig(self.modulus, "tan", _turn(t))

    def cot(self, t) -> CycloNumber:
        return _exact_trig(self.modulus, "cot", _turn(t))

    def csc(self, t) -> CycloNumber:
        return _exact_trig(self.modulus, "csc", _turn(t))

    def sec(self, t) -> CycloNumber:
        return _exact_trig(self.modulus, "sec", _turn(t))

    def sqrt(self, n: int) -> CycloNumber:
        """Positive square root of a positive integer, built from quadratic Gauss sums."""
        return _exact_sqrt(self.modulus, n)

    def is_zero(self, x) -> bool:
        return self.const(x).is_zero() if not isinstance(x, CycloNumber) else x.is_zero()

    def residual(self, x) -> Union[int, float]:
        x = self.const(x) if not isinstance(x, CycloNumber) else x
        if x.is_zero():
            return 0
        return float(abs(embed_complex(x, 128)))

    def to_complex(self, x, precision_bits: int = DEFAULT_PRECISION) -> ApproxComplex:
        return embed_complex(self.const(x), precision_bits)


def inv_one_minus_root(L: int, e: int, negate: bool = False) -> CycloNumber:
    """1/(1 - z) for z = zeta_L^e (or z = -zeta_L^e), without a gcd computation.

    Uses 1/(1 - z) = -(1/m) * sum_{t=1}^{m-1} t*z^t where m is the order of z.
    """
    # work with exponents over 2L so that -1 is a root-of-unity power
    E = (2 * e + (L if negate else 0)) % (2 * L)
    m = 2 * L // math.gcd(E, 2 * L)
    if m == 1:
        raise ZeroDivisionError("vanishing denominator: 1 - 1")
    terms = []
    for t in range(1, m):
        F = (E * t) % (2 * L)
        if F % 2 == 0:
            terms.append((Fraction(-t, m), F // 2))
        else:
            # zeta_2L^F = -zeta_L^((F+L)/2); only reachable for odd L
            terms.append((Fraction(t, m), (F + L) // 2))
    return cyclo_linear_combination(L, terms)


def _inv_one_minus_root(L: int, e: int) -> CycloNumber:
    return inv_one_minus_root(L, e)


@lru_cache(maxsize=65536)
def _exact_trig(L: int, name: str, t: Fraction) -> CycloNumber:
    if (t * L).denominator != 1:
        raise ValueError(f"angle {t} turns is not representable in Q(zeta_{L})")
    e = int(t * L)  # zeta_L^e = exp(2 pi i t)
    if name == "cos":
        return cyclo_linear_combination(L, ((Fraction(1, 2), e), (Fraction(1, 2), -e)))
    if L % 4:
        raise ValueError(f"Q(zeta_{L}) does not contain i, needed for {name}")
    quarter = L // 4
    if name == "sin":
        # (z - 1/z) / (2i) = -i/2 * (z - 1/z)
        return cyclo_linear_combination(L, ((Fraction(-1, 2), e + quarter), (Fraction(1, 2), -e + quarter)))
    if name == "cot":
        # i (w + 1) / (w - 1), w = z^2; 1/(w - 1) = -1/(1 - w)
        if (2 * t).denominator == 1:
            raise ZeroDivisionError("vanishing denominator in cot")
        w_plus_one = cyclo_linear_combination(L, ((1, 2 * e + quarter), (1, quarter)))
        return -(w_plus_one * _inv_one_minus_root(L, 2 * e))
    if name == "tan":
        # -i (w - 1) / (w + 1); w + 1 = 1 - (-w)
        if (2 * t - Fraction(1, 2)).denominator == 1:
            raise ZeroDivisionError("vanishing denominator in tan")
        num = cyclo_linear_combination(L, ((-1, 2 * e + quarter), (1, quarter)))
        return num * _inv_one_minus_root(L, 2 * e + L // 2)
    if name == "csc":
        # 2i z / (w - 1)
        if (2 * t).denominator == 1:
            raise ZeroDivisionError("vanishing denominator in csc")
        return CycloNumber.zeta_power(L, e + quarter) * _inv_one_minus_root(L, 2 * e) * -2
    if name == "sec":
        # 2 z / (w + 1)
        if (2 * t - Fraction(1, 2)).denominator == 1:
            raise ZeroDivisionError("vanishing denominator in sec")
        return CycloNumber.zeta_power(L, e) * _inv_one_minus_root(L, 2 * e + L // 2) * 2
    raise ValueError(f"unknown trig function {name!r}")


@lru_cache(maxsize=1024)
def _exact_sqrt(L: int, n: int) -> CycloNumber:
    if n < 1:
        raise ValueError("square root needs a positive integer")
    c, s = _squarefree_split(n)
    result = CycloNumber.from_rational(L, c)
    odd = s if s % 2 else s // 2
    if s % 2 == 0:
        if L % 8:
            raise ValueError(f"sqrt(2) is not in Q(zeta_{L})")
        result = result * (CycloNumber.zeta_power(L, L // 8) + CycloNumber.zeta_power(L, -L // 8))
    if odd > 1:
        if L % (4 * odd):
            raise ValueError(f"sqrt({odd}) is not in Q(zeta_{L})")
        step = L // odd
        gauss = cyclo_linear_combination(L, ((_jacobi(j, odd), j * step) for j in range(1, odd)))
        if odd % 4 == 3:
            # the Gauss sum is i*sqrt(odd)
            gauss = gauss.shifted(-(L // 4))
        result = result * gauss
    return result


class FloatBackend:
    """Complex arithmetic at a fixed binary precision (mpmath)."""

    kind = "float"

    def __init__(self, precision_bits: int = DEFAULT_PRECISION, tolerance=None):
        if precision_bits < 32:
            raise ValueError("precision_bits must be at least 32")
        self.precision_bits = precision_bits
        self.ctx = _context(precision_bits)
        self._tolerance = None if tolerance is None else self.ctx.mpf(tolerance)

    def __repr__(self) -> str:
        return f"FloatBackend({self.precision_bits})"

    def __eq__(self, other: object) -> bool:
        return isinstance(other, FloatBackend) and other.precision_bits == self.precision_bits

    def __hash__(self) -> int:
        return hash(("float", self.precision_bits))

    @property
    def descriptor(self) -> str:
        return f"float/{self.precision_bits}"

    @property
    def tolerance(self):
        if self._tolerance is not None:
            return self._tolerance
        return self.ctx.mpf(2) ** (-(self.precision_bits // 2))

    def _wrap(self, v) -> ApproxComplex:
        return ApproxComplex._wrap(self.ctx.mpc(v), self.precision_bits)

    def zero(self) -> ApproxComplex:
        return self._wrap(0)

    def one(self) -> ApproxComplex:
        return self._wrap(1)

    def const(self, q) -> ApproxComplex:
        if isinstance(q, ApproxComplex):
            return q
        if isinstance(q, CycloNumber):
            return embed_complex(q, self.precision_bits)
        if isinstance(q, (float, complex)):
            return ApproxComplex(q, self.precision_bits)
        q = Fraction(q)
        return self._wrap(self.ctx.mpf(q.numerator) / q.denominator)

    def supports(self, t) -> bool:
        return True

    def cis(self, t) -> ApproxComplex:
        return _float_trig(self.precision_bits, "cis", _turn(t))

    def root_of_unity(self, n: int, j: int) -> ApproxComplex:
        return self.cis(Fraction(j, n))

    def imag_unit(self) -> ApproxComplex:
        return self._wrap(1j)

    def sin(self, t) -> ApproxComplex:
        return _float_trig(self.precision_bits, "sin", _turn(t))

    def cos(self, t) -> ApproxComplex:
        return _float_trig(self.precision_bits, "cos", _turn(t))

    def tan(self, t) -> ApproxComplex:
        return _float_trig(self.precision_bits, "tan", _turn(t))

    def cot(self, t) -> ApproxComplex:
        return _float_trig(self.precision_bits, "cot", _turn(t))

    def csc(self, t) -> ApproxComplex:
        return _float_trig(self.precision_bits, "csc", _turn(t))

    def sec(self, t) -> ApproxComplex:
        return _float_trig(self.precision_bits, "sec", _turn(t))

    def sqrt(self, n: int) -> ApproxComplex:
        if n < 1:
            raise ValueError("square root needs a positive integer")
        return self._wrap(self.ctx.sqrt(n))

    def is_zero(self, x) -> bool:
        return self.residual(x) <= self.tolerance

    def residual(self, x):
        return abs(self.const(x))

    def to_complex(self, x, precision_bits: int | None = None) -> ApproxComplex:
        return self.const(x)


@lru_cache(maxsize=262144)
def _float_trig(bits: int, name: str, t: Fraction) -> ApproxComplex:
    ctx = _context(bits)
    # sinpi/cospi take the angle in half-turns
    half_turns = ctx.mpf(2 * t.numerator) / t.denominator
    if name == "cis":
        v = ctx.expjpi(half_turns)
    elif name == "sin":
        v = ctx.sinpi(half_turns)
    elif name == "cos":
        v = ctx.cospi(half_turns)
    elif name in ("cot", "csc"):
        if (2 * t).denominator == 1:
            raise ZeroDivisionError(f"vanishing denominator in {name}")
        s = ctx.sinpi(half_turns)
        v = ctx.cospi(half_turns) / s if name == "cot" else 1 / s
    elif name in ("tan", "sec"):
        if (2 * t - Fraction(1, 2)).denominator == 1:
            raise ZeroDivisionError(f"vanishing denominator in {name}")
        c = ctx.cospi(half_turns)
        v = ctx.sinpi(half_turns) / c if name == "tan" else 1 / c
    else:
        raise ValueError(f"unknown trig function {name!r}")
    return ApproxComplex._wrap(ctx.mpc(v), bits)
