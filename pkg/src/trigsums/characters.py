"""Dirichlet characters modulo k, Gauss sums, and class numbers h(-k)."""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property, lru_cache
from math import gcd, lcm
from typing import Optional

from .scalars import CycloNumber, ExactBackend, cyclo_linear_combination, euler_phi

__all__ = [
    "Character",
    "CharacterFlags",
    "ClassNumberResult",
    "class_number",
    "classify",
    "enumerate_characters",
    "factorize",
    "gauss_sum",
    "is_separable",
    "is_squarefree",
    "jacobi_symbol",
    "kronecker_character",
    "real_odd_characters",
]


def factorize(n: int) -> list[tuple[int, int]]:
    """Prime factorization by trial division, as (p, e) pairs in increasing p."""
    if n < 1:
        raise ValueError("factorize needs a positive integer")
    out = []
    p = 2
    while p * p <= n:
        if n % p == 0:
            e = 0
            while n % p == 0:
                n //= p
                e += 1
            out.append((p, e))
        p += 1 if p == 2 else 2
    if n > 1:
        out.append((n, 1))
    return out


def is_squarefree(n: int) -> bool:
    return all(e == 1 for _, e in factorize(n))


def jacobi_symbol(n: int, k: int) -> int:
    """Jacobi symbol (n | k) for odd positive k."""
    if k < 1 or k % 2 == 0:
        raise ValueError(f"Jacobi symbol needs an odd positive modulus, got {k}")
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


@dataclass(frozen=True)
class CharacterFlags:
    is_real: bool
    is_odd: bool
    is_even: bool
    is_principal: bool
    is_primitive: bool
    conductor: int


@dataclass(frozen=True, eq=True)
class Character:
    """A Dirichlet character mod k as a full value table.

    ``exponents[n]`` is None when gcd(n, k) > 1, otherwise the e with
    chi(n) = exp(2*pi*i*e/order).
    """

    modulus: int
    order: int
    exponents: tuple[Optional[int], ...]

    def exponent(self, n: int) -> Optional[int]:
        return self.exponents[n % self.modulus]

    def value(self, n: int, backend=None):
        """chi(n): an int for real characters, else a root of unity.

        Without a backend, non-real values come back as elements of Q(zeta_order).
        """
        e = self.exponent(n)
        if backend is None:
            if e is None:
                return 0
            if self.order <= 2:
                return -1 if e else 1
            return CycloNumber.zeta_power(self.order, e)
        if e is None:
            return backend.zero()
        return backend.root_of_unity(self.order, e)

    def __call__(self, n: int):
        return self.value(n)

    def table(self) -> list:
        return [self.value(n) for n in range(self.modulus)]

    @cached_property
    def is_real(self) -> bool:
        return self.order <= 2

    @cached_property
    def is_principal(self) -> bool:
        return self.order == 1

    @cached_property
    def is_odd(self) -> bool:
        e = self.exponent(-1)
        return 2 * e == self.order

    @cached_property
    def is_even(self) -> bool:
        return self.exponent(-1) == 0

    @cached_property
    def conductor(self) -> int:
        k = self.modulus
        for d in range(1, k + 1):
            if k % d:
                continue
            if all(
                self.exponents[n] == 0
                for n in range(1, k, d)
                if self.exponents[n] is not None
            ):
                return d
        return k

    @property
    def is_primitive(self) -> bool:
        return self.conductor == self.modulus

    @property
    def flags(self) -> CharacterFlags:
        return classify(self)

    def __repr__(self) -> str:
        return f"Character(modulus={self.modulus}, order={self.order}, conductor={self.conductor})"


def classify(chi: Character) -> CharacterFlags:
    return CharacterFlags(
        is_real=chi.is_real,
        is_odd=chi.is_odd,
        is_even=chi.is_even,
        is_principal=chi.is_principal,
        is_primitive=chi.is_primitive,
        conductor=chi.conductor,
    )


def _primitive_root(p: int) -> int:
    """Smallest g that generates (Z/p^e)* for every e (p an odd prime)."""
    order = p - 1
    prime_factors = [q for q, _ in factorize(order)]
    for g in range(2, p * p):
        if g % p == 0:
            continue
        if all(pow(g, order // q, p) != 1 for q in prime_factors) and pow(g, p - 1, p * p) != 1:
            return g
    raise ArithmeticError(f"no primitive root found for {p}")


def _unit_group_generators(k: int) -> list[tuple[int, int]]:
    """Generators of (Z/k)* as (residue mod k, order), one cyclic factor each."""
    gens = []
    for p, e in factorize(k):
        q = p**e
        rest = k // q
        if p == 2:
            local = [] if e == 1 else [(q - 1, 2)] if e == 2 else [(q - 1, 2), (5, q // 4)]
        else:
            local = [(_primitive_root(p), q // p * (p - 1))]
        for g, order in local:
            # CRT: g mod q, 1 mod the rest
            if rest == 1:
                lifted = g % q
            else:
                lifted = (g * rest * pow(rest, -1, q) + q * pow(q, -1, rest)) % k
            gens.append((lifted, order))
    return gens


@lru_cache(maxsize=256)
def enumerate_characters(k: int) -> tuple[Character, ...]:
    """All phi(k) Dirichlet characters mod k; the principal character comes first."""
    if k < 1:
        raise ValueError("modulus must be positive")
    if k == 1:
        return (Character(1, 1, (0,)),)
    gens = _unit_group_generators(k)
    orders = [o for _, o in gens]
    N = lcm(*orders) if orders else 1
    # discrete logs of every unit with respect to the generators
    logs: dict[int, tuple[int, ...]] = {}
    for ts in itertools.product(*(range(o) for o in orders)):
        n = 1
        for (g, _), t in zip(gens, ts):
            n = n * pow(g, t, k) % k
        logs[n] = ts
    chars = []
    for cs in itertools.product(*(range(o) for o in orders)):
        values: list[Optional[int]] = [None] * k
        for n, ts in logs.items():
            values[n] = sum(c * t * (N // o) for c, t, o in zip(cs, ts, orders)) % N
        g = N
        for v in values:
            if v is not None:
                g = gcd(g, v)
        m = N // g
        exps = tuple(None if v is None else v // g for v in values)
        chars.append(Character(k, m, exps))
    assert len(chars) == euler_phi(k)
    return tuple(chars)


def real_odd_characters(k: int) -> list[Character]:
    return [c for c in enumerate_characters(k) if c.is_real and c.is_odd and not c.is_principal]


def kronecker_real_odd_exists(k: int) -> bool:
    return k >= 7 and k % 4 == 3 and is_squarefree(k)


@lru_cache(maxsize=256)
def kronecker_character(k: int) -> Character:
    """The real primitive odd character n -> (n | k) for squarefree k = 3 mod 4, k >= 7."""
    if not kronecker_real_odd_exists(k):
        raise ValueError(
            f"no real primitive odd character constructed for k={k} "
            "(need k squarefree, k = 3 mod 4, k >= 7)"
        )
    exps = []
    for n in range(k):
        s = jacobi_symbol(n, k)
        exps.append(None if s == 0 else (0 if s == 1 else 1))
    return Character(k, 2, tuple(exps))


def gauss_sum(n: int, chi: Character, backend=None):
    """G(n, chi) = sum_j chi(j) omega^(jn).

    The default backend is exact, in Q(zeta_lcm(k, order)).
    """
    k = chi.modulus
    if backend is None:
        backend = ExactBackend(lcm(k, chi.order))
    if isinstance(backend, ExactBackend):
        L = backend.modulus
        if L % k or L % chi.order:
            raise ValueError(f"Q(zeta_{L}) does not hold the values of this Gauss sum")
        terms = (
            (1, e * (L // chi.order) + j * n * (L // k))
            for j, e in enumerate(chi.exponents)
            if e is not None
        )
        return cyclo_linear_combination(L, terms)
    total = backend.zero()
    for j in range(k):
        if chi.exponents[j] is not None:
            total = total + chi.value(j, backend) * backend.root_of_unity(k, j * n)
    return total


def is_separable(chi: Character, backend=None) -> bool:
    """True when G(n, chi) = chi(n) G(1, chi) for every n mod k."""
    k = chi.modulus
    if backend is None:
        backend = ExactBackend(lcm(k, chi.order))
    g1 = gauss_sum(1, chi, backend)
    for n in range(k):
        lhs = gauss_sum(n, chi, backend)
        rhs = chi.value(n, backend) * g1
        if not backend.is_zero(lhs - rhs):
            return False
    return True


@dataclass(frozen=True)
class ClassNumberResult:
    k: int
    h: int
    via_weighted_sum: Fraction
    via_half_sum: Fraction


@lru_cache(maxsize=512)
def class_number(k: int) -> ClassNumberResult:
    """h(-k) from the character sums -(1/k) sum j chi(j) and sum_{j<k/2} chi(j) / (2 - chi(2))."""
    if not kronecker_real_odd_exists(k):
        raise ValueError(
            f"class number formula not applicable for k={k}: "
            "need k >= 7 squarefree with k = 3 mod 4"
        )
    chi = kronecker_character(k)
    weighted = Fraction(-sum(j * chi(j) for j in range(1, k)), k)
    half = Fraction(sum(chi(j) for j in range(1, (k - 1) // 2 + 1)), 2 - chi(2))
    if weighted != half or weighted.denominator != 1 or weighted < 1:
        raise ArithmeticError(f"class number evaluations disagree for k={k}: {weighted} vs {half}")
    return ClassNumberResult(k, int(weighted), weighted, half)
