import random
from math import gcd

import mpmath
import pytest
from hypothesis import given, strategies as st

from trigsums.characters import (
    class_number,
    classify,
    enumerate_characters,
    factorize,
    gauss_sum,
    is_separable,
    is_squarefree,
    jacobi_symbol,
    kronecker_character,
    kronecker_real_odd_exists,
    real_odd_characters,
)
from trigsums.scalars import CycloNumber, ExactBackend, FloatBackend

from oracles import class_number_by_forms, jacobi_by_factoring, mp_ctx, to_mp, totient

TOL = mpmath.mpf(2) ** -100
VALID_K = [k for k in range(7, 201) if kronecker_real_odd_exists(k)]


def table_key(chi):
    return chi.exponents, chi.order


# --- enumeration -----------------------------------------------------------


def test_counts_examples():
    assert len(enumerate_characters(5)) == 4
    assert len(enumerate_characters(12)) == 4


@pytest.mark.parametrize("k", range(1, 201))
def test_enumeration_complete(k):
    chars = enumerate_characters(k)
    assert len(chars) == totient(k)
    assert len({table_key(c) for c in chars}) == len(chars)
    assert sum(c.is_principal for c in chars) == 1


@pytest.mark.parametrize("k", [5, 7, 8, 9, 12, 15, 16, 21, 24, 40, 63, 64, 105])
def test_character_invariants(k):
    rng = random.Random(k)
    for chi in enumerate_characters(k):
        for n in range(k):
            assert (chi.exponent(n) is None) == (gcd(n, k) > 1)
        for _ in range(1000):
            a, b = rng.randrange(k), rng.randrange(k)
            ea, eb, eab = chi.exponent(a), chi.exponent(b), chi.exponent(a * b)
            if ea is None or eb is None:
                assert eab is None
            else:
                assert eab == (ea + eb) % chi.order
        if not chi.is_principal:
            total = sum((chi.value(n) for n in range(k)), CycloNumber(chi.order, []))
            assert total == 0
        real = all(chi.value(n) in (-1, 0, 1) for n in range(k))
        assert chi.is_real == real
        assert chi.is_odd == (chi.value(k - 1) == -1)
        assert chi.is_even == (chi.value(k - 1) == 1)


def test_mod7_has_single_real_nonprincipal_and_it_is_odd():
    reals = [c for c in enumerate_characters(7) if c.is_real and not c.is_principal]
    assert len(reals) == 1 and reals[0].is_odd


def test_classify_examples():
    principal = enumerate_characters(7)[0]
    f = classify(principal)
    assert f.conductor == 1 and not f.is_primitive and f.is_principal
    leg = kronecker_character(7)
    f = classify(leg)
    assert f.is_real and f.is_odd and f.is_primitive and f.conductor == 7
    induced = [c for c in enumerate_characters(9) if c.is_real and not c.is_principal]
    assert len(induced) == 1
    assert induced[0].conductor == 3 and not induced[0].is_primitive


def test_conductor_is_a_divisor_and_induces():
    for k in range(1, 61):
        for chi in enumerate_characters(k):
            d = chi.conductor
            assert k % d == 0
            for n in range(k):
                if gcd(n, k) == 1 and n % d == 1 % d:
                    assert chi.exponent(n) == 0


# --- symbols ---------------------------------------------------------------


def test_jacobi_examples():
    assert all(jacobi_symbol(1, k) == 1 for k in range(1, 50, 2))
    assert jacobi_symbol(2, 7) == 1
    assert jacobi_symbol(3, 7) == -1


def test_jacobi_even_modulus():
    with pytest.raises(ValueError):
        jacobi_symbol(3, 8)


@given(st.integers(-10**6, 10**6), st.integers(0, 300))
def test_jacobi_matches_factored_legendre(n, j):
    k = 2 * j + 1
    assert jacobi_symbol(n, k) == jacobi_by_factoring(n, k)


def test_kronecker_examples():
    assert kronecker_character(7)(2) == 1
    assert kronecker_character(11)(2) == -1
    unique = [c for c in real_odd_characters(15) if c.is_primitive]
    assert len(unique) == 1 and unique[0] == kronecker_character(15)


@pytest.mark.parametrize("k", VALID_K)
def test_kronecker_matches_enumeration_and_two_rule(k):
    chi = kronecker_character(k)
    assert chi in enumerate_characters(k)
    assert chi.is_real and chi.is_odd and chi.is_primitive
    assert chi(2) == (1 if k % 8 in (1, 7) else -1)


@pytest.mark.parametrize("k", [9, 13, 25, 27, 3, 5, 49, 8])
def test_kronecker_rejects(k):
    with pytest.raises(ValueError, match="no real primitive odd character constructed"):
        kronecker_character(k)


def test_factorize_and_squarefree():
    assert factorize(360) == [(2, 3), (3, 2), (5, 1)]
    assert is_squarefree(105) and not is_squarefree(63)


# --- Gauss sums ------------------------------------------------------------


def test_gauss_sum_examples():
    leg = kronecker_character(7)
    assert gauss_sum(0, leg) == 0
    ctx = mp_ctx()
    F = FloatBackend(256)
    g1 = gauss_sum(1, leg, F)
    assert abs(to_mp(g1, ctx) - ctx.mpc(0, ctx.sqrt(7))) < TOL
    g3 = gauss_sum(3, leg, F)
    assert abs(to_mp(g3, ctx) + ctx.mpc(0, ctx.sqrt(7))) < TOL


@pytest.mark.parametrize("k", range(1, 61))
def test_separability_iff_primitive(k):
    for chi in enumerate_characters(k):
        if chi.is_real:
            assert chi.is_primitive == is_separable(chi)


@pytest.mark.parametrize("k", [k for k in range(3, 61) if any(c.is_primitive for c in real_odd_characters(k))])
def test_gauss_sum_of_odd_real_primitive(k):
    ctx = mp_ctx()
    for chi in real_odd_characters(k):
        if not chi.is_primitive:
            continue
        g = gauss_sum(1, chi)
        assert g * g == -k
        gf = gauss_sum(1, chi, FloatBackend(256))
        assert abs(to_mp(gf, ctx) - ctx.mpc(0, ctx.sqrt(k))) < TOL


@pytest.mark.parametrize("k", [5, 8, 12, 13, 17])
def test_gauss_sum_even_real_primitive_is_sqrt_k(k):
    ctx = mp_ctx()
    for chi in enumerate_characters(k):
        if chi.is_real and chi.is_even and chi.is_primitive:
            assert abs(to_mp(gauss_sum(1, chi), ctx) - ctx.sqrt(k)) < TOL


def test_gauss_sum_rejects_small_field():
    with pytest.raises(ValueError):
        gauss_sum(1, kronecker_character(7), ExactBackend(5))


# --- class numbers ---------------------------------------------------------


def test_class_number_examples():
    assert class_number(7).h == 1
    assert class_number(15).h == 2
    assert class_number(23).h == 3


@pytest.mark.parametrize("k", VALID_K)
def test_class_number_matches_form_count(k):
    r = class_number(k)
    assert r.via_weighted_sum == r.via_half_sum == r.h == class_number_by_forms(k)


@pytest.mark.parametrize("k", [3, 5, 9, 11 * 11, 27, 4])
def test_class_number_refuses(k):
    with pytest.raises(ValueError, match="class number formula not applicable"):
        class_number(k)
