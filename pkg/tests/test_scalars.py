from fractions import Fraction
import mpmath
import pytest
from hypothesis import assume, given, settings, strategies as st

from trigsums.scalars import (
    ApproxComplex,
    CycloNumber,
    ExactBackend,
    FloatBackend,
    ModulusMismatch,
    cyclo_inverse,
    cyclo_mul,
    cyclotomic_polynomial,
    embed_complex,
    euler_phi,
    root_of_unity_power,
)

from oracles import cyclo_value, mp_ctx, to_mp, totient

TOL = mpmath.mpf(2) ** -128


def poly_mul(a, b):
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        for j, y in enumerate(b):
            out[i + j] += x * y
    return out


# --- cyclotomic polynomials ------------------------------------------------


def test_cyclotomic_small_cases():
    assert cyclotomic_polynomial(1) == [-1, 1]
    assert cyclotomic_polynomial(7) == [1] * 7
    # x^8 - x^7 + x^5 - x^4 + x^3 - x + 1
    assert cyclotomic_polynomial(15) == [1, -1, 0, 1, -1, 1, 0, -1, 1]


def test_cyclotomic_105_has_coefficient_minus_two():
    assert min(cyclotomic_polynomial(105)) == -2


@pytest.mark.parametrize("k", range(1, 201))
def test_cyclotomic_degree_is_totient(k):
    poly = cyclotomic_polynomial(k)
    assert len(poly) - 1 == totient(k) == euler_phi(k)
    assert poly[-1] == 1


@given(st.integers(1, 120))
def test_product_over_divisors_is_x_to_k_minus_one(k):
    prod = [1]
    for d in range(1, k + 1):
        if k % d == 0:
            prod = poly_mul(prod, cyclotomic_polynomial(d))
    assert prod == [-1] + [0] * (k - 1) + [1]


# --- CycloNumber arithmetic ------------------------------------------------

rationals = st.fractions(min_value=-20, max_value=20, max_denominator=12)


@st.composite
def cyclo(draw, modulus=None):
    k = modulus if modulus is not None else draw(st.sampled_from([3, 4, 5, 7, 8, 9, 12, 15, 20, 28]))
    coeffs = draw(st.lists(rationals, min_size=0, max_size=k))
    return CycloNumber(k, coeffs)


@st.composite
def cyclo_triple(draw):
    k = draw(st.sampled_from([3, 5, 7, 8, 12, 15, 21]))
    return draw(cyclo(k)), draw(cyclo(k)), draw(cyclo(k))


def test_root_of_unity_power_examples():
    assert root_of_unity_power(7, 0) == 1
    assert root_of_unity_power(7, 7) == 1
    assert root_of_unity_power(7, -1) == root_of_unity_power(7, 6)
    assert len(root_of_unity_power(7, 6).coeffs) == 6


def test_cyclo_mul_examples():
    w = root_of_unity_power(7, 1)
    assert cyclo_mul(w, root_of_unity_power(7, 6)) == 1
    x = CycloNumber(9, [1, 2, Fraction(1, 3)])
    assert cyclo_mul(CycloNumber(9, [1]), x) == x
    w5 = root_of_unity_power(5, 1)
    assert cyclo_mul(w5 + 1, w5 - 1) == w5 * w5 - 1


def test_cyclo_mul_modulus_mismatch():
    with pytest.raises(ModulusMismatch):
        cyclo_mul(root_of_unity_power(5, 1), root_of_unity_power(7, 1))


def test_cyclo_inverse_examples():
    assert cyclo_inverse(CycloNumber(7, [1])) == 1
    assert cyclo_inverse(root_of_unity_power(7, 1)) == root_of_unity_power(7, 6)
    w = root_of_unity_power(5, 1)
    assert cyclo_mul(w - 1, cyclo_inverse(w - 1)) == 1


def test_cyclo_inverse_of_zero():
    with pytest.raises(ZeroDivisionError, match="division by zero in cyclotomic field"):
        cyclo_inverse(CycloNumber(7, []))


@given(st.integers(1, 60), st.integers(-200, 200))
def test_zeta_power_is_periodic(k, j):
    assert root_of_unity_power(k, j) == root_of_unity_power(k, j + k)
    assert root_of_unity_power(k, j) ** k == 1


@given(cyclo())
def test_canonical_length(a):
    assert len(a.coeffs) == euler_phi(a.modulus)


@settings(max_examples=60)
@given(cyclo_triple())
def test_field_axioms(t):
    a, b, c = t
    assert (a * b) * c == a * (b * c)
    assert a * (b + c) == a * b + a * c
    assert a * b == b * a
    assert (a + b) - b == a


@settings(max_examples=60)
@given(cyclo())
def test_inverse_property(a):
    assume(not a.is_zero())
    assert cyclo_mul(a, cyclo_inverse(a)) == 1


@settings(max_examples=60)
@given(cyclo_triple())
def test_embedding_is_multiplicative(t):
    a, b, _ = t
    ctx = mp_ctx()
    lhs = to_mp(embed_complex(a * b, 256), ctx)
    rhs = to_mp(embed_complex(a, 256), ctx) * to_mp(embed_complex(b, 256), ctx)
    assert abs(lhs - rhs) < TOL * (1 + abs(rhs))


@settings(max_examples=60)
@given(cyclo())
def test_embedding_matches_coefficient_evaluation(a):
    ctx = mp_ctx()
    assert abs(to_mp(embed_complex(a, 256), ctx) - cyclo_value(a.coeffs, a.modulus, ctx)) < TOL


@settings(max_examples=60)
@given(cyclo_triple())
def test_conjugation_is_involutive_automorphism(t):
    a, b, _ = t
    assert a.conj().conj() == a
    assert (a * b).conj() == a.conj() * b.conj()
    assert (a + b).conj() == a.conj() + b.conj()
    ctx = mp_ctx()
    assert abs(to_mp(a.conj(), ctx) - ctx.conj(to_mp(a, ctx))) < TOL


def test_embed_examples():
    e = embed_complex(CycloNumber(5, [1]), 256)
    assert e.real == 1 and e.imag == 0
    i = embed_complex(root_of_unity_power(4, 1), 256)
    assert abs(i.real) < TOL and abs(i.imag - 1) < TOL
    w = root_of_unity_power(7, 1) + root_of_unity_power(7, 6)
    ctx = mp_ctx()
    assert abs(to_mp(embed_complex(w, 256), ctx) - 2 * ctx.cos(2 * ctx.pi / 7)) < TOL
    assert str(embed_complex(w, 256).real).startswith("1.24697960")


def test_embed_rejects_low_precision():
    with pytest.raises(ValueError):
        embed_complex(CycloNumber(5, [1]), 16)


# --- ApproxComplex ---------------------------------------------------------


def test_approx_precision_never_upgrades():
    a = ApproxComplex(1, 256)
    b = ApproxComplex(2, 128)
    assert (a + b).precision_bits == 128
    assert (a * b).precision_bits == 128
    assert (a - b).precision_bits == 128


def test_approx_zero_threshold():
    assert ApproxComplex(mpmath.mpf(2) ** -129, 256).is_zero()
    assert not ApproxComplex(mpmath.mpf(2) ** -127, 256).is_zero()


@given(st.complex_numbers(max_magnitude=1e6, allow_nan=False, allow_infinity=False),
       st.complex_numbers(max_magnitude=1e6, allow_nan=False, allow_infinity=False))
def test_approx_arithmetic_matches_python_complex(x, y):
    a, b = ApproxComplex(x, 128), ApproxComplex(y, 128)
    assert abs(complex(a + b) - (x + y)) <= 1e-9 * (1 + abs(x + y))
    assert abs(complex(a * b) - x * y) <= 1e-9 * (1 + abs(x * y))
    assert complex(a.conj()) == x.conjugate()


# --- backends --------------------------------------------------------------


@pytest.mark.parametrize("k", [3, 5, 7, 9, 12, 15, 31])
def test_exact_trig_against_mpmath(k):
    B = ExactBackend(4 * k)
    ctx = mp_ctx()
    for j in range(1, 2 * k):
        t = Fraction(j, 4 * k)
        angle = 2 * ctx.pi * j / (4 * k)
        for name in ("sin", "cos"):
            assert abs(to_mp(getattr(B, name)(t), ctx) - getattr(ctx, name)(angle)) < TOL
        if j % (2 * k):
            assert abs(to_mp(B.cot(t), ctx) - ctx.cot(angle)) < TOL
            assert abs(to_mp(B.csc(t), ctx) - ctx.csc(angle)) < TOL
        if j % k or (j // k) % 2 == 0:
            assert abs(to_mp(B.tan(t), ctx) - ctx.tan(angle)) < TOL


@pytest.mark.parametrize("k", [7, 11, 12, 15])
def test_pythagoras_exact(k):
    B = ExactBackend(4 * k)
    for j in range(4 * k):
        t = Fraction(j, 4 * k)
        assert B.sin(t) ** 2 + B.cos(t) ** 2 == 1


@pytest.mark.parametrize("n", range(1, 41))
def test_exact_sqrt(n):
    L = 4 * n * 2
    B = ExactBackend(L)
    r = B.sqrt(n)
    assert r * r == n
    ctx = mp_ctx()
    assert abs(to_mp(r, ctx) - ctx.sqrt(n)) < TOL


def test_exact_poles_raise():
    B = ExactBackend(12)
    with pytest.raises(ZeroDivisionError):
        B.cot(0)
    with pytest.raises(ZeroDivisionError):
        B.tan(Fraction(1, 4))
    F = FloatBackend(128)
    with pytest.raises(ZeroDivisionError):
        F.cot(Fraction(1, 2))


def test_exact_backend_rejects_foreign_angle():
    B = ExactBackend(12)
    assert not B.supports(Fraction(1, 5))
    with pytest.raises(ValueError):
        B.sin(Fraction(1, 5))


def test_float_backend_defaults():
    F = FloatBackend()
    assert F.precision_bits == 256
    assert F.tolerance == mpmath.mpf(2) ** -128
    assert float(FloatBackend(128, tolerance="1e-20").tolerance) == 1e-20


@given(st.fractions(min_value=-3, max_value=3, max_denominator=97))
def test_float_trig_against_mpmath(t):
    F = FloatBackend(256)
    ctx = mp_ctx()
    angle = 2 * ctx.pi * ctx.mpf(t.numerator) / t.denominator
    assert abs(to_mp(F.sin(t), ctx) - ctx.sin(angle)) < TOL
    assert abs(to_mp(F.cos(t), ctx) - ctx.cos(angle)) < TOL
