"""Acceptance criteria, each run at its stated tolerance and time budget.

Every test logs one PASS/FAIL line; the lines are repeated in the pytest
terminal summary under "acceptance criteria".
"""

import random
import time
from fractions import Fraction

import mpmath

import trigsums.characters as characters_mod
import trigsums.identities as identities_mod
import trigsums.scalars as scalars_mod
from trigsums.characters import (
    class_number,
    enumerate_characters,
    gauss_sum,
    is_separable,
    kronecker_character,
    kronecker_real_odd_exists,
)
from trigsums.dft import PAIR_NAMES, PeriodicFn, convolve, dft, inverse_dft, pair_valid, parity, trig_table
from trigsums.identities import bindings, char_cot_transform, check, eval_lhs
from trigsums.scalars import ExactBackend, FloatBackend
from trigsums.sweep import SweepConfig, run_sweep

from oracles import class_number_by_forms, convolve_direct, mp_ctx, to_mp

BOUND_100 = mpmath.mpf(2) ** -100


def cold_caches():
    """Drop memoized trig values, characters, and class numbers before a timed run."""
    for mod in (scalars_mod, characters_mod, identities_mod):
        for obj in vars(mod).values():
            if hasattr(obj, "cache_clear"):
                obj.cache_clear()


def residual_ok(r, exact: bool) -> bool:
    if r.verdict != "pass":
        return False
    if exact:
        return r.residual == 0
    return r.residual < BOUND_100


def sweep_one(ident, k, exact_up_to):
    kind = "exact" if k <= exact_up_to else "float"
    out = []
    for p, _ in bindings(ident, k, kind):
        out.append((p, kind, check(ident, p, kind)))
    return out


# ---------------------------------------------------------------------------


def test_criterion_01_tangent_squares(acceptance_log):
    cold_caches()
    start = time.perf_counter()
    bad = []
    n = 0
    for k in range(3, 200, 2):
        for p, kind, r in sweep_one("stern_tan2", k, 31):
            n += 1
            if not residual_ok(r, kind == "exact"):
                bad.append(k)
    elapsed = time.perf_counter() - start
    ok = not bad and n == 99 and elapsed < 5
    acceptance_log(1, "sum tan^2(pi j/k) = k^2 - k, odd k 3..199, exact to 31", ok,
                   f"{n} checks, {len(bad)} bad, {elapsed:.2f}s of 5s")
    assert ok, (bad, elapsed)


def test_criterion_02_companion_sums(acceptance_log):
    ids = ["cot2_sum", "csc2_sum", "sec2_sum", "tan_csc", "cot_csc", "tan4_sum"]
    bad, n = [], 0
    for ident in ids:
        for k in range(1, 200):
            for p, kind, r in sweep_one(ident, k, 31):
                n += 1
                if not residual_ok(r, kind == "exact"):
                    bad.append((ident, k))
    ok = not bad and n > 0
    acceptance_log(2, "companion sums (cot^2, csc^2, sec^2, tan csc, cot csc, tan^4), k <= 199", ok,
                   f"{n} checks, {len(bad)} bad")
    assert ok, bad


def test_criterion_03_eisenstein_families(acceptance_log):
    cold_caches()
    ids = ["eisenstein_cot_sin", "tan_sin", "sin_csc", "tan_csc", "cot_csc"]
    start = time.perf_counter()
    bad, n = [], 0
    for ident in ids:
        for k in range(1, 100):
            for p, _ in bindings(ident, k, "float"):
                n += 1
                r = check(ident, p, "float")
                if not residual_ok(r, False):
                    bad.append((ident, p))
    elapsed = time.perf_counter() - start
    ok = not bad and elapsed < 30
    acceptance_log(3, "cot-sine family and its tan/csc siblings, all 0 < a < k, k <= 99", ok,
                   f"{n} checks, {len(bad)} bad, {elapsed:.1f}s of 30s")
    assert ok, (bad[:5], elapsed)


def test_criterion_04_power_sums(acceptance_log):
    bad, n, spread_bad = [], 0, []
    for ident in ("sin_power_sum", "cos_power_sum"):
        for k in range(2, 61):
            values: dict = {}
            for p, _ in bindings(ident, k, "float"):
                n += 1
                r = check(ident, p, "float")
                if not residual_ok(r, False):
                    bad.append((ident, p))
                values.setdefault((p["a"], p["b"]), []).append(to_mp(r.lhs))
            for key, vs in values.items():
                if any(abs(v - vs[0]) >= BOUND_100 for v in vs):
                    spread_bad.append((ident, k, key))
    ok = not bad and not spread_bad and n > 0
    acceptance_log(4, "sin^(2a) / cos^(2a) sums over ab < k, a <= 6, k <= 60, x samples; x-invariance", ok,
                   f"{n} checks, {len(bad)} bad, {len(spread_bad)} x-spread violations")
    assert ok, (bad[:5], spread_bad[:5])


def test_criterion_05_binomial(acceptance_log):
    bad = []
    for ident in ("binom_square", "binom_alt"):
        for a in range(1, 21):
            r = check(ident, {"a": a}, "exact")
            if not residual_ok(r, True):
                bad.append((ident, a))
    ok = not bad
    acceptance_log(5, "binomial identities, a = 1..20, exact integers", ok, f"{len(bad)} bad")
    assert ok, bad


def test_criterion_06_class_numbers(acceptance_log):
    bad = []
    ks = [k for k in range(7, 200) if kronecker_real_odd_exists(k)]
    for k in ks:
        r = class_number(k)
        oracle = class_number_by_forms(k)
        if not (r.via_weighted_sum == r.via_half_sum == r.h == oracle):
            bad.append((k, r, oracle))
    spots = (class_number(7).h, class_number(15).h, class_number(23).h) == (1, 2, 3)
    ok = not bad and spots
    acceptance_log(6, "class numbers by both character sums = reduced-form count, k <= 199", ok,
                   f"{len(ks)} moduli, {len(bad)} bad, h(-7),h(-15),h(-23) = 1,2,3: {spots}")
    assert ok, bad


def test_criterion_07_gauss_sums(acceptance_log):
    ctx = mp_ctx()
    sep_bad, val_bad, n_real, n_odd = [], [], 0, 0
    for k in range(1, 61):
        for chi in enumerate_characters(k):
            if not chi.is_real:
                continue
            n_real += 1
            if chi.is_primitive != is_separable(chi):
                sep_bad.append((k, chi))
            if chi.is_odd and chi.is_primitive and not chi.is_principal:
                n_odd += 1
                g = gauss_sum(1, chi)
                gf = to_mp(gauss_sum(1, chi, FloatBackend(256)), ctx)
                if g * g != -k or abs(gf - ctx.mpc(0, ctx.sqrt(k))) >= BOUND_100:
                    val_bad.append(k)
    ok = not sep_bad and not val_bad and n_odd > 0
    acceptance_log(7, "primitive <=> separable for real characters, k <= 60; G(1) = i sqrt(k), G^2 = -k", ok,
                   f"{n_real} real characters, {n_odd} odd primitive, {len(sep_bad) + len(val_bad)} bad")
    assert ok, (sep_bad, val_bad)


def test_criterion_08_character_identities(acceptance_log):
    cold_caches()
    ids = [
        "char_sin", "char_sin_power", "char_cos_power", "bz_cot", "bz_cot_b", "bz_tan", "bz_csc",
        "bz_cot_cospow", "bz_cot_cos", "cot2_sin", "char_sin2_cot", "char_sin2_tan", "char_sin2_tan2",
        "char_sin2_over_sin4",
    ]
    start = time.perf_counter()
    report = run_sweep(SweepConfig(identities=ids, k_values=tuple(range(1, 102)), jobs=1))
    elapsed = time.perf_counter() - start
    s = report.summary
    ctx = mp_ctx()
    at7 = to_mp(eval_lhs("char_sin2_over_sin4", {"k": 7}), ctx)
    at11 = to_mp(eval_lhs("char_sin2_over_sin4", {"k": 11}), ctx)
    spot7 = abs(at7) < BOUND_100
    spot11 = abs(at11 + 3 * ctx.sqrt(11) * class_number_by_forms(11)) < BOUND_100
    ok = s["fail"] == 0 and s["pass"] > 0 and spot7 and spot11 and elapsed < 120
    acceptance_log(8, "character identities with the Kronecker character, k <= 101", ok,
                   f"{s['pass']} pass, {s['fail']} fail, k=7 -> 0: {spot7}, k=11 -> -3 sqrt(11) h: {spot11}, "
                   f"{elapsed:.1f}s of 120s")
    assert ok, (s, elapsed)


def test_criterion_09_structural_suites(acceptance_log):
    rng = random.Random(2024)
    failures = []
    for k in range(1, 41):
        B = ExactBackend(k)
        f_vals = [Fraction(rng.randint(-9, 9), rng.randint(1, 4)) for _ in range(k)]
        g_vals = [Fraction(rng.randint(-9, 9), rng.randint(1, 4)) for _ in range(k)]
        f, g = PeriodicFn(f_vals, B), PeriodicFn(g_vals, B)
        if not inverse_dft(dft(f)).equals(f):
            failures.append(("round trip", k))
        conv = convolve(f, g)
        if not conv.equals(PeriodicFn(convolve_direct(f_vals, g_vals), B)):
            failures.append(("convolution vs direct", k))
        if not dft(conv).equals(dft(f) * dft(g)):
            failures.append(("convolution theorem", k))
        odd = PeriodicFn([f_vals[n] - f_vals[-n % k] for n in range(k)], B)
        even = PeriodicFn([f_vals[n] + f_vals[-n % k] for n in range(k)], B)
        for h in (odd, even, f):
            if parity(h) != parity(dft(h)):
                failures.append(("parity transfer", k))
        for name in PAIR_NAMES:
            for a in (range(1, k) if name in ("sin_a", "cos_a") else [None]):
                if pair_valid(name, k, a) and not trig_table(name, k, a).holds():
                    failures.append((name, k, a))
        if kronecker_real_odd_exists(k):
            chi = kronecker_character(k)
            for n in range(k):
                for power in (1, 2):
                    try:
                        char_cot_transform(chi, n, power, "exact", debug=True)
                    except AssertionError:
                        failures.append(("cot transform", k, n, power))
    ok = not failures
    acceptance_log(9, "DFT round trip, convolution, parity, transform pairs, cot transforms; exact, k <= 40", ok,
                   f"{len(failures)} failures")
    assert ok, failures[:10]


def test_criterion_10_decompositions(acceptance_log):
    bad, n = [], 0
    ctx = mp_ctx()
    for k in range(7, 102):
        if not kronecker_real_odd_exists(k):
            continue
        n += 1
        p = {"k": k}
        v = {i: to_mp(eval_lhs(i, p), ctx) for i in (
            "char_sin2_over_sin4", "char_sin2_cot", "char_sin2_tan", "char_sin2_tan2", "bz_csc", "bz_cot", "bz_tan")}
        combo = v["char_sin2_cot"] / 4 - v["char_sin2_tan"] / 4 + v["char_sin2_tan2"] / 2
        if abs(v["char_sin2_over_sin4"] - combo) >= BOUND_100:
            bad.append(("three-term", k))
        if abs(v["bz_csc"] - (v["bz_cot"] + v["bz_tan"]) / 2) >= BOUND_100:
            bad.append(("csc mean", k))
    ok = not bad and n > 0
    acceptance_log(10, "sin^2/sin(4.) as three-term combination; csc sum = mean of cot and tan sums, k <= 101",
                   ok, f"{n} moduli, {len(bad)} bad")
    assert ok, bad
