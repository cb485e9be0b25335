"""Acceptance criteria, each run at its stated tolerance.

Every criterion prints one PASS/FAIL line (in the pytest terminal summary, or
on stdout when this file is run as a script).  Criteria 1 and 2 are checked
literally and fail; the reasons are spelled out in their detail lines.
"""

import json
import math
import random
import sys
import time
from fractions import Fraction
from pathlib import Path

import mpmath
import pytest

from holocert import catalog
from holocert.asymptotics import (
    Expansion,
    classify_laguerre2,
    classify_logmono,
    xi_estimate_ratio,
    phi_leading_term,
    shift_expand,
)
from holocert.bounds import propose_bounds, u_bounds_from_b
from holocert.cli import main as cli_main
from holocert.ratfunc import Poly, RationalFunction, derivative, hold_point
from holocert.recurrence import SequenceCache, phi_ratio
from holocert.verify import certify_laguerre2, certify_logmono3

sys.path.insert(0, str(Path(__file__).parent))
import oracles  # noqa: E402

DATA = Path(__file__).resolve().parents[1] / "src" / "holocert" / "data"
n = RationalFunction.n()
L = RationalFunction.n()  # the variable of coefficients in log n


def _cli_report(tmp_path, *argv):
    out = tmp_path / "report.json"
    code = cli_main([*argv, "--json", str(out)])
    return code, json.loads(out.read_text())


def _bounds_arg(pair):
    return f"{pair.g.to_str()},{pair.f.to_str()},{pair.valid_from}"


# 1 ----------------------------------------------------------------------------


def criterion_1(tmp_path):
    t0 = time.perf_counter()
    pair = catalog.trinomial_bounds(256)
    code, rep = _cli_report(tmp_path, "certify-logmono3", str(DATA / "trinomial.rec"), "--bounds", _bounds_arg(pair), "--horizon", "5000")
    th = rep["thresholds"]
    viol = rep["refinement"]["violations"]
    late = [(k, name) for k, name in viol if 9 <= k <= 5000]
    early = [k for k, _ in viol if k <= 8]
    checks = {
        "N2<=2": th["N2"] <= 2,
        "N3<=2": th["N3"] <= 2,
        "N4<=4": th["N4"] <= 4,
        "N=12": th["N"] == 12,
        "no violation in [9,5000]": not late,
        "violation at <=8": bool(early),
        "<30s": time.perf_counter() - t0 < 30,
    }
    failed = [k for k, v in checks.items() if not v]
    detail = f"N2={th['N2']} N3={th['N3']} N4={th['N4']} N={th['N']}, refined start {rep['refinement']['refined_start']}"
    if late:
        detail += f"; violations in [9,5000]: {late}"
    if failed:
        detail += f"; failed: {', '.join(failed)}"
    return not failed, detail


# 2 ----------------------------------------------------------------------------


def criterion_2():
    from holocert.bounds import verify_bounds_scan

    t0 = time.perf_counter()
    cache = SequenceCache(catalog.trinomial())
    viol = verify_bounds_scan(cache, catalog.trinomial_bounds(256), 12, 5000)
    ok = not viol and time.perf_counter() - t0 < 30
    return ok, "g(n) < u_n < f(n) on [12,5000]" if ok else f"violations: {viol[:5]}"


# 3 ----------------------------------------------------------------------------


def criterion_3(tmp_path):
    t0 = time.perf_counter()
    pair = catalog.motzkin_scaled_bounds()
    code, rep = _cli_report(
        tmp_path, "certify-laguerre2", str(DATA / "motzkin_factorial.rec"), "--bounds", _bounds_arg(pair), "--horizon", "5000"
    )
    th = rep["thresholds"]
    viol = rep["refinement"]["violations"]
    ok = th["N2"] <= 2 and not viol and rep["refinement"]["horizon"] >= 5000 and time.perf_counter() - t0 < 60
    return ok, f"N2={th['N2']} N={th['N']}, violations on [0,5000]: {viol[:5] or 'none'}, exit {code}"


# 4 ----------------------------------------------------------------------------


def _laguerre_quotient(cache, k):
    u = cache.ratio_u
    return u(k - 1) * u(k) ** 2 * u(k + 1) - 4 * u(k) + 3


def criterion_4():
    t0 = time.perf_counter()
    fact = SequenceCache(catalog.factorial())
    inv = SequenceCache(catalog.inverse_factorial())
    bad = []
    for k in range(2, 1001):
        if _laguerre_quotient(fact, k) != Fraction(6, k * (k - 1)):
            bad.append(("n!", k))
        if _laguerre_quotient(inv, k) != Fraction(6, (k + 1) * (k + 2)):
            bad.append(("1/n!", k))
    ok = not bad and time.perf_counter() - t0 < 5
    return ok, "both identities exact for 2 <= n <= 1000" if not bad else f"mismatches: {bad[:5]}"


# 5 ----------------------------------------------------------------------------


def _random_rational(rng, lo=Fraction(1, 4), hi=Fraction(4)):
    q = rng.choice([1, 2, 3, 4, 6, 8])
    return Fraction(rng.randint(max(1, math.ceil(lo * q)), math.floor(hi * q)), q)


def admissible_r(rng):
    """Equal-degree ratio of positive-coefficient polynomials in L, with a random sign."""
    d = rng.randint(0, 2)
    num = Poly([rng.randint(1, 9) for _ in range(d + 1)])
    den = Poly([rng.randint(1, 9) for _ in range(d + 1)])
    return RationalFunction(num, den) * rng.choice([1, -1])


def criterion_5(seed=20240521):
    t0 = time.perf_counter()
    rng = random.Random(seed)
    worst = {}
    for which in "ABC":
        worst[which] = 0.0
        for _ in range(20):
            r = admissible_r(rng)
            gamma, alpha = _random_rational(rng), _random_rational(rng)
            with mpmath.workdps(60):
                dev = abs(xi_estimate_ratio(r, gamma, alpha, which, 10**6, dps=60) - 1)
            worst[which] = max(worst[which], float(dev))
    ok = all(v < 0.05 for v in worst.values()) and time.perf_counter() - t0 < 60
    return ok, "max |ratio-1| at n=10^6: " + ", ".join(f"{k}={v:.2e}" for k, v in worst.items())


# 6 ----------------------------------------------------------------------------


def _random_rf(rng):
    num = Poly([rng.randint(-9, 9) for _ in range(rng.randint(1, 5))])
    if num.is_zero():
        num = Poly([1])
    if rng.random() < 0.5:
        return RationalFunction(num)
    den = Poly([rng.randint(-9, 9) for _ in range(rng.randint(1, 4))] + [rng.randint(1, 9)])
    return RationalFunction(num, den)


def criterion_6(seed=7):
    t0 = time.perf_counter()
    rng = random.Random(seed)
    bad = 0
    for _ in range(50):
        r = _random_rf(rng)
        d1 = derivative(r)
        d2 = derivative(d1)
        for direction in (1, -1):
            c = shift_expand(r, 2, direction)
            if c[0] != d1 * direction or c[1] != (d2 - d1) / 2:
                bad += 1
    ok = bad == 0 and time.perf_counter() - t0 < 5
    return ok, "first = +-r', second = (r''-r')/2 for 50 random r, both directions" if ok else f"{bad} mismatches"


# 7 ----------------------------------------------------------------------------


def criterion_7():
    t0 = time.perf_counter()
    e = Expansion(((1, 1), (2, 0), (3, 0)), 4)
    cache = SequenceCache(catalog.factorial())
    N = 10**4
    parts = []
    ok = True
    for k in (0, 1, 2):
        sign, expo, coeff = phi_leading_term(e, k)
        predicted = sign * coeff.const_value() / Fraction(N) ** int(expo)
        actual = phi_ratio(cache, k, N) - 1
        rel = abs(actual / predicted - 1)
        ok &= rel < Fraction(5, 100) and sign == (-1) ** k and (actual > 0) == (sign > 0)
        parts.append(f"k={k} rel.err {float(rel):.1e}")
    ok &= time.perf_counter() - t0 < 10
    return ok, ", ".join(parts)


# 8 ----------------------------------------------------------------------------


def _padded(*terms, beta=4):
    """1 + given terms, padded with zero terms up to exponent 3."""
    have = {Fraction(a) for a, _ in terms}
    pads = [(a, 0) for a in (2, 3) if Fraction(a) not in have and Fraction(a) > Fraction(terms[0][0])]
    return Expansion(tuple(sorted(list(terms) + pads, key=lambda t: Fraction(t[0]))), beta)


def criterion_8():
    t0 = time.perf_counter()
    logmono = {
        "1+1/n": _padded((1, 1)),
        "1+1/(nL)": _padded((1, 1 / L)),
        "1+2/n^2": _padded((2, 2)),
        "1+L/n^2": _padded((2, L)),
    }
    laguerre = {
        "1+1/n": (_padded((1, 1)), "i"),
        "1-1/n": (_padded((1, -1)), "ii"),
        "1-1/(nL)": (_padded((1, -1 / L)), "ii"),
        "1-2/n^2": (_padded((2, -2)), "iii"),
        "1-L/n^2": (_padded((2, -L)), "iii"),
    }
    bad = []
    for name, e in logmono.items():
        v = classify_logmono(e)
        if not (v.holds and v.branch == "r1>0"):
            bad.append(f"logmono {name}: {v.decision}")
    for name, (e, branch) in laguerre.items():
        v = classify_laguerre2(e)
        if not (v.holds and v.branch == branch):
            bad.append(f"laguerre {name}: {v.decision} {v.branch}")
    if classify_laguerre2(_padded((2, -1))).decision != "inconclusive":
        bad.append("1-1/n^2 not inconclusive")
    ok = not bad and time.perf_counter() - t0 < 1
    return ok, "all 10 verdicts as expected" if not bad else "; ".join(bad)


# 9 ----------------------------------------------------------------------------


def criterion_9():
    t0 = time.perf_counter()
    tri_cert = propose_bounds(catalog.trinomial(), 5)
    tri_cert.replay()
    tri = certify_logmono3(SequenceCache(catalog.trinomial()), u_bounds_from_b(tri_cert), 5000)
    mot_rec = catalog.motzkin_over_factorial()
    mot_cert = propose_bounds(mot_rec.unscaled(), 5)
    mot_cert.replay()
    mot = certify_laguerre2(SequenceCache(mot_rec), u_bounds_from_b(mot_cert, mot_rec.scale), 5000)
    ok = (
        tri.holds
        and mot.holds
        and tri.refined_start == 8
        and mot.refined_start == 0
        and time.perf_counter() - t0 < 120
    )
    return ok, (
        f"trinomial N1={tri.N1} N={tri.N} refined {tri.refined_start}; "
        f"M_n/n! N1={mot.N1} N={mot.N} refined {mot.refined_start}"
    )


# 10 ---------------------------------------------------------------------------


def criterion_10(seed=10):
    t0 = time.perf_counter()
    rng = random.Random(seed)
    bad = []
    for _ in range(200):
        coeffs = [rng.randint(-50, 50) for _ in range(rng.randint(1, 7))]
        n_min = rng.randint(-5, 20)
        upto = 10 * (1 + max(abs(c) for c in coeffs)) + abs(n_min)
        expected = oracles.brute_hold_point(coeffs, n_min, upto)
        got = hold_point(RationalFunction(Poly(coeffs)), n_min)
        if got != expected:
            bad.append((coeffs, n_min, got, expected))
    tri, mot = SequenceCache(catalog.trinomial()), SequenceCache(catalog.motzkin())
    for k in range(201):
        if tri.term(k) != oracles.trinomial(k):
            bad.append(("trinomial", k))
        if mot.term(k) != oracles.motzkin(k):
            bad.append(("motzkin", k))
    ok = not bad and time.perf_counter() - t0 < 30
    return ok, "200 hold points and 2x201 terms agree" if not bad else f"mismatches: {bad[:3]}"


# pytest wrappers --------------------------------------------------------------

TITLES = {
    1: "trinomial order-three thresholds and refinement",
    2: "trinomial bound sandwich on [12, 5000]",
    3: "M_n/n! Laguerre thresholds and scan on [0, 5000]",
    4: "factorial Laguerre quotient identities",
    5: "three-estimate convergence at n = 10^6",
    6: "shift expansion identities",
    7: "iterated ratio leading terms for n!",
    8: "classifier table",
    9: "self-certified pipeline",
    10: "hold point and term oracles",
}


def _run(record, k, fn, *args):
    try:
        ok, detail = fn(*args)
    except Exception as exc:  # report, then fail
        ok, detail = False, f"raised {type(exc).__name__}: {exc}"
    record(k, TITLES[k], ok, detail)
    assert ok, detail


def test_criterion_01_trinomial_logmono3(record, tmp_path):
    _run(record, 1, criterion_1, tmp_path)


def test_criterion_02_trinomial_sandwich(record):
    _run(record, 2, criterion_2)


def test_criterion_03_motzkin_factorial_laguerre2(record, tmp_path):
    _run(record, 3, criterion_3, tmp_path)


def test_criterion_04_factorial_identities(record):
    _run(record, 4, criterion_4)


def test_criterion_05_three_estimates(record):
    _run(record, 5, criterion_5)


def test_criterion_06_shift_expansion(record):
    _run(record, 6, criterion_6)


def test_criterion_07_phi_iterates(record):
    _run(record, 7, criterion_7)


def test_criterion_08_classifier_table(record):
    _run(record, 8, criterion_8)


def test_criterion_09_self_certified(record):
    _run(record, 9, criterion_9)


def test_criterion_10_oracles(record):
    _run(record, 10, criterion_10)


if __name__ == "__main__":
    import tempfile

    with tempfile.TemporaryDirectory() as tmp:
        tmp = Path(tmp)
        runs = {1: (tmp,), 3: (tmp,)}
        failures = 0
        for k in sorted(TITLES):
            fn = globals()[f"criterion_{k}"]
            try:
                ok, detail = fn(*runs.get(k, ()))
            except Exception as exc:
                ok, detail = False, f"raised {type(exc).__name__}: {exc}"
            failures += not ok
            print(f"criterion {k:2d} [{'PASS' if ok else 'FAIL'}] {TITLES[k]}: {detail}")
    sys.exit(1 if failures else 0)
