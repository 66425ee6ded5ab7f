"""Exit criteria. Each test prints one PASS/FAIL line with its measurements."""
import math
import time

import numpy as np
import pytest

from coexist import coexistence as co
from coexist import families
from coexist import halmos as hm
from coexist.effects import ginf_condition
from coexist.qubit import BlochEffect, Decision, c_function, qubit_coexistent
from coexist.sampling import random_projection_pair, random_qubit_effect, random_unit_polynomial

pytestmark = pytest.mark.acceptance

BAND = 1e-6


@pytest.fixture
def report(capsys):
    def emit(number, title, ok, detail, elapsed=None, budget=None):
        timing = ""
        if elapsed is not None:
            timing = f"; {elapsed:.2f} s" + (f" (limit {budget:g} s)" if budget else "")
        with capsys.disabled():
            print(f"\n[criterion {number}] {'PASS' if ok else 'FAIL'} {title}: {detail}{timing}")
        return ok

    return emit


def bisect(pred, lo, hi, tol):
    """Boundary of a predicate that is True at ``lo`` and False at ``hi``."""
    assert pred(lo) and not pred(hi)
    while hi - lo > tol:
        mid = 0.5 * (lo + hi)
        if pred(mid):
            lo = mid
        else:
            hi = mid
    return 0.5 * (lo + hi)


def test_qubit_threshold(report):
    t0 = time.perf_counter()

    def coexist(s):
        # s P_x and s P_y in Bloch form
        return c_function(BlochEffect(s, (s, 0.0, 0.0)), BlochEffect(s, (0.0, s, 0.0))) >= 0.0

    s_star = bisect(coexist, 0.0, 1.0, 1e-12)
    elapsed = time.perf_counter() - t0
    err = abs(s_star - (2.0 - math.sqrt(2.0)))
    ok = err <= 1e-9 and elapsed < 1.0
    assert report(1, "qubit threshold 2 - sqrt 2", ok, f"s* = {s_star:.15f}, error {err:.1e}",
                  elapsed, 1.0)


def test_dim3_region(report):
    t0 = time.perf_counter()
    P1, P2 = families.dim3_projections()
    d = hm.decompose(P1, P2)
    A0, B0 = families.dim3_effects(1.0, 1.0)
    s = np.linspace(0.0, families.DIM3_S_MAX, 200)
    t = np.linspace(0.0, families.DIM3_T_MAX, 200)
    scan = co.scaling_scan(A0, B0, d, s, t)
    elapsed = time.perf_counter() - t0
    quartic = families.dim3_boundary(*np.meshgrid(s, t, indexing="ij"))
    coexistent = np.vectorize(lambda x: x is Decision.COEXISTENT)(scan.decisions)
    outside = np.abs(quartic) > BAND
    wrong = int(np.count_nonzero(coexistent[outside] != (quartic[outside] > 0)))
    ok = wrong == 0 and elapsed < 10.0
    assert report(2, "dim-3 region vs quartic", ok,
                  f"{int(outside.sum())} grid points checked, {wrong} mismatches", elapsed, 10.0)


def test_dim4_threshold(report):
    P1, P2 = families.dim4_projections()
    d = hm.decompose(P1, P2)
    theta_err = float(np.max(np.abs(d.angles - np.array([math.pi / 4, 3 * math.pi / 4]))))
    mults_ok = d.multiplicities == (1, 1)

    def coexist(t):
        A, B = families.dim4_effects(1.0, t)
        return co.coexistent_in_algebra(A, B, d, build_joint=False).min_c >= 0.0

    t_star = bisect(coexist, 0.0, 1.0, 1e-11)
    t_err = abs(t_star - 8 * (3 - 2 * math.sqrt(2)) / 7)
    ok = mults_ok and theta_err <= 1e-10 and t_err <= 1e-8
    assert report(3, "dim-4 angles and threshold", ok,
                  f"theta error {theta_err:.1e}, t* = {t_star:.10f} (error {t_err:.1e})")


def test_copies_bounds(report):
    r = 1 / math.sqrt(2)
    e1 = abs(co.copies_bound(r, 1) - (2 - math.sqrt(2)))
    e2 = abs(co.copies_bound(r, 2) - math.sqrt(2 / 3))
    T = families.tensor_example()
    joint = co.feasibility_oracle(T["A"], T["B"])
    factors = co.feasibility_oracle(T["A1"], T["B1"])
    ok = e1 <= 1e-12 and e2 <= 1e-12 and joint.feasible and not factors.feasible
    assert report(4, "copies bounds and tensor example", ok,
                  f"errors {e1:.1e}, {e2:.1e}; tensor pair feasible={joint.feasible}, "
                  f"factors feasible={factors.feasible} ({factors.status})")


def test_qp_endpoint(report):
    rng = np.random.default_rng(5)
    t0 = time.perf_counter()
    checked = wrong = 0
    while checked < 1000:
        s, t = rng.uniform(0.0, 1.0, size=2)
        if abs(s + t - 1.0) <= BAND:
            continue
        got = co.scaled_central_check(lambda h: s, lambda h: t, co.Interval(0.0, 1.0))
        wrong += got != (s + t <= 1.0)
        checked += 1
    elapsed = time.perf_counter() - t0
    ok = wrong == 0 and elapsed < 5.0
    assert report(5, "QP endpoint s + t <= 1", ok, f"{checked} pairs, {wrong} mismatches",
                  elapsed, 5.0)


def test_oracle_agreement(report):
    rng = np.random.default_rng(6)
    t0 = time.perf_counter()
    qubit = qubit_wrong = 0
    while qubit < 500:
        a, b = random_qubit_effect(rng), random_qubit_effect(rng)
        c = c_function(a, b)
        if abs(c) <= BAND:
            continue
        res = co.feasibility_oracle(a.matrix(), b.matrix())
        qubit_wrong += res.feasible != qubit_coexistent(a, b)
        qubit += 1
    alg = alg_wrong = 0
    while alg < 200:
        P1, P2 = random_projection_pair(rng, dims=(2, 8))
        d = hm.decompose(P1, P2)
        A = hm.reconstruct(hm.random_block_function(d, rng), d)
        B = hm.reconstruct(hm.random_block_function(d, rng), d)
        v = co.coexistent_in_algebra(A, B, d, build_joint=False)
        if v.min_c is not None and abs(v.min_c) <= BAND:
            continue
        res = co.feasibility_oracle(A, B)
        alg_wrong += res.feasible != (v.decision is Decision.COEXISTENT)
        alg += 1
    elapsed = time.perf_counter() - t0
    ok = qubit_wrong == 0 and alg_wrong == 0 and elapsed < 60.0
    assert report(6, "c criterion vs feasibility oracle", ok,
                  f"{qubit} qubit pairs ({qubit_wrong} disagree), "
                  f"{alg} in-algebra pairs ({alg_wrong} disagree)", elapsed, 60.0)


def test_ginf_equivalence(report):
    rng = np.random.default_rng(7)
    checked = wrong = 0
    while checked < 200:
        P1, P2 = random_projection_pair(rng, dims=(2, 8))
        d = hm.decompose(P1, P2)
        f1, f2 = random_unit_polynomial(rng), random_unit_polynomial(rng)
        if d.thetas and abs(co.scaled_central_margin(f1, f2, d.h_values)) <= BAND:
            continue
        A, B = co.scaled_central_effects(f1, f2, P1, P2)
        spectral = True if not d.thetas else co.scaled_central_check(f1, f2, d.h_values)
        wrong += ginf_condition(A, B) != spectral
        checked += 1
    ok = wrong == 0
    assert report(7, "GINF vs spectral criterion", ok, f"{checked} pairs, {wrong} mismatches")


def test_structural_invariants(report):
    rng = np.random.default_rng(8)
    canon = roundtrip = 0.0
    for _ in range(200):
        P1, P2 = random_projection_pair(rng, dims=(2, 10))
        d = hm.decompose(P1, P2)
        canon = max(canon, max(hm.canonical_residuals(P1, P2, d).values()))
        A = hm.reconstruct(hm.random_block_function(d, rng), d)
        bf = hm.block_of(A, d)
        roundtrip = max(roundtrip, float(np.max(np.abs(hm.reconstruct(bf, d) - A))))
    sym = comp = 0.0
    for _ in range(1000):
        a, b = random_qubit_effect(rng), random_qubit_effect(rng)
        c = c_function(a, b)
        sym = max(sym, abs(c_function(b, a) - c))
        comp = max(comp, abs(c_function(a.complement(), b) - c),
                   abs(c_function(a, b.complement()) - c),
                   abs(c_function(a.complement(), b.complement()) - c))
    ok = canon < 1e-9 and roundtrip < 1e-9 and sym <= 1e-12 and comp <= 1e-12
    assert report(8, "structural invariants", ok,
                  f"canonical {canon:.1e}, round trip {roundtrip:.1e}, "
                  f"c symmetry {sym:.1e}, complement {comp:.1e}")
