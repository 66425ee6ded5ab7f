import math

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from coexist import families
from coexist.coexistence import feasibility_oracle
from coexist.errors import NegativeRadicand, NotAnEffect, PreconditionViolated
from coexist.qubit import (
    BlochEffect,
    Decision,
    bracket,
    c_function,
    c_function_grid,
    c_function_rank1,
    c_function_unbiased,
    decide,
    from_bloch,
    qubit_coexistent,
    qubit_verdict,
    to_bloch,
)
from coexist.sampling import random_qubit_effect
from conftest import assert_close, seeds

R2 = 1 / math.sqrt(2)
A1 = BlochEffect(R2, (0, 0, R2))
B1 = BlochEffect(R2, (R2, 0, 0))


def test_to_bloch_examples():
    b = to_bloch(np.diag([1.0, 0.0]))
    assert (b.alpha, b.a) == (1.0, (0.0, 0.0, 1.0))
    b = to_bloch(np.eye(2))
    assert (b.alpha, b.a) == (2.0, (0.0, 0.0, 0.0))
    b = to_bloch(families.tensor_example()["A1"])
    assert b.alpha == pytest.approx(R2, abs=1e-15)
    assert b.a == pytest.approx((0, 0, R2), abs=1e-15)


def test_bloch_invariants_enforced():
    with pytest.raises(NotAnEffect):
        BlochEffect(0.5, (0, 0, 0.9))
    with pytest.raises(NotAnEffect):
        BlochEffect(1.5, (0.9, 0, 0))
    with pytest.raises(ValueError):
        BlochEffect(1.0, (0, 0))
    with pytest.raises(ValueError):
        to_bloch(np.eye(3))
    assert BlochEffect(1.0, (0, 0, 1.0 + 1e-10)).norm > 1.0


@given(seeds)
def test_bloch_roundtrip(seed):
    rng = np.random.default_rng(seed)
    b = random_qubit_effect(rng)
    M = from_bloch(b)
    back = to_bloch(M)
    assert back.alpha == pytest.approx(b.alpha, abs=1e-12)
    assert back.a == pytest.approx(b.a, abs=1e-12)
    assert_close(from_bloch(back), M, 1e-12)
    w = np.linalg.eigvalsh(M)
    assert w[0] >= -1e-12 and w[-1] <= 1 + 1e-12


def test_bracket_examples():
    P = BlochEffect(1.0, (0, 0, 1.0))
    assert bracket(P, P) == 0.0
    I = BlochEffect(2.0, (0, 0, 0))
    assert bracket(I, I) == 4.0
    assert bracket(A1, B1) == pytest.approx(0.5, abs=1e-15)


@given(seeds)
def test_bracket_is_four_det(seed):
    b = random_qubit_effect(np.random.default_rng(seed))
    assert bracket(b, b) == pytest.approx(4 * np.linalg.det(from_bloch(b)).real, abs=1e-12)


def test_c_function_examples():
    half = BlochEffect(1.0, (0, 0, 0))
    assert c_function(half, half) == pytest.approx(2.0, abs=1e-15)
    assert c_function(A1, B1) < 0
    s = families.QUBIT_XY_THRESHOLD
    Px, Py = families.pauli_projections()
    assert abs(c_function(s * Px, s * Py)) <= 1e-9


def test_c_function_on_matrices_and_bloch_agree():
    A, B = families.tensor_example()["A1"], families.tensor_example()["B1"]
    assert c_function(A, B) == c_function(to_bloch(A), to_bloch(B))


def test_unbiased_orthogonal_boundary():
    A = BlochEffect(1.0, (0, 0, R2))
    B = BlochEffect(1.0, (R2, 0, 0))
    assert c_function_unbiased(A, B) == pytest.approx(0.0, abs=1e-15)
    assert c_function(A, B) == pytest.approx(0.0, abs=1e-12)
    assert qubit_coexistent(A, B)
    assert qubit_verdict(A, B)[0] is Decision.BORDERLINE


@given(st.floats(0, 1), st.floats(0, 1))
def test_unbiased_orthogonal_closed_form(x, y):
    A = BlochEffect(1.0, (x, 0, 0))
    B = BlochEffect(1.0, (0, y, 0))
    assert c_function_unbiased(A, B) == pytest.approx(2 * (1 - x * x - y * y), abs=1e-12)


@given(seeds)
def test_unbiased_form_matches_full_and_known_criterion(seed):
    rng = np.random.default_rng(seed)
    a, b = rng.normal(size=3), rng.normal(size=3)
    a *= rng.uniform() / np.linalg.norm(a)
    b *= rng.uniform() / np.linalg.norm(b)
    A, B = BlochEffect(1.0, a), BlochEffect(1.0, b)
    cu = c_function_unbiased(A, B)
    assert cu == pytest.approx(c_function(A, B), abs=1e-12)
    # unbiased pairs coexist iff |a + b| + |a - b| <= 2
    margin = 2 - np.linalg.norm(a + b) - np.linalg.norm(a - b)
    if abs(margin) > 1e-6:
        assert (cu >= 0) == (margin >= 0)


def test_unbiased_precondition():
    with pytest.raises(PreconditionViolated):
        c_function_unbiased(A1, B1)


@given(seeds, st.sampled_from(["A", "Ac", "B", "Bc"]))
def test_rank1_form_matches_full(seed, which):
    rng = np.random.default_rng(seed)
    A, B = random_qubit_effect(rng), random_qubit_effect(rng)
    # push one of the four effects onto the rank-one boundary alpha = |a|
    if which in ("A", "Ac"):
        A = BlochEffect(A.norm, A.a) if which == "A" else BlochEffect(2 - A.norm, A.a)
    else:
        B = BlochEffect(B.norm, B.a) if which == "B" else BlochEffect(2 - B.norm, B.a)
    # the full form keeps sqrt(rounding noise) ~ 1e-8 from the vanishing radicand
    assert c_function_rank1(A, B) == pytest.approx(c_function(A, B), abs=1e-7)


def test_rank1_precondition():
    with pytest.raises(PreconditionViolated):
        c_function_rank1(BlochEffect(1.0, (0, 0, 0.5)), BlochEffect(1.0, (0.5, 0, 0)))


def test_negative_radicand_on_invalid_input():
    from coexist import matrix_core as mc

    # built under a very loose effect tolerance, evaluated under the default one
    with mc.tolerances(effect=0.5):
        bad = BlochEffect(0.2, (0.0, 0.0, 0.5))
    ok = BlochEffect(0.5, (0.3, 0.0, 0.0))
    with pytest.raises(NegativeRadicand):
        c_function(bad, ok)


def test_decide_three_valued():
    assert decide(1e-3) is Decision.COEXISTENT
    assert decide(-1e-3) is Decision.NOT_COEXISTENT
    assert decide(5e-10) is Decision.BORDERLINE
    assert decide(5e-10, tol=1e-12) is Decision.COEXISTENT
    assert [d.exit_code for d in Decision] == [0, 1, 2]


def test_commuting_pair_never_borderline():
    zero = BlochEffect(0.0, (0, 0, 0))
    half = BlochEffect(1.0, (0, 0, 0))
    assert c_function(half, zero) == 0.0
    assert qubit_verdict(half, zero)[0] is Decision.COEXISTENT


def test_threshold_bisection():
    Px, Py = families.pauli_projections()

    def c(s):
        return c_function(s * Px, s * Py)

    lo, hi = 0.0, 1.0
    for _ in range(60):
        mid = 0.5 * (lo + hi)
        lo, hi = (mid, hi) if c(mid) >= 0 else (lo, mid)
    assert lo == pytest.approx(2 - math.sqrt(2), abs=1e-9)


@given(seeds)
def test_symmetry_and_complement_invariance(seed):
    rng = np.random.default_rng(seed)
    A, B = random_qubit_effect(rng), random_qubit_effect(rng)
    c = c_function(A, B)
    assert c_function(B, A) == c
    assert c_function(A.complement(), B) == pytest.approx(c, abs=1e-12)
    assert c_function(A, B.complement()) == pytest.approx(c, abs=1e-12)
    assert c_function(A.complement(), B.complement()) == pytest.approx(c, abs=1e-12)


def test_grid_matches_scalar(rng):
    pairs = [(random_qubit_effect(rng), random_qubit_effect(rng)) for _ in range(50)]
    alpha = np.array([p.alpha for p, _ in pairs])
    beta = np.array([q.alpha for _, q in pairs])
    a = np.array([p.a for p, _ in pairs])
    b = np.array([q.a for _, q in pairs])
    got = c_function_grid(alpha, a, beta, b)
    want = [c_function(p, q) for p, q in pairs]
    assert_close(got, want, 1e-12)


def test_criterion_matches_oracle(rng):
    checked = 0
    while checked < 100:
        A, B = random_qubit_effect(rng), random_qubit_effect(rng)
        c = c_function(A, B)
        if abs(c) <= 1e-6:
            continue
        res = feasibility_oracle(A.matrix(), B.matrix())
        assert res.feasible == (c > 0), (A, B, c, res)
        checked += 1
