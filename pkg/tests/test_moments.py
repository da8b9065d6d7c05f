"""Exact moment machinery against brute-force averages.

The exhaustive oracle enumerates every entry assignment of the random
model at tiny sizes and averages the normalized trace power directly,
with no combinatorics involved. Agreement here validates the whole
expansion: injection counting, inner-product factors, and mixed moment
rules at once.
"""

import itertools
import math
from fractions import Fraction

import numpy as np
import pytest

import tensormp as t
from tensormp import GraphClass, TauModel


def exhaustive_mean_trace(n, k, m, p, taus, alphabet):
    nk = n**k
    total = 0.0
    count = 0
    for entries in itertools.product(alphabet, repeat=n * m * k):
        xs = np.array(entries, dtype=complex).reshape(m, k, n) / math.sqrt(n)
        M = np.zeros((nk, nk), dtype=complex)
        for a in range(m):
            y = xs[a, 0]
            for l in range(1, k):
                y = np.kron(y, xs[a, l])
            M += taus[a] * np.outer(y, y.conj())
        total += float(np.trace(np.linalg.matrix_power(M, p)).real) / nk
        count += 1
    return total / count


ROOTS3 = tuple(np.exp(2j * np.pi * j / 3) for j in range(3))
ROOTS4 = (1, 1j, -1, -1j)


def test_limiting_moments_tau_one():
    tau = TauModel.constant(1.0)
    assert [t.limiting_moment(p, 1.0, tau) for p in (1, 2, 3, 4)] == [1.0, 2.0, 5.0, 14.0]
    assert t.limiting_moment(2, 2.0, tau) == 6.0
    assert t.limiting_moment(1, 0.5, tau) == 0.5
    assert t.limiting_moment(2, 0.5, tau) == 0.75


def test_limiting_moment_nonconstant_tau():
    # tau taking values 1 and 2 with equal weight, p = 2, c = 1:
    # sum over the two non-crossing patterns gives 19/4
    tau = TauModel(coefficients=(1.0, 2.0))
    assert t.limiting_moment(2, 1.0, tau) == 4.75
    # declaring the same moments directly must agree
    assert t.limiting_moment(2, 1.0, TauModel(moments=(1.5, 2.5))) == 4.75


def test_limiting_equals_narayana_sum_exactly():
    tau = TauModel.constant(1.0)
    for c in (0.1, 0.25, 0.5, 1.0, 2.0, 4.0):
        for p in range(1, 11):
            assert t.limiting_moment(p, c, tau) == t.mp_moment(p, c)


def test_moment_needs_enough_tau_moments():
    with pytest.raises(ValueError):
        t.limiting_moment(3, 1.0, TauModel(moments=(1.0, 1.0)))


def test_tau_model_validation():
    with pytest.raises(ValueError):
        TauModel()
    tau = TauModel(coefficients=(1.0, 2.0, 3.0))
    assert tau.moment(1) == 2.0
    assert tau.moment(2) == float(Fraction(14, 3))
    assert TauModel(coefficients=(2.0, 0.0)).moment(1) == 1.0
    assert TauModel(coefficients=(1.0, -1.0)).moment(1) == 0.0
    assert TauModel(coefficients=(1.0, -1.0)).moment(2) == 1.0


def test_tau_empirical_moments():
    assert t.tau_empirical_moments((1.0, 1.0, 1.0), 3) == [1.0, 1.0, 1.0]
    assert t.tau_empirical_moments((2.0, 0.0), 2) == [1.0, 2.0]
    assert t.tau_empirical_moments((1.0, -1.0), 2) == [0.0, 1.0]


def test_carleman_check():
    ok, bad = t.carleman_check([1.0, 2.0, 6.0], 2.0)
    assert ok and bad is None
    ok, bad = t.carleman_check([1.0, 100.0], 1.0)
    assert not ok and bad == 2


def test_mixed_moment_rules():
    phase = t.uniform_phase_rule()
    rad = t.rademacher_rule()
    r3 = t.roots_of_unity_rule(3)
    for a in range(4):
        for b in range(4):
            assert phase.mu(a, b) == (1 if a == b else 0)
            assert rad.mu(a, b) == (1 if (a + b) % 2 == 0 else 0)
            assert r3.mu(a, b) == (1 if (a - b) % 3 == 0 else 0)
    with pytest.raises(ValueError):
        t.roots_of_unity_rule(1)


def test_exact_oracle_rademacher():
    rad = t.rademacher_rule()
    tau1 = TauModel(coefficients=(1.0, 1.0))
    for k, expected in [(1, [1.0, 1.5, 2.5]), (2, [0.5, 0.625, 0.875])]:
        for p in (1, 2, 3):
            got = t.exact_mean_trace_moment(2, k, 2, p, tau1, rad)
            brute = exhaustive_mean_trace(2, k, 2, p, [1.0, 1.0], (1.0, -1.0))
            assert got == pytest.approx(expected[p - 1], abs=1e-14)
            assert got == pytest.approx(brute, abs=1e-12)


def test_exact_oracle_rademacher_weighted():
    rad = t.rademacher_rule()
    tau = TauModel(coefficients=(1.0, 2.0))
    for k, expected in [(1, [1.5, 3.5, 9.0]), (2, [0.75, 1.5])]:
        for p, want in enumerate(expected, start=1):
            got = t.exact_mean_trace_moment(2, k, 2, p, tau, rad)
            brute = exhaustive_mean_trace(2, k, 2, p, [1.0, 2.0], (1.0, -1.0))
            assert got == pytest.approx(want, abs=1e-14)
            assert got == pytest.approx(brute, abs=1e-12)


def test_exact_oracle_roots_of_unity():
    tau1 = TauModel(coefficients=(1.0, 1.0))
    r3 = t.roots_of_unity_rule(3)
    got = t.exact_mean_trace_moment(2, 1, 2, 4, tau1, r3)
    assert got == pytest.approx(4.375, abs=1e-14)
    for p in (1, 2, 3):
        brute = exhaustive_mean_trace(2, 1, 2, p, [1.0, 1.0], ROOTS3)
        got = t.exact_mean_trace_moment(2, 1, 2, p, tau1, r3)
        assert got == pytest.approx(brute, abs=1e-12)
    r4 = t.roots_of_unity_rule(4)
    for p in (1, 2, 3):
        brute = exhaustive_mean_trace(2, 1, 2, p, [1.0, 1.0], ROOTS4)
        got = t.exact_mean_trace_moment(2, 1, 2, p, tau1, r4)
        assert got == pytest.approx(brute, abs=1e-12)


def test_exact_oracle_requires_coefficients():
    with pytest.raises(ValueError):
        t.exact_mean_trace_moment(2, 1, 2, 2, TauModel(moments=(1.0, 1.0)), t.rademacher_rule())
    with pytest.raises(ValueError):
        t.exact_mean_trace_moment(2, 1, 3, 2, TauModel(coefficients=(1.0,)), t.rademacher_rule())


def test_phase_weight_vanishes_unless_paired():
    phase = t.uniform_phase_rule()
    for p in range(1, 6):
        for a in t.enumerate_canonical(p):
            for i in t.enumerate_canonical(p):
                w = t.graph_expectation_weight(i, a, phase)
                paired = t.classify(t.build_graph(i, a)) is GraphClass.PAIRED
                assert (w != 0) == paired


def test_single_weight_vanishes_for_all_rules():
    rules = [t.uniform_phase_rule(), t.rademacher_rule(), t.roots_of_unity_rule(3)]
    for p in range(1, 6):
        for a in t.enumerate_canonical(p):
            for i in t.enumerate_canonical(p):
                if t.classify(t.build_graph(i, a)) is not GraphClass.SINGLE:
                    continue
                for rule in rules:
                    assert t.graph_expectation_weight(i, a, rule) == 0


def test_inner_factor_collapse_for_phase():
    # for non-crossing alpha the i-sum telescopes to n^(1-s)
    phase = t.uniform_phase_rule()
    for n in (2, 5, 9):
        for p in range(1, 7):
            for a in t.enumerate_canonical(p):
                if t.is_crossing(a):
                    continue
                assert t.inner_factor(a, n, phase) == Fraction(n) ** (1 - max(a))


def test_moment_table_csv():
    from tensormp.moments import moment_table_csv

    text = moment_table_csv([(1, 1.0, 1.0), (2, 2.0, None)], config_line="config={}")
    lines = text.strip().split("\n")
    assert lines[0] == "# config={}"
    assert lines[1] == "p,theory,exact_or_mc,abs_error"
    assert lines[2] == "1,1.0,1.0,0.0"
    assert lines[3] == "2,2.0,,"
