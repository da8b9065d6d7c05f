"""Shared fixtures.

The Monte Carlo ladder is expensive (the n=8 rung runs twenty trials of
a 2048-sample experiment), so it is computed once per session and shared
by the convergence, goodness-of-fit, and concentration tests.
"""

import pytest

import tensormp as t

LADDER_SEED = 20260818
LADDER_TRIALS = 20
LADDER_C = 0.5
LADDER_P = 4


@pytest.fixture(scope="session")
def mc_ladder():
    """Reports for n = 4, 6, 8 at k=4, c=0.5, phase entries, tau = 1."""
    runs = {}
    for n in (4, 6, 8):
        m = round(LADDER_C * n**4)
        runs[n] = t.run_trials(
            n, 4, m, t.PHASE, (1.0,) * m, LADDER_P, LADDER_TRIALS, LADDER_SEED, c=LADDER_C
        )
    return runs
