"""Exact integer combinatorics for the sequence and moment machinery.

Everything here returns plain Python ints, so all values are exact at any
size. Floating point enters only in the moment modules, and only at the
final conversion step.
"""

from __future__ import annotations

import math
from functools import lru_cache


@lru_cache(maxsize=None)
def stirling2(n: int, k: int) -> int:
    """Number of partitions of an n-element set into k nonempty blocks.

    Computed by the triangle recurrence S(n, k) = S(n-1, k-1) + k*S(n-1, k)
    with S(0, 0) = 1. Out-of-range arguments give 0, matching the usual
    convention S(n, k) = 0 for k > n or k = 0 < n.
    """
    assert n >= 0 and k >= 0
    if n == 0:
        return 1 if k == 0 else 0
    if k == 0 or k > n:
        return 0
    return stirling2(n - 1, k - 1) + k * stirling2(n - 1, k)


def bell(n: int) -> int:
    """Number of set partitions of an n-element set: sum_k S(n, k)."""
    assert n >= 0
    return sum(stirling2(n, k) for k in range(n + 1)) if n > 0 else 1


def falling_factorial(n: int, r: int) -> int:
    """n (n-1) ... (n-r+1), with the empty product 1 for r = 0.

    For integer n with 0 <= n < r the product hits zero, which is exactly
    the number of injections from an r-set into an n-set.
    """
    assert r >= 0
    out = 1
    for j in range(r):
        out *= n - j
    return out


def c1_count(s: int, p: int) -> int:
    """Number of non-crossing canonical s-sequences of length p.

    Evaluates (1/p) C(p, s-1) C(p, s); the division is always exact
    (these are the Narayana numbers). Returns 0 for s outside 1..p.
    """
    assert p >= 1
    if s < 1 or s > p:
        return 0
    num = math.comb(p, s - 1) * math.comb(p, s)
    q, rem = divmod(num, p)
    assert rem == 0
    return q
