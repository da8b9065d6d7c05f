"""Limiting and exact finite-size trace moments of the random model.

The model is a sum of m rank-one projectors built from k-fold tensor
products of random unit-modulus vectors in dimension n, each weighted by
a coefficient tau_alpha. Its normalized expected trace moments admit an
exact combinatorial evaluation: a sum over canonical row sequences alpha
of an injection-weighted tau factor times the k-th power of an inner
factor, where the inner factor sums walk-graph expectations over all
canonical column sequences. As m/n^k -> c only the non-crossing alpha
survive, which yields the limiting moment formula implemented in
``limiting_moment``; with constant weights that formula collapses to the
Narayana sums of ``mp_moment``, the Marchenko-Pastur moments.

All combinatorial sums are carried out in exact rational arithmetic and
converted to float once, so algebraically equal quantities compare equal
as floats.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Iterable, Sequence

from .combinatorics import c1_count, falling_factorial
from .graphs import build_graph
from .sequences import degree, enumerate_canonical, enumerate_partitions, is_crossing


@dataclass(frozen=True)
class TauModel:
    """Weight coefficients, their limiting moments, or both.

    ``coefficients`` are the explicit weights tau_1..tau_m used by the
    exact finite-size oracle and the simulator. ``moments`` holds the
    limiting averages m_q = lim (1/m) sum tau_j^q with moments[q-1] = m_q.
    When only coefficients are given, empirical averages stand in for the
    limiting moments.
    """

    coefficients: tuple[float, ...] | None = None
    moments: tuple[float, ...] | None = None

    def __post_init__(self):
        if self.coefficients is None and self.moments is None:
            raise ValueError("TauModel needs coefficients or moments")
        if self.coefficients is not None and len(self.coefficients) == 0:
            raise ValueError("empty coefficient list")

    @classmethod
    def constant(cls, value: float = 1.0, m: int | None = None) -> "TauModel":
        """The constant model tau = value; m copies when m is given.

        A single copy is enough for moment queries, since the empirical
        moments of (value,) are value^q at every order.
        """
        return cls(coefficients=(float(value),) * (m if m is not None else 1))

    def moment(self, q: int) -> float:
        """m_q, preferring declared limiting moments over empirical ones."""
        if q < 1:
            raise ValueError(f"moment order must be >= 1, got {q}")
        if self.moments is not None:
            if q > len(self.moments):
                raise ValueError(f"m_{q} not provided (have q <= {len(self.moments)})")
            return self.moments[q - 1]
        # exact rational average, converted once
        acc = sum(Fraction(t) ** q for t in self.coefficients)
        return float(acc / len(self.coefficients))


def tau_empirical_moments(taus: Sequence[float], q_max: int) -> list[float]:
    """Averages (1/m) sum tau_j^q for q = 1..q_max, exactly."""
    assert len(taus) > 0
    m = len(taus)
    return [float(sum(Fraction(t) ** q for t in taus) / m) for q in range(1, q_max + 1)]


@dataclass(frozen=True)
class MixedMomentRule:
    """Mixed moments mu(a, b) = E[xi^a conj(xi)^b] of the entry law.

    The entry law must be centered with unit modulus, so mu(0,0) = 1,
    mu(1,1) = 1 and mu(1,0) = mu(0,1) = 0. The built-in rules return
    exact ints, which keeps the oracle's rational arithmetic exact.
    """

    name: str
    mu: Callable[[int, int], int] = field(compare=False)

    def validate(self, max_order: int = 4) -> None:
        """Check the centered unit-modulus constraints on small orders."""
        if self.mu(0, 0) != 1:
            raise ValueError(f"{self.name}: mu(0,0) must be 1")
        if self.mu(1, 1) != 1:
            raise ValueError(f"{self.name}: mu(1,1) must be 1 (unit variance)")
        if self.mu(1, 0) != 0 or self.mu(0, 1) != 0:
            raise ValueError(f"{self.name}: entries must be centered")
        for a in range(max_order + 1):
            for b in range(max_order + 1):
                if abs(self.mu(a, b)) > 1:
                    raise ValueError(f"{self.name}: |mu({a},{b})| > 1 breaks unit modulus")


def uniform_phase_rule() -> MixedMomentRule:
    """xi uniform on the unit circle: mu(a,b) = 1 iff a = b."""
    return MixedMomentRule("phase", lambda a, b: 1 if a == b else 0)


def rademacher_rule() -> MixedMomentRule:
    """xi uniform on {+1, -1}: mu(a,b) = 1 iff a + b is even."""
    return MixedMomentRule("rademacher", lambda a, b: 1 if (a + b) % 2 == 0 else 0)


def roots_of_unity_rule(q: int) -> MixedMomentRule:
    """xi uniform on the q-th roots of unity: mu(a,b) = 1 iff a = b mod q."""
    if q < 2:
        raise ValueError(f"need q >= 2, got {q}")
    return MixedMomentRule(f"roots:{q}", lambda a, b: 1 if (a - b) % q == 0 else 0)


def limiting_moment(p: int, c: float, tau: TauModel) -> float:
    """Limit of the normalized expected p-th trace moment as m/n^k -> c.

    Sums c^s * prod_t m_deg_t over all non-crossing canonical sequences
    alpha of length p, where deg_t counts the positions of value t in
    alpha. Exact rational arithmetic inside, one float conversion out.
    """
    if c <= 0:
        raise ValueError(f"need c > 0, got {c}")
    cfrac = Fraction(c)
    total = Fraction(0)
    for alpha in enumerate_canonical(p):
        if is_crossing(alpha):
            continue
        s = max(alpha)
        prod = Fraction(1)
        for t in range(1, s + 1):
            prod *= Fraction(tau.moment(degree(alpha, t)))
        total += cfrac ** s * prod
    return float(total)


def mp_moment(p: int, c: float) -> float:
    """p-th moment of the Marchenko-Pastur law with ratio parameter c.

    Closed form sum_s c^s N(p, s) over the Narayana numbers; equals
    limiting_moment(p, c, tau = 1) exactly, including as floats.
    """
    if c <= 0:
        raise ValueError(f"need c > 0, got {c}")
    cfrac = Fraction(c)
    total = sum(cfrac ** s * c1_count(s, p) for s in range(1, p + 1))
    return float(total)


def carleman_check(m_moments: Sequence[float], A: float) -> tuple[bool, int | None]:
    """Verify |m_q| <= A^q q^q for q = 1..len(m_moments).

    Returns (True, None) when every provided order passes (vacuously for
    an empty list), else (False, first violating q). The bound guarantees
    moment determinacy of the limit law. Exact comparison, no overflow.
    """
    if A <= 0:
        raise ValueError(f"need A > 0, got {A}")
    a_frac = Fraction(A)
    for q, mq in enumerate(m_moments, start=1):
        if Fraction(abs(mq)) > a_frac ** q * Fraction(q) ** q:
            return False, q
    return True, None


def graph_expectation_weight(i_seq, alpha, rule: MixedMomentRule) -> int:
    """n^p E(i, alpha): the product of mu over glued edge multiplicities.

    Each (alpha-value, i-value) pair contributes mu(up-count, down-count);
    the built-in rules make this 0 or 1. Zero for every rule whenever the
    walk graph is Single (one unmatched first-power factor), and for the
    uniform-phase rule nonzero exactly on Paired graphs.
    """
    g = build_graph(i_seq, alpha)
    w = 1
    for kv in g.edge_keys():
        w *= rule.mu(g.up.get(kv, 0), g.down.get(kv, 0))
        if w == 0:
            return 0
    return w


def inner_factor(alpha, n: int, rule: MixedMomentRule) -> Fraction:
    """The per-leg column sum: sum_r n^(r) sum_{i in C_{r,p}} E(i, alpha).

    Exact rational in n. For the uniform-phase rule and non-crossing
    alpha this collapses to n^(1-s) via the Stirling identity, because
    the paired i with r distinct values number S(p+1-s, r).
    """
    alpha = tuple(alpha)
    p = len(alpha)
    total = Fraction(0)
    for i_seq in enumerate_canonical(p):
        w = graph_expectation_weight(i_seq, alpha, rule)
        if w:
            total += falling_factorial(n, max(i_seq)) * w
    return total / Fraction(n) ** p


def _injection_sum(degrees: Sequence[int], coeffs: Sequence[float]) -> Fraction:
    """Sum over injections phi of prod_t coeffs[phi(t)]^degrees[t].

    Inclusion-exclusion over set partitions of the s degree slots: each
    partition contributes prod_blocks (-1)^(|B|-1) (|B|-1)! times the
    power sum of the block's total degree. Cost is Bell(s) plus one
    power-sum pass per distinct block degree, never m!/(m-s)! work.
    """
    s = len(degrees)
    if s > len(coeffs):
        return Fraction(0)
    power_sums: dict[int, Fraction] = {}

    def pow_sum(d: int) -> Fraction:
        if d not in power_sums:
            power_sums[d] = sum((Fraction(t) ** d for t in coeffs), Fraction(0))
        return power_sums[d]

    total = Fraction(0)
    for pi in enumerate_partitions(s):
        blocks: dict[int, list[int]] = {}
        for pos, lab in enumerate(pi):
            blocks.setdefault(lab, []).append(pos)
        term = Fraction(1)
        for members in blocks.values():
            d = sum(degrees[t] for t in members)
            sign = -1 if len(members) % 2 == 0 else 1
            term *= sign * math.factorial(len(members) - 1) * pow_sum(d)
        total += term
    return total


def exact_mean_trace_moment(
    n: int,
    k: int,
    m: int,
    p: int,
    tau: TauModel,
    rule: MixedMomentRule,
) -> float:
    """Exact normalized expected p-th trace moment at finite (n, k, m).

    Evaluates, over canonical row sequences alpha with s distinct values,
    the injection-weighted tau factor times inner_factor(alpha, n, rule)
    raised to the k-th power, all divided by n^k. Exact up to the final
    float conversion, which makes it the reference oracle for both the
    Monte Carlo sampler and the limiting formula.
    """
    if tau.coefficients is None:
        raise ValueError("exact oracle needs explicit tau coefficients")
    if len(tau.coefficients) != m:
        raise ValueError(f"got {len(tau.coefficients)} coefficients for m={m}")
    assert n >= 1 and k >= 1 and m >= 1
    total = Fraction(0)
    for alpha in enumerate_canonical(p):
        s = max(alpha)
        degrees = [degree(alpha, t) for t in range(1, s + 1)]
        tau_fac = _injection_sum(degrees, tau.coefficients)
        if tau_fac == 0:
            continue
        total += tau_fac * inner_factor(alpha, n, rule) ** k
    return float(total / Fraction(n) ** k)


def moment_table_csv(rows: Iterable[tuple[int, float, float | None]], config_line: str | None = None) -> str:
    """CSV with columns p, theory, exact_or_mc, abs_error.

    ``rows`` yields (p, theory, value) with value None when no comparison
    quantity is available; an optional leading comment line echoes the
    producing configuration.
    """
    lines = []
    if config_line is not None:
        lines.append(f"# {config_line}")
    lines.append("p,theory,exact_or_mc,abs_error")
    for p_, theory, value in rows:
        if value is None:
            lines.append(f"{p_},{theory!r},,")
        else:
            lines.append(f"{p_},{theory!r},{value!r},{abs(theory - value)!r}")
    return "\n".join(lines) + "\n"
