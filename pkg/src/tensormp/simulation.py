"""Monte Carlo realization of the random tensor covariance model.

A configuration (n, k, m) describes the matrix sum of m rank-one terms
tau_alpha Y_alpha Y_alpha^*, where each Y_alpha is the k-fold tensor
product of independent length-n vectors with i.i.d. unit-modulus entries
scaled by n^(-1/2). The ambient dimension n^k is never materialized:
inner products factor across tensor legs, so everything runs on the
m x m Gram matrix. Nonzero eigenvalues of the model equal those of
D_tau^(1/2) G D_tau^(1/2), and the zero eigenvalue keeps multiplicity
n^k - rank as an exact integer.

Reproducibility: random streams come from numpy's counter-based Philox
generator keyed by SeedSequence((seed, trial)), so any trial can be
regenerated independently of the others and results do not depend on
thread scheduling.
"""

from __future__ import annotations

import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field

import numpy as np

from . import mplaw
from .errors import NumericalError
from .moments import (
    MixedMomentRule,
    rademacher_rule,
    roots_of_unity_rule,
    uniform_phase_rule,
)

_IMAG_TOL = 1e-8


@dataclass(frozen=True)
class EntryDistribution:
    """Unit-modulus entry law: uniform phase, Rademacher, or q-th roots."""

    kind: str  # "phase" | "rademacher" | "roots"
    q: int | None = None

    def __post_init__(self):
        if self.kind not in ("phase", "rademacher", "roots"):
            raise ValueError(f"unknown entry distribution {self.kind!r}")
        if self.kind == "roots":
            if self.q is None or self.q < 2:
                raise ValueError("roots distribution needs q >= 2")
        elif self.q is not None:
            raise ValueError(f"{self.kind} takes no q parameter")

    @classmethod
    def parse(cls, spec: str) -> "EntryDistribution":
        """Parse 'phase', 'rademacher', or 'roots:q'."""
        if spec == "phase":
            return cls("phase")
        if spec == "rademacher":
            return cls("rademacher")
        if spec.startswith("roots:"):
            return cls("roots", int(spec.split(":", 1)[1]))
        raise ValueError(f"unknown entry distribution {spec!r}")

    @property
    def label(self) -> str:
        return f"roots:{self.q}" if self.kind == "roots" else self.kind

    def sample(self, rng: np.random.Generator, shape) -> np.ndarray:
        """I.i.d. entries of modulus exactly 1, complex dtype."""
        if self.kind == "phase":
            return np.exp(2j * np.pi * rng.random(shape))
        if self.kind == "rademacher":
            return (rng.integers(0, 2, shape) * 2.0 - 1.0).astype(np.complex128)
        return np.exp(2j * np.pi * rng.integers(0, self.q, shape) / self.q)

    def mixed_moment_rule(self) -> MixedMomentRule:
        """The matching exact mixed-moment rule for the moment oracle."""
        if self.kind == "phase":
            return uniform_phase_rule()
        if self.kind == "rademacher":
            return rademacher_rule()
        return roots_of_unity_rule(self.q)


PHASE = EntryDistribution("phase")
RADEMACHER = EntryDistribution("rademacher")


def trial_rng(seed: int, trial: int = 0) -> np.random.Generator:
    """The pinned per-trial generator: Philox keyed by (seed, trial)."""
    return np.random.Generator(np.random.Philox(np.random.SeedSequence((seed, trial))))


def sample_base_vectors(
    n: int, k: int, m: int, dist: EntryDistribution, seed: int, trial: int = 0
) -> np.ndarray:
    """(m, k, n) array of base vectors, each entry of modulus n^(-1/2)."""
    assert n >= 1 and k >= 1 and m >= 1
    rng = trial_rng(seed, trial)
    return dist.sample(rng, (m, k, n)) / math.sqrt(n)


def gram_matrix(vecs: np.ndarray) -> np.ndarray:
    """m x m Gram matrix of the tensor-product vectors.

    Inner products factor leg by leg, so the cost is O(m^2 k n) and the
    n^k-dimensional vectors are never formed. The diagonal is 1 up to
    rounding and G is conjugate-symmetric by construction.
    """
    m, k, _ = vecs.shape
    G = np.ones((m, m), dtype=np.complex128)
    for l in range(k):
        V = vecs[:, l, :]
        G *= V @ V.conj().T
    return G


def trace_moments(G: np.ndarray, tau, P: int, nk_scale: int) -> list[float]:
    """Normalized traces (1/n^k) Tr M^p for p = 1..P via the m x m reduction.

    Tr M^p equals Tr (D_tau G)^p. Powers are built up to ceil(P/2) and
    combined pairwise with Tr(XY) = sum(X * Y^T), halving the matrix
    multiplications. The model is Hermitian, so every trace must be real;
    an imaginary residue beyond tolerance raises NumericalError.
    """
    assert P >= 1
    tau = np.asarray(tau, dtype=float)
    if tau.shape != (G.shape[0],):
        raise ValueError(f"tau length {tau.shape} does not match m={G.shape[0]}")
    B = tau[:, None] * G
    half = (P + 1) // 2
    powers = [B]
    for _ in range(2, half + 1):
        powers.append(powers[-1] @ B)
    out = []
    for p in range(1, P + 1):
        if p == 1:
            tr = B.trace()
        else:
            lo = p // 2
            tr = np.sum(powers[lo - 1] * powers[p - lo - 1].T)
        if abs(tr.imag) > _IMAG_TOL * max(1.0, abs(tr.real)):
            raise NumericalError(f"Tr M^{p} has imaginary residue {tr.imag:.3e}")
        out.append(float(tr.real) / float(nk_scale))
    return out


def hermitian_eigenvalues(H: np.ndarray, tol: float = 1e-9) -> np.ndarray:
    """Ascending eigenvalues of a Hermitian matrix.

    Verifies Hermiticity to tol first; the backward-stable solver then
    guarantees residuals at the epsilon * norm level for each eigenpair.
    """
    H = np.asarray(H)
    scale = max(1.0, float(np.linalg.norm(H)))
    if float(np.linalg.norm(H - H.conj().T)) > tol * scale:
        raise NumericalError("matrix is not Hermitian within tolerance")
    return np.linalg.eigvalsh(H)


@dataclass
class SpectrumSample:
    """Full spectrum of one realization, zero atom held analytically."""

    nonzero_eigenvalues: np.ndarray
    zero_multiplicity: int
    trace_moments: list[float] = field(default_factory=list)
    seed: int | None = None
    dims: tuple[int, int, int] | None = None  # (n, k, m)

    @property
    def total_dimension(self) -> int:
        return self.zero_multiplicity + len(self.nonzero_eigenvalues)


def esd(
    G: np.ndarray,
    tau,
    nk_scale: int,
    *,
    P: int = 0,
    zero_tol: float = 1e-10,
    seed: int | None = None,
    dims: tuple[int, int, int] | None = None,
) -> SpectrumSample:
    """Empirical spectral distribution of one realization.

    For tau >= 0 the nonzero spectrum comes from the Hermitian m x m
    matrix D^(1/2) G D^(1/2); mixed signs fall back to the general
    eigenproblem on D G with an imaginary-part check. Eigenvalues within
    zero_tol * max|eigenvalue| fold into the zero atom, whose multiplicity
    is the exact integer nk_scale - (number of nonzero eigenvalues).
    """
    tau = np.asarray(tau, dtype=float)
    m = G.shape[0]
    if tau.shape != (m,):
        raise ValueError(f"tau length {tau.shape} does not match m={m}")
    if np.all(tau >= 0):
        root = np.sqrt(tau)
        lam = hermitian_eigenvalues(root[:, None] * G * root[None, :])
    else:
        w = np.linalg.eigvals(tau[:, None] * G)
        scale = max(1.0, float(np.max(np.abs(w))))
        if float(np.max(np.abs(w.imag))) > _IMAG_TOL * scale:
            raise NumericalError("general eigenproblem returned complex eigenvalues")
        lam = np.sort(w.real)
    peak = float(np.max(np.abs(lam))) if lam.size else 0.0
    nonzero = lam[np.abs(lam) > zero_tol * peak] if peak > 0 else lam[:0]
    # trace identity: eigenvalue sum must match sum tau_a * G[a, a]
    t_eig = float(lam.sum())
    t_gram = float((tau * np.diag(G).real).sum())
    if abs(t_eig - t_gram) > 1e-8 * max(1.0, abs(t_gram)):
        raise NumericalError(
            f"trace mismatch: eigenvalue sum {t_eig!r} vs Gram trace {t_gram!r}"
        )
    moments = trace_moments(G, tau, P, nk_scale) if P else []
    return SpectrumSample(
        nonzero_eigenvalues=np.asarray(nonzero, dtype=float),
        zero_multiplicity=int(nk_scale) - int(nonzero.size),
        trace_moments=moments,
        seed=seed,
        dims=dims,
    )


@dataclass
class TrialOutcome:
    trial: int
    sample: SpectrumSample
    ks: float | None


@dataclass
class SimulationReport:
    """Aggregate of independent trials plus the verbatim configuration."""

    config: dict
    outcomes: list[TrialOutcome]
    moment_means: list[float]
    moment_ses: list[float]
    ks_values: list[float] | None

    @property
    def trial_moments(self) -> np.ndarray:
        return np.array([o.sample.trace_moments for o in self.outcomes])

    @property
    def mean_ks(self) -> float | None:
        return float(np.mean(self.ks_values)) if self.ks_values else None

    def to_json_dict(self) -> dict:
        """Deterministic JSON payload (no wall-clock fields)."""
        per_p = [
            {"p": p + 1, "mean": self.moment_means[p], "se": self.moment_ses[p]}
            for p in range(len(self.moment_means))
        ]
        out = {"config": self.config, "moments": per_p}
        if self.ks_values is not None:
            out["ks"] = {"per_trial": self.ks_values, "mean": self.mean_ks}
        return out


def estimate_gram_bytes(m: int) -> int:
    """Peak complex working-set estimate for one trial at size m."""
    return 16 * m * m * 4  # G, weighted copy, one stored power, solver workspace


def run_trials(
    n: int,
    k: int,
    m: int,
    dist: EntryDistribution,
    tau_coeffs,
    P: int,
    trials: int,
    seed: int,
    *,
    c: float | None = None,
    threads: int = 1,
    compute_ks: bool = True,
    zero_tol: float = 1e-10,
) -> SimulationReport:
    """Independent trials of the full pipeline, deterministically seeded.

    Trial t draws from the (seed, t) stream, so the set of results is a
    pure function of the configuration regardless of thread count; the
    reduction walks trials in index order.
    """
    assert trials >= 1
    nk = n ** k
    tau_coeffs = np.asarray(tau_coeffs, dtype=float)
    c_ref = c if c is not None else m / nk

    def one(t: int) -> TrialOutcome:
        vecs = sample_base_vectors(n, k, m, dist, seed, trial=t)
        G = gram_matrix(vecs)
        sample = esd(G, tau_coeffs, nk, P=P, zero_tol=zero_tol, seed=seed, dims=(n, k, m))
        ks = mplaw.ks_distance(sample, c_ref) if compute_ks else None
        return TrialOutcome(t, sample, ks)

    if threads > 1:
        with ThreadPoolExecutor(max_workers=threads) as pool:
            outcomes = list(pool.map(one, range(trials)))
    else:
        outcomes = [one(t) for t in range(trials)]

    mat = np.array([o.sample.trace_moments for o in outcomes])  # trials x P
    means = [float(v) for v in mat.mean(axis=0)]
    if trials > 1:
        ses = [float(v) for v in mat.std(axis=0, ddof=1) / math.sqrt(trials)]
    else:
        ses = [0.0] * P
    ks_values = [o.ks for o in outcomes] if compute_ks else None
    config = {
        "n": n,
        "k": k,
        "m": m,
        "c": c_ref,
        "dist": dist.label,
        "tau": [float(t) for t in tau_coeffs],
        "p_max": P,
        "trials": trials,
        "seed": seed,
        "zero_tol": zero_tol,
    }
    return SimulationReport(config, outcomes, means, ses, ks_values)


def histogram_rows(
    samples, bins: int = 60, value_range: tuple[float, float] | None = None
) -> list[tuple[float, float, float]]:
    """Pooled ESD histogram rows (bin_left, bin_right, mass).

    The first row is the zero atom with bin_left = bin_right = 0; its
    mass is exact, computed from integer multiplicities without ever
    materializing the n^k-dimensional spectrum. Continuous rows cover the
    pooled nonzero eigenvalues; all masses sum to 1.
    """
    samples = list(samples)
    total = sum(s.total_dimension for s in samples)
    zeros = sum(s.zero_multiplicity for s in samples)
    pooled = np.concatenate([np.asarray(s.nonzero_eigenvalues, float) for s in samples])
    rows = [(0.0, 0.0, zeros / total)]
    if pooled.size:
        counts, edges = np.histogram(pooled, bins=bins, range=value_range)
        rows.extend(
            (float(edges[i]), float(edges[i + 1]), int(counts[i]) / total)
            for i in range(len(counts))
        )
    return rows


def dense_matrix(vecs: np.ndarray, tau) -> np.ndarray:
    """The full n^k x n^k matrix, for tiny cross-checks only.

    Materializes sum_a tau_a Y_a Y_a^* by explicit tensor products; meant
    for n^k small enough to eyeball (the tests cap it at 64).
    """
    m, k, n = vecs.shape
    nk = n ** k
    M = np.zeros((nk, nk), dtype=np.complex128)
    for a in range(m):
        Y = vecs[a, 0]
        for l in range(1, k):
            Y = np.kron(Y, vecs[a, l])
        M += tau[a] * np.outer(Y, Y.conj())
    return M
