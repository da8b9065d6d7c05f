"""Marchenko-Pastur law: density, CDF, quadrature moments, KS distance.

The law with ratio parameter c > 0 has continuous density
sqrt((b - x)(x - a)) / (2 pi x) on [a, b] with a = (1 - sqrt(c))^2 and
b = (1 + sqrt(c))^2, plus a point mass 1 - c at zero when c < 1. The
inverse-square-root edge singularities are removed by substituting
x = a + (b - a) sin^2(theta), after which every integrand here is smooth
and fixed-order Gauss-Legendre quadrature converges to machine accuracy.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache

import numpy as np
from scipy import integrate

from .errors import NumericalError


@dataclass(frozen=True)
class MPLaw:
    """Ratio parameter plus derived support edges and atom mass."""

    c: float

    def __post_init__(self):
        if self.c <= 0:
            raise ValueError(f"need c > 0, got {self.c}")

    @property
    def a(self) -> float:
        return (1.0 - math.sqrt(self.c)) ** 2

    @property
    def b(self) -> float:
        return (1.0 + math.sqrt(self.c)) ** 2

    @property
    def atom(self) -> float:
        """Mass at zero; the continuous part carries min(1, c)."""
        return max(0.0, 1.0 - self.c)


def density(x: float, c: float) -> float:
    """Continuous density at x; zero outside [a, b].

    The point mass at zero for c < 1 is not part of the density and is
    reported separately (MPLaw.atom), so density(0, c) is 0.
    """
    law = MPLaw(c)
    x = float(x)
    if x <= law.a or x >= law.b:
        return 0.0
    return math.sqrt((law.b - x) * (x - law.a)) / (2.0 * math.pi * x)


@lru_cache(maxsize=None)
def _gl_nodes(order: int) -> tuple[np.ndarray, np.ndarray]:
    nodes, weights = np.polynomial.legendre.leggauss(order)
    return nodes, weights


def _integrand_theta(law: MPLaw, theta: np.ndarray, power: int = 0) -> np.ndarray:
    """x(theta)^power * p(x(theta)) * dx/dtheta, smooth on [0, pi/2]."""
    a, b = law.a, law.b
    if a == 0.0:
        # c = 1: the 1/x pole cancels, leaving (b / pi) cos^2(theta)
        base = (b / math.pi) * np.cos(theta) ** 2
        x = b * np.sin(theta) ** 2
    else:
        x = a + (b - a) * np.sin(theta) ** 2
        base = (b - a) ** 2 * np.sin(2.0 * theta) ** 2 / (4.0 * math.pi * x)
    return base if power == 0 else x ** power * base


def _theta_of_x(law: MPLaw, x: np.ndarray) -> np.ndarray:
    frac = np.clip((x - law.a) / (law.b - law.a), 0.0, 1.0)
    return np.arcsin(np.sqrt(frac))


def _segment_masses(law: MPLaw, t0: np.ndarray, t1: np.ndarray, order: int) -> np.ndarray:
    """Integral of the density over each theta segment [t0_i, t1_i]."""
    nodes, weights = _gl_nodes(order)
    mid = (t0 + t1) / 2.0
    half = (t1 - t0) / 2.0
    theta = mid[:, None] + half[:, None] * nodes[None, :]
    vals = _integrand_theta(law, theta)
    return (vals @ weights) * half


def continuous_cdf_sorted(xs: np.ndarray, c: float, order: int = 96) -> np.ndarray:
    """Continuous-part CDF at an ascending grid, by cumulative quadrature."""
    law = MPLaw(c)
    xs = np.asarray(xs, dtype=float)
    assert np.all(np.diff(xs) >= 0), "grid must be ascending"
    thetas = _theta_of_x(law, xs)
    th = np.concatenate(([0.0], thetas))
    seg = _segment_masses(law, th[:-1], th[1:], order)
    out = np.cumsum(seg)
    # x below the support contributes nothing regardless of rounding
    out[xs <= law.a] = 0.0
    return out


def cdf(x: float, c: float, quad_tol: float = 1e-10) -> float:
    """Distribution function, atom at zero included; adaptive quadrature.

    Right-continuous: cdf(0, c) = 1 - c for c < 1. Raises NumericalError
    when the quadrature cannot certify quad_tol.
    """
    law = MPLaw(c)
    x = float(x)
    if x < 0.0:
        return 0.0
    head = law.atom
    if x <= law.a:
        return head
    theta_hi = float(_theta_of_x(law, np.array([x]))[0])
    val, err = integrate.quad(
        lambda t: float(_integrand_theta(law, np.array([t]))[0]),
        0.0,
        theta_hi,
        epsabs=quad_tol,
        epsrel=quad_tol,
        limit=200,
    )
    if err > 50 * quad_tol:
        raise NumericalError(f"cdf quadrature error {err:.2e} exceeds tolerance")
    return min(1.0, head + val)


def quadrature_moment(p: int, c: float, order: int = 96) -> float:
    """p-th moment of the law by quadrature, atom excluded.

    The atom contributes nothing for p >= 1; p = 0 therefore returns the
    continuous mass min(1, c), a handy normalization self-check.
    """
    assert p >= 0
    law = MPLaw(c)
    nodes, weights = _gl_nodes(order)
    half = math.pi / 4.0
    theta = half + half * nodes
    vals = _integrand_theta(law, theta, power=p)
    return float(vals @ weights * half)


def ks_distance(sample, c: float, order: int = 96) -> float:
    """Kolmogorov-Smirnov distance between a spectrum sample and the law.

    ``sample`` provides nonzero_eigenvalues and zero_multiplicity; the
    zero atom is weighted analytically, never materialized. The supremum
    of |empirical - law| over jump points is exact for a step empirical
    CDF against the continuous-plus-atom law: both one-sided limits are
    checked at every jump.
    """
    lam = np.asarray(sample.nonzero_eigenvalues, dtype=float)
    zero_mult = int(sample.zero_multiplicity)
    total = zero_mult + lam.size
    if total == 0:
        raise ValueError("empty sample")
    law = MPLaw(c)

    pts = np.append(lam, 0.0)
    mass = np.append(np.full(lam.size, 1.0 / total), zero_mult / total)
    idx = np.argsort(pts, kind="stable")
    pts, mass = pts[idx], mass[idx]
    cum_hi = np.cumsum(mass)
    cum_lo = cum_hi - mass

    cont = continuous_cdf_sorted(pts, c, order)
    f_right = cont + law.atom * (pts >= 0.0)
    f_left = cont + law.atom * (pts > 0.0)
    return float(
        max(np.max(np.abs(f_right - cum_hi)), np.max(np.abs(f_left - cum_lo)))
    )


def law_table_csv(c: float, xs, order: int = 96, config_line: str | None = None) -> str:
    """CSV with columns x, pdf, cdf over an ascending grid."""
    law = MPLaw(c)
    xs = np.asarray(sorted(float(v) for v in xs))
    cont = continuous_cdf_sorted(xs, c, order)
    lines = []
    if config_line is not None:
        lines.append(f"# {config_line}")
    lines.append("x,pdf,cdf")
    for x, fc in zip(xs, cont):
        f = fc + law.atom * (x >= 0.0)
        lines.append(f"{float(x)!r},{density(x, c)!r},{float(min(1.0, f))!r}")
    return "\n".join(lines) + "\n"
