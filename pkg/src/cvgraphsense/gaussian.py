"""Covariance matrices of CV graph states and their photon budget.

Quadratures are kept in block order (q_1..q_n, p_1..p_n) throughout, with the
vacuum normalized to cov = I/2. A graph state with uniform squeezing r on every
mode has

    cov = 1/2 [[U^-1,      U^-1 V          ],
               [V U^-1,    U + V U^-1 V    ]],   U = e^{-2r} I,  V = A,

so the q block is (e^{2r}/2) I, the q-p block (e^{2r}/2) A, and the state is
pure: det(2 cov) = 1.
"""

from dataclasses import dataclass

import numpy as np
from scipy.optimize import brentq

from .graph import Graph, trace_power

# e^{4r} reaches ~2.4e17 at r = 10, the edge of double-precision safety for
# the trace-formula cross-checks; larger |r| is rejected.
R_CAP = 10.0


@dataclass(frozen=True)
class GaussianState:
    """Zero-mean Gaussian state: mode count, mean vector, covariance, squeeze."""

    n: int
    mean: np.ndarray
    cov: np.ndarray
    r: float


def graph_state_covariance(g: Graph, r) -> GaussianState:
    """Covariance matrix of the graph state built on g with squeezing r."""
    r = float(r)
    if not np.isfinite(r) or abs(r) > R_CAP:
        raise ValueError(f"squeeze parameter must satisfy |r| <= {R_CAP}")
    n = g.n
    x = np.exp(2.0 * r)
    a = g.adjacency.astype(float)
    qq = 0.5 * x * np.eye(n)
    qp = 0.5 * x * a
    pp = 0.5 * (np.exp(-2.0 * r) * np.eye(n) + x * (a @ a))
    cov = np.block([[qq, qp], [qp, pp]])
    return GaussianState(n=n, mean=np.zeros(2 * n), cov=cov, r=r)


def mean_photon_number(g: Graph, r) -> float:
    """Total mean photon number: n sinh^2 r + (e^{2r}/4) Tr(A^2)."""
    r = float(r)
    return g.n * np.sinh(r) ** 2 + 0.25 * np.exp(2.0 * r) * trace_power(g, 2)


def photon_number_from_covariance(state: GaussianState) -> float:
    """Photon number via the covariance trace: Tr(cov)/2 - n/2.

    Independent of how the state was built; agrees with mean_photon_number
    for graph states to ~1e-12 relative.
    """
    return 0.5 * float(np.trace(state.cov)) - 0.5 * state.n


def squeeze_for_photon_budget(g: Graph, target_n) -> float:
    """Invert the photon budget: find r >= 0 with mean photon number target_n.

    The photon number is strictly increasing in r >= 0, so bisection on
    [0, R_CAP] suffices. Targets outside the reachable range raise with the
    range in the message.
    """
    target_n = float(target_n)
    if target_n <= 0:
        raise ValueError("target photon number must be positive")
    lo = mean_photon_number(g, 0.0)
    hi = mean_photon_number(g, R_CAP)
    tol = 1e-10 * target_n
    if target_n < lo - tol:
        raise ValueError(
            f"target photon number {target_n:g} unreachable for {g.label}: "
            f"reachable range is [{lo:.6g}, {hi:.6g}]"
        )
    if target_n > hi + tol:
        raise ValueError(
            f"target photon number {target_n:g} unreachable for {g.label}: "
            f"maximum reachable is {hi:.6g} at r = {R_CAP:g}"
        )
    if abs(target_n - lo) <= tol:
        return 0.0
    if abs(target_n - hi) <= tol:
        return R_CAP
    r = brentq(lambda rr: mean_photon_number(g, rr) - target_n, 0.0, R_CAP,
               xtol=1e-15, rtol=8.9e-16, maxiter=200)
    if abs(mean_photon_number(g, r) - target_n) > tol:
        raise RuntimeError("photon-budget bisection failed to converge")
    return float(r)
