"""Classical Fisher information of per-mode homodyne detection.

Measuring quadrature m_j = sin(theta_j) q_j + cos(theta_j) p_j on every mode
of a graph state yields jointly Gaussian outcomes; the Fisher information
about the sensing parameter follows from the outcome mean omega and
covariance sigma_M,

    I = Tr[(d sigma_M sigma_M^-1)^2] / 2 + d omega^T sigma_M^-1 d omega.

For phase sensing omega vanishes identically and sigma_M carries all the
information; for displacement sensing sigma_M is parameter-independent and
the mean carries it all. The local-oscillator angles are optimized under the
star-graph ansatz theta = (alpha, beta, beta, ...).
"""

from dataclasses import dataclass

import numpy as np
from scipy.linalg import LinAlgError, cho_factor, cho_solve
from scipy.optimize import minimize

from .gaussian import R_CAP, graph_state_covariance
from .graph import Graph
from .qfi import qfi_displacement, qfi_phase_closed_form

TWO_PI = 2.0 * np.pi


@dataclass(frozen=True)
class HomodyneSetting:
    """Local-oscillator phases, one per mode, reduced to [0, 2*pi)."""

    theta: np.ndarray

    def __post_init__(self):
        t = np.mod(np.asarray(self.theta, dtype=float), TWO_PI)
        if t.ndim != 1:
            raise ValueError("theta must be a vector")
        object.__setattr__(self, "theta", t)


@dataclass(frozen=True)
class MeasurementMoments:
    """Outcome mean/covariance and their parameter derivatives."""

    omega: np.ndarray
    sigma_m: np.ndarray
    d_omega: np.ndarray
    d_sigma: np.ndarray


def diag_trig_matrices(f, phi, theta):
    """Diagonal matrices (G1, F1, G2, F2) with cos/sin of f*phi and theta."""
    f = np.asarray(f, dtype=float)
    theta = np.asarray(theta, dtype=float)
    if f.shape != theta.shape:
        raise ValueError("f and theta must have matching length")
    g1 = np.diag(np.cos(f * phi))
    f1 = np.diag(np.sin(f * phi))
    g2 = np.diag(np.cos(theta))
    f2 = np.diag(np.sin(theta))
    return g1, f1, g2, f2


def _check_r(r):
    r = float(r)
    if not np.isfinite(r) or abs(r) > R_CAP:
        raise ValueError(f"squeeze parameter must satisfy |r| <= {R_CAP}")
    return r


def phase_measurement_moments(g: Graph, r, f, phi, setting: HomodyneSetting) -> MeasurementMoments:
    """Moments of homodyne outcomes under phase sensing.

    With P = F2 G1 - G2 F1 and Q = G1 G2 + F1 F2,

        sigma_M = [P U^-1 P + Q V U^-1 P + P U^-1 V Q + Q (U + V U^-1 V) Q] / 2

    and omega = 0. The derivative d sigma_M / d phi is assembled analytically
    through the product rule, using dG1 = -D F1 and dF1 = D G1 with
    D = diag(f).
    """
    r = _check_r(r)
    n = g.n
    f = np.asarray(f, dtype=float)
    if f.shape != (n,):
        raise ValueError(f"f must have length {n}")
    theta = np.asarray(setting.theta, dtype=float)
    if theta.shape != (n,):
        raise ValueError(f"theta must have length {n}")

    g1, f1, g2, f2 = diag_trig_matrices(f, phi, theta)
    d = np.diag(f)
    x = np.exp(2.0 * r)
    u = np.exp(-2.0 * r) * np.eye(n)
    u_inv = x * np.eye(n)
    v = g.adjacency.astype(float)
    w = u + v @ u_inv @ v

    p = f2 @ g1 - g2 @ f1
    q = g1 @ g2 + f1 @ f2
    dp = f2 @ (-d @ f1) - g2 @ (d @ g1)
    dq = (-d @ f1) @ g2 + (d @ g1) @ f2

    sigma = 0.5 * (p @ u_inv @ p + q @ v @ u_inv @ p
                   + p @ u_inv @ v @ q + q @ w @ q)
    d_sigma = 0.5 * (dp @ u_inv @ p + p @ u_inv @ dp
                     + dq @ v @ u_inv @ p + q @ v @ u_inv @ dp
                     + dp @ u_inv @ v @ q + p @ u_inv @ v @ dq
                     + dq @ w @ q + q @ w @ dq)
    return MeasurementMoments(omega=np.zeros(n), sigma_m=sigma,
                              d_omega=np.zeros(n), d_sigma=d_sigma)


def displacement_measurement_moments(g: Graph, r, f, phi, setting: HomodyneSetting) -> MeasurementMoments:
    """Moments of homodyne outcomes under displacement sensing.

    omega_i = phi (sin(theta_i) f_{n+i} - cos(theta_i) f_i); sigma_M is the
    phi-independent covariance of the measured quadratures, so d_sigma = 0.
    """
    r = _check_r(r)
    n = g.n
    f = np.asarray(f, dtype=float)
    if f.shape != (2 * n,):
        raise ValueError(f"f must have length {2 * n}")
    theta = np.asarray(setting.theta, dtype=float)
    if theta.shape != (n,):
        raise ValueError(f"theta must have length {n}")

    s = np.sin(theta)
    c = np.cos(theta)
    x = np.exp(2.0 * r)
    v = g.adjacency.astype(float)
    v2 = v @ v

    sigma = 0.5 * (x * (np.outer(c, s) * v + np.outer(s, c) * v)
                   + x * np.outer(c, c) * v2)
    sigma[np.arange(n), np.arange(n)] += 0.5 * (x * s**2 + c**2 / x)

    d_omega = s * f[n:] - c * f[:n]
    omega = float(phi) * d_omega
    return MeasurementMoments(omega=omega, sigma_m=sigma,
                              d_omega=d_omega, d_sigma=np.zeros((n, n)))


def gaussian_fisher_information(m: MeasurementMoments) -> float:
    """Fisher information of a Gaussian outcome model from its moments."""
    try:
        c = cho_factor(m.sigma_m, lower=True, check_finite=False)
    except LinAlgError as exc:
        raise ValueError("sigma_M is not positive definite; perturb the angles") from exc
    term1 = 0.0
    if np.any(m.d_sigma):
        y = cho_solve(c, m.d_sigma, check_finite=False)
        term1 = 0.5 * float(np.einsum("ij,ji->", y, y))
    term2 = 0.0
    if np.any(m.d_omega):
        term2 = float(m.d_omega @ cho_solve(c, m.d_omega, check_finite=False))
    return term1 + term2


def _require_star(g: Graph):
    a = g.adjacency
    if g.n == 1 and a[0, 0] == 0:
        return  # single mode: trivially a star with no leaves
    hub_ok = np.all(a[0, 1:] == 1) and np.all(a[1:, 0] == 1)
    leaves_ok = not np.any(a[1:, 1:])
    if not (hub_ok and leaves_ok):
        raise ValueError("angle ansatz requires a star graph with hub at vertex 1")


def _expand_ansatz(n, alpha, beta):
    theta = np.full(n, float(beta))
    theta[0] = float(alpha)
    return HomodyneSetting(theta)


def fi_star_ansatz(g: Graph, r, f, phi, alpha, beta, modality) -> float:
    """FI of the two-angle star setting: alpha on the hub, beta on the leaves."""
    _require_star(g)
    setting = _expand_ansatz(g.n, alpha, beta)
    if modality == "phase":
        m = phase_measurement_moments(g, r, f, phi, setting)
    elif modality == "displacement":
        m = displacement_measurement_moments(g, r, f, phi, setting)
    else:
        raise ValueError(f"unknown modality {modality!r}")
    return gaussian_fisher_information(m)


def _ansatz_batch_values(g: Graph, r, f, phi, modality, alphas, betas):
    """FI of the two-angle ansatz at paired (alpha, beta) points, batched."""
    n = g.n
    x = np.exp(2.0 * r)
    v = g.adjacency.astype(float)
    v2 = v @ v
    f = np.asarray(f, dtype=float)
    alphas = np.asarray(alphas, dtype=float)
    betas = np.asarray(betas, dtype=float)

    theta = np.zeros((alphas.size, n))
    theta[:, 0] = alphas
    if n > 1:
        theta[:, 1:] = betas[:, None]

    if modality == "phase":
        psi = theta - f * float(phi)
        p = np.sin(psi)
        q = np.cos(psi)
        dp = -f * q
        dq = f * p
    else:
        p = np.sin(theta)
        q = np.cos(theta)

    sig = 0.5 * x * (q[:, :, None] * v * p[:, None, :]
                     + p[:, :, None] * v * q[:, None, :]
                     + q[:, :, None] * v2 * q[:, None, :])
    idx = np.arange(n)
    sig[:, idx, idx] += 0.5 * (x * p**2 + q**2 / x)

    if modality == "phase":
        dsig = 0.5 * x * (dq[:, :, None] * v * p[:, None, :]
                          + q[:, :, None] * v * dp[:, None, :]
                          + dp[:, :, None] * v * q[:, None, :]
                          + p[:, :, None] * v * dq[:, None, :]
                          + dq[:, :, None] * v2 * q[:, None, :]
                          + q[:, :, None] * v2 * dq[:, None, :])
        dsig[:, idx, idx] += 0.5 * (2.0 * x * p * dp + 2.0 * q * dq / x)
        y = np.linalg.solve(sig, dsig)
        return 0.5 * np.einsum("kij,kji->k", y, y)

    d_omega = p * f[n:] - q * f[:n]
    w = np.linalg.solve(sig, d_omega[..., None])[..., 0]
    return np.einsum("ki,ki->k", d_omega, w)


def optimize_angles(g: Graph, r, f, phi, modality):
    """Maximize the two-angle star FI; returns (alpha, beta, fi_value).

    Deterministic: a 64x64 grid over [0, 2*pi)^2 locates the broad basins,
    augmented by a fixed set of squeezing-aware starts near the quadrature
    axes. The extra starts matter at large r, where the global optimum sits
    on a ridge of width ~e^{-2r} that the coarse grid cannot resolve. All
    candidates are ranked by their FI value; simplex refinement runs coarsely
    from the leaders and once more, tightly, from the winner.
    """
    _require_star(g)
    r = _check_r(r)
    f = np.asarray(f, dtype=float)

    grid = np.linspace(0.0, TWO_PI, 64, endpoint=False)
    aa, bb = np.meshgrid(grid, grid, indexing="ij")
    vals = _ansatz_batch_values(g, r, f, phi, modality,
                                aa.ravel(), bb.ravel()).reshape(64, 64)

    cand = []
    taken = []
    order = np.argsort(vals, axis=None)[::-1]
    for k in order:
        i, j = divmod(int(k), grid.size)
        if any(min(abs(i - ti), grid.size - abs(i - ti)) <= 2
               and min(abs(j - tj), grid.size - abs(j - tj)) <= 2
               for ti, tj in taken):
            continue
        taken.append((i, j))
        cand.append((float(vals[i, j]), grid[i], grid[j]))
        if len(cand) >= 6:
            break

    # quadrature-axis starts, offset by the squeezing scale; under phase
    # sensing the landscape is a rigid shift by f*phi of the phi=0 landscape
    eps = np.exp(-2.0 * abs(r))
    if modality == "phase":
        shift_a = float(f[0]) * float(phi)
        shift_b = float(np.mean(f[1:])) * float(phi) if g.n > 1 else shift_a
    else:
        shift_a = shift_b = 0.0
    extra = [(a0 + shift_a + da, b0 + shift_b + db)
             for a0 in (0.0, 0.5 * np.pi)
             for b0 in (0.0, 0.5 * np.pi)
             for da in (-eps, 0.0, eps)
             for db in (-eps, 0.0, eps)]
    ea = np.array([s[0] for s in extra])
    eb = np.array([s[1] for s in extra])
    evals = _ansatz_batch_values(g, r, f, phi, modality, ea, eb)
    cand.extend(zip(evals.tolist(), ea.tolist(), eb.tolist()))

    # keep the most promising torus-separated candidates
    cand.sort(key=lambda t: t[0], reverse=True)
    starts = []
    for val, a, b in cand:
        da = np.mod(np.asarray([a - s[0] for s in starts]), TWO_PI)
        db = np.mod(np.asarray([b - s[1] for s in starts]), TWO_PI)
        da = np.minimum(da, TWO_PI - da)
        db = np.minimum(db, TWO_PI - db)
        if starts and np.any((da < 0.02) & (db < 0.02)):
            continue
        starts.append((a, b))
        if len(starts) >= 8:
            break

    def neg(ab):
        return -fi_star_ansatz(g, r, f, phi, ab[0], ab[1], modality)

    best_val = -np.inf
    best_ab = None
    for s in starts:
        res = minimize(neg, np.asarray(s, dtype=float), method="Nelder-Mead",
                       options={"xatol": 1e-7, "fatol": 1e-10, "maxiter": 600})
        if -res.fun > best_val:
            best_val = -res.fun
            best_ab = res.x
    res = minimize(neg, best_ab, method="Nelder-Mead",
                   options={"xatol": 1e-11, "fatol": 1e-13, "maxiter": 4000})
    if -res.fun > best_val:
        best_val = -res.fun
        best_ab = res.x
    alpha, beta = np.mod(best_ab, TWO_PI)
    return float(alpha), float(beta), float(best_val)


def fi_monte_carlo(m: MeasurementMoments, sample_count, seed):
    """Empirical FI from simulated homodyne records.

    Draws outcomes from N(omega, sigma_M), evaluates the analytic score
    d/dphi log p on each sample, and returns (mean of score^2, standard
    error). Consistent for the Fisher information of the model.
    """
    sample_count = int(sample_count)
    if sample_count < 10_000:
        raise ValueError("sample_count must be at least 10000")
    try:
        c = cho_factor(m.sigma_m, lower=True, check_finite=False)
    except LinAlgError as exc:
        raise ValueError("sigma_M is not positive definite") from exc

    rng = np.random.default_rng(seed)
    xs = rng.multivariate_normal(m.omega, m.sigma_m, size=sample_count,
                                 method="cholesky")
    z = cho_solve(c, (xs - m.omega).T, check_finite=False).T

    scores = np.zeros(sample_count)
    if np.any(m.d_omega):
        scores += z @ m.d_omega
    if np.any(m.d_sigma):
        scores += 0.5 * np.einsum("ni,ij,nj->n", z, m.d_sigma, z)
        scores -= 0.5 * float(np.trace(cho_solve(c, m.d_sigma, check_finite=False)))

    sq = scores**2
    estimate = float(np.mean(sq))
    std_error = float(np.std(sq, ddof=1) / np.sqrt(sample_count))
    return estimate, std_error


def qfi_reference(g: Graph, r, f, modality) -> float:
    """QFI matching a homodyne configuration, for saturation ratios."""
    if modality == "phase":
        return qfi_phase_closed_form(g, r, f)
    if modality == "displacement":
        return qfi_displacement(graph_state_covariance(g, r), f)
    raise ValueError(f"unknown modality {modality!r}")
