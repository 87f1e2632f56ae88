"""Independent verification machinery.

Each suite draws randomized cases (plus forced structured graphs) and compares
two routes to the same quantity: closed form vs covariance trace form for the
phase QFI, four-term expansion vs quadratic form for the displacement QFI,
photon-number formula vs covariance trace, and analytic moment derivatives vs
central finite differences. Reports are deterministic given (case_count, seed).
"""

from dataclasses import asdict, dataclass

import numpy as np

from .gaussian import (graph_state_covariance, mean_photon_number,
                       photon_number_from_covariance)
from .graph import (Graph, empty_graph, multipartite_graph, rectangular_graph,
                    star_graph)
from .homodyne import (HomodyneSetting, displacement_measurement_moments,
                       phase_measurement_moments)
from .qfi import (qfi_displacement, qfi_displacement_closed_form,
                  qfi_phase_closed_form, qfi_phase_generic)

PHASE_TOL = 1e-9
DISPLACEMENT_TOL = 1e-9
PHOTON_TOL = 1e-12
DERIVATIVE_TOL = 1e-6  # absolute, finite differences with step 1e-5
FD_STEP = 1e-5


@dataclass(frozen=True)
class EquivalenceReport:
    """Outcome of one randomized equivalence suite."""

    name: str
    case_count: int
    max_rel_error: float
    worst_case: str
    tolerance: float
    passed: bool

    def to_dict(self):
        return asdict(self)


def _report(name, case_count, max_err, worst, tol):
    return EquivalenceReport(name=name, case_count=case_count,
                             max_rel_error=float(max_err), worst_case=worst,
                             tolerance=tol, passed=bool(max_err <= tol))


def rel_error(a, b) -> float:
    """|a - b| over max(|a|, |b|, 1e-30); survives exact zeros."""
    return abs(a - b) / max(abs(a), abs(b), 1e-30)


def central_difference(func, x, h) -> float:
    """(f(x+h) - f(x-h)) / (2h)."""
    if h <= 0:
        raise ValueError("step must be positive")
    return (func(x + h) - func(x - h)) / (2.0 * h)


def _random_graph(rng, n) -> Graph:
    a = np.triu((rng.random((n, n)) < 0.5).astype(np.int64), 1)
    return Graph(n, a + a.T, f"random({n})")


def _case_graphs(case_count, rng):
    """Structured families first (star, multipartite, rectangular, empty),
    then random graphs, n uniform in [1, 8] throughout."""
    graphs = []
    if case_count >= 1:
        graphs.append(star_graph(int(rng.integers(2, 9))))
    if case_count >= 2:
        graphs.append(multipartite_graph(int(rng.integers(2, 4)), int(rng.integers(1, 3))))
    if case_count >= 3:
        graphs.append(rectangular_graph(2))
    if case_count >= 4:
        graphs.append(empty_graph(int(rng.integers(1, 9))))
    while len(graphs) < case_count:
        graphs.append(_random_graph(rng, int(rng.integers(1, 9))))
    return graphs


def _describe(g, r, extra=""):
    return f"{g.label} r={r:.6f}{extra}"


def run_phase_equivalence(case_count, seed) -> EquivalenceReport:
    """Closed-form phase QFI vs the generic covariance trace form."""
    rng = np.random.default_rng(seed)
    worst_err, worst = 0.0, ""
    for g in _case_graphs(case_count, rng):
        r = rng.uniform(0.0, 2.0)
        f = rng.uniform(-2.0, 2.0, g.n)
        a = qfi_phase_closed_form(g, r, f)
        b = qfi_phase_generic(graph_state_covariance(g, r), f)
        err = rel_error(a, b)
        if err > worst_err:
            worst_err, worst = err, _describe(g, r)
    return _report("phase_equivalence", case_count, worst_err, worst, PHASE_TOL)


def run_displacement_equivalence(case_count, seed) -> EquivalenceReport:
    """Four-term displacement closed form vs the quadratic form."""
    rng = np.random.default_rng(seed)
    worst_err, worst = 0.0, ""
    for g in _case_graphs(case_count, rng):
        r = rng.uniform(0.0, 2.0)
        f = rng.uniform(-2.0, 2.0, 2 * g.n)
        a = qfi_displacement_closed_form(g, r, f)
        b = qfi_displacement(graph_state_covariance(g, r), f)
        err = rel_error(a, b)
        if err > worst_err:
            worst_err, worst = err, _describe(g, r)
    return _report("displacement_equivalence", case_count, worst_err, worst,
                   DISPLACEMENT_TOL)


def run_photon_identity(case_count, seed) -> EquivalenceReport:
    """Photon-number formula vs the covariance-trace evaluation."""
    rng = np.random.default_rng(seed)
    worst_err, worst = 0.0, ""
    for g in _case_graphs(case_count, rng):
        r = rng.uniform(0.0, 2.0)
        a = mean_photon_number(g, r)
        b = photon_number_from_covariance(graph_state_covariance(g, r))
        err = rel_error(a, b)
        if err > worst_err:
            worst_err, worst = err, _describe(g, r)
    return _report("photon_identity", case_count, worst_err, worst, PHOTON_TOL)


def run_fi_derivative_check(case_count, seed) -> EquivalenceReport:
    """Analytic moment derivatives vs central finite differences.

    The reported figure is the worst ABSOLUTE deviation across all matrix
    entries, both modalities.
    """
    rng = np.random.default_rng(seed)
    worst_err, worst = 0.0, ""
    for g in _case_graphs(case_count, rng):
        r = rng.uniform(0.0, 2.0)
        phi = rng.uniform(0.0, 2.0 * np.pi)
        theta = HomodyneSetting(rng.uniform(0.0, 2.0 * np.pi, g.n))

        f = rng.uniform(-2.0, 2.0, g.n)
        m = phase_measurement_moments(g, r, f, phi, theta)
        def sigma_at(p, i, j):
            return phase_measurement_moments(g, r, f, p, theta).sigma_m[i, j]
        err = 0.0
        for i in range(g.n):
            for j in range(i, g.n):
                fd = central_difference(lambda p: sigma_at(p, i, j), phi, FD_STEP)
                err = max(err, abs(m.d_sigma[i, j] - fd))
        err = max(err, float(np.max(np.abs(m.d_omega))))  # omega identically 0

        f2 = rng.uniform(-2.0, 2.0, 2 * g.n)
        md = displacement_measurement_moments(g, r, f2, phi, theta)
        def omega_at(p, i):
            return displacement_measurement_moments(g, r, f2, p, theta).omega[i]
        for i in range(g.n):
            fd = central_difference(lambda p: omega_at(p, i), phi, FD_STEP)
            err = max(err, abs(md.d_omega[i] - fd))
        def disp_sigma_at(p, i, j):
            return displacement_measurement_moments(g, r, f2, p, theta).sigma_m[i, j]
        fd = central_difference(lambda p: disp_sigma_at(p, 0, 0), phi, FD_STEP)
        err = max(err, abs(md.d_sigma[0, 0] - fd))  # sigma is phi-independent

        if err > worst_err:
            worst_err, worst = err, _describe(g, r, f" phi={phi:.4f}")
    return _report("fi_derivative_check", case_count, worst_err, worst,
                   DERIVATIVE_TOL)


SUITES = {
    "phase": run_phase_equivalence,
    "displacement": run_displacement_equivalence,
    "photon": run_photon_identity,
    "derivatives": run_fi_derivative_check,
}


def run_all(case_count, seed):
    """All four suites with decorrelated seeds; returns the report list."""
    return [runner(case_count, seed + k) for k, runner in enumerate(SUITES.values())]
