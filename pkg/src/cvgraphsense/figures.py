"""Sweep tables for the scaling and saturation figures.

All tables are plain lists of dicts in a fixed column order, suitable for CSV
or JSON serialization. Scaling sweeps compare the star probe against the
separable (edgeless) probe at equal total photon number, solving the squeeze
parameter separately for each graph at every grid point.
"""

import numpy as np

from .gaussian import graph_state_covariance, squeeze_for_photon_budget
from .graph import empty_graph, star_graph
from .homodyne import optimize_angles
from .qfi import qfi_displacement, qfi_phase_closed_form

FIG2_COLUMNS = ("n", "N_bar", "qfi_star", "qfi_separable", "ratio")
FIG3_COLUMNS = ("n", "r", "qfi", "fi_opt", "alpha", "beta", "ratio")
FIG4_COLUMNS = FIG2_COLUMNS
FIG5_COLUMNS = FIG3_COLUMNS

NBAR_GRID = tuple(np.geomspace(10.0, 1000.0, 16))
DEFAULT_N_MAX = 512
DEFAULT_NTILDE = (1.0, 10.0)


def n_grid(n_max=DEFAULT_N_MAX):
    """Integer log grid 2..n_max used for the mode-count sweeps."""
    if n_max < 2:
        raise ValueError("n_max must be at least 2")
    return np.unique(np.geomspace(2, n_max, 17).round().astype(int))


def _qfi_pair(n, target_n, modality):
    """(star, separable) QFI at mode count n and photon budget target_n."""
    gs = star_graph(n)
    ge = empty_graph(n)
    rows = []
    for g in (gs, ge):
        r = squeeze_for_photon_budget(g, target_n)
        if modality == "phase":
            rows.append(qfi_phase_closed_form(g, r, np.ones(n)))
        else:
            rows.append(qfi_displacement(graph_state_covariance(g, r), np.ones(2 * n)))
    return rows[0], rows[1]


def scaling_rows(modality, n_fixed=10, nbar_grid=NBAR_GRID,
                 ntilde_values=DEFAULT_NTILDE, n_max=DEFAULT_N_MAX):
    """Rows of the star-vs-separable scaling table (fig2/fig4 layout).

    First a photon-number sweep at fixed n, then mode-count sweeps at fixed
    photons per mode. Returns (rows, warnings); grid points whose photon
    budget is unreachable are omitted with a warning rather than aborting.
    """
    rows = []
    warnings = []
    for nbar in nbar_grid:
        try:
            qs, qe = _qfi_pair(n_fixed, float(nbar), modality)
        except ValueError as exc:
            warnings.append(f"omitted N_bar={nbar:g} at n={n_fixed}: {exc}")
            continue
        rows.append({"n": n_fixed, "N_bar": float(nbar), "qfi_star": qs,
                     "qfi_separable": qe, "ratio": qs / qe})
    for ntilde in ntilde_values:
        for n in n_grid(n_max):
            target = float(ntilde) * int(n)
            try:
                qs, qe = _qfi_pair(int(n), target, modality)
            except ValueError as exc:
                warnings.append(f"omitted N_bar={target:g} at n={n}: {exc}")
                continue
            rows.append({"n": int(n), "N_bar": target, "qfi_star": qs,
                         "qfi_separable": qe, "ratio": qs / qe})
    return rows, warnings


def saturation_rows(modality, r_values=(1.0, 3.0), n_values=range(2, 9), phi=0.0):
    """Rows of the homodyne-saturation table (fig3/fig5 layout)."""
    rows = []
    for r in r_values:
        for n in n_values:
            g = star_graph(int(n))
            if modality == "phase":
                f = np.ones(g.n)
                qfi = qfi_phase_closed_form(g, r, f)
            else:
                f = np.ones(2 * g.n)
                qfi = qfi_displacement(graph_state_covariance(g, r), f)
            alpha, beta, fi = optimize_angles(g, r, f, phi, modality)
            rows.append({"n": int(n), "r": float(r), "qfi": qfi, "fi_opt": fi,
                         "alpha": alpha, "beta": beta, "ratio": fi / qfi})
    return rows


def figure_table(name, n_max=DEFAULT_N_MAX, ntilde_max=10.0, phi=0.0):
    """Dispatch a figure name to (columns, rows, warnings)."""
    if name == "fig2":
        rows, warn = scaling_rows("phase", ntilde_values=(1.0, float(ntilde_max)),
                                  n_max=n_max)
        return FIG2_COLUMNS, rows, warn
    if name == "fig4":
        rows, warn = scaling_rows("displacement", ntilde_values=(1.0, float(ntilde_max)),
                                  n_max=n_max)
        return FIG4_COLUMNS, rows, warn
    if name == "fig3":
        return FIG3_COLUMNS, saturation_rows("phase", phi=phi), []
    if name == "fig5":
        return FIG5_COLUMNS, saturation_rows("displacement", phi=phi), []
    raise ValueError(f"unknown figure {name!r}")


def fit_loglog_slope(xs, ys, x_min=None):
    """Least-squares slope of log(y) against log(x), optionally on x >= x_min."""
    xs = np.asarray(xs, dtype=float)
    ys = np.asarray(ys, dtype=float)
    if x_min is not None:
        keep = xs >= x_min
        xs, ys = xs[keep], ys[keep]
    if xs.size < 2:
        raise ValueError("need at least two points to fit a slope")
    return float(np.polyfit(np.log(xs), np.log(ys), 1)[0])
