"""Nonrelativistic limits, the dual time-Hamiltonian picture, and
self-adjointness diagnostics.

The arrival operator T = -(alpha_1 x + beta tau) stands to t^2 = x^2 + tau^2
exactly as the Hamiltonian H = alpha_1 p + beta m stands to E^2 = p^2 + m^2.
``dual_solution`` realizes the event-state side of that correspondence:
functions of (E, p) treated as independent variables that satisfy
-i d/dE phi = T phi with T acting as multiplication by t = b sqrt(x^2 + tau^2).

``deficiency_diagnostic`` solves -i dphi/dE = +-i phi on the two spectral
branches (-inf, -m) and (m, +inf): each sign has a normalizable solution on
exactly one branch, so the deficiency indices come out equal, (1, 1), and
self-adjoint extensions exist.  Whether the extension is unique is left
undetermined.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .algebra import (
    energy_spinor_values,
    event_spinor_values,
    nr_limit_spinor,
    u_spinor_values,
    w_spinor_values,
)
from .grids import _gauss_legendre_panels

__all__ = [
    "LimitReport",
    "DualSolution",
    "nr_spinor_errors",
    "nr_spinor_limit_scan",
    "nr_eigen_limit_check",
    "nr_eigenfunction_limit",
    "nr_eigenfunction_limit_scan",
    "dual_solution",
    "dual_residual",
    "duality_map_max_residual",
    "DeficiencyReport",
    "deficiency_diagnostic",
]

_SQRT2PI = np.sqrt(2.0 * np.pi)


@dataclass(frozen=True)
class LimitReport:
    """Error-vs-ratio table with the fitted convergence order."""

    ratios: np.ndarray
    errors: np.ndarray
    fitted_order: float


def _fit_order(ratios, errors) -> float:
    return float(np.polyfit(np.log(ratios), np.log(errors), 1)[0])


def nr_spinor_errors(r: float, m: float = 1.0):
    """(||u - zeta_+||, ||w - zeta_-||) at p = r * m; leading order r/2."""
    if r <= 0.0:
        raise ValueError("ratio must be > 0")
    p = r * m
    u_err = np.linalg.norm(u_spinor_values(m, np.array([p]), 0.5)[0] - nr_limit_spinor(1, 0.5))
    w_err = np.linalg.norm(w_spinor_values(m, np.array([p]), 0.5)[0] - nr_limit_spinor(-1, 0.5))
    return float(u_err), float(w_err)


def nr_spinor_limit_scan(ratios) -> tuple:
    """(LimitReport for u, LimitReport for w) over a ratio lattice."""
    ratios = np.asarray(ratios, dtype=float)
    errs = np.array([nr_spinor_errors(r) for r in ratios])
    return (
        LimitReport(ratios, errs[:, 0], _fit_order(ratios, errs[:, 0])),
        LimitReport(ratios, errs[:, 1], _fit_order(ratios, errs[:, 1])),
    )


def nr_eigen_limit_check(x: float, p: float, m: float):
    """(t_rel, t_non, gap) with t_rel = -x E_p / p and t_non = -x m / p.

    The relative gap satisfies gap/|t_non| = E_p/m - 1 identically.
    """
    if p == 0.0:
        raise ValueError("p = 0 is excluded")
    E = float(np.hypot(p, m))
    t_rel = -x * E / p
    t_non = -x * m / p
    return t_rel, t_non, abs(t_rel - t_non)


def nr_eigenfunction_limit(
    t: float, s: float, m: float, ratio: float, n: int = 1024
) -> float:
    """Gaussian-weighted L2 distance between the rest-phase-stripped
    time-labeled eigenfunction and its nonrelativistic counterpart.

    The relativistic function is multiplied by e^{-i m t} (splitting
    e^{i E t} = e^{i p^2 t / 2m} e^{i m t} in the limit), then compared with
    (p^2/m^2)^{1/4} zeta_s e^{i p^2 t / 2m} / sqrt(2 pi) under a normalized
    Gaussian weight of width sigma_p = ratio * m.
    """
    if ratio <= 0.0 or m <= 0.0:
        raise ValueError("ratio and m must be > 0")
    sigma = ratio * m
    pos, w = _gauss_legendre_panels(sigma * 1e-2, 8.0 * sigma, n, 8)
    p = np.concatenate([-pos[::-1], pos])
    w = np.concatenate([w[::-1], w])
    E = np.hypot(p, m)
    W_rel = np.sqrt(np.abs(p) / E)
    phase_rel = np.exp(1j * (E - m) * t) / _SQRT2PI
    f_rel = W_rel[:, None] * energy_spinor_values(m, p, 1, s) * phase_rel[:, None]
    zeta = nr_limit_spinor(1, s)
    W_non = np.sqrt(np.abs(p) / m)
    phase_non = np.exp(1j * p * p * t / (2.0 * m)) / _SQRT2PI
    f_non = W_non[:, None] * zeta[None, :] * phase_non[:, None]
    gauss = np.exp(-p * p / (2.0 * sigma * sigma))
    gauss /= np.sum(w * gauss)
    d2 = np.sum(w * gauss * np.sum(np.abs(f_rel - f_non) ** 2, axis=1))
    return float(np.sqrt(d2))


def nr_eigenfunction_limit_scan(t: float, s: float, m: float, ratios) -> LimitReport:
    ratios = np.asarray(ratios, dtype=float)
    dists = np.array([nr_eigenfunction_limit(t, s, m, r) for r in ratios])
    return LimitReport(ratios, dists, _fit_order(ratios, dists))


@dataclass(frozen=True)
class DualSolution:
    """Event state phi(E, p) = [x^2/(x^2+tau^2)]^{1/4} xi_{b s}(x) e^{i(t E - x p)} / sqrt(2 pi).

    E and p are independent variables here; the labels satisfy
    t = b t_x = b sqrt(x^2 + tau^2), so t^2 - x^2 = tau^2 exactly.
    """

    x: float
    tau: float
    b: int
    s: float

    @property
    def t_x(self) -> float:
        return float(np.hypot(self.x, self.tau))

    @property
    def t(self) -> float:
        return self.b * self.t_x

    @property
    def spinor(self) -> np.ndarray:
        return event_spinor_values(self.x, self.tau, self.b, self.s)

    @property
    def weight(self) -> float:
        return float(np.sqrt(abs(self.x) / self.t_x))

    def value(self, E, p) -> np.ndarray:
        E = np.asarray(E, dtype=float)
        p = np.asarray(p, dtype=float)
        phase = np.exp(1j * (self.t * E - self.x * p)) / _SQRT2PI
        return self.weight * phase[..., None] * self.spinor

    def dvalue_dE(self, E, p) -> np.ndarray:
        """Analytic d/dE: only the phase depends on E."""
        return 1j * self.t * self.value(E, p)


def dual_solution(x: float, b: int, s: float, tau: float) -> DualSolution:
    if x == 0.0 and tau == 0.0:
        raise ValueError("degenerate event: x = tau = 0")
    if b not in (1, -1):
        raise ValueError("sign b must be +1 or -1")
    if abs(x) == 0.0:
        raise ValueError("x = 0 degenerates the event weight")
    return DualSolution(x=x, tau=tau, b=b, s=s)


def dual_residual(ds: DualSolution, E_samples=None, p_samples=None) -> float:
    """max | -i d/dE phi - t phi | over the (E, p) sample lattice."""
    E = np.linspace(-5.0, 5.0, 11) if E_samples is None else np.asarray(E_samples)
    p = np.linspace(-3.0, 3.0, 7) if p_samples is None else np.asarray(p_samples)
    EE, PP = np.meshgrid(E, p, indexing="ij")
    lhs = -1j * ds.dvalue_dE(EE, PP)
    rhs = ds.t * ds.value(EE, PP)
    return float(np.max(np.abs(lhs - rhs)))


def duality_map_max_residual(n_samples: int = 100, seed: int = 0) -> float:
    """Componentwise defect of the substitution (x, tau, b t_x) <-> (p, m, lam E_p).

    Random labels (m, p, lam, s) are mapped to (tau = m, x = p, b = lam);
    the event spinor must then reproduce the energy spinor exactly, and
    t^2 - x^2 = tau^2 must hold for the dual labels.
    """
    rng = np.random.default_rng(seed)
    worst = 0.0
    for _ in range(n_samples):
        m = float(np.exp(rng.uniform(np.log(0.05), np.log(5.0))))
        p = float(rng.uniform(0.2, 8.0) * rng.choice([-1.0, 1.0]))
        lam = int(rng.choice([1, -1]))
        s = float(rng.choice([0.5, -0.5]))
        phi = energy_spinor_values(m, np.array([p]), lam, s)[0]
        xi = event_spinor_values(p, np.array([m]), lam, s)[0]
        worst = max(worst, float(np.max(np.abs(phi - xi))))
        ds = dual_solution(x=p, b=lam, s=s, tau=m)
        worst = max(worst, abs(ds.t**2 - ds.x**2 - ds.tau**2))
    return worst


@dataclass(frozen=True)
class DeficiencyReport:
    """Normalizability of the deficiency solutions e^{-+E} per branch."""

    m: float
    e_max_values: tuple
    integrals: dict
    classifications: dict
    n_plus: int
    n_minus: int

    @property
    def equal(self) -> bool:
        return self.n_plus == self.n_minus

    def to_dict(self) -> dict:
        return {
            "m": self.m,
            "e_max_values": list(self.e_max_values),
            "integrals": {k: list(v) for k, v in self.integrals.items()},
            "classifications": dict(self.classifications),
            "n_plus": self.n_plus,
            "n_minus": self.n_minus,
            "equal": self.equal,
            "has_self_adjoint_extension": self.equal,
        }


def _branch_integral(m: float, e_max: float, sign_exp: float, branch: int, n: int = 512) -> float:
    """int |e^{sign_exp * E}|^2 dE over (m, e_max) or (-e_max, -m)."""
    if branch == 1:
        xs, ws = _gauss_legendre_panels(m, e_max, n, 8)
    else:
        xs, ws = _gauss_legendre_panels(-e_max, -m, n, 8)
    return float(np.sum(ws * np.exp(2.0 * sign_exp * xs)))


def deficiency_diagnostic(m: float, e_max: float | None = None) -> DeficiencyReport:
    """Count normalizable solutions of -i dphi/dE = +-i phi per branch.

    The candidate solutions are phi = e^{-+E}.  Each truncated integral is
    evaluated at e_max, 2 e_max and 4 e_max; a branch is classified
    convergent when the sequence stabilizes (total relative change < 1%)
    and divergent when it blows up by orders of magnitude.  n_plus /
    n_minus count the branches that carry a normalizable solution for the
    +i / -i equation.
    """
    if m <= 0.0:
        raise ValueError("requires m > 0")
    e_max = 10.0 * m if e_max is None else float(e_max)
    if e_max <= m:
        raise ValueError("e_max must exceed m")
    e_values = (e_max, 2.0 * e_max, 4.0 * e_max)
    integrals = {}
    classifications = {}
    counts = {"+i": 0, "-i": 0}
    # T^dag phi = +i phi  ->  phi = e^{-E};  T^dag phi = -i phi  ->  phi = e^{+E}
    for label, sign_exp in (("+i", -1.0), ("-i", 1.0)):
        for branch in (1, -1):
            seq = tuple(_branch_integral(m, e, sign_exp, branch) for e in e_values)
            key = f"{label}/branch{branch:+d}"
            integrals[key] = seq
            if abs(seq[2] - seq[0]) < 1e-2 * seq[0]:
                classifications[key] = "convergent"
                counts[label] += 1
            elif seq[2] > seq[0] * 1e3:
                classifications[key] = "divergent"
            else:
                classifications[key] = "inconclusive"
    return DeficiencyReport(
        m=m,
        e_max_values=e_values,
        integrals=integrals,
        classifications=classifications,
        n_plus=counts["+i"],
        n_minus=counts["-i"],
    )
