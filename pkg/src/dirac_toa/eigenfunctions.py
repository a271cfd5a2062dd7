"""Eigenfunction families of the time-of-arrival operator.

Three closed-form families, each with an analytic d/dp evaluator:

* time-labeled:     phi_{t lam s}(p) = W(p) phi_{lam s}(p) e^{i lam E_p t} / sqrt(2 pi)
  with W(p) = [p^2/(p^2 + m^2)]^{1/4}.  True eigenfunctions: T phi = t phi.
* position-labeled: phi_{x lam s}(p) = W(p) phi_{lam s}(p) e^{-i p x} / sqrt(2 pi).
  Satisfies the pointwise identity (T phi)(p) = [-(lam E_p / p) x] phi(p);
  the factor -x E/p is the classical arrival time, but it varies with p, so
  the family is treated as a node-local identity rather than a fixed-
  eigenvalue family.
* event-labeled:    phi_{x b s}(p) = [x^2/(x^2 + tau^2)]^{1/4} xi_{b s}(x) e^{-i p x} / sqrt(2 pi)
  with the proper-time label evaluated per node, tau(p) = x m / p.  At each
  node it coincides with the position-labeled family under the relabeling
  lam = b * sign(x) * sign(p), and the local factor is -b t_x(p).
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .algebra import (
    energy_spinor_derivative,
    energy_spinor_values,
    event_spinor_tau_derivative,
    event_spinor_values,
    helicity_spinor,
)
from .grids import GridSpinorField, MomentumGrid

__all__ = [
    "ToaEigenfunction",
    "time_eigenfunction",
    "position_eigenfunction",
    "event_eigenfunction",
    "weight_factor",
    "weight_factor_derivative_ratio",
    "overlap_matrix",
    "resynthesize_time_family",
    "event_branch_for_node",
]

_SQRT2PI = np.sqrt(2.0 * np.pi)


def weight_factor(m: float, p) -> np.ndarray:
    """W(p) = [p^2 / (p^2 + m^2)]^{1/4}."""
    p = np.asarray(p, dtype=float)
    E = np.hypot(p, m)
    return np.sqrt(np.abs(p) / E)


def weight_factor_derivative_ratio(m: float, p) -> np.ndarray:
    """W'(p) / W(p) = m^2 / (2 p E_p^2)."""
    p = np.asarray(p, dtype=float)
    E = np.hypot(p, m)
    return m * m / (2.0 * p * E * E)


def event_branch_for_node(x: float, p, b: int) -> np.ndarray:
    """Energy-branch label matching the event family at a node: lam = b sign(x) sign(p)."""
    return b * np.sign(x) * np.sign(np.asarray(p, dtype=float))


@dataclass(frozen=True)
class ToaEigenfunction:
    """One labeled member of an arrival-operator eigenfunction family.

    ``value`` and ``derivative`` are vectorized closed forms; ``eigenvalue``
    returns the (possibly p-dependent) local factor the operator multiplies
    by, and ``on_grid`` samples value and analytic derivative onto a grid.
    """

    family: str  # "time" | "position" | "event"
    m: float
    labels: dict

    def value(self, p) -> np.ndarray:
        p = np.asarray(p, dtype=float)
        L = self.labels
        if self.family == "time":
            E = np.hypot(p, self.m)
            phase = np.exp(1j * L["lam"] * E * L["t"]) / _SQRT2PI
            spin = energy_spinor_values(self.m, p, L["lam"], L["s"])
            return weight_factor(self.m, p)[..., None] * spin * phase[..., None]
        if self.family == "position":
            phase = np.exp(-1j * p * L["x"]) / _SQRT2PI
            spin = energy_spinor_values(self.m, p, L["lam"], L["s"])
            return weight_factor(self.m, p)[..., None] * spin * phase[..., None]
        x, b, s = L["x"], L["b"], L["s"]
        tau = x * self.m / p
        t_x = np.hypot(x, tau)
        wx = np.sqrt(np.abs(x) / t_x)
        phase = np.exp(-1j * p * x) / _SQRT2PI
        spin = event_spinor_values(x, tau, b, s)
        return wx[..., None] * spin * phase[..., None]

    def derivative(self, p) -> np.ndarray:
        p = np.asarray(p, dtype=float)
        L = self.labels
        vals = self.value(p)
        if self.family in ("time", "position"):
            lam, s = L["lam"], L["s"]
            E = np.hypot(p, self.m)
            dln_w = weight_factor_derivative_ratio(self.m, p)
            if self.family == "time":
                dln_phase = 1j * lam * L["t"] * p / E
                phase = np.exp(1j * lam * E * L["t"]) / _SQRT2PI
            else:
                dln_phase = np.broadcast_to(-1j * L["x"], p.shape)
                phase = np.exp(-1j * p * L["x"]) / _SQRT2PI
            dspin = energy_spinor_derivative(self.m, p, lam, s)
            out = (dln_w + dln_phase)[..., None] * vals
            out += weight_factor(self.m, p)[..., None] * dspin * phase[..., None]
            return out
        x, b, s = L["x"], L["b"], L["s"]
        tau = x * self.m / p
        dtau = -x * self.m / (p * p)
        t_x = np.hypot(x, tau)
        wx = np.sqrt(np.abs(x) / t_x)
        dln_wx_dtau = -tau / (2.0 * t_x * t_x)
        phase = np.exp(-1j * p * x) / _SQRT2PI
        dspin_dtau = event_spinor_tau_derivative(x, tau, b, s)
        out = (dln_wx_dtau * dtau - 1j * x)[..., None] * vals
        out += (wx * dtau)[..., None] * dspin_dtau * phase[..., None]
        return out

    def eigenvalue(self, p):
        """Local arrival-time factor at momentum p (constant for the time family)."""
        p = np.asarray(p, dtype=float)
        L = self.labels
        if self.family == "time":
            return np.broadcast_to(float(L["t"]), p.shape)
        E = np.hypot(p, self.m)
        if self.family == "position":
            return -L["x"] * L["lam"] * E / p
        t_x = np.abs(L["x"]) * E / np.abs(p)
        return -L["b"] * t_x

    def on_grid(self, grid: MomentumGrid) -> GridSpinorField:
        return GridSpinorField(
            grid, self.value(grid.nodes), self.derivative(grid.nodes)
        )


def time_eigenfunction(t: float, lam: int, s: float, m: float) -> ToaEigenfunction:
    """Time-labeled eigenfunction; T phi = t phi for any real t."""
    if m < 0.0:
        raise ValueError("mass must be >= 0")
    helicity_spinor(s)
    if lam not in (1, -1):
        raise ValueError("branch sign must be +1 or -1")
    return ToaEigenfunction("time", m, {"t": float(t), "lam": lam, "s": s})


def position_eigenfunction(x: float, lam: int, s: float, m: float) -> ToaEigenfunction:
    """Position-labeled family; node-local factor -x lam E_p / p."""
    if m < 0.0:
        raise ValueError("mass must be >= 0")
    helicity_spinor(s)
    if lam not in (1, -1):
        raise ValueError("branch sign must be +1 or -1")
    return ToaEigenfunction("position", m, {"x": float(x), "lam": lam, "s": s})


def event_eigenfunction(x: float, b: int, s: float, m: float) -> ToaEigenfunction:
    """Event-labeled family with per-node proper time tau(p) = x m / p.

    x = 0 is rejected: the event weight and t_x degenerate there.
    """
    if m < 0.0:
        raise ValueError("mass must be >= 0")
    if x == 0.0:
        raise ValueError("x = 0 degenerates the event family")
    helicity_spinor(s)
    if b not in (1, -1):
        raise ValueError("sign b must be +1 or -1")
    return ToaEigenfunction("event", m, {"x": float(x), "b": b, "s": s})


def overlap_matrix(funcs, grid: MomentumGrid) -> np.ndarray:
    """Gram matrix of eigenfunctions under the grid quadrature."""
    samples = [f.on_grid(grid).values for f in funcs]
    n = len(samples)
    gram = np.empty((n, n), dtype=complex)
    for i in range(n):
        for j in range(n):
            gram[i, j] = np.sum(
                grid.weights * np.sum(np.conj(samples[i]) * samples[j], axis=1)
            )
    return gram


def resynthesize_time_family(
    f: GridSpinorField, m: float, t_values: np.ndarray
) -> GridSpinorField:
    """Project onto a uniform t-lattice of time-labeled eigenfunctions and resum.

    Summing |phi_t><phi_t| dt over all t yields I + beta P, where P is the
    momentum reflection p -> -p: the energies E_p of p and -p coincide, so
    the t-integral cannot separate them.  The factor 1/2 below compensates
    that double counting; states even under beta P are then reproduced
    exactly, while for a general state twice the output equals
    psi + beta P psi (a one-sided packet comes back at half amplitude on
    its own half-line plus a half-amplitude beta-reflected mirror).
    """
    t_values = np.asarray(t_values, dtype=float)
    if len(t_values) < 2:
        raise ValueError("need at least two t samples")
    dt = np.diff(t_values)
    if not np.allclose(dt, dt[0], rtol=1e-12, atol=0.0):
        raise ValueError("t lattice must be uniform")
    dt = float(dt[0])
    grid = f.grid
    p = grid.nodes
    E = np.hypot(p, m)
    W = weight_factor(m, p)
    rec = np.zeros_like(f.values)
    for lam in (1, -1):
        down = np.exp(-1j * lam * np.outer(t_values, E))  # <phi_t| phases
        up = np.exp(1j * lam * np.outer(E, t_values))
        for s in (0.5, -0.5):
            spin = energy_spinor_values(m, p, lam, s)
            proj = np.einsum("jc,jc->j", np.conj(spin), f.values)
            amp = down @ (grid.weights * W * proj / _SQRT2PI)
            coeff = dt * (up @ amp)
            rec += 0.5 * (W * coeff)[:, None] * spin / _SQRT2PI
    return GridSpinorField(grid, rec, meta={"t_window": (float(t_values[0]), float(t_values[-1])), "dt": dt})
