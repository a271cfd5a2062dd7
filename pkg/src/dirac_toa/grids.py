"""Momentum-space grids and discretized operators.

The grid is a symmetric pair of intervals [-p_max, -p_min] u [p_min, p_max]
built from composite Gauss-Legendre panels, so the neighborhood of p = 0 is
excluded by construction (the time-of-arrival operator is singular there).
Derivatives are polynomial finite differences of order 2 or 4 on the actual
(non-uniform) nodes, evaluated per half-line; near each interval end the
stencils become one-sided at the same order.  Fields may carry closed-form
derivative samples, in which case the operators use those instead.

Operators:

* ``apply_hamiltonian``  -- node-wise H(p) = alpha_1 p + beta m.
* ``apply_toa``          -- T = (1/p) H(p) (-i d/dp) + i beta m / (2 p^2),
  the quantized time-of-arrival of the free Dirac particle.
* ``apply_toa_nonrel``   -- T_non = -m (p^-1 x + x p^-1)/2 in the momentum
  representation (x acts as +i d/dp), componentwise on the spinor.
* ``to_energy_rep``      -- isometry onto functions of E on the two spectral
  branches (-inf, -m) u (m, +inf), with the exact Jacobian |dE/dp| = |p|/E_p.
* ``apply_toa_energy``   -- -i d/dE per branch, gated on the boundary
  condition g(+-m) = 0 that makes the operator symmetric.
"""
from __future__ import annotations

from dataclasses import dataclass, field as dc_field

import numpy as np

from .algebra import apply_h_values, energy_spinor_values

__all__ = [
    "MomentumGrid",
    "GridSpinorField",
    "EnergyGridFunction",
    "build_grid",
    "field_from_callable",
    "apply_hamiltonian",
    "apply_toa",
    "apply_toa_nonrel",
    "commutator_residual",
    "inner_product",
    "to_energy_rep",
    "energy_function_on_branch",
    "apply_toa_energy",
    "symmetry_defect",
    "energy_inner_product",
    "energy_measure_identity",
    "fd_weights",
]

_BETA_DIAG = np.array([1.0, 1.0, -1.0, -1.0])

#: boundary-condition gate |g(+-m-adjacent node)| <= BC_TOL * ||g||
BC_TOL = 1e-6


def fd_weights(nodes: np.ndarray, x0: float, max_order: int) -> np.ndarray:
    """Finite-difference weights on arbitrary nodes (Fornberg recursion).

    Returns an array c of shape (len(nodes), max_order + 1); column k holds
    the weights of the k-th derivative at x0.
    """
    nodes = np.asarray(nodes, dtype=float)
    n = len(nodes)
    c = np.zeros((n, max_order + 1))
    c1 = 1.0
    c4 = nodes[0] - x0
    c[0, 0] = 1.0
    for i in range(1, n):
        mn = min(i, max_order)
        c2 = 1.0
        c5 = c4
        c4 = nodes[i] - x0
        for j in range(i):
            c3 = nodes[i] - nodes[j]
            c2 *= c3
            if j == i - 1:
                for k in range(mn, 0, -1):
                    c[i, k] = c1 * (k * c[i - 1, k - 1] - c5 * c[i - 1, k]) / c2
                c[i, 0] = -c1 * c5 * c[i - 1, 0] / c2
            for k in range(mn, 0, -1):
                c[j, k] = (c4 * c[j, k] - k * c[j, k - 1]) / c3
            c[j, 0] = c4 * c[j, 0] / c3
        c1 = c2
    return c


def _gauss_legendre_panels(a: float, b: float, n: int, panels: int):
    """Composite Gauss-Legendre rule with n nodes split over equal panels."""
    base, rem = divmod(n, panels)
    edges = np.linspace(a, b, panels + 1)
    xs, ws = [], []
    for i in range(panels):
        q = base + (1 if i < rem else 0)
        x0, w0 = np.polynomial.legendre.leggauss(q)
        lo, hi = edges[i], edges[i + 1]
        xs.append(0.5 * (hi - lo) * x0 + 0.5 * (hi + lo))
        ws.append(0.5 * (hi - lo) * w0)
    return np.concatenate(xs), np.concatenate(ws)


def _stencil_table(nodes: np.ndarray, order: int):
    """Per-node first-derivative stencils (indices, weights) on one interval.

    Interior nodes get index-centered stencils of order+1 points; the
    order//2 nodes nearest each end fall back to one-sided windows.
    """
    n = len(nodes)
    k = order + 1
    if n < k:
        raise ValueError(f"need at least {k} nodes per side for order {order}")
    idx = np.empty((n, k), dtype=int)
    wts = np.empty((n, k))
    for i in range(n):
        start = min(max(i - order // 2, 0), n - k)
        idx[i] = np.arange(start, start + k)
        wts[i] = fd_weights(nodes[start : start + k], nodes[i], 1)[:, 1]
    return idx, wts


@dataclass(eq=False)
class MomentumGrid:
    """Symmetric quadrature grid on [-p_max, -p_min] u [p_min, p_max].

    nodes are strictly increasing, none in (-p_min, p_min); weights are
    composite Gauss-Legendre, so one side sums to p_max - p_min exactly.
    ``deriv_order`` is 2, 4, or "analytic" (no finite-difference scheme;
    operators then require fields carrying closed-form derivatives).
    """

    p_min: float
    p_max: float
    n_per_side: int
    deriv_order: object
    panels: int
    nodes: np.ndarray
    weights: np.ndarray
    _stencils: tuple | None

    @property
    def n_nodes(self) -> int:
        return 2 * self.n_per_side

    @property
    def positive(self) -> slice:
        return slice(self.n_per_side, 2 * self.n_per_side)

    @property
    def negative(self) -> slice:
        return slice(0, self.n_per_side)

    @property
    def one_sided_nodes(self) -> int:
        if self._stencils is None:
            return 0
        return 4 * (int(self.deriv_order) // 2)

    def derivative(self, values: np.ndarray) -> np.ndarray:
        """Finite-difference d/dp per half-line; values shape (n_nodes, ...)."""
        if self._stencils is None:
            raise ValueError(
                "grid was built with deriv_order='analytic'; supply a field "
                "with deriv_values instead"
            )
        idx_n, w_n, idx_p, w_p = self._stencils
        n = self.n_per_side
        out = np.empty_like(np.asarray(values, dtype=complex))
        out[:n] = np.einsum("ik,ik...->i...", w_n, values[:n][idx_n])
        out[n:] = np.einsum("ik,ik...->i...", w_p, values[n:][idx_p])
        return out

    def integrate(self, samples: np.ndarray):
        """Quadrature sum over all nodes; samples shape (n_nodes, ...)."""
        return np.tensordot(self.weights, np.asarray(samples), axes=(0, 0))

    def norm(self, values: np.ndarray) -> float:
        """Quadrature L2 norm of a spinor-valued sample set."""
        dens = np.sum(np.abs(values) ** 2, axis=tuple(range(1, values.ndim)))
        return float(np.sqrt(np.sum(self.weights * dens)))


def build_grid(
    p_min: float,
    p_max: float,
    n_points: int,
    deriv_order=4,
    panels: int = 8,
) -> MomentumGrid:
    """Build a symmetric composite Gauss-Legendre grid (n_points per side)."""
    if not (0.0 < p_min < p_max):
        raise ValueError(f"need 0 < p_min < p_max, got ({p_min}, {p_max})")
    if n_points < 8:
        raise ValueError(f"n_points must be >= 8, got {n_points}")
    if deriv_order not in (2, 4, "analytic"):
        raise ValueError(f"deriv_order must be 2, 4 or 'analytic', got {deriv_order!r}")
    panels = max(1, min(panels, n_points // 4))
    pos, wpos = _gauss_legendre_panels(p_min, p_max, n_points, panels)
    nodes = np.concatenate([-pos[::-1], pos])
    weights = np.concatenate([wpos[::-1], wpos])
    stencils = None
    if deriv_order != "analytic":
        idx_p, w_p = _stencil_table(pos, deriv_order)
        idx_n, w_n = _stencil_table(-pos[::-1], deriv_order)
        stencils = (idx_n, w_n, idx_p, w_p)
    return MomentumGrid(
        p_min=p_min,
        p_max=p_max,
        n_per_side=n_points,
        deriv_order=deriv_order,
        panels=panels,
        nodes=nodes,
        weights=weights,
        _stencils=stencils,
    )


@dataclass(eq=False)
class GridSpinorField:
    """A 4-spinor-valued function sampled on a MomentumGrid.

    ``deriv_values``, when present, holds closed-form d/dp samples and makes
    every derivative-based operator exact at quadrature level.
    """

    grid: MomentumGrid
    values: np.ndarray
    deriv_values: np.ndarray | None = None
    meta: dict = dc_field(default_factory=dict)

    def __post_init__(self):
        self.values = np.asarray(self.values, dtype=complex)
        if self.values.shape != (self.grid.n_nodes, 4):
            raise ValueError(
                f"values must have shape ({self.grid.n_nodes}, 4), "
                f"got {self.values.shape}"
            )
        if self.deriv_values is not None:
            self.deriv_values = np.asarray(self.deriv_values, dtype=complex)
            if self.deriv_values.shape != self.values.shape:
                raise ValueError("deriv_values shape must match values")

    def norm(self) -> float:
        return self.grid.norm(self.values)

    def normalized(self) -> "GridSpinorField":
        n = self.norm()
        if n == 0.0:
            raise ValueError("cannot normalize the zero field")
        dv = None if self.deriv_values is None else self.deriv_values / n
        return GridSpinorField(self.grid, self.values / n, dv, dict(self.meta))


def field_from_callable(grid: MomentumGrid, fn, dfn=None) -> GridSpinorField:
    """Sample fn(p) -> (..., 4) (and optionally its derivative) on the grid."""
    vals = np.asarray(fn(grid.nodes), dtype=complex)
    dvals = None if dfn is None else np.asarray(dfn(grid.nodes), dtype=complex)
    return GridSpinorField(grid, vals, dvals)


def _same_grid(f: GridSpinorField, g: GridSpinorField) -> bool:
    return f.grid is g.grid or (
        f.grid.n_nodes == g.grid.n_nodes and np.array_equal(f.grid.nodes, g.grid.nodes)
    )


def _deriv_of(f: GridSpinorField):
    """(derivative samples, tag) using analytic values when available."""
    if f.deriv_values is not None:
        return f.deriv_values, "analytic"
    return f.grid.derivative(f.values), f"fd{f.grid.deriv_order}"


def apply_hamiltonian(f: GridSpinorField, m: float) -> GridSpinorField:
    """Node-wise H(p) = alpha_1 p + beta m; propagates analytic derivatives."""
    p = f.grid.nodes
    vals = apply_h_values(m, p, f.values)
    dvals = None
    if f.deriv_values is not None:
        # d/dp (H f) = alpha_1 f + H f'
        dvals = f.values[:, ::-1] + apply_h_values(m, p, f.deriv_values)
    return GridSpinorField(f.grid, vals, dvals)


def apply_toa(f: GridSpinorField, m: float) -> GridSpinorField:
    """Time-of-arrival operator T = (1/p) H(p) (-i d/dp) + i beta m/(2 p^2)."""
    p = f.grid.nodes
    df, tag = _deriv_of(f)
    out = apply_h_values(m, p, -1j * df) / p[:, None]
    out += (1j * m / (2.0 * p * p))[:, None] * (f.values * _BETA_DIAG)
    meta = {"derivative": tag}
    if tag != "analytic":
        meta["one_sided_nodes"] = f.grid.one_sided_nodes
    return GridSpinorField(f.grid, out, meta=meta)


def apply_toa_nonrel(f: GridSpinorField, m: float) -> GridSpinorField:
    """Nonrelativistic arrival operator -m (p^-1 x + x p^-1)/2, componentwise.

    With x = +i d/dp this reads -i m (1/p) d/dp + i m/(2 p^2).
    """
    p = f.grid.nodes
    df, tag = _deriv_of(f)
    out = (-1j * m / p)[:, None] * df + (1j * m / (2.0 * p * p))[:, None] * f.values
    meta = {"derivative": tag}
    if tag != "analytic":
        meta["one_sided_nodes"] = f.grid.one_sided_nodes
    return GridSpinorField(f.grid, out, meta=meta)


def commutator_residual(f: GridSpinorField, m: float) -> float:
    """|| (T H - H T) f + i f || / || f || under the quadrature norm."""
    norm_f = f.norm()
    if norm_f == 0.0:
        raise ValueError("commutator residual is undefined for the zero field")
    th = apply_toa(apply_hamiltonian(f, m), m)
    ht = apply_hamiltonian(apply_toa(f, m), m)
    resid = th.values - ht.values + 1j * f.values
    return f.grid.norm(resid) / norm_f


def inner_product(f: GridSpinorField, g: GridSpinorField) -> complex:
    """Quadrature Hermitian form sum_j w_j f_j^dag g_j."""
    if not _same_grid(f, g):
        raise ValueError("fields live on different grids")
    return complex(np.sum(f.grid.weights * np.sum(np.conj(f.values) * g.values, axis=1)))


# ---------------------------------------------------------------------------
# energy representation
# ---------------------------------------------------------------------------

@dataclass(eq=False)
class EnergyGridFunction:
    """Complex function(s) on one spectral branch of (-inf, -m) u (m, +inf).

    ``values`` has shape (n_nodes, n_channels); channels label (side of the
    momentum axis, spin) for transformed fields, or a single test channel.
    Weights already include the Jacobian |dE/dp|, so plain weighted sums are
    integrals dE.
    """

    branch: int
    m: float
    nodes: np.ndarray
    weights: np.ndarray
    values: np.ndarray
    channels: tuple
    deriv_values: np.ndarray | None = None

    def __post_init__(self):
        if self.branch not in (1, -1):
            raise ValueError("branch must be +1 or -1")
        if np.any(np.abs(self.nodes) <= self.m):
            raise ValueError("energy nodes must satisfy |E| > m")

    def norm_sq(self) -> float:
        dens = np.sum(np.abs(self.values) ** 2, axis=1)
        return float(np.sum(self.weights * dens))

    @property
    def gap_adjacent_index(self) -> int:
        """Index of the node adjacent to the spectrum endpoint +-m."""
        return 0 if self.branch == 1 else len(self.nodes) - 1


def _induced_energy_axis(grid: MomentumGrid, m: float, branch: int):
    """E-nodes/weights induced from the positive momenta by E = branch * E_p.

    Weights are w_p * |dE/dp|; no re-interpolation is performed.  Returns
    (nodes ascending, weights, ordering of the source |p| nodes).
    """
    ppos = grid.nodes[grid.positive]
    wpos = grid.weights[grid.positive]
    E_p = np.hypot(ppos, m)
    jac = ppos / E_p
    if branch == 1:
        order = np.arange(len(ppos))
        return E_p, wpos * jac, order
    order = np.arange(len(ppos))[::-1]
    return -E_p[::-1], (wpos * jac)[::-1], order


def to_energy_rep(f: GridSpinorField, m: float):
    """Project onto the energy eigenbasis and map to the spectral branches.

    Returns a pair (branch +1, branch -1) of EnergyGridFunction with four
    channels (side, s), side = sign(p).  The map multiplies each projection
    by [E^2/(E^2 - m^2)]^(1/4) and rescales weights by |dE/dp| = |p|/E_p,
    which makes it an exact isometry of the discrete norms.
    """
    if m <= 0.0:
        raise ValueError("the energy map requires m > 0")
    grid = f.grid
    npos = grid.n_per_side
    p = grid.nodes
    E_p = np.hypot(p, m)
    quart = np.sqrt(E_p / np.abs(p))  # [E^2/(E^2-m^2)]^(1/4)
    channels = ((1, 0.5), (1, -0.5), (-1, 0.5), (-1, -0.5))
    out = []
    for lam in (1, -1):
        proj = {}
        for s in (0.5, -0.5):
            phi = energy_spinor_values(m, p, lam, s)
            proj[s] = quart * np.einsum("jc,jc->j", np.conj(phi), f.values)
        nodes, weights, order = _induced_energy_axis(grid, m, lam)
        vals = np.empty((npos, 4), dtype=complex)
        for k, (side, s) in enumerate(channels):
            src = proj[s][npos:] if side == 1 else proj[s][:npos][::-1]
            vals[:, k] = src[order]
        out.append(
            EnergyGridFunction(
                branch=lam, m=m, nodes=nodes, weights=weights,
                values=vals, channels=channels,
            )
        )
    return tuple(out)


def energy_function_on_branch(
    grid: MomentumGrid, m: float, branch: int, fn, dfn=None
) -> EnergyGridFunction:
    """Single-channel test function g(E) on the induced energy axis."""
    if m <= 0.0:
        raise ValueError("the energy map requires m > 0")
    nodes, weights, _ = _induced_energy_axis(grid, m, branch)
    vals = np.asarray(fn(nodes), dtype=complex)[:, None]
    dvals = None if dfn is None else np.asarray(dfn(nodes), dtype=complex)[:, None]
    return EnergyGridFunction(
        branch=branch, m=m, nodes=nodes, weights=weights,
        values=vals, channels=("test",), deriv_values=dvals,
    )


def _check_boundary(g: EnergyGridFunction):
    norm = np.sqrt(g.norm_sq())
    if norm == 0.0:
        return
    edge = np.max(np.abs(g.values[g.gap_adjacent_index]))
    if edge > BC_TOL * norm:
        raise ValueError(
            f"boundary condition g({g.branch:+d}m) = 0 violated: "
            f"|g| = {edge:.3e} at the gap-adjacent node E = "
            f"{g.nodes[g.gap_adjacent_index]:.6g}, allowed "
            f"{BC_TOL:.0e} * ||g|| = {BC_TOL * norm:.3e}"
        )


def apply_toa_energy(g: EnergyGridFunction, order: int = 4) -> EnergyGridFunction:
    """-i d/dE on one spectral branch.

    Rejects inputs that violate the symmetric-domain boundary condition
    g(+-m) = 0 (checked at the gap-adjacent node).
    """
    _check_boundary(g)
    if g.deriv_values is not None:
        dg = g.deriv_values
    else:
        idx, wts = _stencil_table(g.nodes, order)
        dg = np.einsum("ik,ikc->ic", wts, g.values[idx])
    return EnergyGridFunction(
        branch=g.branch, m=g.m, nodes=g.nodes, weights=g.weights,
        values=-1j * dg, channels=g.channels,
    )


def energy_inner_product(g1: EnergyGridFunction, g2: EnergyGridFunction) -> complex:
    if g1.branch != g2.branch or not np.array_equal(g1.nodes, g2.nodes):
        raise ValueError("energy functions live on different branches or axes")
    return complex(np.sum(g1.weights * np.sum(np.conj(g1.values) * g2.values, axis=1)))


def symmetry_defect(g1: EnergyGridFunction, g2: EnergyGridFunction, order: int = 4) -> complex:
    """<g1|T g2> - <T g1|g2>; vanishes when both satisfy the boundary condition."""
    t2 = apply_toa_energy(g2, order)
    t1 = apply_toa_energy(g1, order)
    return energy_inner_product(g1, t2) - energy_inner_product(t1, g2)


def energy_measure_identity(grid: MomentumGrid, m: float, h, e_n: int = 256, e_panels: int = 8):
    """Both sides of the spectral measure identity dE = p dp / E_p.

    Left: sum_lam int h(lam E_p) (p/E_p) dp over the positive momenta of the
    grid.  Right: int h(E) dE over the image interval on both spectral
    branches, by an independent Gauss-Legendre rule in the E variable.  The
    image starts at E(p_min), which is the energy face of the excluded
    neighborhood of p = 0.  Returns (left, right).
    """
    if m <= 0.0:
        raise ValueError("requires m > 0")
    ppos = grid.nodes[grid.positive]
    wpos = grid.weights[grid.positive]
    E_p = np.hypot(ppos, m)
    jac = ppos / E_p
    left = float(np.sum(wpos * jac * (h(E_p) + h(-E_p))))
    e_min = float(np.hypot(grid.p_min, m))
    e_max = float(np.hypot(grid.p_max, m))
    xe, we = _gauss_legendre_panels(e_min, e_max, e_n, e_panels)
    right = float(np.sum(we * (h(xe) + h(-xe))))
    return left, right
