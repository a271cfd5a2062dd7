"""Grid construction, finite differences, and discretized-operator tests."""
import numpy as np
import pytest
from scipy.special import erf

from dirac_toa import algebra, grids
from dirac_toa.eigenfunctions import time_eigenfunction


@pytest.fixture(scope="module")
def grid256():
    return grids.build_grid(1e-3, 10.0, 256, 4)


def gaussian_bump_field(grid, center=2.0, width=0.3):
    p = grid.nodes
    vals = np.zeros((grid.n_nodes, 4), dtype=complex)
    vals[:, 0] = np.exp(-((p - center) ** 2) / (2 * width**2))
    return grids.GridSpinorField(grid, vals)


def test_build_grid_contract(grid256):
    g = grid256
    assert g.n_nodes == 512
    assert np.all(np.diff(g.nodes) > 0)
    assert not np.any(np.abs(g.nodes) < 1e-3)
    assert np.allclose(g.nodes, -g.nodes[::-1])
    span = g.p_max - g.p_min
    assert abs(np.sum(g.weights[g.positive]) - span) <= 1e-12 * span
    assert abs(np.sum(g.weights[g.negative]) - span) <= 1e-12 * span


def test_build_grid_validation():
    with pytest.raises(ValueError):
        grids.build_grid(0.0, 10.0, 256)
    with pytest.raises(ValueError):
        grids.build_grid(2.0, 1.0, 256)
    with pytest.raises(ValueError):
        grids.build_grid(1e-3, 10.0, 4)
    with pytest.raises(ValueError):
        grids.build_grid(1e-3, 10.0, 256, 3)


def test_gaussian_quadrature(grid256):
    total = float(np.sum(grid256.weights * np.exp(-grid256.nodes**2)))
    exact = float(np.sqrt(np.pi) * (erf(10.0) - erf(1e-3)))
    assert abs(total - exact) <= 1e-10


def test_odd_integrand(grid256):
    assert abs(np.sum(grid256.weights * grid256.nodes)) <= 1e-12


def test_fd_weights_uniform_five_point():
    # classic 5-point central first-derivative weights on a uniform grid
    h = 0.1
    x = np.arange(5) * h
    w = grids.fd_weights(x, x[2], 1)[:, 1]
    expect = np.array([1.0, -8.0, 0.0, 8.0, -1.0]) / (12.0 * h)
    assert np.max(np.abs(w - expect)) <= 1e-12 / h


def test_derivative_accuracy_and_order(grid256):
    errs = []
    for g in (grid256, grids.build_grid(1e-3, 10.0, 512, 4)):
        vals = np.sin(g.nodes)[:, None] * np.ones(4)
        d = g.derivative(vals)
        errs.append(np.max(np.abs(d - np.cos(g.nodes)[:, None])))
    assert errs[0] <= 1e-6
    assert errs[0] / errs[1] >= 12.0  # 4th-order refinement


def test_apply_hamiltonian_eigen_property(grid256):
    m = 1.0
    p = grid256.nodes
    E = np.hypot(p, m)
    for lam in (1, -1):
        f = grids.GridSpinorField(grid256, algebra.energy_spinor_values(m, p, lam, 0.5))
        hf = grids.apply_hamiltonian(f, m)
        assert np.max(np.abs(hf.values - lam * E[:, None] * f.values)) <= 1e-12


def test_apply_hamiltonian_massless(grid256):
    p = grid256.nodes
    f = grids.GridSpinorField(grid256, algebra.energy_spinor_values(0.0, p, 1, 0.5))
    hf = grids.apply_hamiltonian(f, 0.0)
    assert np.max(np.abs(hf.values - np.abs(p)[:, None] * f.values)) <= 1e-13


def test_apply_toa_time_eigenfunction(grid256):
    m, t = 1.0, 2.0
    f = time_eigenfunction(t, 1, 0.5, m).on_grid(grid256)
    tv = grids.apply_toa(f, m)
    assert tv.meta["derivative"] == "analytic"
    assert np.max(np.abs(tv.values - t * f.values)) <= 1e-10


def test_apply_toa_fd_metadata(grid256):
    f = gaussian_bump_field(grid256)
    tv = grids.apply_toa(f, 1.0)
    assert tv.meta["derivative"] == "fd4"
    assert tv.meta["one_sided_nodes"] == 8


def test_commutator_refinement_order4():
    res = []
    for n in (256, 512):
        grid = grids.build_grid(1e-3, 10.0, n, 4)
        res.append(grids.commutator_residual(gaussian_bump_field(grid), 1.0))
    assert res[0] / res[1] >= 12.0


def test_commutator_order2_larger_than_order4():
    out = {}
    for order in (2, 4):
        grid = grids.build_grid(1e-3, 10.0, 256, order)
        out[order] = grids.commutator_residual(gaussian_bump_field(grid), 1.0)
    assert out[2] > out[4]


def test_commutator_analytic_eigenfunction(grid256):
    f = time_eigenfunction(1.5, 1, 0.5, 1.0).on_grid(grid256)
    assert grids.commutator_residual(f, 1.0) <= 1e-9


def test_commutator_zero_field(grid256):
    f = grids.GridSpinorField(grid256, np.zeros((grid256.n_nodes, 4), dtype=complex))
    with pytest.raises(ValueError):
        grids.commutator_residual(f, 1.0)


def test_apply_toa_nonrel_eigenfunction(grid256):
    # (p^2/m^2)^{1/4} zeta_s e^{i p^2 t / 2m} / sqrt(2 pi) has arrival time t
    m, t = 1.0, 1.7
    zeta = algebra.nr_limit_spinor(1, 0.5)

    def fn(p):
        amp = np.sqrt(np.abs(p) / m) * np.exp(1j * p * p * t / (2 * m)) / np.sqrt(2 * np.pi)
        return amp[:, None] * zeta

    def dfn(p):
        return (1.0 / (2.0 * p) + 1j * p * t / m)[:, None] * fn(p)

    f = grids.field_from_callable(grid256, fn, dfn)
    tv = grids.apply_toa_nonrel(f, m)
    assert np.max(np.abs(tv.values - t * f.values)) <= 1e-8


def test_apply_toa_nonrel_constant_field(grid256):
    m = 1.0
    vals = np.ones((grid256.n_nodes, 4), dtype=complex)
    zeros = np.zeros_like(vals)
    f = grids.GridSpinorField(grid256, vals, zeros)
    tv = grids.apply_toa_nonrel(f, m)
    expect = (1j * m / (2.0 * grid256.nodes**2))[:, None] * vals
    assert np.max(np.abs(tv.values - expect)) <= 1e-13
    assert np.max(np.abs(tv.values.real)) == 0.0
    assert np.max(np.abs(tv.values.imag)) > 0.0


def test_apply_toa_nonrel_linearity(grid256):
    rng = np.random.default_rng(5)
    fa = grids.GridSpinorField(grid256, rng.normal(size=(512, 4)) + 1j * rng.normal(size=(512, 4)))
    fb = grids.GridSpinorField(grid256, rng.normal(size=(512, 4)) + 1j * rng.normal(size=(512, 4)))
    a, b = 1.3 - 0.2j, -0.7 + 2.1j
    combo = grids.GridSpinorField(grid256, a * fa.values + b * fb.values)
    lhs = grids.apply_toa_nonrel(combo, 1.0).values
    rhs = a * grids.apply_toa_nonrel(fa, 1.0).values + b * grids.apply_toa_nonrel(fb, 1.0).values
    scale = np.max(np.abs(rhs))
    assert np.max(np.abs(lhs - rhs)) <= 1e-13 * scale


def test_inner_product_properties(grid256):
    rng = np.random.default_rng(8)
    f = grids.GridSpinorField(grid256, rng.normal(size=(512, 4)) + 1j * rng.normal(size=(512, 4)))
    g = grids.GridSpinorField(grid256, rng.normal(size=(512, 4)) + 1j * rng.normal(size=(512, 4)))
    ff = grids.inner_product(f, f)
    assert abs(ff.imag) <= 1e-15 * ff.real and ff.real >= 0.0
    fg = grids.inner_product(f, g)
    gf = grids.inner_product(g, f)
    assert abs(fg - np.conj(gf)) <= 1e-14 * abs(fg)
    other = grids.build_grid(1e-3, 9.0, 256, 4)
    h = grids.GridSpinorField(other, np.zeros((512, 4), dtype=complex))
    with pytest.raises(ValueError):
        grids.inner_product(f, h)


def test_massless_reduction_is_position_operator(grid256):
    # at m = 0 the operator acts as -alpha_1 (i d/dp)
    p = grid256.nodes
    g = np.exp(-((np.abs(p) - 2.0) ** 2))
    dg = -2.0 * (np.abs(p) - 2.0) * np.sign(p) * g
    spin = np.array([1.0, 0.5j, 0.25, -0.5], dtype=complex)
    f = grids.GridSpinorField(grid256, g[:, None] * spin, dg[:, None] * spin)
    lhs = grids.apply_toa(f, 0.0).values
    rhs = -1j * (dg[:, None] * spin)[:, ::-1]
    assert np.max(np.abs(lhs - rhs)) <= 1e-14


def test_analytic_grid_requires_deriv_values():
    grid = grids.build_grid(1e-3, 10.0, 64, "analytic")
    f = grids.GridSpinorField(grid, np.ones((grid.n_nodes, 4), dtype=complex))
    with pytest.raises(ValueError):
        grids.apply_toa(f, 1.0)
    f2 = grids.GridSpinorField(
        grid,
        np.ones((grid.n_nodes, 4), dtype=complex),
        np.zeros((grid.n_nodes, 4), dtype=complex),
    )
    grids.apply_toa(f2, 1.0)  # analytic derivative path works


# ---------------------------------------------------------------------------
# energy representation
# ---------------------------------------------------------------------------

def packet_field(grid, m=1.0, p0=2.0, sigma=0.1, x0=-10.0):
    p = grid.nodes
    g = (2 * np.pi * sigma**2) ** -0.25 * np.exp(-((p - p0) ** 2) / (4 * sigma**2))
    vals = g[:, None] * np.exp(-1j * p * x0)[:, None] * algebra.energy_spinor_values(m, p, 1, 0.5)
    return grids.GridSpinorField(grid, vals).normalized()


def test_to_energy_rep_parseval(grid256):
    f = packet_field(grid256)
    gp, gm = grids.to_energy_rep(f, 1.0)
    assert abs(gp.norm_sq() + gm.norm_sq() - f.norm() ** 2) <= 1e-8
    assert gp.branch == 1 and gm.branch == -1
    assert np.all(gp.nodes > 1.0) and np.all(gm.nodes < -1.0)


def test_to_energy_rep_branch_isolation(grid256):
    f = packet_field(grid256)
    _, gm = grids.to_energy_rep(f, 1.0)
    assert np.sqrt(gm.norm_sq()) <= 1e-12


def test_to_energy_rep_rejects_massless(grid256):
    f = packet_field(grid256)
    with pytest.raises(ValueError):
        grids.to_energy_rep(f, 0.0)


def test_measure_identity_with_analytic_oracle(grid256):
    m = 1.0
    h = lambda E: np.exp(-((E - 2.0) ** 2))
    left, right = grids.energy_measure_identity(grid256, m, h)
    assert abs(left - right) <= 1e-8
    # independent closed form over the image window on both branches
    e_min, e_max = np.hypot(grid256.p_min, m), np.hypot(grid256.p_max, m)
    exact = np.sqrt(np.pi) / 2 * (
        (erf(e_max - 2.0) - erf(e_min - 2.0)) + (erf(-e_min - 2.0) - erf(-e_max - 2.0))
    )
    assert abs(right - exact) <= 1e-10


def test_symmetry_defect_boundary_respecting():
    m = 1.0
    grid = grids.build_grid(1e-4, 16.0, 1024, 4)
    fn = lambda E: (E - m) * np.exp(-(E - m))
    dfn = lambda E: np.exp(-(E - m)) - (E - m) * np.exp(-(E - m))
    g = grids.energy_function_on_branch(grid, m, 1, fn, dfn)
    assert abs(grids.symmetry_defect(g, g)) <= 1e-8


def test_boundary_condition_gate():
    m = 1.0
    grid = grids.build_grid(1e-3, 16.0, 256, 4)
    g = grids.energy_function_on_branch(grid, m, 1, lambda E: np.exp(-(E - m)))
    with pytest.raises(ValueError, match="boundary condition"):
        grids.apply_toa_energy(g)


def test_energy_rep_translation_response():
    # g(E) = e^{i E t0} bump(E): <g|T g>/||g||^2 = t0 exactly for a real bump
    m, t0, center, width = 1.0, 3.0, 5.0, 0.6
    grid = grids.build_grid(1e-4, 16.0, 1024, 4)

    def bump(E):
        return np.exp(-((E - center) ** 2) / (2 * width**2))

    fn = lambda E: np.exp(1j * E * t0) * bump(E)
    dfn = lambda E: (1j * t0 - (E - center) / width**2) * fn(E)
    g = grids.energy_function_on_branch(grid, m, 1, fn, dfn)
    tg = grids.apply_toa_energy(g)
    expval = grids.energy_inner_product(g, tg) / g.norm_sq()
    assert abs(expval - t0) <= 1e-8


def test_energy_rep_fd_derivative_close_to_analytic():
    m, t0, center, width = 1.0, 1.0, 5.0, 0.6
    grid = grids.build_grid(1e-4, 16.0, 1024, 4)
    fn = lambda E: np.exp(1j * E * t0) * np.exp(-((E - center) ** 2) / (2 * width**2))
    dfn = lambda E: (1j * t0 - (E - center) / width**2) * fn(E)
    g_an = grids.energy_function_on_branch(grid, m, 1, fn, dfn)
    g_fd = grids.energy_function_on_branch(grid, m, 1, fn)
    t_an = grids.apply_toa_energy(g_an).values
    t_fd = grids.apply_toa_energy(g_fd).values
    assert np.max(np.abs(t_an - t_fd)) <= 1e-5
