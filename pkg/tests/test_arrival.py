"""Wave-packet construction, evolution, arrival distributions, flux oracle."""
import numpy as np
import pytest
from scipy.integrate import trapezoid

from dirac_toa import arrival, grids

CLASSICAL_PEAK = 10.0 * np.sqrt(5.0) / 2.0  # -x0 E0/p0 for m=1, p0=2, x0=-10
WINDOW = (-20.0, 43.0)
N_T = 1261


@pytest.fixture(scope="module")
def grid512():
    return grids.build_grid(1e-3, 10.0, 512, 4)


@pytest.fixture(scope="module")
def benchmark_packet(grid512):
    spec = arrival.PacketSpec(m=1.0, x0=-10.0, p0=2.0, sigma_p=0.1)
    return arrival.build_packet(spec, grid512)


def test_packet_spec_validation():
    with pytest.raises(ValueError):
        arrival.PacketSpec(m=1.0, x0=0.0, p0=2.0, sigma_p=-0.1)
    with pytest.raises(ValueError):
        arrival.PacketSpec(m=1.0, x0=0.0, p0=2.0, sigma_p=0.1, c_plus=1.0, c_minus=1.0)
    with pytest.warns(UserWarning, match="3 sigma_p"):
        arrival.PacketSpec(m=1.0, x0=0.0, p0=0.2, sigma_p=0.1)


def test_build_packet_norm_and_coverage(grid512, benchmark_packet):
    assert abs(benchmark_packet.norm() - 1.0) <= 1e-10
    spec = arrival.PacketSpec(m=1.0, x0=0.0, p0=9.9, sigma_p=0.5)
    with pytest.raises(ValueError, match="grid covers"):
        arrival.build_packet(spec, grid512)


def test_packet_energy_expectation(grid512):
    # quadrature oracle: <H> must reproduce the Gaussian-weighted branch energy
    m, p0, sigma = 1.0, 2.0, 0.1
    p = grid512.nodes
    E = np.hypot(p, m)
    g2 = np.abs(
        (2 * np.pi * sigma**2) ** -0.25 * np.exp(-((p - p0) ** 2) / (4 * sigma**2))
    ) ** 2
    g2 = g2 / np.sum(grid512.weights * g2)
    expect_plus = float(np.sum(grid512.weights * g2 * E))

    for c_plus, c_minus, sign in ((1.0, 0.0, 1.0), (0.0, 1.0, -1.0)):
        spec = arrival.PacketSpec(m=m, x0=-10.0, p0=p0, sigma_p=sigma, c_plus=c_plus, c_minus=c_minus)
        f = arrival.build_packet(spec, grid512)
        hf = grids.apply_hamiltonian(f, m)
        e_mean = grids.inner_product(f, hf).real
        assert abs(e_mean - sign * expect_plus) <= 1e-9
        assert sign * e_mean > m


def test_mixed_packet_norm(grid512):
    c = 1.0 / np.sqrt(2.0)
    spec = arrival.PacketSpec(m=1.0, x0=-10.0, p0=2.0, sigma_p=0.1, c_plus=c, c_minus=c)
    f = arrival.build_packet(spec, grid512)
    assert abs(f.norm() - 1.0) <= 1e-10
    assert abs(f.meta["raw_norm"] - 1.0) <= 1e-6  # branch orthogonality


def test_evolve_identity_and_unitarity(grid512, benchmark_packet):
    f0 = arrival.evolve(benchmark_packet, 1.0, 0.0)
    assert np.max(np.abs(f0.values - benchmark_packet.values)) <= 1e-12
    for t in (0.5, 3.0, 20.0):
        ft = arrival.evolve(benchmark_packet, 1.0, t)
        assert abs(ft.norm() - benchmark_packet.norm()) <= 1e-12


def test_group_velocity(grid512):
    m, t = 1.0, 2.0
    spec = arrival.PacketSpec(m=m, x0=-10.0, p0=2.0, sigma_p=0.5)
    f = arrival.build_packet(spec, grid512)
    p = grid512.nodes
    dens = np.sum(np.abs(f.values) ** 2, axis=1)
    v_mean = float(np.sum(grid512.weights * dens * p / np.hypot(p, m)))
    xs = np.linspace(-16.0, -2.0, 701)

    def centroid(time):
        prof = arrival.position_profile(f, m, time, xs)
        rho = np.sum(np.abs(prof) ** 2, axis=1)
        return float(trapezoid(xs * rho, xs) / trapezoid(rho, xs))

    assert abs((centroid(t) - centroid(0.0)) - t * v_mean) <= 1e-2


def test_arrival_distribution_decomposition(grid512):
    c = 1.0 / np.sqrt(2.0)
    spec = arrival.PacketSpec(m=1.0, x0=-10.0, p0=2.0, sigma_p=0.1, c_plus=c, c_minus=c)
    f = arrival.build_packet(spec, grid512)
    dist = arrival.arrival_distribution(f, 1.0, WINDOW, N_T)
    total = dist.Pi_pos + dist.Pi_neg + dist.Pi_interf
    assert np.max(np.abs(dist.Pi_total - total)) <= 1e-12
    assert np.all(dist.Pi_pos >= 0.0) and np.all(dist.Pi_neg >= 0.0)
    assert float(trapezoid(dist.Pi_total, dist.t)) == pytest.approx(1.0, abs=1e-12)
    # both branches populated: interference shows up somewhere
    assert np.max(np.abs(dist.Pi_interf)) > 1e-8


def test_interference_vanishes_single_branch(grid512, benchmark_packet):
    dist = arrival.arrival_distribution(benchmark_packet, 1.0, WINDOW, N_T)
    assert np.max(np.abs(dist.Pi_interf)) <= 1e-12
    assert np.max(dist.Pi_neg) <= 1e-12


def test_arrival_peak_benchmark(grid512, benchmark_packet):
    dist = arrival.arrival_distribution(benchmark_packet, 1.0, WINDOW, N_T)
    assert abs(dist.peak_time - CLASSICAL_PEAK) <= 0.5
    assert dist.captured_mass >= 0.99
    assert not dist.warnings


def test_antiparticle_branch_reversed_peak(grid512):
    spec = arrival.PacketSpec(m=1.0, x0=-10.0, p0=2.0, sigma_p=0.1, c_plus=0.0, c_minus=1.0)
    f = arrival.build_packet(spec, grid512)
    dist = arrival.arrival_distribution(f, 1.0, (-43.0, 20.0), N_T)
    assert abs(dist.peak_time - (-CLASSICAL_PEAK)) <= 0.5
    assert dist.peak_time < 0.0


def test_mirror_symmetry(grid512):
    a = arrival.build_packet(arrival.PacketSpec(m=1.0, x0=-10.0, p0=2.0, sigma_p=0.1), grid512)
    b = arrival.build_packet(arrival.PacketSpec(m=1.0, x0=10.0, p0=-2.0, sigma_p=0.1), grid512)
    da = arrival.arrival_distribution(a, 1.0, WINDOW, N_T)
    db = arrival.arrival_distribution(b, 1.0, WINDOW, N_T)
    assert np.max(np.abs(da.Pi_total - db.Pi_total)) <= 1e-12


def test_narrow_window_warning(grid512, benchmark_packet):
    dist = arrival.arrival_distribution(benchmark_packet, 1.0, (10.0, 12.0), 101)
    assert dist.captured_mass < 0.99
    assert dist.warnings


def test_flux_oracle_agreement(grid512, benchmark_packet):
    dist = arrival.arrival_distribution(benchmark_packet, 1.0, WINDOW, N_T)
    ts, J = arrival.flux_at_origin(benchmark_packet, 1.0, WINDOW, N_T)
    flux_peak = arrival.peak_location(ts, J)
    assert abs(flux_peak - CLASSICAL_PEAK) <= 0.5
    assert abs(flux_peak - dist.peak_time) <= 0.5
    assert abs(float(trapezoid(J, ts)) - 1.0) <= 1e-2
    # single positive hump for a forward packet
    assert J.max() > 0.0
    assert J.min() >= -1e-6 * J.max()


def test_flux_noncrossing_packet(grid512):
    # left-mover starting left of the origin; sigma_p = 0.3 keeps the spatial
    # tail at the origin below the tolerance from the start
    spec = arrival.PacketSpec(m=1.0, x0=-10.0, p0=-2.0, sigma_p=0.3)
    f = arrival.build_packet(spec, grid512)
    _, J = arrival.flux_at_origin(f, 1.0, (0.0, 30.0), 301)
    assert np.max(np.abs(J)) <= 1e-6


def test_parallel_matches_serial(grid512, benchmark_packet):
    d1 = arrival.arrival_distribution(benchmark_packet, 1.0, (0.0, 20.0), 501, parallel=1)
    d4 = arrival.arrival_distribution(benchmark_packet, 1.0, (0.0, 20.0), 501, parallel=4)
    assert np.max(np.abs(d1.Pi_total - d4.Pi_total)) <= 1e-15


def test_nonrelativistic_arrival_agreement():
    # p0/m = 0.01: the two constructions agree in L1 after normalization
    m, p0, sigma, x0 = 100.0, 1.0, 0.1, -1.0
    grid = grids.build_grid(0.1, 10.0, 512, 4)
    spec = arrival.PacketSpec(m=m, x0=x0, p0=p0, sigma_p=sigma)
    f = arrival.build_packet(spec, grid)
    t_star = -x0 * np.hypot(p0, m) / p0
    window = (t_star - 2500.0, t_star + 2500.0)
    rel = arrival.arrival_distribution(f, m, window, 1601)
    non = arrival.arrival_distribution_nonrel(f, m, window, 1601)
    assert arrival.l1_distance(rel, non) <= 0.05
    assert non.captured_mass >= 0.99


def test_l1_distance_mismatched_lattice(grid512, benchmark_packet):
    d1 = arrival.arrival_distribution(benchmark_packet, 1.0, (0.0, 20.0), 101)
    d2 = arrival.arrival_distribution(benchmark_packet, 1.0, (0.0, 20.0), 201)
    with pytest.raises(ValueError):
        arrival.l1_distance(d1, d2)
