"""Smoke tests for the qnl python module; runnable directly or under pytest."""

import math

import numpy as np

import qnl


def test_minimizers():
    em = qnl.eta_minimizer_perturbative()
    assert abs(em - (7 + math.sqrt(33)) / 16) < 1e-8
    assert abs(qnl.eta_minimizer_asymptotic() - 0.90335) < 1e-4


def test_shape_factor():
    assert qnl.eta_shape_factor(0.25) == 0.0
    assert abs(qnl.eta_shape_factor(0.5) + 0.5) < 1e-14


def test_collapse_energy():
    params = qnl.ModelParams(eta=0.5, L=0.5)  # escale = 1
    g, energy = qnl.collapse_energy(0.5, params)
    assert abs(energy - 16 * math.log(2)) < 1e-12
    assert abs(g - energy) < 1e-12


def test_grid_and_fields():
    params = qnl.ModelParams(eta=0.5, L=1.0)
    grid = qnl.make_grid(6.0, 0.5, 1.0, 1e-3)
    assert grid.shift_cells == 500
    assert grid.shift_length == 0.5
    x = grid.x()
    p = np.exp(-(x**2))
    q = qnl.q1nl(grid, p, params)
    mid = np.argmin(np.abs(x))
    assert abs(q[mid] - 0.4688310427) < 1e-6
    qb = qnl.bohm_potential(grid, p, params)
    assert abs(qb[mid] - 0.5) < 1e-5


def test_lattice_steps():
    p1 = qnl.step_forward_eta1(1.0, 1.0, 1.0)
    assert abs(p1 - math.exp(-1)) < 1e-14
    p2 = qnl.step_forward_eta1(1.0, p1, 1.0)
    assert abs(p2 - 0.0242756418) < 1e-8
    assert qnl.step_backward_eta1(1.0, 1.0, 1.0) is None
    traj = qnl.classify_trajectory(1.0, 1.0, 1.0, 1.0, window=200)
    assert traj["forward"] == "BoundedDecaying"
    assert traj["backward"] == "TruncatedAt"
    assert traj["truncation_index"] == -1


def test_variational_linear_limit():
    params = qnl.ModelParams.from_eps(0.5, 0.01)
    point = qnl.minimize_over_c(0, params)
    assert point.converged
    assert abs(point.c_star - 1.0) < 0.05
    assert abs(point.e_star - 0.5) < 0.005


def test_evolve_norm():
    params = qnl.ModelParams.from_eps(0.5, 1.0)
    grid = qnl.make_grid(8.0, params.eta, params.L, 0.05, qnl.Boundary.Periodic)
    x = grid.x()
    psi0 = np.exp(-(x**2) / 2).astype(complex)
    psi0 /= np.sqrt(np.sum(np.abs(psi0) ** 2) * grid.dx)
    psi, records = qnl.evolve(grid, psi0, "harmonic", params, 1e-3, 200, record_stride=50)
    for _, _, norm, *_ in records:
        assert abs(norm - 1.0) < 1e-10


def main():
    failures = 0
    for name, fn in sorted(globals().items()):
        if name.startswith("test_") and callable(fn):
            try:
                fn()
                print(f"PASS {name}")
            except AssertionError as exc:
                print(f"FAIL {name}: {exc}")
                failures += 1
    raise SystemExit(failures)


if __name__ == "__main__":
    main()
