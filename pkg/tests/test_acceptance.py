"""Acceptance criteria, one test each. Run with ``pytest tests/test_acceptance.py -s`` to see the verdicts."""

import time

import numpy as np
import pytest

from spacetime_em.calculus import StencilConfig
from spacetime_em.electrodynamics import (
    EPS6, ConstitutiveTensor, assemble_F, blob_field, boosted_coulomb_field, constitutive_decompose,
    coulomb_field, decomposition_projectors, excitation_form, field_from_EB, gaussian_blob,
    maxwell_residual, plane_wave, point_charges, retarded_field, split_F, uniform_field,
)
from spacetime_em.forms import NEGATIVE, POSITIVE, LinearChart, PairForm, pair_hodge, transform_components
from spacetime_em.kernel import (
    ETA, G5, GRADE, Multivector, blade_product_naive, blade_product_table, gamma, outer, scalar_product,
)
from spacetime_em.mechanics import (
    ChargedParticle, divergence_check, lorentz_push, orientation_flip_experiment, stress_energy,
    stress_energy_components,
)
from spacetime_em.pauli import engineering_residuals, flip_spatial_orientation, pauli_graded_components


def verdict(n, title, passed, detail, elapsed, budget):
    ok = bool(passed) and elapsed < budget
    print(f"\n{'PASS' if ok else 'FAIL'} criterion {n}: {title}: {detail}; {elapsed:.2f} s (budget {budget} s)")
    assert passed, detail
    assert elapsed < budget, f"runtime {elapsed:.2f} s exceeds {budget} s"


@pytest.fixture
def gen():
    return np.random.default_rng(2024)


def test_criterion_01_kernel_algebra():
    t0 = time.perf_counter()
    index, sign = blade_product_table()
    mismatches = sum((int(index[a, b]), int(sign[a, b])) != tuple(blade_product_naive(a, b))
                     for a in range(16) for b in range(16))
    anti = max(float((gamma(m) * gamma(n) + gamma(n) * gamma(m) - 2 * ETA[m, n]).norm())
               for m in range(4) for n in range(4))
    g5 = float((G5 * G5 + 1).norm())
    elapsed = time.perf_counter() - t0
    verdict(1, "kernel algebra", mismatches == 0 and anti == 0 and g5 == 0,
            f"table mismatches {mismatches}, anticommutator error {anti}, (g5)^2+1 = {g5}", elapsed, 1)


def test_criterion_02_hodge_equivalence(gen):
    t0 = time.perf_counter()
    worst = 0.0
    flip = 0.0
    per_grade = 200
    for p in range(5):
        a = PairForm(Multivector(np.where(GRADE == p, gen.normal(size=(per_grade, 16)), 0.0)), p)
        b = Multivector(np.where(GRADE == p, gen.normal(size=(per_grade, 16)), 0.0))
        for tau in (POSITIVE, NEGATIVE):
            star = pair_hodge(a, tau)
            lhs = outer(b, star).coeffs
            rhs = scalar_product(b, a)[:, None] * tau.pair.value.coeffs
            worst = max(worst, float(np.abs(lhs - rhs).max()))
        flip = max(flip, float(np.abs(pair_hodge(a, NEGATIVE).coeffs + pair_hodge(a, POSITIVE).coeffs).max()))
    elapsed = time.perf_counter() - t0
    verdict(2, "Hodge equivalence", worst <= 1e-12 and flip == 0,
            f"1000 pairs, max |B^*A - (B.A)tau| = {worst:.2e}, |*_(-tau) + *_tau| = {flip}", elapsed, 1)


def _tensor_law(c, lam, p):
    # independent oracle: transform antisymmetric component arrays index by index
    if p == 1:
        return lam.T @ c
    return lam.T @ c @ lam


def test_criterion_03_transformation_laws(gen):
    t0 = time.perf_counter()
    worst = 0.0
    for _ in range(100):
        lam = gen.normal(size=(4, 4))
        chart = LinearChart(lam)
        det = np.linalg.det(lam)
        pair_vol = transform_components(G5, chart, "pair").coeffs[15]
        imp_vol = transform_components(G5, chart, "impair").coeffs[15]
        worst = max(worst, abs(pair_vol - det), abs(imp_vol - abs(det)))
        a = gen.normal(size=4)
        imp1 = transform_components(Multivector.vector(a), chart, "impair").vector_components()
        worst = max(worst, np.abs(imp1 - np.sign(det) * _tensor_law(a, lam, 1)).max())
        F = gen.normal(size=(4, 4))
        F = F - F.T
        c = np.zeros(16)
        masks = [(m, n) for m in range(4) for n in range(m + 1, 4)]
        for m, n in masks:
            c[(1 << m) | (1 << n)] = F[m, n]
        imp2 = transform_components(c, chart, "impair").coeffs
        Fp = np.sign(det) * _tensor_law(F, lam, 2)
        worst = max(worst, max(abs(imp2[(1 << m) | (1 << n)] - Fp[m, n]) for m, n in masks))
    elapsed = time.perf_counter() - t0
    verdict(3, "transformation laws", worst <= 1e-10, f"100 charts, max error {worst:.2e}", elapsed, 1)


def _off_source_point(gen):
    direction = gen.normal(size=3)
    direction /= np.linalg.norm(direction)
    return np.concatenate([[gen.uniform(-1, 1)], gen.uniform(1, 3) * direction])


def test_criterion_04_three_formulations(gen):
    t0 = time.perf_counter()
    worst = 0.0
    disagreement = 0.0
    cases = [(coulomb_field(), point_charges([1.0], [[0, 0, 0]])), (plane_wave(), None)]
    for field, J in cases:
        for _ in range(100):
            r = maxwell_residual(field, J, _off_source_point(gen), POSITIVE, StencilConfig(1e-3))
            worst = max(worst, r.max_norm)
            split = (r.clifford - (r.homogeneous - r.inhomogeneous)).norm()
            disagreement = max(disagreement, split, r.impair_mismatch)
    elapsed = time.perf_counter() - t0
    verdict(4, "three-formulation Maxwell agreement", worst <= 1e-6 and disagreement <= 1e-14,
            f"200 points, max residual {worst:.2e}, max disagreement {disagreement:.2e}", elapsed, 10)


def test_criterion_05_stress_energy(gen):
    t0 = time.perf_counter()
    E, B = gen.normal(size=(1000, 3)), gen.normal(size=(1000, 3))
    F = assemble_F(E, B)
    se = stress_energy(F)
    T = se.components
    routes = np.abs(T - stress_energy_components(F)).max()
    energy = np.abs(T[:, 0, 0] - 0.5 * (np.sum(E * E, 1) + np.sum(B * B, 1))).max()
    sym = np.abs(T - np.swapaxes(T, -1, -2)).max()
    trace = np.abs(se.trace).max()
    elapsed = time.perf_counter() - t0
    verdict(5, "stress-energy", max(routes, energy, sym, trace) <= 1e-12,
            f"routes {routes:.1e}, T00 {energy:.1e}, symmetry {sym:.1e}, trace {trace:.1e}", elapsed, 1)


def test_criterion_06_force_conservation():
    t0 = time.perf_counter()
    cases = [
        (plane_wave(), None, [0.1, 0.2, 0.3, 0.4]),
        (coulomb_field(), None, [0.0, 1.0, 0.5, 0.3]),
        (boosted_coulomb_field(1.0, [0.3, 0.0, 0.0]), None, [0.2, 1.0, 1.0, 0.0]),
        (blob_field(1.0, 0.5), gaussian_blob(1.0, 0.5), [0.0, 0.3, 0.2, 0.1]),
    ]
    worst = max(divergence_check(f, J, x, StencilConfig(1e-3)) for f, J, x in cases)
    x = [0.0, 0.8, 0.3, -0.2]
    coarse = divergence_check(coulomb_field(), None, x, StencilConfig(1e-2))
    fine = divergence_check(coulomb_field(), None, x, StencilConfig(5e-3))
    ratio = coarse / fine
    elapsed = time.perf_counter() - t0
    verdict(6, "force density and conservation", worst <= 1e-6 and 3.5 < ratio < 4.5,
            f"max residual {worst:.2e}, error ratio for h/2 = {ratio:.3f}", elapsed, 10)


def test_criterion_07_dynamics_oracles():
    t0 = time.perf_counter()
    q, bz, p0 = 1.0, 1.0, 1.0
    particle = ChargedParticle.from_state(1.0, q, momentum=[p0, 0, 0])
    wl = lorentz_push(particle, uniform_field(B=[0, 0, bz]), 2 * np.pi, 2 * np.pi / 2000)
    radius = p0 / (q * bz)
    gyro = np.abs(np.linalg.norm(wl.x[:, 1:] - [0, -radius, 0], axis=1) - radius).max()
    a = 0.5
    wl = lorentz_push(ChargedParticle.from_state(1.0, 1.0), uniform_field(E=[a, 0, 0]), 2.0, 1e-3)
    hyper = max(np.abs(wl.x[:, 1] - (np.cosh(a * wl.s) - 1) / a).max(),
                np.abs(wl.x[:, 0] - np.sinh(a * wl.s) / a).max())
    elapsed = time.perf_counter() - t0
    verdict(7, "dynamics oracles", gyro <= 1e-6 and hyper <= 1e-6,
            f"gyroradius error {gyro:.2e}, hyperbolic error {hyper:.2e}", elapsed, 10)


def test_criterion_08_orientation_flip():
    t0 = time.perf_counter()
    particle = ChargedParticle.from_state(1.0, 1.0, momentum=[1.0, 0, 0])
    rep = orientation_flip_experiment(particle, uniform_field(B=[0, 0, 1]), 2 * np.pi, 2 * np.pi / 2000)
    charges = (rep.charge_pair, rep.charge_pair_flipped, rep.charge_impair, rep.charge_impair_flipped)
    ok = rep.max_deviation <= 1e-12 and np.allclose(charges, [1, -1, 1, 1], atol=1e-6)
    elapsed = time.perf_counter() - t0
    verdict(8, "orientation-flip knockdown", ok,
            f"trajectory deviation {rep.max_deviation:.1e}, pair {charges[0]:+.6f}/{charges[1]:+.6f}, "
            f"impair {charges[2]:+.6f}/{charges[3]:+.6f}", elapsed, 10)


def _smooth_config(gen):
    a, b, c = gen.normal(size=(3, 4)), gen.normal(size=(3, 4)), 0.3 * gen.normal(size=(3, 4))
    r0, jv = gen.normal(), gen.normal(size=3)
    E = lambda x: a @ x + c @ (x * x)  # noqa: E731
    B = lambda x: b @ x + np.sin(c @ x)  # noqa: E731
    rho = lambda x: r0 + x[1] * x[2]  # noqa: E731
    j = lambda x: jv * np.cos(x[0])  # noqa: E731
    return E, B, rho, j


def test_criterion_09_engineering_split(gen):
    t0 = time.perf_counter()
    stencil = StencilConfig(1e-3, 4)
    worst = 0.0
    for i_sign in (1, -1):
        for _ in range(10):
            E, B, rho, j = _smooth_config(gen)
            x = gen.normal(size=4)
            J = lambda y, rho=rho, j=j: Multivector.vector(np.concatenate([[rho(y)], -j(y)]))  # noqa: E731
            eng = engineering_residuals(E, lambda y, B=B: i_sign * B(y), rho, j, x, stencil, i_sign)
            graded = pauli_graded_components(field_from_EB(E, B), J, x, stencil, i_sign)
            worst = max(worst, *(np.abs(np.subtract(g, e)).max() for g, e in zip(graded, eng)))
    flip = flip_spatial_orientation()
    circ_ok = np.allclose(flip.circulation, [1.0, -1.0], atol=1e-9)
    ok = worst <= 1e-10 and circ_ok and flip.residual_deviation <= 1e-12 and flip.force_deviation == 0
    elapsed = time.perf_counter() - t0
    verdict(9, "engineering split", ok,
            f"graded vs vector residuals {worst:.1e}, circulation {flip.circulation[0]:+.6f}/"
            f"{flip.circulation[1]:+.6f}, residual change {flip.residual_deviation:.1e}, "
            f"force change {flip.force_deviation:.1e}", elapsed, 10)


def test_criterion_10_retarded_solver():
    t0 = time.perf_counter()
    static = gaussian_blob(1.0, 1.0)
    worst_static = 0.0
    for x in ([0, 5, 0, 0], [0, 0, -3, 4], [2, 3, 3, 3]):
        E, _ = split_F(retarded_field(static, x, 48))
        ref, _ = split_F(coulomb_field()(np.asarray(x, float)))
        worst_static = max(worst_static, np.linalg.norm(E - ref) / np.linalg.norm(ref))
    v = np.array([0.0, 0.0, 0.5])
    moving = gaussian_blob(1.0, 1.0, velocity=v)
    worst_moving = 0.0
    for x in ([0, 5, 0, 0], [0, 3, 0, 4], [1.0, 0, 5, 0]):
        ref = boosted_coulomb_field(1.0, v)(np.asarray(x, float))
        worst_moving = max(worst_moving, (retarded_field(moving, x, 48) - ref).norm() / ref.norm())
    elapsed = time.perf_counter() - t0
    verdict(10, "retarded solver", worst_static <= 0.005 and worst_moving <= 0.01,
            f"static relative error {worst_static:.2e}, moving relative error {worst_moving:.2e}", elapsed, 120)


def test_criterion_11_constitutive(gen):
    t0 = time.perf_counter()
    dims = [int(np.linalg.matrix_rank(P)) for P in decomposition_projectors()]
    chi = gen.normal(size=(6, 6))
    p, s, a = constitutive_decompose(chi)
    resum = np.abs(p + s + a * EPS6 - chi).max()
    vac = ConstitutiveTensor.vacuum()
    hodge = 0.0
    for _ in range(100):
        F = assemble_F(gen.normal(size=3), gen.normal(size=3))
        hodge = max(hodge, float((excitation_form(vac, F) - pair_hodge(F)).norm()))
    elapsed = time.perf_counter() - t0
    verdict(11, "constitutive decomposition", dims == [20, 15, 1] and resum <= 1e-14 and hodge <= 1e-12,
            f"dimensions {dims}, re-sum error {resum:.1e}, vacuum vs Hodge {hodge:.1e}", elapsed, 1)
