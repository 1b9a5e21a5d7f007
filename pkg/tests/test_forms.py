import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from spacetime_em.errors import DegenerateInputError, NumericError
from spacetime_em.forms import (
    NEGATIVE, POSITIVE, ImpairForm, LinearChart, PairForm, VolumeElement, axion_convert,
    coframe_orientation, impair_hodge, impair_hodge_imp, integrate_in_chart, integrate_top_form,
    orientation_scalar, pair_hodge, pair_hodge_inverse, transform_components,
)
from spacetime_em.kernel import G5, Multivector, gamma, outer, scalar_product

from conftest import coeff_arrays, grades, homogeneous

G0 = PairForm(gamma(0), 1)
G01 = PairForm(outer(gamma(0), gamma(1)), 2)
G23 = PairForm(outer(gamma(2), gamma(3)), 2)
G123 = PairForm(outer(outer(gamma(1), gamma(2)), gamma(3)), 3)


def lorentzian_double_star_sign(p):
    # textbook value of star-star on p-forms in 4D with one negative det factor
    return (-1) ** (p * (4 - p)) * -1


def test_pair_form_validation():
    with pytest.raises(ValueError):
        PairForm(gamma(0) + G5, 1)
    with pytest.raises(ValueError):
        PairForm(gamma(0), 5)
    assert PairForm.infer(G5).degree == 4


@pytest.mark.parametrize("omega,tau,expected", [
    (PairForm(G5, 4), POSITIVE, 1),
    (PairForm(-G5, 4), POSITIVE, -1),
    (PairForm(2 * G5, 4), NEGATIVE, -1),
])
def test_coframe_orientation(omega, tau, expected):
    assert coframe_orientation(omega, tau) == expected


def test_coframe_orientation_zero_is_degenerate():
    with pytest.raises(DegenerateInputError):
        coframe_orientation(PairForm(Multivector.zero(), 4))


@pytest.mark.parametrize("a,tau,expected", [
    (G0, POSITIVE, G123),
    (G01, POSITIVE, -G23),
    (PairForm(Multivector.scalar(1.0), 0), NEGATIVE, -G5),
])
def test_pair_hodge_examples(a, tau, expected):
    assert pair_hodge(a, tau) == expected


@pytest.mark.parametrize("b,tau,expected", [
    (G123, POSITIVE, G0),
    (PairForm(-G5, 4), NEGATIVE, Multivector.scalar(1.0)),
])
def test_pair_hodge_inverse_examples(b, tau, expected):
    assert pair_hodge_inverse(b, tau) == expected


@pytest.mark.parametrize("p", range(5))
def test_double_star_matches_textbook_sign(rng, p):
    a = PairForm(homogeneous(rng.normal(size=16), p), p)
    assert pair_hodge(pair_hodge(a)).isclose(lorentzian_double_star_sign(p) * a, atol=1e-14)


@settings(max_examples=200, deadline=None)
@given(coeff_arrays, coeff_arrays, grades, st.sampled_from([POSITIVE, NEGATIVE]))
def test_hodge_inner_product_characterization(ca, cb, p, tau):
    a = PairForm(homogeneous(ca, p), p)
    b = PairForm(homogeneous(cb, p), p)
    lhs = outer(b, pair_hodge(a, tau))
    rhs = scalar_product(b, a) * tau.pair.value
    assert lhs.isclose(rhs, atol=1e-12 * max(1.0, np.abs(ca).max() * np.abs(cb).max()))


@settings(max_examples=100, deadline=None)
@given(coeff_arrays, grades)
def test_hodge_flip_and_inverse_exact(c, p):
    a = PairForm(homogeneous(c, p), p)
    assert pair_hodge(a, NEGATIVE) == -pair_hodge(a, POSITIVE)
    for tau in (POSITIVE, NEGATIVE):
        assert pair_hodge_inverse(pair_hodge(a, tau), tau) == a


def test_volume_element():
    for tau in (POSITIVE, NEGATIVE):
        assert tau.pair * tau.pair == Multivector.scalar(-1.0)
        assert tau.impair.canonical == PairForm(G5, 4)
        assert tau.impair.in_chart(-1).representative.coeffs[15] == -1.0
    with pytest.raises(ValueError):
        VolumeElement(0)


def test_impair_equivalence():
    rep = PairForm(gamma(1), 1)
    assert ImpairForm(rep, 1) == ImpairForm(-rep, -1)
    assert ImpairForm(rep, 1) != ImpairForm(rep, -1)
    assert ImpairForm(rep, -1).in_chart(1) == ImpairForm(rep, -1)
    with pytest.raises(ValueError):
        ImpairForm(rep, 0)


@pytest.mark.parametrize("a", [G0, G01, PairForm(Multivector.scalar(2.0), 0)])
def test_impair_hodge_representatives(a):
    positive = impair_hodge(a, POSITIVE, 1)
    assert positive.representative == pair_hodge(a, POSITIVE)
    negative = impair_hodge(a, POSITIVE, -1)
    assert negative.representative == -positive.representative
    assert negative == positive
    # the impair star ignores the spacetime orientation
    assert impair_hodge(a, NEGATIVE, 1) == positive


@pytest.mark.parametrize("p", range(5))
@pytest.mark.parametrize("o", [1, -1])
def test_impair_double_star(rng, p, o):
    a = PairForm(homogeneous(rng.normal(size=16), p), p)
    back = impair_hodge_imp(impair_hodge(a, POSITIVE, o))
    assert back.isclose(lorentzian_double_star_sign(p) * a, atol=1e-14)
    assert impair_hodge_imp(impair_hodge(a, POSITIVE, o), chart_orientation=-o).isclose(back, atol=0)


def test_impair_double_star_on_gamma0():
    assert impair_hodge_imp(impair_hodge(G0)) == G0


@pytest.mark.parametrize("tau,expected", [(POSITIVE, 1.0), (NEGATIVE, -1.0)])
def test_orientation_scalar(tau, expected):
    eps = orientation_scalar(tau)
    assert eps.canonical.scalar_part == expected


def test_axion_convert_examples():
    J = PairForm(gamma(0) + 2 * gamma(3), 1)
    eps = orientation_scalar(POSITIVE)
    assert axion_convert(ImpairForm(J, 1), eps) == J
    assert axion_convert(ImpairForm(-J, -1), eps) == J
    for tau in (POSITIVE, NEGATIVE):
        assert axion_convert(tau.impair, orientation_scalar(tau)) == tau.pair


@pytest.mark.parametrize("parity,expected", [("pair", -1.0), ("impair", 1.0)])
def test_volume_component_under_reflection(parity, expected):
    chart = LinearChart(np.diag([-1.0, 1.0, 1.0, 1.0]))
    assert transform_components(G5, chart, parity).coeffs[15] == expected


def test_identity_chart(rng):
    a = Multivector(rng.normal(size=16))
    for parity in ("pair", "impair"):
        assert transform_components(a, LinearChart(np.eye(4)), parity).isclose(a, atol=0)


def test_transform_one_and_two_forms_against_tensor_law(rng):
    lam = rng.normal(size=(4, 4))
    chart = LinearChart(lam)
    a = rng.normal(size=4)
    one = transform_components(Multivector.vector(a), chart).vector_components()
    assert np.allclose(one, lam.T @ a, atol=1e-12)
    F = rng.normal(size=(4, 4))
    F = F - F.T
    c = np.zeros(16)
    for mu in range(4):
        for nu in range(mu + 1, 4):
            c[(1 << mu) | (1 << nu)] = F[mu, nu]
    out = transform_components(c, chart).coeffs
    Fp = lam.T @ F @ lam
    for mu in range(4):
        for nu in range(mu + 1, 4):
            assert np.isclose(out[(1 << mu) | (1 << nu)], Fp[mu, nu], atol=1e-12)


@pytest.mark.parametrize("p", range(5))
def test_impair_components_carry_det_sign(rng, p):
    chart = LinearChart(rng.normal(size=(4, 4)))
    a = homogeneous(rng.normal(size=16), p)
    pair = transform_components(a, chart, "pair")
    imp = transform_components(a, chart, "impair")
    assert imp.isclose(chart.det_sign * pair, atol=0)


def test_functoriality(rng):
    a = Multivector(rng.normal(size=16))
    l1 = LinearChart(rng.normal(size=(4, 4)))
    l2 = LinearChart(rng.normal(size=(4, 4)))
    # l1 @ l2 applies the change l2 first, then l1
    composed = transform_components(a, l1 @ l2)
    stepwise = transform_components(transform_components(a, l2), l1)
    assert composed.isclose(stepwise, atol=1e-10)
    assert np.allclose((l1 @ l2).lam, l2.lam @ l1.lam)
    assert np.allclose(l1.then(l2).lam, l1.lam @ l2.lam)


def test_singular_chart_rejected():
    with pytest.raises(ValueError):
        LinearChart(np.diag([1.0, 1.0, 0.0, 1.0]))
    with pytest.raises(NumericError):
        LinearChart(np.full((4, 4), np.inf))


@pytest.mark.parametrize("orientation", [1, -1])
@pytest.mark.parametrize("parity", ["pair", "impair"])
def test_unit_box_volume(orientation, parity):
    value = integrate_top_form(lambda x: np.ones(len(x)), [(0, 1)] * 4, orientation, parity)
    expected = orientation if parity == "pair" else 1.0
    assert abs(value - expected) < 1e-12


def test_midpoint_rule_converges_quadratically():
    def density(x):
        return np.prod(np.cos(x), axis=1)

    exact = np.sin(1.0) ** 4
    err = [abs(integrate_top_form(density, [(0, 1)] * 4, n=n) - exact) for n in (4, 8)]
    assert 3.5 < err[0] / err[1] < 4.5


def test_non_finite_density_rejected():
    with pytest.raises(NumericError):
        integrate_top_form(lambda x: np.full(len(x), np.nan), [(0, 1)] * 4, n=2)


def gaussian(x):
    return np.exp(-np.sum(x ** 2, axis=1))


def test_impair_integral_invariant_under_reparameterization(rng):
    # the Gaussian integrates to pi^2; a box of half-width 6 in x' captures it after scaling
    for _ in range(5):
        q, _ = np.linalg.qr(rng.normal(size=(4, 4)))
        lam = q * rng.uniform(0.7, 1.3, size=4)
        chart = LinearChart(lam)
        box = [(-6 / 0.7, 6 / 0.7)] * 4
        imp = integrate_in_chart(gaussian, chart, box, "impair", n=48)
        pair = integrate_in_chart(gaussian, chart, box, "pair", n=48)
        assert abs(imp - np.pi ** 2) < 1e-6
        assert abs(pair - chart.det_sign * np.pi ** 2) < 1e-6
