"""Operator engine: Hamiltonian action, shift operators, commutators,
ladder operators and the explicit parameter-shift operators."""

from __future__ import annotations

import cmath
import math

import pytest

from dqm.families import (
    FAMILIES,
    FamilyId,
    ParamSet,
    eval_poly_recurrence,
    get_family,
)
from dqm.fixtures import fixture_names, fixture_params
from dqm.operators import (
    OperatorContext,
    SingularPointError,
    apply_backward_shift,
    apply_forward_shift,
    apply_ladder,
    apply_tilde_H,
    commutator_H_eta,
    ladder_action,
    lambda_shift_X,
    rodrigues_polynomial,
    sample_points,
)
from dqm.polynomials import EtaPolynomial, monomial


def all_fixtures():
    out = []
    for fid in FamilyId:
        fam = FAMILIES[fid]
        for name in fixture_names(fam):
            out.append((fam.spec.name, name))
    return out


def _const(family, p):
    fam = get_family(family)
    return EtaPolynomial((1.0,), fam.spec.id, p, 0)


# -------------------------------------------------------------- H-tilde

@pytest.mark.parametrize("family,name", all_fixtures())
def test_H_annihilates_constants(family, name):
    p = fixture_params(family, name)
    fam = get_family(family)
    for x in sample_points(fam, p, 5):
        assert abs(apply_tilde_H(_const(family, p), x)) <= 1e-12

@pytest.mark.parametrize("family,name", all_fixtures())
def test_eigen_equation(family, name):
    p = fixture_params(family, name)
    fam = get_family(family)
    xs = sample_points(fam, p, 10)
    for n in range(0, 9, 2):
        poly = eval_poly_recurrence(fam, p, n)
        e_n = fam.energy(p, n)
        for x in xs:
            target = e_n * poly.eval(fam.eta(x))
            got = apply_tilde_H(poly, x)
            assert abs(got - target) <= 1e-9 * (1 + abs(target))

def test_H_triangular_on_monomials():
    # H eta^n = E_n eta^n + lower orders: subtracting the top term leaves
    # something a degree-(n-1) interpolant reproduces
    import numpy as np

    p = fixture_params("askey-wilson")
    fam = get_family("askey-wilson")
    ctx = OperatorContext(fam, p)
    xs = sample_points(fam, p, 14)
    for n in (2, 5, 8):
        mono = monomial(n, fam.spec.id, p)
        etas = np.array([ctx.eta(x) for x in xs])
        rem = np.array(
            [apply_tilde_H(mono, x) - fam.energy(p, n) * ctx.eta(x) ** n for x in xs]
        )
        vander = np.vander(etas, n, increasing=True)
        coef, *_ = np.linalg.lstsq(vander, rem, rcond=None)
        fit = vander @ coef
        assert float(np.max(np.abs(fit - rem))) <= 1e-9 * (
            1 + float(np.max(np.abs(rem)))
        )

def test_H_singularity_guard():
    p = fixture_params("wilson")
    with pytest.raises(SingularPointError):
        apply_tilde_H(_const("wilson", p), 1e-12)


# ---------------------------------------------------------------- shifts

@pytest.mark.parametrize("family,name", all_fixtures())
def test_forward_kills_constants(family, name):
    p = fixture_params(family, name)
    fam = get_family(family)
    for x in sample_points(fam, p, 4):
        assert abs(apply_forward_shift(_const(family, p), x)) <= 1e-13

@pytest.mark.parametrize("family,name", all_fixtures())
def test_forward_action(family, name):
    p = fixture_params(family, name)
    fam = get_family(family)
    p_s = fam.shifted(p)
    xs = sample_points(fam, p, 6)
    for n in (1, 3, 6):
        poly = eval_poly_recurrence(fam, p, n)
        down = eval_poly_recurrence(fam, p_s, n - 1)
        f_n = fam.f_shift(p, n)
        for x in xs:
            target = f_n * down.eval(fam.eta(x))
            got = apply_forward_shift(poly, x)
            assert abs(got - target) <= 1e-9 * (1 + abs(target))

def test_forward_q_hermite_level_one():
    # F H_1 = f_1 * 1 with f_1 = q^{1/2} (q^{-1} - 1)
    q = 0.5
    p = ParamSet(q=q)
    poly = eval_poly_recurrence("continuous-q-hermite", p, 1)
    expected = math.sqrt(q) * (1 / q - 1)
    for x in (0.4, 1.2, 2.6):
        assert apply_forward_shift(poly, x) == pytest.approx(expected, rel=1e-12)

@pytest.mark.parametrize("family,name", all_fixtures())
def test_backward_action(family, name):
    p = fixture_params(family, name)
    fam = get_family(family)
    p_s = fam.shifted(p)
    xs = sample_points(fam, p, 6)
    for n in (0, 2, 5):
        poly_s = eval_poly_recurrence(fam, p_s, n)
        up = eval_poly_recurrence(fam, p, n + 1)
        b_n = fam.b_shift(p, n)
        for x in xs:
            target = b_n * up.eval(fam.eta(x))
            got = apply_backward_shift(poly_s, x)
            assert abs(got - target) <= 1e-9 * (1 + abs(target))

@pytest.mark.parametrize("family,name", all_fixtures())
def test_backward_then_forward_is_H(family, name):
    # B(lambda) F(lambda) = H-tilde(lambda) on eigenfunctions
    p = fixture_params(family, name)
    fam = get_family(family)
    ctx = OperatorContext(fam, p)
    for n in (1, 4):
        poly = eval_poly_recurrence(fam, p, n)
        f = ctx.poly_fn(poly)
        e_n = fam.energy(p, n)
        for x in sample_points(fam, p, 5):
            got = ctx.backward(lambda w: ctx.forward(f, w), x)
            target = e_n * poly.eval(ctx.eta(x))
            assert abs(got - target) <= 1e-9 * (1 + abs(target))

@pytest.mark.parametrize("family,name", all_fixtures())
def test_rodrigues_chain(family, name):
    p = fixture_params(family, name)
    fam = get_family(family)
    for n in (0, 1, 4, 7):
        chain = rodrigues_polynomial(fam, p, n)
        poly = eval_poly_recurrence(fam, p, n)
        for x in sample_points(fam, p, 4):
            target = poly.eval(fam.eta(x))
            assert abs(chain(x) - target) <= 1e-9 * (1 + abs(target))

def test_forward_singular_at_phi_zero():
    p = fixture_params("wilson")
    poly = eval_poly_recurrence("wilson", p, 2)
    with pytest.raises(SingularPointError):
        apply_forward_shift(poly, 0.0)


# ------------------------------------------------------------ commutators

def test_commutator_on_constants():
    # [H, eta] 1 = H eta: the defining expansion on constants
    p = fixture_params("al-salam-chihara")
    fam = get_family("al-salam-chihara")
    ctx = OperatorContext(fam, p)
    g = ctx.gamma
    for x in sample_points(fam, p, 6):
        expected = ctx.V(x) * (ctx.eta(x - 1j * g) - ctx.eta(x)) + ctx.V_star(
            x
        ) * (ctx.eta(x + 1j * g) - ctx.eta(x))
        got = commutator_H_eta(_const("al-salam-chihara", p), x)
        assert cmath.isclose(got, expected, rel_tol=1e-12, abs_tol=1e-12)


# ----------------------------------------------------------------- ladder

def test_annihilation_of_ground_state_is_exact_zero():
    p = fixture_params("continuous-q-hermite")
    poly = eval_poly_recurrence("continuous-q-hermite", p, 0)
    for x in (0.3, 1.0, 2.9):
        assert apply_ladder("-", 0, poly, x) == 0

def test_creation_on_q_hermite_ground_state():
    # a^(+) 1 = A_0 H_1 = eta
    p = ParamSet(q=0.5)
    poly = eval_poly_recurrence("continuous-q-hermite", p, 0)
    for x in (0.4, 1.3, 2.2):
        assert apply_ladder("+", 0, poly, x) == pytest.approx(
            math.cos(x), rel=1e-12
        )

@pytest.mark.parametrize("family,name", all_fixtures())
def test_ladder_actions(family, name):
    p = fixture_params(family, name)
    fam = get_family(family)
    xs = sample_points(fam, p, 6)
    for n in (1, 3, 6):
        poly = eval_poly_recurrence(fam, p, n)
        up = eval_poly_recurrence(fam, p, n + 1)
        down = eval_poly_recurrence(fam, p, n - 1)
        c = fam.coefficients(p, n)
        for x in xs:
            target = c.A_n * up.eval(fam.eta(x))
            got = apply_ladder("+", n, poly, x)
            assert abs(got - target) <= 1e-10 * (1 + abs(target))
            target = c.C_n * down.eval(fam.eta(x))
            got = apply_ladder("-", n, poly, x)
            assert abs(got - target) <= 1e-10 * (1 + abs(target))

def test_ladder_spectral_commutator():
    # [H, a^(pm)] phi_n = (E_{n pm 1} - E_n) a^(pm) phi_n
    p = fixture_params("continuous-dual-q-hahn")
    fam = get_family("continuous-dual-q-hahn")
    ctx = OperatorContext(fam, p)
    for n in (1, 4):
        poly = eval_poly_recurrence(fam, p, n)
        f = ctx.poly_fn(poly)
        for sign, m in (("+", n + 1), ("-", n - 1)):
            lad = lambda w: ladder_action(ctx, sign, n, f, w)
            e_m = fam.energy(p, m)
            for x in sample_points(fam, p, 5):
                got = ctx.H_tilde(lad, x)
                target = e_m * lad(x)
                assert abs(got - target) <= 1e-10 * (1 + abs(target))

def test_meixner_pollaczek_explicit_ladder_form():
    # a^(pm) = pm [H,eta]/(4 sin phi) + eta/2 + cos phi (H + 2a sin phi)/(4 sin^2 phi)
    p = fixture_params("meixner-pollaczek")
    fam = get_family("meixner-pollaczek")
    ctx = OperatorContext(fam, p)
    a = p.a[0].real
    s, c = math.sin(p.phi), math.cos(p.phi)
    for n in (0, 2, 5):
        poly = eval_poly_recurrence(fam, p, n)
        f = ctx.poly_fn(poly)
        e_n = fam.energy(p, n)
        for x in sample_points(fam, p, 5):
            comm = ctx.comm_H_eta(f, x)
            base = 0.5 * ctx.eta(x) * f(x) + c / (4 * s * s) * (
                e_n + 2 * a * s
            ) * f(x)
            for sign, expl in (("+", base + comm / (4 * s)),
                               ("-", base - comm / (4 * s))):
                got = ladder_action(ctx, sign, n, f, x)
                if sign == "-" and n == 0:
                    continue
                assert cmath.isclose(got, expl, rel_tol=1e-10, abs_tol=1e-12)

def test_continuous_dual_hahn_explicit_ladder_form():
    # a^(pm) = pm [H,eta]/2 + eta/2 - H^2 - (b1 - 1/2) H - b2/2
    p = fixture_params("continuous-dual-hahn")
    fam = get_family("continuous-dual-hahn")
    ctx = OperatorContext(fam, p)
    b1 = sum(p.a).real
    b2 = (p.a[0] * p.a[1] + p.a[0] * p.a[2] + p.a[1] * p.a[2]).real
    for n in (1, 3):
        poly = eval_poly_recurrence(fam, p, n)
        f = ctx.poly_fn(poly)
        e_n = fam.energy(p, n)
        scalar = -e_n * e_n - (b1 - 0.5) * e_n - 0.5 * b2
        for x in sample_points(fam, p, 5):
            comm = ctx.comm_H_eta(f, x)
            base = 0.5 * ctx.eta(x) * f(x) + scalar * f(x)
            got_p = ladder_action(ctx, "+", n, f, x)
            got_m = ladder_action(ctx, "-", n, f, x)
            assert cmath.isclose(got_p, base + 0.5 * comm, rel_tol=1e-10, abs_tol=1e-10)
            assert cmath.isclose(got_m, base - 0.5 * comm, rel_tol=1e-10, abs_tol=1e-10)

def test_q_oscillator_on_big_q_hermite():
    # a- a+ - q a+ a- = (1-q)/4 on every level
    p = fixture_params("continuous-big-q-hermite")
    fam = get_family("continuous-big-q-hermite")
    ctx = OperatorContext(fam, p)
    q = p.q
    for n in (0, 2, 5):
        poly = eval_poly_recurrence(fam, p, n)
        f = ctx.poly_fn(poly)
        up = lambda w: ladder_action(ctx, "+", n, f, w)
        dn = lambda w: ladder_action(ctx, "-", n, f, w)
        for x in sample_points(fam, p, 4):
            ama = ladder_action(ctx, "-", n + 1, up, x)
            apa = ladder_action(ctx, "+", n - 1, dn, x) if n >= 1 else 0j
            got = ama - q * apa
            target = 0.25 * (1 - q) * f(x)
            assert abs(got - target) <= 1e-10 * (1 + abs(target))


# ------------------------------------------------------ lambda-shift X ops

def test_lambda_shift_unsupported_family():
    p = fixture_params("wilson")
    poly = eval_poly_recurrence("wilson", p, 1)
    with pytest.raises(ValueError, match="no explicit"):
        lambda_shift_X("wilson", p, "X", 1, poly, 1.0)

def test_lambda_shift_meixner_pollaczek_needs_right_angle():
    p = fixture_params("meixner-pollaczek")  # phi = pi/3
    poly = eval_poly_recurrence("meixner-pollaczek", p, 1)
    with pytest.raises(ValueError, match="pi/2"):
        lambda_shift_X("meixner-pollaczek", p, "X", 1, poly, 1.0)

def test_lambda_shift_meixner_pollaczek_actions():
    p = fixture_params("meixner-pollaczek", "half-pi")
    fam = get_family("meixner-pollaczek")
    p_s = fam.shifted(p)
    a = p.a[0].real
    for n in range(7):
        poly = eval_poly_recurrence(fam, p, n)
        poly_s = eval_poly_recurrence(fam, p_s, n)
        for x in (-1.8, 0.7, 2.3):
            got = lambda_shift_X(fam, p, "X", n, poly, x)
            target = 0.5 * poly_s.eval(x)
            assert abs(got - target) <= 1e-9 * (1 + abs(target))
            got = lambda_shift_X(fam, p, "Xdag", n, poly_s, x)
            target = 0.25 * (n + 2 * a) * poly.eval(x)
            assert abs(got - target) <= 1e-9 * (1 + abs(target))

def test_lambda_shift_dual_hahn_actions():
    p = fixture_params("continuous-dual-hahn")
    fam = get_family("continuous-dual-hahn")
    p_s = fam.shifted(p)
    for n in range(7):
        poly = eval_poly_recurrence(fam, p, n)
        poly_s = eval_poly_recurrence(fam, p_s, n)
        factor = complex(1.0)
        for i in range(3):
            for j in range(i + 1, 3):
                factor *= n + p.a[i] + p.a[j]
        for x in (0.6, 1.4, 2.9):
            got = lambda_shift_X(fam, p, "X", n, poly, x)
            target = poly_s.eval(fam.eta(x))
            assert abs(got - target) <= 1e-9 * (1 + abs(target))
            got = lambda_shift_X(fam, p, "Xdag", n, poly_s, x)
            target = factor.real * poly.eval(fam.eta(x))
            assert abs(got - target) <= 1e-9 * (1 + abs(target))


# ------------------------------------------------------------- sample set

def test_sample_points_deterministic_and_interior():
    p = fixture_params("askey-wilson")
    fam = get_family("askey-wilson")
    xs1 = sample_points(fam, p, 20, seed=0)
    xs2 = sample_points(fam, p, 20, seed=0)
    assert xs1 == xs2
    assert all(1e-3 <= x <= math.pi - 1e-3 for x in xs1)
    assert len(set(xs1)) == 20
