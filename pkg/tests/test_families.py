"""Catalog-level checks: parameter validation, closed-form constants,
ground states, both polynomial evaluation paths and their invariants."""

from __future__ import annotations

import cmath
import math

import numpy as np
import pytest

from dqm.families import (
    FAMILIES,
    FamilyId,
    ParamSet,
    ValidationError,
    aw_to_wilson_scaled,
    closure_polys,
    coefficients,
    energy,
    eval_poly_hypergeometric,
    eval_poly_recurrence,
    get_family,
    ground_state,
    potential,
    validate_params,
)
from dqm.fixtures import fixture_names, fixture_params
from dqm.operators import sample_points

ALL_IDS = list(FamilyId)


def all_fixtures():
    out = []
    for fid in ALL_IDS:
        fam = FAMILIES[fid]
        for name in fixture_names(fam):
            out.append((fam.spec.name, name))
    return out


# ------------------------------------------------------------- validation

def test_validate_askey_wilson_ok():
    p = ParamSet(a=(0.3 + 0.4j, 0.5, 0.2 + 0.4j, 0.2 - 0.4j), q=0.5)
    # conjugate-closed requires pairing 0.3+0.4i too; use a closed set
    p = ParamSet(a=(0.3 + 0.4j, 0.3 - 0.4j, 0.5, 0.2), q=0.5)
    validate_params("askey-wilson", p)

def test_validate_askey_wilson_modulus():
    with pytest.raises(ValidationError, match=r"\|a1\| >= 1"):
        validate_params("askey-wilson", ParamSet(a=(1.2, 0.1, 0.1, 0.1), q=0.5))

def test_validate_askey_wilson_conjugation():
    with pytest.raises(ValidationError, match="conjugation"):
        validate_params(
            "askey-wilson", ParamSet(a=(0.3 + 0.4j, 0.5, 0.2, 0.1), q=0.5)
        )

def test_validate_meixner_pollaczek_positive():
    with pytest.raises(ValidationError, match="a>0"):
        validate_params(
            "meixner-pollaczek", ParamSet(a=(-1.0,), phi=math.pi / 2)
        )

def test_validate_q_jacobi_range():
    with pytest.raises(ValidationError, match="alpha"):
        validate_params("continuous-q-jacobi", ParamSet(a=(-0.7, 0.3), q=0.5))

@pytest.mark.parametrize("family,name", all_fixtures())
def test_fixtures_validate(family, name):
    fixture_params(family, name)  # validates internally


# -------------------------------------------------------------- potential

def test_potential_q_hermite_at_right_angle():
    # z = i makes the denominator (1-z^2)(1-q z^2) = 2 * 1.5
    v = potential("continuous-q-hermite", ParamSet(q=0.5), math.pi / 2)
    assert v == pytest.approx(1.0 / 3.0, rel=1e-14)

def test_potential_continuous_hahn_origin():
    v = potential("continuous-hahn", ParamSet(a=(1.0, 2.0)), 0.0)
    assert v == pytest.approx(2.0, rel=1e-14)

def test_potential_wilson_direct_arithmetic():
    expected = (1 + 1j) ** 4 / ((2j) * (2j + 1))  # oracle: plain arithmetic
    v = potential("wilson", ParamSet(a=(1.0, 1.0, 1.0, 1.0)), 1.0)
    assert cmath.isclose(v, expected, rel_tol=1e-14)

def test_potential_singularities():
    from dqm.families import SingularityError

    with pytest.raises(SingularityError):
        potential("continuous-q-hermite", ParamSet(q=0.5), 0.0)
    with pytest.raises(SingularityError):
        potential("wilson", ParamSet(a=(1.0, 1.0, 1.0, 1.0)), 0.0)


# ----------------------------------------------------------------- energy

@pytest.mark.parametrize("family,name", all_fixtures())
def test_ground_energy_vanishes(family, name):
    assert energy(family, fixture_params(family, name), 0) == 0.0

def test_energy_meixner_pollaczek():
    p = ParamSet(a=(0.4,), phi=math.pi / 6)
    assert energy("meixner-pollaczek", p, 3) == pytest.approx(3.0, rel=1e-14)

def test_energy_askey_wilson():
    p = ParamSet(a=(0.5, 0.8, 0.5, 0.5), q=0.5)  # b4 = 0.1
    assert energy("askey-wilson", p, 1) == pytest.approx(0.9, rel=1e-14)

@pytest.mark.parametrize("family,name", all_fixtures())
def test_energy_strictly_increasing(family, name):
    p = fixture_params(family, name)
    es = [energy(family, p, n) for n in range(21)]
    assert all(b > a for a, b in zip(es, es[1:]))


# ---------------------------------------------------------------- closure

def test_closure_continuous_dual_hahn():
    cp = closure_polys("continuous-dual-hahn", fixture_params("continuous-dual-hahn"))
    assert cp.r1 == (0.0, 0.0)
    assert cp.r0 == (0.0, 0.0, 1.0)

def test_closure_q_hermite_rm1_zero():
    cp = closure_polys("continuous-q-hermite", ParamSet(q=0.5))
    assert cp.rm1 == (0.0, 0.0, 0.0)

def test_closure_meixner_pollaczek():
    a, phi = 0.9, 1.1
    cp = closure_polys("meixner-pollaczek", ParamSet(a=(a,), phi=phi))
    # R_{-1}(y) = 2 y cos(phi) + 2 a sin(2 phi)
    assert cp.rm1[0] == 0.0
    assert cp.rm1[1] == pytest.approx(2 * math.cos(phi), rel=1e-14)
    assert cp.rm1[2] == pytest.approx(2 * a * math.sin(2 * phi), rel=1e-14)

@pytest.mark.parametrize("family,name", all_fixtures())
def test_closure_parametrisation_constraints(family, name):
    # r0^(2) = r1^(1) and r0^(1) = 2 r1^(0)
    cp = closure_polys(family, fixture_params(family, name))
    assert cp.r0[0] == pytest.approx(cp.r1[0], abs=1e-14)
    assert cp.r0[1] == pytest.approx(2 * cp.r1[1], abs=1e-13)


# ------------------------------------------------------------ coefficients

def test_coefficients_q_hermite():
    p = ParamSet(q=0.5)
    for n in range(6):
        c = coefficients("continuous-q-hermite", p, n)
        assert c.a_n_rec == 0.0
        assert c.c_n == pytest.approx(2.0**n)

def test_coefficients_al_salam_chihara():
    p = ParamSet(a=(0.3, 0.5), q=0.5)
    c = coefficients("al-salam-chihara", p, 1)
    assert c.b_n_rec == pytest.approx(0.10625, rel=1e-14)

def test_coefficients_wilson_shift_constants():
    p = fixture_params("wilson")
    fam = get_family("wilson")
    b1 = sum(v.real for v in p.a)
    for n in range(1, 8):
        c = coefficients("wilson", p, n)
        assert c.f_n == pytest.approx(-n * (n + b1 - 1), rel=1e-13)
        assert c.b_n_shift == -1.0
        assert c.f_n * coefficients("wilson", p, n - 1).b_n_shift == pytest.approx(
            fam.energy(p, n), rel=1e-13
        )

@pytest.mark.parametrize("family,name", all_fixtures())
def test_energy_factorization(family, name):
    p = fixture_params(family, name)
    fam = get_family(family)
    for n in range(1, 11):
        prod = fam.f_shift(p, n) * fam.b_shift(p, n - 1)
        assert prod == pytest.approx(fam.energy(p, n), rel=1e-12)

@pytest.mark.parametrize("family,name", all_fixtures())
def test_three_term_coefficients_consistent(family, name):
    p = fixture_params(family, name)
    fam = get_family(family)
    for n in range(1, 9):
        c = coefficients(family, p, n)
        assert c.A_n == pytest.approx(fam.c_n(p, n) / fam.c_n(p, n + 1), rel=1e-12)
        assert c.B_n == pytest.approx(complex(fam.a_rec(p, n)).real, rel=1e-12, abs=1e-14)
        assert c.C_n == pytest.approx(
            fam.c_n(p, n) / fam.c_n(p, n - 1) * complex(fam.b_rec(p, n)).real,
            rel=1e-12,
        )
        assert c.N_n == pytest.approx(math.sqrt(c.h0_over_hn), rel=1e-14)

@pytest.mark.parametrize("family,name", all_fixtures())
def test_measure_positivity(family, name):
    p = fixture_params(family, name)
    fam = get_family(family)
    for n in range(1, 21):
        assert complex(fam.b_rec(p, n)).real > 0.0

@pytest.mark.parametrize("family,name", all_fixtures())
def test_norm_recurrence_consistency(family, name):
    # b_n^rec = (c_{n-1}/c_n)^2 h_n/h_{n-1}, read off the h0_over_hn fields
    p = fixture_params(family, name)
    fam = get_family(family)
    for n in range(1, 11):
        lhs = complex(fam.b_rec(p, n)).real
        rhs = (
            (fam.c_n(p, n - 1) / fam.c_n(p, n)) ** 2
            * fam.h0_over_hn(p, n - 1)
            / fam.h0_over_hn(p, n)
        )
        assert lhs == pytest.approx(rhs, rel=1e-12)


# ------------------------------------------------------------ ground state

def test_ground_state_q_hermite_value():
    # |(-1;q)_inf| = 2 (-q;q)_inf, oracle = truncated product
    q = 0.5
    oracle = 2.0
    for k in range(1, 60):
        oracle *= 1 + q**k
    got = ground_state("continuous-q-hermite", ParamSet(q=q), math.pi / 2)
    assert got == pytest.approx(oracle, rel=1e-12)
    assert got == pytest.approx(4.7684620580, abs=1e-9)

@pytest.mark.parametrize(
    "family", ["askey-wilson", "continuous-q-hermite", "continuous-q-jacobi"]
)
def test_ground_state_vanishes_at_edges(family):
    p = fixture_params(family)
    assert ground_state(family, p, 0.0) == pytest.approx(0.0, abs=1e-14)

def test_ground_state_meixner_pollaczek_origin():
    p = ParamSet(a=(1.0,), phi=math.pi / 2)
    assert ground_state("meixner-pollaczek", p, 0.0) == pytest.approx(1.0, rel=1e-13)

@pytest.mark.parametrize("family,name", all_fixtures())
def test_ground_state_positive_inside(family, name):
    p = fixture_params(family, name)
    fam = get_family(family)
    for x in sample_points(fam, p, 8):
        assert ground_state(family, p, x) > 0.0


# ------------------------------------------------------- evaluation paths

@pytest.mark.parametrize("family,name", all_fixtures())
def test_series_level_zero_is_one(family, name):
    p = fixture_params(family, name)
    fam = get_family(family)
    v = eval_poly_hypergeometric(family, p, 0, fam.eta(0.7))
    assert cmath.isclose(v, 1.0, rel_tol=1e-14)

def test_series_q_hermite_level_one():
    # oracle: the three-term recurrence gives P_1 = 2 eta
    p = ParamSet(q=0.5)
    for x in (0.3, 1.1, 2.0):
        v = eval_poly_hypergeometric("continuous-q-hermite", p, 1, math.cos(x))
        assert v == pytest.approx(2 * math.cos(x), rel=1e-13)

def test_series_meixner_pollaczek_level_one():
    p = ParamSet(a=(0.8,), phi=math.pi / 2)
    for x in (-1.5, 0.4, 2.0):
        v = eval_poly_hypergeometric("meixner-pollaczek", p, 1, x)
        assert cmath.isclose(v, 2 * x, rel_tol=1e-13)

def test_recurrence_level_zero():
    poly = eval_poly_recurrence("continuous-q-hermite", ParamSet(q=0.5), 0)
    assert poly.coeffs == (1 + 0j,)

def test_recurrence_q_hermite_level_two():
    q = 0.5
    poly = eval_poly_recurrence("continuous-q-hermite", ParamSet(q=q), 2)
    assert poly.coeffs[2] == pytest.approx(4.0)
    assert poly.coeffs[1] == pytest.approx(0.0, abs=1e-15)
    assert poly.coeffs[0] == pytest.approx(-(1 - q))

@pytest.mark.parametrize("family,name", all_fixtures())
def test_recurrence_leading_coefficient(family, name):
    p = fixture_params(family, name)
    fam = get_family(family)
    for n in range(9):
        poly = eval_poly_recurrence(family, p, n)
        assert poly.degree == n
        assert abs(poly.leading() - fam.c_n(p, n)) <= 1e-12 * abs(fam.c_n(p, n))

@pytest.mark.parametrize("family,name", all_fixtures())
def test_dual_path_equivalence(family, name):
    p = fixture_params(family, name)
    fam = get_family(family)
    xs = sample_points(fam, p, 8)
    for n in range(0, 11, 2):
        poly = eval_poly_recurrence(family, p, n)
        for x in xs:
            eta = fam.eta(x)
            v1 = eval_poly_hypergeometric(family, p, n, eta)
            v2 = poly.eval(eta)
            assert abs(v1 - v2) <= 1e-9 * (1 + abs(v2))

def test_degree_cap_warning():
    from dqm.specfun import ConditioningWarning

    with pytest.warns(ConditioningWarning):
        eval_poly_recurrence("continuous-q-hermite", ParamSet(q=0.5), 31)


# --------------------------------------------------------------- symmetry

def test_continuous_hahn_swap_symmetry():
    p1 = ParamSet(a=(0.7 + 0.4j, 1.2 - 0.2j))
    p2 = ParamSet(a=(1.2 - 0.2j, 0.7 + 0.4j))
    for n in range(6):
        for x in (-1.7, 0.3, 2.1):
            v1 = eval_poly_hypergeometric("continuous-hahn", p1, n, x)
            v2 = eval_poly_hypergeometric("continuous-hahn", p2, n, x)
            assert abs(v1 - v2) <= 1e-10 * (1 + abs(v1))

@pytest.mark.parametrize("family", ["wilson", "askey-wilson"])
def test_four_parameter_permutation_symmetry(family):
    from itertools import permutations

    p = fixture_params(family)
    fam = get_family(family)
    xs = sample_points(fam, p, 3)
    for perm in list(permutations(range(4)))[::7]:
        p2 = ParamSet(a=tuple(p.a[i] for i in perm), q=p.q)
        for n in (1, 4, 7):
            for x in xs:
                eta = fam.eta(x)
                v1 = eval_poly_hypergeometric(family, p, n, eta)
                v2 = eval_poly_hypergeometric(family, p2, n, eta)
                assert abs(v1 - v2) <= 1e-10 * (1 + abs(v1))

def test_meixner_pollaczek_reflection():
    # P_n^(a)(x; -phi) = P_n^(a)(-x; phi); the left side evaluated through
    # the series with the angle negated
    a, phi = 0.8, 1.0
    fam = get_family("meixner-pollaczek")
    p_pos = ParamSet(a=(a,), phi=phi)
    for n in range(7):
        for x in (-2.0, -0.4, 0.9, 1.7):
            lhs = fam.series_eval_x(ParamSet(a=(a,), phi=-phi), n, x)
            rhs = fam.series_eval_x(p_pos, n, -x)
            assert cmath.isclose(lhs, rhs, rel_tol=1e-12, abs_tol=1e-12)


def test_al_salam_chihara_conjugate_pair_reality():
    # the (a e^{i phi}, a e^{-i phi}) parametrisation must produce real
    # recurrence data: B_n and C_n A_{n-1} real
    a, phi, q = 0.6, 0.8, 0.5
    p = ParamSet(a=(a * cmath.exp(1j * phi), a * cmath.exp(-1j * phi)), q=q)
    fam = get_family("al-salam-chihara")
    fam.validate(p)
    for n in range(1, 11):
        b_n = fam.a_rec(p, n)
        assert abs(complex(b_n).imag) <= 1e-12 * (1 + abs(b_n))
        prod = complex(fam.b_rec(p, n))  # = C_n A_{n-1}
        assert abs(prod.imag) <= 1e-12 * (1 + abs(prod))
    # and the polynomials themselves are real on the interval
    poly = eval_poly_recurrence(fam, p, 5)
    vals = poly.eval(np.cos(np.linspace(0.3, 2.8, 7)))
    assert np.max(np.abs(vals.imag)) <= 1e-12


# --------------------------------------------- commutator scalar expansions

def _b_diff(fam, p, n):
    return complex(fam.b_rec(p, n + 1)).real - complex(fam.b_rec(p, n)).real

def test_pair_commutator_meixner_pollaczek():
    a, phi = 0.7, 1.1
    p = ParamSet(a=(a,), phi=phi)
    fam = get_family("meixner-pollaczek")
    for n in range(9):
        assert _b_diff(fam, p, n) == pytest.approx(
            (n + a) / (2 * math.sin(phi) ** 2), rel=1e-12
        )

def test_pair_commutator_continuous_dual_hahn():
    p = fixture_params("continuous-dual-hahn")
    fam = get_family("continuous-dual-hahn")
    b1 = sum(p.a).real
    b2 = (p.a[0] * p.a[1] + p.a[0] * p.a[2] + p.a[1] * p.a[2]).real
    prod = (p.a[0] * p.a[1] * p.a[2]).real
    for n in range(9):
        expected = (
            4 * n**3
            + 3 * (2 * b1 - 1) * n**2
            + (2 * b1 * (b1 - 1) + 2 * b2 + 1) * n
            + b1 * b2
            - prod
        )
        assert _b_diff(fam, p, n) == pytest.approx(expected, rel=1e-12)

def test_pair_commutator_continuous_dual_q_hahn():
    p = fixture_params("continuous-dual-q-hahn")
    fam = get_family("continuous-dual-q-hahn")
    q = p.q
    a1, a2, a3 = p.a
    b1 = (a1 + a2 + a3).real
    b2 = (a1 * a2 + a1 * a3 + a2 * a3).real
    b3 = (a1 * a2 * a3).real
    for n in range(9):
        qn = q**n
        expected = (
            -0.25 * (q**-4 - 1) * q * b3**2 * qn**4
            + 0.25 * (q**-3 - 1) * b3 * (b3 + q * b1) * qn**3
            - 0.25 * (q**-2 - 1) * (b1 * b3 + q * b2) * qn**2
            + 0.25 * (q**-1 - 1) * (b2 + q) * qn
        )
        assert _b_diff(fam, p, n) == pytest.approx(expected, rel=1e-11)

def test_deformed_pair_commutators_al_salam_chihara():
    p = fixture_params("al-salam-chihara")
    fam = get_family("al-salam-chihara")
    q = p.q
    a12 = (p.a[0] * p.a[1]).real
    for n in range(9):
        qn = q**n
        b_np = complex(fam.b_rec(p, n + 1)).real
        b_n = complex(fam.b_rec(p, n)).real
        assert b_np - b_n == pytest.approx(
            0.25 * (1 / q - 1) * (-(1 + q) * a12 * qn**2 + (a12 + q) * qn),
            rel=1e-12,
        )
        assert b_np - q * b_n == pytest.approx(
            0.25 * (1 - q) * (1 - a12 * qn**2), rel=1e-12
        )
        assert b_np - q**2 * b_n == pytest.approx(
            0.25 * (1 - q) * (1 + q - (a12 + q) * qn), rel=1e-12
        )

@pytest.mark.parametrize(
    "family", ["continuous-big-q-hermite", "continuous-q-hermite"]
)
def test_q_oscillator_scalar_relations(family):
    p = fixture_params(family)
    fam = get_family(family)
    q = p.q
    for n in range(9):
        b_np = complex(fam.b_rec(p, n + 1)).real
        b_n = complex(fam.b_rec(p, n)).real
        assert b_np - b_n == pytest.approx(0.25 * (1 - q) * q**n, rel=1e-13)
        assert b_np - q * b_n == pytest.approx(0.25 * (1 - q), rel=1e-13)

def test_deformed_pair_commutators_q_laguerre():
    p = fixture_params("continuous-q-laguerre")
    fam = get_family("continuous-q-laguerre")
    q = p.q
    al = p.a[0].real
    for n in range(9):
        qn = q**n
        b_np = complex(fam.b_rec(p, n + 1)).real
        b_n = complex(fam.b_rec(p, n)).real
        assert b_np - b_n == pytest.approx(
            0.25 * (1 - q) * (-(1 + q) * q**al * qn**2 + (1 + q**al) * qn),
            rel=1e-12,
        )
        assert b_np - q * b_n == pytest.approx(
            0.25 * (1 - q) * (1 - q ** (al + 1) * qn**2), rel=1e-12
        )
        assert b_np - q**2 * b_n == pytest.approx(
            0.25 * (1 - q) * (1 + q - (1 + q**al) * q * qn), rel=1e-12
        )


# --------------------------------------------------------- ladder scalars

def test_frequency_scalars_quadratic_spectrum():
    # alpha_pm(E_n) = E_{n pm 1} - E_n with alpha_pm = 1 pm 2 sqrt(H')
    p = fixture_params("wilson")
    fam = get_family("wilson")
    b1 = sum(v.real for v in p.a)
    for n in range(1, 9):
        e = fam.energy(p, n)
        root = math.sqrt(e + 0.25 * (b1 - 1) ** 2)
        assert 1 + 2 * root == pytest.approx(
            fam.energy(p, n + 1) - e, rel=1e-12
        )
        assert 1 - 2 * root == pytest.approx(
            fam.energy(p, n - 1) - e, rel=1e-12
        )

def test_frequency_scalars_askey_wilson():
    # the signed square root sqrt(H'^2 - 4 b4/q) = q^{-n} - b4 q^{n-1}
    p = fixture_params("askey-wilson")
    fam = get_family("askey-wilson")
    q = p.q
    b4 = 1.0
    for v in p.a:
        b4 *= v
    b4 = b4.real
    s2 = 1 / q - 2 + q
    for n in range(9):
        e = fam.energy(p, n)
        hp = e + 1 + b4 / q
        root = q**-n - b4 * q ** (n - 1)
        assert hp * hp - 4 * b4 / q == pytest.approx(root * root, rel=1e-12)
        up = 0.5 * s2 * hp + 0.5 * (1 / q - q) * root
        dn = 0.5 * s2 * hp - 0.5 * (1 / q - q) * root
        assert up == pytest.approx(fam.energy(p, n + 1) - e, rel=1e-12)
        assert dn == pytest.approx(fam.energy(p, n - 1) - e, rel=1e-12)


# ---------------------------------------------------------------- q -> 1

def test_limit_energy_level_zero():
    p = fixture_params("wilson")
    for L in (20.0, 40.0, 80.0):
        assert aw_to_wilson_scaled("energy", p, L, n=0) == 0.0

def test_limit_energy_monotone():
    p = fixture_params("wilson")
    fam = get_family("wilson")
    target = fam.energy(p, 1)
    devs = [
        abs(aw_to_wilson_scaled("energy", p, L, n=1) - target)
        for L in (20.0, 40.0, 80.0)
    ]
    assert devs[0] > devs[1] > devs[2]

def test_limit_shift_constants_signs():
    # -f_n/(1-q)^2 -> f_n^W < 0 and -b_n -> b_n^W = -1; the approach rate
    # is ~c/L, so at L = 640 a percent-level agreement is the honest bound
    p = fixture_params("wilson")
    fam = get_family("wilson")
    got = aw_to_wilson_scaled("f_n", p, 640.0, n=1)
    assert got == pytest.approx(fam.f_shift(p, 1), rel=1e-2)
    got = aw_to_wilson_scaled("b_n", p, 640.0, n=1)
    assert got == pytest.approx(-1.0, rel=1e-2)
    assert got < 0

def test_limit_polynomial_and_phi0():
    p = fixture_params("wilson")
    fam = get_family("wilson")
    x = 1.1
    target = eval_poly_recurrence(fam, p, 2).eval(fam.eta(x))
    got = aw_to_wilson_scaled("polynomial", p, 640.0, n=2, x=x)
    assert abs(got - target) / (1 + abs(target)) < 2e-2
    target = fam.phi0(p, x)
    got = aw_to_wilson_scaled("phi0", p, 640.0, x=x)
    assert abs(got - target) / (1 + abs(target)) < 2e-2
