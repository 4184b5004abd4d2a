import math

import numpy as np
import pytest

from cliffspin import (
    ConstantPotential,
    Multivector,
    PlaneWaveDHSF,
    Rotor,
    Signature,
    asf_residual,
    bilinear_covariants,
    both_gauge,
    dhe_residual,
    fiducial_spinorial_frame,
    geometric_product,
    left_gauge,
    matrix_column_at,
    matrix_dirac_residual,
    planewave_solution,
    random_rotor,
    right_gauge,
    scalar_product,
    spin_dirac_apply,
    spin_dirac_apply_fd,
    zero_potential,
)
from cliffspin.dirac import DiracError
from cliffspin.spinors import DHSRep, gamma5, gamma_lower

rng = np.random.default_rng(4)

SIG13 = Signature(1, 3)
FID = fiducial_spinorial_frame(SIG13)


def gen(i):
    return Multivector.generator(SIG13, i)


def random_points(n):
    return [list(map(float, rng.uniform(-5, 5, size=4))) for _ in range(n)]


def random_even(scale=1.0):
    masks = [0b0000, 0b0011, 0b0101, 0b1001, 0b0110, 0b1010, 0b1100, 0b1111]
    return Multivector(SIG13, {m: float(rng.uniform(-scale, scale)) for m in masks})


# -- derivative operator -----------------------------------------------------------------


def test_constant_field_annihilated():
    field = PlaneWaveDHSF(
        frame=FID, psi0=random_even(), p=Multivector.zero(SIG13), m=1.0, energy_sign=1
    )
    for x in random_points(3):
        assert spin_dirac_apply(field, x).max_abs() == 0.0


def test_rest_wave_derivative_closed_form():
    # psi = psi0 exp(-B m t): D psi = g^0 (-m) psi B = -m g0 psi B
    m = 1.3
    field = planewave_solution(m, (0.0, 0.0, 0.0))
    for x in random_points(3):
        psi = field.evaluate(x)
        got = spin_dirac_apply(field, x)
        expected = -m * geometric_product(
            gen(1), geometric_product(psi, field.phase_bivector)
        )
        assert (got - expected).max_abs() < 1e-12


def test_finite_difference_cross_check():
    worst = 0.0
    for _ in range(20):
        field = planewave_solution(
            float(rng.uniform(0.5, 2.0)),
            tuple(rng.uniform(-2, 2, size=3)),
            sign=int(rng.choice([1, -1])),
        )
        for x in random_points(3):
            a = spin_dirac_apply(field, x)
            b = spin_dirac_apply_fd(field.evaluate, x)
            scale = max(1.0, a.max_abs())
            worst = max(worst, (a - b).max_abs() / scale)
    assert worst < 1e-6


# -- plane-wave solutions -----------------------------------------------------------------


def test_rest_solution_is_identity_amplitude():
    field = planewave_solution(1.0, (0.0, 0.0, 0.0))
    assert (field.psi0 - 1).max_abs() < 1e-12
    field_neg = planewave_solution(1.0, (0.0, 0.0, 0.0), sign=-1)
    assert (field_neg.psi0 - gamma5()).max_abs() < 1e-12


def test_bad_arguments_rejected():
    with pytest.raises(DiracError):
        planewave_solution(0.0, (0, 0, 0))
    with pytest.raises(DiracError):
        planewave_solution(-1.0, (0, 0, 0))
    with pytest.raises(DiracError):
        planewave_solution(1.0, (0, 0, 0), sign=2)
    with pytest.raises(DiracError):
        ConstantPotential(geometric_product(gen(1), gen(2)), 1.0)


def test_current_is_future_timelike_for_both_signs():
    for sign in (1, -1):
        field = planewave_solution(1.5, (0.4, -0.7, 1.1), sign=sign)
        c = bilinear_covariants(DHSRep(field.frame, field.psi0))
        # J = pi / m regardless of the energy sign
        pi = field.p if sign == 1 else field.p  # zero potential: p is kinetic
        expected = (1.0 / 1.5) * pi
        assert (c.J - expected).max_abs() < 1e-10
        assert c.J.coeff(0b0001).real > 0
        assert scalar_product(c.J, c.J) > 0


def test_three_formulations_agree_on_shell():
    worst = 0.0
    for _ in range(25):
        m = float(rng.uniform(0.5, 2.0))
        sp = rng.uniform(-1, 1, size=3) * (3 * m / math.sqrt(3))
        sign = int(rng.choice([1, -1]))
        field = planewave_solution(m, tuple(sp), sign=sign)
        for x in random_points(4):
            r1 = dhe_residual(field, None, m, x).max_abs()
            r2 = asf_residual(field, None, m, x).max_abs()
            r3 = float(np.max(np.abs(matrix_dirac_residual(field, None, m, x))))
            worst = max(worst, r1, r2, r3)
    assert worst < 1e-9


def test_off_shell_detected_by_all_three():
    m = 1.0
    field = planewave_solution(m, (0.3, -0.2, 0.5))
    m_wrong = 1.01 * m
    floor = math.inf
    for x in random_points(10):
        r1 = dhe_residual(field, None, m_wrong, x).max_abs()
        r2 = asf_residual(field, None, m_wrong, x).max_abs()
        r3 = float(np.max(np.abs(matrix_dirac_residual(field, None, m_wrong, x))))
        floor = min(floor, r1, r2, r3)
    assert floor > 1e-3


def test_matrix_column_phase():
    field = planewave_solution(1.0, (0.5, 0.0, 0.0))
    x0 = [0.0, 0.0, 0.0, 0.0]
    col0 = matrix_column_at(field, x0)
    x1 = [0.7, 0.0, 0.0, 0.0]
    theta = field.phase_at(x1)
    col1 = matrix_column_at(field, x1)
    assert np.max(np.abs(col1 - np.exp(-1j * theta) * col0)) < 1e-12


def test_constant_potential_solutions():
    A = Multivector(SIG13, {1: 0.2, 2: -0.1, 4: 0.05, 8: 0.3})
    pot = ConstantPotential(A, 0.7)
    for sign in (1, -1):
        field = planewave_solution(1.2, (0.4, 0.1, -0.6), sign=sign, pot=pot)
        for x in random_points(5):
            r1 = dhe_residual(field, pot, 1.2, x).max_abs()
            r3 = float(np.max(np.abs(matrix_dirac_residual(field, pot, 1.2, x))))
            assert max(r1, r3) < 1e-9
        # without the potential term the same field misses the shell
        assert dhe_residual(field, None, 1.2, [1.0, 0.5, -0.2, 0.3]).max_abs() > 1e-3


def test_zero_potential_helper():
    pot = zero_potential()
    field = planewave_solution(1.0, (0.1, 0.2, 0.3))
    x = [0.3, -0.2, 0.9, 0.1]
    a = dhe_residual(field, pot, 1.0, x)
    b = dhe_residual(field, None, 1.0, x)
    assert (a - b).max_abs() == 0.0


# -- gauge covariance ----------------------------------------------------------------------


def test_right_gauge_trivial_elements():
    field = planewave_solution(1.0, (0.2, 0.0, -0.4))
    one = Rotor(Multivector.scalar(SIG13, 1.0))
    assert right_gauge(field, one).psi0 == field.psi0
    minus = Rotor(Multivector.scalar(SIG13, -1.0))
    flipped = right_gauge(field, minus)
    assert (flipped.psi0 + field.psi0).max_abs() == 0.0
    c1 = bilinear_covariants(DHSRep(field.frame, field.psi0))
    c2 = bilinear_covariants(DHSRep(flipped.frame, flipped.psi0))
    assert (c1.J - c2.J).max_abs() < 1e-12


def test_right_gauge_residual_law():
    m = 1.1
    field = planewave_solution(m, (0.4, -0.3, 0.2))
    pot = ConstantPotential(Multivector(SIG13, {1: 0.1, 4: -0.2}), 0.5)
    off = 1.07 * m  # deliberately off shell so the residual is nonzero
    for _ in range(5):
        s = random_rotor(SIG13, rng)
        moved = right_gauge(field, s)
        for x in random_points(2):
            lhs = dhe_residual(moved, pot, off, x)
            rhs = geometric_product(dhe_residual(field, pot, off, x), s.inverse_mv())
            assert (lhs - rhs).max_abs() < 1e-9


def test_right_gauge_covariants_invariant():
    field = planewave_solution(1.0, (0.3, 0.3, -0.1))
    c1 = bilinear_covariants(DHSRep(field.frame, field.psi0))
    for _ in range(5):
        moved = right_gauge(field, random_rotor(SIG13, rng))
        c2 = bilinear_covariants(DHSRep(moved.frame, moved.psi0))
        assert abs(c1.sigma - c2.sigma) < 1e-10
        assert abs(c1.omega - c2.omega) < 1e-10
        assert (c1.J - c2.J).max_abs() < 1e-9
        assert (c1.S - c2.S).max_abs() < 1e-9
        assert (c1.K - c2.K).max_abs() < 1e-9


def test_right_gauge_preserves_solutions():
    m = 0.9
    field = planewave_solution(m, (0.5, 0.1, 0.0))
    moved = right_gauge(field, random_rotor(SIG13, rng))
    for x in random_points(3):
        assert dhe_residual(moved, None, m, x).max_abs() < 1e-10
        assert asf_residual(moved, None, m, x).max_abs() < 1e-10


def test_left_gauge_residual_law():
    m = 1.3
    pot = ConstantPotential(Multivector(SIG13, {2: 0.3, 8: -0.1}), 0.4)
    field = planewave_solution(m, (0.2, -0.5, 0.1), pot=pot)
    off = 1.05 * m
    for _ in range(5):
        s = random_rotor(SIG13, rng)
        moved = left_gauge(field, s, pot)
        for x in random_points(2):
            lhs = dhe_residual(
                moved.field, moved.pot, off, x, left_rotor=moved.left_rotor
            )
            rhs = geometric_product(s.u, dhe_residual(field, pot, off, x))
            assert (lhs - rhs).max_abs() < 1e-9


def test_left_gauge_preserves_solutions():
    m = 1.3
    pot = ConstantPotential(Multivector(SIG13, {2: 0.3, 8: -0.1}), 0.4)
    field = planewave_solution(m, (0.2, -0.5, 0.1), pot=pot)
    moved = left_gauge(field, random_rotor(SIG13, rng), pot)
    for x in random_points(3):
        res = dhe_residual(moved.field, moved.pot, m, x, left_rotor=moved.left_rotor)
        assert res.max_abs() < 1e-9


def test_both_gauge_composes():
    m = 1.0
    pot = ConstantPotential(Multivector(SIG13, {1: 0.15}), 0.3)
    field = planewave_solution(m, (0.1, 0.4, -0.3), pot=pot)
    off = 1.04 * m
    s = random_rotor(SIG13, rng)
    combined = both_gauge(field, s, pot)
    stepwise = right_gauge(left_gauge(field, s, pot).field, s)
    assert (combined.field.psi0 - stepwise.psi0).max_abs() < 1e-12
    for x in random_points(3):
        lhs = dhe_residual(
            combined.field, combined.pot, off, x, left_rotor=combined.left_rotor
        )
        base = dhe_residual(field, pot, off, x)
        rhs = geometric_product(geometric_product(s.u, base), s.inverse_mv())
        assert (lhs - rhs).max_abs() < 1e-9


def test_gauge_requires_connected_group():
    field = planewave_solution(1.0, (0.0, 0.0, 0.0))
    # an even unit element outside Spin^e does not exist in Cl(1,3) rotor form,
    # but a non-normalized rotor is rejected upstream by the Rotor constructor
    from cliffspin.groups import NotARotorError

    with pytest.raises(NotARotorError):
        right_gauge(field, Rotor(2.0 * Multivector.scalar(SIG13, 1.0)))
