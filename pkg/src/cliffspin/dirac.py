"""Three formulations of the Dirac equation on the constant global coframe
of Minkowski spacetime (natural units, metric +---):

  operator form:   D psi g2 g1 - m psi g0 + q A psi = 0
  ideal form:      D Phi - m Phi g5 + q A Phi = 0,  Phi = psi e e'
  matrix form:     gamma^mu (i d_mu + q A_mu) Psi - m Psi = 0

with D = gamma^mu d_mu built from the coordinate coframe.  Plane-wave fields
carry analytic derivatives; a central-finite-difference evaluator exists as
an independent cross-check.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable, Sequence

import numpy as np

from .groups import Rotor, SpinorialFrame, fiducial_spinorial_frame, frame_right_action, is_spin_e
from .matrixrep import matrix_of, standard_gammas
from .multivector import Multivector, Signature, geometric_product, scalar_product
from .spinors import SIG13, gamma5, gamma_lower, gamma_upper

ETA = (1.0, -1.0, -1.0, -1.0)


class DiracError(ValueError):
    pass


@dataclass(frozen=True)
class ConstantPotential:
    A: Multivector
    q_charge: float

    def __post_init__(self) -> None:
        if self.A.grades() - {1}:
            raise DiracError("potential must be grade-1")


def zero_potential() -> ConstantPotential:
    return ConstantPotential(Multivector.zero(SIG13), 0.0)


def _coordinate_gamma_upper(mu: int) -> Multivector:
    v = Multivector.generator(SIG13, mu + 1)
    return v if mu == 0 else -v


@dataclass(frozen=True)
class PlaneWaveDHSF:
    """psi(x) = psi0 * exp(-energy_sign * B * (p.x)) with B the frame's
    g2 g1 phase bivector (B^2 = -1)."""

    frame: SpinorialFrame
    psi0: Multivector
    p: Multivector
    m: float
    energy_sign: int

    def __post_init__(self) -> None:
        if self.energy_sign not in (1, -1):
            raise DiracError("energy_sign must be +1 or -1")
        if self.p.grades() - {1}:
            raise DiracError("momentum must be grade-1")
        if any(g % 2 for g in self.psi0.grades()):
            raise DiracError("amplitude must be even")

    @property
    def phase_bivector(self) -> Multivector:
        return geometric_product(gamma_lower(self.frame, 2), gamma_lower(self.frame, 1))

    def phase_at(self, x: Sequence[float]) -> float:
        xvec = Multivector(
            SIG13, {1 << mu: float(x[mu]) for mu in range(4) if x[mu] != 0.0}
        )
        return complex(scalar_product(self.p, xvec)).real

    def evaluate(self, x: Sequence[float]) -> Multivector:
        theta = self.phase_at(x)
        B = self.phase_bivector
        # exp(-s*B*theta) = cos(theta) - s*sin(theta) B, since B^2 = -1
        rot = math.cos(theta) - self.energy_sign * math.sin(theta) * B
        return geometric_product(self.psi0, rot)

    def partial(self, mu: int, x: Sequence[float]) -> Multivector:
        p_lower = ETA[mu] * self.p.coeff(1 << mu).real
        return -self.energy_sign * p_lower * geometric_product(
            self.evaluate(x), self.phase_bivector
        )


def spin_dirac_apply(field: PlaneWaveDHSF, x: Sequence[float]) -> Multivector:
    """Analytic D psi = gamma^mu d_mu psi at x."""
    out = Multivector.zero(SIG13)
    for mu in range(4):
        out = out + geometric_product(_coordinate_gamma_upper(mu), field.partial(mu, x))
    return out


def spin_dirac_apply_fd(
    psi_func: Callable[[Sequence[float]], Multivector],
    x: Sequence[float],
    h: float = 1e-5,
) -> Multivector:
    """Independent central-finite-difference evaluation of D psi."""
    out = Multivector.zero(SIG13)
    x = list(x)
    for mu in range(4):
        xp = list(x)
        xm = list(x)
        xp[mu] += h
        xm[mu] -= h
        diff = (psi_func(xp) - psi_func(xm)) * (1.0 / (2.0 * h))
        out = out + geometric_product(_coordinate_gamma_upper(mu), diff)
    return out


def dhe_residual(
    field: PlaneWaveDHSF,
    pot: ConstantPotential | None,
    m: float,
    x: Sequence[float],
    left_rotor: Rotor | None = None,
) -> Multivector:
    """D psi g2 g1 - m psi g0 + q A psi at x, with the frame's own g2 g1 and
    g0.  With left_rotor=s the derivative operator uses the transformed
    coframe s gamma^mu s^{-1} (active left gauge)."""
    psi = field.evaluate(x)
    if left_rotor is None:
        dpsi = spin_dirac_apply(field, x)
    else:
        s, sinv = left_rotor.u, left_rotor.inverse_mv()
        dpsi = Multivector.zero(SIG13)
        for mu in range(4):
            g = geometric_product(geometric_product(s, _coordinate_gamma_upper(mu)), sinv)
            dpsi = dpsi + geometric_product(g, field.partial(mu, x))
    g0 = gamma_lower(field.frame, 0)
    g21 = field.phase_bivector
    res = geometric_product(dpsi, g21) - m * geometric_product(psi, g0)
    if pot is not None and pot.q_charge != 0.0:
        res = res + pot.q_charge * geometric_product(pot.A, psi)
    return res


def planewave_solution(
    m: float,
    spatial_momentum: Sequence[float],
    sign: int = 1,
    pot: ConstantPotential | None = None,
) -> PlaneWaveDHSF:
    """Plane wave in the fiducial frame with kinetic momentum on the mass
    shell: pi^0 = +sqrt(m^2 + |p|^2).  For a constant potential the phase
    momentum is shifted so the equation still holds exactly."""
    if m <= 0:
        raise DiracError("mass must be positive")
    if sign not in (1, -1):
        raise DiracError("sign must be +1 or -1")
    frame = fiducial_spinorial_frame(SIG13)
    p1, p2, p3 = (float(c) for c in spatial_momentum)
    p0 = math.sqrt(m * m + p1 * p1 + p2 * p2 + p3 * p3)
    pi = Multivector(SIG13, {1: p0, 2: p1, 4: p2, 8: p3})
    v = (1.0 / m) * pi
    g0 = gamma_lower(frame, 0)
    from .groups import rotor_between

    R = rotor_between(v, g0)
    if sign == 1:
        psi0 = R.u
    else:
        psi0 = geometric_product(R.u, gamma5())
    # The amplitude condition is (sign*p + qA) psi0 = m psi0 g0, giving the
    # phase momentum p = sign * (kin_sign * pi - q A) with kin_sign = sign.
    if pot is None or pot.q_charge == 0.0:
        p = pi
    else:
        p = pi - float(sign) * pot.q_charge * pot.A
    return PlaneWaveDHSF(frame=frame, psi0=psi0, p=p, m=m, energy_sign=sign)


# -- ideal (algebraic-spinor) form ----------------------------------------------


def asf_projector(frame: SpinorialFrame) -> Multivector:
    """e e' = (1 + g0)/2 (1 + g3 g0)/2 from the frame's own vectors."""
    g0 = gamma_lower(frame, 0)
    g3 = gamma_lower(frame, 3)
    e = (1 + g0) * 0.5
    ep = (1 + geometric_product(g3, g0)) * 0.5
    return geometric_product(e, ep)


def asf_residual(
    field: PlaneWaveDHSF,
    pot: ConstantPotential | None,
    m: float,
    x: Sequence[float],
) -> Multivector:
    """D Phi - m Phi g5 + q A Phi at x, with Phi = psi e e'."""
    proj = asf_projector(field.frame)
    phi = geometric_product(field.evaluate(x), proj)
    dphi = Multivector.zero(SIG13)
    for mu in range(4):
        dphi = dphi + geometric_product(
            _coordinate_gamma_upper(mu), geometric_product(field.partial(mu, x), proj)
        )
    res = dphi - m * geometric_product(phi, gamma5())
    if pot is not None and pot.q_charge != 0.0:
        res = res + pot.q_charge * geometric_product(pot.A, phi)
    return res


# -- matrix form ------------------------------------------------------------------


def matrix_column_at(field: PlaneWaveDHSF, x: Sequence[float]) -> np.ndarray:
    """Column spinor Psi(x): project the fiducial-frame representative with
    the standard spin idempotent and take the first column."""
    psi_fid = geometric_product(field.evaluate(x), field.frame.u.inverse_mv())
    return matrix_of(psi_fid)[:, 0].copy()


def matrix_dirac_residual(
    field: PlaneWaveDHSF,
    pot: ConstantPotential | None,
    m: float,
    x: Sequence[float],
) -> np.ndarray:
    """gamma^mu (i d_mu + q A_mu) Psi - m Psi with analytic d_mu Psi."""
    rep = standard_gammas()
    col = matrix_column_at(field, x)
    res = -m * col
    q = pot.q_charge if pot is not None else 0.0
    for mu in range(4):
        g_upper = rep.gammas[mu] if mu == 0 else -rep.gammas[mu]
        p_lower = ETA[mu] * field.p.coeff(1 << mu).real
        d_mu = -1j * field.energy_sign * p_lower * col
        term = 1j * d_mu
        if q != 0.0 and pot is not None:
            a_lower = ETA[mu] * pot.A.coeff(1 << mu).real
            term = term + q * a_lower * col
        res = res + g_upper @ term
    return res


# -- gauge transformations ----------------------------------------------------------


def _require_spin_e(s: Rotor) -> None:
    if not is_spin_e(s.u):
        raise DiracError("gauge element must be in Spin^e")


def right_gauge(field: PlaneWaveDHSF, s: Rotor) -> PlaneWaveDHSF:
    """psi -> psi s^{-1} with the frame relabeled to (u s^{-1}, s b s^{-1});
    the equation is form-invariant and the residual maps to residual * s^{-1}."""
    _require_spin_e(s)
    sinv_rotor = Rotor(s.inverse_mv())
    new_frame = frame_right_action(sinv_rotor, field.frame)
    return PlaneWaveDHSF(
        frame=new_frame,
        psi0=geometric_product(field.psi0, s.inverse_mv()),
        p=field.p,
        m=field.m,
        energy_sign=field.energy_sign,
    )


@dataclass(frozen=True)
class GaugedSystem:
    field: PlaneWaveDHSF
    pot: ConstantPotential | None
    left_rotor: Rotor | None


def left_gauge(
    field: PlaneWaveDHSF, s: Rotor, pot: ConstantPotential | None = None
) -> GaugedSystem:
    """Active transformation psi -> s psi, A -> s A s^{-1}, with the
    derivative operator transported to s gamma^mu s^{-1} d_mu."""
    _require_spin_e(s)
    new_field = PlaneWaveDHSF(
        frame=field.frame,
        psi0=geometric_product(s.u, field.psi0),
        p=field.p,
        m=field.m,
        energy_sign=field.energy_sign,
    )
    new_pot = None
    if pot is not None:
        newA = geometric_product(geometric_product(s.u, pot.A), s.inverse_mv()).grade(1)
        new_pot = ConstantPotential(newA, pot.q_charge)
    return GaugedSystem(field=new_field, pot=new_pot, left_rotor=s)


def both_gauge(
    field: PlaneWaveDHSF, s: Rotor, pot: ConstantPotential | None = None
) -> GaugedSystem:
    """Simultaneous transformation: psi -> s psi s^{-1} with the frame
    relabeled, A -> s A s^{-1}, operator transported as in left_gauge."""
    sys_left = left_gauge(field, s, pot)
    return GaugedSystem(
        field=right_gauge(sys_left.field, s),
        pot=sys_left.pot,
        left_rotor=s,
    )
