"""Spinor calculus in Cl(1,3): algebraic and operator spinor representatives,
frame changes, bilinear covariants, the quadratic identity suite relating
them, and the canonical (density / duality-angle / rotor) decomposition.

Index conventions: a spinorial frame's vectors b_0..b_3 are the lower-index
frame vectors; the upper-index ones are g^0 = b_0 and g^i = -b_i.  The volume
element g5 = g^0 g^1 g^2 g^3 is frame-independent under even rotors.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .groups import (
    Rotor,
    SpinorialFrame,
    fiducial_spinorial_frame,
    random_rotor,
    rotor_between,
)
from .multivector import (
    Multivector,
    Signature,
    geometric_product,
    hodge_dual,
    reversion,
    scalar_product,
)

SIG13 = Signature(1, 3)
REGULARITY_EPS2 = 1e-20

_G5 = Multivector(SIG13, {0b1111: -1.0})  # g^0 g^1 g^2 g^3


class SingularSpinorError(ArithmeticError):
    pass


class SpinorValueError(ValueError):
    pass


def gamma5() -> Multivector:
    return _G5


def gamma_lower(frame: SpinorialFrame, mu: int) -> Multivector:
    return frame.frame.vectors[mu]


def gamma_upper(frame: SpinorialFrame, mu: int) -> Multivector:
    v = frame.frame.vectors[mu]
    return v if mu == 0 else -v


def frame_idempotent(frame: SpinorialFrame) -> Multivector:
    """The frame's spinor-projector e = (1 + b_0)/2."""
    return (1 + gamma_lower(frame, 0)) * 0.5


@dataclass(frozen=True)
class DHSRep:
    """Operator-spinor representative: an even multivector tied to a frame."""

    frame: SpinorialFrame
    psi: Multivector

    def __post_init__(self) -> None:
        if self.psi.signature != SIG13 or self.frame.signature != SIG13:
            raise SpinorValueError("operator spinors live in Cl(1,3)")
        if any(g % 2 for g in self.psi.grades()):
            raise SpinorValueError("representative must be even (grades 0, 2, 4)")


@dataclass(frozen=True)
class ASRep:
    """Algebraic-spinor representative: an element of the frame's minimal
    left ideal Cl(1,3) * (1 + b_0)/2."""

    frame: SpinorialFrame
    element: Multivector

    def __post_init__(self) -> None:
        if self.element.signature != SIG13 or self.frame.signature != SIG13:
            raise SpinorValueError("algebraic spinors live in Cl(1,3)")
        e = frame_idempotent(self.frame)
        scale = max(1.0, self.element.max_abs())
        if (geometric_product(self.element, e) - self.element).max_abs() > 1e-9 * scale:
            raise SpinorValueError("element is not in the frame's left ideal")


@dataclass(frozen=True)
class BilinearCovariants:
    sigma: float
    omega: float
    J: Multivector
    S: Multivector
    K: Multivector

    def __post_init__(self) -> None:
        scale = max(1.0, self.J.max_abs() ** 2)
        if abs(scalar_product(self.J, self.J) - (self.sigma**2 + self.omega**2)) > 1e-6 * scale:
            raise SpinorValueError("J.J != sigma^2 + omega^2; not covariants of a spinor")
        if abs(scalar_product(self.J, self.K)) > 1e-6 * scale:
            raise SpinorValueError("J.K != 0; not covariants of a spinor")


@dataclass(frozen=True)
class CanonicalFactors:
    rho: float
    beta: float
    R: Rotor


# -- frame changes and the two representations ---------------------------------


def change_frame(s: "DHSRep | ASRep", target: SpinorialFrame):
    """New representative psi' = psi u^{-1} u' for a target frame (u', b')."""
    if target.signature != s.frame.signature:
        raise SpinorValueError("frames of different signature")
    shift = geometric_product(s.frame.u.inverse_mv(), target.u.u)
    if isinstance(s, DHSRep):
        return DHSRep(target, geometric_product(s.psi, shift))
    return ASRep(target, geometric_product(s.element, shift))


def as_from_dhs(d: DHSRep) -> ASRep:
    return ASRep(d.frame, geometric_product(d.psi, frame_idempotent(d.frame)))


def dhs_from_as(a: ASRep) -> DHSRep:
    return DHSRep(a.frame, 2.0 * a.element.even())


# -- bilinear covariants --------------------------------------------------------


def bilinear_covariants(d: DHSRep) -> BilinearCovariants:
    psi = d.psi
    psit = reversion(psi)
    agg = geometric_product(psi, psit)
    sigma = agg.scalar_part().real
    omega = -agg.coeff(0b1111).real  # grade-4 part is omega * g5, g5 = -e1e2e3e4
    g0 = gamma_upper(d.frame, 0)
    g1 = gamma_upper(d.frame, 1)
    g2 = gamma_upper(d.frame, 2)
    g3 = gamma_upper(d.frame, 3)
    J = geometric_product(geometric_product(psi, g0), psit)
    S = geometric_product(geometric_product(psi, geometric_product(g1, g2)), psit)
    K = geometric_product(geometric_product(psi, g3), psit)
    return BilinearCovariants(sigma=sigma, omega=omega, J=J.grade(1), S=S.grade(2), K=K.grade(1))


def is_regular(d: DHSRep) -> bool:
    agg = geometric_product(d.psi, reversion(d.psi))
    sigma = agg.scalar_part().real
    omega = -agg.coeff(0b1111).real
    return sigma * sigma + omega * omega > REGULARITY_EPS2


# -- identity suite over the covariants ------------------------------------------


def _lc(a, b):  # a _| b
    from .multivector import left_contraction

    return left_contraction(a, b)


def _rc(a, b):  # a |_ b
    from .multivector import right_contraction

    return right_contraction(a, b)


def _rel(lhs: Multivector, rhs: Multivector) -> float:
    return (lhs - rhs).max_abs() / max(1.0, lhs.max_abs(), rhs.max_abs())


def fierz_residuals(c: BilinearCovariants) -> dict[str, float]:
    """Max-abs relative residuals of the quadratic covariant identities, in
    the numerically resolved sign conventions (see fierz_variant_report for
    how the ambiguous ones were settled)."""
    sig, om = c.sigma, c.omega
    J, S, K = c.J, c.S, c.K
    g5 = _G5
    one = Multivector.scalar(SIG13, 1.0)
    starS = hodge_dual(S)
    JJ = complex(scalar_product(J, J)).real
    res: dict[str, float] = {}

    res["J.J = sigma^2 + omega^2"] = abs(JJ - (sig**2 + om**2)) / max(1.0, abs(JJ))
    res["J.K = 0"] = abs(complex(scalar_product(J, K)).real) / max(1.0, abs(JJ))
    res["J.J = -K.K"] = abs(JJ + complex(scalar_product(K, K)).real) / max(1.0, abs(JJ))
    res["J^K = -(omega + sigma g5) S"] = _rel(
        J ^ K, -geometric_product(om + sig * g5, S)
    )

    res["(*S)|_J = -sigma K"] = _rel(_rc(starS, J), -sig * K)
    res["(*S)|_K = -sigma J"] = _rel(_rc(starS, K), -sig * J)
    res["S.S = sigma^2 - omega^2"] = abs(
        complex(scalar_product(S, S)).real - (sig**2 - om**2)
    ) / max(1.0, sig**2 + om**2)
    res["S|_J = omega K"] = _rel(_rc(S, J), om * K)
    res["S|_K = omega J"] = _rel(_rc(S, K), om * J)
    res["(*S).S = 2 sigma omega"] = abs(
        complex(scalar_product(starS, S)).real - 2 * sig * om
    ) / max(1.0, sig**2 + om**2)

    res["J S = -(omega + sigma g5) K"] = _rel(
        geometric_product(J, S), -geometric_product(om + sig * g5, K)
    )
    res["S J = (omega - sigma g5) K"] = _rel(
        geometric_product(S, J), geometric_product(om - sig * g5, K)
    )
    res["K S = -(omega + sigma g5) J"] = _rel(
        geometric_product(K, S), -geometric_product(om + sig * g5, J)
    )
    res["S K = (omega - sigma g5) J"] = _rel(
        geometric_product(S, K), geometric_product(om - sig * g5, J)
    )
    res["S^2 = omega^2 - sigma^2 - 2 sigma omega g5"] = _rel(
        geometric_product(S, S), (om**2 - sig**2) * one - (2 * sig * om) * g5
    )
    if abs(JJ) > 1e-12:
        ksk = geometric_product(geometric_product(K, S), K)
        res["S (K S K) = (J.J)^2"] = _rel(geometric_product(S, ksk), (JJ**2) * one)
    else:
        res["S (K S K) = (J.J)^2"] = float("nan")
    return res


# Candidate right-hand sides for the identities whose printed sources are
# internally inconsistent; each is resolved by exhaustive numeric trial.
def _variant_candidates(c: BilinearCovariants) -> dict[str, dict[str, Multivector]]:
    sig, om = c.sigma, c.omega
    J, S, K = c.J, c.S, c.K
    g5 = _G5
    starS = hodge_dual(S)

    def combos(target: Multivector) -> dict[str, Multivector]:
        out = {}
        for s1, n1 in ((1, "+"), (-1, "-")):
            for s2, n2 in ((1, "+"), (-1, "-")):
                out[f"{n1}(omega {n2} sigma g5) X"] = s1 * geometric_product(
                    om + s2 * sig * g5, target
                )
                out[f"{n1}(sigma {n2} omega g5) X"] = s1 * geometric_product(
                    sig + s2 * om * g5, target
                )
        return out

    one = Multivector.scalar(SIG13, 1.0)
    return {
        "J^K": combos(S),
        "S|_J": {"+omega K": om * K, "-omega K": -om * K},
        "S|_K": {"+omega J": om * J, "-omega J": -om * J},
        "(*S).S": {
            "+2 sigma omega": (2 * sig * om) * one,
            "-2 sigma omega": (-2 * sig * om) * one,
        },
        "J S": combos(K),
        "S J": combos(K),
        "K S": combos(J),
        "S K": combos(J),
    }


def _variant_lhs(c: BilinearCovariants) -> dict[str, Multivector]:
    starS = hodge_dual(c.S)
    return {
        "J^K": c.J ^ c.K,
        "S|_J": _rc(c.S, c.J),
        "S|_K": _rc(c.S, c.K),
        "(*S).S": Multivector.scalar(SIG13, scalar_product(starS, c.S)),
        "J S": geometric_product(c.J, c.S),
        "S J": geometric_product(c.S, c.J),
        "K S": geometric_product(c.K, c.S),
        "S K": geometric_product(c.S, c.K),
    }


def fierz_variant_report(trials: int, seed: int) -> dict[str, dict]:
    """For each sign-ambiguous identity, the max relative residual of every
    candidate right-hand side over random regular spinors, plus the unique
    candidate that holds identically."""
    rng = np.random.default_rng(seed)
    worst: dict[str, dict[str, float]] = {}
    for _ in range(trials):
        d = random_regular_spinor(rng)
        c = bilinear_covariants(d)
        lhs = _variant_lhs(c)
        cands = _variant_candidates(c)
        for name in cands:
            bucket = worst.setdefault(name, {})
            for vname, rhs in cands[name].items():
                r = _rel(lhs[name], rhs)
                bucket[vname] = max(bucket.get(vname, 0.0), r)
    report: dict[str, dict] = {}
    for name, bucket in worst.items():
        chosen = min(bucket, key=bucket.get)
        report[name] = {
            "residuals": bucket,
            "resolved": chosen,
            "resolved_residual": bucket[chosen],
        }
    return report


# -- canonical decomposition -----------------------------------------------------


def exp_beta_gamma5(beta: float) -> Multivector:
    """e^{beta g5} = cos(beta) + sin(beta) g5, since g5^2 = -1."""
    return math.cos(beta) + math.sin(beta) * _G5


def canonical_decompose(d: DHSRep) -> CanonicalFactors:
    agg = geometric_product(d.psi, reversion(d.psi))
    sigma = agg.scalar_part().real
    omega = -agg.coeff(0b1111).real
    s2 = sigma * sigma + omega * omega
    if s2 <= REGULARITY_EPS2:
        raise SingularSpinorError(
            "psi * reversion(psi) = 0: singular spinor, no canonical decomposition"
        )
    rho = math.sqrt(s2)
    beta = math.atan2(omega, sigma) + 0.0
    factor = rho ** -0.5 * exp_beta_gamma5(-beta / 2)
    R = Rotor(geometric_product(factor, d.psi))
    return CanonicalFactors(rho=rho, beta=beta, R=R)


def canonical_reconstruct(f: CanonicalFactors, frame: SpinorialFrame) -> DHSRep:
    psi = geometric_product(f.rho**0.5 * exp_beta_gamma5(f.beta / 2), f.R.u)
    return DHSRep(frame, psi)


def random_regular_spinor(
    rng: np.random.Generator, frame: SpinorialFrame | None = None
) -> DHSRep:
    """psi = rho^{1/2} e^{beta g5 / 2} R with rho in [0.5, 2], beta in
    (-pi, pi), and a random rotor R."""
    if frame is None:
        frame = fiducial_spinorial_frame(SIG13)
    rho = float(rng.uniform(0.5, 2.0))
    beta = float(rng.uniform(-math.pi * 0.999, math.pi * 0.999))
    R = random_rotor(SIG13, rng)
    psi = geometric_product(rho**0.5 * exp_beta_gamma5(beta / 2), R.u)
    return DHSRep(frame, psi)


# -- mother-spinor expansion -------------------------------------------------------


def mother_spinor_basis(frame: SpinorialFrame) -> list[Multivector]:
    """s_1 = e, s_2 = b3 b1 e, s_3 = b3 b0 e, s_4 = b1 b0 e, with
    e = (1 + b0)/2 from the frame's own vectors."""
    b0, b1, _, b3 = frame.frame.vectors
    e = frame_idempotent(frame)
    return [
        e,
        geometric_product(geometric_product(b3, b1), e),
        geometric_product(geometric_product(b3, b0), e),
        geometric_product(geometric_product(b1, b0), e),
    ]


def mother_spinor_expand(phi: ASRep) -> list[tuple[float, float]]:
    """Coefficients (a_i, b_i) with phi = sum (a_i + b_i b2 b1) s_i; the
    formally-complex unit b2 b1 is kept as a real-algebra factor."""
    frame = phi.frame
    basis = mother_spinor_basis(frame)
    b0, b1, b2, b3 = frame.frame.vectors
    unit = geometric_product(b2, b1)
    columns = []
    for s in basis:
        columns.append(s)
        columns.append(geometric_product(unit, s))
    A = np.zeros((16, 8))
    for j, col in enumerate(columns):
        for mask, cf in col.terms.items():
            A[mask, j] = cf.real
    rhs = np.zeros(16)
    for mask, cf in phi.element.terms.items():
        rhs[mask] = cf.real
    sol, *_ = np.linalg.lstsq(A, rhs, rcond=None)
    resid = A @ sol - rhs
    if np.max(np.abs(resid)) > 1e-9 * max(1.0, np.max(np.abs(rhs))):
        raise SpinorValueError("element is outside the spanned ideal")
    return [(float(sol[2 * i]), float(sol[2 * i + 1])) for i in range(4)]


def mother_spinor_assemble(
    coeffs: list[tuple[float, float]], frame: SpinorialFrame
) -> ASRep:
    basis = mother_spinor_basis(frame)
    _, b1, b2, _ = frame.frame.vectors
    unit = geometric_product(b2, b1)
    total = Multivector.zero(SIG13)
    for (a, b), s in zip(coeffs, basis):
        total = total + a * s + b * geometric_product(unit, s)
    return ASRep(frame, total)


# -- recovery from covariants --------------------------------------------------------


def recover_from_covariants(c: BilinearCovariants, frame: SpinorialFrame) -> DHSRep:
    """Some psi' whose covariants equal c; unique up to a right phase factor
    e^{g2 g1 phi}.  Requires regular covariants."""
    s2 = c.sigma**2 + c.omega**2
    if s2 <= REGULARITY_EPS2:
        raise SingularSpinorError("recovery unsupported for singular covariants")
    rho = math.sqrt(s2)
    beta = math.atan2(c.omega, c.sigma) + 0.0
    g0 = gamma_upper(frame, 0)
    g1 = gamma_upper(frame, 1)
    g3 = gamma_upper(frame, 3)
    v0 = (1.0 / rho) * c.J
    R0 = rotor_between(v0, g0)
    # Pull K back to the rest frame; w3 is unit spacelike, orthogonal to g0.
    w3 = geometric_product(
        geometric_product(R0.inverse_mv(), (1.0 / rho) * c.K), R0.u
    ).grade(1)
    dot = complex(scalar_product(w3, g3)).real
    if 1.0 - dot > 1e-8:
        R1 = rotor_between(w3, g3)
    else:
        # w3 is (nearly) antipodal to g3: go through g1 in two steps.
        Ra = rotor_between(g1, g3)
        Rb = rotor_between(w3, g1)
        R1 = Rb * Ra
    R = R0 * R1
    psi = geometric_product(rho**0.5 * exp_beta_gamma5(beta / 2), R.u)
    return DHSRep(frame, psi)
