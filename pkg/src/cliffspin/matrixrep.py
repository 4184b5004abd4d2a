"""The representation bridge: Cl(4,1) with a central pseudoscalar playing the
imaginary unit, the even embedding of Cl(1,3), a spin basis for the minimal
ideal, the induced 4x4 complex matrix representation, and covariant
column-spinor equivalence.

The matrix tables are solved once with exact rational arithmetic, so the
generator matrices come out with exact integer/unit entries.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

import numpy as np

from .groups import Rotor, SpinorialFrame, is_spin_e
from .multivector import Multivector, Signature, geometric_product

SIG13 = Signature(1, 3)
SIG41 = Signature(4, 1)


class RepresentationError(ValueError):
    pass


@dataclass(frozen=True)
class R41:
    """Cl(4,1) handle: generators F_0..F_4 (F_0^2 = -1, others +1), the
    central pseudoscalar i = F_0 F_1 F_2 F_3 F_4, and the embedded
    vectors E_mu = F_mu F_4."""

    F: tuple[Multivector, ...]
    i: Multivector
    E: tuple[Multivector, ...]


@lru_cache(maxsize=1)
def build_r41() -> R41:
    # The signature convention puts +1 generators first, so F_0 (square -1)
    # is the last generator e5 of Cl(4,1).
    F = (
        Multivector.generator(SIG41, 5),
        Multivector.generator(SIG41, 1),
        Multivector.generator(SIG41, 2),
        Multivector.generator(SIG41, 3),
        Multivector.generator(SIG41, 4),
    )
    i = F[0]
    for k in range(1, 5):
        i = geometric_product(i, F[k])
    E = tuple(geometric_product(F[mu], F[4]) for mu in range(4))
    return R41(F=F, i=i, E=E)


@lru_cache(maxsize=None)
def _embedded_blade(mask13: int) -> Multivector:
    r41 = build_r41()
    out = Multivector.scalar(SIG41, 1.0)
    for mu in range(4):
        if mask13 >> mu & 1:
            out = geometric_product(out, r41.E[mu])
    return out


def embed_j(x: Multivector) -> Multivector:
    """Algebra homomorphism Cl(1,3) -> Cl^0(4,1) generated by E_mu -> F_mu F_4;
    complex coefficients a+bi land on a + b * (central pseudoscalar)."""
    if x.signature != SIG13:
        raise RepresentationError("embed_j expects a Cl(1,3) element")
    r41 = build_r41()
    out = Multivector.zero(SIG41)
    for mask, c in x.terms.items():
        blade = _embedded_blade(mask)
        out = out + c.real * blade
        if c.imag != 0.0:
            out = out + c.imag * geometric_product(r41.i, blade)
    return out


@lru_cache(maxsize=1)
def _spin_basis() -> tuple[Multivector, Multivector, Multivector, Multivector]:
    r41 = build_r41()
    E, i = r41.E, r41.i
    f = geometric_product(
        (1 + E[0]) * 0.5,
        (1 + geometric_product(i, geometric_product(E[1], E[2]))) * 0.5,
    )
    f1 = f
    f2 = -geometric_product(geometric_product(E[1], E[3]), f)
    f3 = geometric_product(geometric_product(E[3], E[0]), f)
    f4 = geometric_product(geometric_product(E[1], E[0]), f)
    return f1, f2, f3, f4


def _exact_solve(columns: list[list[Fraction]], target: list[Fraction]) -> list[Fraction]:
    """Solve sum_j c_j * columns[j] = target exactly; raises if inconsistent."""
    ncols = len(columns)
    nrows = len(target)
    aug = [[columns[j][r] for j in range(ncols)] + [target[r]] for r in range(nrows)]
    pivots: list[int] = []
    row = 0
    for col in range(ncols):
        pivot = next((r for r in range(row, nrows) if aug[r][col] != 0), None)
        if pivot is None:
            pivots.append(-1)
            continue
        aug[row], aug[pivot] = aug[pivot], aug[row]
        pv = aug[row][col]
        aug[row] = [v / pv for v in aug[row]]
        for r in range(nrows):
            if r != row and aug[r][col] != 0:
                factor = aug[r][col]
                aug[r] = [a - factor * b for a, b in zip(aug[r], aug[row])]
        pivots.append(row)
        row += 1
    sol = [Fraction(0)] * ncols
    for col in range(ncols):
        if pivots[col] >= 0:
            sol[col] = aug[pivots[col]][-1]
    for r in range(row, nrows):
        if aug[r][-1] != 0:
            raise RepresentationError("target vector is outside the spin-basis span")
    # Consistency of the solved rows.
    for r in range(nrows):
        acc = sum(columns[j][r] * sol[j] for j in range(ncols))
        if acc != target[r]:
            raise RepresentationError("exact solve failed consistency check")
    return sol


def _dense_fractions(mv: Multivector) -> list[Fraction]:
    out = [Fraction(0)] * 32
    for mask, c in mv.terms.items():
        if c.imag != 0.0:
            raise RepresentationError("expected a real Cl(4,1) element")
        out[mask] = Fraction(c.real)
    return out


@lru_cache(maxsize=1)
def _blade_matrices() -> dict[int, np.ndarray]:
    """4x4 complex matrix of each Cl(1,3) basis blade in the spin basis,
    solved exactly: x f_j = sum_i f_i (c_ij with i mapped to the machine
    imaginary unit)."""
    r41 = build_r41()
    basis = _spin_basis()
    columns = []
    for f in basis:
        columns.append(_dense_fractions(f))
        columns.append(_dense_fractions(geometric_product(r41.i, f)))
    tables: dict[int, np.ndarray] = {}
    for mask in range(16):
        y = _embedded_blade(mask)
        M = np.zeros((4, 4), dtype=complex)
        for j, fj in enumerate(basis):
            target = _dense_fractions(geometric_product(y, fj))
            sol = _exact_solve(columns, target)
            for i4 in range(4):
                M[i4, j] = float(sol[2 * i4]) + 1j * float(sol[2 * i4 + 1])
        tables[mask] = M
    return tables


def matrix_of(x: Multivector) -> np.ndarray:
    """Left-regular representation of Cl(1,3) (real or complexified) on the
    spin basis: a 4x4 complex matrix; an algebra homomorphism."""
    if x.signature != SIG13:
        raise RepresentationError("matrix_of expects a Cl(1,3) element")
    tables = _blade_matrices()
    M = np.zeros((4, 4), dtype=complex)
    for mask, c in x.terms.items():
        M = M + c * tables[mask]
    return M


@dataclass(frozen=True)
class GammaRep:
    gammas: tuple[np.ndarray, np.ndarray, np.ndarray, np.ndarray]
    f_matrix: np.ndarray


def standard_gammas() -> GammaRep:
    g0 = np.diag([1, 1, -1, -1]).astype(complex)
    s1 = np.array([[0, 1], [1, 0]], dtype=complex)
    s2 = np.array([[0, -1j], [1j, 0]], dtype=complex)
    s3 = np.array([[1, 0], [0, -1]], dtype=complex)
    zero = np.zeros((2, 2), dtype=complex)

    def off(s):
        return np.block([[zero, -s], [s, zero]])

    g1, g2, g3 = off(s1), off(s2), off(s3)
    ident = np.eye(4, dtype=complex)
    f = 0.5 * (ident + g0) @ (0.5 * (ident + 1j * g1 @ g2))
    return GammaRep(gammas=(g0, g1, g2, g3), f_matrix=f)


def complex_idempotent_f() -> Multivector:
    """The complexified ideal projector f = (1+E_0)/2 (1 + i E_1 E_2)/2 as a
    complex-coefficient Cl(1,3) element."""
    e0 = Multivector.generator(SIG13, 1)
    e12 = geometric_product(Multivector.generator(SIG13, 2), Multivector.generator(SIG13, 3))
    return geometric_product((1 + e0) * 0.5, (1 + 1j * e12) * 0.5)


def column_of(element: Multivector, tol: float = 1e-10) -> np.ndarray:
    """First-column extraction for elements of the complexified minimal
    ideal (x f = x)."""
    f = complex_idempotent_f()
    if (geometric_product(element, f) - element).max_abs() > tol * max(
        1.0, element.max_abs()
    ):
        raise RepresentationError("element is not in the ideal of f")
    return matrix_of(element)[:, 0].copy()


def dhs_matrix(psi: Multivector) -> np.ndarray:
    """The structured matrix of an even representative, built from the four
    complex components of its ideal projection."""
    if any(g % 2 for g in psi.grades()):
        raise RepresentationError("dhs_matrix expects an even element")
    p1, p2, p3, p4 = matrix_of(psi)[:, 0]
    c = np.conj
    return np.array(
        [
            [p1, -c(p2), p3, c(p4)],
            [p2, c(p1), p4, -c(p3)],
            [p3, c(p4), p1, -c(p2)],
            [p4, -c(p3), p2, c(p1)],
        ],
        dtype=complex,
    )


def s_of_rotor(u: Rotor) -> np.ndarray:
    if not is_spin_e(u.u):
        raise RepresentationError("s_of_rotor requires a Spin^e element")
    return matrix_of(u.u)


def cds_equivalent(
    a: tuple[SpinorialFrame, np.ndarray],
    b: tuple[SpinorialFrame, np.ndarray],
    tol: float = 1e-10,
) -> bool:
    """Whether (frame, column) pairs represent the same covariant spinor:
    column_b = S(u_b^{-1} u_a) column_a."""
    frame_a, col_a = a
    frame_b, col_b = b
    shift = geometric_product(frame_b.u.inverse_mv(), frame_a.u.u)
    S = matrix_of(shift)
    return bool(np.max(np.abs(np.asarray(col_b) - S @ np.asarray(col_a))) <= tol)
