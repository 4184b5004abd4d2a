"""Clifford group machinery: Pin/Spin membership tests, adjoint actions,
rotor-to-matrix maps, and spinorial frames.

A spinorial frame is a pair (rotor u, orthonormal vector frame b) with
u b_i u^{-1} equal to the fiducial frame vector E_i for every i.  Frames with
rotors u and -u carry the same vector frame but compare as distinct values;
that sign is exactly the 2*pi-rotation memory spinors care about.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .multivector import (
    Multivector,
    Signature,
    exp_bivector,
    geometric_product,
    grade_involution,
    inverse,
    norm_N,
    reversion,
    scalar_product,
)

ROTOR_TOL = 1e-10


class NotARotorError(ValueError):
    pass


class FrameError(ValueError):
    pass


@dataclass(frozen=True)
class Rotor:
    u: Multivector

    def __post_init__(self) -> None:
        if self.u.grades() and any(g % 2 for g in self.u.grades()):
            raise NotARotorError("rotor must be an even element")
        uut = geometric_product(self.u, reversion(self.u))
        if (uut - 1).max_abs() > ROTOR_TOL:
            raise NotARotorError("rotor must satisfy u * reversion(u) = 1")

    @property
    def signature(self) -> Signature:
        return self.u.signature

    def inverse_mv(self) -> Multivector:
        return reversion(self.u)

    def __mul__(self, other: "Rotor") -> "Rotor":
        return Rotor(geometric_product(self.u, other.u))

    def __neg__(self) -> "Rotor":
        return Rotor(-self.u)


@dataclass(frozen=True)
class VectorFrame:
    vectors: tuple[Multivector, ...]

    def __post_init__(self) -> None:
        if not self.vectors:
            raise FrameError("empty frame")
        sig = self.vectors[0].signature
        squares = sig.squares
        if len(self.vectors) != sig.n:
            raise FrameError(f"frame needs {sig.n} vectors, got {len(self.vectors)}")
        for i, v in enumerate(self.vectors):
            if v.grades() - {1}:
                raise FrameError("frame members must be grade-1")
            for j, w in enumerate(self.vectors):
                want = squares[i] if i == j else 0.0
                if abs(scalar_product(v, w) - want) > 1e-9:
                    raise FrameError("frame is not g-orthonormal")

    @property
    def signature(self) -> Signature:
        return self.vectors[0].signature

    def __getitem__(self, i: int) -> Multivector:
        return self.vectors[i]

    def __len__(self) -> int:
        return len(self.vectors)


def fiducial_frame(sig: Signature) -> VectorFrame:
    return VectorFrame(tuple(Multivector.generator(sig, i + 1) for i in range(sig.n)))


@dataclass(frozen=True)
class SpinorialFrame:
    u: Rotor
    frame: VectorFrame

    def __post_init__(self) -> None:
        sig = self.u.signature
        uinv = self.u.inverse_mv()
        for i, b in enumerate(self.frame.vectors):
            image = geometric_product(geometric_product(self.u.u, b), uinv)
            if (image - Multivector.generator(sig, i + 1)).max_abs() > 1e-8:
                raise FrameError("frame does not match u b u^{-1} = fiducial")

    @property
    def signature(self) -> Signature:
        return self.u.signature

    def __eq__(self, other) -> bool:
        if not isinstance(other, SpinorialFrame):
            return NotImplemented
        # +-u are distinct spinorial frames even though they share vectors.
        return self.u.u.approx_eq(other.u.u, 1e-12)

    def __hash__(self):
        return hash(self.u.u)


def spinorial_frame_of(u: Rotor) -> SpinorialFrame:
    """Frame reached from the fiducial one by u: b_i = u^{-1} E_i u."""
    sig = u.signature
    uinv = u.inverse_mv()
    vectors = tuple(
        geometric_product(
            geometric_product(uinv, Multivector.generator(sig, i + 1)), u.u
        ).grade(1)
        for i in range(sig.n)
    )
    return SpinorialFrame(u, VectorFrame(vectors))


def fiducial_spinorial_frame(sig: Signature) -> SpinorialFrame:
    return SpinorialFrame(Rotor(Multivector.scalar(sig, 1.0)), fiducial_frame(sig))


# -- actions ------------------------------------------------------------------


def adjoint(u: Multivector | Rotor, x: Multivector) -> Multivector:
    g = u.u if isinstance(u, Rotor) else u
    ginv = reversion(g) if isinstance(u, Rotor) else inverse(g)
    return geometric_product(geometric_product(g, x), ginv)


def twisted_adjoint(g: Multivector, x: Multivector) -> Multivector:
    return geometric_product(geometric_product(g, x), inverse(grade_involution(g)))


# -- group membership ---------------------------------------------------------


def is_clifford_group(g: Multivector, tol: float = ROTOR_TOL) -> bool:
    sig = g.signature
    try:
        ghat_inv = inverse(grade_involution(g))
    except Exception:
        return False
    for i in range(sig.n):
        v = Multivector.generator(sig, i + 1)
        image = geometric_product(geometric_product(g, v), ghat_inv)
        if (image - image.grade(1)).max_abs() > tol:
            return False
    return True


def is_pin(g: Multivector, tol: float = ROTOR_TOL) -> bool:
    if not is_clifford_group(g, tol):
        return False
    n = norm_N(g)
    return abs(abs(complex(n).real) - 1.0) <= tol and abs(complex(n).imag) <= tol


def is_spin(g: Multivector, tol: float = ROTOR_TOL) -> bool:
    return is_pin(g, tol) and not any(k % 2 for k in g.grades())


def is_spin_e(g: Multivector, tol: float = ROTOR_TOL) -> bool:
    if not is_spin(g, tol):
        return False
    if abs(complex(norm_N(g)) - 1.0) > tol:
        return False
    if g.signature.n <= 5:
        # Cross-check: in low dimensions the identity component is exactly
        # the set of even g with g * reversion(g) = 1.
        if (geometric_product(g, reversion(g)) - 1).max_abs() > tol:
            return False
    return True


# -- rotor-to-matrix ----------------------------------------------------------


def lorentz_matrix_of(u: Rotor) -> np.ndarray:
    """Matrix L with u E_i u^{-1} = L[j,i] E_j over the fiducial frame."""
    if not is_spin_e(u.u):
        raise NotARotorError("lorentz_matrix_of requires a Spin^e element")
    sig = u.signature
    n = sig.n
    uinv = u.inverse_mv()
    L = np.zeros((n, n))
    for i in range(n):
        image = geometric_product(
            geometric_product(u.u, Multivector.generator(sig, i + 1)), uinv
        )
        for j in range(n):
            L[j, i] = image.coeff(1 << j).real
    return L


# -- frame actions ------------------------------------------------------------


def frame_right_action(a: Rotor, f: SpinorialFrame) -> SpinorialFrame:
    """(u, b) -> (u a, a^{-1} b a)."""
    if a.signature != f.signature:
        raise FrameError("signature mismatch in frame action")
    ainv = a.inverse_mv()
    new_vectors = tuple(
        geometric_product(geometric_product(ainv, b), a.u).grade(1) for b in f.frame.vectors
    )
    return SpinorialFrame(Rotor(geometric_product(f.u.u, a.u)), VectorFrame(new_vectors))


def vector_frame_of(f: SpinorialFrame) -> VectorFrame:
    return f.frame


# -- rotor constructions --------------------------------------------------------


def rotor_between(v: Multivector, w: Multivector) -> Rotor:
    """Rotor R with R w R^{-1} = v, for unit vectors v, w of equal square sign."""
    if v.grades() - {1} or w.grades() - {1}:
        raise ValueError("rotor_between needs grade-1 inputs")
    sv = scalar_product(v, v)
    sw = scalar_product(w, w)
    if abs(abs(complex(sv).real) - 1) > 1e-9 or abs(complex(sv) - complex(sw)) > 1e-9:
        raise ValueError("rotor_between needs unit vectors of equal square sign")
    s = 1 if complex(sv).real > 0 else -1
    dot = complex(scalar_product(v, w)).real
    denom = 2.0 * (1.0 + dot) if s == 1 else 2.0 * (1.0 - dot)
    if denom <= 1e-12:
        raise ValueError("v + w is null; use a two-step construction")
    vw = geometric_product(v, w)
    r = (1 + vw) if s == 1 else (1 - vw)
    return Rotor(r * (1.0 / denom ** 0.5))


def random_bivector(sig: Signature, rng: np.random.Generator, scale: float = 1.0) -> Multivector:
    """Bivector with components uniform in [-1,1]; components on blades with
    square +1 (boost planes) are halved to keep exponentials tame."""
    terms: dict[int, complex] = {}
    one = Multivector.scalar(sig, 1.0)
    for i in range(sig.n):
        for j in range(i + 1, sig.n):
            mask = (1 << i) | (1 << j)
            b = Multivector.from_mask(sig, mask)
            c = float(rng.uniform(-1.0, 1.0)) * scale
            if geometric_product(b, b) == one:
                c *= 0.5
            terms[mask] = c
    return Multivector(sig, terms)


def random_rotor(sig: Signature, rng: np.random.Generator, scale: float = 1.0) -> Rotor:
    return Rotor(exp_bivector(random_bivector(sig, rng, scale)))
