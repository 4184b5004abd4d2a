"""Sparse multivector arithmetic for real and complex Clifford algebras Cl(p,q).

Basis blades are encoded as bitmasks: bit i set means the generator e_{i+1}
is a factor, with factors kept in ascending index order.  The first p
generators square to +1, the remaining q square to -1.

The scalar product implemented here is the grade-wise Gram-determinant
pairing, equal to the scalar part of (reversion(a) * b).  Note that this
convention differs by a sign, on some grades, from the product used in parts
of the geometric-algebra literature (e.g. Hestenes' X * Y = <XY>_0).
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache
from typing import Iterable, Iterator, Mapping

MAX_DIM = 12

Scalar = complex  # coefficients are stored as machine complex numbers


class SignatureMismatchError(ValueError):
    """Raised when two multivectors from different algebras are combined."""


class NonInvertibleError(ArithmeticError):
    """Raised when an element of the algebra has no inverse."""


@dataclass(frozen=True)
class Signature:
    """The pair (p, q) fixing the metric diag(+1 x p, -1 x q)."""

    p: int
    q: int

    def __post_init__(self) -> None:
        if self.p < 0 or self.q < 0:
            raise ValueError("signature counts must be non-negative")
        if self.p + self.q > MAX_DIM:
            raise ValueError(f"dimension {self.p + self.q} exceeds cap {MAX_DIM}")

    @property
    def n(self) -> int:
        return self.p + self.q

    def square(self, i: int) -> int:
        """Square of generator with 0-based index i."""
        if not 0 <= i < self.n:
            raise ValueError(f"generator index {i} out of range for n={self.n}")
        return 1 if i < self.p else -1

    @property
    def squares(self) -> tuple[int, ...]:
        return tuple(1 if i < self.p else -1 for i in range(self.n))


def _bits(mask: int) -> Iterator[int]:
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


@lru_cache(maxsize=None)
def _reorder_sign(a: int, b: int) -> int:
    # Number of transpositions needed to interleave the ascending factor
    # list of b into that of a; counts pairs (i in a, j in b) with i > j.
    a >>= 1
    swaps = 0
    while a:
        swaps += (a & b).bit_count()
        a >>= 1
    return -1 if swaps & 1 else 1


@lru_cache(maxsize=None)
def _metric_sign(p: int, a_and_b: int) -> int:
    sign = 1
    for i in _bits(a_and_b):
        if i >= p:
            sign = -sign
    return sign


def blade_geometric(sig: Signature, a: int, b: int) -> tuple[int, int]:
    """Product of two basis blades: returns (result mask, sign)."""
    return a ^ b, _reorder_sign(a, b) * _metric_sign(sig.p, a & b)


_REV_SIGN = (1, 1, -1, -1)  # (-1)^{k(k-1)/2} by k mod 4
_GI_SIGN = (1, -1)  # (-1)^k by k mod 2


class Multivector:
    """Immutable sparse multivector: map from blade mask to coefficient."""

    __slots__ = ("signature", "_terms", "real")

    def __init__(self, signature: Signature, terms: Mapping[int, complex] | None = None):
        object.__setattr__(self, "signature", signature)
        clean: dict[int, complex] = {}
        limit = 1 << signature.n
        is_real = True
        for mask, coeff in (terms or {}).items():
            if not 0 <= mask < limit:
                raise ValueError(f"blade mask {mask} invalid for n={signature.n}")
            c = complex(coeff)
            if not (math.isfinite(c.real) and math.isfinite(c.imag)):
                raise ValueError("non-finite coefficient")
            if c != 0:
                clean[mask] = clean.get(mask, 0) + c
                if clean[mask] == 0:
                    del clean[mask]
        for c in clean.values():
            if c.imag != 0.0:
                is_real = False
                break
        object.__setattr__(self, "_terms", clean)
        object.__setattr__(self, "real", is_real)

    def __setattr__(self, name, value):  # pragma: no cover
        raise AttributeError("Multivector is immutable")

    # -- constructors ------------------------------------------------------

    @classmethod
    def scalar(cls, sig: Signature, value: complex) -> "Multivector":
        return cls(sig, {0: value})

    @classmethod
    def zero(cls, sig: Signature) -> "Multivector":
        return cls(sig, {})

    @classmethod
    def generator(cls, sig: Signature, index: int) -> "Multivector":
        """Basis vector e_index with 1-based index."""
        if not 1 <= index <= sig.n:
            raise ValueError(f"generator index {index} out of range 1..{sig.n}")
        return cls(sig, {1 << (index - 1): 1.0})

    @classmethod
    def blade(cls, sig: Signature, indices: Iterable[int], coeff: complex = 1.0) -> "Multivector":
        """Product of distinct generators given by 1-based ascending indices."""
        mask = 0
        for i in indices:
            bit = 1 << (i - 1)
            if mask & bit:
                raise ValueError("repeated generator index in blade")
            mask |= bit
        return cls(sig, {mask: coeff})

    @classmethod
    def from_mask(cls, sig: Signature, mask: int, coeff: complex = 1.0) -> "Multivector":
        return cls(sig, {mask: coeff})

    # -- inspection --------------------------------------------------------

    @property
    def terms(self) -> dict[int, complex]:
        return dict(self._terms)

    def coeff(self, mask: int) -> complex:
        return self._terms.get(mask, 0j)

    def scalar_part(self) -> complex:
        return self._terms.get(0, 0j)

    def grades(self) -> set[int]:
        return {m.bit_count() for m in self._terms}

    def is_zero(self) -> bool:
        return not self._terms

    def max_abs(self) -> float:
        return max((abs(c) for c in self._terms.values()), default=0.0)

    def norm(self) -> float:
        """Euclidean norm of the coefficient vector."""
        return math.sqrt(sum(abs(c) ** 2 for c in self._terms.values()))

    def coefficients(self) -> "list[complex]":
        """Dense coefficient list over all 2^n blades in mask order."""
        return [self._terms.get(m, 0j) for m in range(1 << self.signature.n)]

    def __bool__(self) -> bool:
        return bool(self._terms)

    def __eq__(self, other) -> bool:
        if not isinstance(other, Multivector):
            return NotImplemented
        return self.signature == other.signature and self._terms == other._terms

    def __hash__(self):
        return hash((self.signature, frozenset(self._terms.items())))

    def approx_eq(self, other: "Multivector", tol: float = 1e-12) -> bool:
        return (self - other).max_abs() <= tol

    def __repr__(self) -> str:
        from .serialization import format_multivector

        return f"<Cl({self.signature.p},{self.signature.q}) {format_multivector(self)}>"

    # -- linear structure --------------------------------------------------

    def _check_sig(self, other: "Multivector") -> None:
        if self.signature != other.signature:
            raise SignatureMismatchError(
                f"Cl({self.signature.p},{self.signature.q}) vs "
                f"Cl({other.signature.p},{other.signature.q})"
            )

    def __add__(self, other):
        if isinstance(other, (int, float, complex)):
            other = Multivector.scalar(self.signature, other)
        if not isinstance(other, Multivector):
            return NotImplemented
        self._check_sig(other)
        out = dict(self._terms)
        for m, c in other._terms.items():
            out[m] = out.get(m, 0) + c
        return Multivector(self.signature, out)

    __radd__ = __add__

    def __neg__(self):
        return Multivector(self.signature, {m: -c for m, c in self._terms.items()})

    def __sub__(self, other):
        if isinstance(other, (int, float, complex)):
            other = Multivector.scalar(self.signature, other)
        if not isinstance(other, Multivector):
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, (int, float, complex)):
            return Multivector(self.signature, {m: c * other for m, c in self._terms.items()})
        if not isinstance(other, Multivector):
            return NotImplemented
        return geometric_product(self, other)

    def __rmul__(self, other):
        if isinstance(other, (int, float, complex)):
            return self * other
        return NotImplemented

    def __truediv__(self, other):
        if isinstance(other, (int, float, complex)):
            return self * (1.0 / other)
        return NotImplemented

    def __xor__(self, other):
        if isinstance(other, Multivector):
            return wedge(self, other)
        return NotImplemented

    # -- convenience method forms ------------------------------------------

    def grade(self, k: int) -> "Multivector":
        return grade_part(self, k)

    def even(self) -> "Multivector":
        return Multivector(
            self.signature, {m: c for m, c in self._terms.items() if m.bit_count() % 2 == 0}
        )

    def odd(self) -> "Multivector":
        return Multivector(
            self.signature, {m: c for m, c in self._terms.items() if m.bit_count() % 2 == 1}
        )

    def rev(self) -> "Multivector":
        return reversion(self)

    def prune(self, tol: float) -> "Multivector":
        return Multivector(
            self.signature, {m: c for m, c in self._terms.items() if abs(c) > tol}
        )


# -- products ---------------------------------------------------------------


def geometric_product(a: Multivector, b: Multivector) -> Multivector:
    a._check_sig(b)
    sig = a.signature
    p = sig.p
    out: dict[int, complex] = {}
    for ma, ca in a._terms.items():
        for mb, cb in b._terms.items():
            sign = _reorder_sign(ma, mb) * _metric_sign(p, ma & mb)
            m = ma ^ mb
            out[m] = out.get(m, 0) + sign * ca * cb
    return Multivector(sig, out)


def wedge(a: Multivector, b: Multivector) -> Multivector:
    a._check_sig(b)
    out: dict[int, complex] = {}
    for ma, ca in a._terms.items():
        for mb, cb in b._terms.items():
            if ma & mb:
                continue
            m = ma | mb
            out[m] = out.get(m, 0) + _reorder_sign(ma, mb) * ca * cb
    return Multivector(a.signature, out)


def left_contraction(a: Multivector, b: Multivector) -> Multivector:
    """a _| b: grade-lowering part, nonzero blade-wise only when a's factors
    all occur in b."""
    a._check_sig(b)
    sig = a.signature
    out: dict[int, complex] = {}
    for ma, ca in a._terms.items():
        for mb, cb in b._terms.items():
            if ma & ~mb:
                continue
            sign = _reorder_sign(ma, mb) * _metric_sign(sig.p, ma & mb)
            m = ma ^ mb
            out[m] = out.get(m, 0) + sign * ca * cb
    return Multivector(sig, out)


def right_contraction(a: Multivector, b: Multivector) -> Multivector:
    """a |_ b: nonzero blade-wise only when b's factors all occur in a."""
    a._check_sig(b)
    sig = a.signature
    out: dict[int, complex] = {}
    for ma, ca in a._terms.items():
        for mb, cb in b._terms.items():
            if mb & ~ma:
                continue
            sign = _reorder_sign(ma, mb) * _metric_sign(sig.p, ma & mb)
            m = ma ^ mb
            out[m] = out.get(m, 0) + sign * ca * cb
    return Multivector(sig, out)


def scalar_product(a: Multivector, b: Multivector) -> complex:
    """Grade-wise Gram-determinant pairing; equals <reversion(a) b>_0."""
    a._check_sig(b)
    sig = a.signature
    total = 0j
    for m, ca in a._terms.items():
        cb = b._terms.get(m)
        if cb is None:
            continue
        k = m.bit_count()
        sign = _REV_SIGN[k % 4] * _reorder_sign(m, m) * _metric_sign(sig.p, m)
        total += sign * ca * cb
    if a.real and b.real:
        return total.real
    return total


def grade_part(a: Multivector, k: int) -> Multivector:
    if not 0 <= k <= a.signature.n:
        raise ValueError(f"grade {k} out of range 0..{a.signature.n}")
    return Multivector(a.signature, {m: c for m, c in a._terms.items() if m.bit_count() == k})


# -- involutions ------------------------------------------------------------


def grade_involution(a: Multivector) -> Multivector:
    return Multivector(
        a.signature, {m: _GI_SIGN[m.bit_count() % 2] * c for m, c in a._terms.items()}
    )


def reversion(a: Multivector) -> Multivector:
    return Multivector(
        a.signature, {m: _REV_SIGN[m.bit_count() % 4] * c for m, c in a._terms.items()}
    )


def conjugation(a: Multivector) -> Multivector:
    return grade_involution(reversion(a))


# -- spacetime Hodge dual ----------------------------------------------------


def hodge_dual(a: Multivector) -> Multivector:
    """*C = reversion(C) g5, fixed to the signature (1,3) volume element
    g5 = g^0 g^1 g^2 g^3 (upper-index coordinate coframe)."""
    sig = a.signature
    if (sig.p, sig.q) != (1, 3):
        raise SignatureMismatchError("hodge_dual is defined for signature (1,3) only")
    # g^0 g^1 g^2 g^3 = e1 (-e2)(-e3)(-e4) = -e1e2e3e4
    vol = Multivector(sig, {0b1111: -1.0})
    return geometric_product(reversion(a), vol)


# -- exponential and inverse -------------------------------------------------


def exp_bivector(f: Multivector) -> Multivector:
    """exp of a pure bivector via scaling-and-squaring plus power series."""
    if f.grades() - {2}:
        raise ValueError("exp_bivector requires a pure grade-2 argument")
    sig = f.signature
    scale = f.norm()
    k = 0
    if scale > 0.5:
        k = max(0, math.ceil(math.log2(scale / 0.5)))
    x = f * (0.5 ** k if k else 1.0)
    result = Multivector.scalar(sig, 1.0)
    term = Multivector.scalar(sig, 1.0)
    j = 0
    while True:
        j += 1
        term = geometric_product(term, x) * (1.0 / j)
        result = result + term
        if term.max_abs() < 1e-16 * max(result.max_abs(), 1.0):
            break
        if j > 300:  # pragma: no cover
            raise ArithmeticError("exp_bivector series failed to converge")
    for _ in range(k):
        result = geometric_product(result, result)
    return result


def _left_mult_matrix(a: Multivector):
    import numpy as np

    n = a.signature.n
    dim = 1 << n
    dtype = float if a.real else complex
    mat = np.zeros((dim, dim), dtype=dtype)
    p = a.signature.p
    for mb in range(dim):
        for ma, ca in a._terms.items():
            sign = _reorder_sign(ma, mb) * _metric_sign(p, ma & mb)
            val = sign * ca
            mat[ma ^ mb, mb] += val.real if a.real else val
    return mat


def inverse(a: Multivector) -> Multivector:
    """a^{-1} with a fast path when a * reversion(a) is a nonzero scalar and
    a general path via the 2^n x 2^n left-multiplication linear system."""
    import numpy as np

    sig = a.signature
    if a.is_zero():
        raise NonInvertibleError("zero element has no inverse")
    ar = reversion(a)
    s = geometric_product(a, ar)
    s0 = s.scalar_part()
    if abs(s0) > 1e-14 and (s - Multivector.scalar(sig, s0)).max_abs() <= 1e-14 * abs(s0):
        cand = ar * (1.0 / s0)
        if geometric_product(a, cand).approx_eq(Multivector.scalar(sig, 1.0), 1e-12):
            return cand
    mat = _left_mult_matrix(a)
    dim = 1 << sig.n
    rhs = np.zeros(dim, dtype=mat.dtype)
    rhs[0] = 1.0
    try:
        sol = np.linalg.solve(mat, rhs)
    except np.linalg.LinAlgError as exc:
        raise NonInvertibleError("singular element (zero divisor)") from exc
    cand = Multivector(sig, {m: sol[m] for m in range(dim) if sol[m] != 0})
    residual = (geometric_product(a, cand) - Multivector.scalar(sig, 1.0)).max_abs()
    if residual > 1e-9 * max(1.0, a.max_abs() * cand.max_abs()):
        raise NonInvertibleError(f"singular element (inverse residual {residual:.3g})")
    return cand


def norm_N(a: Multivector) -> complex:
    """N(a) = <conjugation(a) a>_0."""
    val = geometric_product(conjugation(a), a).scalar_part()
    return val.real if a.real else val
