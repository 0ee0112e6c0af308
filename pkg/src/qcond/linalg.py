"""Finite-dimensional Hermitian linear algebra used by every other module.

All matrices are dense ``numpy.ndarray`` of complex128.  Comparisons are
tolerance-based and every tolerance flows through a :class:`Tolerance` value
instead of ad-hoc constants, so scene files and the CLI can override them
coherently.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .errors import DimMismatchError, NotCommutingFamilyError, NotHermitianError, NotPSDError

__all__ = [
    "Tolerance",
    "DEFAULT_TOL",
    "as_matrix",
    "dagger",
    "frobenius",
    "commutator",
    "is_hermitian",
    "hermitian_eig",
    "psd_sqrt",
    "loewner_leq",
    "trace_product",
    "simultaneous_eigenbasis",
]


@dataclass(frozen=True)
class Tolerance:
    """Numerical slack: ``eq_tol`` for equalities, ``psd_tol`` for eigenvalue floors."""

    eq_tol: float = 1e-9
    psd_tol: float = 1e-10

    def __post_init__(self) -> None:
        if self.eq_tol < 0 or self.psd_tol < 0:
            raise ValueError("tolerances must be non-negative")


DEFAULT_TOL = Tolerance()


def as_matrix(m) -> np.ndarray:
    """Coerce array-like input to a square complex128 matrix (copies)."""
    a = np.array(m, dtype=np.complex128)
    if a.ndim != 2 or a.shape[0] != a.shape[1]:
        raise DimMismatchError(f"expected a square matrix, got shape {a.shape}")
    return a


def dagger(m: np.ndarray) -> np.ndarray:
    """Conjugate transpose."""
    return m.conj().T


def frobenius(m: np.ndarray) -> float:
    """Frobenius norm, the default distance between operators here."""
    return float(np.linalg.norm(m))


def commutator(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    return a @ b - b @ a


def is_hermitian(m: np.ndarray, tol: Tolerance = DEFAULT_TOL) -> bool:
    return bool(frobenius(m - dagger(m)) <= tol.eq_tol)


def hermitian_eig(m, tol: Tolerance = DEFAULT_TOL) -> tuple[np.ndarray, np.ndarray]:
    """Eigendecomposition of a Hermitian matrix.

    Returns ``(w, v)`` with eigenvalues ``w`` real and ascending and the
    columns of ``v`` an orthonormal eigenbasis, so that
    ``m == (v * w) @ v.conj().T`` within tolerance.  Raises
    :class:`NotHermitianError` when ``m`` is not Hermitian within ``eq_tol``.
    """
    m = as_matrix(m)
    dev = frobenius(m - dagger(m))
    if dev > tol.eq_tol:
        raise NotHermitianError(f"matrix deviates from Hermitian by {dev:.3e}")
    w, v = np.linalg.eigh((m + dagger(m)) / 2.0)
    return w, v


def psd_sqrt(m, tol: Tolerance = DEFAULT_TOL) -> np.ndarray:
    """Positive-semidefinite square root with eigenvalue clamping.

    Eigenvalues within ``psd_tol`` of zero are treated as numerical noise
    and clamped to 0 — the square root would otherwise amplify round-off
    (sqrt turns a 1e-16 perturbation of a projection into a 1e-8 one).
    Anything below ``-psd_tol`` raises :class:`NotPSDError`.
    """
    w, v = hermitian_eig(m, tol)
    if w[0] < -tol.psd_tol:
        raise NotPSDError(f"matrix has eigenvalue {w[0]:.3e} below -psd_tol")
    w = np.where(w < tol.psd_tol, 0.0, w)
    return (v * np.sqrt(w)) @ dagger(v)


def loewner_leq(a, b, tol: Tolerance = DEFAULT_TOL) -> bool:
    """Loewner order test ``a <= b``: is ``b - a`` PSD within ``psd_tol``?"""
    a = as_matrix(a)
    b = as_matrix(b)
    if a.shape != b.shape:
        raise DimMismatchError(f"operands have shapes {a.shape} and {b.shape}")
    for name, m in (("a", a), ("b", b)):
        dev = frobenius(m - dagger(m))
        if dev > tol.eq_tol:
            raise NotHermitianError(f"operand {name} deviates from Hermitian by {dev:.3e}")
    diff = (b - a + dagger(b - a)) / 2.0
    return bool(np.linalg.eigvalsh(diff)[0] >= -tol.psd_tol)


def trace_product(a, b) -> complex:
    """tr(a @ b) without forming the product matrix."""
    a = np.asarray(a, dtype=np.complex128)
    b = np.asarray(b, dtype=np.complex128)
    if a.ndim != 2 or b.ndim != 2 or a.shape[1] != b.shape[0] or a.shape[0] != b.shape[1]:
        raise DimMismatchError(f"cannot trace product of shapes {a.shape} and {b.shape}")
    return complex(np.einsum("ij,ji->", a, b))


def _eig_blocks(w: np.ndarray, gap: float) -> list[slice]:
    """Split ascending eigenvalues into clusters separated by more than gap."""
    edges = [0]
    for i in range(1, len(w)):
        if w[i] - w[i - 1] > gap:
            edges.append(i)
    edges.append(len(w))
    return [slice(edges[i], edges[i + 1]) for i in range(len(edges) - 1)]


def simultaneous_eigenbasis(
    mats: Sequence[np.ndarray], tol: Tolerance = DEFAULT_TOL, seed: int = 0
) -> list[np.ndarray]:
    """Common orthonormal eigenbasis of a commuting Hermitian family.

    Strategy: diagonalize a random (seeded, hence deterministic) real linear
    combination of the family, then refine every degenerate eigenvalue block
    against each family member in turn.  After refinement each block is a
    joint eigenspace, so any orthonormal basis of it is simultaneously
    diagonalizing.  Raises :class:`NotCommutingFamilyError` when some pair
    fails ``||[A, B]|| <= eq_tol``.
    """
    family = [as_matrix(m) for m in mats]
    if not family:
        raise DimMismatchError("empty family")
    dim = family[0].shape[0]
    for m in family:
        if m.shape[0] != dim:
            raise DimMismatchError("family members have mixed dimensions")
        dev = frobenius(m - dagger(m))
        if dev > tol.eq_tol:
            raise NotHermitianError(f"family member deviates from Hermitian by {dev:.3e}")
    for i in range(len(family)):
        for j in range(i + 1, len(family)):
            dev = frobenius(commutator(family[i], family[j]))
            if dev > tol.eq_tol:
                raise NotCommutingFamilyError(
                    f"members {i} and {j} have commutator norm {dev:.3e}"
                )

    rng = np.random.default_rng(seed)
    coeffs = rng.standard_normal(len(family))
    probe = sum(c * m for c, m in zip(coeffs, family))

    basis = np.eye(dim, dtype=np.complex128)
    blocks = [slice(0, dim)]
    # Refining with the probe first splits everything generic; the family
    # pass guarantees correctness even where the probe stays degenerate.
    for m in [probe, *family]:
        scale = max(1.0, float(np.abs(np.linalg.eigvalsh((m + dagger(m)) / 2.0)).max()))
        gap = max(100.0 * tol.eq_tol, 1e-7) * scale
        new_blocks: list[slice] = []
        for blk in blocks:
            if blk.stop - blk.start == 1:
                new_blocks.append(blk)
                continue
            sub = dagger(basis[:, blk]) @ m @ basis[:, blk]
            w, u = np.linalg.eigh((sub + dagger(sub)) / 2.0)
            basis[:, blk] = basis[:, blk] @ u
            for inner in _eig_blocks(w, gap):
                new_blocks.append(slice(blk.start + inner.start, blk.start + inner.stop))
        blocks = new_blocks
    return [basis[:, k].copy() for k in range(dim)]
