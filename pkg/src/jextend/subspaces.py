"""Subspaces of C^N represented by orthonormal frames."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .conjugation import DEFAULT_CONFIG, ToleranceConfig
from .errors import DimensionMismatch, NotOrthogonal, RankCollapse

# structural sanity bound only; identity checks use ToleranceConfig.residual_tol
_FRAME_TOL = 1e-6


@dataclass(frozen=True, eq=False)
class Frame:
    """Orthonormal basis (as columns) of a subspace of C^N; ``k = 0`` is allowed."""

    basis: np.ndarray

    def __post_init__(self):
        b = np.array(self.basis, dtype=complex)
        if b.ndim != 2:
            raise DimensionMismatch(f"frame basis must be 2-D, got shape {b.shape}")
        n, k = b.shape
        if k > n:
            raise DimensionMismatch(f"{k} orthonormal vectors cannot live in C^{n}")
        if k and np.max(np.abs(b.conj().T @ b - np.eye(k))) > _FRAME_TOL:
            raise ValueError("frame columns are not orthonormal")
        b.setflags(write=False)
        object.__setattr__(self, "basis", b)

    @property
    def ambient_dim(self) -> int:
        return self.basis.shape[0]

    @property
    def dim(self) -> int:
        return self.basis.shape[1]

    @classmethod
    def zero(cls, ambient_dim: int) -> "Frame":
        return cls(np.zeros((ambient_dim, 0), dtype=complex))

    @classmethod
    def full(cls, ambient_dim: int) -> "Frame":
        return cls(np.eye(ambient_dim, dtype=complex))

    def projector(self) -> np.ndarray:
        return self.basis @ self.basis.conj().T


def _as_columns(vectors, ambient_dim=None) -> np.ndarray:
    if isinstance(vectors, np.ndarray) and vectors.ndim == 2:
        return vectors.astype(complex)
    vecs = [np.asarray(v, dtype=complex) for v in vectors]
    if not vecs:
        if ambient_dim is None:
            raise ValueError("cannot infer ambient dimension from an empty list")
        return np.zeros((ambient_dim, 0), dtype=complex)
    lengths = {v.shape for v in vecs}
    if len(lengths) != 1 or len(vecs[0].shape) != 1:
        raise DimensionMismatch(f"vectors have inconsistent shapes {sorted(lengths)}")
    return np.column_stack(vecs)


def orthonormalize(vectors, cfg: ToleranceConfig = DEFAULT_CONFIG, ambient_dim=None) -> Frame:
    """Modified Gram-Schmidt with one reorthogonalization pass.

    ``vectors`` is either a list of N-vectors or an ``N x m`` matrix of
    columns. Each input is scaled to unit norm first; inputs whose residual
    after projection is at most ``rank_tol`` are dropped.
    """
    cols = _as_columns(vectors, ambient_dim)
    n = cols.shape[0]
    accepted: list[np.ndarray] = []
    for j in range(cols.shape[1]):
        v = cols[:, j].copy()
        norm = np.linalg.norm(v)
        if norm <= cfg.rank_tol:
            continue
        v /= norm
        for _ in range(2):
            for q in accepted:
                v -= np.vdot(q, v) * q
        norm = np.linalg.norm(v)
        if norm > cfg.rank_tol:
            accepted.append(v / norm)
        if len(accepted) == n:
            break
    if not accepted:
        return Frame.zero(n)
    return Frame(np.column_stack(accepted))


def complement(F: Frame) -> Frame:
    """Orthogonal complement, built by pivoted Gram-Schmidt over the standard basis."""
    n, k = F.basis.shape
    resid = np.eye(n, dtype=complex) - F.projector()
    new: list[np.ndarray] = []
    for _ in range(n - k):
        # pick the standard-basis residual of largest norm to stay well conditioned
        j = int(np.argmax(np.linalg.norm(resid, axis=0)))
        v = resid[:, j].copy()
        for _ in range(2):
            v -= F.basis @ (F.basis.conj().T @ v)
            for q in new:
                v -= np.vdot(q, v) * q
        v /= np.linalg.norm(v)
        new.append(v)
        resid = resid - np.outer(v, v.conj() @ resid)
    if not new:
        return Frame.zero(n)
    return Frame(np.column_stack(new))


def _same_ambient(F1: Frame, F2: Frame):
    if F1.ambient_dim != F2.ambient_dim:
        raise DimensionMismatch(f"ambient dimensions differ: {F1.ambient_dim} vs {F2.ambient_dim}")


def cross_residual(F1: Frame, F2: Frame) -> float:
    """Largest entry of the cross Gram block; 0 when either frame is empty."""
    _same_ambient(F1, F2)
    if F1.dim == 0 or F2.dim == 0:
        return 0.0
    return float(np.max(np.abs(F1.basis.conj().T @ F2.basis)))


def is_orthogonal(F1: Frame, F2: Frame, cfg: ToleranceConfig = DEFAULT_CONFIG) -> bool:
    return cross_residual(F1, F2) <= cfg.residual_tol


def apply_map(T, vectors: np.ndarray) -> np.ndarray:
    """Apply a linear matrix or an object with ``.apply`` columnwise."""
    if isinstance(T, np.ndarray):
        return T @ vectors
    return T.apply(vectors)


def map_frame(F: Frame, T, cfg: ToleranceConfig = DEFAULT_CONFIG) -> Frame:
    """Image of a subspace under a linear (matrix) or antilinear (``.apply``) map."""
    if F.dim == 0:
        return F
    image = apply_map(T, F.basis)
    if image.shape[0] != F.ambient_dim:
        raise DimensionMismatch(f"map sends C^{F.ambient_dim} to C^{image.shape[0]}")
    out = orthonormalize(image, cfg)
    if out.dim < F.dim:
        raise RankCollapse(f"image has rank {out.dim} < {F.dim}")
    return out


def direct_sum(F1: Frame, F2: Frame, cfg: ToleranceConfig = DEFAULT_CONFIG) -> Frame:
    res = cross_residual(F1, F2)
    if res > cfg.residual_tol:
        raise NotOrthogonal(f"summands are not orthogonal (cross residual {res:.3g})")
    return Frame(np.hstack([F1.basis, F2.basis]))


def projection_residual(F1: Frame, F2: Frame) -> float:
    """Largest entry of the part of ``F2`` lying outside ``span(F1)``."""
    _same_ambient(F1, F2)
    if F2.dim == 0:
        return 0.0
    rest = F2.basis - F1.basis @ (F1.basis.conj().T @ F2.basis)
    return float(np.max(np.abs(rest)))


def spans_equal(F1: Frame, F2: Frame, cfg: ToleranceConfig = DEFAULT_CONFIG) -> bool:
    _same_ambient(F1, F2)
    if F1.dim != F2.dim:
        return False
    return max(projection_residual(F1, F2), projection_residual(F2, F1)) <= cfg.residual_tol
