"""Conjugations on C^n and the complex bilinear form they induce.

A conjugation is an antilinear involution that is also antiunitary. On C^n
every such map has the form ``x -> C @ conj(x)`` with ``C`` symmetric and
unitary, so a :class:`Conjugation` is stored as that coefficient matrix.

Inner products are linear in the first slot and conjugate-linear in the
second, ``(x, y) = sum(x * conj(y))``.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .errors import ConjugationInvalid, DimensionMismatch


@dataclass(frozen=True)
class ToleranceConfig:
    """Numerical knobs shared by every stage of the construction.

    Attributes
    ----------
    rank_tol : float
        Singular-value / residual-norm cutoff for rank decisions.
    residual_tol : float
        Tolerance for identity checks (orthogonality, structure residuals).
    max_retries : int
        Number of extra splitting attempts after the canonical one.
    seed : int
        Base seed for the retry rotations.
    """

    rank_tol: float = 1e-8
    residual_tol: float = 1e-8
    max_retries: int = 32
    seed: int = 0

    def __post_init__(self):
        if not self.rank_tol > 0:
            raise ValueError(f"rank_tol must be positive, got {self.rank_tol}")
        if not self.residual_tol > 0:
            raise ValueError(f"residual_tol must be positive, got {self.residual_tol}")
        if self.max_retries < 0:
            raise ValueError(f"max_retries must be nonnegative, got {self.max_retries}")
        if not 0 <= self.seed < 2**64:
            raise ValueError(f"seed must fit in 64 unsigned bits, got {self.seed}")


DEFAULT_CONFIG = ToleranceConfig()


@dataclass(frozen=True, eq=False)
class Conjugation:
    """Antilinear involution ``x -> coeff @ conj(x)``.

    The coefficient matrix is checked for symmetry and unitarity on
    construction; ``tol`` is the max-entry tolerance for both checks.
    """

    coeff: np.ndarray
    tol: float = field(default=1e-8, repr=False)

    def __post_init__(self):
        c = np.array(self.coeff, dtype=complex)
        if c.ndim != 2 or c.shape[0] != c.shape[1] or c.shape[0] == 0:
            raise ConjugationInvalid(f"coefficient must be a nonempty square matrix, got shape {c.shape}")
        c.setflags(write=False)
        object.__setattr__(self, "coeff", c)
        unit = np.max(np.abs(c @ c.conj().T - np.eye(c.shape[0])))
        sym = np.max(np.abs(c - c.T))
        if unit > self.tol:
            raise ConjugationInvalid(f"coefficient is not unitary (residual {unit:.3g})")
        if sym > self.tol:
            raise ConjugationInvalid(f"coefficient is not symmetric (residual {sym:.3g})")

    @property
    def dim(self) -> int:
        return self.coeff.shape[0]

    antilinear = True

    def apply(self, x: np.ndarray) -> np.ndarray:
        """Apply to a vector or to each column of a matrix."""
        x = np.asarray(x)
        if x.shape[0] != self.dim:
            raise DimensionMismatch(f"expected leading dimension {self.dim}, got {x.shape[0]}")
        return self.coeff @ np.conj(x)

    @property
    def form_matrix(self) -> np.ndarray:
        """Gram matrix of the bilinear form: ``[x, y] = x.T @ form_matrix @ y``."""
        return self.coeff.conj()


def apply_conjugation(J: Conjugation, x) -> np.ndarray:
    return J.apply(x)


def bilinear_form(J: Conjugation, x, y) -> complex:
    """Symmetric complex-bilinear form ``[x, y] = (x, J y)``."""
    x = np.asarray(x, dtype=complex)
    y = np.asarray(y, dtype=complex)
    if x.shape != (J.dim,) or y.shape != (J.dim,):
        raise DimensionMismatch(f"vectors must have shape ({J.dim},), got {x.shape} and {y.shape}")
    return complex(np.vdot(J.apply(y), x))


def conjugated_operator(J: Conjugation, B) -> np.ndarray:
    """Matrix of the linear map ``J B J``, i.e. ``C conj(B) conj(C)``."""
    B = np.asarray(B, dtype=complex)
    if B.shape != (J.dim, J.dim):
        raise DimensionMismatch(f"operator must be {J.dim}x{J.dim}, got {B.shape}")
    return J.coeff @ B.conj() @ J.coeff.conj()


def _check_valid(J: Conjugation, tol: float):
    c = J.coeff
    unit = np.max(np.abs(c @ c.conj().T - np.eye(J.dim)))
    sym = np.max(np.abs(c - c.T))
    if unit > tol or sym > tol:
        raise ConjugationInvalid(
            f"conjugation fails validity checks (unitarity {unit:.3g}, symmetry {sym:.3g})"
        )


def fixed_basis(J: Conjugation, cfg: ToleranceConfig = DEFAULT_CONFIG) -> np.ndarray:
    """Orthonormal basis of C^n made of vectors fixed by ``J``.

    Fixed vectors form a real subspace whose complex inner products are all
    real, so a real Gram-Schmidt over the candidates ``v + Jv`` and
    ``i (v - Jv)`` (v sweeping the standard basis) yields a complex basis.

    Returns
    -------
    ndarray
        ``n x n`` matrix whose columns are the basis vectors.
    """
    _check_valid(J, cfg.residual_tol)
    n = J.dim
    accepted: list[np.ndarray] = []
    for k in range(n):
        v = np.zeros(n, dtype=complex)
        v[k] = 1.0
        Jv = J.apply(v)
        for cand in (v + Jv, 1j * (v - Jv)):
            w = cand
            # two passes: the second cleans up cancellation from the first
            for _ in range(2):
                for f in accepted:
                    w = w - np.real(np.vdot(f, w)) * f
            norm = np.linalg.norm(w)
            if norm > cfg.rank_tol:
                accepted.append(w / norm)
            if len(accepted) == n:
                return np.column_stack(accepted)
    raise ConjugationInvalid(f"found only {len(accepted)} of {n} fixed basis vectors")


def random_conjugation(n: int, seed: int) -> Conjugation:
    """Seeded conjugation ``C = Q Q^T`` from a random unitary ``Q``."""
    if n < 1:
        raise ValueError(f"dimension must be positive, got {n}")
    rng = np.random.default_rng(seed)
    z = rng.standard_normal((n, n)) + 1j * rng.standard_normal((n, n))
    q, r = np.linalg.qr(z)
    q = q * (np.diag(r) / np.abs(np.diag(r)))
    c = q @ q.T
    # symmetrize away rounding so the stored matrix is exactly symmetric
    c = (c + c.T) / 2
    return Conjugation(c)
