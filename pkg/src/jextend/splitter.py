"""Split a conjugation-invariant space as ``X + JX`` with ``X`` orthogonal to ``JX``."""

from __future__ import annotations

import numpy as np
from scipy.stats import ortho_group

from .conjugation import DEFAULT_CONFIG, Conjugation, ToleranceConfig, fixed_basis
from .errors import NotInvariant, OddDimension
from .subspaces import Frame, apply_map, cross_residual, direct_sum, map_frame, projection_residual


def pair_fixed_vectors(fixed: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    """Form ``(f_{2k} +/- i f_{2k+1}) / sqrt(2)`` from consecutive fixed columns."""
    if fixed.shape[1] % 2:
        raise OddDimension(f"need an even number of fixed vectors, got {fixed.shape[1]}")
    even, odd = fixed[:, 0::2], fixed[:, 1::2]
    return (even + 1j * odd) / np.sqrt(2), (even - 1j * odd) / np.sqrt(2)


def restrict(D: Frame, conj, tol: float = 1e-8) -> Conjugation:
    """Antilinear map induced on D-coordinates: ``c -> D^H conj(D c)``."""
    coeff = D.basis.conj().T @ apply_map(conj, D.basis)
    return Conjugation(coeff, tol=tol)


def split(D: Frame, conj, rotation_seed: int = 0, cfg: ToleranceConfig = DEFAULT_CONFIG):
    """Return ``(X, JX)`` with ``X + JX = D`` and ``X`` orthogonal to ``JX``.

    ``conj`` is any antilinear map leaving ``D`` invariant (a
    :class:`Conjugation` on the ambient space, or the R / K doubled maps).
    A nonzero ``rotation_seed`` mixes the fixed basis by a seeded random real
    orthogonal matrix before pairing; seed 0 is the canonical pairing.
    """
    k = D.dim
    if k == 0 or k % 2:
        raise OddDimension(f"cannot split a space of dimension {k}")
    JD = map_frame(D, conj, cfg)
    invariance = max(projection_residual(D, JD), projection_residual(JD, D))
    if invariance > cfg.residual_tol:
        raise NotInvariant(f"subspace is not invariant under the conjugation ({invariance:.3g})")

    local = restrict(D, conj, cfg.residual_tol)
    fixed = fixed_basis(local, cfg)
    if rotation_seed:
        rng = np.random.default_rng(rotation_seed)
        # Haar on the full orthogonal group: proper rotations alone keep X in a
        # single one of the two families of maximal isotropic subspaces
        fixed = fixed @ ortho_group.rvs(k, random_state=rng)
    plus, minus = pair_fixed_vectors(fixed)
    return Frame(D.basis @ plus), Frame(D.basis @ minus)


def split_residuals(D: Frame, conj, X: Frame, JX: Frame, cfg: ToleranceConfig = DEFAULT_CONFIG) -> dict:
    """Orthogonality, spanning and image residuals of a splitting."""
    total = direct_sum(X, JX, ToleranceConfig(cfg.rank_tol, 1.0, cfg.max_retries, cfg.seed))
    image = map_frame(X, conj, cfg)
    return {
        "orthogonality": cross_residual(X, JX),
        "span": max(projection_residual(D, total), projection_residual(total, D)) if total.dim == D.dim else float("inf"),
        "image": max(projection_residual(image, JX), projection_residual(JX, image)),
    }
