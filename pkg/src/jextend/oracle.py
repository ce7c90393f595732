"""Independent cross-checks and seeded instance generators.

Nothing here goes through graphs or splittings. The skew-extension problem
is solved directly as a real-linear least-squares system over the solution
space of ``C conj(B) conj(C) + B^* = 0``, and the 1x1 case is settled by
brute-force grid search.

Realification layout: a complex matrix ``Z`` maps to the real vector
``[Re(Z).ravel(), Im(Z).ravel()]`` (row-major).
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
from scipy import ndimage
from scipy.linalg import expm, null_space

from .conjugation import Conjugation, ToleranceConfig, random_conjugation
from .engine import Problem, verify_j_unitary
from .errors import GeneratorFailure, Infeasible
from .graph import PartialOperator


def realify(Z: np.ndarray) -> np.ndarray:
    Z = np.asarray(Z, dtype=complex)
    return np.concatenate([Z.real.ravel(), Z.imag.ravel()])


def complexify(v: np.ndarray, shape) -> np.ndarray:
    size = int(np.prod(shape))
    return (v[:size] + 1j * v[size:]).reshape(shape)


def _skew_constraint(J: Conjugation, B: np.ndarray) -> np.ndarray:
    C = J.coeff
    return C @ B.conj() @ C.conj() + B.conj().T


def constraint_matrix(J: Conjugation) -> np.ndarray:
    """Real ``2n^2 x 2n^2`` matrix of ``B -> C conj(B) conj(C) + B^*``."""
    n = J.dim
    cols = []
    for unit in (1.0, 1j):
        for k in range(n * n):
            E = np.zeros(n * n, dtype=complex)
            E[k] = unit
            cols.append(realify(_skew_constraint(J, E.reshape(n, n))))
    return np.column_stack(cols)


def structure_space(J: Conjugation) -> list[np.ndarray]:
    """Real basis of all J-skew-self-adjoint ``n x n`` matrices."""
    n = J.dim
    kernel = null_space(constraint_matrix(J), rcond=1e-10)
    return [complexify(kernel[:, j], (n, n)) for j in range(kernel.shape[1])]


def constraint_residual(P: Problem, B) -> float:
    """Residual of ``B`` in the realified system: skew constraint plus ``B D = A D``."""
    B = np.asarray(B, dtype=complex)
    structural = np.max(np.abs(constraint_matrix(P.conjugation) @ realify(B)))
    if P.op.domain_dim == 0:
        return float(structural)
    extension = np.max(np.abs(realify(B @ P.op.domain - P.op.action)))
    return float(max(structural, extension))


def solve_case_a(P: Problem) -> np.ndarray:
    """Least-squares skew extension without enlarging the space.

    Returns the minimizer when its residual is within ``residual_tol``;
    otherwise raises :class:`Infeasible` carrying the minimal residual.
    """
    if P.mode != "skew":
        raise ValueError("solve_case_a handles skew problems only")
    n, m = P.op.domain.shape
    basis = structure_space(P.conjugation)
    target = realify(P.op.action)
    if basis and m:
        M = np.column_stack([realify(S @ P.op.domain) for S in basis])
        coef, *_ = np.linalg.lstsq(M, target, rcond=None)
        B = sum(c * S for c, S in zip(coef, basis))
    else:
        B = np.zeros((n, n), dtype=complex)
    residual = float(np.max(np.abs(realify(B @ P.op.domain) - target))) if m else 0.0
    if residual > P.cfg.residual_tol:
        raise Infeasible(f"no J-skew-self-adjoint extension in C^{n} (residual {residual:.3g})", residual, B)
    return B


def _instance_rngs(seed: int):
    conj_seed, rest = np.random.SeedSequence(seed).spawn(2)
    return int(conj_seed.generate_state(1, np.uint64)[0]), np.random.default_rng(rest)


def _random_structure_element(J: Conjugation, rng) -> np.ndarray:
    basis = structure_space(J)
    S = np.zeros((J.dim, J.dim), dtype=complex)
    for B in basis:
        S += rng.standard_normal() * B
    return S


def _random_domain(n: int, m: int, rng) -> np.ndarray:
    return (rng.standard_normal((n, m)) + 1j * rng.standard_normal((n, m))) / np.sqrt(2)


def gen_case_a(n: int, m: int, seed: int, cfg: ToleranceConfig | None = None, return_witness: bool = False):
    """Random skew problem ``A = S|_domain`` for a J-skew-self-adjoint ``S``."""
    if not 0 <= m <= n:
        raise ValueError(f"need 0 <= m <= n, got m={m}, n={n}")
    conj_seed, rng = _instance_rngs(seed)
    J = random_conjugation(n, conj_seed)
    S = _random_structure_element(J, rng)
    domain = _random_domain(n, m, rng)
    P = Problem(J, "skew", PartialOperator(domain, S @ domain), cfg or ToleranceConfig())
    return (P, S) if return_witness else P


def gen_case_b(n: int, m: int, seed: int, cfg: ToleranceConfig | None = None, return_witness: bool = False):
    """Random isometric problem ``A = exp(S)|_domain``; the witness is checked at runtime."""
    if not 0 <= m <= n:
        raise ValueError(f"need 0 <= m <= n, got m={m}, n={n}")
    conj_seed, rng = _instance_rngs(seed)
    J = random_conjugation(n, conj_seed)
    S = _random_structure_element(J, rng)
    S /= max(1.0, np.linalg.norm(S, 2))
    B0 = expm(S)
    check = verify_j_unitary(B0, J)
    if not check.passed:
        raise GeneratorFailure(f"exp(S) fails form preservation (residual {check.residual:.3g})")
    domain = _random_domain(n, m, rng)
    P = Problem(J, "isometric", PartialOperator(domain, B0 @ domain), cfg or ToleranceConfig())
    return (P, B0) if return_witness else P


@dataclass(frozen=True, eq=False)
class GridSolutions:
    """Grid points where a 1x1 mode identity holds, grouped into clusters."""

    points: np.ndarray
    solutions: np.ndarray
    step: float

    def contains(self, b: complex) -> bool:
        if self.points.size == 0:
            return False
        return bool(np.min(np.abs(self.points - b)) <= self.step)


def scalar_residual(C: complex, b, mode: str):
    """Mode identity residual for the 1x1 case, vectorized over ``b``."""
    b = np.asarray(b, dtype=complex)
    if mode == "skew":
        return np.abs(C * np.conj(b) * np.conj(C) + np.conj(b))
    if mode == "isometric":
        return np.abs(b * b * np.conj(C) - np.conj(C))
    raise ValueError(f"unknown mode {mode!r}")


def exhaustive_check_1d(C: complex, mode: str, radius: float = 2.0, step: float = 1e-2, tol: float = 5e-2) -> GridSolutions:
    if abs(abs(C) - 1) > 1e-12:
        raise ValueError(f"|C| must be 1, got {abs(C)}")
    ticks = np.arange(-round(radius / step), round(radius / step) + 1) * step
    grid = ticks[None, :] + 1j * ticks[:, None]
    res = scalar_residual(C, grid, mode)
    mask = res <= tol
    labels, count = ndimage.label(mask, structure=np.ones((3, 3)))
    reps = []
    for lab in range(1, count + 1):
        idx = np.flatnonzero(labels.ravel() == lab)
        reps.append(grid.ravel()[idx[np.argmin(res.ravel()[idx])]])
    return GridSolutions(points=grid[mask], solutions=np.array(reps), step=step)
