"""Extension of J-skew-symmetric and J-isometric partial operators.

The pipeline works on graphs in the doubled space. For a skew problem the
graph ``G_A`` is orthogonal to ``R G_A`` (for an isometric one, to
``K G_A``); the orthogonal complement ``D`` of both is invariant under the
same conjugation, so it splits as ``X + conj(X)``. Then ``G_A + X`` is
orthogonal to its own image and has dimension ``n``; whenever it is a graph,
its operator ``B`` is a full J-skew-self-adjoint (J-unitary) extension.

Finite-dimensional splittings do not always produce graphs, so the engine
retries with seeded rotations of the splitting and, as a last resort,
replaces ``A`` by ``A + A`` acting on ``H + H``.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass, replace
from typing import Literal, NamedTuple

import numpy as np
from scipy.linalg import block_diag

from .conjugation import DEFAULT_CONFIG, Conjugation, ToleranceConfig
from .errors import (
    DimensionMismatch,
    Exhausted,
    NotAGraph,
    NotIsometric,
    NotSkewSymmetric,
)
from .graph import (
    PartialOperator,
    build_doubled_map,
    defect_space,
    graph_frame,
    operator_from_graph,
    smallest_singular_value,
)
from .splitter import split, split_residuals
from .subspaces import direct_sum, orthonormalize

log = logging.getLogger(__name__)

Mode = Literal["skew", "isometric"]
MODES: tuple[str, ...] = ("skew", "isometric")


@dataclass(frozen=True, eq=False)
class Problem:
    conjugation: Conjugation
    mode: str
    op: PartialOperator
    cfg: ToleranceConfig = DEFAULT_CONFIG

    def __post_init__(self):
        if self.mode not in MODES:
            raise ValueError(f"mode must be one of {MODES}, got {self.mode!r}")
        if self.op.ambient_dim != self.conjugation.dim:
            raise DimensionMismatch(
                f"operator lives in C^{self.op.ambient_dim}, conjugation in C^{self.conjugation.dim}"
            )

    @property
    def dim(self) -> int:
        return self.conjugation.dim


@dataclass(frozen=True, eq=False)
class ExtensionReport:
    mode: str
    extended_dim: int
    doubled: bool
    B: np.ndarray
    extended_conjugation: Conjugation
    defect_dim: int
    retries_used: int
    residual_extension: float
    residual_structure: float
    residual_split: float
    sigma_min: float


class UnitarityCheck(NamedTuple):
    residual: float
    sigma_min: float
    passed: bool


def _form_residual_skew(F, D, AD) -> float:
    M = AD.T @ F @ D + D.T @ F @ AD
    return float(np.max(np.abs(M))) if M.size else 0.0


def _form_residual_isometric(F, D, AD) -> float:
    M = AD.T @ F @ AD - D.T @ F @ D
    return float(np.max(np.abs(M))) if M.size else 0.0


def validate(P: Problem) -> float:
    """Largest violation of the mode identity over pairs of domain vectors.

    skew: ``|[A d_i, d_j] + [d_i, A d_j]|``;
    isometric: ``|[A d_i, A d_j] - [d_i, d_j]|``.
    """
    F = P.conjugation.form_matrix
    if P.mode == "skew":
        return _form_residual_skew(F, P.op.domain, P.op.action)
    return _form_residual_isometric(F, P.op.domain, P.op.action)


def symmetric_residual(P: Problem) -> float:
    """Violation of ``[A d_i, d_j] = [d_i, A d_j]`` (the J-symmetric class)."""
    F = P.conjugation.form_matrix
    D, AD = P.op.domain, P.op.action
    M = AD.T @ F @ D - D.T @ F @ AD
    return float(np.max(np.abs(M))) if M.size else 0.0


def verify_skew_self_adjoint(B, J: Conjugation, cfg: ToleranceConfig = DEFAULT_CONFIG) -> float:
    """Max-entry residual of ``J B J + B^*``."""
    B = np.asarray(B, dtype=complex)
    if B.shape != (J.dim, J.dim):
        raise DimensionMismatch(f"operator must be {J.dim}x{J.dim}, got {B.shape}")
    return float(np.max(np.abs(J.coeff @ B.conj() @ J.coeff.conj() + B.conj().T)))


def verify_j_unitary(B, J: Conjugation, cfg: ToleranceConfig = DEFAULT_CONFIG) -> UnitarityCheck:
    """Form preservation ``B^T conj(C) B = conj(C)`` plus invertibility."""
    B = np.asarray(B, dtype=complex)
    if B.shape != (J.dim, J.dim):
        raise DimensionMismatch(f"operator must be {J.dim}x{J.dim}, got {B.shape}")
    F = J.form_matrix
    res = float(np.max(np.abs(B.T @ F @ B - F)))
    smin = smallest_singular_value(B)
    return UnitarityCheck(res, smin, res <= cfg.residual_tol and smin > cfg.rank_tol)


def structure_residual(B, J: Conjugation, mode: str, cfg: ToleranceConfig = DEFAULT_CONFIG) -> float:
    if mode == "skew":
        return verify_skew_self_adjoint(B, J, cfg)
    return verify_j_unitary(B, J, cfg).residual


def extension_residual(B, op: PartialOperator) -> float:
    """``max_i |B d_i - A d_i|``."""
    if op.domain_dim == 0:
        return 0.0
    return float(np.max(np.linalg.norm(B @ op.domain - op.action, axis=0)))


def double_problem(P: Problem) -> Problem:
    """``A + A`` on ``H + H`` with conjugation ``J + J``."""
    J2 = Conjugation(block_diag(P.conjugation.coeff, P.conjugation.coeff), tol=P.conjugation.tol)
    op = PartialOperator(block_diag(P.op.domain, P.op.domain), block_diag(P.op.action, P.op.action))
    return Problem(J2, P.mode, op, P.cfg)


def _rotation_seed(cfg: ToleranceConfig, attempt: int, stage: int) -> int:
    if attempt == 0:
        return 0
    state = np.random.SeedSequence([cfg.seed, stage, attempt]).generate_state(1, np.uint64)[0]
    return int(state) or 1


def _reject(P: Problem, message: str, residual: float):
    err = NotSkewSymmetric if P.mode == "skew" else NotIsometric
    raise err(message, residual=residual)


def _check_hypotheses(P: Problem):
    res = validate(P)
    if res > P.cfg.residual_tol:
        _reject(P, f"operator is not J-{P.mode} on its domain (residual {res:.3g})", res)
    if P.mode == "isometric" and orthonormalize(P.op.action, P.cfg).dim < P.op.domain_dim:
        _reject(P, "J-isometric operator must be injective on its domain", res)


def extend(P: Problem, force_double: bool = False) -> ExtensionReport:
    """Build a full J-skew-self-adjoint (J-unitary) extension of ``P.op``.

    Raises
    ------
    NotSkewSymmetric, NotIsometric
        If the input fails the mode identity on its domain.
    Exhausted
        If no splitting produced a valid extension, even after doubling.
    """
    _check_hypotheses(P)
    diagnostics = {"attempts": 0, "best_structure": float("inf")}
    stages = [(double_problem(P), True)] if force_double else [(P, False), (double_problem(P), True)]
    for problem, doubled in stages:
        report = _extend_once(problem, doubled, diagnostics)
        if report is not None:
            return report
        if not doubled:
            log.info("no extension found at n=%d; doubling", P.dim)
    raise Exhausted(f"no valid extension after {diagnostics['attempts']} attempts", diagnostics)


def _extend_once(P: Problem, doubled: bool, diag: dict):
    cfg, J, op = P.cfg, P.conjugation, P.op
    n = P.dim
    conj = build_doubled_map("R" if P.mode == "skew" else "K", J)
    G_A = graph_frame(op, cfg)
    D = defect_space(G_A, conj, cfg)

    def finish(B, split_res):
        struct = structure_residual(B, J, P.mode, cfg)
        ext = extension_residual(B, op)
        smin = smallest_singular_value(B)
        diag["best_structure"] = min(diag["best_structure"], struct)
        if struct > cfg.residual_tol or ext > cfg.residual_tol:
            return None
        if P.mode == "isometric" and smin <= cfg.rank_tol:
            return None
        return ExtensionReport(
            mode=P.mode,
            extended_dim=n,
            doubled=doubled,
            B=B,
            extended_conjugation=J,
            defect_dim=D.dim,
            retries_used=diag["attempts"] - 1,
            residual_extension=ext,
            residual_structure=struct,
            residual_split=split_res,
            sigma_min=smin,
        )

    if D.dim == 0:
        # full domain: A is already the extension
        diag["attempts"] += 1
        B = np.linalg.solve(op.domain.T, op.action.T).T
        return finish(B, 0.0)

    if D.dim % 2:
        # unreachable for exact input: dim D = 2(n - m); the doubled defect is even
        return None

    stage = 1 if doubled else 0
    for attempt in range(cfg.max_retries + 1):
        diag["attempts"] += 1
        X, JX = split(D, conj, _rotation_seed(cfg, attempt, stage), cfg)
        G_B = direct_sum(G_A, X, cfg)
        try:
            B = operator_from_graph(G_B, cfg)
        except NotAGraph as exc:
            log.debug("attempt %d: not a graph (sigma_min %.3g)", attempt, exc.sigma_min)
            continue
        sr = split_residuals(D, conj, X, JX, cfg)
        report = finish(B, max(sr.values()))
        if report is not None:
            return report
    return None


def with_tolerance(P: Problem, residual_tol: float) -> Problem:
    return replace(P, cfg=replace(P.cfg, residual_tol=residual_tol))
