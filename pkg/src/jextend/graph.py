"""Geometry of the doubled space H2 = H + H.

Vectors of C^{2n} are stacked as ``(x; y)``: the first ``n`` entries are the
x-block, the last ``n`` the y-block. Graphs, the five canonical maps and the
block split in :func:`operator_from_graph` all rely on this ordering.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Literal

import numpy as np

from .conjugation import DEFAULT_CONFIG, Conjugation, ToleranceConfig
from .errors import (
    DegenerateDomain,
    DimensionMismatch,
    InternalInvariantViolation,
    NotAGraph,
    NotIsometric,
    NotSkewSymmetric,
    WrongDimension,
)
from .subspaces import (
    Frame,
    complement,
    cross_residual,
    direct_sum,
    map_frame,
    orthonormalize,
    projection_residual,
)

MapKind = Literal["J2", "V", "U", "R", "K"]
KINDS: tuple[str, ...] = ("J2", "V", "U", "R", "K")


@dataclass(frozen=True, eq=False)
class DoubledMap:
    """One of J2, V, U, R, K acting on C^{2n}.

    ``matrix`` is applied to ``v`` (linear kinds V, U) or to ``conj(v)``
    (antilinear kinds J2, R, K).

    J2{x,y} = {Jx, Jy}, V{x,y} = {y, -x}, U{x,y} = {y, x},
    R{x,y} = {Jy, Jx}, K{x,y} = {Jx, -Jy}.
    """

    kind: str
    base: Conjugation
    matrix: np.ndarray
    antilinear: bool

    @property
    def dim(self) -> int:
        return self.matrix.shape[0]

    def apply(self, v: np.ndarray) -> np.ndarray:
        v = np.asarray(v)
        if v.shape[0] != self.dim:
            raise DimensionMismatch(f"expected leading dimension {self.dim}, got {v.shape[0]}")
        return self.matrix @ (np.conj(v) if self.antilinear else v)

    def as_conjugation(self) -> Conjugation:
        """R and K are conjugations on C^{2n}; expose them as such."""
        if not self.antilinear:
            raise TypeError(f"{self.kind} is linear, not a conjugation")
        return Conjugation(self.matrix, tol=self.base.tol)


def build_doubled_map(kind: str, J: Conjugation) -> DoubledMap:
    n = J.dim
    C = J.coeff
    I = np.eye(n, dtype=complex)
    Z = np.zeros((n, n), dtype=complex)
    if kind == "J2":
        m, anti = np.block([[C, Z], [Z, C]]), True
    elif kind == "V":
        m, anti = np.block([[Z, I], [-I, Z]]), False
    elif kind == "U":
        m, anti = np.block([[Z, I], [I, Z]]), False
    elif kind == "R":
        m, anti = np.block([[Z, C], [C, Z]]), True
    elif kind == "K":
        m, anti = np.block([[C, Z], [Z, -C]]), True
    else:
        raise ValueError(f"unknown map kind {kind!r}; expected one of {KINDS}")
    m.setflags(write=False)
    return DoubledMap(kind, J, m, anti)


@dataclass(frozen=True, eq=False)
class PartialOperator:
    """Linear operator known only on ``span(domain)``.

    ``domain`` and ``action`` are ``n x m`` matrices whose i-th columns are
    ``d_i`` and ``A d_i``.
    """

    domain: np.ndarray
    action: np.ndarray

    def __post_init__(self):
        d = np.array(self.domain, dtype=complex)
        a = np.array(self.action, dtype=complex)
        if d.ndim != 2 or a.ndim != 2:
            raise DimensionMismatch("domain and action must be 2-D column matrices")
        if d.shape != a.shape:
            raise DimensionMismatch(f"domain shape {d.shape} differs from action shape {a.shape}")
        d.setflags(write=False)
        a.setflags(write=False)
        object.__setattr__(self, "domain", d)
        object.__setattr__(self, "action", a)

    @classmethod
    def from_vectors(cls, n: int, domain_basis, action) -> "PartialOperator":
        def cols(vs):
            vs = [np.asarray(v, dtype=complex) for v in vs]
            if any(v.shape != (n,) for v in vs):
                raise DimensionMismatch(f"every vector must have length {n}")
            return np.column_stack(vs) if vs else np.zeros((n, 0), dtype=complex)

        return cls(cols(domain_basis), cols(action))

    @property
    def ambient_dim(self) -> int:
        return self.domain.shape[0]

    @property
    def domain_dim(self) -> int:
        return self.domain.shape[1]


def graph_frame(P: PartialOperator, cfg: ToleranceConfig = DEFAULT_CONFIG) -> Frame:
    """Orthonormal frame of ``{(x, Ax)}`` in C^{2n}."""
    n, m = P.domain.shape
    if orthonormalize(P.domain, cfg).dim < m:
        raise DegenerateDomain(f"domain vectors span fewer than {m} dimensions")
    G = orthonormalize(np.vstack([P.domain, P.action]), cfg)
    if G.dim != m:
        raise InternalInvariantViolation(f"graph has dimension {G.dim}, expected {m}")
    return G


def smallest_singular_value(M: np.ndarray) -> float:
    if M.size == 0:
        return float("inf")
    return float(np.linalg.svd(M, compute_uv=False)[-1])


def operator_from_graph(G: Frame, cfg: ToleranceConfig = DEFAULT_CONFIG) -> np.ndarray:
    """Recover ``B`` from a frame spanning its graph.

    With the basis split into a top block ``P`` and bottom block ``Q``, the
    subspace is a graph exactly when ``P`` is invertible, and then
    ``B = Q P^{-1}``.

    Raises
    ------
    WrongDimension
        If ``dim(G) != n``.
    NotAGraph
        If the smallest singular value of ``P`` is at most ``rank_tol``.
    """
    if G.ambient_dim % 2:
        raise WrongDimension(f"ambient dimension {G.ambient_dim} is odd")
    n = G.ambient_dim // 2
    if G.dim != n:
        raise WrongDimension(f"graph frame has dimension {G.dim}, expected {n}")
    P, Q = G.basis[:n], G.basis[n:]
    smin = smallest_singular_value(P)
    if smin <= cfg.rank_tol:
        raise NotAGraph(f"top block is singular (sigma_min {smin:.3g})", sigma_min=smin)
    # B P = Q  <=>  P^T B^T = Q^T
    return np.linalg.solve(P.T, Q.T).T


def defect_space(G_A: Frame, conj: DoubledMap, cfg: ToleranceConfig = DEFAULT_CONFIG) -> Frame:
    """Orthogonal complement of ``G_A + conj(G_A)``; ``conj`` is R or K."""
    if conj.kind not in ("R", "K"):
        raise ValueError(f"defect space needs R or K, got {conj.kind}")
    image = map_frame(G_A, conj, cfg)
    res = cross_residual(G_A, image)
    if res > cfg.residual_tol:
        err = NotSkewSymmetric if conj.kind == "R" else NotIsometric
        raise err(f"graph is not orthogonal to its {conj.kind}-image (residual {res:.3g})", residual=res)
    D = complement(direct_sum(G_A, image, cfg))
    DD = map_frame(D, conj, cfg)
    invariance = max(projection_residual(D, DD), projection_residual(DD, D))
    if invariance > cfg.residual_tol:
        raise InternalInvariantViolation(f"defect space is not {conj.kind}-invariant ({invariance:.3g})")
    return D
