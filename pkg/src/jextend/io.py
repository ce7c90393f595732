"""JSON problem and report files.

Complex numbers are ``[re, im]`` pairs, matrices are row-major lists of rows
and vectors are flat lists. Floats are written with ``repr`` so every double
survives a round trip exactly.
"""

from __future__ import annotations

import json
from pathlib import Path

import numpy as np

from .conjugation import Conjugation, ToleranceConfig
from .engine import MODES, ExtensionReport, Problem
from .errors import ExtensionError
from .graph import PartialOperator


class ProblemFormatError(ExtensionError, ValueError):
    pass


def encode_complex(z) -> list[float]:
    z = complex(z)
    return [float(z.real), float(z.imag)]


def encode_vector(v) -> list[list[float]]:
    return [encode_complex(z) for z in np.asarray(v).ravel()]


def encode_matrix(M) -> list[list[list[float]]]:
    return [encode_vector(row) for row in np.asarray(M)]


def _decode_complex(obj, where: str) -> complex:
    if (
        not isinstance(obj, list)
        or len(obj) != 2
        or not all(isinstance(t, (int, float)) and not isinstance(t, bool) for t in obj)
    ):
        raise ProblemFormatError(f"{where}: expected [re, im], got {obj!r}")
    return complex(obj[0], obj[1])


def decode_vector(obj, n: int, where: str) -> np.ndarray:
    if not isinstance(obj, list) or len(obj) != n:
        raise ProblemFormatError(f"{where}: expected a list of {n} complex numbers")
    return np.array([_decode_complex(z, f"{where}[{i}]") for i, z in enumerate(obj)], dtype=complex)


def decode_matrix(obj, n: int, where: str) -> np.ndarray:
    if not isinstance(obj, list) or len(obj) != n:
        raise ProblemFormatError(f"{where}: expected {n} rows")
    return np.array([decode_vector(row, n, f"{where}[{i}]") for i, row in enumerate(obj)])


def _read_json(path) -> dict:
    try:
        text = Path(path).read_text(encoding="utf-8")
    except OSError as exc:
        raise ProblemFormatError(f"cannot read {path}: {exc}") from exc
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ProblemFormatError(f"{path}: invalid JSON ({exc})") from exc
    if not isinstance(data, dict):
        raise ProblemFormatError(f"{path}: top level must be an object")
    return data


def _dim(data: dict) -> int:
    n = data.get("dim")
    if not isinstance(n, int) or isinstance(n, bool) or n < 1:
        raise ProblemFormatError(f"'dim' must be a positive integer, got {n!r}")
    return n


def conjugation_from_dict(data: dict, tol: float = 1e-8) -> Conjugation:
    n = _dim(data)
    coeff = decode_matrix(data.get("conjugation"), n, "conjugation")
    try:
        return Conjugation(coeff, tol=tol)
    except ExtensionError as exc:
        raise ProblemFormatError(f"conjugation: {exc}") from exc


def problem_from_dict(data: dict, cfg: ToleranceConfig | None = None) -> Problem:
    cfg = cfg or ToleranceConfig()
    n = _dim(data)
    mode = data.get("mode")
    if mode not in MODES:
        raise ProblemFormatError(f"'mode' must be one of {MODES}, got {mode!r}")
    J = conjugation_from_dict(data)
    domain, action = data.get("domain_basis"), data.get("action")
    if not isinstance(domain, list) or not isinstance(action, list):
        raise ProblemFormatError("'domain_basis' and 'action' must be lists of vectors")
    if len(domain) != len(action):
        raise ProblemFormatError(f"{len(domain)} domain vectors but {len(action)} action vectors")
    d = [decode_vector(v, n, f"domain_basis[{i}]") for i, v in enumerate(domain)]
    a = [decode_vector(v, n, f"action[{i}]") for i, v in enumerate(action)]
    return Problem(J, mode, PartialOperator.from_vectors(n, d, a), cfg)


def problem_to_dict(P: Problem) -> dict:
    return {
        "dim": P.dim,
        "mode": P.mode,
        "conjugation": encode_matrix(P.conjugation.coeff),
        "domain_basis": [encode_vector(c) for c in P.op.domain.T],
        "action": [encode_vector(c) for c in P.op.action.T],
    }


def report_to_dict(report: ExtensionReport) -> dict:
    return {
        "mode": report.mode,
        "extended_dim": report.extended_dim,
        "doubled": report.doubled,
        "B": encode_matrix(report.B),
        "extended_conjugation": encode_matrix(report.extended_conjugation.coeff),
        "defect_dim": report.defect_dim,
        "retries_used": report.retries_used,
        "residual_extension": report.residual_extension,
        "residual_structure": report.residual_structure,
        "residual_split": report.residual_split,
        "sigma_min": report.sigma_min,
    }


def dumps(data: dict) -> str:
    return json.dumps(data, indent=2) + "\n"


def load_problem(path, cfg: ToleranceConfig | None = None) -> Problem:
    return problem_from_dict(_read_json(path), cfg)


def load_conjugation(path, tol: float = 1e-8) -> Conjugation:
    return conjugation_from_dict(_read_json(path), tol)


def save(data: dict, path) -> None:
    Path(path).write_text(dumps(data), encoding="utf-8")
