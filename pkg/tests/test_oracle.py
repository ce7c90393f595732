import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from jextend import Conjugation, PartialOperator, Problem, random_conjugation, validate, verify_j_unitary, verify_skew_self_adjoint
from jextend.errors import Infeasible
from jextend.oracle import (
    constraint_residual,
    exhaustive_check_1d,
    gen_case_a,
    gen_case_b,
    solve_case_a,
    structure_space,
)
from jextend.subspaces import orthonormalize, spans_equal

from conftest import seeds


def realified_span(mats):
    return orthonormalize(np.column_stack([np.concatenate([M.real.ravel(), M.imag.ravel()]) for M in mats]))


def test_structure_space_scalar_is_trivial():
    assert structure_space(Conjugation([[1.0]])) == []


def test_structure_space_identity_2x2():
    basis = structure_space(Conjugation(np.eye(2)))
    expected = [np.array([[0, 1], [-1, 0]]), np.array([[0, 1j], [-1j, 0]])]
    assert len(basis) == 2
    assert spans_equal(realified_span(basis), realified_span(expected))


@pytest.mark.parametrize("n", range(1, 6))
def test_structure_space_dimension_identity(n):
    assert len(structure_space(Conjugation(np.eye(n)))) == n * (n - 1)


@settings(max_examples=20, deadline=None)
@given(n=st.integers(1, 6), seed=seeds)
def test_structure_space_elements_verify(n, seed):
    J = random_conjugation(n, seed)
    basis = structure_space(J)
    # J-skew-self-adjoint matrices form a complex space of dimension n(n-1)/2
    assert len(basis) == n * (n - 1)
    for B in basis:
        assert verify_skew_self_adjoint(B, J) <= 1e-10


def test_solve_case_a_worked(worked_problem):
    B = solve_case_a(worked_problem)
    np.testing.assert_allclose(B, [[0, -1], [1, 0]], atol=1e-12)


def test_solve_case_a_zero_action():
    P = Problem(Conjugation([[1.0]]), "skew", PartialOperator.from_vectors(1, [[1]], [[0]]))
    np.testing.assert_array_equal(solve_case_a(P), [[0]])


def test_solve_case_a_infeasible():
    # i e1 -> i e1 is J-skew-symmetric only if [e1, e1] = 0, which fails; the
    # least-squares solve must report the gap instead of returning a wrong B
    P = Problem(Conjugation(np.eye(2)), "skew", PartialOperator.from_vectors(2, [[1, 0]], [[1, 0]]))
    with pytest.raises(Infeasible) as info:
        solve_case_a(P)
    assert info.value.residual == pytest.approx(1.0)


@settings(max_examples=30, deadline=None)
@given(n=st.integers(1, 7), data=st.data(), seed=seeds)
def test_gen_case_a_instances(n, data, seed):
    m = data.draw(st.integers(0, n))
    P, S = gen_case_a(n, m, seed, return_witness=True)
    assert validate(P) <= 1e-10
    assert constraint_residual(P, S) <= 1e-10
    B = solve_case_a(P)
    assert constraint_residual(P, B) <= 1e-10


@settings(max_examples=30, deadline=None)
@given(n=st.integers(1, 8), data=st.data(), seed=seeds)
def test_gen_case_b_instances(n, data, seed):
    m = data.draw(st.integers(0, n))
    P, B0 = gen_case_b(n, m, seed, return_witness=True)
    assert verify_j_unitary(B0, P.conjugation).residual <= 1e-8
    assert validate(P) <= 1e-8
    assert P.op.domain_dim == m


def test_generators_deterministic():
    for gen in (gen_case_a, gen_case_b):
        a, b = gen(5, 3, 123), gen(5, 3, 123)
        assert np.array_equal(a.op.action, b.op.action)
        assert np.array_equal(a.conjugation.coeff, b.conjugation.coeff)


def test_gen_rejects_bad_sizes():
    with pytest.raises(ValueError):
        gen_case_a(2, 3, 0)


def test_exhaustive_1d_skew_identity():
    sol = exhaustive_check_1d(1.0, "skew")
    np.testing.assert_allclose(sol.solutions, [0])
    assert sol.contains(0) and not sol.contains(0.5)


def test_exhaustive_1d_isometric_identity():
    sol = exhaustive_check_1d(1.0, "isometric")
    np.testing.assert_allclose(sorted(sol.solutions, key=np.real), [-1, 1])


def test_exhaustive_1d_skew_imaginary_unit():
    # C conj(b) conj(C) + conj(b) = 2 conj(b) for |C| = 1
    np.testing.assert_allclose(exhaustive_check_1d(1j, "skew").solutions, [0])


def test_exhaustive_1d_rejects_non_unit():
    with pytest.raises(ValueError):
        exhaustive_check_1d(2.0, "skew")


def test_gen_case_b_runtime_check_never_fires():
    for seed in range(10_000):
        n = 1 + seed % 8
        gen_case_b(n, seed % (n + 1), seed)
