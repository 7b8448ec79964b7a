import numpy as np
import pytest

from hybrid_qubit_sim.core.errors import DimensionError, NotHermitianError, NotUnitaryError
from hybrid_qubit_sim.qmath import (
    IDENTITY_2,
    SIGMA_X,
    SIGMA_Y,
    SIGMA_Z,
    Operator,
    StateVector,
    basis_state,
    eigh,
    embed,
    equal_up_to_phase,
    expm_unitary,
    kron,
    partial_trace,
)


def test_operator_flags_are_verified():
    with pytest.raises(NotHermitianError):
        Operator(np.array([[0, 1], [0, 0]]), hermitian=True)
    with pytest.raises(NotUnitaryError):
        Operator(np.array([[2, 0], [0, 1]]), unitary=True)
    with pytest.raises(DimensionError):
        Operator(np.eye(4), (2, 3))


def test_arrays_are_read_only():
    op = Operator(np.eye(2))
    with pytest.raises(ValueError):
        op.matrix[0, 0] = 5.0


def test_embed_places_operator_on_subsystem():
    op = embed(SIGMA_Z, 1, (2, 2, 2))
    expected = np.kron(np.kron(np.eye(2), SIGMA_Z.matrix), np.eye(2))
    assert np.allclose(op.matrix, expected)
    assert op.dims == (2, 2, 2)


def test_eigh_gauge_makes_anchor_real_positive():
    h = Operator(-0.5 * (3.0 * SIGMA_Z.matrix + 1.0 * SIGMA_X.matrix), hermitian=True)
    values, vecs = eigh(h)
    assert values[0] < values[1]
    for k in range(2):
        col = vecs.matrix[:, k]
        pivot = col[np.argmax(np.abs(col))]
        assert abs(pivot.imag) < 1e-15
        assert pivot.real > 0


def test_expm_unitary_matches_rotation():
    t = 0.37
    u = expm_unitary(SIGMA_Y, t)
    expected = np.cos(t) * np.eye(2) - 1j * np.sin(t) * SIGMA_Y.matrix
    assert np.allclose(u.matrix, expected, atol=1e-14)
    assert u.unitary


def test_partial_trace_of_bell_state_is_maximally_mixed():
    bell = StateVector(np.array([1, 0, 0, 1]) / np.sqrt(2.0), (2, 2))
    rho = partial_trace(bell, [0])
    assert np.allclose(rho.matrix, 0.5 * np.eye(2))
    # operator path agrees with the state path
    rho_op = partial_trace(bell.density(), [1])
    assert np.allclose(rho_op.matrix, 0.5 * np.eye(2))


def test_partial_trace_keeps_order_of_product_factors():
    psi = basis_state(2, 1).tensor(basis_state(2, 0), basis_state(2, 1))
    rho = partial_trace(psi, [0, 2])
    assert rho.dims == (2, 2)
    assert abs(rho.matrix[3, 3] - 1.0) < 1e-15


def test_equal_up_to_phase():
    a = kron(SIGMA_X, SIGMA_Z).matrix
    assert equal_up_to_phase(a, np.exp(0.7j) * a)
    assert not equal_up_to_phase(a, -1.0 * kron(SIGMA_Z, SIGMA_X).matrix)


def _random_hermitian(rng, dim):
    m = rng.normal(size=(dim, dim)) + 1j * rng.normal(size=(dim, dim))
    return Operator(0.5 * (m + m.conj().T), hermitian=True)


def test_kron_index_formula_examples():
    assert np.allclose(kron(IDENTITY_2, IDENTITY_2).matrix, np.eye(4))
    assert np.allclose(kron(SIGMA_Z, IDENTITY_2).matrix, np.diag([1, 1, -1, -1]))
    assert np.allclose(kron(SIGMA_X, SIGMA_X).matrix, np.fliplr(np.eye(4)))
    assert kron(SIGMA_X, SIGMA_X).dims == (2, 2)


def test_kron_is_associative():
    rng = np.random.default_rng(7)
    a, b, c = (_random_hermitian(rng, 2) for _ in range(3))
    left = kron(kron(a, b), c)
    right = kron(a, kron(b, c))
    assert np.allclose(left.matrix, right.matrix, atol=1e-14)
    assert left.dims == right.dims == (2, 2, 2)


def test_expm_composes_over_time():
    rng = np.random.default_rng(11)
    for dim in (2, 4, 8):
        h = _random_hermitian(rng, dim)
        u = expm_unitary(h, 0.3) @ expm_unitary(h, 1.1)
        assert np.max(np.abs(u.matrix - expm_unitary(h, 1.4).matrix)) < 1e-9


def test_eigh_reconstructs_and_rejects_non_hermitian():
    rng = np.random.default_rng(3)
    for dim in (2, 4, 8):
        h = _random_hermitian(rng, dim)
        values, vecs = eigh(h)
        v = vecs.matrix
        assert np.all(np.diff(values) >= 0)
        assert np.max(np.abs(v @ np.diag(values) @ v.conj().T - h.matrix)) < 1e-9
    with pytest.raises(NotHermitianError):
        eigh(Operator(np.array([[0, 1], [0, 0]])))


def test_partial_trace_rejects_bad_keep_sets():
    psi = basis_state((2, 2), 0)
    with pytest.raises(DimensionError):
        partial_trace(psi, [2])
    with pytest.raises(DimensionError):
        partial_trace(psi, [-1])
    with pytest.raises(DimensionError):
        partial_trace(psi, [])
