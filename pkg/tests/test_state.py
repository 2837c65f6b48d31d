import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from blqnn import pauli, state
from conftest import computational_readout, random_density


def test_from_ket_basics():
    rho = state.from_ket(state.ket("0"))
    assert np.allclose(rho.matrix, [[1, 0], [0, 0]])
    plus = state.from_ket(state.plus_state())
    assert np.allclose(plus.matrix, np.full((2, 2), 0.5))


def test_from_ket_rejects_unnormalized():
    with pytest.raises(ValueError):
        state.PureState(qubits=1, amplitudes=np.array([1.0, 1.0]))


def test_tensor_block_structure():
    rho = state.tensor(state.from_ket(state.ket("0")), state.from_ket(state.plus_state()))
    assert rho.qubits == 2
    assert np.allclose(rho.matrix[:2, :2], np.full((2, 2), 0.5))
    assert np.allclose(rho.matrix[2:, 2:], 0)


def test_tensor_trace_multiplicative(rng):
    a = random_density(rng, 1)
    b = random_density(rng, 2)
    assert np.trace(state.tensor(a, b).matrix) == pytest.approx(1.0)


def test_pad_sample():
    rho = random_density(np.random.default_rng(0), 1)
    assert state.pad_sample(rho, 0) is rho
    padded = state.pad_sample(rho, 2)
    assert padded.qubits == 3
    assert np.trace(padded.matrix) == pytest.approx(1.0)
    zero = state.pad_sample(state.from_ket(state.ket("0")), 1)
    expected = np.zeros((4, 4))
    expected[0, 0] = 1
    assert np.allclose(zero.matrix, expected)


def test_attach_plus_marginal(rng):
    rho = random_density(rng, 2)
    tilde = state.attach_plus(rho)
    assert tilde.qubits == 3
    ancilla = state.partial_trace(tilde, keep=[3])
    assert np.allclose(ancilla.matrix, np.full((2, 2), 0.5), atol=1e-12)
    assert np.trace(tilde.matrix) == pytest.approx(1.0)


def test_attach_plus_explicit_entry():
    tilde = state.attach_plus(state.from_ket(state.ket("0")))
    # |0>|+> has <01|rho|00> = 1/2
    assert tilde.matrix[1, 0] == pytest.approx(0.5)


def test_apply_unitary():
    rho = state.from_ket(state.ket("0"))
    assert np.allclose(state.apply_unitary(np.eye(2), rho).matrix, rho.matrix)
    flipped = state.apply_unitary(pauli.single_pauli(1), rho)
    assert np.allclose(flipped.matrix, [[0, 0], [0, 1]])


def test_apply_unitary_preserves_spectrum(rng):
    rho = random_density(rng, 2)
    g = rng.normal(size=(4, 4)) + 1j * rng.normal(size=(4, 4))
    U = np.linalg.qr(g)[0]
    out = state.apply_unitary(U, rho)
    assert np.allclose(
        np.linalg.eigvalsh(out.matrix), np.linalg.eigvalsh(rho.matrix), atol=1e-10
    )
    assert np.trace(out.matrix) == pytest.approx(1.0, abs=1e-10)


def test_apply_unitary_rejects_non_unitary(rng):
    rho = random_density(rng, 1)
    with pytest.raises(ValueError):
        state.apply_unitary(np.array([[1, 1], [0, 1]]), rho)


def test_outcome_distribution_computational():
    probs = state.outcome_distribution(
        computational_readout(), state.from_ket(state.ket("0"))
    )
    assert np.allclose(probs, [1.0, 0.0])


def _parity_povm_2q():
    even = np.zeros((4, 4), dtype=complex)
    even[0, 0] = even[3, 3] = 1
    return state.Povm(qubits=2, elements=[(-1, even), (1, np.eye(4) - even)])


def test_outcome_distribution_parity_cases():
    povm = _parity_povm_2q()
    mixed = state.DensityOperator(qubits=2, matrix=np.eye(4) / 4)
    assert np.allclose(state.outcome_distribution(povm, mixed), [0.5, 0.5])
    probs = state.outcome_distribution(povm, state.from_ket(state.ket("00")))
    assert np.allclose(probs, [1.0, 0.0])


def test_outcome_distribution_dimension_mismatch(rng):
    with pytest.raises(ValueError):
        state.outcome_distribution(_parity_povm_2q(), random_density(rng, 1))


def test_measure_deterministic_distribution(rng):
    povm = computational_readout()
    rho = state.from_ket(state.ket("0"))
    assert all(state.measure(povm, rho, rng) == -1 for _ in range(20))


def test_measure_frequency_matches_distribution():
    rng = np.random.default_rng(7)
    rho = random_density(np.random.default_rng(3), 1)
    povm = computational_readout()
    probs = state.outcome_distribution(povm, rho)
    n = 10**5
    hits = sum(1 for _ in range(n) if state.measure(povm, rho, rng) == -1)
    sigma = np.sqrt(probs[0] * (1 - probs[0]) / n)
    assert abs(hits / n - probs[0]) < 3 * sigma


def test_measure_reproducible():
    rho = random_density(np.random.default_rng(3), 1)
    povm = computational_readout()
    rng_a, rng_b = np.random.default_rng(11), np.random.default_rng(11)
    seq_a = [state.measure(povm, rho, rng_a) for _ in range(50)]
    seq_b = [state.measure(povm, rho, rng_b) for _ in range(50)]
    assert seq_a == seq_b


def test_trace_norm_cases(rng):
    assert state.trace_norm(pauli.single_pauli(3)) == pytest.approx(2.0)
    assert state.trace_norm(random_density(rng, 2).matrix) == pytest.approx(1.0)
    half = 0.5 * np.diag([1.0, -1.0])
    assert state.trace_norm(half) == pytest.approx(1.0)
    with pytest.raises(ValueError):
        state.trace_norm(np.array([[0, 1], [0, 0]]))


def test_partial_trace_product_state(rng):
    a = random_density(rng, 1)
    b = random_density(rng, 1)
    joint = state.tensor(a, b)
    assert np.allclose(state.partial_trace(joint, [1]).matrix, a.matrix, atol=1e-12)
    assert np.allclose(state.partial_trace(joint, [2]).matrix, b.matrix, atol=1e-12)


def test_partial_trace_bell():
    bell = state.PureState(qubits=2, amplitudes=np.array([1, 0, 0, 1]) / np.sqrt(2))
    reduced = state.partial_trace(state.from_ket(bell), [1])
    assert np.allclose(reduced.matrix, np.eye(2) / 2)


def test_partial_trace_errors(rng):
    rho = random_density(rng, 2)
    with pytest.raises(ValueError):
        state.partial_trace(rho, [])
    with pytest.raises(ValueError):
        state.partial_trace(rho, [3])


@settings(max_examples=25, deadline=None)
@given(seed=st.integers(0, 10**6))
def test_born_probabilities_valid(seed):
    rng = np.random.default_rng(seed)
    rho = random_density(rng, 2)
    povm = _parity_povm_2q()
    probs = state.outcome_distribution(povm, rho)
    assert np.all(probs >= 0)
    assert probs.sum() == pytest.approx(1.0, abs=1e-9)


def test_density_operator_validation():
    with pytest.raises(ValueError):
        state.DensityOperator(qubits=1, matrix=np.array([[1, 1], [0, 0]]))
    with pytest.raises(ValueError):
        state.DensityOperator(qubits=1, matrix=np.diag([0.6, 0.6]))
    with pytest.raises(ValueError):
        state.DensityOperator(qubits=1, matrix=np.diag([1.5, -0.5]))
