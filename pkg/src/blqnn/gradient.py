"""Single-shot gradient measurement and its exact counterparts.

The measurement circuit: run the sample through layers 1..l (the layer that
owns the selected coefficient), attach a |+> ancilla as the last qubit,
apply the controlled phase rotation

    V_s = e^{+i pi/4 sigma^s} x |0><0|_E  +  e^{-i pi/4 sigma^s} x |1><1|_E,

run the remaining layers (extended with identity on the ancilla), and
measure the joint POVM {M_yhat x |b><b|_E}.  The classical post-processing
z = 2 (-1)^b ell(y, yhat) is an unbiased estimate of the derivative of the
expected loss w.r.t. the selected coefficient; the commutator-form value
i tr(M [sigma^s, rho]) is the exact reference.

The sign of the post-processing is fixed so that E[Z] equals the derivative
(ancilla outcome b = 0 contributes +2 ell); the opposite sign estimates the
negated derivative and would turn the descent update into ascent.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from . import pauli, qnn, state


@dataclass
class GradientShot:
    """One measured derivative sample: |z| <= 2 gamma always."""

    param: qnn.ParameterIndex
    z: float
    outcome_label: object
    ancilla_bit: int


_P0 = np.array([[1, 0], [0, 0]], dtype=complex)
_P1 = np.array([[0, 0], [0, 1]], dtype=complex)


def _quarter_rotations(sigma):
    """e^{+-i pi/4 sigma} for an involutory sigma: cos(pi/4) I +- i sin(pi/4) sigma."""
    dim = sigma.shape[0]
    c = np.cos(np.pi / 4) * np.eye(dim)
    s = 1j * np.sin(np.pi / 4) * sigma
    return c + s, c - s


def build_vs(letters, total_qubits, support):
    """The ancilla-controlled rotation V_s on total_qubits + 1 qubits
    (ancilla last)."""
    sigma = pauli.pauli_operator(letters, total_qubits, support)
    plus, minus = _quarter_rotations(sigma)
    return np.kron(plus, _P0) + np.kron(minus, _P1)


def gradient_povm(readout):
    """Extend a readout POVM with the ancilla bit: elements labelled
    (yhat, b) in (label-major, b in {0,1}) order."""
    elements = []
    for label, op in readout.elements:
        elements.append(((label, 0), np.kron(op, _P0)))
        elements.append(((label, 1), np.kron(op, _P1)))
    return state.Povm(qubits=readout.qubits + 1, elements=elements)


# gradient_povm is pure in its input; cache per readout object for the
# shot-sampling hot path
_POVM_CACHE = {}


def _cached_gradient_povm(readout):
    key = id(readout)
    cached = _POVM_CACHE.get(key)
    if cached is None or cached[0] is not readout:
        cached = (readout, gradient_povm(readout))
        _POVM_CACHE[key] = cached
    return cached[1]


def _embedded_word(net, param):
    qp = net.qp_at(param)
    return param.word, qp.support


def _circuit_state(net, rho, param):
    """State just before the gradient POVM: layers 1..l, |+> ancilla, V_s,
    then layers l+1..L with identity on the ancilla."""
    word, support = _embedded_word(net, param)
    mid = qnn.forward_through(net, qnn.pad_input(net, rho), param.layer)
    tilde = state.attach_plus(mid)
    vs = build_vs(word, net.d_prime, support)
    out = state.apply_unitary(vs, tilde)
    for layer in net.layers[param.layer :]:
        U = np.kron(qnn.layer_unitary(layer, net.d_prime), np.eye(2, dtype=complex))
        out = state.apply_unitary(U, out)
    return out


def shot_distribution(net, sample, param, loss):
    """The (yhat, b) outcome labels, their probabilities, and the z value
    attached to each, for the measurement circuit at the current parameters."""
    rho, y = sample
    final = _circuit_state(net, rho, param)
    npovm = _cached_gradient_povm(net.readout)
    probs = state.outcome_distribution(npovm, final)
    labels = npovm.labels
    zs = np.array([2.0 * (-1) ** b * loss(y, yhat) for yhat, b in labels])
    return labels, probs, zs


def _draw(labels, probs, rng):
    cum = np.cumsum(probs)
    idx = int(np.searchsorted(cum, rng.random(), side="right"))
    return labels[min(idx, len(labels) - 1)]


def measure_derivative(net, sample, param, loss, rng):
    """One single-shot derivative measurement for the addressed coefficient."""
    labels, probs, _ = shot_distribution(net, sample, param, loss)
    yhat, b = _draw(labels, probs, rng)
    z = 2.0 * (-1) ** b * loss(sample[1], yhat)
    return GradientShot(param=param, z=z, outcome_label=yhat, ancilla_bit=b)


def measure_derivative_batch(net, sample, param, loss, rng, num_shots):
    """``num_shots`` independent shots of the same fixed circuit.

    Equivalent to repeated measure_derivative calls on fresh sample copies;
    the circuit state is computed once since the parameters do not change.
    """
    labels, probs, zs = shot_distribution(net, sample, param, loss)
    cum = np.cumsum(probs)
    idx = np.minimum(
        np.searchsorted(cum, rng.random(num_shots), side="right"), len(labels) - 1
    )
    return zs[idx]


def derivative_expectation(net, sample, param, loss):
    """Exact E[Z] by enumerating the (yhat, b) outcome distribution."""
    _, probs, zs = shot_distribution(net, sample, param, loss)
    return float(np.dot(probs, zs))


def exact_derivative(net, sample, param, loss):
    """Commutator-form derivative: sum_yhat i ell(y,yhat) tr(M_prop [sigma^s, rho_mid]),
    with the readout Heisenberg-propagated through layers l+1..L."""
    rho, y = sample
    word, support = _embedded_word(net, param)
    sigma = pauli.pauli_operator(word, net.d_prime, support)
    mid = qnn.forward_through(net, qnn.pad_input(net, rho), param.layer)
    U_rest = np.eye(2**net.d_prime, dtype=complex)
    for layer in net.layers[param.layer :]:
        U_rest = qnn.layer_unitary(layer, net.d_prime) @ U_rest
    comm = sigma @ mid.matrix - mid.matrix @ sigma
    total = 0.0
    for yhat, op in net.readout.elements:
        m_prop = U_rest.conj().T @ op @ U_rest
        val = 1j * loss(y, yhat) * np.trace(m_prop @ comm)
        total += val.real
    return float(total)


def exact_gradient(net, sample, loss):
    """exact_derivative for every parameter, canonical (l, j, s) order."""
    return np.array(
        [exact_derivative(net, sample, p, loss) for p in net.parameter_indices()]
    )


@dataclass
class ApproxGradient:
    """Copy-based gradient estimate plus its sample-copy bookkeeping."""

    values: np.ndarray
    copies_consumed: int


def approx_gradient_copies(net, sample, copies_per_component, loss, rng):
    """Repeated-measurement baseline: each component is the mean of
    ``copies_per_component`` independent shots; consumes
    copies_per_component * c_QNN sample copies."""
    if copies_per_component < 1:
        raise ValueError("copies_per_component must be >= 1")
    params = net.parameter_indices()
    values = np.empty(len(params))
    for i, p in enumerate(params):
        shots = [
            measure_derivative(net, sample, p, loss, rng).z
            for _ in range(copies_per_component)
        ]
        values[i] = np.mean(shots)
    return ApproxGradient(
        values=values, copies_consumed=copies_per_component * len(params)
    )
