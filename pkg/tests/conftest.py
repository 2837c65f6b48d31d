import numpy as np
import pytest

from blqnn import qnn, state


def random_density(rng, qubits):
    """Random full-rank density operator via a Wishart-style construction."""
    dim = 2**qubits
    g = rng.normal(size=(dim, dim)) + 1j * rng.normal(size=(dim, dim))
    m = g @ g.conj().T
    m /= np.trace(m)
    return state.DensityOperator(qubits=qubits, matrix=m)


def random_hermitian(rng, dim):
    g = rng.normal(size=(dim, dim)) + 1j * rng.normal(size=(dim, dim))
    return (g + g.conj().T) / 2


def computational_readout(labels=(-1, 1)):
    """Single-qubit computational-basis POVM: |0><0| -> labels[0]."""
    return state.Povm(
        qubits=1,
        elements=[
            (labels[0], np.diag([1.0, 0.0]).astype(complex)),
            (labels[1], np.diag([0.0, 1.0]).astype(complex)),
        ],
    )


def single_pauli_x_net(a):
    """One-qubit net U = exp(i a sigma_x) with computational readout.

    With input |0><0|, 0-1 loss, and correct label on outcome 0, the
    expected loss is sin^2(a).
    """
    qp = qnn.BandLimitedQP(support=(1,), coefficients=np.array([0.0, a, 0.0, 0.0]))
    return qnn.Network(
        d=1, d_prime=1, layers=[[qp]], readout=computational_readout()
    )


def random_network(rng, d_prime, num_layers, qps_per_layer, k=2, readout_qubits=None):
    """Random band-limited network with random supports (|J| <= k) and
    coefficients uniform on [-1, 1]; parity readout on a random pair."""
    layers = []
    for _ in range(num_layers):
        layer = []
        for _ in range(qps_per_layer):
            size = int(rng.integers(1, k + 1))
            support = tuple(
                sorted(rng.choice(np.arange(1, d_prime + 1), size=size, replace=False))
            )
            coeffs = rng.uniform(-1, 1, size=4**size)
            layer.append(qnn.BandLimitedQP(support=support, coefficients=coeffs))
        layers.append(layer)
    if readout_qubits is None:
        if d_prime >= 2:
            readout_qubits = tuple(
                sorted(rng.choice(np.arange(1, d_prime + 1), size=2, replace=False))
            )
            readout = qnn.parity_readout(d_prime, readout_qubits)
        else:
            readout = computational_readout()
    else:
        readout = qnn.parity_readout(d_prime, readout_qubits)
    return qnn.Network(d=d_prime, d_prime=d_prime, layers=layers, readout=readout)


@pytest.fixture
def rng():
    return np.random.default_rng(12345)
