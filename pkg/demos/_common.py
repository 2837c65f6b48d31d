"""Shared helpers for the demo scripts."""

import numpy as np

from blqnn import qnn, state


def computational_readout():
    return state.Povm(
        qubits=1,
        elements=[
            (-1, np.diag([1.0, 0.0]).astype(complex)),
            (+1, np.diag([0.0, 1.0]).astype(complex)),
        ],
    )


def toy_net(a):
    """One-qubit net exp(i a sigma_x); expected loss sin^2(a) on |0>."""
    qp = qnn.BandLimitedQP(support=(1,), coefficients=np.array([0.0, a, 0.0, 0.0]))
    return qnn.Network(d=1, d_prime=1, layers=[[qp]], readout=computational_readout())
