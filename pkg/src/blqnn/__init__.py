"""Band-limited quantum neural networks with single-shot randomized QSGD.

Simulates, at small qubit counts, quantum perceptrons of the form
exp(i sum_s a_s sigma^s) with band-limited Pauli spectra, the single-shot
unbiased gradient-measurement circuit that trains them without sample
replication, exact-gradient and copy-based baselines, and the
Holevo-Helstrom optimal-loss oracle for quantum state discrimination.
"""

from . import cli, dataset, gradient, pauli, qnn, state, trainer

__all__ = ["cli", "dataset", "gradient", "pauli", "qnn", "state", "trainer"]

__version__ = "0.1.0"
