"""Pauli-string algebra and the Pauli-basis Fourier expansion of Hermitian operators.

A Pauli string is a word over {0, 1, 2, 3} where 0 is the identity and
1/2/3 are sigma_x / sigma_y / sigma_z.  Qubit 1 is the leftmost tensor
factor throughout, matching ket notation |00>, |10>, etc.

Any operator A on d qubits decomposes uniquely as

    A = sum_s a_s sigma^s,    a_s = 2^{-d} tr(A sigma^s),

with real a_s whenever A is Hermitian.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from functools import lru_cache

import numpy as np

HERMITICITY_TOL = 1e-9

_SIGMA = (
    np.eye(2, dtype=complex),
    np.array([[0, 1], [1, 0]], dtype=complex),
    np.array([[0, -1j], [1j, 0]], dtype=complex),
    np.array([[1, 0], [0, -1]], dtype=complex),
)


def single_pauli(idx):
    """Return the 2x2 identity (idx=0) or Pauli matrix sigma_x/y/z (idx=1/2/3)."""
    if idx not in (0, 1, 2, 3):
        raise ValueError(f"Pauli index must be in {{0,1,2,3}}, got {idx!r}")
    return _SIGMA[idx].copy()


def all_words(length):
    """All Pauli words of the given length in lexicographic order."""
    return list(itertools.product(range(4), repeat=length))


def validate_word(letters):
    letters = tuple(int(x) for x in letters)
    if any(x not in (0, 1, 2, 3) for x in letters):
        raise ValueError(f"Pauli word letters must be in {{0,1,2,3}}: {letters}")
    return letters


def weight(letters):
    """Number of non-identity letters in the word."""
    return sum(1 for x in letters if x != 0)


@lru_cache(maxsize=None)
def _word_matrix(letters):
    m = np.ones((1, 1), dtype=complex)
    for x in letters:
        m = np.kron(m, _SIGMA[x])
    return m


def word_matrix(letters):
    """Tensor product sigma^{s_1} x ... x sigma^{s_n} for a local word."""
    return _word_matrix(validate_word(letters)).copy()


@lru_cache(maxsize=None)
def _embedded_word(letters, total_qubits, support):
    full = [0] * total_qubits
    for letter, pos in zip(letters, support):
        full[pos - 1] = letter
    return _word_matrix(tuple(full))


def pauli_operator(letters, total_qubits, support):
    """Embed a Pauli word on ``support`` (1-based qubit positions, qubit 1
    leftmost) into the full 2^total_qubits space, identity elsewhere."""
    letters = validate_word(letters)
    support = tuple(int(p) for p in support)
    if len(support) != len(letters):
        raise ValueError(
            f"support length {len(support)} != word length {len(letters)}"
        )
    if len(set(support)) != len(support):
        raise ValueError(f"support positions must be distinct: {support}")
    if any(p < 1 or p > total_qubits for p in support):
        raise ValueError(f"support {support} outside [1..{total_qubits}]")
    return _embedded_word(letters, total_qubits, support).copy()


@dataclass
class FourierSpectrum:
    """Real Pauli-basis coefficients of a Hermitian operator on ``dimension`` qubits."""

    dimension: int
    coefficients: dict  # word tuple -> float

    def __post_init__(self):
        for word in self.coefficients:
            if len(word) != self.dimension:
                raise ValueError(
                    f"word {word} has length {len(word)}, expected {self.dimension}"
                )
            validate_word(word)


def is_hermitian(A, tol=HERMITICITY_TOL):
    return np.max(np.abs(A - A.conj().T)) < tol


def fourier_coefficients(A, tol=HERMITICITY_TOL):
    """Expand a Hermitian operator in the Pauli-string basis.

    Coefficients are a_s = 2^{-d} tr(A sigma^s); imaginary parts below
    tolerance are dropped.
    """
    A = np.asarray(A, dtype=complex)
    dim = A.shape[0]
    d = int(round(np.log2(dim)))
    if A.shape != (dim, dim) or 2**d != dim:
        raise ValueError(f"operator shape {A.shape} is not 2^d x 2^d")
    if not is_hermitian(A, tol):
        raise ValueError("operator is not Hermitian within tolerance")
    coeffs = {}
    for word in all_words(d):
        a = np.trace(A @ _word_matrix(word)) / dim
        if abs(a.imag) > tol:
            raise ValueError(f"coefficient for {word} has imaginary part {a.imag}")
        coeffs[word] = float(a.real)
    return FourierSpectrum(dimension=d, coefficients=coeffs)


def synthesize(spectrum):
    """Rebuild sum_s a_s sigma^s from a spectrum; Hermitian by construction."""
    if spectrum.dimension < 1:
        raise ValueError("spectrum dimension must be >= 1")
    dim = 2**spectrum.dimension
    A = np.zeros((dim, dim), dtype=complex)
    for word, a in spectrum.coefficients.items():
        A += a * _word_matrix(validate_word(word))
    return A
