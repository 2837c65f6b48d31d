"""Density operators, unitary evolution, POVM sampling, and trace norm.

States live on d qubits as dense 2^d x 2^d complex matrices; qubit 1 is the
leftmost tensor factor.  Measurement sampling is inverse-CDF over the Born
probabilities in declared POVM element order, so runs are reproducible from
the rng seed alone.
"""

from __future__ import annotations

from dataclasses import InitVar, dataclass, field

import numpy as np

TOL = 1e-9


def _num_qubits(dim):
    d = int(round(np.log2(dim)))
    if 2**d != dim:
        raise ValueError(f"dimension {dim} is not a power of 2")
    return d


@dataclass
class DensityOperator:
    """A Hermitian, PSD, unit-trace matrix on 2^qubits dimensions.

    ``check=False`` skips the invariant checks; used internally for states
    produced by trace-preserving operations on already-validated inputs.
    """

    qubits: int
    matrix: np.ndarray
    check: InitVar[bool] = True

    def __post_init__(self, check):
        self.matrix = np.asarray(self.matrix, dtype=complex)
        dim = 2**self.qubits
        if self.matrix.shape != (dim, dim):
            raise ValueError(
                f"matrix shape {self.matrix.shape} != ({dim}, {dim}) for {self.qubits} qubits"
            )
        if not check:
            return
        if np.max(np.abs(self.matrix - self.matrix.conj().T)) > TOL:
            raise ValueError("density matrix is not Hermitian within tolerance")
        tr = np.trace(self.matrix)
        if abs(tr - 1) > TOL:
            raise ValueError(f"trace {tr} != 1 within tolerance")
        if np.linalg.eigvalsh(self.matrix).min() < -TOL:
            raise ValueError("density matrix has a negative eigenvalue beyond tolerance")


@dataclass
class PureState:
    """A unit-norm state vector on 2^qubits amplitudes."""

    qubits: int
    amplitudes: np.ndarray

    def __post_init__(self):
        self.amplitudes = np.asarray(self.amplitudes, dtype=complex)
        dim = 2**self.qubits
        if self.amplitudes.shape != (dim,):
            raise ValueError(f"amplitude shape {self.amplitudes.shape} != ({dim},)")
        if abs(np.linalg.norm(self.amplitudes) - 1) > TOL:
            raise ValueError("state vector is not normalized")


@dataclass
class Povm:
    """Ordered (label, operator) pairs; PSD elements summing to identity."""

    qubits: int
    elements: list  # of (label, 2^qubits x 2^qubits array)

    def __post_init__(self):
        dim = 2**self.qubits
        total = np.zeros((dim, dim), dtype=complex)
        elems = []
        for label, op in self.elements:
            op = np.asarray(op, dtype=complex)
            if op.shape != (dim, dim):
                raise ValueError(f"POVM element shape {op.shape} != ({dim}, {dim})")
            if np.linalg.eigvalsh((op + op.conj().T) / 2).min() < -TOL:
                raise ValueError(f"POVM element {label!r} is not PSD")
            total += op
            elems.append((label, op))
        if np.max(np.abs(total - np.eye(dim))) > TOL:
            raise ValueError("POVM elements do not sum to identity")
        self.elements = elems

    @property
    def labels(self):
        return [label for label, _ in self.elements]


def ket(bits):
    """Computational-basis PureState for a bit string, e.g. ket('01')."""
    bits = [int(b) for b in bits]
    amps = np.zeros(2 ** len(bits), dtype=complex)
    idx = 0
    for b in bits:
        idx = 2 * idx + b
    amps[idx] = 1.0
    return PureState(qubits=len(bits), amplitudes=amps)


def plus_state():
    return PureState(qubits=1, amplitudes=np.array([1, 1]) / np.sqrt(2))


def from_ket(psi):
    """Rank-1 density operator |psi><psi|."""
    v = psi.amplitudes
    return DensityOperator(qubits=psi.qubits, matrix=np.outer(v, v.conj()))


def tensor(a, b):
    """Kronecker product of two states; qubits of ``a`` come first."""
    return DensityOperator(
        qubits=a.qubits + b.qubits, matrix=np.kron(a.matrix, b.matrix), check=False
    )


def pad_sample(rho, num_aux):
    """Append ``num_aux`` auxiliary |0> qubits after the sample qubits."""
    if num_aux < 0:
        raise ValueError("num_aux must be >= 0")
    if num_aux == 0:
        return rho
    return tensor(rho, from_ket(ket("0" * num_aux)))


def attach_plus(rho):
    """Append a |+> ancilla as the last qubit."""
    return tensor(rho, from_ket(plus_state()))


def apply_unitary(U, rho):
    """Conjugate the state: U rho U^dagger."""
    U = np.asarray(U, dtype=complex)
    dim = 2**rho.qubits
    if U.shape != (dim, dim):
        raise ValueError(f"unitary shape {U.shape} != state dimension {dim}")
    if np.max(np.abs(U @ U.conj().T - np.eye(dim))) > TOL:
        raise ValueError("operator is not unitary within tolerance")
    return DensityOperator(
        qubits=rho.qubits, matrix=U @ rho.matrix @ U.conj().T, check=False
    )


def outcome_distribution(povm, rho):
    """Born probabilities tr(M_i rho) in declared element order.

    Small negative drift in (-1e-9, 0) is clamped to zero and the vector
    renormalized; larger violations raise.
    """
    if povm.qubits != rho.qubits:
        raise ValueError(
            f"POVM on {povm.qubits} qubits does not match state on {rho.qubits}"
        )
    probs = []
    for _, op in povm.elements:
        p = np.trace(op @ rho.matrix)
        if abs(p.imag) > TOL:
            raise ValueError(f"complex outcome probability {p}")
        probs.append(p.real)
    probs = np.array(probs)
    if probs.min() < -TOL:
        raise ValueError(f"negative outcome probability {probs.min()}")
    probs = np.clip(probs, 0.0, None)
    return probs / probs.sum()


def measure(povm, rho, rng):
    """Sample one outcome label via inverse-CDF over outcome_distribution.

    Ties at cumulative boundaries resolve to the lower index.
    """
    probs = outcome_distribution(povm, rho)
    u = rng.random()
    cum = np.cumsum(probs)
    idx = int(np.searchsorted(cum, u, side="right"))
    idx = min(idx, len(probs) - 1)
    return povm.elements[idx][0]


def trace_norm(A, tol=TOL):
    """Sum of absolute eigenvalues of a Hermitian operator."""
    A = np.asarray(A, dtype=complex)
    if np.max(np.abs(A - A.conj().T)) > tol:
        raise ValueError("trace_norm requires a Hermitian operator")
    return float(np.abs(np.linalg.eigvalsh(A)).sum())


def partial_trace(rho, keep):
    """Reduced state on the kept qubits (1-based positions, order preserved
    as in the original register)."""
    keep = sorted(set(int(q) for q in keep))
    if not keep:
        raise ValueError("keep must be a non-empty qubit subset")
    if any(q < 1 or q > rho.qubits for q in keep):
        raise ValueError(f"keep {keep} outside [1..{rho.qubits}]")
    d = rho.qubits
    t = rho.matrix.reshape([2] * (2 * d))
    # trace out discarded qubits from highest axis index down
    removed = 0
    for q in range(d, 0, -1):
        if q in keep:
            continue
        ax = q - 1
        n = d - removed
        t = np.trace(t, axis1=ax, axis2=ax + n)
        removed += 1
    n = len(keep)
    return DensityOperator(qubits=n, matrix=t.reshape(2**n, 2**n), check=False)
