"""Band-limited quantum perceptrons and feed-forward networks of them.

A perceptron is U = exp(i sum_s a_s sigma^s) with the Pauli words s confined
to a support set J of at most k qubits, so it carries 4^|J| real coefficients
(identity word included; its contribution is a global phase).  A network is
an ordered list of layers of perceptrons plus a readout POVM.
"""

from __future__ import annotations

import io
from dataclasses import dataclass, field
from functools import lru_cache

import numpy as np

from . import pauli, state


@dataclass
class BandLimitedQP:
    """A perceptron acting on ``support`` (1-based qubit positions).

    ``coefficients`` holds one real number per word in {0,1,2,3}^|support|,
    in lexicographic word order (see pauli.all_words).
    """

    support: tuple
    coefficients: np.ndarray

    def __post_init__(self):
        self.support = tuple(int(q) for q in self.support)
        if len(set(self.support)) != len(self.support):
            raise ValueError(f"support positions must be distinct: {self.support}")
        self.coefficients = np.asarray(self.coefficients, dtype=float)
        expected = 4 ** len(self.support)
        if self.coefficients.shape != (expected,):
            raise ValueError(
                f"expected {expected} coefficients for support {self.support}, "
                f"got shape {self.coefficients.shape}"
            )

    @property
    def words(self):
        return pauli.all_words(len(self.support))


@dataclass(frozen=True)
class ParameterIndex:
    """Addresses one coefficient: layer l, perceptron j (both 1-based), local word s."""

    layer: int
    perceptron: int
    word: tuple


@dataclass
class LossFunction:
    """A bounded loss table ell(y, yhat) with bound gamma = max |ell|."""

    table: dict  # (y, yhat) -> float
    gamma: float

    def __call__(self, y, yhat):
        return self.table[(y, yhat)]


def zero_one_loss(labels=(-1, 1)):
    table = {(y, yhat): 0.0 if y == yhat else 1.0 for y in labels for yhat in labels}
    return LossFunction(table=table, gamma=1.0)


@lru_cache(maxsize=None)
def _embedded_basis(support, total_qubits):
    """Stack of all 4^|J| embedded Pauli-word matrices for a support set."""
    words = pauli.all_words(len(support))
    return np.stack(
        [pauli.pauli_operator(w, total_qubits, support) for w in words]
    )


def qp_unitary(qp, total_qubits):
    """exp(i sum_s a_s sigma^s) embedded on the full register.

    The local generator (dimension 2^|J|) is exponentiated by Hermitian
    eigendecomposition, then the local unitary is embedded on the support
    via its own Pauli-basis expansion.
    """
    n = len(qp.support)
    if any(q < 1 or q > total_qubits for q in qp.support):
        raise ValueError(f"support {qp.support} outside [1..{total_qubits}]")
    local_basis = np.stack([pauli.word_matrix(w) for w in pauli.all_words(n)])
    A = np.tensordot(qp.coefficients, local_basis, axes=(0, 0))
    evals, evecs = np.linalg.eigh(A)
    U_local = (evecs * np.exp(1j * evals)) @ evecs.conj().T
    # expand U_local in the local Pauli basis (complex coefficients) and
    # re-synthesize on the embedded basis
    coeffs = np.einsum("sij,ji->s", local_basis, U_local) / 2**n
    return np.tensordot(coeffs, _embedded_basis(qp.support, total_qubits), axes=(0, 0))


def layer_unitary(layer_qps, total_qubits):
    """Product of a layer's perceptrons; the last-listed QP acts last."""
    dim = 2**total_qubits
    U = np.eye(dim, dtype=complex)
    for qp in layer_qps:
        U = qp_unitary(qp, total_qubits) @ U
    return U


@dataclass
class Network:
    """Feed-forward QNN: sample qubits d, padded register d', layers of QPs,
    and a readout POVM on the full register."""

    d: int
    d_prime: int
    layers: list  # of list of BandLimitedQP
    readout: state.Povm

    def __post_init__(self):
        if self.d_prime < self.d:
            raise ValueError("d_prime must be >= d")
        for layer in self.layers:
            for qp in layer:
                if any(q < 1 or q > self.d_prime for q in qp.support):
                    raise ValueError(
                        f"QP support {qp.support} outside [1..{self.d_prime}]"
                    )
        if self.readout.qubits != self.d_prime:
            raise ValueError("readout POVM must act on the padded register")

    @property
    def num_layers(self):
        return len(self.layers)

    @property
    def num_perceptrons(self):
        return sum(len(layer) for layer in self.layers)

    @property
    def parameter_count(self):
        return sum(qp.coefficients.size for layer in self.layers for qp in layer)

    def parameter_indices(self):
        """All ParameterIndex values in canonical (l, j, s) lexicographic order."""
        out = []
        for l, layer in enumerate(self.layers, start=1):
            for j, qp in enumerate(layer, start=1):
                for word in qp.words:
                    out.append(ParameterIndex(layer=l, perceptron=j, word=word))
        return out

    def qp_at(self, index):
        if not (1 <= index.layer <= len(self.layers)):
            raise ValueError(f"layer {index.layer} out of range")
        layer = self.layers[index.layer - 1]
        if not (1 <= index.perceptron <= len(layer)):
            raise ValueError(f"perceptron {index.perceptron} out of range")
        return layer[index.perceptron - 1]

    def get_parameter(self, index):
        qp = self.qp_at(index)
        return float(qp.coefficients[_word_offset(index.word, qp)])

    def set_parameter(self, index, value):
        qp = self.qp_at(index)
        qp.coefficients[_word_offset(index.word, qp)] = value

    def parameter_vector(self):
        return np.concatenate(
            [qp.coefficients for layer in self.layers for qp in layer]
        ).copy()

    def set_parameter_vector(self, vec):
        vec = np.asarray(vec, dtype=float)
        if vec.shape != (self.parameter_count,):
            raise ValueError(f"expected {self.parameter_count} parameters")
        pos = 0
        for layer in self.layers:
            for qp in layer:
                n = qp.coefficients.size
                qp.coefficients[:] = vec[pos : pos + n]
                pos += n


def _word_offset(word, qp):
    word = tuple(int(x) for x in word)
    if len(word) != len(qp.support):
        raise ValueError(
            f"word {word} does not match support size {len(qp.support)}"
        )
    off = 0
    for x in word:
        if x not in (0, 1, 2, 3):
            raise ValueError(f"bad word letter in {word}")
        off = 4 * off + x
    return off


def network_unitary(net):
    """U_L ... U_1 on the padded register."""
    U = np.eye(2**net.d_prime, dtype=complex)
    for layer in net.layers:
        U = layer_unitary(layer, net.d_prime) @ U
    return U


def forward_through(net, rho_padded, num_layers):
    """Propagate through layers 1..num_layers only."""
    if rho_padded.qubits != net.d_prime:
        raise ValueError("input must live on the padded register")
    if not (0 <= num_layers <= net.num_layers):
        raise ValueError(f"layer prefix {num_layers} out of range")
    rho = rho_padded
    for layer in net.layers[:num_layers]:
        rho = state.apply_unitary(layer_unitary(layer, net.d_prime), rho)
    return rho


def forward(net, rho_padded):
    """Full forward pass on an already padded state."""
    return forward_through(net, rho_padded, net.num_layers)


def pad_input(net, rho):
    if rho.qubits != net.d:
        raise ValueError(f"sample must be on {net.d} qubits")
    return state.pad_sample(rho, net.d_prime - net.d)


def predict(net, rho, rng):
    """One-shot readout of the network on an unpadded sample."""
    rho_out = forward(net, pad_input(net, rho))
    return state.measure(net.readout, rho_out, rng)


def expected_loss(net, rho, y, loss):
    """sum_yhat ell(y, yhat) * P(yhat) on the network output."""
    rho_out = forward(net, pad_input(net, rho))
    probs = state.outcome_distribution(net.readout, rho_out)
    return float(
        sum(loss(y, yhat) * p for (yhat, _), p in zip(net.readout.elements, probs))
    )


def average_expected_loss(net, batch, loss):
    """Mean expected loss over a non-empty batch of (rho, y) pairs."""
    if not batch:
        raise ValueError("batch must be non-empty")
    return float(np.mean([expected_loss(net, rho, y, loss) for rho, y in batch]))


# ---------------------------------------------------------------------------
# Plain-text checkpoint format
# ---------------------------------------------------------------------------

def parity_readout(d_prime, readout_qubits=(2, 3), even_label=-1):
    """Two-outcome parity POVM on a pair of readout qubits, computational basis.

    Even parity (|00>, |11>) maps to ``even_label``; odd parity to the other
    label of {-1, +1}.
    """
    q1, q2 = readout_qubits
    dim = 2**d_prime
    even = np.zeros((dim, dim), dtype=complex)
    for idx in range(dim):
        bits = format(idx, f"0{d_prime}b")
        if bits[q1 - 1] == bits[q2 - 1]:
            even[idx, idx] = 1.0
    odd = np.eye(dim) - even
    odd_label = -even_label
    return state.Povm(qubits=d_prime, elements=[(even_label, even), (odd_label, odd)])


def build_classifier_network(
    d=2,
    d_prime=4,
    layer_supports=(((3, 4), (3, 4)), ((1, 2),)),
    readout_qubits=(1, 2),
    even_label=-1,
):
    """The shipped two-layer architecture: two QPs on the auxiliary pair in
    the first layer, one QP on the sample pair in the second, parity readout
    on the sample pair.  All coefficients start at zero.

    The default supports were chosen empirically: placing the classifying QP
    directly on the readout pair lets single-shot randomized SGD reach the
    optimal-loss plateau within the standard sample budget, whereas stacking
    redundant QPs on one pair slows it down noticeably.
    """
    layers = [
        [
            BandLimitedQP(support=s, coefficients=np.zeros(4 ** len(s)))
            for s in layer
        ]
        for layer in layer_supports
    ]
    readout = parity_readout(d_prime, readout_qubits, even_label)
    return Network(d=d, d_prime=d_prime, layers=layers, readout=readout)


def _infer_parity_readout(net):
    """Recover (readout_qubits, even_label) from a parity readout POVM."""
    import itertools

    for label, mat in net.readout.elements:
        for pair in itertools.combinations(range(1, net.d_prime + 1), 2):
            candidate = parity_readout(net.d_prime, pair, label)
            if np.allclose(mat, candidate.elements[0][1]):
                return pair, label
    raise ValueError("readout is not a two-qubit parity measurement")


def save_network(net, path, readout_qubits=None, even_label=None):
    """Write a plain-text checkpoint: register sizes, supports, readout
    choice, and coefficients at 17 significant digits.

    The readout description is inferred from the network's POVM unless
    given explicitly."""
    if readout_qubits is None or even_label is None:
        inferred_qubits, inferred_label = _infer_parity_readout(net)
        if readout_qubits is None:
            readout_qubits = inferred_qubits
        if even_label is None:
            even_label = inferred_label
    buf = io.StringIO()
    buf.write(f"d {net.d}\n")
    buf.write(f"d_prime {net.d_prime}\n")
    buf.write(f"layers {net.num_layers}\n")
    buf.write(
        f"readout parity {readout_qubits[0]} {readout_qubits[1]} even_label {even_label}\n"
    )
    for l, layer in enumerate(net.layers, start=1):
        buf.write(f"layer {l} perceptrons {len(layer)}\n")
        for qp in layer:
            buf.write("support " + " ".join(str(q) for q in qp.support) + "\n")
            buf.write(
                "coefficients "
                + " ".join(f"{c:.17g}" for c in qp.coefficients)
                + "\n"
            )
    with open(path, "w") as fh:
        fh.write(buf.getvalue())


def load_network(path):
    """Read a checkpoint written by save_network."""
    with open(path) as fh:
        tokens = [line.split() for line in fh if line.strip()]
    it = iter(tokens)

    def expect(key):
        row = next(it)
        if row[0] != key:
            raise ValueError(f"malformed checkpoint: expected {key!r}, got {row[0]!r}")
        return row[1:]

    d = int(expect("d")[0])
    d_prime = int(expect("d_prime")[0])
    num_layers = int(expect("layers")[0])
    ro = expect("readout")
    if ro[0] != "parity":
        raise ValueError(f"unknown readout kind {ro[0]!r}")
    readout_qubits = (int(ro[1]), int(ro[2]))
    even_label = int(ro[4])
    layers = []
    for _ in range(num_layers):
        row = expect("layer")
        num_qps = int(row[2])
        layer = []
        for _ in range(num_qps):
            support = tuple(int(q) for q in expect("support"))
            coeffs = np.array([float(c) for c in expect("coefficients")])
            layer.append(BandLimitedQP(support=support, coefficients=coeffs))
        layers.append(layer)
    readout = parity_readout(d_prime, readout_qubits, even_label)
    return Network(d=d, d_prime=d_prime, layers=layers, readout=readout)
