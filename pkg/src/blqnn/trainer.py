"""Training loops: randomized single-shot QSGD, the exact-gradient baseline,
and the copy-based approximation baseline, with per-batch metric tracking.

The learning rate follows eta_t = alpha / sqrt(t) and absorbs the 1/c_QNN
normalization of the randomized estimator, so no explicit rescaling by the
parameter count is applied.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from . import dataset, gradient, qnn

MODES = ("randomized-qsgd", "exact-gradient", "copy-approx")


@dataclass
class TrainerConfig:
    alpha: float = 0.77
    total_samples: int = 30000
    batch_size: int = 100
    seed: int = 0
    mode: str = "randomized-qsgd"
    copies_per_component: int = 1  # copy-approx mode only

    def __post_init__(self):
        if self.alpha <= 0:
            raise ValueError("alpha must be positive")
        if self.total_samples < 1 or self.batch_size < 1:
            raise ValueError("total_samples and batch_size must be >= 1")
        if self.mode not in MODES:
            raise ValueError(f"mode must be one of {MODES}")
        if self.copies_per_component < 1:
            raise ValueError("copies_per_component must be >= 1")

    def learning_rate(self, t):
        return self.alpha / np.sqrt(t)


@dataclass
class BatchRecord:
    batch: int
    empirical_loss: float
    expected_loss: float
    optimal_loss: float


@dataclass
class TrainingTrace:
    records: list
    final_parameters: np.ndarray
    averaged_parameters: np.ndarray
    samples_consumed: int
    copies_per_step: int = 1


def init_parameters(net, rng):
    """Draw every coefficient independently uniform on [-1, 1]."""
    net.set_parameter_vector(rng.uniform(-1.0, 1.0, size=net.parameter_count))


def select_parameter(net, rng):
    """Hierarchical uniform selection: QP first, then one of its words."""
    flat = [
        (l, j, qp)
        for l, layer in enumerate(net.layers, start=1)
        for j, qp in enumerate(layer, start=1)
    ]
    l, j, qp = flat[rng.integers(len(flat))]
    word = qp.words[rng.integers(len(qp.words))]
    return qnn.ParameterIndex(layer=l, perceptron=j, word=word)


def qsgd_step(net, sample, t, cfg, loss, rng):
    """One randomized QSGD update: pick a QP and word uniformly, take one
    derivative shot, and move that single coefficient."""
    if t < 1:
        raise ValueError("step index t starts at 1")
    param = select_parameter(net, rng)
    shot = gradient.measure_derivative(net, sample, param, loss, rng)
    net.set_parameter(
        param, net.get_parameter(param) - cfg.learning_rate(t) * shot.z
    )
    return shot


def train(net, sample_stream, cfg, loss=None):
    """Run the configured training mode over a stream of (rho, y) samples.

    randomized-qsgd consumes exactly one sample per step (one measurement
    event per sample); exact-gradient updates all parameters from the
    commutator-form gradient; copy-approx spends copies_per_component * c_QNN
    copies of each step's sample on a repeated-measurement estimate.
    """
    if loss is None:
        loss = qnn.zero_one_loss(tuple(net.readout.labels))
    # sub-seeded so the training stream is decoupled from any data rng
    # built from the same base seed
    rng = np.random.default_rng([cfg.seed, 1])
    stream = iter(sample_stream)

    copies_per_step = 1
    if cfg.mode == "copy-approx":
        copies_per_step = cfg.copies_per_component * net.parameter_count
    num_steps = cfg.total_samples
    if cfg.mode == "copy-approx":
        num_steps = max(1, cfg.total_samples // copies_per_step)

    records = []
    param_sum = np.zeros(net.parameter_count)
    consumed = 0
    batch_samples = []
    batch_emp = []
    batch_exp = []

    def close_batch():
        records.append(
            BatchRecord(
                batch=len(records) + 1,
                empirical_loss=float(np.mean(batch_emp)),
                expected_loss=float(np.mean(batch_exp)),
                optimal_loss=dataset.helstrom_optimal_loss(batch_samples),
            )
        )
        batch_samples.clear()
        batch_emp.clear()
        batch_exp.clear()

    for t in range(1, num_steps + 1):
        try:
            sample = next(stream)
        except StopIteration:
            raise RuntimeError(f"sample stream exhausted at step {t}") from None
        rho, y = sample
        # expected loss at the parameters under which the sample is processed
        batch_exp.append(qnn.expected_loss(net, rho, y, loss))
        if cfg.mode == "randomized-qsgd":
            shot = qsgd_step(net, sample, t, cfg, loss, rng)
            batch_emp.append(loss(y, shot.outcome_label))
            consumed += 1
        elif cfg.mode == "exact-gradient":
            grad = gradient.exact_gradient(net, sample, loss)
            net.set_parameter_vector(
                net.parameter_vector() - cfg.learning_rate(t) * grad
            )
            yhat = qnn.predict(net, rho, rng)
            batch_emp.append(loss(y, yhat))
            consumed += 1
        else:  # copy-approx
            est = gradient.approx_gradient_copies(
                net, sample, cfg.copies_per_component, loss, rng
            )
            net.set_parameter_vector(
                net.parameter_vector() - cfg.learning_rate(t) * est.values
            )
            yhat = qnn.predict(net, rho, rng)
            batch_emp.append(loss(y, yhat))
            consumed += est.copies_consumed
        batch_samples.append(sample)
        param_sum += net.parameter_vector()
        if len(batch_samples) == cfg.batch_size or t == num_steps:
            close_batch()

    return TrainingTrace(
        records=records,
        final_parameters=net.parameter_vector(),
        averaged_parameters=param_sum / num_steps,
        samples_consumed=consumed,
        copies_per_step=copies_per_step,
    )


def evaluate(net, test_batch, loss, rng, shots_per_sample=1):
    """Empirical accuracy (sampled predictions) and mean expected loss."""
    if not test_batch:
        raise ValueError("test batch must be non-empty")
    correct = 0
    total = 0
    for rho, y in test_batch:
        for _ in range(shots_per_sample):
            if qnn.predict(net, rho, rng) == y:
                correct += 1
            total += 1
    accuracy = correct / total
    return accuracy, qnn.average_expected_loss(net, test_batch, loss)
