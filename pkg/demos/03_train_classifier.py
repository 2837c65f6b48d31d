"""Train the two-layer band-limited classifier with randomized QSGD.

Every training step consumes exactly one fresh sample: a QP and one of its
Pauli words are drawn uniformly, a single derivative shot is measured, and
that one coefficient moves by eta_t * z with eta_t = alpha / sqrt(t). The
per-batch expected loss is tracked against the batch's own Helstrom floor.

A 6000-sample run (60 batches) takes well under a minute and already closes
most of the gap; pass a larger count on the command line to reproduce the
full 30000-sample curve.
"""

import sys

import numpy as np

from blqnn import dataset, qnn, trainer

total = int(sys.argv[1]) if len(sys.argv) > 1 else 6000
seed = 0

net = qnn.build_classifier_network()
trainer.init_parameters(net, np.random.default_rng([seed, 2]))
cfg = trainer.TrainerConfig(alpha=0.77, total_samples=total, batch_size=100, seed=seed)
data = dataset.sample_stream(np.random.default_rng([seed, 0]))

print(f"training randomized-qsgd for {total} samples "
      f"({net.parameter_count} trainable coefficients)")
trace = trainer.train(net, data, cfg)

print(f"{'batch':>5} {'expected':>9} {'optimal':>9} {'gap':>7}")
step = max(1, len(trace.records) // 12)
for rec in trace.records[::step]:
    gap = rec.expected_loss - rec.optimal_loss
    print(f"{rec.batch:>5} {rec.expected_loss:9.4f} {rec.optimal_loss:9.4f} {gap:7.4f}")

tail = trace.records[-10:]
gap = np.mean([r.expected_loss - r.optimal_loss for r in tail])
print()
print(f"final-10-batch mean gap to the Helstrom floor: {gap:.4f}")

test_rng = np.random.default_rng([seed, 3])
test_batch = [dataset.draw_sample(test_rng) for _ in range(100)]
loss = qnn.zero_one_loss((-1, 1))
acc, exp_loss = trainer.evaluate(net, test_batch, loss, np.random.default_rng([seed, 4]))
print(f"held-out test accuracy (single-shot predictions): {acc:.2f}")
print(f"held-out expected accuracy:                       {1 - exp_loss:.4f}")
print(f"held-out Helstrom-optimal accuracy:               "
      f"{1 - dataset.helstrom_optimal_loss(test_batch):.4f}")
