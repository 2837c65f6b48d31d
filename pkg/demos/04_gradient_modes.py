"""Compare the three training modes on a fixed sample budget.

With quantum data each sample supports one measurement event, so the fair
comparison axis is copies consumed, not parameter updates:

- randomized-qsgd: one copy per step, one coefficient moves per step;
- exact-gradient: an idealized baseline that reads the full gradient off the
  density operator (not physically realizable from single copies);
- copy-approx: estimates every component by repeated measurement, burning
  copies_per_component * c_QNN copies per update.

On a budget of a few thousand copies the copy-based mode completes only a
handful of updates and barely moves, while randomized QSGD makes one update
per copy and converges. The exact-gradient column shows what unlimited
measurement precision would buy.
"""

import numpy as np

from blqnn import dataset, qnn, trainer

BUDGET = 4800
loss = qnn.zero_one_loss((-1, 1))

print(f"copy budget per run: {BUDGET}\n")
print(f"{'mode':>16} {'updates':>8} {'final gap':>10}")
for mode in trainer.MODES:
    seed = 1
    net = qnn.build_classifier_network()
    trainer.init_parameters(net, np.random.default_rng([seed, 2]))
    cfg = trainer.TrainerConfig(
        alpha=0.77,
        total_samples=BUDGET,
        batch_size=100,
        seed=seed,
        mode=mode,
        copies_per_component=10,
    )
    data = dataset.sample_stream(np.random.default_rng([seed, 0]))
    trace = trainer.train(net, data, cfg)
    updates = trace.samples_consumed // trace.copies_per_step
    rec = trace.records[-1]
    gap = rec.expected_loss - rec.optimal_loss
    print(f"{mode:>16} {updates:>8} {gap:10.4f}")
