"""The state-discrimination dataset and its optimal-classifier baseline.

Class -1 (probability 1/3) is the pure state sqrt(1-u^2)|00> + u|10>;
class +1 is an equal mixture of +-sqrt(1-v^2)|01> + v|10>, with u and v
fresh uniform draws per sample. The Holevo-Helstrom bound turns any batch
into a floor on the achievable expected 0-1 loss, so training curves can be
plotted against a moving per-batch optimum instead of an absolute constant.

The script draws batches of growing size and prints the optimal accuracy
1 - loss for each; the large-batch value is the population optimum that a
perfectly trained classifier could at best approach.
"""

import numpy as np

from blqnn import dataset

rng = np.random.default_rng(2)

print("batch size -> Helstrom-optimal accuracy")
for m in (10, 100, 1000, 10**4, 10**5):
    batch = [dataset.draw_sample(rng) for _ in range(m)]
    acc = 1.0 - dataset.helstrom_optimal_loss(batch)
    print(f"{m:>9} -> {acc:.4f}")

print()
print("small batches are noisy (sometimes fully separable), large batches")
print("settle near the population optimum of about 0.9225")

# two hand-picked illustrations
r = dataset.rho1(0.3)
print()
print("single sample, always separable:   ",
      1.0 - dataset.helstrom_optimal_loss([(r, -1)]))
print("same state with opposite labels:   ",
      1.0 - dataset.helstrom_optimal_loss([(r, -1), (r, 1)]))
