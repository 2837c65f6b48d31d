"""Single-shot derivative estimates on a one-qubit toy landscape.

A single perceptron U = exp(i a sigma_x) acting on |0> with a computational
readout has expected 0-1 loss sin^2(a). Each gradient measurement consumes
one copy of the input state and returns a random value z in {-2, 0, +2},
yet its mean is exactly d/da sin^2(a) = sin(2a). This script prints the
exact derivative, the closed form, and shot averages at a few budgets so
the 1/sqrt(n) shrink of the statistical error is visible.
"""

import numpy as np

from blqnn import gradient, qnn, state

from _common import toy_net

loss = qnn.zero_one_loss((-1, 1))
rho = state.from_ket(state.ket("0"))
param = qnn.ParameterIndex(layer=1, perceptron=1, word=(1,))
rng = np.random.default_rng(7)

print(f"{'a':>6} {'sin(2a)':>9} {'exact':>9} "
      f"{'n=100':>9} {'n=10^4':>9} {'n=10^6':>9}")
for a in (0.2, 0.6, np.pi / 4, 1.2):
    net = toy_net(a)
    exact = gradient.exact_derivative(net, (rho, -1), param, loss)
    means = []
    for n in (100, 10**4, 10**6):
        zs = gradient.measure_derivative_batch(net, (rho, -1), param, loss, rng, n)
        means.append(zs.mean())
    print(f"{a:6.3f} {np.sin(2 * a):9.5f} {exact:9.5f} "
          f"{means[0]:9.5f} {means[1]:9.5f} {means[2]:9.5f}")

print()
print("each shot is one of {-2, 0, +2}; only the average is the derivative:")
zs = gradient.measure_derivative_batch(net, (rho, -1), param, loss, rng, 20)
print("  " + " ".join(f"{z:+.0f}" for z in zs))
