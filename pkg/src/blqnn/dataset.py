"""Synthetic two-qubit state-discrimination dataset and the optimal-loss oracle.

Samples are drawn as: with probability 1/3 the pure state
|phi_u> = sqrt(1-u^2)|00> + u|10> labelled -1; otherwise the rank-2 mixture
of |phi_{+-v}> = +-sqrt(1-v^2)|01> + v|10> labelled +1, with u, v fresh
uniform draws on [0, 1].  The Holevo-Helstrom bound gives the minimum
achievable batch-averaged expected 0-1 loss in closed form.
"""

from __future__ import annotations

import csv
from dataclasses import dataclass

import numpy as np

from .state import DensityOperator, PureState, from_ket, trace_norm

P_NEGATIVE = 1.0 / 3.0


@dataclass
class LabeledSample:
    rho: DensityOperator
    y: int
    u: float | None = None
    v: float | None = None

    def __iter__(self):
        # unpacks as (rho, y) for training-loop consumption
        return iter((self.rho, self.y))

    def __getitem__(self, i):
        return (self.rho, self.y)[i]


def _check_unit_interval(name, x):
    if not (0.0 <= x <= 1.0):
        raise ValueError(f"{name} must lie in [0, 1], got {x}")


def phi_u(u):
    """sqrt(1-u^2)|00> + u|10>."""
    _check_unit_interval("u", u)
    amps = np.zeros(4, dtype=complex)
    amps[0b00] = np.sqrt(1 - u * u)
    amps[0b10] = u
    return PureState(qubits=2, amplitudes=amps)


def phi_pm_v(v, sign):
    """+-sqrt(1-v^2)|01> + v|10>."""
    _check_unit_interval("v", v)
    if sign not in (+1, -1):
        raise ValueError("sign must be +1 or -1")
    amps = np.zeros(4, dtype=complex)
    amps[0b01] = sign * np.sqrt(1 - v * v)
    amps[0b10] = v
    return PureState(qubits=2, amplitudes=amps)


def rho1(u):
    """Pure state |phi_u><phi_u|, labelled -1."""
    return from_ket(phi_u(u))


def rho2(v):
    """Equal mixture of |phi_{+v}> and |phi_{-v}>, labelled +1."""
    plus = from_ket(phi_pm_v(v, +1)).matrix
    minus = from_ket(phi_pm_v(v, -1)).matrix
    return DensityOperator(qubits=2, matrix=(plus + minus) / 2)


def draw_sample(rng):
    """One labelled sample; (u, v) are retained for replay."""
    if rng.random() < P_NEGATIVE:
        u = rng.random()
        return LabeledSample(rho=rho1(u), y=-1, u=u)
    v = rng.random()
    return LabeledSample(rho=rho2(v), y=+1, v=v)


def sample_stream(rng):
    """Endless generator of fresh samples (no replication)."""
    while True:
        yield draw_sample(rng)


def helstrom_optimal_loss(batch):
    """Minimum batch-averaged expected 0-1 loss over all POVMs:
    (1 - ||mean of y_j rho_j||_1) / 2."""
    if not batch:
        raise ValueError("batch must be non-empty")
    signed = None
    for rho, y in batch:
        if y not in (-1, +1):
            raise ValueError(f"labels must be in {{-1,+1}}, got {y}")
        term = y * rho.matrix
        signed = term if signed is None else signed + term
    signed /= len(batch)
    return 0.5 * (1.0 - trace_norm(signed))


def dump_samples(samples, path):
    """CSV dump (index, label, u_or_v_flag, u, v) for exact replay."""
    with open(path, "w", newline="") as fh:
        writer = csv.writer(fh)
        writer.writerow(["index", "label", "u_or_v_flag", "u", "v"])
        for i, s in enumerate(samples):
            flag = "u" if s.y == -1 else "v"
            writer.writerow(
                [
                    i,
                    s.y,
                    flag,
                    "" if s.u is None else f"{s.u:.17g}",
                    "" if s.v is None else f"{s.v:.17g}",
                ]
            )
