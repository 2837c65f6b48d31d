"""Experiment runner: seeded training runs with CSV/plot-data emission.

Configuration is flat key=value text; every key is also available as a
long-form command flag of the same name.  A run writes a trace CSV
(batch,empirical_loss,expected_loss,optimal_loss), a final checkpoint, and a
summary with test accuracy against the test batch's optimal accuracy.

Exit codes: 0 success, 1 config error, 2 runtime error.
"""

from __future__ import annotations

import argparse
import csv
import os
import sys
from dataclasses import dataclass

import numpy as np

from . import dataset, qnn, trainer

TEST_BATCH_SIZE = 100


@dataclass
class ExperimentConfig:
    mode: str = "randomized-qsgd"
    seed: int = 0
    total_samples: int = 30000
    batch_size: int = 100
    alpha: float = 0.77
    copies_per_component: int = 100
    architecture: str = ""  # checkpoint path; empty = default two-layer net
    output: str = "run"

    def __post_init__(self):
        if self.mode not in trainer.MODES:
            raise ValueError(f"mode must be one of {trainer.MODES}")
        if self.total_samples < 1 or self.batch_size < 1:
            raise ValueError("total_samples and batch_size must be positive")
        if self.alpha <= 0:
            raise ValueError("alpha must be positive")
        if self.copies_per_component < 1:
            raise ValueError("copies_per_component must be positive")


_FIELD_TYPES = {
    "mode": str,
    "seed": int,
    "total_samples": int,
    "batch_size": int,
    "alpha": float,
    "copies_per_component": int,
    "architecture": str,
    "output": str,
}


def read_config(path):
    """Parse a flat key=value config file."""
    values = {}
    with open(path) as fh:
        for lineno, line in enumerate(fh, start=1):
            line = line.strip()
            if not line or line.startswith("#"):
                continue
            if "=" not in line:
                raise ValueError(f"{path}:{lineno}: expected key=value, got {line!r}")
            key, _, raw = line.partition("=")
            key = key.strip().replace("-", "_")
            if key not in _FIELD_TYPES:
                raise ValueError(f"{path}:{lineno}: unknown key {key!r}")
            values[key] = _FIELD_TYPES[key](raw.strip())
    return values


def build_parser():
    parser = argparse.ArgumentParser(
        prog="blqnn",
        description="Train a band-limited QNN on the state-discrimination dataset.",
    )
    parser.add_argument("--config", help="flat key=value config file")
    parser.add_argument("--mode", choices=trainer.MODES)
    parser.add_argument("--seed", type=int)
    parser.add_argument("--total-samples", type=int, dest="total_samples")
    parser.add_argument("--batch-size", type=int, dest="batch_size")
    parser.add_argument("--alpha", type=float)
    parser.add_argument(
        "--copies-per-component", type=int, dest="copies_per_component"
    )
    parser.add_argument("--architecture", help="initial checkpoint to load")
    parser.add_argument("--output", help="output directory")
    parser.add_argument(
        "--plot-data",
        metavar="TRACE_CSV",
        help="emit per-curve series files from an existing trace CSV and exit",
    )
    return parser


def load_config(args):
    values = {}
    if args.config:
        values.update(read_config(args.config))
    for key in _FIELD_TYPES:
        flag = getattr(args, key, None)
        if flag is not None:
            values[key] = flag
    return ExperimentConfig(**values)


def run_experiment(cfg):
    """Train, then write trace CSV, checkpoint, and summary under cfg.output."""
    os.makedirs(cfg.output, exist_ok=True)

    if cfg.architecture:
        net = qnn.load_network(cfg.architecture)
    else:
        net = qnn.build_classifier_network()
    loss = qnn.zero_one_loss(tuple(net.readout.labels))

    trainer.init_parameters(net, np.random.default_rng([cfg.seed, 2]))
    data_rng = np.random.default_rng([cfg.seed, 0])
    tcfg = trainer.TrainerConfig(
        alpha=cfg.alpha,
        total_samples=cfg.total_samples,
        batch_size=cfg.batch_size,
        seed=cfg.seed,
        mode=cfg.mode,
        copies_per_component=cfg.copies_per_component,
    )
    trace = trainer.train(net, dataset.sample_stream(data_rng), tcfg, loss)

    trace_path = os.path.join(cfg.output, "trace.csv")
    write_trace(trace, trace_path)
    qnn.save_network(net, os.path.join(cfg.output, "checkpoint.txt"))

    # fresh test batch, never seen in training
    test_rng = np.random.default_rng([cfg.seed, 3])
    test_batch = [dataset.draw_sample(test_rng) for _ in range(TEST_BATCH_SIZE)]
    accuracy, expected_loss = trainer.evaluate(
        net, test_batch, loss, np.random.default_rng([cfg.seed, 4])
    )
    optimal_loss = dataset.helstrom_optimal_loss(test_batch)
    summary = {
        "mode": cfg.mode,
        "seed": cfg.seed,
        "samples_consumed": trace.samples_consumed,
        "test_accuracy": accuracy,
        "test_expected_accuracy": 1.0 - expected_loss,
        "optimal_accuracy": 1.0 - optimal_loss,
    }
    with open(os.path.join(cfg.output, "summary.txt"), "w") as fh:
        for key, value in summary.items():
            if isinstance(value, float):
                fh.write(f"{key}={value:.17g}\n")
            else:
                fh.write(f"{key}={value}\n")
    return summary


def write_trace(trace, path):
    with open(path, "w", newline="") as fh:
        writer = csv.writer(fh)
        writer.writerow(["batch", "empirical_loss", "expected_loss", "optimal_loss"])
        for rec in trace.records:
            writer.writerow(
                [
                    rec.batch,
                    f"{rec.empirical_loss:.17g}",
                    f"{rec.expected_loss:.17g}",
                    f"{rec.optimal_loss:.17g}",
                ]
            )


GAP_MARKER = "?"


def emit_plot_data(trace_csv, out_dir=None):
    """Split a trace CSV into gnuplot-ready two-column series files
    (empirical.dat, expected.dat, optimal.dat); empty values become gap
    markers."""
    if out_dir is None:
        out_dir = os.path.dirname(os.path.abspath(trace_csv))
    with open(trace_csv, newline="") as fh:
        reader = csv.reader(fh)
        header = next(reader, None)
        expected_header = ["batch", "empirical_loss", "expected_loss", "optimal_loss"]
        if header != expected_header:
            raise ValueError(f"malformed trace CSV header: {header}")
        rows = [row for row in reader if row]
    for row in rows:
        if len(row) != 4:
            raise ValueError(f"malformed trace CSV row: {row}")
    paths = []
    for col, name in ((1, "empirical"), (2, "expected"), (3, "optimal")):
        path = os.path.join(out_dir, f"{name}.dat")
        with open(path, "w") as fh:
            for row in rows:
                value = row[col].strip() or GAP_MARKER
                fh.write(f"{row[0]} {value}\n")
        paths.append(path)
    return paths


def main(argv=None):
    parser = build_parser()
    args = parser.parse_args(argv)
    if args.plot_data:
        try:
            for path in emit_plot_data(args.plot_data):
                print(path)
        except (OSError, ValueError) as exc:
            print(f"error: {exc}", file=sys.stderr)
            return 2
        return 0
    try:
        cfg = load_config(args)
    except (OSError, ValueError, TypeError) as exc:
        print(f"config error: {exc}", file=sys.stderr)
        return 1
    try:
        summary = run_experiment(cfg)
    except (OSError, RuntimeError, ValueError) as exc:
        print(f"runtime error: {exc}", file=sys.stderr)
        return 2
    for key, value in summary.items():
        print(f"{key}={value}")
    return 0


if __name__ == "__main__":
    sys.exit(main())
