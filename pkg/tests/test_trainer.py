import numpy as np
import pytest

from blqnn import dataset, qnn, trainer
from conftest import computational_readout, single_pauli_x_net

LOSS01 = qnn.zero_one_loss((-1, 1))


def test_config_validation():
    with pytest.raises(ValueError):
        trainer.TrainerConfig(alpha=0.0)
    with pytest.raises(ValueError):
        trainer.TrainerConfig(total_samples=0)
    with pytest.raises(ValueError):
        trainer.TrainerConfig(mode="newton")
    with pytest.raises(ValueError):
        trainer.TrainerConfig(copies_per_component=0)


def test_learning_rate_schedule():
    cfg = trainer.TrainerConfig(alpha=0.5)
    assert cfg.learning_rate(1) == pytest.approx(0.5)
    assert cfg.learning_rate(4) == pytest.approx(0.25)
    rates = [cfg.learning_rate(t) for t in range(1, 50)]
    assert all(a > b for a, b in zip(rates, rates[1:]))


def test_init_parameters_range(rng):
    net = qnn.build_classifier_network()
    trainer.init_parameters(net, rng)
    vec = net.parameter_vector()
    assert vec.shape == (48,)
    assert np.all(np.abs(vec) <= 1.0)
    assert np.std(vec) > 0.1


def test_select_parameter_hierarchical_frequency():
    # layer 1 has two QPs on 16 words each, layer 2 one QP on 16 words:
    # a word in the lone layer-2 QP should appear with probability
    # (1/3) * (1/16), a layer-1 word with (1/3) * (1/16) as well; the QP
    # marginal is 1/3 each
    net = qnn.build_classifier_network()
    rng = np.random.default_rng(21)
    n = 10**5
    qp_hits = np.zeros(3)
    word_hit = 0
    target = qnn.ParameterIndex(2, 1, (2, 0))
    for _ in range(n):
        p = trainer.select_parameter(net, rng)
        if p.layer == 1:
            qp_hits[p.perceptron - 1] += 1
        else:
            qp_hits[2] += 1
        if p == target:
            word_hit += 1
    for h in qp_hits:
        sigma = np.sqrt((1 / 3) * (2 / 3) / n)
        assert abs(h / n - 1 / 3) < 3 * sigma
    pw = (1 / 3) * (1 / 16)
    sigma = np.sqrt(pw * (1 - pw) / n)
    assert abs(word_hit / n - pw) < 3 * sigma


def test_qsgd_step_moves_one_parameter():
    from blqnn import state

    net = single_pauli_x_net(0.4)
    rho = state.from_ket(state.ket("0"))
    cfg = trainer.TrainerConfig(alpha=0.3, total_samples=10)
    rng = np.random.default_rng(3)
    before = net.parameter_vector().copy()
    shot = trainer.qsgd_step(net, (rho, -1), 2, cfg, LOSS01, rng)
    after = net.parameter_vector()
    moved = np.nonzero(after != before)[0]
    assert len(moved) <= 1
    if len(moved) == 1:
        delta = after[moved[0]] - before[moved[0]]
        assert delta == pytest.approx(-cfg.learning_rate(2) * shot.z)
    with pytest.raises(ValueError):
        trainer.qsgd_step(net, (rho, -1), 0, cfg, LOSS01, rng)


def _small_net():
    net = qnn.build_classifier_network()
    trainer.init_parameters(net, np.random.default_rng(99))
    return net


def test_train_consumption_and_record_counts():
    cfg = trainer.TrainerConfig(total_samples=250, batch_size=100, seed=5)
    data = dataset.sample_stream(np.random.default_rng([5, 0]))
    trace = trainer.train(_small_net(), data, cfg)
    assert trace.samples_consumed == 250
    assert len(trace.records) == 3
    assert [r.batch for r in trace.records] == [1, 2, 3]
    assert trace.copies_per_step == 1
    for r in trace.records:
        assert 0.0 <= r.empirical_loss <= 1.0
        assert 0.0 <= r.expected_loss <= 1.0
        assert 0.0 <= r.optimal_loss <= 0.5
    assert trace.final_parameters.shape == (48,)
    assert trace.averaged_parameters.shape == (48,)


def test_train_deterministic_given_seed():
    def run():
        cfg = trainer.TrainerConfig(total_samples=120, batch_size=40, seed=7)
        data = dataset.sample_stream(np.random.default_rng([7, 0]))
        return trainer.train(_small_net(), data, cfg)

    a, b = run(), run()
    assert np.array_equal(a.final_parameters, b.final_parameters)
    assert [r.empirical_loss for r in a.records] == [r.empirical_loss for r in b.records]


def test_train_copy_approx_accounting():
    net = _small_net()
    cfg = trainer.TrainerConfig(
        total_samples=200, batch_size=10, seed=2, mode="copy-approx",
        copies_per_component=2,
    )
    data = dataset.sample_stream(np.random.default_rng([2, 0]))
    trace = trainer.train(net, data, cfg)
    assert trace.copies_per_step == 2 * 48
    steps = max(1, 200 // (2 * 48))
    assert trace.samples_consumed == steps * 2 * 48
    assert len(trace.records) == int(np.ceil(steps / 10))


def test_train_exhausted_stream():
    cfg = trainer.TrainerConfig(total_samples=10, batch_size=5, seed=1)
    data = iter([dataset.draw_sample(np.random.default_rng(0)) for _ in range(3)])
    with pytest.raises(RuntimeError):
        trainer.train(_small_net(), data, cfg)


def test_exact_gradient_toy_convergence():
    # exact-gradient descent on the 1-qubit sin^2(a) landscape from a = pi/3
    # should reach a multiple of pi
    from blqnn import state

    net = single_pauli_x_net(np.pi / 3)
    rho = state.from_ket(state.ket("0"))
    cfg = trainer.TrainerConfig(
        alpha=0.5, total_samples=500, batch_size=500, seed=0, mode="exact-gradient"
    )
    trace = trainer.train(net, iter([(rho, -1)] * 500), cfg, loss=LOSS01)
    a = trace.final_parameters[1]
    residue = abs(a - np.pi * round(a / np.pi))
    assert residue < 0.01
    assert trace.records[-1].expected_loss < 0.02


def test_evaluate():
    from blqnn import state

    net = single_pauli_x_net(0.0)
    rho = state.from_ket(state.ket("0"))
    acc, exp_loss = trainer.evaluate(
        net, [(rho, -1)] * 4, LOSS01, np.random.default_rng(0), shots_per_sample=3
    )
    assert acc == 1.0
    assert exp_loss == pytest.approx(0.0, abs=1e-12)
    with pytest.raises(ValueError):
        trainer.evaluate(net, [], LOSS01, np.random.default_rng(0))
