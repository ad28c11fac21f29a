import numpy as np
import pytest

from facause.random_vectors import (
    EPISODE_LENGTH,
    RvError,
    RvSpec,
    generate,
    invariance_probe,
    sample_model,
    step,
)

SEED = 7


@pytest.fixture(scope="module")
def one_in():
    return sample_model(RvSpec("1-in", seed=SEED))


def test_spec_validation():
    with pytest.raises(RvError):
        RvSpec("5-out")
    with pytest.raises(RvError):
        RvSpec("1-in", d=0)


def test_spec_aliases_resolve():
    assert RvSpec("d-20").resolved().d == 20
    assert RvSpec("tau-1").resolved().tau_mode == 0.05


def test_sample_model_deterministic_per_seed():
    a = sample_model(RvSpec("1-in", seed=SEED))
    b = sample_model(RvSpec("1-in", seed=SEED))
    rel_a, rel_b = a.outcome_relations[0], b.outcome_relations[0]
    assert np.array_equal(rel_a.a, rel_b.a)
    assert rel_a.tau == rel_b.tau


def test_three_m_in_single_relation_three_parents():
    model = sample_model(RvSpec("3-m-in", seed=SEED))
    assert len(model.outcome_relations) == 1
    assert model.outcome_relations[0].parents == (0, 1, 2)


def test_tau_one_engagement_below_ten_percent():
    model = sample_model(RvSpec("tau-1", seed=SEED))
    probe = generate(model, 10_000, seed=SEED + 1)
    freq = probe.labels[:, model.conditional_edges[0]].mean()
    assert freq < 0.10


def test_zero_state_zero_outcome(one_in):
    out, _ = step(one_in, np.zeros(one_in.n_vars * one_in.d))
    assert np.array_equal(out, np.zeros(one_in.d))


def test_relation_contributions_bounded():
    model = sample_model(RvSpec("2-in", seed=SEED))
    rng = np.random.default_rng(0)
    for rel in model.outcome_relations:
        assert rel.bound == 0.5
        for _ in range(50):
            active = rng.uniform(-1, 1, model.d * len(rel.parents))
            passive = rng.uniform(-1, 1, model.d)
            out, _ = rel.output(active, passive)
            assert np.all(np.abs(out) <= 0.5)


def test_generate_episode_count(one_in):
    data = generate(one_in, 100, seed=3)
    assert len(data) == 100
    # episode boundary: state resets are not continuations of the dynamics
    assert data.splits.sum() == 0 or EPISODE_LENGTH == 50


def test_generate_split_fractions(one_in):
    data = generate(one_in, 5000, seed=3)
    assert (data.splits == 0).sum() == 4500
    assert (data.splits == 1).sum() == 500


def test_generate_byte_identical(tmp_path, one_in):
    from facause.datasets import write_dataset

    a, b = tmp_path / "a.facd", tmp_path / "b.facd"
    write_dataset(a, generate(one_in, 500, seed=5))
    write_dataset(b, generate(one_in, 500, seed=5))
    assert a.read_bytes() == b.read_bytes()


def test_generate_values_in_range(one_in):
    data = generate(one_in, 2000, seed=9)
    assert np.abs(data.states).max() <= 1.0
    assert np.abs(data.outcomes).max() <= 1.0


def test_default_engagement_frequency_in_band(one_in):
    data = generate(one_in, 10_000, seed=11)
    freq = data.labels[:, one_in.conditional_edges[0]].mean()
    assert 0.35 <= freq <= 0.65


def test_passive_label_always_set(one_in):
    data = generate(one_in, 1000, seed=13)
    assert np.all(data.labels[:, -1] == 1)


def test_chain_outcome_zero_without_interaction():
    model = sample_model(RvSpec("3-chain", seed=SEED))
    data = generate(model, 2000, seed=15)
    disengaged = data.labels[:, 1] == 0
    assert disengaged.any()
    assert np.all(data.outcomes[disengaged] == 0.0)


def test_contextual_invariance_oracle(one_in):
    checked, violations = invariance_probe(one_in, 1000, seed=17)
    assert checked == 1000
    assert violations == 0


def test_contextual_invariance_oracle_multi_parent():
    model = sample_model(RvSpec("3-m-in", seed=SEED))
    checked, violations = invariance_probe(model, 200, seed=19)
    assert violations == 0
