import os

import pytest

from facause import corpus
from facause.scm import (
    Intervention,
    MalformedStateError,
    InvalidInterventionError,
    Scm,
    ScmError,
    StateSpaceCapError,
    Variable,
)


@pytest.fixture
def mover():
    return corpus.get("mover-1d").scm


@pytest.fixture
def xor():
    return corpus.get("binary-xor").scm


def test_evaluate_mover_blocked(mover):
    assert mover.evaluate((0, 1)) == 0
    assert mover.evaluate((0, 0)) == 1
    assert mover.evaluate((1, 2)) == 1


def test_evaluate_pusher_observed():
    pusher = corpus.get("pusher-1d-discrete").scm
    assert pusher.evaluate((499, 200)) == 501
    assert pusher.evaluate((499, 501)) == 500
    assert pusher.evaluate((123, 501)) == 500


def test_evaluate_rocket_no_thrust():
    rocket = corpus.get("rocket-ship").scm
    assert rocket.evaluate((0, 0, 100)) == 0
    assert rocket.evaluate((1, 0, 100)) == 1
    assert rocket.evaluate((1, 1, 500)) == 0


def test_evaluate_is_deterministic(mover):
    results = {mover.evaluate((2, 1)) for _ in range(10)}
    assert results == {3}


def test_evaluate_rejects_malformed_states(mover):
    with pytest.raises(MalformedStateError):
        mover.evaluate((0,))
    with pytest.raises(MalformedStateError):
        mover.evaluate((0, 7))


def test_apply_intervention_identity(mover):
    assert mover.apply_intervention((0, 1), Intervention(())) == (0, 1)


def test_apply_intervention_overwrites_single_coordinate(mover):
    assert mover.apply_intervention((0, 1), Intervention.of(o=2)) == (0, 2)


def test_apply_intervention_idempotent(mover):
    iv = Intervention.of(m=3, o=0)
    once = mover.apply_intervention((0, 1), iv)
    assert mover.apply_intervention(once, iv) == once


def test_apply_intervention_only_touches_targets():
    rocket = corpus.get("rocket-ship").scm
    state = (1, 0, 444)
    out = rocket.apply_intervention(state, Intervention.of(bird=500))
    assert out == (1, 0, 500)


def test_apply_intervention_rejects_out_of_domain(mover):
    with pytest.raises(InvalidInterventionError):
        mover.apply_intervention((0, 1), Intervention.of(o=9))


def test_intervention_rejects_duplicate_targets():
    with pytest.raises(InvalidInterventionError):
        Intervention((("o", 1), ("o", 2)))


def test_enumerate_mover_counts(mover):
    states = list(mover.enumerate_states())
    assert len(states) == 12
    assert len(set(states)) == 12
    assert states == sorted(states)
    for s in states:
        mover.check_state(s)


def test_enumerate_xor(xor):
    assert list(xor.enumerate_states()) == [(0, 0), (0, 1), (1, 0), (1, 1)]


def test_enumerate_rock_throwing_reachable_only():
    rock = corpus.get("rock-throwing").scm
    states = list(rock.enumerate_states())
    # (sh, st, bh, bt) with sh = st and bh = bt & ~sh
    assert states == [(0, 0, 0, 0), (0, 0, 1, 1), (1, 1, 0, 0), (1, 1, 0, 1)]
    assert rock.n_states() == 4


def test_enumerate_cap_refusal():
    pusher = corpus.get("pusher-1d-discrete").scm
    with pytest.raises(StateSpaceCapError):
        list(pusher.enumerate_states(cap=1000))


def test_state_cap_env_override(monkeypatch):
    pusher = corpus.get("pusher-1d-discrete").scm
    monkeypatch.setenv("FAC_STATE_CAP", "5")
    with pytest.raises(StateSpaceCapError):
        list(pusher.enumerate_states())


def test_counterfactual_recomputes_derived_variables():
    gang = corpus.get("gang-execution").scm
    # Forcing the leader's shot off also stands the member down.
    assert gang.counterfactual_outcome((1, 1), {"leader": 0}) == 0
    assert gang.counterfactual_outcome((0, 0), {"leader": 1}) == 1
    # The member's shot alone settles nothing.
    assert gang.counterfactual_outcome((1, 1), {"gang": 0}) == 1


def test_counterfactual_witness_blocks_recomputation():
    rock = corpus.get("rock-throwing").scm
    preempted = (1, 1, 0, 1)  # both throw, Suzy hits
    # Without a witness Billy's rock hits once Suzy's is removed.
    assert rock.counterfactual_outcome(preempted, {"sh": 0}) == 1
    # Holding Billy's hit at its observed value exposes Suzy's preemption.
    assert rock.counterfactual_outcome(preempted, {"sh": 0}, witness=("bh",)) == 0


def test_counterfactual_rejects_witness_event_overlap():
    gang = corpus.get("gang-execution").scm
    with pytest.raises(InvalidInterventionError):
        gang.counterfactual_outcome((1, 1), {"leader": 0}, witness=("leader",))


def test_cyclic_equations_rejected():
    with pytest.raises(ScmError):
        Scm(
            variables=(Variable("a", (0, 1)), Variable("b", (0, 1))),
            outcome=Variable("y", (0, 1)),
            mechanism=lambda s, u: s[0],
            equations={
                "a": (("b",), lambda b: b),
                "b": (("a",), lambda a: a),
            },
        )


def test_duplicate_variable_names_rejected():
    with pytest.raises(ScmError):
        Scm(
            variables=(Variable("a", (0, 1)), Variable("a", (0, 1))),
            outcome=Variable("y", (0, 1)),
            mechanism=lambda s, u: 0,
        )
