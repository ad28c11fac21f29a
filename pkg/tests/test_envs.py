import numpy as np
import pytest

from facause.envs import (
    BREAKOUT_DIM,
    BREAKOUT_OBJECTS,
    PUSH2D_DIM,
    PUSH2D_OBJECTS,
    EnvError,
    ball_lost,
    breakout_reset,
    breakout_step,
    label_soundness_probe,
    push2d_reset,
    push2d_step,
    render_ascii,
    rollout,
    upsample,
)


def mk_push(pusher, block, target=(4.5, 4.5), obstacles=((0.5, 4.5), (1.5, 4.5), (2.5, 4.5))):
    s = np.zeros((7, 3))
    s[1, :2] = pusher
    s[2, :2] = block
    s[3, :2] = target
    for i, o in enumerate(obstacles):
        s[4 + i, :2] = o
    return s.reshape(-1)


def mk_break(ball, vel, paddle=(15, 10), blocks=((5, 40, 1), (15, 40, 1), (25, 40, 1))):
    s = np.zeros((6, 5))
    s[1, :2] = paddle
    s[2, :2] = ball
    s[2, 2:4] = vel
    for i, (x, y, a) in enumerate(blocks):
        s[3 + i, :2] = (x, y)
        s[3 + i, 4] = a
    return s.reshape(-1)


# -- pushing -------------------------------------------------------------------


def test_push2d_free_space_block_untouched():
    nxt, labels = push2d_step(mk_push((1, 1), (4, 1)), np.array([0.5, 0.0]))
    grid = nxt.reshape(7, 3)
    assert np.allclose(grid[2, :2], (4, 1))
    assert list(labels) == [0, 0, 1, 0, 0, 0, 0]


def test_push2d_pusher_stops_at_obstacle_face():
    state = mk_push((1, 1), (4, 4), obstacles=((2.5, 1.0), (0.5, 4.5), (1.5, 4.5)))
    nxt, _ = push2d_step(state, np.array([1.0, 0.0]))
    assert nxt.reshape(7, 3)[1, 0] == pytest.approx(1.5)  # face minus half extents


def test_push2d_perpendicular_motion_slides():
    state = mk_push((1, 1), (4, 4), obstacles=((2.5, 1.0), (0.5, 4.5), (1.5, 4.5)))
    nxt, _ = push2d_step(state, np.array([1.0, 0.7]))
    grid = nxt.reshape(7, 3)
    assert grid[1, 0] == pytest.approx(1.5)
    assert grid[1, 1] == pytest.approx(1.7)


def test_push2d_pushes_block_along_contact_normal():
    nxt, labels = push2d_step(mk_push((1, 1), (2.2, 1)), np.array([1.0, 0.0]))
    grid = nxt.reshape(7, 3)
    assert grid[2, 0] == pytest.approx(3.0)
    assert grid[1, 0] == pytest.approx(2.0)
    assert list(labels[:3]) == [1, 1, 1]


def test_push2d_block_stopped_by_obstacle_sets_bit():
    state = mk_push((1, 1), (2.2, 1), obstacles=((3.7, 1.0), (0.5, 4.5), (1.5, 4.5)))
    nxt, labels = push2d_step(state, np.array([1.0, 0.0]))
    grid = nxt.reshape(7, 3)
    assert grid[2, 0] == pytest.approx(2.7)  # obstacle face minus half extents
    assert labels[4] == 1


def test_push2d_wall_pinned_block_is_not_pushed():
    # block flush against the floor, pusher pressing it down: no movement and
    # therefore no action/pusher cause bits
    state = mk_push((1, 1.5), (1, 0.5))
    nxt, labels = push2d_step(state, np.array([0.0, -0.5]))
    grid = nxt.reshape(7, 3)
    assert np.allclose(grid[2, :2], (1, 0.5))
    assert list(labels) == [0, 0, 1, 0, 0, 0, 0]


def test_push2d_target_is_intangible_and_tracks_block():
    state = mk_push((1, 1), (2.2, 1), target=(3.2, 1))
    nxt, labels = push2d_step(state, np.array([1.0, 0.0]))
    grid = nxt.reshape(7, 3)
    assert grid[2, 0] == pytest.approx(3.0)  # moved through the target zone
    assert grid[3, 2] == 1.0  # block overlaps the target now
    assert labels[3] == 0


def test_push2d_rejects_bad_action():
    with pytest.raises(EnvError):
        push2d_step(mk_push((1, 1), (3, 3)), np.array([2.0, 0.0]))


# -- brick breaking --------------------------------------------------------------


def test_breakout_wall_flips_perpendicular_velocity():
    nxt, _ = breakout_step(mk_break((28.5, 30), (1, 2)), 0)
    grid = nxt.reshape(6, 5)
    assert grid[2, 2] == -1.0
    assert grid[2, 3] == 2.0


def test_breakout_block_hit_reverses_y_and_kills_block():
    nxt, labels = breakout_step(mk_break((15, 37.5), (1, 2)), 0)
    grid = nxt.reshape(6, 5)
    assert grid[2, 3] == -2.0
    assert grid[4, 4] == 0.0
    assert labels[4] == 1


def test_breakout_dead_block_no_longer_affects_ball():
    state = mk_break((15, 37.5), (1, 2), blocks=((5, 40, 1), (15, 40, 0), (25, 40, 1)))
    nxt, labels = breakout_step(state, 0)
    grid = nxt.reshape(6, 5)
    assert grid[2, 3] == 2.0  # flew through
    assert labels[4] == 0


def test_breakout_paddle_angle_computed_before_move():
    state = mk_break((12.5, 13), (1, -2))
    nxt, labels = breakout_step(state, 1)
    grid = nxt.reshape(6, 5)
    # left strike segment sends the ball up-left even though the paddle moved
    assert (grid[2, 2], grid[2, 3]) == (-1.0, 1.0)
    assert grid[1, 0] == pytest.approx(17.0)
    assert labels[1] == 1 and labels[0] == 0


def test_breakout_free_flight():
    nxt, labels = breakout_step(mk_break((15, 30), (-1, -2)), 0)
    grid = nxt.reshape(6, 5)
    assert np.allclose(grid[2, :2], (14, 28))
    assert list(labels) == [0, 0, 1, 0, 0, 0]


def test_breakout_rejects_bad_action():
    with pytest.raises(EnvError):
        breakout_step(mk_break((15, 30), (1, -2)), 2)


def test_breakout_reset_ranges():
    rng = np.random.default_rng(0)
    for _ in range(20):
        grid = breakout_reset(rng).reshape(6, 5)
        assert 22 <= grid[2, 1] <= 28
        assert grid[2, 3] == -1.0
        assert abs(grid[2, 2]) == 1.0
        assert np.allclose(grid[1, :2], (15, 10))
        assert all(31 <= grid[3 + i, 1] <= 44 for i in range(3))


# -- invariants ----------------------------------------------------------------


def push2d_worst_overlap(grid):
    solids = [grid[i, :2] for i in (1, 2, 4, 5, 6)]
    worst = -np.inf
    for i in range(len(solids)):
        for j in range(i + 1, len(solids)):
            d = np.abs(solids[i] - solids[j])
            worst = max(worst, min(1.0 - d[0], 1.0 - d[1]))
    return worst


def test_push2d_no_interpenetration_10k_steps():
    rng = np.random.default_rng(5)
    state = push2d_reset(rng)
    worst = -np.inf
    for i in range(10_000):
        if i % 20 == 0:
            state = push2d_reset(rng)
        state, _ = push2d_step(state, rng.uniform(-1, 1, 2))
        worst = max(worst, push2d_worst_overlap(state.reshape(7, 3)))
    assert worst <= 1e-9


def test_breakout_speed_conservation_and_no_interpenetration_10k_steps():
    rng = np.random.default_rng(6)
    state = breakout_reset(rng)
    for _ in range(10_000):
        state, _ = breakout_step(state, int(rng.integers(-1, 2)))
        grid = state.reshape(6, 5)
        assert abs(grid[2, 2]) == 1.0
        assert abs(grid[2, 3]) in (1.0, 2.0)
        ball, pad = grid[2, :2], grid[1, :2]
        d = np.abs(ball - pad)
        assert min(4.5 - d[0], 2.5 - d[1]) <= 1e-9
        for i in range(3):
            if grid[3 + i, 4] > 0.5:
                d = np.abs(ball - grid[3 + i, :2])
                assert min(3.5 - d[0], 2.0 - d[1]) <= 1e-9
        if ball_lost(state):
            state = breakout_reset(rng)


# -- rollouts ------------------------------------------------------------------


def test_rollout_push2d_transition_count():
    data = rollout("push2d", 3, seed=1)
    assert len(data) == 60
    assert data.variables == PUSH2D_OBJECTS
    assert data.dim == PUSH2D_DIM


def test_rollout_byte_identical(tmp_path):
    from facause.datasets import write_dataset

    for env in ("push2d", "breakout"):
        a, b = tmp_path / f"{env}-a.facd", tmp_path / f"{env}-b.facd"
        write_dataset(a, rollout(env, 5, seed=9))
        write_dataset(b, rollout(env, 5, seed=9))
        assert a.read_bytes() == b.read_bytes()


def test_rollout_breakout_metadata():
    data = rollout("breakout", 4, seed=2)
    assert data.variables == BREAKOUT_OBJECTS
    assert data.dim == BREAKOUT_DIM
    assert np.all(data.labels[:, 2] == 1)
    assert np.all(data.labels[:, 0] == 0)  # pre-move bounce: action never a cause


# -- label soundness (the simulator oracle) -------------------------------------


@pytest.mark.parametrize("env", ["push2d", "breakout"])
def test_label_soundness_500_transitions(env):
    checked, violations = label_soundness_probe(env, 500, seed=21)
    assert checked >= 500
    assert violations == 0


# -- upsampling ------------------------------------------------------------------


def interaction_fraction(data):
    self_bit = 2
    other = [i for i in range(data.n_vars) if i != self_bit]
    return float((data.labels[:, other].sum(axis=1) > 0).mean())


def test_upsample_balances_interactions():
    data = rollout("push2d", 150, seed=12)
    up = upsample(data, lambda prev: prev, target_fraction=0.5, seed=1)
    assert len(up) == len(data)
    assert 0.4 <= interaction_fraction(up) <= 0.6


def test_upsample_pure_proportional_concentrates_on_interactions():
    data = rollout("push2d", 150, seed=12)
    up = upsample(data, lambda prev: prev, target_fraction=None, seed=1)
    # the identity passive model is exact on non-interactions, so the
    # error-proportional draw returns (nearly) only interaction rows
    assert interaction_fraction(up) >= 0.95


def test_upsample_degenerate_errors_pass_through():
    data = rollout("push2d", 5, seed=12)
    static = data.subset(np.nonzero(data.labels[:, [0, 1, 3, 4, 5, 6]].sum(axis=1) == 0)[0])
    with pytest.warns(UserWarning):
        out = upsample(static, lambda prev: prev, target_fraction=0.5, seed=1)
    assert out is static


def test_upsample_never_reads_labels():
    data = rollout("push2d", 50, seed=12)
    stripped = data.subset(np.arange(len(data)))
    stripped.labels = np.zeros_like(stripped.labels)  # labels wiped
    up = upsample(stripped, lambda prev: prev, target_fraction=0.5, seed=1)
    assert len(up) == len(data)


# -- rendering -------------------------------------------------------------------


def test_render_ascii_shapes():
    push = render_ascii("push2d", mk_push((1, 1), (3, 3)))
    assert "P" in push and "B" in push
    brk = render_ascii("breakout", mk_break((15, 30), (1, -2)))
    assert "o" in brk and "=" in brk and "#" in brk
