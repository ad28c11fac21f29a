"""Deterministic block-pushing and brick-breaking simulators with labels.

Both environments resolve motion by continuous-time first contact along the
motion vector (swept axis-aligned boxes), with ties between axes broken in
favor of x.  Positions snap exactly onto contact faces, so solid objects
never interpenetrate beyond float rounding.

Ground-truth cause labels come from the simulator's own contact events: the
outcome object's previous state is always a cause of its next state, and any
object that touches or impedes it during the step contributes its bit.  In
the brick-breaking environment the bounce angle is computed from the paddle
position *before* the paddle moves, so the current action has no path to the
ball's next state and its bit is always zero.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable, Sequence

import numpy as np

from .datasets import TransitionDataset

EPS = 1e-9


class EnvError(Exception):
    pass


# ---------------------------------------------------------------------------
# Swept-AABB first contact
# ---------------------------------------------------------------------------


def _axis_entry(p: float, ph: float, v: float, b: float, bh: float) -> tuple[float, float]:
    """Entry/exit times for interval overlap on one axis under velocity v."""
    lo = (b - bh) - (p + ph)  # gap when approaching from the left
    hi = (b + bh) - (p - ph)
    if v > 0:
        return lo / v, hi / v
    if v < 0:
        return hi / v, lo / v
    if lo < 0 < hi:  # already overlapping on this axis
        return -math.inf, math.inf
    return math.inf, -math.inf


def first_contact(
    pos: np.ndarray,
    half: np.ndarray,
    vel: np.ndarray,
    boxes: Sequence[tuple[np.ndarray, np.ndarray, object]],
) -> tuple[float, int, object] | None:
    """Earliest (time, axis, tag) contact within the motion, or None.

    Contact requires actual approach: bodies merely touching while moving
    apart or sliding along each other do not collide.  Axis ties go to x.
    """
    best: tuple[float, int, object] | None = None
    for center, bhalf, tag in boxes:
        ex, xx = _axis_entry(pos[0], half[0], vel[0], center[0], bhalf[0])
        ey, xy = _axis_entry(pos[1], half[1], vel[1], center[1], bhalf[1])
        t_in = max(ex, ey)
        t_out = min(xx, xy)
        if t_in >= t_out or t_in > 1.0 or t_in < -EPS or math.isinf(t_in):
            continue
        axis = 0 if ex >= ey else 1
        if vel[axis] == 0:
            continue
        t_in = max(t_in, 0.0)
        if best is None or t_in < best[0] - EPS or (abs(t_in - best[0]) <= EPS and axis < best[1]):
            best = (t_in, axis, tag)
    return best


def _wall_limit(pos: float, half: float, v: float, low: float, high: float) -> float:
    """Motion fraction until the box reaches an arena bound on one axis."""
    if v > 0:
        return (high - half - pos) / v
    if v < 0:
        return (low + half - pos) / v
    return math.inf


# ---------------------------------------------------------------------------
# 2D pushing
# ---------------------------------------------------------------------------

PUSH2D_OBJECTS = ("action", "pusher", "block", "target", "obstacle1", "obstacle2", "obstacle3")
PUSH2D_DIM = 3
PUSH2D_ARENA = 5.0
_PUSH_HALF = np.array([0.5, 0.5])
PUSH2D_EPISODE_STEPS = 20


def _obstacle_boxes(state: np.ndarray) -> list[tuple[np.ndarray, np.ndarray, int]]:
    return [(state[4 + i, :2], _PUSH_HALF, i) for i in range(3)]


def push2d_step(state: np.ndarray, action: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    """One pushing step; returns (next state, cause labels for the block).

    The pusher moves by the action, stopped and slid by obstacles, and pushes
    the block along the contact normal.  The block is stopped by obstacles
    (setting that obstacle's label bit) and by the arena bounds; the target
    impedes nothing and only mirrors whether the block sits on it.

    Action and pusher carry a cause bit only when the contact actually moved
    the block: a push fully blocked by an obstacle or the arena leaves the
    blocker (if any) as the cause of the block's unchanged position.
    """
    nxt, labels, _ = push2d_step_traced(state, action)
    return nxt, labels


def push2d_step_traced(
    state: np.ndarray, action: np.ndarray
) -> tuple[np.ndarray, np.ndarray, frozenset]:
    """Step plus the full contact signature, used by the soundness oracle."""
    state = np.asarray(state, dtype=np.float64).reshape(len(PUSH2D_OBJECTS), PUSH2D_DIM)
    action = np.asarray(action, dtype=np.float64)
    if action.shape != (2,) or np.abs(action).max() > 1.0 + EPS:
        raise EnvError(f"action must lie in [-1,1]^2, got {action}")

    nxt = state.copy()
    nxt[0] = (action[0], action[1], 0.0)
    pusher = nxt[1, :2].copy()
    block = nxt[2, :2].copy()
    block_start = block.copy()
    labels = np.zeros(len(PUSH2D_OBJECTS), dtype=np.uint8)
    labels[2] = 1  # the block's own state
    contacts: set[tuple] = set()
    contacted_block = False

    remaining = action.copy()
    for _ in range(4):
        if np.abs(remaining).max() <= EPS:
            break
        # arena bounds act like contacts with an un-labeled static frame
        scale = 1.0
        wall_axis = None
        for axis in range(2):
            tw = _wall_limit(pusher[axis], 0.5, remaining[axis], 0.0, PUSH2D_ARENA)
            if tw < scale - EPS:
                scale, wall_axis = tw, axis
        boxes = [(c, h, ("obstacle", i)) for c, h, i in _obstacle_boxes(nxt)]
        boxes.append((block, _PUSH_HALF, ("block", None)))
        hit = first_contact(pusher, _PUSH_HALF, remaining, boxes)
        if hit is None or hit[0] > scale + EPS:
            if wall_axis is None:
                pusher += remaining
                break
            pusher += remaining * max(scale, 0.0)
            remaining = remaining * (1.0 - max(scale, 0.0))
            remaining[wall_axis] = 0.0
            continue
        t, axis, (kind, idx) = hit
        pusher += remaining * t
        remaining = remaining * (1.0 - t)
        if kind == "obstacle":
            contacts.add(("pusher-obstacle", idx, axis))
            center = nxt[4 + idx, :2]
            side = 1.0 if pusher[axis] < center[axis] else -1.0
            pusher[axis] = center[axis] - side * 1.0
            remaining[axis] = 0.0
        else:  # the block
            contacted_block = True
            contacts.add(("pusher-block", axis))
            side = 1.0 if pusher[axis] < block[axis] else -1.0
            pusher[axis] = block[axis] - side * 1.0
            push = remaining[axis]
            if push * side > 0:
                allowed, impeder = _push_block(nxt, block, axis, push)
                # the pusher itself may run into an obstacle during the push
                own, own_impeder = _box_slide_limit(nxt, pusher, axis, side * abs(allowed))
                if abs(own) < abs(allowed) - EPS:
                    allowed, impeder = own, own_impeder
                block[axis] += allowed
                pusher[axis] = block[axis] - side * 1.0
                if impeder is not None:
                    labels[4 + impeder] = 1
                    contacts.add(("block-obstacle", impeder, axis))
            remaining[axis] = 0.0

    if contacted_block and not np.array_equal(block, block_start):
        labels[0] = labels[1] = 1
    nxt[1, :2] = pusher
    nxt[2, :2] = block
    on_target = np.all(np.abs(block - nxt[3, :2]) < 1.0)
    nxt[3, 2] = 1.0 if on_target else 0.0
    return nxt.reshape(-1), labels, frozenset(contacts)


def _push_block(
    state: np.ndarray, block: np.ndarray, axis: int, push: float
) -> tuple[float, int | None]:
    """Allowed signed displacement of the block along one axis, plus the
    index of the obstacle that stopped it early (None for walls/full push)."""
    sign = math.copysign(1.0, push)
    limit = abs(push)
    impeder: int | None = None
    # arena bound
    wall_gap = (PUSH2D_ARENA - 0.5 - block[axis]) if sign > 0 else (block[axis] - 0.5)
    if wall_gap < limit - EPS:
        limit = max(wall_gap, 0.0)
    allowed, obs = _box_slide_limit(state, block, axis, sign * limit)
    if abs(allowed) < limit - EPS:
        return allowed, obs
    return sign * limit, impeder


def _box_slide_limit(
    state: np.ndarray, box: np.ndarray, axis: int, displacement: float
) -> tuple[float, int | None]:
    """Clamp a single-axis displacement of a unit box against the obstacles."""
    if displacement == 0:
        return 0.0, None
    sign = math.copysign(1.0, displacement)
    limit = abs(displacement)
    impeder: int | None = None
    other = 1 - axis
    for center, _, i in _obstacle_boxes(state):
        if abs(box[other] - center[other]) >= 1.0 - EPS:
            continue  # not aligned; no contact possible on this axis
        gap = (center[axis] - box[axis]) * sign - 1.0
        if -EPS <= gap < limit - EPS:
            limit = max(gap, 0.0)
            impeder = i
    return sign * limit, impeder


def push2d_reset(rng: np.random.Generator) -> np.ndarray:
    """Random non-intersecting placement of all solid objects plus target."""
    state = np.zeros((len(PUSH2D_OBJECTS), PUSH2D_DIM))
    placed: list[np.ndarray] = []
    for obj in (1, 2, 3, 4, 5, 6):  # pusher, block, target, obstacles
        for _ in range(1000):
            pos = rng.uniform(0.5, PUSH2D_ARENA - 0.5, 2)
            if all(np.abs(pos - p).max() >= 1.0 for p in placed):
                placed.append(pos)
                state[obj, :2] = pos
                break
        else:
            raise EnvError("failed to place objects without intersection")
    return state.reshape(-1)


# ---------------------------------------------------------------------------
# Brick breaking
# ---------------------------------------------------------------------------

BREAKOUT_OBJECTS = ("action", "paddle", "ball", "block1", "block2", "block3")
BREAKOUT_DIM = 5
BREAKOUT_W, BREAKOUT_H = 30.0, 50.0
PADDLE_HALF = np.array([3.5, 1.5])
BALL_HALF = np.array([1.0, 1.0])
BLOCK_HALF = np.array([2.5, 1.0])
# paddle strike segments, left edge to right edge, and the velocity each sets
STRIKE_WIDTHS = (2.0, 2.0, 2.0, 1.0)
STRIKE_VELOCITIES = ((-1.0, 1.0), (-1.0, 2.0), (1.0, 2.0), (1.0, 1.0))


def _strike_velocity(ball_x: float, paddle_x: float) -> tuple[float, float]:
    offset = min(max(ball_x - (paddle_x - PADDLE_HALF[0]), 0.0), sum(STRIKE_WIDTHS))
    edge = 0.0
    for width, vel in zip(STRIKE_WIDTHS, STRIKE_VELOCITIES):
        edge += width
        if offset <= edge + EPS:
            return vel
    return STRIKE_VELOCITIES[-1]


def breakout_step(state: np.ndarray, action: int) -> tuple[np.ndarray, np.ndarray]:
    """One step: the ball flies and bounces, then the paddle moves.

    Bounce responses: side walls flip the horizontal velocity, the top wall
    flips the vertical one, a live block reverses the vertical velocity and
    dies, and the paddle sets the velocity by strike segment, evaluated at
    the paddle's pre-move position.  The ball may pass the bottom edge; the
    rollout treats that as the episode's end.
    """
    if action not in (-1, 0, 1):
        raise EnvError(f"action must be -1, 0, or 1, got {action}")
    state = np.asarray(state, dtype=np.float64).reshape(len(BREAKOUT_OBJECTS), BREAKOUT_DIM)
    nxt = state.copy()
    nxt[0] = (float(action), 0.0, 0.0, 0.0, 0.0)
    labels = np.zeros(len(BREAKOUT_OBJECTS), dtype=np.uint8)
    labels[2] = 1  # the ball's own state

    paddle_pre = state[1, :2].copy()
    pos = nxt[2, :2].copy()
    vel = nxt[2, 2:4].copy()
    remaining = vel.copy()
    for _ in range(4):
        if np.abs(remaining).max() <= EPS:
            break
        scale = 1.0
        wall_axis = None
        tw = _wall_limit(pos[0], BALL_HALF[0], remaining[0], 0.0, BREAKOUT_W)
        if tw < scale - EPS:
            scale, wall_axis = tw, 0
        if remaining[1] > 0:
            tw = _wall_limit(pos[1], BALL_HALF[1], remaining[1], -math.inf, BREAKOUT_H)
            if tw < scale - EPS:
                scale, wall_axis = tw, 1
        boxes: list[tuple[np.ndarray, np.ndarray, object]] = [
            (nxt[3 + i, :2], BLOCK_HALF, ("block", i))
            for i in range(3)
            if nxt[3 + i, 4] > 0.5
        ]
        boxes.append((paddle_pre, PADDLE_HALF, ("paddle", None)))
        hit = first_contact(pos, BALL_HALF, remaining, boxes)
        if hit is None or hit[0] > scale + EPS:
            if wall_axis is None:
                pos += remaining
                break
            pos += remaining * max(scale, 0.0)
            frac = 1.0 - max(scale, 0.0)
            remaining *= frac
            remaining[wall_axis] = -remaining[wall_axis]
            vel[wall_axis] = -vel[wall_axis]
            continue
        t, axis, (kind, idx) = hit
        pos += remaining * t
        remaining = remaining * (1.0 - t)
        if kind == "block":
            center = nxt[3 + idx, :2]
            side = 1.0 if pos[axis] < center[axis] else -1.0
            pos[axis] = center[axis] - side * (BALL_HALF[axis] + BLOCK_HALF[axis])
            vel[1] = -vel[1]
            remaining[1] = -remaining[1]
            nxt[3 + idx, 4] = 0.0
            labels[3 + idx] = 1
        else:  # paddle, pre-move position
            side = 1.0 if pos[axis] < paddle_pre[axis] else -1.0
            pos[axis] = paddle_pre[axis] - side * (BALL_HALF[axis] + PADDLE_HALF[axis])
            vx, vy = _strike_velocity(pos[0], paddle_pre[0])
            speed_left = np.abs(remaining).max() / max(np.abs(vel).max(), 1.0)
            vel = np.array([vx, vy])
            remaining = vel * speed_left
            labels[1] = 1

    nxt[2, :2] = pos
    nxt[2, 2:4] = vel

    # paddle moves last, clamped to the arena and stopped by the ball
    px = nxt[1, 0]
    target = min(max(px + 2.0 * action, PADDLE_HALF[0]), BREAKOUT_W - PADDLE_HALF[0])
    dx = target - px
    if dx != 0 and abs(nxt[1, 1] - pos[1]) < PADDLE_HALF[1] + BALL_HALF[1] - EPS:
        ahead = (pos[0] - px) if dx > 0 else (px - pos[0])
        if ahead > 0:  # ball lies in the motion direction
            gap = ahead - (PADDLE_HALF[0] + BALL_HALF[0])
            if gap < abs(dx):
                dx = math.copysign(max(gap, 0.0), dx)
    nxt[1, 0] = px + dx
    return nxt.reshape(-1), labels


def breakout_reset(rng: np.random.Generator) -> np.ndarray:
    """Paddle centered low, ball falling from below the block band."""
    state = np.zeros((len(BREAKOUT_OBJECTS), BREAKOUT_DIM))
    state[1, :2] = (15.0, 10.0)
    state[2, 0] = rng.uniform(1.0, BREAKOUT_W - 1.0)
    state[2, 1] = rng.uniform(22.0, 28.0)
    state[2, 2] = rng.choice((-1.0, 1.0))
    state[2, 3] = -1.0
    xs: list[float] = []
    ys: list[float] = []
    for i in range(3):
        for _ in range(1000):
            x = float(rng.integers(3, 28))
            y = float(rng.integers(31, 45))
            if all(abs(x - ox) >= 5.0 or abs(y - oy) >= 2.0 for ox, oy in zip(xs, ys)):
                xs.append(x)
                ys.append(y)
                state[3 + i, :2] = (x, y)
                state[3 + i, 4] = 1.0
                break
        else:
            raise EnvError("failed to place blocks without intersection")
    return state.reshape(-1)


def ball_lost(state: np.ndarray) -> bool:
    return state.reshape(len(BREAKOUT_OBJECTS), BREAKOUT_DIM)[2, 1] < 1.0


def blocks_cleared(state: np.ndarray) -> bool:
    grid = state.reshape(len(BREAKOUT_OBJECTS), BREAKOUT_DIM)
    return bool(np.all(grid[3:, 4] < 0.5))


# ---------------------------------------------------------------------------
# Rollouts and upsampling
# ---------------------------------------------------------------------------

BREAKOUT_EPISODE_CAP = 500


def rollout(env: str, episodes: int, seed: int) -> TransitionDataset:
    """Random-policy episodes; deterministic per seed; 90/10 episode split."""
    if episodes < 1:
        raise EnvError("episodes must be positive")
    rng = np.random.default_rng(seed)
    states, outcomes, labels, epi = [], [], [], []
    if env == "push2d":
        for e in range(episodes):
            state = push2d_reset(rng)
            for _ in range(PUSH2D_EPISODE_STEPS):
                action = rng.uniform(-1, 1, 2)
                nxt, lab = push2d_step(state, action)
                grid = nxt.reshape(len(PUSH2D_OBJECTS), PUSH2D_DIM)
                recorded = state.copy().reshape(len(PUSH2D_OBJECTS), PUSH2D_DIM)
                recorded[0] = (action[0], action[1], 0.0)
                states.append(recorded.reshape(-1))
                outcomes.append(grid[2].copy())
                labels.append(lab)
                epi.append(e)
                state = nxt
        variables, dim, env_id = PUSH2D_OBJECTS, PUSH2D_DIM, "push2d"
    elif env == "breakout":
        for e in range(episodes):
            state = breakout_reset(rng)
            for _ in range(BREAKOUT_EPISODE_CAP):
                action = int(rng.integers(-1, 2))
                nxt, lab = breakout_step(state, action)
                grid = nxt.reshape(len(BREAKOUT_OBJECTS), BREAKOUT_DIM)
                recorded = state.copy().reshape(len(BREAKOUT_OBJECTS), BREAKOUT_DIM)
                recorded[0] = (float(action), 0, 0, 0, 0)
                states.append(recorded.reshape(-1))
                outcomes.append(grid[2].copy())
                labels.append(lab)
                epi.append(e)
                state = nxt
                if ball_lost(state) or blocks_cleared(state):
                    break
        variables, dim, env_id = BREAKOUT_OBJECTS, BREAKOUT_DIM, "breakout"
    else:
        raise EnvError(f"unknown environment {env!r}")

    epi = np.asarray(epi)
    cutoff = int(0.9 * episodes)
    splits = (epi >= cutoff).astype(np.uint8) if episodes > 1 else np.zeros(len(epi), np.uint8)
    return TransitionDataset(
        variables=variables,
        dim=dim,
        outcome_dim=dim,
        env=env_id,
        seed=seed,
        states=np.asarray(states),
        outcomes=np.asarray(outcomes),
        labels=np.asarray(labels),
        splits=splits,
    )


def upsample(
    dataset: TransitionDataset,
    passive_model: Callable[[np.ndarray], np.ndarray],
    target_fraction: float | None = 0.5,
    seed: int = 0,
) -> TransitionDataset:
    """Resample records weighted by passive-model error, never reading labels.

    The passive model predicts the outcome object's next state from its own
    previous state alone, so its error is large exactly where something else
    intervened.  With ``target_fraction=None`` sampling is purely
    error-proportional; otherwise records are split at a two-means threshold
    of the error distribution and the output mixes the high-error side
    (error-weighted) with the low-error side (uniform) at the requested
    fraction.  Degenerate all-equal errors pass the dataset through.
    """
    outcome_var = {"push2d": 2, "breakout": 2}.get(dataset.env, dataset.n_vars - 1)
    prev = dataset.states_by_variable()[:, outcome_var, :]
    pred = np.asarray(passive_model(prev))
    errors = np.abs(pred - dataset.outcomes).sum(axis=1)
    if np.allclose(errors, errors[0]):
        import warnings

        warnings.warn("passive-model errors are degenerate; passing dataset through")
        return dataset
    rng = np.random.default_rng(seed)
    n = len(dataset)
    if target_fraction is None:
        weights = errors / errors.sum()
        idx = rng.choice(n, size=n, replace=True, p=weights)
        return dataset.subset(np.sort(idx))
    threshold = _two_means_split(errors)
    high = np.nonzero(errors > threshold)[0]
    low = np.nonzero(errors <= threshold)[0]
    if len(high) == 0 or len(low) == 0:
        weights = errors / errors.sum()
        idx = rng.choice(n, size=n, replace=True, p=weights)
        return dataset.subset(np.sort(idx))
    n_high = int(round(target_fraction * n))
    w_high = errors[high] / errors[high].sum()
    pick_high = rng.choice(high, size=n_high, replace=True, p=w_high)
    pick_low = rng.choice(low, size=n - n_high, replace=True)
    return dataset.subset(np.sort(np.concatenate([pick_high, pick_low])))


def _two_means_split(errors: np.ndarray) -> float:
    """Iterated midpoint between the low and high error cluster means."""
    threshold = float(errors.mean())
    for _ in range(50):
        low = errors[errors <= threshold]
        high = errors[errors > threshold]
        if len(low) == 0 or len(high) == 0:
            break
        new = 0.5 * (low.mean() + high.mean())
        if abs(new - threshold) < 1e-12:
            break
        threshold = new
    return threshold


# ---------------------------------------------------------------------------
# Label-soundness oracle
# ---------------------------------------------------------------------------


def _displace_push2d(state: np.ndarray, var: int, rng: np.random.Generator) -> np.ndarray | None:
    grid = state.reshape(len(PUSH2D_OBJECTS), PUSH2D_DIM).copy()
    if var == 0:
        grid[0, :2] = rng.uniform(-1, 1, 2)
        return grid.reshape(-1)
    if var == 3:
        grid[3, :2] = rng.uniform(0.5, PUSH2D_ARENA - 0.5, 2)
        return grid.reshape(-1)
    solids = [i for i in (1, 2, 4, 5, 6) if i != var]
    for _ in range(50):
        pos = rng.uniform(0.5, PUSH2D_ARENA - 0.5, 2)
        if all(np.abs(pos - grid[j, :2]).max() >= 1.0 for j in solids):
            grid[var, :2] = pos
            return grid.reshape(-1)
    return None


def _displace_breakout(state: np.ndarray, var: int, rng: np.random.Generator) -> np.ndarray | None:
    grid = state.reshape(len(BREAKOUT_OBJECTS), BREAKOUT_DIM).copy()
    if var == 0:
        grid[0, 0] = float(rng.integers(-1, 2))
        return grid.reshape(-1)
    if var == 1:
        grid[1, 0] = rng.uniform(PADDLE_HALF[0], BREAKOUT_W - PADDLE_HALF[0])
        return grid.reshape(-1)
    if var == 2:
        grid[2, 0] = rng.uniform(1.0, BREAKOUT_W - 1.0)
        grid[2, 1] = rng.uniform(2.0, BREAKOUT_H - 2.0)
        grid[2, 2] = rng.choice((-1.0, 1.0))
        grid[2, 3] = rng.choice((-2.0, -1.0, 1.0, 2.0))
        return grid.reshape(-1)
    others = [j for j in (3, 4, 5) if j != var]
    for _ in range(50):
        x, y = float(rng.integers(3, 28)), float(rng.integers(31, 45))
        if all(abs(x - grid[j, 0]) >= 5.0 or abs(y - grid[j, 1]) >= 2.0 for j in others):
            grid[var, :2] = (x, y)
            return grid.reshape(-1)
    return None


def label_soundness_probe(
    env: str, n_transitions: int, seed: int, attempts: int = 20
) -> tuple[int, int]:
    """Contextual-invariance check of the contact-derived labels.

    Every variable is displaced within legality and the step replayed.  For a
    labeled-0 variable, replays that reproduce the original interaction
    regime (label vector plus contact signature) must leave the outcome
    object's next state unchanged; for a labeled-1 variable, some replay
    must change it.  Changes are judged against a 1e-9 tolerance: contact
    chains resolved in a different order produce ulp-level arithmetic noise
    even when the push amounts are mathematically identical.  Returns
    (checked, violations).
    """
    if env == "push2d":
        n_objects, dim, outcome_var = len(PUSH2D_OBJECTS), PUSH2D_DIM, 2
        displace = _displace_push2d
        reset = push2d_reset

        def do_step(state):
            grid = state.reshape(n_objects, dim)
            return push2d_step_traced(state, grid[0, :2].copy())

    elif env == "breakout":
        n_objects, dim, outcome_var = len(BREAKOUT_OBJECTS), BREAKOUT_DIM, 2
        displace = _displace_breakout
        reset = breakout_reset

        def do_step(state):
            grid = state.reshape(n_objects, dim)
            nxt, labels = breakout_step(state, int(grid[0, 0]))
            return nxt, labels, frozenset()

    else:
        raise EnvError(f"unknown environment {env!r}")

    rng = np.random.default_rng(seed)
    checked = violations = 0
    state = None
    steps_left = 0
    done = 0
    while done < n_transitions:
        if state is None or steps_left == 0:
            state = reset(rng)
            steps_left = 20
        grid = state.reshape(n_objects, dim)
        if env == "push2d":
            grid[0, :2] = rng.uniform(-1, 1, 2)
        else:
            grid[0, 0] = float(rng.integers(-1, 2))
        state = grid.reshape(-1)
        nxt, labels, signature = do_step(state)
        base_outcome = nxt.reshape(n_objects, dim)[outcome_var].copy()
        for var in range(n_objects):
            if var == outcome_var:
                continue  # the outcome object's own bit is definitionally 1
            checked += 1
            matched = changed = 0
            for _ in range(attempts):
                alt = displace(state, var, rng)
                if alt is None:
                    continue
                alt_nxt, alt_labels, alt_sig = do_step(alt)
                alt_outcome = alt_nxt.reshape(n_objects, dim)[outcome_var]
                moved = np.abs(alt_outcome - base_outcome).max() > 1e-9
                if labels[var] == 0:
                    # invariance is claimed within the same interaction
                    # regime: same label vector and same contact signature
                    if np.array_equal(alt_labels, labels) and alt_sig == signature:
                        matched += 1
                        if moved:
                            violations += 1
                            break
                        if matched >= 5:
                            break
                else:
                    if moved:
                        changed = 1
                        break
            if labels[var] == 1 and not changed:
                violations += 1
        state = nxt
        steps_left -= 1
        done += 1
        if env == "breakout" and (ball_lost(state) or blocks_cleared(state)):
            state = None
    return checked, violations


# ---------------------------------------------------------------------------
# ASCII rendering (debug aid)
# ---------------------------------------------------------------------------


def render_ascii(env: str, state: np.ndarray) -> str:
    """Character-grid snapshot of a state, y increasing upward."""
    if env == "push2d":
        grid = state.reshape(len(PUSH2D_OBJECTS), PUSH2D_DIM)
        cells = [["." for _ in range(20)] for _ in range(20)]
        marks = [(1, "P"), (2, "B"), (3, "T"), (4, "o"), (5, "o"), (6, "o")]
        scale = 4.0
    elif env == "breakout":
        grid = state.reshape(len(BREAKOUT_OBJECTS), BREAKOUT_DIM)
        cells = [["." for _ in range(30)] for _ in range(25)]
        marks = [(1, "=")] + [(2, "o")] + [(3 + i, "#") for i in range(3) if grid[3 + i, 4] > 0.5]
        scale = 1.0
    else:
        raise EnvError(f"unknown environment {env!r}")
    rows, cols = len(cells), len(cells[0])
    for idx, ch in marks:
        x = int(grid[idx, 0] * scale) if env == "push2d" else int(grid[idx, 0])
        y = int(grid[idx, 1] * scale) if env == "push2d" else int(grid[idx, 1] / 2)
        if 0 <= y < rows and 0 <= x < cols:
            cells[rows - 1 - y][x] = ch
    return "\n".join("".join(row) for row in cells)
