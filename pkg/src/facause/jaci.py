"""Joint training of the masked forward model and the state-binary mapping.

Each iteration draws a batch, computes soft mask probabilities, samples the
Bernoulli mixing mask, and takes one optimizer step on the forward model
(prediction error only) followed by one on the binary network (mask length
plus an adaptively weighted prediction error).  The adaptive weight shrinks
exponentially with the record's current model error, so masking pressure is
applied only where the forward model is already accurate.  The binary
network's error gradient through the mask is taken against the pre-update
forward model, which both matches the pre-update adaptive weight and lets
one backward pass serve the two steps.

Training is reproducible: all randomness (batch order and mixing draws)
derives from the configured seed, and the log is part of the output.
"""

from __future__ import annotations

import warnings
from dataclasses import dataclass, field
from typing import Sequence

import numpy as np

from .datasets import TransitionDataset
from .nn import (
    Adam,
    BinaryModelParams,
    ForwardModelParams,
    binary_backward,
    binary_forward,
    forward_masked,
    forward_masked_backward,
    l1_loss,
    mix,
)

LOG_COLUMNS = ("iteration", "model_loss", "mean_binary_len", "test_error", "beta_mean")


class JaciError(Exception):
    pass


class JaciDivergenceError(JaciError):
    """Training hit a non-finite loss; carries the last finite snapshot."""

    def __init__(self, message: str, trained: "TrainedJaci | None" = None):
        super().__init__(message)
        self.trained = trained


@dataclass(frozen=True)
class JaciConfig:
    beta_hat: float = 3.0
    model_lr: float = 0.002
    binary_lr: float | None = None  # defaults to a tenth of the model rate
    batch: int = 512
    iterations: int = 200_000
    ac_threshold: float = 0.99
    seed: int = 0
    hidden: int = 256
    embed: int = 512
    # Initial logit offset of the binary network.  Starting near all-ones
    # matters: a bit whose probability reaches zero can never fire again
    # under Bernoulli mixing (an absorbing state), while starting open lets
    # the forward model mature before sparsity pressure prunes the mask.
    binary_bias_init: float = 3.0
    # Iterations during which only the forward model trains.  Until the
    # model is accurate, its error gradient cannot defend genuinely causal
    # bits against the mask-length pressure, and a bit that collapses is
    # unrecoverable; the adaptive rate expresses the same ordering but is
    # too soft to enforce it from a random initialization.
    warmup_iterations: int = 2000
    log_every: int = 1000
    plateau_windows: int = 3
    plateau_window_iters: int = 10_000
    plateau_tolerance: float = 0.001
    test_eval_cap: int = 2048

    def __post_init__(self) -> None:
        if not 0 < self.ac_threshold < 1:
            raise JaciError("ac_threshold must lie in (0, 1)")
        for name in ("beta_hat", "model_lr", "batch", "iterations"):
            if getattr(self, name) <= 0:
                raise JaciError(f"{name} must be positive")

    @property
    def effective_binary_lr(self) -> float:
        return self.binary_lr if self.binary_lr is not None else self.model_lr / 10.0


@dataclass
class TrainedJaci:
    theta: BinaryModelParams
    phi: ForwardModelParams
    config: JaciConfig
    training_log: list[dict] = field(default_factory=list)
    stopped_at: int = 0
    stop_reason: str = ""


def adaptive_beta(beta_hat: float, model_error: np.ndarray | float) -> np.ndarray | float:
    """Per-record masking pressure: beta_hat * exp(-model_error)."""
    if np.any(np.asarray(model_error) < 0):
        raise JaciError("model_error must be nonnegative")
    return beta_hat * np.exp(-np.asarray(model_error))


def conditional_edges(dataset: TransitionDataset) -> tuple[int, ...]:
    """State-variable columns scored during evaluation.

    Edges into the outcome that are only sometimes active: for the vector
    domains every active variable (all but the outcome's own previous value),
    for the simulators every contact-capable object, and every column for
    synthetic tasks.
    """
    if dataset.env.startswith("rv:"):
        return tuple(range(dataset.n_vars - 1))
    if dataset.env == "push2d":
        return (0, 1, 4, 5, 6)  # action, pusher, obstacles
    if dataset.env == "breakout":
        return (1, 3, 4, 5)  # paddle and blocks; the action never reaches the ball
    return tuple(range(dataset.n_vars))


def infer_causes(trained: TrainedJaci, states: np.ndarray) -> np.ndarray:
    """Thresholded mask bits for a batch of (n, n_vars, dim) states."""
    b_hat, _ = binary_forward(trained.theta, states)
    return (b_hat >= trained.config.ac_threshold).astype(np.uint8)


def bit_error(
    predicted: np.ndarray, truth: np.ndarray, edges: Sequence[int]
) -> float:
    """Fraction of wrong bits over the scored edge columns."""
    cols = list(edges)
    return float((predicted[:, cols] != truth[:, cols]).mean())


def train(dataset: TransitionDataset, config: JaciConfig) -> TrainedJaci:
    """Alternating optimization until the budget or a test-error plateau.

    Logs every ``log_every`` iterations: batch model loss, mean soft-mask
    length, thresholded test error over the conditional edges, and the mean
    adaptive weight.  A mean mask length pinned below 5% or above 95% of the
    variable count for 10k consecutive iterations triggers a local-minimum
    warning.  Non-finite losses abort with the last finite snapshot attached.
    """
    train_idx = dataset.train_indices()
    test_idx = dataset.test_indices()
    if len(train_idx) == 0 or len(test_idx) == 0:
        raise JaciError("dataset needs non-empty train and test splits")

    n_vars, d = dataset.n_vars, dataset.dim
    states_all = dataset.states_by_variable().astype(np.float32)
    outcomes_all = dataset.outcomes.astype(np.float32)
    labels_all = dataset.labels
    edges = conditional_edges(dataset)
    eval_idx = test_idx[: config.test_eval_cap]
    eval_states = states_all[eval_idx]
    eval_labels = labels_all[eval_idx]

    theta = BinaryModelParams.init(
        n_vars, d, hidden=config.hidden, embed=config.embed, seed=config.seed
    )
    theta.conv2.biases[-1][:] += config.binary_bias_init
    phi = ForwardModelParams.init(
        n_vars,
        d,
        dataset.outcome_dim,
        hidden=config.hidden,
        embed=config.embed,
        seed=config.seed + 1,
    )
    opt_phi = Adam(lr=config.model_lr)
    opt_theta = Adam(lr=config.effective_binary_lr)
    rng = np.random.default_rng(config.seed + 2)

    trained = TrainedJaci(theta, phi, config)
    last_finite: dict | None = None
    pinned_since: int | None = None
    warned_minimum = False
    window_errors: list[float] = []
    window_means: list[float] = []

    for it in range(1, config.iterations + 1):
        batch = rng.integers(0, len(train_idx), config.batch)
        idx = train_idx[batch]
        states = states_all[idx]
        targets = outcomes_all[idx]

        b_hat, h_cache = binary_forward(theta, states)
        hard = (rng.random(b_hat.shape) < b_hat).astype(b_hat.dtype)
        b = hard * b_hat
        out, f_cache = forward_masked(phi, states, b)
        err, dpred = l1_loss(out, targets)
        loss = float(err.mean())
        if not np.isfinite(loss):
            raise JaciDivergenceError(
                f"non-finite model loss at iteration {it}", _snapshot(trained, last_finite)
            )
        beta = adaptive_beta(config.beta_hat, err.astype(np.float64))

        f_grads = forward_masked_backward(phi, f_cache, dpred / len(err))
        opt_phi.step(list(phi.arrays()), list(f_grads.arrays()))

        if it > config.warmup_iterations:
            # binary objective: mask length plus the beta-weighted model
            # error, with the per-record adaptive rate computed from the
            # pre-update error.  The error term reaches b_hat through the
            # sampled hard bits.
            d_b_hat = (
                1.0 / len(err)
                + beta[:, None].astype(np.float32) * f_grads.d_b * hard
            ).astype(np.float32)
            t_grads = binary_backward(theta, h_cache, d_b_hat)
            opt_theta.step(list(theta.arrays()), list(t_grads.arrays()))

        mean_len = float(b_hat.sum(axis=1).mean())
        if mean_len < 0.05 * n_vars or mean_len > 0.95 * n_vars:
            if pinned_since is None:
                pinned_since = it
            if not warned_minimum and it - pinned_since + 1 >= 10_000:
                warnings.warn(
                    f"mask length pinned at {mean_len:.2f} of {n_vars} for 10k "
                    "iterations; training may be stuck in an all-zeros/all-ones minimum"
                )
                warned_minimum = True
        else:
            pinned_since = None

        if it % config.log_every == 0 or it == config.iterations:
            predicted = (
                binary_forward(theta, eval_states)[0] >= config.ac_threshold
            ).astype(np.uint8)
            test_error = bit_error(predicted, eval_labels, edges)
            row = {
                "iteration": it,
                "model_loss": loss,
                "mean_binary_len": mean_len,
                "test_error": test_error,
                "beta_mean": float(np.mean(beta)),
            }
            trained.training_log.append(row)
            last_finite = row
            window_errors.append(test_error)
            per_window = max(1, config.plateau_window_iters // config.log_every)
            if len(window_errors) % per_window == 0:
                window_means.append(float(np.mean(window_errors[-per_window:])))
                if _plateaued(window_means, config):
                    trained.stopped_at = it
                    trained.stop_reason = "test-error plateau"
                    return trained

    trained.stopped_at = config.iterations
    trained.stop_reason = "iteration budget"
    return trained


def _plateaued(window_means: list[float], config: JaciConfig) -> bool:
    if len(window_means) < config.plateau_windows + 1:
        return False
    tail = window_means[-(config.plateau_windows + 1) :]
    return all(
        tail[i] - tail[i + 1] < config.plateau_tolerance for i in range(len(tail) - 1)
    )


def _snapshot(trained: TrainedJaci, last_finite: dict | None) -> TrainedJaci:
    if last_finite is not None and (
        not trained.training_log or trained.training_log[-1] is not last_finite
    ):
        trained.training_log.append(last_finite)
    trained.stop_reason = "divergence"
    return trained


def make_copy_task(
    n_records: int, n_vars: int = 3, dim: int = 2, seed: int = 0
) -> TransitionDataset:
    """Synthetic task whose outcome copies variable 0 exactly.

    The unique minimal cause of every record is variable 0, so the target
    mask is (1, 0, ..., 0) everywhere; labels and splits follow the usual
    layout with a 90/10 split.
    """
    rng = np.random.default_rng(seed)
    states = rng.uniform(-1, 1, (n_records, n_vars * dim)).astype(np.float32)
    outcomes = states[:, :dim].copy()
    labels = np.zeros((n_records, n_vars), dtype=np.uint8)
    labels[:, 0] = 1
    splits = (np.arange(n_records) >= int(0.9 * n_records)).astype(np.uint8)
    return TransitionDataset(
        variables=tuple(f"v{i}" for i in range(n_vars)),
        dim=dim,
        outcome_dim=dim,
        env="synthetic-copy",
        seed=seed,
        states=states,
        outcomes=outcomes,
        labels=labels,
        splits=splits,
    )
