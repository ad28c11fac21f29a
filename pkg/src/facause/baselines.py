"""Saliency and counterfactual baselines plus the evaluation harness.

Both baselines read a plain forward model (the masked network trained with an
all-ones mask).  The gradient method thresholds the L1 norm of the input
Jacobian per variable; the counterfactual method redraws each variable
uniformly within its range and thresholds the mean L1 deviation of the
model's output from its unperturbed output.  Thresholds may be fitted with
the oracle midpoint protocol: the midpoint between the mean score of true
causes and the mean score of true non-causes.
"""

from __future__ import annotations

import warnings
from dataclasses import dataclass

import numpy as np

from .datasets import TransitionDataset
from .jaci import JaciConfig, TrainedJaci, conditional_edges
from .nn import (
    Adam,
    ForwardModelParams,
    forward_masked,
    forward_masked_backward,
    l1_loss,
)


class EvalError(Exception):
    pass


def train_plain_model(
    dataset: TransitionDataset,
    iterations: int,
    lr: float = 0.002,
    batch: int = 512,
    hidden: int = 256,
    embed: int = 512,
    seed: int = 0,
) -> ForwardModelParams:
    """Forward model fitted with every mask bit fixed to one."""
    train_idx = dataset.train_indices()
    states_all = dataset.states_by_variable().astype(np.float32)
    outcomes_all = dataset.outcomes
    params = ForwardModelParams.init(
        dataset.n_vars, dataset.dim, dataset.outcome_dim,
        hidden=hidden, embed=embed, seed=seed,
    )
    opt = Adam(lr=lr)
    rng = np.random.default_rng(seed + 1)
    ones = np.ones((batch, dataset.n_vars), dtype=np.float32)
    for _ in range(iterations):
        idx = train_idx[rng.integers(0, len(train_idx), batch)]
        out, cache = forward_masked(params, states_all[idx], ones)
        _, dpred = l1_loss(out, outcomes_all[idx])
        grads = forward_masked_backward(params, cache, dpred / batch)
        opt.step(list(params.arrays()), list(grads.arrays()))
    return params


def gradient_scores(params: ForwardModelParams, states: np.ndarray) -> np.ndarray:
    """Entrywise-L1 input-Jacobian magnitude per variable, per record.

    One backward pass per output dimension; the score of variable i is the
    summed absolute sensitivity of every output component to every component
    of that variable.
    """
    n, k, _ = states.shape
    ones = np.ones((n, k), dtype=np.float32)
    out, cache = forward_masked(params, states, ones)
    scores = np.zeros((n, k))
    for j in range(out.shape[1]):
        dout = np.zeros_like(out)
        dout[:, j] = 1.0
        grads = forward_masked_backward(params, cache, dout, need_input_grads=True)
        scores += np.abs(grads.d_states).sum(axis=2)
    return scores


def gradient_infer(params: ForwardModelParams, states: np.ndarray, tau: float) -> np.ndarray:
    return (gradient_scores(params, states) > tau).astype(np.uint8)


def counterfactual_scores(
    params: ForwardModelParams,
    states: np.ndarray,
    ranges: tuple[float, float],
    n_samples: int,
    rng: np.random.Generator,
) -> np.ndarray:
    """Mean L1 deviation of the model output under per-variable redraws.

    The deviation is measured against the model's own unperturbed output, so
    the score expresses the modeled sensitivity rather than data error.
    """
    n, k, d = states.shape
    ones = np.ones((n, k), dtype=np.float32)
    base, _ = forward_masked(params, states, ones)
    scores = np.zeros((n, k))
    lo, hi = ranges
    for i in range(k):
        total = np.zeros(n)
        for _ in range(n_samples):
            alt = states.copy()
            alt[:, i, :] = rng.uniform(lo, hi, (n, d)).astype(states.dtype)
            out, _ = forward_masked(params, alt, ones)
            total += np.abs(out - base).sum(axis=1)
        scores[:, i] = total / n_samples
    return scores


def counterfactual_infer(
    params: ForwardModelParams,
    states: np.ndarray,
    ranges: tuple[float, float],
    n_samples: int,
    tau_cf: float,
    rng: np.random.Generator,
) -> np.ndarray:
    return (counterfactual_scores(params, states, ranges, n_samples, rng) > tau_cf).astype(
        np.uint8
    )


def oracle_threshold(cause_scores: np.ndarray, non_cause_scores: np.ndarray) -> float:
    """Midpoint between the mean score of true causes and true non-causes."""
    cause_scores = np.asarray(cause_scores, dtype=np.float64)
    non_cause_scores = np.asarray(non_cause_scores, dtype=np.float64)
    if cause_scores.size == 0 or non_cause_scores.size == 0:
        raise EvalError("both score classes must be non-empty for the oracle threshold")
    hi, lo = cause_scores.mean(), non_cause_scores.mean()
    if hi == lo:
        warnings.warn("degenerate oracle threshold: class means coincide")
    return float((hi + lo) / 2.0)


@dataclass
class EvalReport:
    method: str
    error_pct: float
    fp_rate: float
    fn_rate: float
    threshold_used: float | None
    n_records: int
    per_edge: dict[int, float]

    def as_row(self) -> dict:
        return {
            "method": self.method,
            "error_pct": self.error_pct,
            "fp_rate": self.fp_rate,
            "fn_rate": self.fn_rate,
            "threshold_used": "" if self.threshold_used is None else self.threshold_used,
            "n_records": self.n_records,
        }


def evaluate(
    inferred: np.ndarray,
    truth: np.ndarray,
    edges: tuple[int, ...],
    method: str = "",
    threshold_used: float | None = None,
) -> EvalReport:
    """Error over the conditional-edge bits only, split into fp and fn."""
    inferred = np.asarray(inferred)
    truth = np.asarray(truth)
    if inferred.shape != truth.shape:
        raise EvalError(f"length mismatch: {inferred.shape} vs {truth.shape}")
    cols = list(edges)
    pred = inferred[:, cols].astype(np.int8)
    act = truth[:, cols].astype(np.int8)
    total = pred.size
    fp = int(((pred == 1) & (act == 0)).sum())
    fn = int(((pred == 0) & (act == 1)).sum())
    per_edge = {
        e: float((pred[:, i] != act[:, i]).mean()) for i, e in enumerate(cols)
    }
    return EvalReport(
        method=method,
        error_pct=100.0 * (fp + fn) / total,
        fp_rate=fp / total,
        fn_rate=fn / total,
        threshold_used=threshold_used,
        n_records=len(inferred),
        per_edge=per_edge,
    )


def evaluate_jaci(trained: TrainedJaci, dataset: TransitionDataset) -> EvalReport:
    from .jaci import infer_causes

    test = dataset.subset(dataset.test_indices())
    pred = infer_causes(trained, test.states_by_variable().astype(np.float32))
    return evaluate(
        pred, test.labels, conditional_edges(dataset), method="jaci",
        threshold_used=trained.config.ac_threshold,
    )


def evaluate_gradient(
    params: ForwardModelParams, dataset: TransitionDataset
) -> EvalReport:
    """Gradient baseline at the oracle threshold over the test split."""
    test = dataset.subset(dataset.test_indices())
    states = test.states_by_variable().astype(np.float32)
    scores = gradient_scores(params, states)
    edges = conditional_edges(dataset)
    tau = _oracle_tau(scores, test.labels, edges)
    return evaluate(
        (scores > tau).astype(np.uint8), test.labels, edges, method="grad",
        threshold_used=tau,
    )


def evaluate_counterfactual(
    params: ForwardModelParams,
    dataset: TransitionDataset,
    n_samples: int = 30,
    seed: int = 0,
    ranges: tuple[float, float] = (-1.0, 1.0),
) -> EvalReport:
    """Counterfactual baseline at the oracle threshold over the test split."""
    test = dataset.subset(dataset.test_indices())
    states = test.states_by_variable().astype(np.float32)
    rng = np.random.default_rng(seed)
    scores = counterfactual_scores(params, states, ranges, n_samples, rng)
    edges = conditional_edges(dataset)
    tau = _oracle_tau(scores, test.labels, edges)
    return evaluate(
        (scores > tau).astype(np.uint8), test.labels, edges, method="cf",
        threshold_used=tau,
    )


def _oracle_tau(scores: np.ndarray, labels: np.ndarray, edges: tuple[int, ...]) -> float:
    cols = list(edges)
    s = scores[:, cols]
    lab = labels[:, cols]
    return oracle_threshold(s[lab == 1], s[lab == 0])
