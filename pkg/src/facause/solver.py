"""Exhaustive search for all minimum-cost binary-subset pairs.

The search picks one binary vector per enumerated state from that state's
per-state candidate set, which is equivalent to enumerating partitionings
with unique binaries per part: the preimages of the chosen vectors are the
partitions.  Depth-first branch-and-bound prunes on accumulated cost plus the
cheapest possible completion, and invariance is maintained incrementally with
a memo from (binary, projected cause-variable values) to the outcome.

Candidate filtering applies three per-state conditions: the event named by
the binary must be alpha1-necessary under some witness, it must be
alpha0-sufficient with an empty witness, and the all-zeros vector is only
admitted when alpha1 is exactly zero.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Sequence

from .predicates import (
    AlphaRatios,
    BinarySubsetPair,
    Bits,
    InvarianceViolation,
    NecessityViolation,
    bits_str,
    check_invariance,
    check_necessity_property,
    event_for,
    find_necessity_witness,
    pair_cost,
    pair_to_doc,
    sufficiency_fraction,
)
from .scm import Context, Scm, ScmError, State, StateSpaceCapError


class SolverBudgetError(ScmError):
    """Search would exceed the configured budget; names the bottleneck."""


@dataclass(frozen=True)
class SolverBudget:
    max_states: int = 4096
    max_state_binary_product: int = 1 << 22
    max_nodes: int = 5_000_000


@dataclass
class SolutionSet:
    min_cost: int | None
    pairs: list[BinarySubsetPair]
    cost_histogram: dict[int, int] | None = None


@dataclass
class PropertyReport:
    """verify_pair output: pass/fail per property with counterexamples."""

    invariance_ok: bool
    invariance_violation: InvarianceViolation | None
    necessity_ok: bool
    necessity_violation: NecessityViolation | None
    cost: int
    min_cost: int | None = None

    @property
    def minimal(self) -> bool | None:
        if self.min_cost is None:
            return None
        return self.cost == self.min_cost

    @property
    def all_ok(self) -> bool:
        return self.invariance_ok and self.necessity_ok and self.minimal is not False


def valid_binaries(
    scm: Scm, state: Sequence[int], alphas: AlphaRatios, ctx: Context = None
) -> set[Bits]:
    """Binaries whose event at this state is alpha1-necessary under a witness."""
    state = scm.check_state(state)
    n = len(scm.variables)
    out: set[Bits] = set()
    for bits in itertools.product((0, 1), repeat=n):
        if find_necessity_witness(scm, state, bits, alphas, ctx) is not None:
            out.add(bits)
    return out


def _candidate_binaries(
    scm: Scm, state: State, alphas: AlphaRatios, ctx: Context = None
) -> list[Bits]:
    """Necessity-valid binaries that are also alpha0-sufficient, cheap first."""
    y = scm.evaluate(state, ctx)
    out = []
    for bits in valid_binaries(scm, state, alphas, ctx):
        if any(bits):
            event = event_for(scm, state, bits)
            if sufficiency_fraction(scm, state, event, (), y, ctx) > alphas.alpha0:
                continue
        out.append(bits)
    out.sort(key=lambda b: (sum(b), b))
    return out


def solve(
    scm: Scm,
    alphas: AlphaRatios,
    emit_histogram: bool = False,
    budget: SolverBudget = SolverBudget(),
    prune: bool = True,
    ctx: Context = None,
) -> SolutionSet:
    """All minimum-cost assignments passing invariance, necessity, uniqueness.

    With ``emit_histogram`` the full valid-assignment space is enumerated
    (pruning disabled for the count) and a cost -> count map is attached.
    With ``prune=False`` the search result must be identical; this backs the
    bound-correctness test.
    """
    try:
        states = list(scm.enumerate_states(cap=budget.max_states))
    except StateSpaceCapError as exc:
        raise SolverBudgetError(f"budget exceeded on states: {exc}") from exc
    n = len(scm.variables)
    if len(states) * (1 << n) > budget.max_state_binary_product:
        raise SolverBudgetError(
            f"budget exceeded on binaries: {len(states)} states x 2^{n} candidates"
        )

    candidates = [_candidate_binaries(scm, s, alphas, ctx) for s in states]
    outcomes = [scm.evaluate(s, ctx) for s in states]
    if any(not c for c in candidates):
        return SolutionSet(None, [], {} if emit_histogram else None)

    # Cheapest completion cost from state i onward, for the lower bound.
    suffix_min = [0] * (len(states) + 1)
    for i in range(len(states) - 1, -1, -1):
        suffix_min[i] = suffix_min[i + 1] + min(sum(b) for b in candidates[i])

    best = {"cost": None}
    solutions: list[tuple[Bits, ...]] = []
    histogram: dict[int, int] = {}
    nodes = {"count": 0}
    chosen: list[Bits] = []
    # invariance memo: (bits, projected values) -> outcome
    memo: dict[tuple[Bits, tuple[int, ...]], int] = {}

    def dfs(i: int, cost: int) -> None:
        nodes["count"] += 1
        if nodes["count"] > budget.max_nodes:
            raise SolverBudgetError(f"budget exceeded on frontier: {budget.max_nodes} nodes")
        if i == len(states):
            if emit_histogram:
                histogram[cost] = histogram.get(cost, 0) + 1
            if best["cost"] is None or cost < best["cost"]:
                best["cost"] = cost
                solutions.clear()
                solutions.append(tuple(chosen))
            elif cost == best["cost"]:
                solutions.append(tuple(chosen))
            return
        state = states[i]
        for bits in candidates[i]:
            new_cost = cost + sum(bits)
            if (
                prune
                and not emit_histogram
                and best["cost"] is not None
                and new_cost + suffix_min[i + 1] > best["cost"]
            ):
                continue
            key = (bits, tuple(state[j] for j, b in enumerate(bits) if b))
            prior = memo.get(key)
            if prior is not None and prior != outcomes[i]:
                continue
            added = prior is None
            if added:
                memo[key] = outcomes[i]
            chosen.append(bits)
            dfs(i + 1, new_cost)
            chosen.pop()
            if added:
                del memo[key]

    dfs(0, 0)
    pairs = [
        BinarySubsetPair(tuple(states), sol, certified_min_cost=True) for sol in solutions
    ]
    pairs.sort(key=lambda p: _sort_key(scm, p, ctx))
    return SolutionSet(best["cost"], pairs, histogram if emit_histogram else None)


def _sort_key(scm: Scm, pair: BinarySubsetPair, ctx: Context = None) -> str:
    import json

    return json.dumps(pair_to_doc(scm, pair, ctx), sort_keys=True)


def verify_pair(
    scm: Scm,
    pair: BinarySubsetPair,
    alphas: AlphaRatios,
    min_cost: int | None = None,
    ctx: Context = None,
) -> PropertyReport:
    """Re-check invariance and necessity; compare cost when a minimum is known."""
    if not pair.covers(scm):
        raise ScmError("pair does not cover the enumerated state space")
    inv_ok, inv_v = check_invariance(scm, pair, ctx)
    nec_ok, nec_v = check_necessity_property(scm, pair, alphas, ctx)
    return PropertyReport(inv_ok, inv_v, nec_ok, nec_v, pair_cost(pair), min_cost)
