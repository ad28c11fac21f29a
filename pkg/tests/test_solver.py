import itertools

import pytest

from facause import corpus
from facause._tables import GROUND_TRUTH, MOVER_ALT_NO_INVARIANCE
from facause.predicates import (
    AlphaRatios,
    BinarySubsetPair,
    canonical_doc,
    check_invariance,
    doc_to_assignment,
    event_for,
    pair_to_doc,
    sufficiency_fraction,
)
from facause.scm import Scm, Variable
from facause.solver import (
    SolverBudget,
    SolverBudgetError,
    solve,
    valid_binaries,
    verify_pair,
)


def naive_min_cost_solutions(scm, alphas):
    """Brute-force oracle: every assignment from the per-state candidate sets,
    filtered by the sufficiency ratio and whole-pair invariance, min cost."""
    states = list(scm.enumerate_states())
    outcomes = [scm.evaluate(s) for s in states]
    per_state = []
    for s, y in zip(states, outcomes):
        cands = []
        for bits in valid_binaries(scm, s, alphas):
            if any(bits):
                event = event_for(scm, s, bits)
                if sufficiency_fraction(scm, s, event, (), y) > alphas.alpha0:
                    continue
            cands.append(bits)
        per_state.append(cands)
    if any(not c for c in per_state):
        return None, []
    best = None
    solutions = []
    for combo in itertools.product(*per_state):
        seen = {}
        ok = True
        for state, bits, y in zip(states, combo, outcomes):
            key = (bits, tuple(v for v, b in zip(state, bits) if b))
            if seen.setdefault(key, y) != y:
                ok = False
                break
        if not ok:
            continue
        cost = sum(sum(b) for b in combo)
        if best is None or cost < best:
            best = cost
            solutions = [combo]
        elif cost == best:
            solutions.append(combo)
    return best, solutions


def solution_docs(scm, solution_set):
    return {canonical_doc(pair_to_doc(scm, p)) for p in solution_set.pairs}


# -- valid_binaries ----------------------------------------------------------


def test_valid_binaries_mover_blocked_state():
    mover = corpus.get("mover-1d").scm
    assert (1, 1) in valid_binaries(mover, (0, 1), AlphaRatios.of(0))


def test_valid_binaries_gang_leader_bit():
    gang = corpus.get("gang-execution").scm
    bins = valid_binaries(gang, (1, 1), AlphaRatios.of(0))
    assert (0, 1) in bins
    assert (1, 0) not in bins


def test_valid_binaries_constant_scm():
    constant = Scm(
        variables=(Variable("a", (0, 1)), Variable("b", (0, 1))),
        outcome=Variable("y", (0, 1)),
        mechanism=lambda s, u: 1,
    )
    # Nothing is ever necessary; the empty event only qualifies at alpha1 = 0.
    assert valid_binaries(constant, (0, 0), AlphaRatios.of(0)) == set()
    # At alpha1 = 0 the requirement is vacuous and everything qualifies,
    # including the empty event.
    at_zero = valid_binaries(constant, (0, 0), AlphaRatios.of(0, 0))
    assert (0, 0) in at_zero


# -- solve on the reference examples ----------------------------------------


def test_solve_binary_and_two_solutions():
    ex = corpus.get("binary-and")
    sol = solve(ex.scm, ex.default_alphas)
    assert sol.min_cost == 5
    assert len(sol.pairs) == 2
    assert solution_docs(ex.scm, sol) == {canonical_doc(d) for d in ex.ground_truth}


def test_solve_gang_execution_single_solution():
    ex = corpus.get("gang-execution")
    sol = solve(ex.scm, ex.default_alphas)
    assert len(sol.pairs) == 1
    assert solution_docs(ex.scm, sol) == {canonical_doc(d) for d in ex.ground_truth}


def test_solve_mover_sweep_contains_reference_table():
    ex = corpus.get("mover-1d")
    want = canonical_doc(ex.ground_truth[0])
    hits = []
    for i in range(11):
        alphas = AlphaRatios.of(f"0.{i * 5:02d}" if i else "0")
        sol = solve(ex.scm, alphas)
        if any(canonical_doc(pair_to_doc(ex.scm, p)) == want for p in sol.pairs):
            hits.append(alphas.alpha0)
    assert hits, "no swept alpha0 reproduces the reference mover table"


def test_solve_orders_pairs_canonically():
    ex = corpus.get("binary-xor")
    sol = solve(ex.scm, ex.default_alphas)
    keys = [sorted(t["binary"] for t in pair_to_doc(ex.scm, p)["tables"]) for p in sol.pairs]
    assert keys == sorted(keys)
    rerun = solve(ex.scm, ex.default_alphas)
    assert [p.bits for p in rerun.pairs] == [p.bits for p in sol.pairs]


# -- oracle equivalence ------------------------------------------------------


def random_scm(seed, n_vars=2, max_dom=3, n_outcomes=3):
    import random

    rng = random.Random(seed)
    variables = tuple(
        Variable(f"v{i}", tuple(range(rng.randint(2, max_dom)))) for i in range(n_vars)
    )
    table = {}
    for combo in itertools.product(*(v.values for v in variables)):
        table[combo] = rng.randrange(n_outcomes)
    return Scm(
        variables=variables,
        outcome=Variable("y", tuple(range(n_outcomes))),
        mechanism=lambda s, u, t=table: t[tuple(s)],
        name=f"random-{seed}",
    )


@pytest.mark.parametrize("seed", range(12))
def test_solve_matches_naive_oracle_on_random_scms(seed):
    scm = random_scm(seed)
    alphas = AlphaRatios.of("0.5")
    best, combos = naive_min_cost_solutions(scm, alphas)
    sol = solve(scm, alphas)
    assert sol.min_cost == best
    assert {p.bits for p in sol.pairs} == set(combos)


@pytest.mark.parametrize("name", ["binary-and", "binary-or", "binary-xor", "rock-throwing"])
def test_solve_matches_naive_oracle_on_small_examples(name):
    ex = corpus.get(name)
    best, combos = naive_min_cost_solutions(ex.scm, ex.default_alphas)
    sol = solve(ex.scm, ex.default_alphas)
    assert sol.min_cost == best
    assert {p.bits for p in sol.pairs} == set(combos)


# -- pruning is lossless -----------------------------------------------------


@pytest.mark.parametrize("name", ["mover-1d", "forest-fire", "halt-and-charge", "switching-tracks"])
def test_pruned_and_unpruned_searches_agree(name):
    ex = corpus.get(name)
    pruned = solve(ex.scm, ex.default_alphas, prune=True)
    unpruned = solve(ex.scm, ex.default_alphas, prune=False)
    assert pruned.min_cost == unpruned.min_cost
    assert [p.bits for p in pruned.pairs] == [p.bits for p in unpruned.pairs]


def test_histogram_counts_all_valid_assignments():
    ex = corpus.get("binary-xor")
    sol = solve(ex.scm, ex.default_alphas, emit_histogram=True)
    # Oracle: count invariance-passing assignments per cost by brute force.
    _, min_combos = naive_min_cost_solutions(ex.scm, ex.default_alphas)
    assert sol.cost_histogram[sol.min_cost] == len(min_combos)
    assert sum(sol.cost_histogram.values()) >= len(min_combos)


# -- verify_pair -------------------------------------------------------------


def test_verify_pair_reference_table_passes():
    ex = corpus.get("mover-1d")
    pair = BinarySubsetPair.from_assignment(doc_to_assignment(ex.ground_truth[0]))
    report = verify_pair(ex.scm, pair, ex.default_alphas, min_cost=14)
    assert report.invariance_ok and report.necessity_ok
    assert report.minimal is True
    assert report.all_ok


def test_verify_pair_flags_invariance_violation():
    ex = corpus.get("mover-1d")
    pair = BinarySubsetPair.from_assignment(doc_to_assignment(MOVER_ALT_NO_INVARIANCE))
    report = verify_pair(ex.scm, pair, ex.default_alphas)
    assert not report.invariance_ok
    assert report.invariance_violation is not None


def test_verify_pair_all_ones_invariance_holds():
    ex = corpus.get("mover-1d")
    assignment = {s: (1, 1) for s in ex.scm.enumerate_states()}
    report = verify_pair(ex.scm, BinarySubsetPair.from_assignment(assignment), ex.default_alphas)
    assert report.invariance_ok


def test_solution_set_closure():
    for name in ("binary-and", "forest-fire", "switching-tracks"):
        ex = corpus.get(name)
        sol = solve(ex.scm, ex.default_alphas)
        for pair in sol.pairs:
            report = verify_pair(ex.scm, pair, ex.default_alphas, min_cost=sol.min_cost)
            assert report.all_ok, (name, report)


# -- budgets -----------------------------------------------------------------


def test_budget_refusal_names_states():
    ex = corpus.get("pusher-1d-discrete")
    with pytest.raises(SolverBudgetError, match="state"):
        solve(ex.scm, ex.default_alphas, budget=SolverBudget(max_states=100))


def test_budget_refusal_names_binaries():
    ex = corpus.get("rock-throwing")
    with pytest.raises(SolverBudgetError, match="binaries"):
        solve(ex.scm, ex.default_alphas, budget=SolverBudget(max_state_binary_product=4))
