"""Sufficiency, necessity, and minimality conditions over finite SCMs.

Everything here is a pure function of immutable inputs.  Events name a set of
variables and the values they take; witnesses hold other variables at their
observed values while counterfactuals are evaluated.  The quantified checks
(`is_directly_sufficient`, the alpha-ratio variants) pin the full complement
``C = S - (X u W)`` to every combination of domain values, so they range over
the product space rather than only reachable states.

Soft-ratio comparisons use exact rational arithmetic so threshold boundaries
like 1/3 or 2/3 behave predictably.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Iterator, Mapping, Sequence

from .scm import Context, Scm, ScmError, State, StateSpaceCapError, state_cap

Bits = tuple[int, ...]


class PredicateError(ScmError):
    """Malformed event/witness combination."""


@dataclass(frozen=True)
class Event:
    """An assignment ``X = x`` to a non-empty set of state variables."""

    vars: tuple[str, ...]
    values: tuple[int, ...]

    def __post_init__(self) -> None:
        if not self.vars:
            raise PredicateError("event over an empty variable set")
        if len(set(self.vars)) != len(self.vars):
            raise PredicateError(f"duplicate event variables: {self.vars}")
        if len(self.vars) != len(self.values):
            raise PredicateError("event vars/values length mismatch")

    @classmethod
    def of(cls, **assignments: int) -> "Event":
        return cls(tuple(assignments), tuple(assignments.values()))

    def as_mapping(self) -> dict[str, int]:
        return dict(zip(self.vars, self.values))


@dataclass(frozen=True)
class AlphaRatios:
    """Soft thresholds for the ratio-based conditions.

    ``alpha1 = None`` selects the contrastive default, one deviating
    counterfactual out of ``|R(X)|``, resolved per event.
    """

    alpha0: Fraction = Fraction(0)
    alpha1: Fraction | None = None

    def __post_init__(self) -> None:
        if not 0 <= self.alpha0 <= 1:
            raise PredicateError(f"alpha0 {self.alpha0} outside [0, 1]")
        if self.alpha1 is not None and not 0 <= self.alpha1 <= 1:
            raise PredicateError(f"alpha1 {self.alpha1} outside [0, 1]")

    @classmethod
    def of(cls, alpha0: float | str | Fraction = 0, alpha1: float | str | Fraction | None = None) -> "AlphaRatios":
        # Floats go through their decimal string so 0.05 means 1/20 exactly.
        def conv(x):
            if isinstance(x, Fraction):
                return x
            return Fraction(str(x))

        return cls(conv(alpha0), None if alpha1 is None else conv(alpha1))


@dataclass(frozen=True)
class Verdict:
    """Per-event actual-cause verdict with the four condition flags."""

    ac1: bool
    ac2a: bool
    ac2b: bool
    ac3: bool
    witness_used: tuple[str, ...] | None = None
    counterexample: tuple[Event, State] | None = None

    @property
    def is_cause(self) -> bool:
        return self.ac1 and self.ac2a and self.ac2b and self.ac3


def _check_event(scm: Scm, event: Event, witness: Sequence[str]) -> None:
    for v in event.vars:
        idx = scm.index(v)
        if v == scm.outcome.name:
            raise PredicateError("outcome variable cannot appear in an event")
    for i, v in enumerate(event.vars):
        if event.values[i] not in scm.variable(v):
            raise PredicateError(f"event value {event.values[i]} out of domain for {v!r}")
    overlap = set(event.vars) & set(witness)
    if overlap:
        raise PredicateError(f"event and witness overlap on {sorted(overlap)}")
    for w in witness:
        scm.index(w)


def event_space(scm: Scm, vars: Sequence[str]) -> Iterator[tuple[int, ...]]:
    """Product of the named variables' domains, in declared-domain order."""
    yield from itertools.product(*(scm.variable(v).values for v in vars))


def complement_vars(scm: Scm, event: Event, witness: Sequence[str]) -> tuple[str, ...]:
    used = set(event.vars) | set(witness)
    return tuple(v.name for v in scm.variables if v.name not in used)


def is_weakly_sufficient(
    scm: Scm, state: Sequence[int], event: Event, witness: Sequence[str], y: int, ctx: Context = None
) -> bool:
    """Intervening the event (with the witness held) yields the outcome y."""
    _check_event(scm, event, witness)
    return scm.counterfactual_outcome(state, event.as_mapping(), witness, ctx) == y


def is_directly_sufficient(
    scm: Scm, state: Sequence[int], event: Event, witness: Sequence[str], y: int, ctx: Context = None
) -> bool:
    """The outcome is y for every assignment of the complement variables."""
    return is_alpha_sufficient(scm, state, event, witness, y, Fraction(0), ctx)


def is_contrastively_necessary(
    scm: Scm, state: Sequence[int], event: Event, witness: Sequence[str], y: int, ctx: Context = None
) -> bool:
    """Some alternative event value changes the outcome (witness held)."""
    _check_event(scm, event, witness)
    base = event.as_mapping()
    for alt in event_space(scm, event.vars):
        assignment = dict(zip(event.vars, alt))
        if assignment == base:
            continue
        if scm.counterfactual_outcome(state, assignment, witness, ctx) != y:
            return True
    return False


def necessity_fraction(
    scm: Scm, state: Sequence[int], event: Event, witness: Sequence[str], y: int, ctx: Context = None
) -> Fraction:
    """Fraction of event-variable assignments whose outcome deviates from y."""
    _check_event(scm, event, witness)
    deviating = 0
    total = 0
    for alt in event_space(scm, event.vars):
        total += 1
        assignment = dict(zip(event.vars, alt))
        if scm.counterfactual_outcome(state, assignment, witness, ctx) != y:
            deviating += 1
    return Fraction(deviating, total)


def is_alpha_necessary(
    scm: Scm,
    state: Sequence[int],
    event: Event,
    witness: Sequence[str],
    y: int,
    alpha1: Fraction | float,
    ctx: Context = None,
) -> bool:
    """At least an alpha1 fraction of alternative assignments deviate."""
    alpha1 = Fraction(str(alpha1)) if not isinstance(alpha1, Fraction) else alpha1
    if alpha1 == 0:
        _check_event(scm, event, witness)
        return True
    return necessity_fraction(scm, state, event, witness, y, ctx) >= alpha1


def sufficiency_fraction(
    scm: Scm, state: Sequence[int], event: Event, witness: Sequence[str], y: int, ctx: Context = None
) -> Fraction:
    """Fraction of complement assignments whose outcome deviates from y.

    Pins the event, the witness (at observed values) and the complement, so
    every state variable is assigned and no recomputation happens.
    """
    _check_event(scm, event, witness)
    state = scm.check_state(state)
    comp = complement_vars(scm, event, witness)
    total = 1
    for v in comp:
        total *= len(scm.variable(v).values)
    if total > state_cap():
        raise StateSpaceCapError(
            f"complement space of {total} assignments is above the cap of {state_cap()}"
        )
    base = event.as_mapping()
    for w in witness:
        base[w] = state[scm.index(w)]
    if not comp:
        outcome = scm.counterfactual_outcome(state, base, (), ctx)
        return Fraction(0 if outcome == y else 1)
    deviating = 0
    for combo in event_space(scm, comp):
        assignment = dict(base)
        assignment.update(zip(comp, combo))
        if scm.counterfactual_outcome(state, assignment, (), ctx) != y:
            deviating += 1
    return Fraction(deviating, total)


def is_alpha_sufficient(
    scm: Scm,
    state: Sequence[int],
    event: Event,
    witness: Sequence[str],
    y: int,
    alpha0: Fraction | float,
    ctx: Context = None,
) -> bool:
    """At most an alpha0 fraction of complement assignments deviate."""
    alpha0 = Fraction(str(alpha0)) if not isinstance(alpha0, Fraction) else alpha0
    if alpha0 >= 1:
        _check_event(scm, event, witness)
        return True
    return sufficiency_fraction(scm, state, event, witness, y, ctx) <= alpha0


# -- binary vectors and state partitionings --------------------------------


def bits_of(scm: Scm, names: Iterable[str]) -> Bits:
    """Binary vector with ones at the named variables' positions."""
    idx = {scm.index(n) for n in names}
    return tuple(1 if i in idx else 0 for i in range(len(scm.variables)))


def vars_of(scm: Scm, bits: Bits) -> tuple[str, ...]:
    return tuple(v.name for v, b in zip(scm.variables, bits) if b)


def bits_str(bits: Bits) -> str:
    return "".join(str(b) for b in bits)


def event_for(scm: Scm, state: Sequence[int], bits: Bits) -> Event:
    """The event asserting the state's own values on the bit-set variables."""
    names = vars_of(scm, bits)
    state = scm.check_state(state)
    return Event(names, tuple(state[scm.index(n)] for n in names))


@dataclass(frozen=True)
class BinarySubsetPair:
    """A total map from enumerated states to cause-mask binary vectors.

    Distinct binary vectors identify distinct partitions (the preimages), so
    the uniqueness constraint on the binary list holds by construction.
    ``certified_min_cost`` is set by the solver on globally minimal pairs and
    backs the minimality flag in verdicts.
    """

    states: tuple[State, ...]
    bits: tuple[Bits, ...]
    certified_min_cost: bool = False

    def __post_init__(self) -> None:
        if len(self.states) != len(self.bits):
            raise PredicateError("state/bits length mismatch")
        if len(set(self.states)) != len(self.states):
            raise PredicateError("duplicate states in pair")

    @classmethod
    def from_assignment(
        cls, assignment: Mapping[State, Bits], certified_min_cost: bool = False
    ) -> "BinarySubsetPair":
        states = tuple(sorted(assignment))
        return cls(states, tuple(assignment[s] for s in states), certified_min_cost)

    def assignment(self, state: Sequence[int]) -> Bits:
        try:
            return self.bits[self.states.index(tuple(state))]
        except ValueError:
            raise PredicateError(f"state {tuple(state)} not covered by the pair") from None

    def partitions(self) -> dict[Bits, tuple[State, ...]]:
        """Preimage of each distinct binary vector, states in sorted order."""
        parts: dict[Bits, list[State]] = {}
        for state, bits in zip(self.states, self.bits):
            parts.setdefault(bits, []).append(state)
        return {b: tuple(sorted(ss)) for b, ss in parts.items()}

    def covers(self, scm: Scm) -> bool:
        return set(self.states) == set(scm.enumerate_states())


def pair_cost(pair: BinarySubsetPair) -> int:
    """Sum over partitions of partition size times binary length."""
    return sum(sum(b) for b in pair.bits)


@dataclass(frozen=True)
class InvarianceViolation:
    bits: Bits
    state_a: State
    state_b: State
    outcome_a: int
    outcome_b: int


def check_invariance(
    scm: Scm, pair: BinarySubsetPair, ctx: Context = None
) -> tuple[bool, InvarianceViolation | None]:
    """Within each partition, equal cause-variable values imply equal outcome.

    Violations are reported deterministically: partitions in binary order,
    states within a partition in lexicographic order.
    """
    for bits in sorted(pair.partitions()):
        states = pair.partitions()[bits]
        idx = [i for i, b in enumerate(bits) if b]
        seen: dict[tuple[int, ...], tuple[State, int]] = {}
        for state in states:
            key = tuple(state[i] for i in idx)
            outcome = scm.evaluate(state, ctx)
            if key in seen and seen[key][1] != outcome:
                prev_state, prev_outcome = seen[key]
                return False, InvarianceViolation(bits, prev_state, state, prev_outcome, outcome)
            seen.setdefault(key, (state, outcome))
    return True, None


@dataclass(frozen=True)
class NecessityViolation:
    bits: Bits
    state: State


def witness_candidates(scm: Scm, event_vars: Sequence[str]) -> Iterator[tuple[str, ...]]:
    """Subsets of the non-event variables, by ascending size then position."""
    rest = [v.name for v in scm.variables if v.name not in set(event_vars)]
    for size in range(len(rest) + 1):
        yield from itertools.combinations(rest, size)


def find_necessity_witness(
    scm: Scm,
    state: Sequence[int],
    bits: Bits,
    alphas: AlphaRatios,
    ctx: Context = None,
) -> tuple[str, ...] | None:
    """Smallest witness under which the state's event is alpha1-necessary.

    The all-zeros binary names the empty event, which cannot be necessary
    unless alpha1 is exactly zero.
    """
    if not any(bits):
        return () if alphas.alpha1 == 0 else None
    event = event_for(scm, state, bits)
    y = scm.evaluate(state, ctx)
    for witness in witness_candidates(scm, event.vars):
        if alphas.alpha1 is None:
            if is_contrastively_necessary(scm, state, event, witness, y, ctx):
                return witness
        elif is_alpha_necessary(scm, state, event, witness, y, alphas.alpha1, ctx):
            return witness
    return None


def check_necessity_property(
    scm: Scm, pair: BinarySubsetPair, alphas: AlphaRatios, ctx: Context = None
) -> tuple[bool, NecessityViolation | None]:
    """Every state's assigned event is alpha1-necessary under some witness."""
    for state, bits in zip(pair.states, pair.bits):
        if find_necessity_witness(scm, state, bits, alphas, ctx) is None:
            return False, NecessityViolation(bits, state)
    return True, None


def is_functional_actual_cause(
    scm: Scm,
    state: Sequence[int],
    event: Event,
    pair: BinarySubsetPair,
    alphas: AlphaRatios,
    ctx: Context = None,
) -> Verdict:
    """Verdict for the event at the observed state under the given pair.

    AC1 is the factual check, AC2a is necessity under the smallest witness
    found, AC2b is membership of the state in the invariant preimage named by
    the event's variables, and AC3 reuses the pair's minimality certificate.
    """
    _check_event(scm, event, ())
    state = scm.check_state(state)
    y = scm.evaluate(state, ctx)
    observed = all(state[scm.index(v)] == x for v, x in zip(event.vars, event.values))
    ac1 = observed

    witness_used: tuple[str, ...] | None = None
    counterexample: tuple[Event, State] | None = None
    ac2a = False
    alpha1 = alphas.alpha1
    for witness in witness_candidates(scm, event.vars):
        ok = (
            is_contrastively_necessary(scm, state, event, witness, y, ctx)
            if alpha1 is None
            else is_alpha_necessary(scm, state, event, witness, y, alpha1, ctx)
        )
        if ok:
            ac2a = True
            witness_used = witness
            for alt in event_space(scm, event.vars):
                assignment = dict(zip(event.vars, alt))
                if scm.counterfactual_outcome(state, assignment, witness, ctx) != y:
                    pinned = dict(assignment)
                    for w in witness:
                        pinned[w] = state[scm.index(w)]
                    alt_state = scm.apply_intervention(
                        state, _as_intervention(pinned)
                    )
                    counterexample = (Event(tuple(assignment), tuple(assignment.values())), alt_state)
                    break
            break

    ac2b = pair.assignment(state) == bits_of(scm, event.vars)
    ac3 = pair.certified_min_cost
    return Verdict(ac1, ac2a, ac2b, ac3, witness_used, counterexample)


def _as_intervention(assignment: Mapping[str, int]):
    from .scm import Intervention

    return Intervention(tuple(assignment.items()))


# -- JSON solution schema ---------------------------------------------------


def pair_to_doc(scm: Scm, pair: BinarySubsetPair, ctx: Context = None) -> dict:
    """Serialize a pair into the comparison format for solution tables.

    Tables are keyed by binary string and sorted by it; rows are sorted by
    state lexicographic order.
    """
    tables = []
    for bits, states in sorted(pair.partitions().items()):
        rows = [
            {"state": list(s), "outcome": scm.evaluate(s, ctx)} for s in states
        ]
        tables.append({"binary": bits_str(bits), "rows": rows})
    return {"cost": pair_cost(pair), "tables": tables}


def doc_to_assignment(doc: Mapping) -> dict[State, Bits]:
    """Inverse of :func:`pair_to_doc`, dropping the outcomes."""
    assignment: dict[State, Bits] = {}
    for table in doc["tables"]:
        bits = tuple(int(c) for c in table["binary"])
        for row in table["rows"]:
            assignment[tuple(row["state"])] = bits
    return assignment


def canonical_doc(doc: Mapping) -> tuple:
    """Order-insensitive form of a solution doc, for set comparisons."""
    tables = tuple(
        sorted(
            (t["binary"], tuple(sorted((tuple(r["state"]), r["outcome"]) for r in t["rows"])))
            for t in doc["tables"]
        )
    )
    return (doc["cost"], tables)
