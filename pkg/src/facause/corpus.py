"""Built-in example models from the actual-causality literature.

Each example bundles a finite SCM, one or more designated observed states,
the reference minimum-cost solution tables where the result is established,
and the soft-ratio settings under which the exhaustive solver reproduces
those tables.  Three of the examples (the discrete pusher, the rocket ship,
and the parroting chatbot) use domains of 1001 values; their predicates run
on the full domains, while solving uses the canonical reduced variant that
keeps the observed values and a small neighborhood.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Callable, Mapping, Sequence

from ._tables import GROUND_TRUTH
from .predicates import (
    AlphaRatios,
    Event,
    canonical_doc,
    is_contrastively_necessary,
    is_directly_sufficient,
    is_weakly_sufficient,
)
from .scm import Scm, ScmError, State, Variable


class UnknownExampleError(ScmError):
    pass


@dataclass(frozen=True)
class CorpusExample:
    name: str
    scm: Scm
    observed: tuple[State, ...]
    ground_truth: tuple[dict, ...]
    source: str
    default_alphas: AlphaRatios
    # Domain restriction bringing oversized examples into solver budget.
    canonical_reduction: Mapping[str, Sequence[int]] | None = None

    def solve_scm(self) -> Scm:
        """The SCM actually handed to the exhaustive solver."""
        if self.canonical_reduction is None:
            return self.scm
        return reduced(self.name, self.canonical_reduction).scm


def _binary(name: str) -> Variable:
    return Variable(name, (0, 1))


def _rng(name: str, lo: int, hi: int) -> Variable:
    return Variable(name, tuple(range(lo, hi + 1)))


def _mover() -> CorpusExample:
    # One mover and one obstacle on a line; the mover advances one cell per
    # step unless the obstacle occupies the destination cell.
    scm = Scm(
        variables=(Variable("m", (0, 1, 2, 3)), Variable("o", (0, 1, 2))),
        outcome=Variable("m_next", (0, 1, 2, 3, 4)),
        mechanism=lambda s, u: s[0] + 1 if s[1] != s[0] + 1 else s[0],
        name="mover-1d",
    )
    return CorpusExample(
        name="mover-1d",
        scm=scm,
        observed=((0, 1),),
        ground_truth=tuple(GROUND_TRUTH["mover-1d"]),
        source="1-D mover blocked by an adjacent obstacle",
        default_alphas=AlphaRatios.of("0.4"),
    )


def _pusher() -> CorpusExample:
    # Block at 500 is pushed two cells by a pusher at 499/500 unless the
    # obstacle sits in its path; any other pusher position leaves it at 500.
    def mech(s, u):
        p, o = s
        if p == 499:
            return 501 if o != 501 else 500
        if p == 500:
            if o == 501:
                return 500
            if o == 502:
                return 501
            return 502
        return 500

    scm = Scm(
        variables=(_rng("p", 0, 1000), _rng("o", 0, 1000)),
        outcome=Variable("block", (500, 501, 502)),
        mechanism=mech,
        name="pusher-1d-discrete",
    )
    return CorpusExample(
        name="pusher-1d-discrete",
        scm=scm,
        observed=((499, 200),),
        ground_truth=(),
        source="discrete 1-D pusher with an obstructing obstacle",
        default_alphas=AlphaRatios.of("0.4"),
        canonical_reduction={"p": range(498, 502), "o": (200, 499, 500, 501, 502, 503)},
    )


def _rocket() -> CorpusExample:
    # Either thruster launches the rocket unless a bird at position 500
    # knocks out the wiring.
    scm = Scm(
        variables=(_binary("t1"), _binary("t2"), _rng("bird", 0, 1000)),
        outcome=_binary("launch"),
        mechanism=lambda s, u: 1 if (s[0] or s[1]) and s[2] != 500 else 0,
        name="rocket-ship",
    )
    return CorpusExample(
        name="rocket-ship",
        scm=scm,
        observed=((1, 1, 200),),
        ground_truth=(),
        source="two redundant thrusters plus a wire-cutting bird position",
        default_alphas=AlphaRatios.of("0.4"),
        canonical_reduction={"bird": (199, 200, 500)},
    )


def _chatbot() -> CorpusExample:
    # The bot parrots the user unless the engineer's action 500 crashes it.
    scm = Scm(
        variables=(_rng("user", 0, 1000), _rng("engineer", 0, 1000)),
        outcome=_rng("bot", 0, 1000),
        mechanism=lambda s, u: 0 if s[1] == 500 else s[0],
        name="chatbot",
    )
    return CorpusExample(
        name="chatbot",
        scm=scm,
        observed=((500, 200),),
        ground_truth=(),
        source="parroting chatbot with a crash-inducing engineer action",
        default_alphas=AlphaRatios.of("0.4"),
        canonical_reduction={"user": (499, 500, 501), "engineer": (200, 500, 501)},
    )


def _forest_fire() -> CorpusExample:
    # April rain prevents the May fire; a May fire consumes the fuel that a
    # June storm would otherwise ignite.  Fire: 0 none, 1 in May, 2 in June.
    def mech(s, u):
        april, may, june = s
        if may and not april:
            return 1
        return 2 if june else 0

    scm = Scm(
        variables=(_binary("april"), _binary("may"), _binary("june")),
        outcome=Variable("fire", (0, 1, 2)),
        mechanism=mech,
        name="forest-fire",
    )
    return CorpusExample(
        name="forest-fire",
        scm=scm,
        observed=((1, 1, 1),),
        ground_truth=tuple(GROUND_TRUTH["forest-fire"]),
        source="Halpern, Actual Causality (2016), Example 7.1.4",
        default_alphas=AlphaRatios.of(0),
    )


def _gang_execution() -> CorpusExample:
    # The member shoots exactly when the leader does; the death is settled
    # by the leader's shot.
    scm = Scm(
        variables=(_binary("gang"), _binary("leader")),
        outcome=_binary("death"),
        mechanism=lambda s, u: s[1],
        equations={"gang": (("leader",), lambda leader: leader)},
        name="gang-execution",
    )
    return CorpusExample(
        name="gang-execution",
        scm=scm,
        observed=((1, 1),),
        ground_truth=tuple(GROUND_TRUTH["gang-execution"]),
        source="Rosenberg & Glymour (2018), Section 4",
        default_alphas=AlphaRatios.of(0),
    )


def _halt_and_charge() -> CorpusExample:
    # The major's order (0 halt, 1 charge, 2 no order) trumps the sergeant's.
    scm = Scm(
        variables=(Variable("major", (0, 1, 2)), _binary("sergeant")),
        outcome=_binary("corporal"),
        mechanism=lambda s, u: s[0] if s[0] != 2 else s[1],
        name="halt-and-charge",
    )
    return CorpusExample(
        name="halt-and-charge",
        scm=scm,
        observed=((2, 1),),
        ground_truth=tuple(GROUND_TRUTH["halt-and-charge"]),
        source="Halpern, Actual Causality (2016), Example 2.3.7",
        default_alphas=AlphaRatios.of(0),
    )


def _switching_tracks() -> CorpusExample:
    # The switch picks track 0 or 1; a breakdown forces track 2, and the
    # train arrives whenever it is not on track 2.
    scm = Scm(
        variables=(_binary("break"), _binary("switch"), Variable("track", (0, 1, 2))),
        outcome=_binary("arrive"),
        mechanism=lambda s, u: 1 if s[2] != 2 else 0,
        equations={"track": (("break", "switch"), lambda brk, sw: 2 if brk else sw)},
        name="switching-tracks",
    )
    return CorpusExample(
        name="switching-tracks",
        scm=scm,
        observed=((0, 1, 1),),
        ground_truth=tuple(GROUND_TRUTH["switching-tracks"]),
        source="Halpern, Actual Causality (2016), Example 2.3.6, with an explicit breakdown variable",
        default_alphas=AlphaRatios.of("0.7"),
    )


def _gate(name: str, fn: Callable[[int, int], int], source: str) -> CorpusExample:
    scm = Scm(
        variables=(_binary("a"), _binary("b")),
        outcome=_binary("c"),
        mechanism=lambda s, u: fn(s[0], s[1]),
        name=name,
    )
    return CorpusExample(
        name=name,
        scm=scm,
        observed=((1, 1),) if name != "binary-xor" else ((1, 0),),
        ground_truth=tuple(GROUND_TRUTH[name]),
        source=source,
        default_alphas=AlphaRatios.of("0.5"),
    )


def _rock_throwing() -> CorpusExample:
    # Suzy's rock always arrives first: her hit tracks her throw, and Billy's
    # rock only hits when Suzy's did not.
    scm = Scm(
        variables=(_binary("sh"), _binary("st"), _binary("bh"), _binary("bt")),
        outcome=_binary("bottle"),
        mechanism=lambda s, u: 1 if s[0] or s[2] else 0,
        equations={
            "sh": (("st",), lambda st: st),
            "bh": (("bt", "sh"), lambda bt, sh: 1 if bt and not sh else 0),
        },
        name="rock-throwing",
    )
    return CorpusExample(
        name="rock-throwing",
        scm=scm,
        observed=((1, 1, 0, 1),),
        ground_truth=tuple(GROUND_TRUTH["rock-throwing"]),
        source="Halpern, Actual Causality (2016), Example 2.3.3",
        default_alphas=AlphaRatios.of("0.75"),
    )


_BUILDERS: dict[str, Callable[[], CorpusExample]] = {
    "mover-1d": _mover,
    "pusher-1d-discrete": _pusher,
    "rocket-ship": _rocket,
    "chatbot": _chatbot,
    "forest-fire": _forest_fire,
    "gang-execution": _gang_execution,
    "halt-and-charge": _halt_and_charge,
    "switching-tracks": _switching_tracks,
    "binary-and": lambda: _gate("binary-and", lambda a, b: a & b, "conjunctive two-switch gate"),
    "binary-or": lambda: _gate("binary-or", lambda a, b: a | b, "disjunctive two-switch gate"),
    "binary-xor": lambda: _gate("binary-xor", lambda a, b: a ^ b, "exclusive-or two-switch gate"),
    "rock-throwing": _rock_throwing,
}

# Examples whose reference tables the solver is expected to reproduce exactly.
TABLE_EXAMPLES = (
    "forest-fire",
    "gang-execution",
    "halt-and-charge",
    "switching-tracks",
    "binary-and",
    "binary-or",
    "binary-xor",
    "rock-throwing",
)


@dataclass(frozen=True)
class PredicateCheck:
    """One step of a single-event verdict walk at an observed state."""

    predicate: str  # "weak" | "direct" | "necessary"
    state: State
    event: Event
    witness: tuple[str, ...]
    expected: bool

    def run(self, scm: Scm) -> bool:
        y = scm.evaluate(self.state)
        fn = {
            "weak": is_weakly_sufficient,
            "direct": is_directly_sufficient,
            "necessary": is_contrastively_necessary,
        }[self.predicate]
        return fn(scm, self.state, self.event, self.witness, y)


def _walk(state, event, witness_for_direct):
    """The standard two-route walk: the event is weakly sufficient and
    necessary with an empty witness, necessary and directly sufficient with
    the cited witness, and not directly sufficient without it."""
    return (
        PredicateCheck("weak", state, event, (), True),
        PredicateCheck("necessary", state, event, (), True),
        PredicateCheck("necessary", state, event, witness_for_direct, True),
        PredicateCheck("direct", state, event, witness_for_direct, True),
        PredicateCheck("direct", state, event, (), False),
    )


# Single-variable verdict walks at each big example's observed state: the
# obstacle alone, the bird position alone, and the engineer alone qualify as
# causes under both predicate routes, with the cited witness sets.
VERDICT_WALKTHROUGHS: dict[str, tuple[PredicateCheck, ...]] = {
    "pusher-1d-discrete": (
        PredicateCheck("weak", (499, 200), Event.of(o=200), (), True),
        PredicateCheck("necessary", (499, 200), Event.of(o=200), (), True),
        PredicateCheck("necessary", (499, 200), Event.of(o=200), ("p",), True),
        PredicateCheck("direct", (499, 200), Event.of(o=200), ("p",), True),
    ),
    "rocket-ship": _walk((1, 1, 200), Event.of(bird=200), ("t1",)),
    "chatbot": _walk((500, 200), Event.of(engineer=200), ("user",)),
}


@dataclass(frozen=True)
class SolutionComparison:
    """Order-insensitive diff between expected and produced solution sets."""

    matched: int
    missing: tuple[dict, ...]  # expected but not produced
    extra: tuple[dict, ...]  # produced but not expected

    @property
    def equal(self) -> bool:
        return not self.missing and not self.extra


def compare_solutions(expected: Sequence[dict], produced: Sequence[dict]) -> SolutionComparison:
    want = {canonical_doc(d): d for d in expected}
    got = {canonical_doc(d): d for d in produced}
    missing = tuple(want[k] for k in sorted(want.keys() - got.keys(), key=repr))
    extra = tuple(got[k] for k in sorted(got.keys() - want.keys(), key=repr))
    return SolutionComparison(len(want.keys() & got.keys()), missing, extra)


def names() -> tuple[str, ...]:
    return tuple(_BUILDERS)


def get(name: str) -> CorpusExample:
    try:
        builder = _BUILDERS[name]
    except KeyError:
        raise UnknownExampleError(
            f"unknown example {name!r}; available: {', '.join(names())}"
        ) from None
    return builder()


def reduced(
    name: str, ranges: Mapping[str, Sequence[int]], require_observed: bool = True
) -> CorpusExample:
    """Example with each named domain shrunk to the given value subset.

    Values must be a subset of the original domain.  By default every
    designated observed state must stay representable; passing
    ``require_observed=False`` drops observed states that fall outside the
    reduced ranges instead, for reductions aimed purely at the solver.
    """
    example = get(name)
    scm = example.scm
    new_vars = []
    for var in scm.variables:
        if var.name in ranges:
            keep = tuple(ranges[var.name])
            bad = [v for v in keep if v not in var]
            if bad:
                raise ScmError(f"reduction values {bad} outside domain of {var.name!r}")
            new_vars.append(Variable(var.name, keep))
        else:
            new_vars.append(var)
    reduced_scm = Scm(
        variables=tuple(new_vars),
        outcome=scm.outcome,
        mechanism=scm.mechanism,
        equations=scm.equations,
        name=f"{scm.name}-reduced",
    )
    kept = []
    for state in example.observed:
        try:
            reduced_scm.check_state(state)
        except ScmError:
            if require_observed:
                raise ScmError(
                    f"observed state {state} falls outside the reduced ranges for {name!r}"
                ) from None
        else:
            kept.append(state)
    return CorpusExample(
        name=example.name,
        scm=reduced_scm,
        observed=tuple(kept),
        ground_truth=example.ground_truth,
        source=example.source,
        default_alphas=example.default_alphas,
        canonical_reduction=None,
    )
