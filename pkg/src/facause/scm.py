"""Finite-domain structural causal models with deterministic mechanisms.

An :class:`Scm` holds an ordered list of integer-valued state variables, a
designated outcome variable, and a deterministic mechanism computing the
outcome from a full state assignment (plus an opaque exogenous context, unused
by the built-in examples but kept in every signature so exogenous models can
be added without an interface break).

Some state variables may be *derived*: their value is fixed by a structural
equation over other state variables.  Enumeration only walks the root
variables and fills derived values in, so unreachable combinations (a derived
variable contradicting its equation) never appear in the enumerated state
space.  Counterfactual evaluation recomputes derived variables that are
neither intervened on nor held fixed by a witness, which is what makes
preemption examples behave correctly.
"""

from __future__ import annotations

import itertools
import os
from dataclasses import dataclass, field
from typing import Callable, Iterator, Mapping, Sequence

State = tuple[int, ...]
Context = Mapping[str, int] | None

DEFAULT_STATE_CAP = 5_000_000
STATE_CAP_ENV = "FAC_STATE_CAP"


class ScmError(Exception):
    """Base class for model construction and evaluation errors."""


class MalformedStateError(ScmError):
    """A state has the wrong arity or an out-of-domain value."""


class InvalidInterventionError(ScmError):
    """An intervention names an unknown/duplicate variable or a bad value."""


class StateSpaceCapError(ScmError):
    """Full enumeration would exceed the configured state cap."""


def state_cap() -> int:
    """Enumeration cap, overridable through the FAC_STATE_CAP env var."""
    raw = os.environ.get(STATE_CAP_ENV)
    return int(raw) if raw else DEFAULT_STATE_CAP


@dataclass(frozen=True)
class Variable:
    """A named variable with a finite, ordered integer domain."""

    name: str
    values: tuple[int, ...]

    def __post_init__(self) -> None:
        if not self.values:
            raise ScmError(f"variable {self.name!r} has an empty domain")
        if len(set(self.values)) != len(self.values):
            raise ScmError(f"variable {self.name!r} has duplicate domain values")

    def __contains__(self, value: int) -> bool:
        return value in self.values


# A structural equation: parent variable names plus the function of their values.
Equation = tuple[tuple[str, ...], Callable[..., int]]

Mechanism = Callable[[State, Context], int]


@dataclass(frozen=True)
class Intervention:
    """A set of (variable name, value) overrides for state variables."""

    targets: tuple[tuple[str, int], ...]

    @classmethod
    def of(cls, **assignments: int) -> "Intervention":
        return cls(tuple(assignments.items()))

    def __post_init__(self) -> None:
        names = [name for name, _ in self.targets]
        if len(set(names)) != len(names):
            raise InvalidInterventionError(f"duplicate intervention targets: {names}")


@dataclass(frozen=True)
class Scm:
    """Deterministic SCM over finite integer domains.

    ``variables`` excludes the outcome; a :data:`State` assigns each of them a
    value in declared order.  ``mechanism`` must be total over the full
    product domain, not just the reachable states, because sufficiency checks
    pin arbitrary value combinations.
    """

    variables: tuple[Variable, ...]
    outcome: Variable
    mechanism: Mechanism
    equations: Mapping[str, Equation] = field(default_factory=dict)
    name: str = ""

    def __post_init__(self) -> None:
        names = [v.name for v in self.variables]
        if len(set(names)) != len(names):
            raise ScmError(f"duplicate variable names: {names}")
        if self.outcome.name in names:
            raise ScmError("outcome variable duplicates a state variable")
        for var, (parents, _) in self.equations.items():
            if var not in names:
                raise ScmError(f"equation for unknown variable {var!r}")
            for p in parents:
                if p not in names:
                    raise ScmError(f"equation parent {p!r} is not a state variable")
        object.__setattr__(self, "_index", {n: i for i, n in enumerate(names)})
        object.__setattr__(self, "_eval_order", self._toposort())

    # -- structure ---------------------------------------------------------

    def _toposort(self) -> tuple[str, ...]:
        """Derived variables in dependency order; cycles are rejected."""
        order: list[str] = []
        seen: dict[str, int] = {}  # 0 = visiting, 1 = done

        def visit(var: str) -> None:
            mark = seen.get(var)
            if mark == 1:
                return
            if mark == 0:
                raise ScmError(f"cyclic structural equations at {var!r}")
            seen[var] = 0
            if var in self.equations:
                for p in self.equations[var][0]:
                    visit(p)
                order.append(var)
            seen[var] = 1

        for var in self.equations:
            visit(var)
        return tuple(order)

    def index(self, name: str) -> int:
        try:
            return self._index[name]  # type: ignore[attr-defined]
        except KeyError:
            raise ScmError(f"unknown variable {name!r}") from None

    @property
    def root_names(self) -> tuple[str, ...]:
        return tuple(v.name for v in self.variables if v.name not in self.equations)

    def variable(self, name: str) -> Variable:
        return self.variables[self.index(name)]

    def n_states(self) -> int:
        """Size of the enumerable state space (product of root domains)."""
        n = 1
        for name in self.root_names:
            n *= len(self.variable(name).values)
        return n

    # -- validation --------------------------------------------------------

    def check_state(self, state: Sequence[int]) -> State:
        if len(state) != len(self.variables):
            raise MalformedStateError(
                f"state arity {len(state)} != {len(self.variables)} for {self.name or 'scm'}"
            )
        for var, value in zip(self.variables, state):
            if value not in var:
                raise MalformedStateError(
                    f"value {value} out of domain for variable {var.name!r}"
                )
        return tuple(state)

    # -- evaluation --------------------------------------------------------

    def evaluate(self, state: Sequence[int], ctx: Context = None) -> int:
        """Outcome of the mechanism at a well-formed state."""
        return self.mechanism(self.check_state(state), ctx)

    def apply_intervention(self, state: Sequence[int], intervention: Intervention) -> State:
        """Overwrite the targeted coordinates; no structural propagation."""
        state = self.check_state(state)
        out = list(state)
        for name, value in intervention.targets:
            idx = self.index(name)
            if value not in self.variables[idx]:
                raise InvalidInterventionError(
                    f"value {value} out of domain for intervention target {name!r}"
                )
            out[idx] = value
        return tuple(out)

    def counterfactual_outcome(
        self,
        state: Sequence[int],
        assignments: Mapping[str, int],
        witness: Sequence[str] = (),
        ctx: Context = None,
    ) -> int:
        """Outcome under ``[X <- x, W <- observed]`` with recomputation.

        Intervened variables take their assigned values and witness variables
        keep their observed values; every other derived variable is recomputed
        from its structural equation, while roots keep observed values.
        """
        state = self.check_state(state)
        pinned: dict[str, int] = {}
        for w in witness:
            if w in assignments:
                raise InvalidInterventionError(f"witness variable {w!r} is also intervened")
            pinned[w] = state[self.index(w)]
        for name, value in assignments.items():
            idx = self.index(name)
            if value not in self.variables[idx]:
                raise InvalidInterventionError(
                    f"value {value} out of domain for intervention target {name!r}"
                )
            pinned[name] = value
        values = {v.name: state[i] for i, v in enumerate(self.variables)}
        values.update(pinned)
        for var in self._eval_order:  # type: ignore[attr-defined]
            if var in pinned:
                continue
            parents, fn = self.equations[var]
            values[var] = fn(*(values[p] for p in parents))
        full = tuple(values[v.name] for v in self.variables)
        return self.mechanism(full, ctx)

    # -- enumeration -------------------------------------------------------

    def enumerate_states(self, cap: int | None = None) -> Iterator[State]:
        """All reachable states in lexicographic order.

        Root variables range over their full domains; derived variables take
        the value induced by their equations, so unreachable combinations are
        never emitted.
        """
        limit = cap if cap is not None else state_cap()
        total = self.n_states()
        if total > limit:
            raise StateSpaceCapError(
                f"{self.name or 'scm'} has {total} states, above the cap of {limit}"
            )
        roots = self.root_names
        if not self.equations:
            domains = [v.values for v in self.variables]
            yield from (tuple(s) for s in itertools.product(*domains))
            return
        root_domains = [self.variable(n).values for n in roots]
        states = []
        for combo in itertools.product(*root_domains):
            values = dict(zip(roots, combo))
            for var in self._eval_order:  # type: ignore[attr-defined]
                parents, fn = self.equations[var]
                values[var] = fn(*(values[p] for p in parents))
            states.append(tuple(values[v.name] for v in self.variables))
        states.sort()
        yield from states
