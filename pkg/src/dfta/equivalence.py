"""State equivalence by solving a system of language equations.

Every state ``q`` gets a variable ``X_q`` with a defining equation
``X_q = f(X_q1, ..., X_qk) + g(...) + ...`` (one term per rule of ``q``) and
the goal ``X_a = X_b`` is queued as a pending equality. Pending equalities are
then eliminated one at a time: the two variables are identified (a union-find
merge), and if their defining equations enable different top symbols the
system has no solution, otherwise the children under every shared symbol are
queued as new equalities. An empty queue means the two states are equivalent.

Symbol-set comparison only reflects languages when every rule's children
have non-empty languages, so the automaton is trimmed first and pairs
involving an empty state are decided directly.
"""

from __future__ import annotations

import enum
from collections import deque
from collections.abc import Mapping
from dataclasses import dataclass
from typing import Callable

from .core import Dfta, Tree, accepts
from .emptiness import NonEmptyResult, nonempty_states


@dataclass(frozen=True)
class TrimmedDfta:
    base: Dfta
    empty_states: frozenset[str]
    emptiness: NonEmptyResult   # computed on the original automaton

    def witness(self, state: str) -> Tree:
        return self.emptiness.witness[state]


def trim(dfta: Dfta) -> TrimmedDfta:
    """Drop every rule that has a child with an empty language."""
    ne = nonempty_states(dfta)
    kept = [r for r in dfta.rules if all(c in ne.nonempty for c in r.children)]
    base = dfta if len(kept) == len(dfta.rules) else dfta.replace_rules(kept)
    return TrimmedDfta(base, frozenset(dfta.states) - ne.nonempty, ne)


@dataclass(frozen=True, slots=True, eq=False)
class PendingEquality:
    """``X_left = X_right``, waiting to be eliminated.

    ``parent is None`` marks the goal equality; otherwise this equality was
    produced by restoring ``parent`` under ``symbol`` at child ``position``.
    """

    left: int
    right: int
    parent: PendingEquality | None = None
    symbol: int = -1
    position: int = -1

    @property
    def is_goal(self) -> bool:
        return self.parent is None


class Status(enum.Enum):
    CONTINUE = "continue"
    DONE = "done"


@dataclass(frozen=True)
class Conflict:
    state_a: str
    state_b: str
    symbol: str
    pending: PendingEquality


class EquationSystem:
    """Defining equations per union-find representative plus a FIFO of pending equalities."""

    def __init__(self, trimmed: TrimmedDfta, a: str, b: str):
        base = trimmed.base
        self.dfta = base
        self._delta = base._delta
        n = len(base.states)
        self.parent = list(range(n))
        self.size = [1] * n
        # bodies are shared with the automaton's transition table and never mutated
        self.bodies: dict[int, dict[int, tuple[int, ...]]] = dict(enumerate(self._delta))
        self.pending: deque[PendingEquality] = deque(
            [PendingEquality(base.index_of(a), base.index_of(b))]
        )
        self.n1 = n
        self.n2 = sum(1 for body in self._delta if body)
        self.merges = 0
        self.last_merged = False

    @property
    def metrics(self) -> tuple[int, int, int]:
        """(live variables, non-empty defining equations, all equations)."""
        return (self.n1, self.n2, self.n1 + len(self.pending))

    def find(self, x: int) -> int:
        parent = self.parent
        root = x
        while parent[root] != root:
            root = parent[root]
        while parent[x] != root:
            parent[x], x = root, parent[x]
        return root

    def representative(self, state: str) -> str:
        return self.dfta.states[self.find(self.dfta.index_of(state))]

    def body(self, state: str) -> dict[str, tuple[str, ...]]:
        """Defining equation of ``state``'s class, children shown as representatives."""
        names, syms = self.dfta.states, self.dfta._syms
        rep = self.find(self.dfta.index_of(state))
        return {syms[f].name: tuple(names[self.find(c)] for c in kids)
                for f, kids in self.bodies[rep].items()}

    def pending_view(self) -> list[tuple[str, str, tuple | None]]:
        names, syms = self.dfta.states, self.dfta._syms
        return [
            (names[e.left], names[e.right],
             None if e.is_goal else (names[e.parent.left], names[e.parent.right],
                                     syms[e.symbol].name, e.position))
            for e in self.pending
        ]

    def step(self) -> Status | Conflict:
        self.last_merged = False
        if not self.pending:
            return Status.DONE
        eq = self.pending.popleft()
        ra, rb = self.find(eq.left), self.find(eq.right)
        if ra == rb:
            return Status.CONTINUE
        body_a, body_b = self.bodies[ra], self.bodies[rb]
        if body_a.keys() != body_b.keys():
            f = min(body_a.keys() ^ body_b.keys())
            names = self.dfta.states
            return Conflict(names[eq.left], names[eq.right], self.dfta._syms[f].name, eq)

        if self.size[ra] < self.size[rb]:
            ra, rb = rb, ra
        self.parent[rb] = ra
        self.size[ra] += self.size[rb]
        del self.bodies[rb]
        self.n1 -= 1
        if body_a:
            self.n2 -= 1
        self.merges += 1
        self.last_merged = True

        # children come from the two states' own rules, so that every queued
        # equality (x, y) is reached from the goal pair along the same path
        left, right = self._delta[eq.left], self._delta[eq.right]
        push = self.pending.append
        for f, kids in left.items():
            for i, (x, y) in enumerate(zip(kids, right[f])):
                push(PendingEquality(x, y, eq, f, i))
        return Status.CONTINUE


def build_equation_system(trimmed: TrimmedDfta, a: str, b: str) -> EquationSystem:
    return EquationSystem(trimmed, a, b)


def extract_witness(sys: EquationSystem, conflict: Conflict, trimmed: TrimmedDfta,
                    witnesses: Mapping[str, Tree] | None = None) -> Tree:
    """Distinguishing tree for a conflict, rebuilt along its provenance chain.

    ``witnesses`` maps state names to emptiness witnesses; defaults to the
    ones recorded in ``trimmed``.
    """
    base = trimmed.base
    if witnesses is None:
        witness_at = trimmed.emptiness.witness_at
    else:
        def witness_at(i):
            return witnesses[base.states[i]]
    eq = conflict.pending
    f = base._fidx[conflict.symbol]
    side = 0 if f in base._delta[eq.left] else 1
    return build_distinguisher(
        base, witness_at, f,
        [(e.parent.left, e.parent.right, e.symbol, e.position) for e in _chain(eq)],
        eq.left if side == 0 else eq.right, side,
    )


def _chain(eq: PendingEquality):
    while eq.parent is not None:
        yield eq
        eq = eq.parent


def build_distinguisher(base: Dfta, witness_at: Callable[[int], Tree], symbol: int,
                        path: list[tuple[int, int, int, int]], state: int, side: int) -> Tree:
    """Plug ``symbol``'s subtree into the context described by ``path``.

    ``path`` lists ``(parent_left, parent_right, symbol, position)`` from the
    conflict up to the goal. Off-path holes are filled on ``side`` (0 = left,
    1 = right), the side on which ``symbol`` is enabled.
    """
    delta, syms = base._delta, base._syms
    tree = Tree(syms[symbol], tuple(witness_at(c) for c in delta[state][symbol]))
    for parent_left, parent_right, f, pos in path:
        holder = parent_left if side == 0 else parent_right
        kids = [witness_at(c) for c in delta[holder][f]]
        kids[pos] = tree
        tree = Tree(syms[f], tuple(kids))
    return tree


@dataclass(frozen=True)
class Verdict:
    equivalent: bool
    witness: Tree | None = None
    conflict: tuple[str, str, str] | None = None

    @property
    def kind(self) -> str:
        return "Equivalent" if self.equivalent else "NotEquivalent"

    def __bool__(self):
        return self.equivalent


EQUIVALENT = Verdict(True)


def dispatch_empty(trimmed: TrimmedDfta, a: str, b: str) -> Verdict | None:
    """Verdict for pairs involving an empty state, ``None`` if both are non-empty."""
    ea, eb = a in trimmed.empty_states, b in trimmed.empty_states
    if ea and eb:
        return EQUIVALENT
    if ea or eb:
        w = trimmed.witness(b if ea else a)
        return Verdict(False, w, (a, b, w.symbol.name))
    return None


class EquivalenceChecker:
    """Trims once, then answers any number of state-pair queries."""

    def __init__(self, dfta: Dfta):
        self.dfta = dfta
        self.trimmed = trim(dfta)

    def check(self, a: str, b: str,
              trace: Callable[[EquationSystem, tuple, tuple], None] | None = None) -> Verdict:
        """``trace(sys, before, after)`` is called with the metrics around every step."""
        self.dfta.index_of(a)
        self.dfta.index_of(b)
        if a == b:
            return EQUIVALENT
        early = dispatch_empty(self.trimmed, a, b)
        if early is not None:
            return early
        sys = build_equation_system(self.trimmed, a, b)
        while True:
            before = sys.metrics if trace else None
            res = sys.step()
            if trace:
                trace(sys, before, sys.metrics)
            if res is Status.DONE:
                return EQUIVALENT
            if isinstance(res, Conflict):
                w = extract_witness(sys, res, self.trimmed)
                assert accepts(self.dfta, a, w) != accepts(self.dfta, b, w), \
                    f"witness {w} does not distinguish {a} and {b}"
                return Verdict(False, w, (res.state_a, res.state_b, res.symbol))


def check_equivalence(dfta: Dfta, a: str, b: str) -> Verdict:
    return EquivalenceChecker(dfta).check(a, b)
