"""Non-emptiness of every state at once, by worklist propagation.

Terminating rules seed the worklist. Each rule keeps a countdown of children
not yet known to be non-empty; popping a state decrements the countdown of
every rule it occurs in (once per occurrence), and a rule whose countdown hits
zero marks its source non-empty. Every state is pushed at most once and every
rule is touched at most ``arity`` times, so the pass is linear in the size of
the automaton.
"""

from __future__ import annotations

from collections import deque
from collections.abc import Mapping
from dataclasses import dataclass, field

from .core import Dfta, Rule, Tree


@dataclass
class EmptinessStats:
    pushes: list[int]        # per state index
    rule_checks: list[int]   # per rule, countdown decrements


class _LazyWitnesses(Mapping):
    """Witness trees, assembled on first access and shared between states."""

    def __init__(self, result: NonEmptyResult):
        self._r = result
        self._cache: dict[int, Tree] = {}

    def tree_for(self, i: int) -> Tree:
        cache = self._cache
        if i in cache:
            return cache[i]
        dfta, fired = self._r.dfta, self._r._fired
        stack = [i]
        while stack:
            s = stack[-1]
            if s in cache:
                stack.pop()
                continue
            rule = dfta.rules[fired[s]]
            kids = [dfta._sidx[c] for c in rule.children]
            todo = [k for k in kids if k not in cache]
            if todo:
                stack.extend(todo)
                continue
            stack.pop()
            cache[s] = Tree(rule.symbol, tuple(cache[k] for k in kids))
        return cache[i]

    def __getitem__(self, state: str) -> Tree:
        i = self._r.dfta._sidx.get(state)
        if i is None or self._r._fired[i] < 0:
            raise KeyError(state)
        return self.tree_for(i)

    def __iter__(self):
        return iter(self._r.order)

    def __len__(self):
        return len(self._r.order)


@dataclass
class NonEmptyResult:
    dfta: Dfta
    nonempty: frozenset[str]
    order: tuple[str, ...]
    stats: EmptinessStats
    _fired: list[int] = field(repr=False)   # rule index that first fired per state, -1 if none
    witness: Mapping[str, Tree] = field(init=False, repr=False)

    def __post_init__(self):
        self.witness = _LazyWitnesses(self)

    def witness_at(self, i: int) -> Tree:
        return self.witness.tree_for(i)

    def is_nonempty_at(self, i: int) -> bool:
        return self._fired[i] >= 0

    def firing_rule(self, state: str) -> Rule | None:
        k = self._fired[self.dfta.index_of(state)]
        return self.dfta.rules[k] if k >= 0 else None


def dependency_index(dfta: Dfta) -> dict[str, frozenset[Rule]]:
    """Rules in which each state occurs as a child."""
    deps: dict[str, set[Rule]] = {q: set() for q in dfta.states}
    for rule in dfta.rules:
        for c in rule.children:
            deps[c].add(rule)
    return {q: frozenset(rs) for q, rs in deps.items()}


def nonempty_states(dfta: Dfta) -> NonEmptyResult:
    n = len(dfta.states)
    rules = dfta.rules
    sidx = dfta._sidx
    sources = [sidx[r.source] for r in rules]
    countdown = [r.symbol.arity for r in rules]
    deps: list[list[int]] = [[] for _ in range(n)]
    fired = [-1] * n
    pushes = [0] * n
    checks = [0] * len(rules)
    order: list[int] = []
    work: deque[int] = deque()

    for k, rule in enumerate(rules):
        if not rule.children:
            p = sources[k]
            if fired[p] < 0:
                fired[p] = k
                pushes[p] += 1
                order.append(p)
                work.append(p)
        else:
            for c in rule.children:
                deps[sidx[c]].append(k)

    while work:
        q = work.popleft()
        for k in deps[q]:
            checks[k] += 1
            countdown[k] -= 1
            if countdown[k] == 0:
                p = sources[k]
                if fired[p] < 0:
                    fired[p] = k
                    pushes[p] += 1
                    order.append(p)
                    work.append(p)

    names = dfta.states
    return NonEmptyResult(
        dfta=dfta,
        nonempty=frozenset(names[i] for i in order),
        order=tuple(names[i] for i in order),
        stats=EmptinessStats(pushes, checks),
        _fired=fired,
    )


def is_empty(dfta: Dfta, q: str) -> bool:
    i = dfta.index_of(q)
    return not nonempty_states(dfta).is_nonempty_at(i)
