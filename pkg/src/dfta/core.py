"""Ranked alphabets, ground trees and top-down deterministic tree automata."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Iterator

from .errors import (
    ArityMismatch,
    DuplicateLhs,
    DuplicateState,
    DuplicateSymbol,
    InitialNotAState,
    UnknownState,
    UnknownSymbol,
    ValidationError,
)


@dataclass(frozen=True, slots=True, order=True)
class RankedSymbol:
    name: str
    arity: int

    def __post_init__(self):
        if not self.name:
            raise ValidationError("symbol name must be non-empty")
        if self.arity < 0:
            raise ValidationError(f"negative arity for symbol {self.name}")

    def __str__(self):
        return f"{self.name}/{self.arity}"


class Alphabet:
    """A finite set of ranked symbols, indexed by name."""

    __slots__ = ("_by_name",)

    def __init__(self, symbols: Iterable[RankedSymbol]):
        by_name: dict[str, RankedSymbol] = {}
        for sym in symbols:
            if sym.name in by_name:
                raise DuplicateSymbol(sym.name)
            by_name[sym.name] = sym
        self._by_name = dict(sorted(by_name.items()))

    @classmethod
    def of(cls, **arities: int) -> Alphabet:
        """``Alphabet.of(f=2, a=0)`` shorthand."""
        return cls(RankedSymbol(n, k) for n, k in arities.items())

    @property
    def symbols(self) -> tuple[RankedSymbol, ...]:
        return tuple(self._by_name.values())

    def __getitem__(self, name: str) -> RankedSymbol:
        try:
            return self._by_name[name]
        except KeyError:
            raise UnknownSymbol(name) from None

    def get(self, name: str) -> RankedSymbol | None:
        return self._by_name.get(name)

    def __contains__(self, item) -> bool:
        if isinstance(item, RankedSymbol):
            return self._by_name.get(item.name) == item
        return item in self._by_name

    def __iter__(self) -> Iterator[RankedSymbol]:
        return iter(self._by_name.values())

    def __len__(self):
        return len(self._by_name)

    def __eq__(self, other):
        if not isinstance(other, Alphabet):
            return NotImplemented
        return self._by_name == other._by_name

    def __hash__(self):
        return hash(tuple(self._by_name.values()))

    def __repr__(self):
        return f"Alphabet({' '.join(map(str, self))})"


@dataclass(frozen=True, slots=True)
class Rule:
    """``(source, f) -> f(children...)``; a nullary symbol gives a terminating rule."""

    source: str
    symbol: RankedSymbol
    children: tuple[str, ...] = ()

    def __post_init__(self):
        if not isinstance(self.children, tuple):
            object.__setattr__(self, "children", tuple(self.children))

    @property
    def lhs(self) -> tuple[str, str]:
        return (self.source, self.symbol.name)

    def __str__(self):
        return " ".join([self.source, self.symbol.name, "->", *self.children])


@dataclass(frozen=True, slots=True)
class Tree:
    """A ground term. Children count must match the symbol's arity."""

    symbol: RankedSymbol
    children: tuple[Tree, ...] = ()

    def __post_init__(self):
        if not isinstance(self.children, tuple):
            object.__setattr__(self, "children", tuple(self.children))
        if len(self.children) != self.symbol.arity:
            raise ArityMismatch(self.symbol.name, self.symbol.arity, len(self.children))

    @property
    def size(self) -> int:
        n = 0
        stack = [self]
        while stack:
            t = stack.pop()
            n += 1
            stack.extend(t.children)
        return n

    def __str__(self):
        from .text import render_tree

        return render_tree(self)


class Dfta:
    """A top-down deterministic finite tree automaton.

    States and symbols are interned to dense indices (both in sorted name
    order) and the transition function is kept as one dict per state, mapping
    symbol index to a tuple of child state indices. Instances are immutable.
    """

    __slots__ = (
        "alphabet", "states", "initial", "rules",
        "_sidx", "_fidx", "_syms", "_delta", "_by_lhs",
    )

    def __init__(self, alphabet: Alphabet, states: Iterable[str], initial: str,
                 rules: Iterable[Rule]):
        states = list(states)
        seen = set()
        for s in states:
            if not s:
                raise ValidationError("state name must be non-empty")
            if s in seen:
                raise DuplicateState(s)
            seen.add(s)
        if initial not in seen:
            raise InitialNotAState(initial)

        self.alphabet = alphabet
        self.states: tuple[str, ...] = tuple(sorted(states))
        self.initial = initial
        self._sidx = {s: i for i, s in enumerate(self.states)}
        self._syms: tuple[RankedSymbol, ...] = alphabet.symbols
        self._fidx = {f.name: i for i, f in enumerate(self._syms)}

        by_lhs: dict[tuple[str, str], Rule] = {}
        for rule in rules:
            sym = alphabet.get(rule.symbol.name)
            if sym is None:
                raise UnknownSymbol(rule.symbol.name)
            if len(rule.children) != sym.arity:
                raise ArityMismatch(sym.name, sym.arity, len(rule.children))
            if rule.symbol.arity != sym.arity:
                raise ArityMismatch(sym.name, sym.arity, rule.symbol.arity)
            for s in (rule.source, *rule.children):
                if s not in self._sidx:
                    raise UnknownState(s)
            if rule.lhs in by_lhs:
                raise DuplicateLhs(*rule.lhs)
            by_lhs[rule.lhs] = rule

        self.rules: tuple[Rule, ...] = tuple(by_lhs[k] for k in sorted(by_lhs))
        self._by_lhs = by_lhs
        self._delta: list[dict[int, tuple[int, ...]]] = [{} for _ in self.states]
        for rule in self.rules:
            self._delta[self._sidx[rule.source]][self._fidx[rule.symbol.name]] = tuple(
                self._sidx[c] for c in rule.children
            )

    # -- lookups ---------------------------------------------------------

    def rule(self, state: str, symbol: str) -> Rule | None:
        self.index_of(state)
        return self._by_lhs.get((state, symbol))

    def rules_of(self, state: str) -> tuple[Rule, ...]:
        i = self.index_of(state)
        return tuple(self._by_lhs[(state, self._syms[f].name)] for f in self._delta[i])

    def transitions(self, state: str) -> dict[str, tuple[str, ...]]:
        """Enabled symbols of ``state`` mapped to the child states."""
        return {r.symbol.name: r.children for r in self.rules_of(state)}

    def index_of(self, state: str) -> int:
        try:
            return self._sidx[state]
        except KeyError:
            raise UnknownState(state) from None

    @property
    def size(self) -> int:
        """Letters across all rules plus the number of states."""
        return sum(2 + r.symbol.arity for r in self.rules) + len(self.states)

    def replace_rules(self, rules: Iterable[Rule]) -> Dfta:
        return Dfta(self.alphabet, self.states, self.initial, rules)

    # -- value semantics --------------------------------------------------

    def _key(self):
        return (self.alphabet, self.states, self.initial, self.rules)

    def __eq__(self, other):
        if not isinstance(other, Dfta):
            return NotImplemented
        return self._key() == other._key()

    def __hash__(self):
        return hash(self._key())

    def __repr__(self):
        return (f"Dfta({len(self.states)} states, {len(self.rules)} rules, "
                f"initial={self.initial!r})")


def new_dfta(alphabet: Alphabet, states: Iterable[str], initial: str,
             rules: Iterable[Rule]) -> Dfta:
    """Build and validate an automaton; raises a ``ValidationError`` subclass."""
    return Dfta(alphabet, states, initial, rules)


def _check_tree(dfta: Dfta, t: Tree) -> None:
    stack = [t]
    while stack:
        node = stack.pop()
        sym = dfta.alphabet.get(node.symbol.name)
        if sym is None:
            raise UnknownSymbol(node.symbol.name)
        if sym.arity != node.symbol.arity:
            raise ArityMismatch(sym.name, sym.arity, len(node.children))
        stack.extend(node.children)


def accepts(dfta: Dfta, q: str, t: Tree) -> bool:
    """True iff ``t`` is accepted by ``dfta`` started in state ``q``."""
    start = dfta.index_of(q)
    ok = run(dfta, start, t)
    if not ok:
        # the run may have stopped before reaching a foreign symbol
        _check_tree(dfta, t)
    return ok


def run(dfta: Dfta, state: int, t: Tree) -> bool:
    """The top-down run from state index ``state``; nodes it reaches are validated."""
    delta, fidx, syms = dfta._delta, dfta._fidx, dfta._syms
    stack = [(state, t)]
    while stack:
        state, node = stack.pop()
        f = fidx.get(node.symbol.name)
        if f is None or syms[f].arity != node.symbol.arity:
            _check_tree(dfta, node)
        kids = delta[state].get(f)
        if kids is None:
            return False
        stack.extend(zip(kids, node.children))
    return True
