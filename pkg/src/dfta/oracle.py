"""Brute-force reference procedures and random instance generators.

Nothing here shares code with the union-find solver; the point is to have
independent answers to compare it against.
"""

from __future__ import annotations

import itertools
import random
from collections import deque
from dataclasses import dataclass
from functools import lru_cache
from typing import Iterator

from .core import Alphabet, Dfta, RankedSymbol, Rule, Tree, run
from .equivalence import TrimmedDfta, Verdict


def _compositions(total: int, parts: int) -> Iterator[tuple[int, ...]]:
    """Ordered ways to write ``total`` as ``parts`` positive integers."""
    if parts == 0:
        if total == 0:
            yield ()
        return
    if total < parts:
        return
    for cuts in itertools.combinations(range(1, total), parts - 1):
        bounds = (0, *cuts, total)
        yield tuple(bounds[i + 1] - bounds[i] for i in range(parts))


def _tree_layers(alphabet: Alphabet, max_nodes: int) -> Iterator[list[tuple[str, Tree]]]:
    """Trees of exactly 1, 2, ... nodes, each layer sorted by rendered form."""
    layers: list[list[tuple[str, Tree]]] = [[]]
    for n in range(1, max_nodes + 1):
        layer = []
        for sym in alphabet:
            if sym.arity == 0:
                if n == 1:
                    layer.append((sym.name, Tree(sym)))
                continue
            for comp in _compositions(n - 1, sym.arity):
                for kids in itertools.product(*(layers[c] for c in comp)):
                    text = sym.name + "(" + ",".join(s for s, _ in kids) + ")"
                    layer.append((text, Tree(sym, tuple(t for _, t in kids))))
        layer.sort(key=lambda p: p[0])
        layers.append(layer)
        yield layer


def iter_trees(alphabet: Alphabet, max_nodes: int) -> Iterator[Tree]:
    for layer in _tree_layers(alphabet, max_nodes):
        for _, t in layer:
            yield t


def enumerate_trees(alphabet: Alphabet, max_nodes: int) -> list[Tree]:
    """All ground trees with at most ``max_nodes`` nodes.

    Ordered by node count, then by rendered form.
    """
    if max_nodes < 1:
        raise ValueError("max_nodes must be positive")
    return list(iter_trees(alphabet, max_nodes))


def count_trees(alphabet: Alphabet, nodes: int) -> int:
    """Number of trees with exactly ``nodes`` nodes, by the size recurrence."""

    @lru_cache(maxsize=None)
    def count(n: int) -> int:
        total = 0
        for sym in alphabet:
            if sym.arity == 0:
                total += n == 1
            else:
                for comp in _compositions(n - 1, sym.arity):
                    prod = 1
                    for c in comp:
                        prod *= count(c)
                    total += prod
        return total

    return count(nodes)


def bounded_equiv(dfta: Dfta, a: str, b: str, max_nodes: int, *,
                  exhaustive: bool = False) -> Tree | None:
    """First enumerated tree accepted from exactly one of ``a``, ``b``, or None.

    A tree refutes equivalence; None only says nothing small enough differs.
    Unless ``exhaustive`` is set, ``bounded_signatures`` is consulted first so
    that a None answer does not need to walk every tree.
    """
    ia, ib = dfta.index_of(a), dfta.index_of(b)
    if a == b:
        return None
    if not exhaustive:
        masks = acceptance_masks(dfta, max_nodes)
        if all((m >> ia & 1) == (m >> ib & 1) for m in masks):
            return None
    for t in iter_trees(dfta.alphabet, max_nodes):
        if run(dfta, ia, t) != run(dfta, ib, t):
            return t
    return None


def acceptance_masks(dfta: Dfta, max_nodes: int) -> dict[int, int]:
    """Sets of states (bitmasks over state indices) that accept a common tree.

    Maps each non-empty mask realised by some tree of at most ``max_nodes``
    nodes to the smallest such tree's size. Trees are grouped by the set of
    states accepting them, so this agrees with full enumeration without
    building every tree.
    """
    n = len(dfta.states)
    per_symbol = []
    for sym in dfta.alphabet:
        rules = [(q, kids) for q in range(n)
                 for kids in [dfta._delta[q].get(dfta._fidx[sym.name])] if kids is not None]
        if rules:
            per_symbol.append((sym.arity, rules))

    tables: dict[tuple[int, int, int], int] = {}

    def sources(si: int, pos: int, mask: int) -> int:
        # states whose rule for this symbol has its pos-th child inside mask
        key = (si, pos, mask)
        got = tables.get(key)
        if got is None:
            got = 0
            for q, kids in per_symbol[si][1]:
                if mask >> kids[pos] & 1:
                    got |= 1 << q
            tables[key] = got
        return got

    best: dict[int, int] = {}
    layers: list[list[int]] = [[]]
    for size in range(1, max_nodes + 1):
        found: set[int] = set()
        for si, (arity, rules) in enumerate(per_symbol):
            enabled = 0
            for q, _ in rules:
                enabled |= 1 << q
            if arity == 0:
                if size == 1:
                    found.add(enabled)
                continue
            for comp in _compositions(size - 1, arity):
                if any(not layers[c] for c in comp):
                    continue
                frontier = [enabled]
                for pos, c in enumerate(comp):
                    frontier = list({acc & sources(si, pos, m)
                                     for acc in frontier for m in layers[c]} - {0})
                    if not frontier:
                        break
                found.update(frontier)
        layer = sorted(m for m in found if m and m not in best)
        for m in layer:
            best[m] = size
        layers.append(layer)
    return best


def bounded_signatures(dfta: Dfta, max_nodes: int) -> dict[str, tuple[bool, ...]]:
    """Per state, which realisable acceptance sets it belongs to.

    Two states get equal signatures iff no tree of at most ``max_nodes``
    nodes tells them apart.
    """
    masks = sorted(acceptance_masks(dfta, max_nodes))
    return {q: tuple(bool(m >> i & 1) for m in masks) for i, q in enumerate(dfta.states)}


def pair_bfs_equiv(trimmed: TrimmedDfta, a: str, b: str) -> Verdict:
    """Breadth-first search over state pairs reachable from ``(a, b)``."""
    base = trimmed.base
    base.index_of(a)
    base.index_of(b)
    if a == b:
        return Verdict(True)
    empty = trimmed.empty_states
    if a in empty and b in empty:
        return Verdict(True)
    if a in empty or b in empty:
        w = trimmed.witness(b if a in empty else a)
        return Verdict(False, w, (a, b, w.symbol.name))

    parent: dict[tuple[str, str], tuple | None] = {(a, b): None}
    queue = deque([(a, b)])
    while queue:
        x, y = queue.popleft()
        tx, ty = base.transitions(x), base.transitions(y)
        if tx.keys() != ty.keys():
            sym = min(tx.keys() ^ ty.keys())
            side = 0 if sym in tx else 1
            holder = x if side == 0 else y
            tree = Tree(base.alphabet[sym],
                        tuple(trimmed.witness(c) for c in base.transitions(holder)[sym]))
            link = parent[(x, y)]
            while link is not None:
                (px, py), f, i = link
                kids = [trimmed.witness(c) for c in base.transitions(px if side == 0 else py)[f]]
                kids[i] = tree
                tree = Tree(base.alphabet[f], tuple(kids))
                link = parent[(px, py)]
            return Verdict(False, tree, (x, y, sym))
        for f in sorted(tx):
            for i, pair in enumerate(zip(tx[f], ty[f])):
                if pair not in parent:
                    parent[pair] = ((x, y), f, i)
                    queue.append(pair)
    return Verdict(True)


def naive_nonempty(dfta: Dfta) -> frozenset[str]:
    """Least fixpoint of the emptiness equations, by plain iteration."""
    ne: set[str] = set()
    changed = True
    while changed:
        changed = False
        for r in dfta.rules:
            if r.source not in ne and all(c in ne for c in r.children):
                ne.add(r.source)
                changed = True
    return frozenset(ne)


def bounded_languages(dfta: Dfta, max_nodes: int) -> dict[str, frozenset[Tree]]:
    """Each state's language cut down to trees of at most ``max_nodes`` nodes.

    Computed as the least solution of ``L(q) = U f(L(q1), ..., L(qk))`` by
    iterating from all-empty sets until nothing changes.
    """
    lang: dict[str, dict[Tree, int]] = {q: {} for q in dfta.states}
    changed = True
    while changed:
        changed = False
        for r in dfta.rules:
            pools = [list(lang[c].items()) for c in r.children]
            for combo in itertools.product(*pools):
                size = 1 + sum(s for _, s in combo)
                if size > max_nodes:
                    continue
                t = Tree(r.symbol, tuple(t for t, _ in combo))
                if t not in lang[r.source]:
                    lang[r.source][t] = size
                    changed = True
    return {q: frozenset(ts) for q, ts in lang.items()}


# -- random instances -----------------------------------------------------

@dataclass(frozen=True)
class GenConfig:
    state_count: int
    symbol_arities: tuple[int, ...]
    rules_per_state: tuple[int, int] = (0, 2)
    seed: int = 0
    max_arity: int = 4

    def __post_init__(self):
        if self.state_count < 1:
            raise ValueError("state_count must be at least 1")
        if not self.symbol_arities:
            raise ValueError("need at least one symbol")
        if any(k < 0 or k > self.max_arity for k in self.symbol_arities):
            raise ValueError(f"arities must lie in 0..{self.max_arity}")
        lo, hi = self.rules_per_state
        if lo < 0 or hi < lo:
            raise ValueError(f"bad rules-per-state range {lo}..{hi}")
        if not 0 <= self.seed < 2**64:
            raise ValueError("seed must be an unsigned 64-bit integer")


def symbol_names(arities) -> list[str]:
    """Constants are named a, b, c, ...; other symbols f, g, h, ..."""
    leaves, nodes = iter("abcde"), iter("fghijklmnopqrstuvwxyz")
    return [next(leaves if k == 0 else nodes, None) or f"s{i}"
            for i, k in enumerate(arities)]


def random_dfta(cfg: GenConfig) -> Dfta:
    """Deterministic in ``cfg``: equal configs give equal automata."""
    rng = random.Random(cfg.seed)
    names = symbol_names(cfg.symbol_arities)
    alphabet = Alphabet(RankedSymbol(n, k) for n, k in zip(names, cfg.symbol_arities))
    syms = alphabet.symbols
    states = [f"q{i}" for i in range(cfg.state_count)]
    lo, hi = cfg.rules_per_state
    rules = []
    for q in states:
        count = rng.randint(min(lo, len(syms)), min(hi, len(syms)))
        for sym in rng.sample(syms, count):
            rules.append(Rule(q, sym, tuple(rng.choice(states) for _ in range(sym.arity))))
    return Dfta(alphabet, states, states[0], rules)


def random_equiv_pair(cfg: GenConfig) -> tuple[Dfta, str, str]:
    """A random automaton plus a fresh copy of one of its states."""
    dfta = random_dfta(cfg)
    rng = random.Random(f"{cfg.seed}:clone")
    x = rng.choice(dfta.states)
    clone = x + "_dup"
    while clone in dfta._sidx:
        clone += "_"
    rules = [*dfta.rules, *(Rule(clone, r.symbol, r.children) for r in dfta.rules_of(x))]
    return Dfta(dfta.alphabet, [*dfta.states, clone], dfta.initial, rules), x, clone


def drop_rule(dfta: Dfta, state: str, symbol: str) -> Dfta:
    return dfta.replace_rules(r for r in dfta.rules if r.lhs != (state, symbol))


def parallel_chains(n: int) -> tuple[Dfta, str, str]:
    """Two identical chains of length ``n`` over a binary symbol.

    ``x_i f -> x_{i+1} z`` and ``x_i a ->`` (likewise for ``y``); checking
    ``(x0, y0)`` merges every ``x_i`` with ``y_i``.
    """
    f, a = RankedSymbol("f", 2), RankedSymbol("a", 0)
    states = ["z"]
    rules = [Rule("z", a)]
    for side in "xy":
        for i in range(n):
            q = f"{side}{i}"
            states.append(q)
            rules.append(Rule(q, a))
            if i + 1 < n:
                rules.append(Rule(q, f, (f"{side}{i + 1}", "z")))
    return Dfta(Alphabet([f, a]), states, "x0", rules), "x0", "y0"
