"""Line-oriented text format for automata and the ``f(t1,...,tk)`` term syntax.

Automaton files look like::

    # comments run to end of line
    alphabet: f/2 g/1 a/0 b/0
    states: p q r
    initial: p
    rules:
      p f -> r r
      p a ->
      r a ->

Alphabet, state and initial entries may spread over several lines; each rule
must sit on its own line. ``render_dfta`` emits a canonical form that
``parse_dfta`` reads back to an equal automaton.
"""

from __future__ import annotations

import re

from .core import Alphabet, Dfta, RankedSymbol, Rule, Tree
from .errors import (
    ArityMismatch,
    DftaError,
    DuplicateLhs,
    ParseError,
    SourceSpan,
    UnknownState,
    UnknownSymbol,
)

IDENT = re.compile(r"[A-Za-z_][A-Za-z0-9_]*\Z")
SYMDECL = re.compile(r"([A-Za-z_][A-Za-z0-9_]*)/([0-9]+)\Z")
SECTIONS = ("alphabet:", "states:", "initial:", "rules:")


def _check_ascii(text: str) -> None:
    for lineno, line in enumerate(text.split("\n"), 1):
        for col, ch in enumerate(line, 1):
            if ord(ch) > 127:
                raise ParseError(f"non-ASCII character {ch!r}", SourceSpan(lineno, col))


def _tokens(line: str) -> list[tuple[str, int]]:
    line = line.split("#", 1)[0]
    return [(m.group(), m.start() + 1) for m in re.finditer(r"\S+", line)]


def _ident(tok: str, span: SourceSpan, what: str) -> str:
    if not IDENT.match(tok):
        raise ParseError(f"invalid {what} name {tok!r}", span)
    return tok


def parse_dfta(text: str) -> Dfta:
    """Parse automaton text. Errors carry the line:column where they arise."""
    _check_ascii(text)

    section = None
    seen: list[str] = []
    symbols: list[tuple[RankedSymbol, SourceSpan]] = []
    states: list[tuple[str, SourceSpan]] = []
    initial: list[tuple[str, SourceSpan]] = []
    rule_lines: list[tuple[list[tuple[str, int]], int]] = []

    lines = text.split("\n")
    for lineno, line in enumerate(lines, 1):
        toks = _tokens(line)
        if toks and toks[0][0] in SECTIONS:
            kw, col = toks[0]
            expected = SECTIONS[len(seen)] if len(seen) < len(SECTIONS) else None
            if kw != expected:
                want = f"'{expected}'" if expected else "end of input"
                raise ParseError(f"unexpected section {kw!r}, expected {want}",
                                 SourceSpan(lineno, col))
            seen.append(kw)
            section = kw
            toks = toks[1:]
        if not toks:
            continue
        tok, col = toks[0]
        if section is None:
            raise ParseError(f"expected 'alphabet:', got {tok!r}", SourceSpan(lineno, col))
        if section == "alphabet:":
            for tok, col in toks:
                m = SYMDECL.match(tok)
                if not m:
                    raise ParseError(f"expected symbol declaration name/arity, got {tok!r}",
                                     SourceSpan(lineno, col))
                symbols.append((RankedSymbol(m[1], int(m[2])), SourceSpan(lineno, col)))
        elif section == "states:":
            for tok, col in toks:
                states.append((_ident(tok, SourceSpan(lineno, col), "state"),
                               SourceSpan(lineno, col)))
        elif section == "initial:":
            for tok, col in toks:
                initial.append((_ident(tok, SourceSpan(lineno, col), "state"),
                                SourceSpan(lineno, col)))
        else:
            rule_lines.append((toks, lineno))

    end = SourceSpan(len(lines), max(len(lines[-1]), 0) + 1)
    if len(seen) < len(SECTIONS):
        raise ParseError(f"missing section '{SECTIONS[len(seen)]}'", end)
    if not symbols:
        raise ParseError("alphabet needs at least one symbol", end)
    if not states:
        raise ParseError("states needs at least one state", end)
    if len(initial) != 1:
        span = initial[1][1] if initial else end
        raise ParseError("exactly one initial state required", span)

    try:
        alphabet = Alphabet(s for s, _ in symbols)
    except DftaError as e:
        span = next(sp for s, sp in reversed(symbols) if s.name == e.symbol)
        raise e.at(span)
    state_names = {s for s, _ in states}

    rules = []
    lhs_seen = set()
    for toks, lineno in rule_lines:
        first = SourceSpan(lineno, toks[0][1])
        if len(toks) < 3 or toks[2][0] != "->":
            raise ParseError("expected rule 'state symbol -> children...'", first)
        (src, src_col), (sym, sym_col) = toks[0], toks[1]
        _ident(src, first, "state")
        _ident(sym, SourceSpan(lineno, sym_col), "symbol")
        children = [(_ident(t, SourceSpan(lineno, c), "state"), c) for t, c in toks[3:]]
        symbol = alphabet.get(sym)
        if symbol is None:
            raise UnknownSymbol(sym).at(SourceSpan(lineno, sym_col))
        if len(children) != symbol.arity:
            raise ArityMismatch(sym, symbol.arity, len(children)).at(first)
        for name, c in [(src, src_col), *children]:
            if name not in state_names:
                raise UnknownState(name).at(SourceSpan(lineno, c))
        if (src, sym) in lhs_seen:
            raise DuplicateLhs(src, sym).at(first)
        lhs_seen.add((src, sym))
        rules.append(Rule(src, symbol, tuple(n for n, _ in children)))

    try:
        return Dfta(alphabet, [s for s, _ in states], initial[0][0], rules)
    except DftaError as e:
        name = getattr(e, "state", None)
        span = next((sp for s, sp in [*states, *initial] if s == name), initial[0][1])
        raise e.at(span)


def render_dfta(dfta: Dfta) -> str:
    lines = [
        "alphabet: " + " ".join(str(s) for s in dfta.alphabet),
        "states: " + " ".join(dfta.states),
        f"initial: {dfta.initial}",
        "rules:",
    ]
    lines += [f"  {rule}" for rule in dfta.rules]
    return "\n".join(lines) + "\n"


_TREE_TOKEN = re.compile(r"\s*(?:([A-Za-z_][A-Za-z0-9_]*)|([(),])|(\S))")


def _span_at(text: str, offset: int) -> SourceSpan:
    line = text.count("\n", 0, offset) + 1
    return SourceSpan(line, offset - (text.rfind("\n", 0, offset) + 1) + 1)


def parse_tree(text: str, alphabet: Alphabet) -> Tree:
    """Parse ``f(t1,...,tk)``; a nullary symbol may be written ``a`` or ``a()``."""
    _check_ascii(text)
    toks: list[tuple[str, str, int]] = []
    for m in _TREE_TOKEN.finditer(text):
        if m[3] is not None:
            raise ParseError(f"unexpected character {m[3]!r}", _span_at(text, m.start(3)))
        if m[1] is not None:
            toks.append(("ident", m[1], m.start(1)))
        elif m[2] is not None:
            toks.append((m[2], m[2], m.start(2)))
    toks.append(("eof", "", len(text)))
    pos = 0

    def take(kind: str) -> tuple[str, int]:
        nonlocal pos
        k, val, off = toks[pos]
        if k != kind:
            want = "symbol" if kind == "ident" else repr(kind)
            got = "end of input" if k == "eof" else repr(val)
            raise ParseError(f"expected {want}, got {got}", _span_at(text, off))
        pos += 1
        return val, off

    def make(name: str, off: int, kids: list[Tree]) -> Tree:
        sym = alphabet.get(name)
        if sym is None:
            raise UnknownSymbol(name).at(_span_at(text, off))
        if len(kids) != sym.arity:
            raise ArityMismatch(name, sym.arity, len(kids)).at(_span_at(text, off))
        return Tree(sym, tuple(kids))

    # explicit stack of open applications so deep terms don't hit the recursion limit
    stack: list[tuple[str, int, list[Tree]]] = []
    name, off = take("ident")
    while True:
        if toks[pos][0] == "(":
            pos += 1
            if toks[pos][0] != ")":
                stack.append((name, off, []))
                name, off = take("ident")
                continue
            pos += 1
        node = make(name, off, [])
        while True:
            if not stack:
                take("eof")
                return node
            stack[-1][2].append(node)
            if toks[pos][0] == ",":
                pos += 1
                name, off = take("ident")
                break
            take(")")
            node = make(*stack.pop())


def render_tree(tree: Tree) -> str:
    out: list[str] = []
    stack: list[Tree | str] = [tree]
    while stack:
        item = stack.pop()
        if isinstance(item, str):
            out.append(item)
        elif not item.children:
            out.append(item.symbol.name)
        else:
            out.append(item.symbol.name + "(")
            stack.append(")")
            for i in range(len(item.children) - 1, -1, -1):
                stack.append(item.children[i])
                if i:
                    stack.append(",")
    return "".join(out)
