import itertools
import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from dfta import (
    Conflict,
    EquivalenceChecker,
    Status,
    UnknownState,
    accepts,
    build_equation_system,
    check_equivalence,
    extract_witness,
    parse_dfta,
    render_tree,
    trim,
)
from dfta.oracle import (
    GenConfig,
    bounded_languages,
    enumerate_trees,
    pair_bfs_equiv,
    random_dfta,
)

configs = st.builds(
    lambda seed, n, arities, lo, hi: GenConfig(n, tuple(arities), (lo, lo + hi), seed=seed),
    st.integers(0, 2**64 - 1), st.integers(1, 12),
    st.lists(st.integers(0, 3), min_size=1, max_size=6), st.integers(0, 2), st.integers(0, 4),
)


def drive(sys):
    while True:
        res = sys.step()
        if res is not Status.CONTINUE:
            return res


# -- trim ------------------------------------------------------------------

def test_trim_ex1(ex1):
    tr = trim(ex1)
    assert tr.empty_states == {"dead", "u"}
    assert {str(r) for r in ex1.rules} - {str(r) for r in tr.base.rules} == {"u g -> dead"}
    assert len(tr.base.rules) == 8


def test_trim_no_empty_states():
    d = parse_dfta("alphabet: a/0 g/1\nstates: p q\ninitial: p\nrules:\n p a ->\n q g -> p\n")
    assert trim(d).base.rules == d.rules
    assert trim(d).empty_states == set()


def test_trim_zero_rules():
    d = parse_dfta("alphabet: a/0\nstates: p q\ninitial: p\nrules:\n")
    assert trim(d).empty_states == {"p", "q"}


@settings(max_examples=100, deadline=None)
@given(cfg=configs)
def test_trim_preserves_languages(cfg):
    d = random_dfta(GenConfig(min(cfg.state_count, 6), cfg.symbol_arities[:4], cfg.rules_per_state,
                              seed=cfg.seed))
    tr = trim(d)
    for t in enumerate_trees(d.alphabet, 5):
        for q in d.states:
            assert accepts(d, q, t) == accepts(tr.base, q, t)
    for r in tr.base.rules:
        assert all(c not in tr.empty_states for c in r.children)
    assert tr.empty_states == {q for q in d.states if not tr.base.rules_of(q)}


# -- equation system -----------------------------------------------------------

def test_build_system_ex1(ex1):
    sys = build_equation_system(trim(ex1), "p", "q")
    assert sys.body("p") == {"f": ("r", "r"), "a": ()}
    assert sys.body("q") == sys.body("p")
    assert sys.body("dead") == {}
    assert sys.body("u") == {}
    assert sys.pending_view() == [("p", "q", None)]
    assert sys.metrics == (6, 4, 7)

    sys = build_equation_system(trim(ex1), "p", "s")
    assert sys.body("s") == {"f": ("r", "r"), "b": ()}
    assert sys.pending_view() == [("p", "s", None)]


def test_step_ex1_equivalent(ex1):
    sys = build_equation_system(trim(ex1), "p", "q")
    assert sys.step() is Status.CONTINUE
    assert sys.last_merged
    assert sys.representative("p") == sys.representative("q")
    assert sys.pending_view() == [("r", "r", ("p", "q", "f", 0)), ("r", "r", ("p", "q", "f", 1))]
    assert sys.metrics == (5, 3, 7)
    assert sys.step() is Status.CONTINUE and not sys.last_merged
    assert sys.step() is Status.CONTINUE and not sys.last_merged
    assert sys.step() is Status.DONE


def test_step_ex1_conflict(ex1):
    sys = build_equation_system(trim(ex1), "p", "s")
    res = sys.step()
    assert isinstance(res, Conflict)
    assert (res.state_a, res.state_b, res.symbol) == ("p", "s", "a")
    assert res.pending.is_goal
    assert render_tree(extract_witness(sys, res, trim(ex1))) == "a"


def test_reflexive_goal_resolves_without_merge(ex1):
    sys = build_equation_system(trim(ex1), "r", "r")
    assert sys.pending_view() == [("r", "r", None)]
    assert sys.step() is Status.CONTINUE
    assert not sys.last_merged
    assert sys.step() is Status.DONE


def test_empty_pending_is_done(ex1):
    sys = build_equation_system(trim(ex1), "p", "q")
    sys.pending.clear()
    assert sys.step() is Status.DONE


def test_witness_one_level_deep():
    # x and x2 agree at the root; their first children differ
    d = parse_dfta(
        "alphabet: f/2 a/0 b/0 c/0\nstates: x x2 y y2 z\ninitial: x\nrules:\n"
        "  x f -> y z\n  x2 f -> y2 z\n  y a ->\n  y2 b ->\n  z c ->\n"
    )
    tr = trim(d)
    sys = build_equation_system(tr, "x", "x2")
    res = drive(sys)
    assert (res.state_a, res.state_b, res.symbol) == ("y", "y2", "a")
    w = extract_witness(sys, res, tr, tr.emptiness.witness)
    assert render_tree(w) == "f(a,c)"
    assert accepts(d, "x", w) and not accepts(d, "x2", w)


def test_witness_uses_side_holding_the_symbol():
    d = parse_dfta(
        "alphabet: f/2 a/0 b/0 c/0\nstates: x x2 y y2 z z2\ninitial: x\nrules:\n"
        "  x f -> z y\n  x2 f -> z2 y2\n  y b ->\n  y2 a ->\n  y2 b ->\n"
        "  z c ->\n  z2 c ->\n"
    )
    v = check_equivalence(d, "x", "x2")
    assert not v.equivalent
    assert render_tree(v.witness) == "f(c,a)"
    assert not accepts(d, "x", v.witness) and accepts(d, "x2", v.witness)


# -- check_equivalence ----------------------------------------------------------

@pytest.mark.parametrize("a, b, equivalent, witness", [
    ("p", "q", True, None),
    ("p", "s", False, "a"),
    ("u", "dead", True, None),
    ("p", "dead", False, "a"),
    ("dead", "p", False, "a"),
    ("r", "r", True, None),
    ("s", "r", False, "a"),
])
def test_check_ex1(ex1, a, b, equivalent, witness):
    v = check_equivalence(ex1, a, b)
    assert v.equivalent is equivalent
    assert (render_tree(v.witness) if v.witness else None) == witness
    assert pair_bfs_equiv(trim(ex1), a, b).equivalent is equivalent


def test_unknown_state(ex1):
    with pytest.raises(UnknownState):
        check_equivalence(ex1, "p", "zz")


def test_conflict_reported_for_one_empty_side(ex1):
    assert check_equivalence(ex1, "p", "u").conflict == ("p", "u", "a")


def test_untrimmed_empty_children_are_not_a_conflict():
    # v's g-rule leads into an empty state, so L(v) = L(w) although the symbol sets differ
    d = parse_dfta("alphabet: g/1 a/0\nstates: v w dead\ninitial: v\nrules:\n"
                   "  v g -> dead\n  v a ->\n  w a ->\n")
    assert check_equivalence(d, "v", "w").equivalent


def test_distinct_automata_via_disjoint_union():
    from dfta.cli import disjoint_union

    left = parse_dfta("alphabet: g/1 a/0\nstates: p\ninitial: p\nrules:\n p g -> p\n p a ->\n")
    right = parse_dfta("alphabet: g/1 a/0\nstates: s t\ninitial: s\nrules:\n"
                       " s g -> t\n s a ->\n t g -> s\n t a ->\n")
    u = disjoint_union(left, right)
    assert check_equivalence(u, "L_p", "R_s").equivalent


@settings(max_examples=300, deadline=None)
@given(cfg=configs)
def test_agrees_with_pair_bfs(cfg):
    d = random_dfta(cfg)
    checker = EquivalenceChecker(d)
    for a, b in itertools.combinations(d.states, 2):
        v = checker.check(a, b)
        assert v.equivalent == pair_bfs_equiv(checker.trimmed, a, b).equivalent
        if not v.equivalent:
            assert accepts(d, a, v.witness) != accepts(d, b, v.witness)


@settings(max_examples=200, deadline=None)
@given(cfg=configs)
def test_metrics_strictly_decrease(cfg):
    d = random_dfta(cfg)
    checker = EquivalenceChecker(d)
    bad = []

    def trace(sys, before, after):
        if sys.last_merged and not after < before:
            bad.append((before, after))
        assert min(after) >= 0

    for a, b in itertools.combinations(d.states, 2):
        checker.check(a, b, trace=trace)
    assert bad == []


@pytest.mark.parametrize("seed", range(60))
def test_equivalence_relation_laws(seed):
    d = random_dfta(GenConfig(7, (2, 1, 0, 0), (1, 3), seed=seed))
    checker = EquivalenceChecker(d)
    eq = {(a, b): checker.check(a, b).equivalent for a in d.states for b in d.states}
    for a in d.states:
        assert eq[a, a]
    for a, b in eq:
        assert eq[a, b] == eq[b, a]
    for a, b, c in itertools.product(d.states, repeat=3):
        if eq[a, b] and eq[b, c]:
            assert eq[a, c]


@pytest.mark.parametrize("seed", range(40))
def test_merged_classes_share_bounded_languages(seed):
    d = random_dfta(GenConfig(6, (2, 1, 0, 0), (1, 3), seed=seed))
    tr = trim(d)
    langs = bounded_languages(d, 7)
    for a, b in itertools.combinations(d.states, 2):
        if a in tr.empty_states or b in tr.empty_states:
            continue
        sys = build_equation_system(tr, a, b)
        if drive(sys) is Status.DONE:
            classes = {}
            for q in d.states:
                classes.setdefault(sys.representative(q), []).append(q)
            for members in classes.values():
                assert len({langs[q] for q in members}) == 1


@pytest.mark.parametrize("seed", range(40))
def test_rule_order_does_not_matter(seed):
    d = random_dfta(GenConfig(8, (2, 1, 0, 0), (0, 3), seed=seed))
    rules = list(d.rules)
    random.Random(seed).shuffle(rules)
    shuffled = d.replace_rules(rules)
    for a, b in itertools.combinations(d.states, 2):
        assert check_equivalence(d, a, b) == check_equivalence(shuffled, a, b)

