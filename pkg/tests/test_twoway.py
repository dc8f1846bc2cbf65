from itertools import product

import pytest

from pebbletk.corpus import copier, maprev
from pebbletk.errors import DivergenceError, MachineError, RejectionError
from pebbletk.monoid import Context, eval_morphism, image_submonoid, make_monoid, make_morphism
from pebbletk.symbols import parse_word
from pebbletk.twoway import (crossing_on_context, crossing_sequence,
                             make_transducer, output, production,
                             production_on_context, run, transition_morphism,
                             validate_total)


def sweeper():
    """One right sweep, one left sweep, then right to exit."""
    rules = [("q0", "^", "F", "R", "")]
    for a in "ab":
        rules += [("F", a, "F", "R", ""), ("B", a, "B", "L", ""),
                  ("E", a, "E", "R", "")]
    rules += [("F", "$", "B", "L", ""), ("B", "^", "E", "R", "")]
    return make_transducer("sweep", "ab", "ab", ("q0", "F", "B", "E"), "q0",
                           ("E",), rules)


def silent():
    # single state, so every letter's behavior is the identity element
    rules = [("S", "^", "S", "R", "")]
    for a in "ab":
        rules.append(("S", a, "S", "R", ""))
    return make_transducer("silent", "ab", "ab", ("S",), "S", ("S",), rules)


def test_copier_run_visits_each_position_once():
    t = copier(("a", "b", "c"), name="cop3")
    r = run(t, parse_word("abc"))
    positions = [p for _, p in r.steps]
    assert positions == [0, 1, 2, 3, 4]
    assert output(t, parse_word("abc")) == tuple("abc")


def test_maprev_output():
    m = maprev()
    assert output(m, parse_word("ab#cd")) == tuple("ba#dc")
    assert output(m, ()) == ()
    r = run(m, parse_word("ab#cd"))
    assert r.steps[0] == ("q0", 0) and r.steps[-1][1] == 6


def test_divergence_detected():
    rules = [("q0", "^", "S", "R", ""), ("S", "a", "q0", "L", "")]
    t = make_transducer("loop", "a", "a", ("q0", "S"), "q0", ("S",), rules)
    with pytest.raises(DivergenceError):
        run(t, ("a",))


def test_rejection_detected():
    rules = [("q0", "^", "S", "R", "")]
    t = make_transducer("stuck", "a", "a", ("q0", "S"), "q0", (), rules)
    with pytest.raises(RejectionError):
        run(t, ("a",))


def test_crossing_sequence_copier():
    t = copier(("a", "b"), name="cop")
    for w in [("a",), ("a", "b"), ("b", "a", "a")]:
        for i in range(1, len(w) + 1):
            assert crossing_sequence(t, w, i) == ("S",)
    with pytest.raises(IndexError):
        crossing_sequence(t, ("a",), 2)


def test_crossing_sequence_sweeper():
    # direct simulation oracle: right sweep in F, back in B, out in E
    t = sweeper()
    w = parse_word("abab")
    for i in range(1, 5):
        assert crossing_sequence(t, w, i) == ("F", "B", "E")


def test_production_examples():
    t = copier(("a", "b", "c"), name="cop3")
    assert production(t, parse_word("abc"), 2) == ("b",)
    # one-way machine: concatenating productions left to right = output
    w = parse_word("cab")
    cat = tuple(s for i in range(1, 4) for s in production(t, w, i))
    assert cat == output(t, w)


def test_production_run_decomposition_maprev():
    m = maprev(("a", "b"))
    w = parse_word("ab")
    pieces = [production(m, w, i) for i in range(1, 3)]
    assert sorted("".join(p) for p in pieces) == ["a", "b"]
    assert output(m, w) == tuple("ba")


def test_equal_contexts_equal_crossings():
    t = silent()
    mu = transition_morphism([t])
    # the silent machine's letters share one idempotent behavior, so the
    # two middle positions of aaab have equal context triples
    w = parse_word("aaab")
    ctx = {}
    for i in (2, 3):
        key = (eval_morphism(mu, w[:i - 1]), w[i - 1], eval_morphism(mu, w[i:]))
        ctx[i] = key
    assert ctx[2] == ctx[3]
    assert crossing_sequence(t, w, 2) == crossing_sequence(t, w, 3)


def test_one_way_behaviors_are_total_maps():
    t = copier(("a", "b"), name="cop")
    mu = transition_morphism([t])
    # copier: every nonempty word has the same image element
    vals = {eval_morphism(mu, w)
            for n in range(1, 4) for w in product(parse_word("ab"), repeat=n)}
    assert len(vals) == 1
    mu.target.check()


@pytest.mark.parametrize("machine", [maprev(("a", "b")), sweeper()])
def test_context_determinism_exhaustive(machine):
    mu = transition_morphism([machine])
    letters = sorted(machine.input_alphabet)[:2]
    seen = {}
    for n in range(7):
        for w in product(letters, repeat=n):
            for i in range(1, n + 1):
                key = (eval_morphism(mu, w[:i - 1]), w[i - 1],
                       eval_morphism(mu, w[i:]))
                val = (crossing_sequence(machine, w, i), production(machine, w, i))
                assert seen.setdefault(key, val) == val


def test_production_on_context_cross_check():
    m = maprev(("a", "b"))
    mu = transition_morphism([m])
    letters = sorted(m.input_alphabet)[:2]
    for n in range(1, 6):
        for w in product(letters, repeat=n):
            for i in range(1, n + 1):
                ctx = Context(eval_morphism(mu, w[:i - 1]), w[i - 1],
                              eval_morphism(mu, w[i:]))
                assert production_on_context(m, mu, ctx) == production(m, w, i)
                assert crossing_on_context(m, mu, ctx) == crossing_sequence(m, w, i)


def test_production_on_context_identity_witness():
    t = copier(("a", "b"), name="cop")
    mu = transition_morphism([t])
    ident = mu.target.identity
    assert production_on_context(t, mu, Context(ident, "a", ident)) == ("a",)
    assert production_on_context(t, mu, Context(ident, "a", ident)) == \
        production(t, ("a",), 1)


def test_lookaround_guards():
    # emits x when the suffix after the head contains no b, else y;
    # the guard morphism tracks "word has a b"
    two = make_monoid([[0, 1], [1, 1]], 0)
    nu = make_morphism(two, {"a": 0, "b": 1})
    delta = {("q0", "^", None): ("S", "R")}
    lam = {("q0", "^", None): ()}
    for a in "ab":
        for gl in (0, 1):
            for gr in (0, 1):
                delta[("S", a, (gl, gr))] = ("S", "R")
                lam[("S", a, (gl, gr))] = ("x",) if gr == 0 else ("y",)
    from pebbletk.twoway import TwoWayTransducer
    t = TwoWayTransducer("guarded", frozenset("ab"), frozenset("xy"),
                         ("q0", "S"), "q0", frozenset(("S",)), delta, lam, nu)
    t.validate()
    assert output(t, parse_word("aba")) == ("y", "x", "x")
    mu = transition_morphism([t])
    # determinism of crossings under the product with the guard morphism
    seen = {}
    for n in range(6):
        for w in product("ab", repeat=n):
            for i in range(1, n + 1):
                key = (eval_morphism(mu, w[:i - 1]), w[i - 1],
                       eval_morphism(mu, w[i:]))
                val = production(t, w, i)
                assert seen.setdefault(key, val) == val


def test_validate_total():
    assert validate_total(maprev(("a", "b")), 5, ("a", "b", "#")) == []
    rules = [("q0", "^", "S", "R", ""), ("S", "a", "S", "R", "")]
    t = make_transducer("partial", "ab", "ab", ("q0", "S"), "q0", ("S",), rules)
    bad = validate_total(t, 2)
    assert ("b",) in bad


def test_same_domain_enforced():
    from pebbletk.twoway import TwoWayTransducer
    delta = {("q0", "^", None): ("q0", "R")}
    lam = {}
    t = TwoWayTransducer("bad", frozenset("a"), frozenset("a"), ("q0",), "q0",
                         frozenset(), delta, lam)
    with pytest.raises(MachineError):
        t.validate()
