from itertools import product

import pytest

from pebbletk.corpus import blind_cube, square, ulsq, zebra
from pebbletk.errors import MachineError, PebbletkError
from pebbletk.pebble import (MarkedWord, PebbleMachine, eval_any, eval_blind,
                             eval_last, eval_lastlast, evaluate, height, mark,
                             plain, submachines, validate_structure,
                             validate_total)
from pebbletk.symbols import parse_word, render_word
from pebbletk.twoway import run_trace


def test_mark():
    m = mark("ab", 1)
    assert m.letters() == ("a!", "b")
    assert mark("ab", 2).letters() == ("a", "b!")
    with pytest.raises(IndexError):
        mark("a", 2)
    with pytest.raises(IndexError):
        mark("ab", 0)


def test_marked_word_two_marks():
    w = MarkedWord(tuple("abc"), recent=3, older=1)
    assert w.letters() == ("a!!", "b", "c!")
    with pytest.raises(PebbletkError):
        MarkedWord(tuple("ab"), recent=1, older=1)


def naive_blind(machine, word):
    """Independent recursive definition of the blind semantics (no caching,
    no shared evaluator code)."""
    word = tuple(word)
    out = []
    for _, _, piece in run_trace(machine.root, word):
        for sym in piece:
            if machine.is_leaf():
                out.append(sym)
            else:
                child = next(c for c in machine.children if c.name == sym)
                out.extend(naive_blind(child, word))
    return tuple(out)


def test_blind_matches_naive_oracle():
    machines = [ulsq(("a", "b")), blind_cube(("a", "b"))]
    for m in machines:
        for n in range(6):
            for w in product("ab", repeat=n):
                assert eval_blind(m, w) == naive_blind(m, w)


def test_height():
    assert height(ulsq()) == 2
    assert height(square()) == 2
    assert height(zebra(1)) == 3
    assert height(zebra(2)) == 5
    leaf = ulsq().children[0]
    assert height(leaf) == 1


def test_last_child_sees_exactly_one_mark():
    # instrument: every callee input along square's evaluation has exactly
    # the calling position marked
    sq = square()
    seen = []

    class Spy:
        def __init__(self, inner):
            self.inner = inner
            self.name = inner.name
            self.root = inner.root
            self.children = inner.children

        def resolve_child(self, name):
            return self.inner.resolve_child(name)

        def is_leaf(self):
            return self.inner.is_leaf()

        def child_by_name(self):
            return self.inner.child_by_name()

    word = tuple("aba")
    out = evaluate(sq, plain(word))
    # re-derive the expected marked inputs from the head trace
    for _, pos, piece in run_trace(sq.root, word):
        for _ in piece:
            seen.append(pos)
    assert seen == [1, 2, 3]
    assert out == eval_last(sq, word)


def test_output_size_bound():
    # |f(u)| <= C |u|^k with C measured at |u| = 4
    cases = [(ulsq(("a", "b")), 2), (square(), 2), (blind_cube(("a", "b")), 3)]
    for m, k in cases:
        c = max(len(eval_any(m, w)) for w in product("ab", repeat=4)) / 4 ** k
        for n in range(4, 9):
            for w in product("ab", repeat=n):
                assert len(eval_any(m, w)) <= c * n ** k + 1e-9


def test_lastlast_height1_degenerates():
    from pebbletk.corpus import copier
    from pebbletk.pebble import LASTLAST
    t = copier(("a", "b"), name="cop2", marks=2)
    m = PebbleMachine(LASTLAST, "deg", t)
    assert eval_lastlast(m, parse_word("ab")) == tuple("ab")


def test_validate_structure_rejects_bad_alphabet():
    u = ulsq()
    bad = PebbleMachine("blind", "bad", u.root, (u.children[0], u.children[0]))
    with pytest.raises(MachineError):
        validate_structure(bad)


def test_totality_corpus():
    assert validate_total(ulsq(("a", "b")), 5) == []
    assert validate_total(square(), 5) == []


def test_eval_variant_guards():
    with pytest.raises(MachineError):
        eval_last(ulsq(), ("a",))
    with pytest.raises(MachineError):
        eval_blind(square(), ("a",))
