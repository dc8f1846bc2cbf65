from itertools import product

import pytest

from pebbletk.corpus import (blind_cube, blind_eps_leaf, blind_pos1,
                             blind_padded_ulsq, copier, last_marked_echo,
                             last_padded_square, last_pos1, make, square, ulsq)
from pebbletk.errors import ExplicationError, MachineError, PumpableViolation
from pebbletk.minimize import (RunDescriptor, equivalence_check, explicate,
                               minimize, remove_layer_blind, remove_layer_last)
from pebbletk.pebble import (BLIND, PebbleMachine, eval_any, evaluate, height,
                             plain)
from pebbletk.twoway import output


def test_remove_blind_pos1():
    m = blind_pos1()
    r = remove_layer_blind(m)
    assert height(r) == height(m) - 1 == 1
    assert equivalence_check(m, r, 8) is None


def test_remove_blind_padded():
    m = blind_padded_ulsq()
    r = remove_layer_blind(m)
    assert height(r) == 2
    assert equivalence_check(m, r, 7) is None


def test_remove_blind_refuses_pumpable():
    with pytest.raises(PumpableViolation):
        remove_layer_blind(ulsq())


def test_remove_blind_requires_height_2():
    with pytest.raises(MachineError):
        remove_layer_blind(make("copier"))


def test_remove_last_pos1():
    m = last_pos1()
    r = remove_layer_last(m)
    assert height(r) == 1
    assert equivalence_check(m, r, 8) is None


def test_remove_last_marked_echo():
    m = last_marked_echo()
    r = remove_layer_last(m)
    assert height(r) == 1
    assert equivalence_check(m, r, 7) is None


def test_remove_last_padded():
    m = last_padded_square()
    r = remove_layer_last(m)
    assert height(r) == 2
    assert equivalence_check(m, r, 6) is None


def test_remove_last_refuses_pumpable():
    with pytest.raises(PumpableViolation):
        remove_layer_last(square())


def test_minimize_examples():
    m, ell, removals = minimize(ulsq())
    assert ell == 2 and removals == 0 and m is not None

    m, ell, removals = minimize(blind_padded_ulsq())
    assert ell == 2 and removals == 1

    m, ell, removals = minimize(make("copier"))
    assert ell == 1 and removals == 0

    m, ell, removals = minimize(last_padded_square())
    assert ell == 2 and removals == 1

    m, ell, removals = minimize(blind_cube())
    assert ell == 3 and removals == 0


def test_minimize_idempotent():
    for source in (blind_padded_ulsq(), blind_pos1(), last_padded_square()):
        m1, ell1, _ = minimize(source)
        m2, ell2, removals2 = minimize(m1)
        assert ell2 == ell1 and removals2 == 0
        if height(m1) >= 1:
            assert equivalence_check(m1, m2, 5) is None


def test_minimize_reaches_floor():
    m, ell, removals = minimize(blind_eps_leaf())
    assert ell == 1 and removals == 1
    assert eval_any(m, ("a", "b")) == ()


def test_equivalence_first_counterexample():
    m1 = make("mapRev")
    m2 = make("copier")
    assert equivalence_check(m1, m1, 5) is None
    assert equivalence_check(m1, m2, 4) == ("a", "b")


def test_run_descriptor_fields():
    d = RunDescriptor("slice", 3)
    assert d.kind == "slice" and d.index == 3


def test_lemma_assertions_never_trip_on_certified_machines():
    # every non-pumpable corpus machine evaluates everywhere after removal
    # without tripping the key-lemma assertions
    cases = [
        (blind_pos1(), remove_layer_blind, 7),
        (blind_padded_ulsq(), remove_layer_blind, 6),
        (last_pos1(), remove_layer_last, 7),
        (last_marked_echo(), remove_layer_last, 6),
        (last_padded_square(), remove_layer_last, 5),
    ]
    for machine, remover, max_len in cases:
        reduced = remover(machine)
        for n in range(max_len + 1):
            for w in product("ab", repeat=n):
                evaluate(reduced, plain(w))  # must not raise


def test_explicate_normal_copy_is_isomorphic():
    cop = make("copier")
    ex = explicate(cop)
    assert ex.machine is cop.root


def test_explicate_sim_blind_descriptor_bound():
    m = blind_pos1()
    r = remove_layer_blind(m)
    ex = explicate(r, support_len=6)
    head = m.root
    child_states = len(m.children[0].root.states)
    max_lam = max(len(v) for v in head.lam.values())
    max_slot = 2 ** 6  # generous frontier-slot cap for the support words
    phases = 4
    bound = (phases * len(head.states) * (max_lam + 1) * len(m.children)
             * (max_slot + 1) * (child_states + 1))
    assert ex.descriptors <= bound
    for n in range(7):
        for w in product("ab", repeat=n):
            assert output(ex.machine, ex.annotate(w)) == r.root.output(w)


def test_explicate_after_removal_matches():
    m = blind_padded_ulsq()
    r = remove_layer_blind(m)
    ex = explicate(r, support_len=6)
    for n in range(7):
        for w in product("ab", repeat=n):
            assert output(ex.machine, ex.annotate(w)) == r.root.output(w)


def test_explicate_last_not_supported():
    r = remove_layer_last(last_pos1())
    with pytest.raises(ExplicationError):
        explicate(r)
