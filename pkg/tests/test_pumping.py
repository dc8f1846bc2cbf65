import pytest

from pebbletk.corpus import (blind_cube, blind_eps_leaf, blind_pos1,
                             blind_padded_ulsq, last_eps_leaf, last_marked_echo,
                             last_padded_square, last_pos1, make, square, ulsq)
from pebbletk.errors import BudgetExceeded
from pebbletk.pebble import eval_any, plain
from pebbletk.pumping import (PumpabilityWitness, family_word, growth_slope,
                              is_pumpable_blind, is_pumpable_last,
                              machine_morphism, pumping_family, verify_witness,
                              witness_audit)


def test_ulsq_pumpable_with_quadratic_growth():
    m = ulsq()
    w = is_pumpable_blind(m)
    assert w is not None and w.flavor == "blind"
    assert [n.name for n in w.chain] == ["ulsq", "usharp"]
    mu = machine_morphism(m)
    assert verify_witness(w, mu)[0]
    vs, us = pumping_family(w, mu)
    slope = growth_slope(m, vs, us)
    assert abs(slope - 2) <= 0.35
    # Lemma-style lower bound: at least (X-2)^2 letters at every X >= 3
    for x in (4, 8, 16):
        word = family_word(vs, us, x)
        assert len(eval_any(m, word)) >= (x - 2) ** 2


def test_blind_absences():
    assert is_pumpable_blind(blind_pos1()) is None
    assert is_pumpable_blind(blind_eps_leaf()) is None
    assert is_pumpable_blind(blind_padded_ulsq()) is None


def test_copier_k1_pumpable():
    m = make("copier")
    w = is_pumpable_blind(m)
    assert w is not None and w.k == 1
    mu = machine_morphism(m)
    vs, us = pumping_family(w, mu)
    slope = growth_slope(m, vs, us)
    assert abs(slope - 1) <= 0.35


def test_cube_pumpable_cubic():
    m = blind_cube()
    w = is_pumpable_blind(m)
    assert w is not None and w.k == 3
    mu = machine_morphism(m)
    vs, us = pumping_family(w, mu)
    assert abs(growth_slope(m, vs, us) - 3) <= 0.35


def test_square_pumpable():
    m = square()
    w = is_pumpable_last(m)
    assert w is not None and w.flavor == "last"
    mu = machine_morphism(m)
    assert verify_witness(w, mu)[0]
    vs, us = pumping_family(w, mu)
    assert abs(growth_slope(m, vs, us) - 2) <= 0.35


def test_last_absences():
    assert is_pumpable_last(last_pos1()) is None
    assert is_pumpable_last(last_eps_leaf()) is None
    assert is_pumpable_last(last_marked_echo()) is None
    assert is_pumpable_last(last_padded_square()) is None


def test_budget_exceeded_is_distinct():
    with pytest.raises(BudgetExceeded):
        is_pumpable_last(last_padded_square(), budget=50)


def test_witness_audit_record():
    m = ulsq()
    w = is_pumpable_blind(m)
    mu = machine_morphism(m)
    text = witness_audit(w, mu)
    assert "flavor: blind" in text
    assert "chain: ulsq -> usharp" in text
    assert "sigma:" in text and "letters:" in text


def test_witness_idempotents():
    m = square()
    w = is_pumpable_last(m)
    mu = machine_morphism(m)
    for e in w.idempotents(mu):
        assert mu.target.is_idempotent(e)
