import random
from itertools import product

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from pebbletk.errors import AlphabetError
from pebbletk.monoid import (SIGN, SIGN_ELEMS, Context, context_word,
                             eval_morphism, image_submonoid, is_idempotent,
                             make_monoid, make_morphism, product_morphism)

from conftest import random_morphism

# sign monoid indices: 0 -> 1, 1 -> -1, 2 -> 0
P, M, Z = 0, 1, 2
sign_mu = make_morphism(SIGN, {"p": P, "m": M, "z": Z})


def test_sign_monoid_table():
    SIGN.check()
    assert SIGN_ELEMS[SIGN.mul(M, M)] == 1
    assert SIGN_ELEMS[SIGN.mul(M, Z)] == 0


def test_eval_examples():
    # (-1)(-1)0 -> 0
    assert eval_morphism(sign_mu, ("m", "m", "z")) == Z
    assert eval_morphism(sign_mu, ()) == SIGN.identity
    with pytest.raises(AlphabetError):
        eval_morphism(sign_mu, ("q",))


def test_is_idempotent_examples():
    assert is_idempotent(SIGN, Z)
    assert not is_idempotent(SIGN, M)
    assert is_idempotent(SIGN, P)
    with pytest.raises(IndexError):
        is_idempotent(SIGN, 7)


def brute_parenthesizations(mono, vals):
    """All results of multiplying vals under every parenthesization."""
    if len(vals) == 1:
        return {vals[0]}
    out = set()
    for cut in range(1, len(vals)):
        for a in brute_parenthesizations(mono, vals[:cut]):
            for b in brute_parenthesizations(mono, vals[cut:]):
                out.add(mono.mul(a, b))
    return out


def test_eval_agrees_with_any_parenthesization():
    rng = random.Random(5)
    for _ in range(25):
        mu = random_morphism(rng)
        letters = sorted(mu.letter_image)[:2]
        for n in range(1, 7):
            for w in product(letters, repeat=n):
                vals = [mu.letter_image[a] for a in w]
                results = brute_parenthesizations(mu.target, vals)
                assert results == {eval_morphism(mu, w)}


def test_image_two_element():
    two = make_monoid([[0, 1], [1, 1]], 0)  # ({1, 0}, *) with 1 -> index 0
    mu = make_morphism(two, {"a": 1})
    assert image_submonoid(mu) == {0: (), 1: ("a",)}


def test_image_sign_closure():
    mu = make_morphism(SIGN, {"a": M, "b": Z})
    img = image_submonoid(mu)
    assert img[SIGN.identity] == ()
    assert img[M] == ("a",)
    assert img[Z] == ("b",)
    assert set(img) == {P, M, Z}  # (-1)*(-1) = 1 closes the image


def test_image_reachability_oracle(rng):
    # every returned element reachable, every reachable element returned
    for _ in range(20):
        mu = random_morphism(rng, max_size=4)
        img = image_submonoid(mu)
        reachable = set()
        letters = sorted(mu.letter_image)
        for n in range(mu.target.size + 1):
            for w in product(letters, repeat=n):
                reachable.add(eval_morphism(mu, w))
        assert set(img) == reachable
        for e, w in img.items():
            assert eval_morphism(mu, w) == e
        assert img[mu.target.identity] == ()


def test_witnesses_shortest_and_lex(rng):
    for _ in range(10):
        mu = random_morphism(rng)
        letters = sorted(mu.letter_image)
        best = {}
        for n in range(mu.target.size + 1):
            for w in product(letters, repeat=n):
                e = eval_morphism(mu, w)
                if e not in best:
                    best[e] = w
        assert best == image_submonoid(mu)


def test_product_morphism_unary():
    out = product_morphism([sign_mu])
    for n in range(4):
        for w in product("pmz", repeat=n):
            pass  # isomorphic copy: tables agree up to the index renaming
    assert out.target.size == SIGN.size
    assert [eval_morphism(out, ("m", "m"))] == [eval_morphism(out, ("p",))]


def test_product_morphism_diagonal():
    out = product_morphism([sign_mu, sign_mu])
    img = image_submonoid(out)
    # diagonal image: one product element per sign element
    assert len(img) == 3
    for w in [("m",), ("z",), ("m", "z"), ("p", "m")]:
        v = eval_morphism(out, w)
        assert v in img


def test_product_morphism_componentwise_oracle(rng):
    for _ in range(8):
        m1 = random_morphism(rng, max_size=4)
        m2_raw = random_morphism(rng, max_size=4)
        # align alphabets
        shared = sorted(set(m1.letter_image) & set(m2_raw.letter_image))
        if not shared:
            continue
        m1 = make_morphism(m1.target, {a: m1.letter_image[a] for a in shared})
        m2 = make_morphism(m2_raw.target, {a: m2_raw.letter_image[a] for a in shared})
        prod = product_morphism([m1, m2])
        sizes = (m1.target.size, m2.target.size)
        for n in range(5):
            for w in product(shared, repeat=n):
                v = eval_morphism(prod, w)
                pair = (v // sizes[1], v % sizes[1])
                assert pair == (eval_morphism(m1, w), eval_morphism(m2, w))


@settings(max_examples=60, deadline=None)
@given(st.lists(st.sampled_from("pmz"), max_size=8), st.integers(0, 8))
def test_morphism_splits_products(word, cut):
    cut = min(cut, len(word))
    u, v = word[:cut], word[cut:]
    assert eval_morphism(sign_mu, word) == SIGN.mul(
        eval_morphism(sign_mu, u), eval_morphism(sign_mu, v))


def test_context_word():
    ctx = Context(SIGN.identity, "m", SIGN.identity)
    word, i = context_word(sign_mu, ctx)
    assert word == ("m",) and i == 1
