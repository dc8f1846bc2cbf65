import random

import pytest

from pebbletk.forest import (Forest, Node, build_forest, dependent, frontier,
                             iterable_nodes, lemma3_interval, ob_do, ob_up,
                             observes, origin, parse_forest, print_forest,
                             skeleton, verify_forest)
from pebbletk.monoid import SIGN, make_monoid, make_morphism

from conftest import random_morphism

# sign morphism: p -> 1, m -> -1, z -> 0
sign_mu = make_morphism(SIGN, {"p": 0, "m": 1, "z": 2})
TRIV = make_monoid([[0]], 0)
triv_mu = make_morphism(TRIV, {c: 0 for c in "abcdefgh"})


def leafs(letters, start=1):
    return [Node(triv_mu.letter_image[c], start + i, start + i, letter=c)
            for i, c in enumerate(letters)]


def test_trivial_monoid_pair():
    f = build_forest(triv_mu, "aa")
    assert f.height == 2
    assert verify_forest(triv_mu, f)
    assert print_forest(f) == "(aa)"


def test_empty_word():
    f = build_forest(triv_mu, "")
    assert f.height == 0 and f.root is None
    assert verify_forest(triv_mu, f)


def test_sign_word_valid():
    # the running example word (-1)(-1)0(-1)000000
    w = tuple("mmzm") + tuple("z") * 6
    f = build_forest(sign_mu, w)
    assert verify_forest(sign_mu, f)
    assert f.height <= 3 * SIGN.size


def figure5_forest():
    """Hand transcription of the paper-style forest for mmzm z^6:
    <<mm> <z <m <zzzzz>> z>> with the 5-child node idempotent."""
    text = "((mm)(z(m(zzzzz))z))"
    return parse_forest(sign_mu, text)


def test_figure5_forest_verifies():
    f = figure5_forest()
    assert f.word == tuple("mmzmzzzzzz")
    assert verify_forest(sign_mu, f)


def test_figure5_skeleton_and_origin():
    f = figure5_forest()
    # the node over (m (zzzzz)) is the middle child of an idempotent node
    right = f.root.children[1]
    nc = right.children[1]
    assert nc.letter is None and nc.first == 4 and nc.last == 9
    ske = skeleton(f, nc)
    l1 = nc.children[1]
    assert ske == {nc, nc.children[0], l1, l1.children[0], l1.children[-1]}
    assert frontier(f, nc) == (4, 5, 9)
    assert nc in iterable_nodes(f)
    for i in (4, 5, 9):
        assert origin(f, i) is nc


def test_verify_rejects_bad_idempotent():
    # 3 children over a non-idempotent common value
    kids = [Node(sign_mu.letter_image["m"], i, i, letter="m") for i in (1, 2, 3)]
    root = Node(1, 1, 3, children=kids)
    f = Forest(tuple("mmm"), sign_mu, root)
    assert not verify_forest(sign_mu, f)


def test_verify_rejects_wrong_letters():
    kids = [Node(sign_mu.letter_image["z"], i, i, letter="z") for i in (1, 2)]
    root = Node(2, 1, 2, children=kids)
    f = Forest(tuple("zm"), sign_mu, root)
    assert not verify_forest(sign_mu, f)


def test_iterable_nodes_basics():
    single = build_forest(triv_mu, "a")
    assert iterable_nodes(single) == set()
    pair = build_forest(triv_mu, "ab")
    assert iterable_nodes(pair) == set()
    # an idempotent node with 5 children has middle children 2..4 iterable
    kids = leafs("aaaaa")
    root = Node(0, 1, 5, children=kids)
    f = Forest(tuple("aaaaa"), triv_mu, root)
    assert iterable_nodes(f) == set(kids[1:4])


def test_skeleton_frontier_basics():
    f = build_forest(triv_mu, "a")
    assert skeleton(f, f.root) == {f.root}
    assert frontier(f, f.root) == (1,)
    # binary tree: the skeleton of the root is the whole node set
    kids = leafs("ab")
    root = Node(0, 1, 2, children=kids)
    f = Forest(tuple("ab"), triv_mu, root)
    assert skeleton(f, root) == {root, *kids}


def test_root_observes_root():
    f = build_forest(triv_mu, "abc")
    assert observes(f, f.root, f.root)
    assert dependent(f, f.root, f.root)


def figure6_forest():
    """An idempotent parent with deep middle children, like the observation
    figure: the pivot's descendants observe it, the chain above is observed."""
    mid1 = Node(0, 2, 3, children=leafs("bc", 2))
    pivot = Node(0, 4, 5, children=leafs("de", 4))
    mid3 = Node(0, 6, 7, children=leafs("fg", 6))
    par = Node(0, 1, 8, children=[leafs("a")[0], mid1, pivot, mid3,
                                  Node(0, 8, 8, letter="h")])
    root = par
    return Forest(tuple("abcdefgh"), triv_mu, root), pivot, mid1, mid3


def test_observation_figure():
    f, pivot, mid1, mid3 = figure6_forest()
    # the pivot observes its ancestors and their immediate siblings
    assert observes(f, pivot, f.root)
    assert observes(f, pivot, mid1) and observes(f, pivot, mid3)
    # descendants of the pivot observe it; unrelated middles do not
    assert observes(f, pivot.children[0], pivot)
    assert not observes(f, mid1, pivot.children[0])
    assert dependent(f, pivot.children[0], pivot)


def test_bounded_observation(rng):
    for _ in range(40):
        mu = random_morphism(rng)
        n = rng.randint(1, 60)
        w = tuple(rng.choice(sorted(mu.letter_image)) for _ in range(n))
        f = build_forest(mu, w)
        d = f.height
        from pebbletk.forest import observed_nodes
        for node in list(iterable_nodes(f))[:10] + [f.root]:
            assert len(set(map(id, observed_nodes(f, node)))) <= 3 * d
        for t in list(iterable_nodes(f))[:6]:
            assert len(frontier(f, t)) <= 2 ** d


def test_partitions_and_origins(rng):
    for _ in range(60):
        mu = random_morphism(rng)
        n = rng.randint(1, 80)
        w = tuple(rng.choice(sorted(mu.letter_image)) for _ in range(n))
        f = build_forest(mu, w)
        assert verify_forest(mu, f)
        ite = iterable_nodes(f)
        units = list(ite) + [f.root]
        # skeletons partition the nodes
        skes = [skeleton(f, t) for t in units]
        total = sum(len(s) for s in skes)
        union = set()
        for s in skes:
            union |= set(map(id, s))
        assert total == len(union) == len(f.nodes)
        # frontiers partition the positions
        fronts = [frontier(f, t) for t in units]
        allpos = sorted(p for fr in fronts for p in fr)
        assert allpos == list(range(1, n + 1))
        for i in range(1, n + 1):
            assert origin(f, i) in units


def test_lemma3_interval(rng):
    checked = 0
    for _ in range(40):
        mu = random_morphism(rng)
        n = rng.randint(2, 60)
        w = tuple(rng.choice(sorted(mu.letter_image)) for _ in range(n))
        f = build_forest(mu, w)
        for i in range(1, n + 1):
            if origin(f, i).parent is None:
                continue
            assert ob_do(f, i) - ob_up(f, i) == lemma3_interval(f, i)
            checked += 1
    assert checked > 50


def test_height_bound_random(rng):
    for _ in range(120):
        mu = random_morphism(rng)
        n = rng.randint(1, 200)
        w = tuple(rng.choice(sorted(mu.letter_image)) for _ in range(n))
        f = build_forest(mu, w)
        assert f.height <= 3 * mu.target.size
        assert verify_forest(mu, f)


def test_print_parse_roundtrip(rng):
    for _ in range(30):
        mu = random_morphism(rng)
        n = rng.randint(0, 40)
        w = tuple(rng.choice(sorted(mu.letter_image)) for _ in range(n))
        f = build_forest(mu, w)
        text = print_forest(f)
        g = parse_forest(mu, text)
        assert print_forest(g) == text
        assert verify_forest(mu, g)
        assert g.word == f.word
