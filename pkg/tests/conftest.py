import random

import pytest

from pebbletk.monoid import make_monoid, make_morphism


def random_transformation_monoid(rng, max_size=6, base=3):
    """Closure of random self-maps of a small set; resamples until the
    closure fits in max_size.  Always associative by construction."""
    while True:
        k = rng.randint(1, 3)
        gens = [tuple(rng.randrange(base) for _ in range(base)) for _ in range(k)]
        ident = tuple(range(base))
        elems = [ident]
        seen = {ident}
        for g in gens:
            if g not in seen:
                seen.add(g)
                elems.append(g)
        i = 0
        ok = True
        while i < len(elems):
            for e in list(elems):
                for a, b in ((elems[i], e), (e, elems[i])):
                    comp = tuple(b[a[x]] for x in range(base))
                    if comp not in seen:
                        seen.add(comp)
                        elems.append(comp)
            if len(elems) > max_size:
                ok = False
                break
            i += 1
        if ok:
            idx = {e: j for j, e in enumerate(elems)}
            table = [[idx[tuple(f[e[x]] for x in range(base))] for f in elems]
                     for e in elems]
            mono = make_monoid(table, 0)
            letters = {chr(ord("a") + j): idx[g] for j, g in enumerate(gens)}
            return mono, letters


def random_morphism(rng, max_size=6):
    mono, letters = random_transformation_monoid(rng, max_size)
    return make_morphism(mono, letters)


@pytest.fixture
def rng():
    return random.Random(20240817)
