"""Finite monoids, morphisms from free monoids, and contexts.

Elements are dense indices ``0..size-1``.  A morphism carries, for every
element of its image submonoid, a shortest witness word (breadth-first,
ties broken lexicographically); downstream code evaluates abstract contexts
on these concrete witnesses, so their determinism matters.
"""

from dataclasses import dataclass, field
from collections import deque

from .errors import AlphabetError, PebbletkError


@dataclass(frozen=True)
class FiniteMonoid:
    table: tuple  # table[i][j] = index of i*j
    identity: int

    @property
    def size(self) -> int:
        return len(self.table)

    def mul(self, x: int, y: int) -> int:
        return self.table[x][y]

    def mul_all(self, elems, start=None) -> int:
        acc = self.identity if start is None else start
        for e in elems:
            acc = self.table[acc][e]
        return acc

    def is_idempotent(self, x: int) -> bool:
        if not 0 <= x < self.size:
            raise IndexError(f"element {x} out of range for monoid of size {self.size}")
        return self.table[x][x] == x

    def idempotents(self):
        return tuple(x for x in range(self.size) if self.table[x][x] == x)

    def check(self):
        n = self.size
        e = self.identity
        for x in range(n):
            if self.table[e][x] != x or self.table[x][e] != x:
                raise PebbletkError(f"{e} is not an identity")
        for x in range(n):
            for y in range(n):
                xy = self.table[x][y]
                for z in range(n):
                    if self.table[xy][z] != self.table[x][self.table[y][z]]:
                        raise PebbletkError(f"associativity fails on ({x},{y},{z})")
        return True


def make_monoid(rows, identity) -> FiniteMonoid:
    return FiniteMonoid(tuple(tuple(r) for r in rows), identity)


def is_idempotent(monoid: FiniteMonoid, x: int) -> bool:
    return monoid.is_idempotent(x)


# The three-element sign monoid ({1, -1, 0}, *): handy in tests and docs.
SIGN_ELEMS = (1, -1, 0)
SIGN = make_monoid(
    [[SIGN_ELEMS.index(a * b) for b in SIGN_ELEMS] for a in SIGN_ELEMS], 0
)


def _closure_with_witnesses(monoid: FiniteMonoid, letter_image, letters):
    """BFS closure of {identity} + letter images under right multiplication.

    Returns an element -> shortest witness word map.  Expanding the queue in
    discovery order with letters sorted gives breadth-first order with
    lexicographic tie-break.
    """
    witness = {monoid.identity: ()}
    queue = deque([monoid.identity])
    letters = sorted(letters)
    while queue:
        x = queue.popleft()
        wx = witness[x]
        for a in letters:
            y = monoid.mul(x, letter_image[a])
            if y not in witness:
                witness[y] = wx + (a,)
                queue.append(y)
    return witness


@dataclass(frozen=True)
class MonoidMorphism:
    alphabet: tuple  # sorted tuple of symbols (marks allowed)
    target: FiniteMonoid
    letter_image: dict
    witness: dict = field(default=None, compare=False)

    def __post_init__(self):
        if self.witness is None:
            object.__setattr__(
                self,
                "witness",
                _closure_with_witnesses(self.target, self.letter_image, self.alphabet),
            )

    def __call__(self, word) -> int:
        return eval_morphism(self, word)

    def image(self):
        """Image submonoid elements in witness (BFS) discovery order."""
        return tuple(self.witness)


def make_morphism(monoid: FiniteMonoid, letter_image) -> MonoidMorphism:
    return MonoidMorphism(tuple(sorted(letter_image)), monoid, dict(letter_image))


def eval_morphism(mu: MonoidMorphism, word) -> int:
    acc = mu.target.identity
    for sym in word:
        img = mu.letter_image.get(sym)
        if img is None:
            raise AlphabetError(f"letter {sym!r} not in morphism alphabet")
        acc = mu.target.mul(acc, img)
    return acc


def image_submonoid(mu: MonoidMorphism, letters=None):
    """Element -> shortest witness map for the submonoid generated by the
    images of ``letters`` (default: the whole alphabet)."""
    if letters is None:
        return dict(mu.witness)
    for a in letters:
        if a not in mu.letter_image:
            raise AlphabetError(f"letter {a!r} not in morphism alphabet")
    return _closure_with_witnesses(mu.target, mu.letter_image, letters)


@dataclass(frozen=True)
class Context:
    """A context ``left <letter> right`` over some ambient morphism."""
    left: int
    letter: str
    right: int


def context_word(mu: MonoidMorphism, ctx: Context):
    """Concrete witness word with the distinguished position, as
    ``(word, position)``; well-definedness of anything evaluated at that
    position is the transition-morphism property."""
    try:
        wl = mu.witness[ctx.left]
        wr = mu.witness[ctx.right]
    except KeyError as exc:
        raise PebbletkError(f"element {exc.args[0]} outside image submonoid") from exc
    if ctx.letter not in mu.letter_image:
        raise AlphabetError(f"letter {ctx.letter!r} not in morphism alphabet")
    return wl + (ctx.letter,) + wr, len(wl) + 1


def product_morphism(morphisms) -> MonoidMorphism:
    """Cartesian product: componentwise table on the full product monoid,
    tuple letter images, witnesses recomputed by closure."""
    ms = list(morphisms)
    if not ms:
        raise PebbletkError("empty product")
    alphabet = ms[0].alphabet
    for m in ms[1:]:
        if m.alphabet != alphabet:
            raise AlphabetError("morphisms do not share an alphabet")
    sizes = [m.target.size for m in ms]
    elems = [()]
    for n in sizes:
        elems = [t + (i,) for t in elems for i in range(n)]
    index = {t: i for i, t in enumerate(elems)}
    rows = []
    for t in elems:
        row = []
        for s in elems:
            row.append(index[tuple(m.target.mul(a, b) for m, a, b in zip(ms, t, s))])
        rows.append(tuple(row))
    identity = index[tuple(m.target.identity for m in ms)]
    monoid = FiniteMonoid(tuple(rows), identity)
    images = {a: index[tuple(m.letter_image[a] for m in ms)] for a in alphabet}
    return MonoidMorphism(alphabet, monoid, images)


def generated_monoid(generators, identity_key, compose):
    """Closure of ``generators`` (a key -> opaque-value dict) under
    ``compose``, as (FiniteMonoid, key->index, ordered values).

    Only the generated submonoid is materialized; used for transition
    monoids whose ambient product would be huge.
    """
    keys = [identity_key]
    pos = {identity_key: 0}
    values = {identity_key: generators.get(identity_key)}
    for k in generators:  # insertion order keeps the result deterministic
        if k not in pos:
            pos[k] = len(keys)
            keys.append(k)
            values[k] = generators[k]
    table = {}
    done = 0  # keys[:done] have all pairwise products computed
    while done < len(keys):
        x = keys[done]
        done += 1
        for y in list(keys):  # new keys appended mid-loop get their own pass
            for a, b in ((x, y), (y, x)):
                if (a, b) in table:
                    continue
                r_key, r_val = compose(a, b)
                if r_key not in pos:
                    pos[r_key] = len(keys)
                    keys.append(r_key)
                    values[r_key] = r_val
                table[(a, b)] = r_key
    n = len(keys)
    rows = [[0] * n for _ in range(n)]
    for i, x in enumerate(keys):
        for j, y in enumerate(keys):
            if (x, y) not in table:
                r_key, _ = compose(x, y)
                table[(x, y)] = r_key
            rows[i][j] = pos[table[(x, y)]]
    monoid = FiniteMonoid(tuple(tuple(r) for r in rows), 0)
    return monoid, pos, [values[k] for k in keys]
