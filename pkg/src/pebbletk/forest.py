"""Simon factorization forests of height <= 3|M|, and the combinatorics on
top of them: iterable nodes, skeletons, frontiers, origins, observation,
and run slicing.

Construction outline (all inside the image of the morphism):

* cut the word greedily at the letters where an infix first reaches the
  J-class of the whole word; the pieces between cuts recurse strictly
  higher in the J-order;
* the cut blocks form a smooth sequence (every block-infix product stays
  in that J-class); color each interior boundary by the pair (R-class of
  its suffix product, prefix product).  Two same-colored boundaries always
  enclose a factor equal to one fixed idempotent of the class, so
  splitting color by color yields idempotent nodes, three levels per
  color, at most |J| colors;
* one color whose prefix value is itself an idempotent of the leading
  R-class can absorb the first segment into its idempotent node, saving a
  level; together with threading the trailing piece into the last segment
  this keeps the total at 3 levels per monoid element.
"""

from dataclasses import dataclass

import numpy as np

from .errors import AlphabetError, PebbletkError
from .monoid import FiniteMonoid, MonoidMorphism


class Node:
    __slots__ = ("value", "first", "last", "letter", "children", "parent",
                 "index", "path", "_height")

    def __init__(self, value, first, last, letter=None, children=()):
        self.value = value
        self.first = first
        self.last = last
        self.letter = letter
        self.children = tuple(children)
        self.parent = None
        self.index = None
        self.path = None
        self._height = 1 if not children else 1 + max(c._height for c in children)

    def is_leaf(self):
        return self.letter is not None

    @property
    def height(self):
        return self._height

    def __repr__(self):
        kind = f"leaf {self.letter!r}" if self.is_leaf() else f"{len(self.children)} children"
        return f"<Node [{self.first}:{self.last}] {kind}>"


@dataclass
class Forest:
    word: tuple
    mu: MonoidMorphism
    root: Node

    def __post_init__(self):
        self.leaves = [None] * (len(self.word) + 1)  # 1-based
        self.nodes = []
        if self.root is not None:
            stack = [(self.root, ())]
            while stack:
                node, path = stack.pop()
                node.path = path
                self.nodes.append(node)
                if node.is_leaf():
                    self.leaves[node.first] = node
                for idx, ch in enumerate(node.children):
                    ch.parent = node
                    ch.index = idx
                    stack.append((ch, path + (idx,)))
        self._origin = {}

    @property
    def height(self):
        return 0 if self.root is None else self.root.height


# ------------------------------------------------------------------
# Green's relations of a finite monoid (cached per table)
# ------------------------------------------------------------------

class GreenData:
    def __init__(self, monoid: FiniteMonoid):
        self.monoid = monoid
        n = monoid.size
        t = np.array(monoid.table, dtype=np.int32)
        jleq = np.zeros((n, n), dtype=bool)   # jleq[x, y]: x <=_J y
        rleq = np.zeros((n, n), dtype=bool)
        lleq = np.zeros((n, n), dtype=bool)
        for y in range(n):
            two_sided = t[t[:, y], :]
            jleq[np.unique(two_sided), y] = True
            rleq[t[y, :], y] = True
            lleq[t[:, y], y] = True
        self.jid = self._classes(jleq)
        self.rid = self._classes(rleq)
        self.lid = self._classes(lleq)
        self.idem = [monoid.is_idempotent(x) for x in range(n)]

    @staticmethod
    def _classes(leq):
        n = len(leq)
        both = leq & leq.T
        ids = [-1] * n
        nxt = 0
        for x in range(n):
            if ids[x] == -1:
                members = np.nonzero(both[x])[0]
                for m in members:
                    ids[m] = nxt
                nxt += 1
        return ids


_GREEN_CACHE = {}


def green_data(monoid: FiniteMonoid) -> GreenData:
    key = id(monoid)
    hit = _GREEN_CACHE.get(key)
    if hit is None or hit.monoid is not monoid:
        hit = GreenData(monoid)
        _GREEN_CACHE[key] = hit
    return hit


# ------------------------------------------------------------------
# Construction
# ------------------------------------------------------------------

def build_forest(mu: MonoidMorphism, word) -> Forest:
    word = tuple(word)
    for sym in word:
        if sym not in mu.letter_image:
            raise AlphabetError(f"letter {sym!r} not in morphism alphabet")
    if not word:
        return Forest(word, mu, None)
    green = green_data(mu.target)
    mono = mu.target
    vals = [mu.letter_image[s] for s in word]

    def leaf(i):  # 0-based index
        return Node(vals[i], i + 1, i + 1, letter=word[i])

    def binary(a, b):
        return Node(mono.mul(a.value, b.value), a.first, b.last, children=(a, b))

    def idem_node(children):
        if len(children) == 1:
            return children[0]
        if len(children) == 2:
            return binary(children[0], children[1])
        v = children[0].value
        assert all(c.value == v for c in children) and green.idem[v]
        return Node(v, children[0].first, children[-1].last, children=children)

    def attach(node, tail):
        return node if tail is None else binary(node, tail)

    def smooth(blocks, tail):
        n = len(blocks)
        if n == 1:
            return attach(blocks[0], tail)
        pre = [None] * n  # pre[j] = product of blocks[0..j-1], j >= 1
        acc = blocks[0].value
        for j in range(1, n):
            pre[j] = acc
            acc = mono.mul(acc, blocks[j].value)
        suf = [None] * (n + 1)  # suf[j] = product of blocks[j..n-1]
        acc = blocks[n - 1].value
        for j in range(n - 1, -1, -1):
            suf[j] = acc
            if j:
                acc = mono.mul(blocks[j - 1].value, acc)
        color = {j: (green.rid[suf[j]], pre[j]) for j in range(1, n)}

        # A color (R', x) with x an idempotent of R-class R' makes every
        # same-colored pair product equal to x itself, and the leading
        # segment's product as well; its idempotent node may absorb s_0.
        merge_color = None
        for j in range(1, n):
            rcls, x = color[j]
            if green.idem[x] and green.rid[x] == rcls:
                c = (rcls, x)
                if merge_color is None or c < merge_color:
                    merge_color = c

        def split(lo, hi, tail, outermost):
            if hi - lo == 1:
                return attach(blocks[lo], tail)
            realized = {color[j] for j in range(lo + 1, hi)}
            gamma = merge_color if (outermost and merge_color in realized) \
                else min(realized)
            cuts = [j for j in range(lo + 1, hi) if color[j] == gamma]
            bounds = [lo] + cuts + [hi]
            segs = []
            for s in range(len(bounds) - 1):
                seg_tail = tail if s == len(bounds) - 2 else None
                segs.append(split(bounds[s], bounds[s + 1], seg_tail, False))
            if outermost and gamma == merge_color:
                return binary(idem_node(segs[:-1]), segs[-1]) if len(segs) > 1 else segs[0]
            if len(segs) == 2:
                return binary(segs[0], segs[1])
            return binary(segs[0], binary(idem_node(segs[1:-1]), segs[-1]))

        return split(0, n, tail, True)

    def build(lo, hi):  # 0-based, half-open, nonempty
        if hi - lo == 1:
            return leaf(lo)
        total = vals[lo]
        for i in range(lo + 1, hi):
            total = mono.mul(total, vals[i])
        jcls = green.jid[total]
        blocks = []
        p0 = lo
        sufprods = set()
        i = lo
        while i < hi:
            nxt = {mono.mul(s, vals[i]) for s in sufprods}
            nxt.add(vals[i])
            if any(green.jid[s] == jcls for s in nxt):
                # letter i completes an infix inside the class: cut here
                if i > p0:
                    blocks.append(binary(build(p0, i), leaf(i)))
                else:
                    blocks.append(leaf(i))
                p0 = i + 1
                sufprods = set()
            else:
                sufprods = nxt
            i += 1
        tail = build(p0, hi) if p0 < hi else None
        if not blocks:
            raise PebbletkError("greedy cut found no block; broken Green data")
        return smooth(blocks, tail)

    return Forest(word, mu, build(0, len(word)))


# ------------------------------------------------------------------
# Verification and queries
# ------------------------------------------------------------------

def verify_forest(mu: MonoidMorphism, forest: Forest) -> bool:
    word = forest.word
    if forest.root is None:
        return word == ()
    mono = mu.target

    def check(node):
        if node.is_leaf():
            if not 1 <= node.first <= len(word) or node.first != node.last:
                return False, None
            if word[node.first - 1] != node.letter:
                return False, None
            return True, mu.letter_image[node.letter]
        if not node.children:
            return False, None
        vals = []
        pos = node.first
        for ch in node.children:
            if ch.first != pos:
                return False, None
            ok, v = check(ch)
            if not ok:
                return False, None
            vals.append(v)
            pos = ch.last + 1
        if pos != node.last + 1:
            return False, None
        total = vals[0]
        for v in vals[1:]:
            total = mono.mul(total, v)
        if len(vals) >= 3:
            if any(v != total for v in vals) or not mono.is_idempotent(total):
                return False, None
        return True, total

    if forest.root.first != 1 or forest.root.last != len(word):
        return False
    ok, _ = check(forest.root)
    return ok


def iterable_nodes(forest: Forest):
    out = set()
    if forest.root is None:
        return out

    def walk(node):
        for idx, ch in enumerate(node.children):
            if 1 <= idx <= len(node.children) - 2:
                out.add(ch)
            walk(ch)

    walk(forest.root)
    return out


def skeleton(forest: Forest, node: Node):
    out = {node}
    cur = [node]
    while cur:
        nxt = []
        for t in cur:
            if t.children:
                nxt.extend((t.children[0], t.children[-1]))
        out.update(nxt)
        cur = nxt
    return out


def frontier(forest: Forest, node: Node):
    return tuple(sorted(t.first for t in skeleton(forest, node) if t.is_leaf()))


def origin(forest: Forest, i: int) -> Node:
    """The unique iterable-or-root node whose frontier contains i."""
    if not 1 <= i <= len(forest.word):
        raise IndexError(f"position {i} out of range 1..{len(forest.word)}")
    hit = forest._origin.get(i)
    if hit is not None:
        return hit
    cur = forest.leaves[i]
    while cur.parent is not None and cur.index in (0, len(cur.parent.children) - 1):
        cur = cur.parent
    forest._origin[i] = cur
    return cur


def _neighbor_siblings(node: Node):
    out = []
    if node.parent is not None:
        sibs = node.parent.children
        if node.index > 0:
            out.append(sibs[node.index - 1])
        if node.index < len(sibs) - 1:
            out.append(sibs[node.index + 1])
    return out


def observed_nodes(forest: Forest, node: Node):
    """Nodes that ``node`` observes: its ancestors (itself included) and
    their immediate siblings."""
    out = []
    cur = node
    while cur is not None:
        out.append(cur)
        out.extend(_neighbor_siblings(cur))
        cur = cur.parent
    return out


def observes(forest: Forest, t: Node, t2: Node) -> bool:
    cur = t
    while cur is not None:
        if t2 is cur or any(t2 is s for s in _neighbor_siblings(cur)):
            return True
        cur = cur.parent
    return False


def dependent(forest: Forest, t: Node, t2: Node) -> bool:
    return observes(forest, t, t2) or observes(forest, t2, t)


def _observation_index(forest: Forest):
    """Per-word batched observation data, cached on the forest:
    origin per position, positions per origin, and for every origin o the
    set of origins it observes (ids)."""
    idx = getattr(forest, "_obs_index", None)
    if idx is not None:
        return idx
    n = len(forest.word)
    origins = [None] + [origin(forest, i) for i in range(1, n + 1)]
    by_origin = {}
    for j in range(1, n + 1):
        by_origin.setdefault(id(origins[j]), []).append(j)
    observed = {}   # id(origin) -> set of ids of nodes it observes
    for oid, positions in by_origin.items():
        node = origins[positions[0]]
        observed[oid] = set(map(id, observed_nodes(forest, node)))
    idx = (origins, by_origin, observed)
    forest._obs_index = idx
    return idx


def ob_up(forest: Forest, i: int):
    """Positions that i observes."""
    origins, by_origin, observed = _observation_index(forest)
    obs = observed[id(origins[i])]
    out = set()
    for oid, positions in by_origin.items():
        if oid in obs:
            out.update(positions)
    return out


def ob_do(forest: Forest, i: int):
    """Positions that observe i."""
    origins, by_origin, observed = _observation_index(forest)
    target = id(origins[i])
    out = set()
    for oid, positions in by_origin.items():
        if target in observed[oid]:
            out.update(positions)
    return out


def lemma3_interval(forest: Forest, i: int):
    """The interval formula for ObDo(i) \\ ObUp(i) at a non-root origin:
    [min Fro(left sib) : max Fro(right sib)] minus the three frontiers."""
    t = origin(forest, i)
    if t.parent is None:
        raise PebbletkError("origin is the root; no sibling interval")
    sibs = t.parent.children
    t1 = sibs[t.index - 1]
    t2 = sibs[t.index + 1]
    f1, f, f2 = frontier(forest, t1), frontier(forest, t), frontier(forest, t2)
    lo, hi = min(f1), max(f2)
    return set(range(lo, hi + 1)) - set(f1) - set(f) - set(f2)


# ------------------------------------------------------------------
# Slicing of a run over a marked word (Def. of run slicing)
# ------------------------------------------------------------------

UP = "up"
DOWN = "down"
NEITHER = "neither"


@dataclass(frozen=True)
class Slice:
    segment: tuple  # contiguous run configurations (state, position)
    cls: str


def position_classes(forest: Forest, i: int):
    """Class of every tape position 0..n+1 relative to the pivot i."""
    n = len(forest.word)
    up = ob_up(forest, i)
    do = ob_do(forest, i)
    classes = [NEITHER] * (n + 2)
    for j in range(1, n + 1):
        if j in up:
            classes[j] = UP
        elif j in do:
            classes[j] = DOWN
    return classes


def slicing(run_steps, forest: Forest, i: int):
    """Split a run on the word marked at i into maximal homogeneous
    segments (position classes up / down-only / neither)."""
    steps = tuple(run_steps.steps if hasattr(run_steps, "steps") else run_steps)
    classes = position_classes(forest, i)
    slices = []
    j = 0
    while j < len(steps):
        cls = classes[steps[j][1]]
        k = j
        while k < len(steps) and classes[steps[k][1]] == cls:
            k += 1
        slices.append(Slice(steps[j:k], cls))
        j = k
    return slices


# ------------------------------------------------------------------
# Bracketed serialization over A + two fresh brackets.  Rendered with
# ASCII parentheses so that machines whose own alphabet contains < or >
# (tree words) stay unambiguous.
# ------------------------------------------------------------------

FOREST_OPEN = "("
FOREST_CLOSE = ")"


def print_forest(forest: Forest) -> str:
    if forest.root is None:
        return ""

    def render(node):
        if node.is_leaf():
            return node.letter
        return FOREST_OPEN + "".join(render(c) for c in node.children) + FOREST_CLOSE

    return render(forest.root)


def parse_forest(mu: MonoidMorphism, text: str) -> Forest:
    """Inverse of print_forest; values are recomputed bottom-up."""
    from .symbols import parse_word
    syms = parse_word(text) if isinstance(text, str) else tuple(text)
    pos = 0
    counter = [0]
    mono = mu.target

    def node():
        nonlocal pos
        if pos >= len(syms):
            raise PebbletkError("unexpected end of forest text")
        if syms[pos] == FOREST_OPEN:
            pos += 1
            children = []
            while pos < len(syms) and syms[pos] != FOREST_CLOSE:
                children.append(node())
            if pos >= len(syms):
                raise PebbletkError("unbalanced forest text")
            pos += 1
            if not children:
                raise PebbletkError("empty bracket in forest text")
            total = children[0].value
            for c in children[1:]:
                total = mono.mul(total, c.value)
            return Node(total, children[0].first, children[-1].last,
                        children=children)
        sym = syms[pos]
        if sym not in mu.letter_image:
            raise AlphabetError(f"letter {sym!r} not in morphism alphabet")
        pos += 1
        counter[0] += 1
        return Node(mu.letter_image[sym], counter[0], counter[0], letter=sym)

    if not syms:
        return Forest((), mu, None)
    root = node()
    if pos != len(syms):
        raise PebbletkError("trailing content after forest")
    word = tuple(s for s in syms if s not in (FOREST_OPEN, FOREST_CLOSE))
    return Forest(word, mu, root)
