"""Executable example machines and independent reference oracles.

Machine-building helpers are deliberately small and total: every machine
here accepts every input over its alphabet (garbage included), which the
test suite checks exhaustively on short words.
"""

from .errors import PebbletkError
from .pebble import BLIND, LAST, LASTLAST, PebbleMachine
from .symbols import OLDER, RECENT, base, mark_of, marked_variants, with_mark
from .twoway import make_transducer

OPEN = "<"
CLOSE = ">"
HASH = "#"


def _syms(alphabet, marks):
    """Tape symbols for an alphabet: plain, or with one or two mark levels."""
    out = []
    for a in alphabet:
        out.extend(marked_variants(a, lastlast=(marks == 2)) if marks else (a,))
    return tuple(out)


# ------------------------------------------------------------------
# Height-1 machines
# ------------------------------------------------------------------

def maprev(alphabet=("a", "b", "c", "d"), sep=HASH, name="mapRev_t"):
    """u1#...#un -> rev(u1)#...#rev(un), reading each block right to left."""
    letters = tuple(alphabet)
    rules = [("q0", "^", "F", "R", "")]
    for a in letters:
        rules += [
            ("F", a, "F", "R", ""),
            ("Bh", a, "Bh", "L", (a,)),
            ("Bd", a, "Bd", "L", (a,)),
            ("Rh", a, "Rh", "R", ""),
            ("Rd", a, "Rd", "R", ""),
        ]
    rules += [
        ("F", sep, "Bh", "L", ""),
        ("F", "$", "Bd", "L", ""),
        ("Bh", sep, "Rh", "R", ""),
        ("Bh", "^", "Rh", "R", ""),
        ("Bd", sep, "Rd", "R", ""),
        ("Bd", "^", "Rd", "R", ""),
        ("Rh", sep, "F", "R", (sep,)),
        ("Rd", sep, "Rd", "R", ""),
    ]
    ab = letters + (sep,)
    return make_transducer(name, ab, ab, ("q0", "F", "Bh", "Bd", "Rh", "Rd"),
                           "q0", ("Rd",), rules)


def copier(alphabet=("a", "b", "c", "d", HASH), name="copier", marks=0,
           emit_base=False):
    """One-way echo machine; with ``emit_base`` marked letters are copied
    without their marks."""
    syms = _syms(alphabet, marks)
    rules = [("q0", "^", "S", "R", "")]
    for s in syms:
        rules.append(("S", s, "S", "R", (base(s) if emit_base else s,)))
    out = tuple({base(s) for s in syms}) if emit_base else syms
    return make_transducer(name, syms, out, ("q0", "S"), "q0", ("S",), rules)


def looper(alphabet=("a",), name="looper"):
    """Bounces forever between the first cell and the left endmarker."""
    rules = [("q0", "^", "S", "R", "")]
    for a in alphabet:
        rules.append(("S", a, "q0", "L", ""))
    return make_transducer(name, alphabet, alphabet, ("q0", "S"), "q0", ("S",), rules)


def _word_then_hash(name, alphabet, marks=0, emit_marks=False):
    """Leaf emitting its input followed by '#'; needs one cell of lookahead,
    done by remembering the letter and re-reading the last one leftwards."""
    syms = _syms(alphabet, marks)
    states = ["q0", "C", "D", "E"] + [f"C{s}" for s in syms]
    rules = [("q0", "^", "C", "R", "")]
    for s in syms:
        emit_s = s if emit_marks else base(s)
        rules.append(("C", s, f"C{s}", "R", ""))
        rules.append((f"C{s}", "$", "D", "L", ""))
        rules.append(("D", s, "E", "R", (emit_s, HASH)))
        for s2 in syms:
            rules.append((f"C{s}", s2, f"C{s2}", "R", (emit_s,)))
    out = set(base(s) for s in syms) | {HASH}
    if emit_marks:
        out = set(syms) | {HASH}
    return make_transducer(name, syms, tuple(out), tuple(states), "q0",
                           ("C", "E"), rules)


def _per_position_caller(name, child, alphabet, marks=0):
    """Head calling ``child`` once at every position, left to right."""
    syms = _syms(alphabet, marks)
    rules = [("q0", "^", "S", "R", "")]
    for s in syms:
        rules.append(("S", s, "S", "R", (child,)))
    return make_transducer(name, syms, (child,), ("q0", "S"), "q0", ("S",), rules)


def _call_at_first(name, child, alphabet, marks=0):
    """Head calling ``child`` exactly once, at position 1 (never on empty)."""
    syms = _syms(alphabet, marks)
    rules = [("q0", "^", "S1", "R", "")]
    for s in syms:
        rules.append(("S1", s, "S2", "R", (child,)))
        rules.append(("S2", s, "S2", "R", ""))
    return make_transducer(name, syms, (child,), ("q0", "S1", "S2"), "q0",
                           ("S1", "S2"), rules)


def _silent_leaf(name, alphabet, marks=0):
    syms = _syms(alphabet, marks)
    rules = [("q0", "^", "S", "R", "")]
    for s in syms:
        rules.append(("S", s, "S", "R", ""))
    return make_transducer(name, syms, tuple(alphabet), ("q0", "S"), "q0", ("S",), rules)


def _marked_letter_leaf(name, alphabet):
    """Emits the base of the recently marked letter, nothing else."""
    syms = _syms(alphabet, marks=1)
    rules = [("q0", "^", "S", "R", "")]
    for s in syms:
        if mark_of(s) == RECENT:
            rules.append(("S", s, "F", "R", (base(s),)))
        else:
            rules.append(("S", s, "S", "R", ""))
        rules.append(("F", s, "F", "R", ""))
    return make_transducer(name, syms, tuple(alphabet), ("q0", "S", "F"), "q0",
                           ("S", "F"), rules)


# ------------------------------------------------------------------
# Blind and last pebble corpus
# ------------------------------------------------------------------

def ulsq(alphabet=("a", "b", "c")):
    """u -> (u#)^|u| as a blind 2-pebble machine."""
    leaf = PebbleMachine(BLIND, "usharp", _word_then_hash("usharp", alphabet))
    head = _per_position_caller("ulsq_head", "usharp", alphabet)
    return PebbleMachine(BLIND, "ulsq", head, (leaf,))


def square(alphabet=("a", "b")):
    """u -> mark(u,1)# mark(u,2)# ... as a last 2-pebble machine."""
    leaf = PebbleMachine(
        LAST, "marksharp", _word_then_hash("marksharp", alphabet, marks=1, emit_marks=True))
    head = _per_position_caller("square_head", "marksharp", alphabet, marks=1)
    return PebbleMachine(LAST, "square", head, (leaf,))


def blind_pos1(alphabet=("a", "b")):
    leaf = PebbleMachine(BLIND, "copy1", copier(alphabet, name="copy1"))
    head = _call_at_first("pos1_head", "copy1", alphabet)
    return PebbleMachine(BLIND, "blind_pos1", head, (leaf,))


def blind_eps_leaf(alphabet=("a", "b")):
    leaf = PebbleMachine(BLIND, "mute", _silent_leaf("mute", alphabet))
    head = _per_position_caller("eps_head", "mute", alphabet)
    return PebbleMachine(BLIND, "blind_eps", head, (leaf,))


def blind_padded_ulsq(alphabet=("a", "b")):
    """ulsq with a dummy middle layer that calls its single child once."""
    leaf = PebbleMachine(BLIND, "usharp", _word_then_hash("usharp", alphabet))
    mid = PebbleMachine(BLIND, "dummy", _call_at_first("dummy_t", "usharp", alphabet), (leaf,))
    head = _per_position_caller("padded_head", "dummy", alphabet)
    return PebbleMachine(BLIND, "padded_ulsq", head, (mid,))


def blind_cube(alphabet=("a", "b")):
    """u -> (u#)^(|u|^2): blind 3-pebble with two per-position layers."""
    leaf = PebbleMachine(BLIND, "usharp", _word_then_hash("usharp", alphabet))
    mid = PebbleMachine(BLIND, "mid", _per_position_caller("mid_t", "usharp", alphabet), (leaf,))
    head = _per_position_caller("cube_head", "mid", alphabet)
    return PebbleMachine(BLIND, "cube", head, (mid,))


def last_pos1(alphabet=("a", "b")):
    leaf = PebbleMachine(LAST, "copy1", copier(alphabet, name="copy1", marks=1, emit_base=True))
    head = _call_at_first("pos1_head", "copy1", alphabet, marks=1)
    return PebbleMachine(LAST, "last_pos1", head, (leaf,))


def last_eps_leaf(alphabet=("a", "b")):
    leaf = PebbleMachine(LAST, "mute", _silent_leaf("mute", alphabet, marks=1))
    head = _per_position_caller("eps_head", "mute", alphabet, marks=1)
    return PebbleMachine(LAST, "last_eps", head, (leaf,))


def last_padded_square(alphabet=("a", "b")):
    """square with a dummy pass-through top layer."""
    sq = square(alphabet)
    head = _call_at_first("top_dummy", "square_sub", alphabet, marks=1)
    inner = PebbleMachine(LAST, "square_sub", sq.root, sq.children)
    return PebbleMachine(LAST, "padded_square", head, (inner,))


def last_marked_echo(alphabet=("a", "b")):
    """u -> u, but through one call per position whose leaf reads the mark."""
    leaf = PebbleMachine(LAST, "markecho", _marked_letter_leaf("markecho", alphabet))
    head = _per_position_caller("echo_head", "markecho", alphabet, marks=1)
    return PebbleMachine(LAST, "marked_echo", head, (leaf,))


# ------------------------------------------------------------------
# zebra_k machines (last-last) and their reference implementation.
#
# Tree words carry an explicit root bracket; zebra output omits the output
# root bracket (it is the concatenation of the root's child subtrees).
# ------------------------------------------------------------------

def _tree_syms(alphabet):
    return _syms(tuple(alphabet) + (OPEN, CLOSE), marks=2)


def _depth_nav(name, emit, alphabet, cap):
    """Loop over the root's children: emit ``emit`` on every depth-1 '<'."""
    syms = _tree_syms(alphabet)
    states = ["q0"] + [f"d{c}" for c in range(cap + 1)]
    rules = [("q0", "^", "d0", "R", "")]
    for c in range(cap + 1):
        for s in syms:
            b = base(s)
            if b == OPEN:
                out = emit if c == 1 else ()
                rules.append((f"d{c}", s, f"d{min(c + 1, cap)}", "R", out))
            elif b == CLOSE:
                rules.append((f"d{c}", s, f"d{max(c - 1, 0)}", "R", ""))
            else:
                rules.append((f"d{c}", s, f"d{c}", "R", ""))
    finals = tuple(states[1:])
    return make_transducer(name, syms, tuple(set(emit)), tuple(states), "q0", finals, rules)


def _older_nav(name, emit, alphabet, cap):
    """Loop over the children of the older-marked node (the recent-marked
    one when both calls hit the same spot and the older mark was dropped)."""
    syms = _tree_syms(alphabet)
    states = ["q0", "SEEK", "BACK", "DONE", "OUT"] + [f"i{d}" for d in range(1, cap + 1)]
    rules = [("q0", "^", "SEEK", "R", "")]
    for s in syms:
        b, m = base(s), mark_of(s)
        rules.append(("SEEK", s, "i1" if (b == OPEN and m == OLDER) else "SEEK", "R", ""))
        rules.append(("BACK", s, "i1", "R", "") if (b == OPEN and m == RECENT)
                     else ("BACK", s, "BACK", "L", ""))
        for d in range(1, cap + 1):
            st = f"i{d}"
            if b == OPEN:
                out = emit if d == 1 else ()
                rules.append((st, s, f"i{min(d + 1, cap)}", "R", out))
            elif b == CLOSE:
                rules.append((st, s, "DONE" if d == 1 else f"i{d - 1}", "R", ""))
            else:
                rules.append((st, s, st, "R", ""))
        rules.append(("DONE", s, "DONE", "R", ""))
        rules.append(("OUT", s, "OUT", "R", ""))
    rules.append(("SEEK", "$", "BACK", "L", ""))
    rules.append(("BACK", "^", "OUT", "R", ""))
    finals = tuple(["DONE", "OUT"] + [f"i{d}" for d in range(1, cap + 1)])
    return make_transducer(name, syms, tuple(set(emit)), tuple(states), "q0", finals, rules)


def _tuple_leaf(name, alphabet):
    """Emits ``<label(older) # label(recent)>``; when the older mark was
    dropped (both loop indices equal) the recent label is used twice."""
    syms = _tree_syms(alphabet)
    letters = {s for s in syms if base(s) not in (OPEN, CLOSE)}
    states = ("q0", "SKO", "FBL", "CPO", "REW", "SKR", "CPR", "FIN", "OUT")
    rules = [("q0", "^", "SKO", "R", "")]
    for s in syms:
        b, m = base(s), mark_of(s)
        rules.append(("SKO", s, "CPO", "R", (OPEN,)) if (b == OPEN and m == OLDER)
                     else ("SKO", s, "SKO", "R", ""))
        rules.append(("FBL", s, "CPO", "R", (OPEN,)) if (b == OPEN and m == RECENT)
                     else ("FBL", s, "FBL", "L", ""))
        if s in letters:
            rules.append(("CPO", s, "CPO", "R", (base(s),)))
            rules.append(("CPR", s, "CPR", "R", (base(s),)))
        else:
            rules.append(("CPO", s, "REW", "L", (HASH,)))
            rules.append(("CPR", s, "FIN", "R", (CLOSE,)))
        rules.append(("REW", s, "REW", "L", ""))
        rules.append(("SKR", s, "CPR", "R", "") if (b == OPEN and m == RECENT)
                     else ("SKR", s, "SKR", "R", ""))
        rules.append(("FIN", s, "FIN", "R", ""))
        rules.append(("OUT", s, "OUT", "R", ""))
    rules += [("SKO", "$", "FBL", "L", ""),
              ("REW", "^", "SKR", "R", ""),
              ("FBL", "^", "OUT", "R", "")]
    out = tuple(set(alphabet) | {OPEN, CLOSE, HASH})
    return make_transducer(name, syms, out, states, "q0",
                           ("CPO", "SKR", "CPR", "FIN", "OUT"), rules)


def _const_chain(name, h, sym, alphabet):
    """Height-h degenerate chain whose net effect is emitting one ``sym``."""
    syms = _tree_syms(alphabet)
    if h == 1:
        rules = [("q0", "^", "S", "R", "")]
        for s in syms:
            rules.append(("S", s, "F", "R", (sym,)))
            rules.append(("F", s, "F", "R", ""))
        t = make_transducer(name, syms, (sym,), ("q0", "S", "F"), "q0", ("S", "F"), rules)
        return PebbleMachine(LASTLAST, name, t)
    child = _const_chain(f"{name}_", h - 1, sym, alphabet)
    t = _call_at_first(f"{name}_t", child.name, tuple(alphabet) + (OPEN, CLOSE), marks=2)
    return PebbleMachine(LASTLAST, name, t, (child,))


def zebra(k, alphabet=("a", "b")):
    """The zebra_k function as a last-last (2k+1)-pebble machine: 2k
    navigation layers drive the nested loop indices (each one only ever
    needs the two most recent of them) and the last layer prints tuples."""
    if k not in (1, 2):
        raise PebbletkError("zebra(k) is built for k in {1, 2}")
    cap = 2 * k + 2
    emit = PebbleMachine(LASTLAST, f"z{k}_emit", _tuple_leaf(f"z{k}_emit", alphabet))
    navs = []
    below = emit
    for level in range(2 * k, 0, -1):
        h = 2 * k + 2 - level  # height of the nav node at this level
        if level == 2 * k:
            emitted = (below.name,)
            children = (below,)
        else:
            op = _const_chain(f"z{k}_open{level}", h - 1, OPEN, alphabet)
            cl = _const_chain(f"z{k}_close{level}", h - 1, CLOSE, alphabet)
            emitted = (op.name, below.name, cl.name)
            children = (op, below, cl)
        maker = _depth_nav if level <= 2 else _older_nav
        t = maker(f"z{k}_nav{level}_t", emitted, alphabet, cap)
        below = PebbleMachine(LASTLAST, f"z{k}_nav{level}", t, children)
        navs.append(below)
    top = navs[-1]
    return PebbleMachine(LASTLAST, f"zebra{k}", top.root, top.children)


# ------------------------------------------------------------------
# Reference oracles
# ------------------------------------------------------------------

def parse_tree(word, expect_depth=None):
    """Parse a bracketed tree word (explicit root bracket) into nested lists;
    leaves are label strings.  Uniform leaf depth is enforced."""
    word = tuple(word)
    pos = 0

    def node():
        nonlocal pos
        if pos >= len(word) or word[pos] != OPEN:
            raise PebbletkError(f"expected '<' at offset {pos}")
        pos += 1
        children = []
        label = []
        while pos < len(word) and word[pos] != CLOSE:
            if word[pos] == OPEN:
                children.append(node())
            else:
                label.append(word[pos])
                pos += 1
        if pos >= len(word):
            raise PebbletkError("unbalanced tree word")
        pos += 1
        if children and label:
            raise PebbletkError("labels are only allowed at leaves")
        return children if children else "".join(label)

    root = node()
    if pos != len(word):
        raise PebbletkError("trailing content after tree")

    def depth(t):
        if isinstance(t, str):
            return 1
        ds = {depth(c) for c in t}
        if len(ds) != 1:
            raise PebbletkError("non-uniform branch length")
        return 1 + ds.pop()

    d = depth(root)
    if expect_depth is not None and d != expect_depth:
        raise PebbletkError(f"tree has depth {d}, expected {expect_depth}")
    return root


def reference_zebra(k, tree_word):
    """Direct recursive implementation of the 2k nested entangled loops."""
    root = parse_tree(tree_word, expect_depth=k + 1)

    # level numbering: loop t over i_t is level 2t-1, over j_t is level 2t
    def start(level, inode, jnode):
        if level == 2 * k:
            for leaf in jnode:
                out.append(OPEN)
                out.extend(inode)
                out.append(HASH)
                out.extend(leaf)
                out.append(CLOSE)
            return
        if level % 2 == 1:
            for child in inode:
                out.append(OPEN)
                start(level + 1, child, jnode)
                out.append(CLOSE)
        else:
            for child in jnode:
                out.append(OPEN)
                start(level + 1, inode, child)
                out.append(CLOSE)

    out = []
    start(1, root, root)
    return tuple(out)


def isq_ref(word):
    """u1#...#un -> (u1#)^n ... (un#)^n."""
    blocks = "".join(word).split(HASH)
    n = len(blocks)
    out = []
    for b in blocks:
        out.extend((tuple(b) + (HASH,)) * n)
    return tuple(out)


def make(name):
    """Corpus factory; ``zebra(k)`` is spelled ``zebra1`` / ``zebra2``."""
    registry = {
        "mapRev": lambda: PebbleMachine(BLIND, "mapRev", maprev()),
        "copier": lambda: PebbleMachine(BLIND, "copier", copier(name="copier_t")),
        "ulsq": ulsq,
        "square": square,
        "zebra1": lambda: zebra(1),
        "zebra2": lambda: zebra(2),
        "isq_ref": lambda: isq_ref,
    }
    if name not in registry:
        raise PebbletkError(f"unknown corpus name {name!r}")
    return registry[name]()
