"""Tree-structured pebble machines (blind / last / last-last) and their
recursive evaluation semantics.

A call at position i hands the callee the input word re-marked according to
the variant: blind children see the bare word, last children see exactly the
calling position, last-last children additionally see the previous calling
position (demoted to the older mark).  When a machine calls at the position
it was itself called at, the demoted mark would coincide with the fresh one;
the older mark is dropped in that case, which a callee at depth >= 3 can
detect (its two enclosing calls then hit the same spot).
"""

from dataclasses import dataclass, field
from itertools import product as iproduct

from .errors import MachineError, PebbletkError, RejectionError, DivergenceError
from .symbols import OLDER, RECENT, with_mark
from .twoway import TwoWayTransducer, emissions

BLIND = "blind"
LAST = "last"
LASTLAST = "lastlast"
VARIANTS = (BLIND, LAST, LASTLAST)


@dataclass(frozen=True)
class MarkedWord:
    base: tuple            # plain letters
    recent: int = None     # 1-based position of the most recent mark
    older: int = None      # second most recent (last-last only)

    def __post_init__(self):
        n = len(self.base)
        for p in (self.recent, self.older):
            if p is not None and not 1 <= p <= n:
                raise IndexError(f"mark position {p} out of range 1..{n}")
        if self.recent is not None and self.recent == self.older:
            raise PebbletkError("recent and older marks coincide")

    def letters(self):
        out = list(self.base)
        if self.recent is not None:
            out[self.recent - 1] = with_mark(out[self.recent - 1], RECENT)
        if self.older is not None:
            out[self.older - 1] = with_mark(out[self.older - 1], OLDER)
        return tuple(out)


def mark(word, i: int) -> MarkedWord:
    word = tuple(word)
    if not 1 <= i <= len(word):
        raise IndexError(f"position {i} out of range 1..{len(word)}")
    return MarkedWord(word, recent=i)


def plain(word) -> MarkedWord:
    return MarkedWord(tuple(word))


@dataclass(frozen=True)
class PebbleMachine:
    variant: str
    name: str
    root: object            # TwoWayTransducer or a program head (duck-typed)
    children: tuple = ()
    resolver: object = field(default=None, compare=False, repr=False)

    def child_by_name(self):
        return {c.name: c for c in self.children}

    def resolve_child(self, name):
        """Direct children first; constructed machines may materialize
        further ordinal-indexed children on demand."""
        for c in self.children:
            if c.name == name:
                return c
        if self.resolver is not None:
            return self.resolver(name)
        return None

    def is_leaf(self):
        return not self.children


def height(machine: PebbleMachine) -> int:
    if not machine.children:
        return 1
    return 1 + max(height(c) for c in machine.children)


def submachines(machine: PebbleMachine):
    """All nodes of the tree, root first (depth-first order)."""
    out = [machine]
    for c in machine.children:
        out.extend(submachines(c))
    return out


def branches(machine: PebbleMachine):
    """Root-to-leaf node sequences, in depth-first order."""
    if not machine.children:
        return [[machine]]
    out = []
    for c in machine.children:
        for b in branches(c):
            out.append([machine] + b)
    return out


def validate_structure(machine: PebbleMachine):
    if machine.variant not in VARIANTS:
        raise MachineError(f"unknown variant {machine.variant!r}")
    heights = {len(b) for b in branches(machine)}
    if len(heights) != 1:
        raise MachineError(f"{machine.name}: branches have different lengths {heights}")
    for node in submachines(machine):
        names = {c.name for c in node.children}
        if len(names) != len(node.children):
            raise MachineError(f"{node.name}: duplicate child names")
        if node.children and isinstance(node.root, TwoWayTransducer):
            if set(node.root.output_alphabet) != names:
                raise MachineError(
                    f"{node.name}: output alphabet {sorted(node.root.output_alphabet)} "
                    f"is not exactly the child name set {sorted(names)}")
        if machine.variant == BLIND and isinstance(node.root, TwoWayTransducer):
            for sym in node.root.input_alphabet:
                if len(sym) > 1:
                    raise MachineError(f"{node.name}: marked letter {sym!r} in a blind machine")
        if machine.variant in (LAST, LASTLAST) and isinstance(node.root, TwoWayTransducer):
            bases = {s for s in node.root.input_alphabet if len(s) == 1}
            for b in bases:
                if with_mark(b, RECENT) not in node.root.input_alphabet:
                    raise MachineError(f"{node.name}: missing marked letter for {b!r}")
                if machine.variant == LASTLAST and with_mark(b, OLDER) not in node.root.input_alphabet:
                    raise MachineError(f"{node.name}: missing double-marked letter for {b!r}")
    return True


def base_alphabet(machine: PebbleMachine):
    root = machine.root
    if isinstance(root, TwoWayTransducer):
        return frozenset(s for s in root.input_alphabet if len(s) == 1)
    return frozenset(root.base_alphabet())


def _head_emissions(node: PebbleMachine, marked: MarkedWord, cache):
    root = node.root
    if isinstance(root, TwoWayTransducer):
        return emissions(root, marked.letters())
    return [(pos, (sym,)) for pos, sym in root.trace(marked.letters())]


def _child_input(variant: str, current: MarkedWord, pos: int) -> MarkedWord:
    if variant == BLIND:
        return MarkedWord(current.base)
    if variant == LAST:
        return MarkedWord(current.base, recent=pos)
    older = current.recent if current.recent != pos else None
    return MarkedWord(current.base, recent=pos, older=older)


def evaluate(machine: PebbleMachine, marked: MarkedWord, cache=None):
    """Recursive pebble semantics; concatenates child outputs in run order."""
    if cache is None:
        cache = {}
    key = (id(machine), marked)
    hit = cache.get(key)
    if hit is not None:
        return hit
    out = []
    for pos, piece in _head_emissions(machine, marked, cache):
        for sym in piece:
            if machine.is_leaf():
                out.append(sym)
            else:
                child = machine.resolve_child(sym)
                if child is None:
                    raise MachineError(f"{machine.name}: output names unknown child {sym!r}")
                if not 1 <= pos <= len(marked.base):
                    raise MachineError(f"{machine.name}: call emitted at endmarker")
                out.extend(evaluate(child, _child_input(machine.variant, marked, pos), cache))
    result = tuple(out)
    cache[key] = result
    return result


def eval_blind(machine: PebbleMachine, word):
    if machine.variant != BLIND:
        raise MachineError(f"{machine.name} is not blind")
    return evaluate(machine, plain(word))


def eval_last(machine: PebbleMachine, word):
    if machine.variant != LAST:
        raise MachineError(f"{machine.name} is not a last machine")
    return evaluate(machine, plain(word))


def eval_lastlast(machine: PebbleMachine, word):
    if machine.variant != LASTLAST:
        raise MachineError(f"{machine.name} is not a last-last machine")
    return evaluate(machine, plain(word))


def eval_any(machine: PebbleMachine, word):
    return evaluate(machine, plain(word))


def validate_total(machine: PebbleMachine, max_len=6, alphabet=None):
    """Evaluate on every plain word up to ``max_len``; returns violations."""
    letters = sorted(alphabet if alphabet is not None else base_alphabet(machine))
    bad = []
    for n in range(max_len + 1):
        for word in iproduct(letters, repeat=n):
            try:
                eval_any(machine, word)
            except (RejectionError, DivergenceError) as exc:
                bad.append((word, exc))
    return bad
