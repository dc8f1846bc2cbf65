"""Deterministic two-way transducers with optional regular lookaround.

A machine reads ``^ u $`` (endmarkers at positions 0 and |u|+1).  A guard,
when a lookaround morphism ``nu`` is present, is a pair of ``nu`` classes of
the strict prefix and suffix around the head; ``None`` guards match any
context and may not be mixed with concrete guards on the same (state,
symbol) pair.
"""

from dataclasses import dataclass, field

from .errors import AlphabetError, DivergenceError, MachineError, RejectionError
from .monoid import Context, MonoidMorphism, context_word, generated_monoid
from .symbols import LEFT_END, RIGHT_END

LEFT = "L"
RIGHT = "R"


@dataclass(frozen=True)
class TwoWayTransducer:
    name: str
    input_alphabet: frozenset
    output_alphabet: frozenset
    states: tuple
    initial: str
    finals: frozenset
    delta: dict  # (state, symbol, guard) -> (state, LEFT|RIGHT)
    lam: dict    # same keys -> output word (tuple of symbols)
    lookaround: MonoidMorphism = None

    def validate(self):
        if set(self.delta) != set(self.lam):
            raise MachineError(f"{self.name}: delta and lambda domains differ")
        wildcarded = set()
        guarded = set()
        for (q, sym, guard), out in self.lam.items():
            if q not in self.states:
                raise MachineError(f"{self.name}: unknown state {q!r}")
            if sym not in self.input_alphabet and sym not in (LEFT_END, RIGHT_END):
                raise MachineError(f"{self.name}: unknown tape symbol {sym!r}")
            if sym in (LEFT_END, RIGHT_END) and out != ():
                raise MachineError(f"{self.name}: nonempty output on endmarker")
            (wildcarded if guard is None else guarded).add((q, sym))
        if wildcarded & guarded:
            raise MachineError(f"{self.name}: wildcard and guarded transitions overlap")
        if self.initial not in self.states:
            raise MachineError(f"{self.name}: bad initial state")
        if not self.finals <= set(self.states):
            raise MachineError(f"{self.name}: bad final states")
        return True


def make_transducer(name, input_alphabet, output_alphabet, states, initial,
                    finals, rules, lookaround=None):
    """``rules``: iterable of (state, symbol, next_state, direction, output)
    or, with guards, (state, symbol, guard, next_state, direction, output)."""
    delta, lam = {}, {}
    for rule in rules:
        if len(rule) == 5:
            q, sym, q2, d, out = rule
            guard = None
        else:
            q, sym, guard, q2, d, out = rule
        key = (q, sym, guard)
        if key in delta:
            raise MachineError(f"{name}: duplicate transition {key}")
        delta[key] = (q2, d)
        lam[key] = tuple(out)
    t = TwoWayTransducer(name, frozenset(input_alphabet), frozenset(output_alphabet),
                         tuple(states), initial, frozenset(finals), delta, lam,
                         lookaround)
    t.validate()
    return t


@dataclass(frozen=True)
class Run:
    word: tuple   # full tape ^ u $
    steps: tuple  # configurations (state, position), accepting


def _guards_for(t: TwoWayTransducer, word):
    if t.lookaround is None:
        return None
    nu = t.lookaround
    n = len(word)
    pre = [nu.target.identity]
    for sym in word:
        pre.append(nu.target.mul(pre[-1], nu.letter_image[sym]))
    suf = [nu.target.identity] * (n + 1)
    for j in range(n - 1, -1, -1):
        suf[j] = nu.target.mul(nu.letter_image[word[j]], suf[j + 1])
    def guard_at(pos):
        if pos == 0:
            return (pre[0], suf[0])
        if pos == n + 1:
            return (pre[n], nu.target.identity)
        return (pre[pos - 1], suf[pos])
    return guard_at


def _lookup(t: TwoWayTransducer, q, sym, guard):
    if guard is not None:
        hit = t.delta.get((q, sym, guard))
        if hit is not None:
            return (q, sym, guard)
    key = (q, sym, None)
    return key if key in t.delta else None


def run(t: TwoWayTransducer, word) -> Run:
    for sym in word:
        if sym not in t.input_alphabet:
            raise AlphabetError(f"{t.name}: letter {sym!r} not in input alphabet")
    tape = (LEFT_END,) + tuple(word) + (RIGHT_END,)
    n = len(word)
    guard_at = _guards_for(t, tuple(word))
    q, pos = t.initial, 0
    steps = []
    seen = set()
    while True:
        steps.append((q, pos))
        if pos == n + 1 and q in t.finals:
            return Run(tape, tuple(steps))
        if (q, pos) in seen:
            raise DivergenceError(f"{t.name}: configuration {(q, pos)} repeats on {''.join(word)!r}")
        seen.add((q, pos))
        guard = guard_at(pos) if guard_at else None
        key = _lookup(t, q, tape[pos], guard)
        if key is None:
            raise RejectionError(f"{t.name}: stuck in {(q, pos)} on {''.join(word)!r}")
        q2, d = t.delta[key]
        pos += 1 if d == RIGHT else -1
        if not 0 <= pos <= n + 1:
            raise RejectionError(f"{t.name}: fell off the tape on {''.join(word)!r}")
        q = q2


def emissions(t: TwoWayTransducer, word):
    """Ordered (position, output word) pairs along the accepting run."""
    r = run(t, word)
    guard_at = _guards_for(t, tuple(word))
    out = []
    for idx in range(len(r.steps) - 1):
        q, pos = r.steps[idx]
        guard = guard_at(pos) if guard_at else None
        key = _lookup(t, q, r.word[pos], guard)
        out.append((pos, t.lam[key]))
    qf, posf = r.steps[-1]
    guard = guard_at(posf) if guard_at else None
    key = _lookup(t, qf, r.word[posf], guard)
    if key is not None:
        out.append((posf, t.lam[key]))
    return out


def run_trace(t: TwoWayTransducer, word):
    """Accepting run as (state, position, output word) triples, one per
    configuration; the final configuration emits nothing."""
    r = run(t, word)
    guard_at = _guards_for(t, tuple(word))
    out = []
    for idx, (q, pos) in enumerate(r.steps):
        guard = guard_at(pos) if guard_at else None
        key = _lookup(t, q, r.word[pos], guard)
        piece = t.lam[key] if (key is not None and idx < len(r.steps) - 1) else ()
        out.append((q, pos, piece))
    return out


def output(t: TwoWayTransducer, word):
    return tuple(sym for _, piece in emissions(t, word) for sym in piece)


def crossing_sequence(t: TwoWayTransducer, word, i: int):
    if not 1 <= i <= len(word):
        raise IndexError(f"position {i} out of range 1..{len(word)}")
    r = run(t, word)
    return tuple(q for q, pos in r.steps if pos == i)


def production(t: TwoWayTransducer, word, i: int):
    if not 1 <= i <= len(word):
        raise IndexError(f"position {i} out of range 1..{len(word)}")
    return tuple(sym for pos, piece in emissions(t, word) if pos == i for sym in piece)


def production_on_context(t, mu: MonoidMorphism, ctx: Context):
    word, i = context_word(mu, ctx)
    return production(t, word, i)


def crossing_on_context(t: TwoWayTransducer, mu: MonoidMorphism, ctx: Context):
    word, i = context_word(mu, ctx)
    return crossing_sequence(t, word, i)


# ------------------------------------------------------------------
# Transition morphism (behavior monoid).
#
# The behavior of a factor is, per guard-class pair, a quadruple of partial
# maps  enter-left/exit-left, enter-left/exit-right, enter-right/exit-left,
# enter-right/exit-right  over states.  Gluing two factors chases the head
# across the shared border; a revisited (part, side, state) means the run
# dives forever, encoded as None.
# ------------------------------------------------------------------

def _quad_identity(nstates):
    none = (None,) * nstates
    ident = tuple(range(nstates))
    return (none, ident, ident, none)


def _glue(left, right, nstates):
    lll, llr, lrl, lrr = left
    rll, rlr, rrl, rrr = right

    def chase(part, side, q):
        seen = set()
        while True:
            if (part, side, q) in seen:
                return None
            seen.add((part, side, q))
            if part == 0:
                ex_l = lll[q] if side == 0 else lrl[q]
                ex_r = llr[q] if side == 0 else lrr[q]
                if ex_l is not None:
                    return ("L", ex_l)
                if ex_r is None:
                    return None
                part, side, q = 1, 0, ex_r
            else:
                ex_l = rll[q] if side == 0 else rrl[q]
                ex_r = rlr[q] if side == 0 else rrr[q]
                if ex_r is not None:
                    return ("R", ex_r)
                if ex_l is None:
                    return None
                part, side, q = 0, 1, ex_l

    ll, lr, rl, rr = [], [], [], []
    for q in range(nstates):
        res = chase(0, 0, q)
        ll.append(res[1] if res and res[0] == "L" else None)
        lr.append(res[1] if res and res[0] == "R" else None)
        res = chase(1, 1, q)
        rl.append(res[1] if res and res[0] == "L" else None)
        rr.append(res[1] if res and res[0] == "R" else None)
    return (tuple(ll), tuple(lr), tuple(rl), tuple(rr))


class _MachineComponent:
    """Behavior algebra of one machine inside a product transition morphism."""

    def __init__(self, t: TwoWayTransducer):
        self.t = t
        self.nstates = len(t.states)
        self.state_index = {q: i for i, q in enumerate(t.states)}
        if t.lookaround is None:
            self.nu = None
            self.classes = (0,)
        else:
            self.nu = t.lookaround
            self.classes = tuple(self.nu.witness)

    def _numul(self, a, b):
        return 0 if self.nu is None else self.nu.target.mul(a, b)

    def _nuletter(self, sym):
        return 0 if self.nu is None else self.nu.letter_image[sym]

    def identity_key(self):
        quad = _quad_identity(self.nstates)
        fam = tuple(((l, r), quad) for l in self.classes for r in self.classes)
        nuid = 0 if self.nu is None else self.nu.target.identity
        return (nuid, fam)

    def letter_key(self, sym):
        fam = []
        for l in self.classes:
            for r in self.classes:
                ll, lr = [], []
                for q in self.t.states:
                    guard = None if self.nu is None else (l, r)
                    key = _lookup(self.t, q, sym, guard)
                    if key is None:
                        ll.append(None)
                        lr.append(None)
                    else:
                        q2, d = self.t.delta[key]
                        qi = self.state_index[q2]
                        ll.append(qi if d == LEFT else None)
                        lr.append(qi if d == RIGHT else None)
                quad = (tuple(ll), tuple(lr), tuple(ll), tuple(lr))
                fam.append(((l, r), quad))
        return (self._nuletter(sym), tuple(fam))

    def compose_keys(self, x, y):
        nux, famx = x
        nuy, famy = y
        dx, dy = dict(famx), dict(famy)
        fam = []
        for l in self.classes:
            for r in self.classes:
                qx = dx[(l, self._numul(nuy, r))]
                qy = dy[(self._numul(l, nux), r)]
                fam.append(((l, r), _glue(qx, qy, self.nstates)))
        return (self._numul(nux, nuy), tuple(fam))


def transition_morphism(machines) -> MonoidMorphism:
    """Product transition morphism of one or more machines sharing an input
    alphabet: crossing sequences and productions at a position depend only
    on the context of that position under the result."""
    ms = list(machines)
    if not ms:
        raise MachineError("transition_morphism of no machines")
    alphabet = ms[0].input_alphabet
    for t in ms[1:]:
        if t.input_alphabet != alphabet:
            raise AlphabetError("machines do not share an input alphabet")
    comps = [_MachineComponent(t) for t in ms]
    identity_key = tuple(c.identity_key() for c in comps)
    generators = {identity_key: None}
    for sym in sorted(alphabet):
        generators.setdefault(tuple(c.letter_key(sym) for c in comps), None)
    letter_keys = {sym: tuple(c.letter_key(sym) for c in comps) for sym in alphabet}

    def compose(xk, yk):
        key = tuple(c.compose_keys(x, y) for c, x, y in zip(comps, xk, yk))
        return key, None

    monoid, pos, _ = generated_monoid(generators, identity_key, compose)
    images = {sym: pos[letter_keys[sym]] for sym in alphabet}
    return MonoidMorphism(tuple(sorted(alphabet)), monoid, images)


def validate_total(t: TwoWayTransducer, max_len=6, alphabet=None):
    """Check there is an accepting run on every word up to ``max_len``;
    returns the list of violating words (empty when total)."""
    from itertools import product as iproduct
    letters = sorted(alphabet if alphabet is not None else t.input_alphabet)
    bad = []
    for n in range(max_len + 1):
        for word in iproduct(letters, repeat=n):
            try:
                run(t, word)
            except (RejectionError, DivergenceError):
                bad.append(word)
    return bad
