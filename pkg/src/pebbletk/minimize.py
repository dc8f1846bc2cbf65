"""Layer removal for blind and last pebble machines, the minimization
loop, bounded equivalence checking, and explication of constructed heads.

A removal replaces the head of a non-pumpable height-k machine by a
simulating program of height k-1:

* blind: the new head replays the old head; calls made at positions in the
  root frontier of the factorization forest are inlined (walking the
  callee's whole run), calls to leaf children elsewhere emit the callee's
  full output in place (legal exactly because their productions vanish off
  the frontier; violation raises PumpableViolation), remaining calls
  become recursive calls to simulating children.

* last: at each call the callee's accepting run on the marked word is
  sliced by the observation classes of the call site.  Slices inside the
  observed region are inlined in place with nested calls redirected
  through pretend-position heads; slices in the observed-by region are
  inlined by walking them (nested calls then sit at the right spot for
  plain subtree children); leaf slices in neither class must produce
  nothing (violation raises PumpableViolation); the rest become recursive
  calls carrying their slice ordinal.

Constructed sub-heads are interpreted ProgramTransducers; their bounded
run descriptors are slice and frontier ordinals, resolved against the
callee's own marked input.  Blind simulating heads can additionally be
explicated into explicit transducers over forest-annotated symbols.
"""

from dataclasses import dataclass
from itertools import product as iproduct

from .errors import ExplicationError, MachineError, PebbletkError, PumpableViolation
from .forest import (DOWN, NEITHER, UP, build_forest, frontier, lemma3_interval,
                     ob_do, ob_up, origin, position_classes)
from .monoid import MonoidMorphism
from .pebble import (BLIND, LAST, MarkedWord, PebbleMachine, branches, evaluate,
                     height, plain, submachines)
from .pumping import (DEFAULT_BUDGET, is_pumpable_blind, is_pumpable_last,
                      machine_morphism)
from .symbols import RECENT, mark_of, strip_marks
from .twoway import TwoWayTransducer, make_transducer, run_trace


@dataclass(frozen=True)
class RunDescriptor:
    """Bounded encoding of the run a constructed sub-head follows: the full
    accepting run, the s-th slice of it, or a pretend call position given
    as an ordinal into the positions observed from the actual mark."""
    kind: str   # 'accept' | 'slice' | 'pretend'
    index: int = 0


class RemovalContext:
    """Caches shared by all program heads produced from one source machine:
    the transition morphism, forests, per-pivot observation classes, runs,
    and the Lemma 4 / Lemma 7 assertion bookkeeping."""

    def __init__(self, source: PebbleMachine, mu: MonoidMorphism):
        self.source = source
        self.mu = mu
        self._forest = {}
        self._classes = {}
        self._obup = {}
        self._runs = {}
        self._leafrec = {}

    def forest(self, base):
        hit = self._forest.get(base)
        if hit is None:
            hit = build_forest(self.mu, base)
            self._forest[base] = hit
        return hit

    def classes(self, base, i):
        key = (base, i)
        hit = self._classes.get(key)
        if hit is None:
            f = self.forest(base)
            hit = position_classes(f, i)
            t = origin(f, i)
            if t.parent is not None:
                # Lemma on the interval shape of the observed-by-only region,
                # used as a runtime assertion on every pivot we slice at
                down_only = {j for j in range(1, len(base) + 1) if hit[j] == DOWN}
                if down_only != lemma3_interval(f, i):
                    raise PebbletkError(f"interval structure violated at pivot {i}")
            self._classes[key] = hit
        return hit

    def obup_sorted(self, base, i):
        key = (base, i)
        hit = self._obup.get(key)
        if hit is None:
            hit = tuple(sorted(ob_up(self.forest(base), i)))
            self._obup[key] = hit
        return hit

    def head_trace(self, root, letters):
        key = (id(root), letters)
        hit = self._runs.get(key)
        if hit is None:
            if isinstance(root, TwoWayTransducer):
                hit = tuple(run_trace(root, letters))
            else:
                emitted = root.trace(letters)
                hit = tuple((None, pos, (sym,)) for pos, sym in emitted)
            self._runs[key] = hit
        return hit

    def leaf_record(self, leaf_node, base):
        """Full output of a leaf child on the bare word."""
        key = (id(leaf_node), base)
        hit = self._leafrec.get(key)
        if hit is None:
            hit = tuple(sym for _, _, piece in
                        self.head_trace(leaf_node.root, base) for sym in piece)
            self._leafrec[key] = hit
        return hit

    def leaf_assert(self, leaf_node, base):
        """Key runtime assertion: emitting a leaf's output in place (a call
        at a non-frontier position reached through non-frontier calls) is
        only sound when its productions vanish off the root frontier."""
        key = ("assert", id(leaf_node), base)
        if key in self._leafrec:
            return
        f = self.forest(base)
        fro = set(frontier(f, f.root)) if f.root is not None else set()
        for _, pos, piece in self.head_trace(leaf_node.root, base):
            if piece and 1 <= pos <= len(base) and pos not in fro:
                raise PumpableViolation(
                    f"{leaf_node.name} produced {piece} at non-frontier "
                    f"position {pos}; the source machine was pumpable")
        self._leafrec[key] = True


def _recent_mark(letters):
    for idx, sym in enumerate(letters):
        if mark_of(sym) == RECENT:
            return idx + 1
    return None


def _slice_ranges(positions, classes):
    """Maximal homogeneous index ranges [(lo, hi, cls)] per Def. of slicing."""
    out = []
    j = 0
    while j < len(positions):
        cls = classes[positions[j]]
        k = j
        while k < len(positions) and classes[positions[k]] == cls:
            k += 1
        out.append((j, k, cls))
        j = k
    return out


class ProgramTransducer:
    """Interpreted control program standing in for a two-way transducer."""

    kind = "program"

    def __init__(self, ctx: RemovalContext, node: PebbleMachine):
        self.ctx = ctx
        self.tnode = node

    def base_alphabet(self):
        root = self.tnode.root
        if isinstance(root, TwoWayTransducer):
            return {s for s in root.input_alphabet if len(s) == 1}
        return root.base_alphabet()

    def trace(self, letters):
        raise NotImplementedError

    def production(self, letters, i):
        return tuple(sym for pos, sym in self.trace(tuple(letters)) if pos == i)

    def output(self, letters):
        return tuple(sym for _, sym in self.trace(tuple(letters)))


class BlindSimProgram(ProgramTransducer):
    kind = "simulate"

    def trace(self, letters):
        ctx = self.ctx
        base = strip_marks(letters)
        f = ctx.forest(base)
        fro = frontier(f, f.root) if f.root is not None else ()
        froset = set(fro)
        byname = self.tnode.child_by_name()
        out = []
        for _, pos, word in ctx.head_trace(self.tnode.root, base):
            for sym in word:
                child = byname[sym]
                if pos in froset:
                    # inline the callee's whole run, walking along it
                    for _, p2, w2 in ctx.head_trace(child.root, base):
                        out.extend((p2, s2) for s2 in w2)
                elif child.is_leaf():
                    ctx.leaf_assert(child, base)
                    out.extend((pos, s2) for s2 in ctx.leaf_record(child, base))
                else:
                    out.append((pos, f"sim_{child.name}"))
        return out


class LastSimProgram(ProgramTransducer):
    kind = "simulate"

    def __init__(self, ctx, node, desc: RunDescriptor):
        super().__init__(ctx, node)
        self.desc = desc

    def _own_segment(self, letters):
        ctx = self.ctx
        base = strip_marks(letters)
        full = ctx.head_trace(self.tnode.root, letters)
        if self.desc.kind == "accept":
            return base, full
        markpos = _recent_mark(letters)
        if markpos is None:
            return base, ()
        classes = ctx.classes(base, markpos)
        ranges = _slice_ranges([st[1] for st in full], classes)
        if self.desc.index >= len(ranges):
            return base, ()
        lo, hi, _ = ranges[self.desc.index]
        return base, full[lo:hi]

    def trace(self, letters):
        ctx = self.ctx
        base, segment = self._own_segment(tuple(letters))
        byname = self.tnode.child_by_name()
        out = []
        for _, i, word in segment:
            for sym in word:
                child = byname[sym]
                w_letters = MarkedWord(base, recent=i).letters()
                sub = ctx.head_trace(child.root, w_letters)
                classes = ctx.classes(base, i)
                obup = None
                for sidx, (lo, hi, cls) in enumerate(
                        _slice_ranges([st[1] for st in sub], classes)):
                    if cls == UP:
                        for _, p2, w2 in sub[lo:hi]:
                            for s2 in w2:
                                if child.is_leaf():
                                    out.append((i, s2))
                                else:
                                    g = child.child_by_name()[s2]
                                    if obup is None:
                                        obup = ctx.obup_sorted(base, i)
                                    out.append((i, f"pe{obup.index(p2)}_{g.name}"))
                    elif cls == DOWN:
                        for _, p2, w2 in sub[lo:hi]:
                            for s2 in w2:
                                if child.is_leaf():
                                    out.append((p2, s2))
                                else:
                                    out.append((p2, child.child_by_name()[s2].name))
                    else:
                        if child.is_leaf():
                            stray = [s2 for _, _, w2 in sub[lo:hi] for s2 in w2]
                            if stray:
                                raise PumpableViolation(
                                    f"{child.name} produced {stray} on a slice "
                                    f"outside both observation classes; the "
                                    f"source machine was pumpable")
                        else:
                            out.append((i, f"sim{sidx}_{child.name}"))
        return out


class PretendProgram(ProgramTransducer):
    """Simulates the callee of an inlined call at the pretend position: the
    input's actual mark only serves to resolve where the pretend mark is."""

    kind = "normal-run-pretend"

    def __init__(self, ctx, gnode, ordinal):
        super().__init__(ctx, gnode)
        self.ordinal = ordinal

    def trace(self, letters):
        letters = tuple(letters)
        base = strip_marks(letters)
        markpos = _recent_mark(letters)
        if markpos is None:
            return []
        obup = self.ctx.obup_sorted(base, markpos)
        if self.ordinal >= len(obup):
            return []
        pretend = obup[self.ordinal]
        w_letters = MarkedWord(base, recent=pretend).letters()
        out = []
        for _, pos, word in self.ctx.head_trace(self.tnode.root, w_letters):
            out.extend((pos, sym) for sym in word)
        return out


class _LastResolver:
    """Materializes slice- and pretend-ordinal children on demand; the
    ordinal space is bounded per input but not statically, so children
    beyond the eager representatives are created lazily (deterministically,
    cached by name)."""

    def __init__(self, ctx, tnode):
        self.ctx = ctx
        self.tnode = tnode
        self.cache = {}

    def seed(self, machine: PebbleMachine):
        self.cache[machine.name] = machine
        return machine

    def __call__(self, name):
        hit = self.cache.get(name)
        if hit is not None:
            return hit
        kind, _, rest = name.partition("_")
        made = None
        if kind.startswith("sim") and kind[3:].isdigit():
            child = self.tnode.child_by_name().get(rest)
            if child is not None:
                made = _build_last_sim(self.ctx, child,
                                       RunDescriptor("slice", int(kind[3:])))
        elif kind.startswith("pe") and kind[2:].isdigit():
            for child in self.tnode.children:
                g = child.child_by_name().get(rest)
                if g is not None:
                    made = _make_pretend(self.ctx, g, int(kind[2:]))
                    break
        if made is not None:
            self.cache[name] = made
        return made


def _make_pretend(ctx, gnode, ordinal):
    return PebbleMachine(LAST, f"pe{ordinal}_{gnode.name}",
                         PretendProgram(ctx, gnode, ordinal), gnode.children)


def _build_last_sim(ctx, tnode, desc):
    name = (f"sim{desc.index}_{tnode.name}" if desc.kind == "slice"
            else f"sim_{tnode.name}")
    prog = LastSimProgram(ctx, tnode, desc)
    if all(c.is_leaf() for c in tnode.children):
        return PebbleMachine(LAST, name, prog)
    resolver = _LastResolver(ctx, tnode)
    kids = []
    for child in tnode.children:
        kids.append(resolver.seed(
            _build_last_sim(ctx, child, RunDescriptor("slice", 0))))
        for g in child.children:
            kids.append(g)
            kids.append(resolver.seed(_make_pretend(ctx, g, 0)))
    return PebbleMachine(LAST, name, prog, tuple(kids), resolver=resolver)


def _build_blind_sim(ctx, tnode):
    name = f"sim_{tnode.name}"
    prog = BlindSimProgram(ctx, tnode)
    if all(c.is_leaf() for c in tnode.children):
        return PebbleMachine(BLIND, name, prog)
    kids = []
    for child in tnode.children:
        kids.append(_build_blind_sim(ctx, child))
        kids.extend(child.children)
    return PebbleMachine(BLIND, name, prog, tuple(kids))


def remove_layer_blind(machine: PebbleMachine, mu=None, precheck=True,
                       budget=DEFAULT_BUDGET) -> PebbleMachine:
    if machine.variant != BLIND:
        raise MachineError(f"{machine.name} is not blind")
    if height(machine) < 2:
        raise MachineError("cannot remove a layer from a height-1 machine")
    mu = mu if mu is not None else resolve_morphism(machine)
    if precheck and is_pumpable_blind(machine, mu, budget) is not None:
        raise PumpableViolation(
            f"{machine.name} is pumpable; refusing to remove a layer")
    ctx = RemovalContext(machine, mu)
    return _build_blind_sim(ctx, machine)


def remove_layer_last(machine: PebbleMachine, mu=None, precheck=True,
                      budget=DEFAULT_BUDGET) -> PebbleMachine:
    if machine.variant != LAST:
        raise MachineError(f"{machine.name} is not a last machine")
    if height(machine) < 2:
        raise MachineError("cannot remove a layer from a height-1 machine")
    for node in submachines(machine):
        if not isinstance(node.root, TwoWayTransducer):
            raise MachineError(
                "repeated last-layer removal on constructed heads is not "
                "supported; slicing needs explicit child runs")
    mu = mu if mu is not None else resolve_morphism(machine)
    if precheck and is_pumpable_last(machine, mu, budget) is not None:
        raise PumpableViolation(
            f"{machine.name} is pumpable; refusing to remove a layer")
    ctx = RemovalContext(machine, mu)
    return _build_last_sim(ctx, machine, RunDescriptor("accept"))


def resolve_morphism(machine: PebbleMachine) -> MonoidMorphism:
    """Transition morphism for original machines; constructed machines are
    measured against the morphism their forests were built from."""
    root = machine.root
    if isinstance(root, ProgramTransducer):
        return root.ctx.mu
    return machine_morphism(machine)


def minimize(machine: PebbleMachine, mu=None, budget=DEFAULT_BUDGET):
    """Repeatedly remove layers while the machine is not pumpable; returns
    (machine, final height, number of removals)."""
    if machine.variant not in (BLIND, LAST):
        raise MachineError("minimize handles blind and last machines")
    pump = is_pumpable_blind if machine.variant == BLIND else is_pumpable_last
    remove = remove_layer_blind if machine.variant == BLIND else remove_layer_last
    mu = mu if mu is not None else resolve_morphism(machine)
    current = machine
    removals = 0
    while height(current) >= 2:
        if pump(current, mu, budget) is not None:
            break
        current = remove(current, mu, precheck=False, budget=budget)
        removals += 1
    return current, height(current), removals


def equivalence_check(m1: PebbleMachine, m2: PebbleMachine, max_len: int,
                      alphabet=None):
    """Exhaustive comparison on all words up to max_len; returns the first
    counterexample in length-then-lexicographic order, or None."""
    from .pebble import base_alphabet
    a1 = set(base_alphabet(m1))
    a2 = set(base_alphabet(m2))
    if alphabet is None:
        if a1 != a2:
            raise MachineError("machines have different input alphabets")
        alphabet = a1
    letters = sorted(alphabet)
    for n in range(max_len + 1):
        for word in iproduct(letters, repeat=n):
            if evaluate(m1, plain(word)) != evaluate(m2, plain(word)):
                return word
    return None


# ------------------------------------------------------------------
# Explication of blind simulating heads into explicit transducers over
# forest-annotated symbols.
# ------------------------------------------------------------------

ANN_SEP = "¦"  # broken bar, assumed absent from machine alphabets


@dataclass
class Explicated:
    machine: TwoWayTransducer
    annotate: object     # word (plain letters) -> annotated letters
    descriptors: int


def _ann(sym, slot, recid):
    return f"{sym}{ANN_SEP}{'-' if slot is None else slot}{ANN_SEP}{recid}"


def explicate(target, max_descriptors=20000, support_len=6,
              alphabet=None) -> Explicated:
    """Breadth-first enumeration of the reachable control descriptors of a
    constructed head into an explicit transducer.

    Plain transducers explicate to themselves.  Blind simulating heads
    become machines over symbols annotated with the root-frontier slot and
    a record id for the bounded leaf outputs; the record vocabulary is
    enumerated from all words up to ``support_len``, so equality holds on
    any input whose record was enumerated (others reject loudly).
    """
    root = target.root if isinstance(target, PebbleMachine) else target
    if isinstance(root, TwoWayTransducer):
        return Explicated(root, lambda letters: tuple(letters), len(root.states))
    if not isinstance(root, BlindSimProgram):
        raise ExplicationError(
            f"explication of {type(root).__name__} heads is not supported")
    prog = root
    ctx = prog.ctx
    tnode = prog.tnode
    T = tnode.root
    if not isinstance(T, TwoWayTransducer):
        raise ExplicationError("explication needs a raw transducer underneath")
    byname = tnode.child_by_name()
    children = list(tnode.children)
    leaf_level = all(c.is_leaf() for c in children)
    letters = sorted(alphabet if alphabet is not None else prog.base_alphabet())

    # enumerate slot bound and leaf-output records over the support
    records = {}
    max_slot = 0
    for n in range(support_len + 1):
        for word in iproduct(letters, repeat=n):
            f = ctx.forest(word)
            fro = frontier(f, f.root) if f.root is not None else ()
            max_slot = max(max_slot, len(fro))
            rec = tuple((c.name, ctx.leaf_record(c, word))
                        for c in children if c.is_leaf())
            records.setdefault(rec, len(records))

    def record_of(word):
        rec = tuple((c.name, ctx.leaf_record(c, word))
                    for c in children if c.is_leaf())
        if rec not in records:
            raise ExplicationError(
                "input word needs a leaf-output record outside the support")
        return records[rec]

    def annotate(word):
        word = tuple(word)
        f = ctx.forest(word)
        fro = frontier(f, f.root) if f.root is not None else ()
        slot_of = {p: s for s, p in enumerate(fro)}
        recid = record_of(word)
        return tuple(_ann(sym, slot_of.get(p + 1), recid)
                     for p, sym in enumerate(word))

    rec_values = {i: r for r, i in records.items()}

    def mapped_batch(q, sym, recid):
        out = []
        for s in T.lam[(q, sym, None)]:
            child = byname[s]
            if child.is_leaf():
                out.extend(dict(rec_values[recid])[child.name])
            else:
                out.append(f"sim_{child.name}")
        return tuple(out)

    child_index = {c.name: i for i, c in enumerate(children)}

    def step(desc, sym, slot, recid):
        # returns None (undefined), or (desc', direction, output word);
        # acceptance is by the machine's final states
        phase = desc[0]
        if phase == "m":
            q = desc[1]
            key = (q, sym, None)
            if key not in T.delta:
                return None
            syms = T.lam[key]
            if slot is not None and syms:
                ci = child_index[syms[0]]
                return (("w0", q, 0, ci, slot), "L", ())
            q2, d = T.delta[key]
            emit = mapped_batch(q, sym, recid) if syms else ()
            return (("m", q2), d, emit)
        if phase == "w0":
            q, si, ci, slot0 = desc[1:]
            if sym != "^":
                return (desc, "L", ())
            tp = children[ci].root
            key = (tp.initial, "^", None)
            if key not in tp.delta:
                return None
            q2, d = tp.delta[key]
            return (("w", q, si, ci, slot0, q2), d, ())
        if phase == "w":
            q, si, ci, slot0, q2 = desc[1:]
            tp = children[ci].root
            key = (q2, sym, None)
            if key in tp.delta:
                q3, d = tp.delta[key]
                return (("w", q, si, ci, slot0, q3), d, tp.lam[key])
            if sym == "$" and q2 in tp.finals:
                return (("ret", q, si, slot0), "L", ())
            return None
        if phase == "ret":
            q, si, slot0 = desc[1:]
            if slot != slot0:
                return (desc, "L", ())
            key = (q, sym, None)
            syms = T.lam[key]
            if si + 1 < len(syms):
                ci = child_index[syms[si + 1]]
                return (("w0", q, si + 1, ci, slot0), "L", ())
            q2, d = T.delta[key]
            return (("m", q2), d, ())
        raise AssertionError(phase)

    # breadth-first closure over descriptors x annotated symbols
    init = ("m", T.initial)
    seen = {init}
    queue = [init]
    delta = {}
    lam = {}
    ann_syms = [(s, sl, r) for s in letters
                for sl in [None] + list(range(max_slot))
                for r in range(len(records))]
    tape_syms = [("^", None, 0), ("$", None, 0)] + ann_syms
    out_alpha = set()
    while queue:
        desc = queue.pop(0)
        if len(seen) > max_descriptors:
            raise ExplicationError(
                f"descriptor space exceeded cap {max_descriptors}")
        for sym, slot, recid in tape_syms:
            res = step(desc, sym, slot, recid)
            if res is None:
                continue
            desc2, d, emit = res
            key_sym = sym if sym in ("^", "$") else _ann(sym, slot, recid)
            delta[(str(desc), key_sym, None)] = (str(desc2), d)
            lam[(str(desc), key_sym, None)] = tuple(emit)
            out_alpha.update(emit)
            if desc2 not in seen:
                seen.add(desc2)
                queue.append(desc2)

    finals = {str(d) for d in seen if d[0] == "m" and d[1] in T.finals}
    states = tuple(str(d) for d in seen)
    in_alpha = {_ann(s, sl, r) for (s, sl, r) in ann_syms}
    machine = TwoWayTransducer(
        f"explicated_{tnode.name}", frozenset(in_alpha),
        frozenset(out_alpha) or frozenset({"_"}), states, str(init),
        frozenset(finals), delta, lam)
    machine.validate()
    return Explicated(machine, annotate, len(seen))
