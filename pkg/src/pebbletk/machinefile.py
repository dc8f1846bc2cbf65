"""Line-oriented machine files.

Two block forms::

    twoway NAME {
      input: a b #;
      output: a b;
      states: q0 F;
      initial: q0;
      finals: F;
      q0 ^ -> F R "";
      F a -> F R "a";
    }

    blind NAME { head: HEAD; children: [C1, C2]; }

``^`` and ``$`` are the endmarkers, directions are L/R, a marked letter is
the letter suffixed with ``!`` (or ``!!`` for the older mark).  Output
words are double-quoted; when the output alphabet contains a multi-letter
symbol (child names) the quoted word is space-separated.  A line
``STATE SYM => "OUT"`` declares an output without a transition and is
rejected at validation (lambda must share delta's domain).  ``//``
comments run to the end of the line.  Children may name either an earlier
pebble block or an earlier twoway block (wrapped as a height-1 machine).
"""

from .errors import MachineError, ParseError, SemanticError
from .pebble import PebbleMachine, VARIANTS, validate_structure
from .symbols import parse_word
from .twoway import TwoWayTransducer

_PUNCT = set("{}[],;:")


def _tokens(text):
    line, col = 1, 0
    i = 0
    out = []
    n = len(text)
    while i < n:
        ch = text[i]
        if ch == "\n":
            line += 1
            col = 0
            i += 1
            continue
        col += 1
        if ch in " \t\r":
            i += 1
            continue
        if text.startswith("//", i):
            while i < n and text[i] != "\n":
                i += 1
            continue
        if ch == '"':
            j = i + 1
            buf = []
            while j < n:
                c = text[j]
                if c == "\\":
                    if j + 1 >= n or text[j + 1] not in '"\\':
                        raise ParseError("bad escape", line, col)
                    buf.append(text[j + 1])
                    j += 2
                elif c == '"':
                    break
                elif c == "\n":
                    raise ParseError("unterminated string", line, col)
                else:
                    buf.append(c)
                    j += 1
            if j >= n:
                raise ParseError("unterminated string", line, col)
            out.append(("str", "".join(buf), line, col))
            col += j - i
            i = j + 1
            continue
        if ch in _PUNCT:
            out.append(("punct", ch, line, col))
            i += 1
            continue
        j = i
        while j < n and text[j] not in " \t\r\n\"" and text[j] not in _PUNCT:
            j += 1
        out.append(("atom", text[i:j], line, col))
        col += j - i - 1
        i = j
    return out


class _Stream:
    def __init__(self, tokens):
        self.toks = tokens
        self.i = 0

    def peek(self):
        return self.toks[self.i] if self.i < len(self.toks) else None

    def next(self, expect_kind=None, expect_val=None):
        t = self.peek()
        if t is None:
            raise ParseError("unexpected end of file")
        kind, val, line, col = t
        if expect_kind and kind != expect_kind:
            raise ParseError(f"expected {expect_kind}, got {val!r}", line, col)
        if expect_val and val != expect_val:
            raise ParseError(f"expected {expect_val!r}, got {val!r}", line, col)
        self.i += 1
        return t

    def at_punct(self, ch):
        t = self.peek()
        return t is not None and t[0] == "punct" and t[1] == ch


def _parse_output_word(text, out_alpha):
    multi = any(len(s) > 1 and not s.endswith("!") for s in out_alpha)
    if text == "":
        return ()
    if " " in text or multi:
        return tuple(t for t in text.split(" ") if t)
    return parse_word(text)


def _parse_twoway(s: _Stream, name):
    s.next("punct", "{")
    inp = out = states = initial = None
    finals = ()
    rules = []
    lam_only = []
    while not s.at_punct("}"):
        kind, val, line, col = s.next()
        if kind != "atom":
            raise ParseError(f"unexpected {val!r}", line, col)
        if s.at_punct(":"):
            s.next()
            items = []
            while not s.at_punct(";"):
                t = s.next()
                if t[0] == "punct" and t[1] == ",":
                    continue
                items.append(t[1])
            s.next("punct", ";")
            if val == "input":
                inp = tuple(items)
            elif val == "output":
                out = tuple(items)
            elif val == "states":
                states = tuple(items)
            elif val == "initial":
                if len(items) != 1:
                    raise ParseError("initial takes one state", line, col)
                initial = items[0]
            elif val == "finals":
                finals = tuple(items)
            else:
                raise ParseError(f"unknown directive {val!r}", line, col)
            continue
        state = val
        sym = s.next("atom")[1]
        arrow = s.next("atom")[1]
        if arrow == "->":
            q2 = s.next("atom")[1]
            d = s.next("atom")[1]
            if d not in ("L", "R"):
                raise ParseError(f"direction must be L or R, got {d!r}", line, col)
            text = s.next("str")[1]
            rules.append((state, sym, q2, d, text))
        elif arrow == "=>":
            text = s.next("str")[1]
            lam_only.append((state, sym, text))
        else:
            raise ParseError(f"expected -> or =>, got {arrow!r}", line, col)
        s.next("punct", ";")
    s.next("punct", "}")
    if inp is None or out is None or states is None or initial is None:
        raise SemanticError(f"{name}: missing input/output/states/initial")
    if lam_only:
        st, sym, _ = lam_only[0]
        raise SemanticError(
            f"{name}: output declared without a transition on ({st}, {sym}); "
            f"lambda must have the same domain as delta")
    delta, lam = {}, {}
    for state, sym, q2, d, text in rules:
        key = (state, sym, None)
        if key in delta:
            raise SemanticError(f"{name}: duplicate transition on ({state}, {sym})")
        delta[key] = (q2, d)
        lam[key] = _parse_output_word(text, out)
    t = TwoWayTransducer(name, frozenset(inp), frozenset(out), states, initial,
                         frozenset(finals), delta, lam)
    try:
        t.validate()
    except MachineError as exc:
        raise SemanticError(str(exc)) from exc
    return t


def _parse_pebble(s: _Stream, variant, name, defs):
    s.next("punct", "{")
    head = None
    child_names = None
    while not s.at_punct("}"):
        kind, val, line, col = s.next()
        s.next("punct", ":")
        if val == "head":
            head = s.next("atom")[1]
        elif val == "children":
            s.next("punct", "[")
            child_names = []
            while not s.at_punct("]"):
                t = s.next()
                if t[0] == "punct" and t[1] == ",":
                    continue
                child_names.append(t[1])
            s.next("punct", "]")
        else:
            raise ParseError(f"unknown directive {val!r}", line, col)
        s.next("punct", ";")
    s.next("punct", "}")
    if head is None or child_names is None:
        raise SemanticError(f"{name}: pebble block needs head and children")
    if head not in defs or not isinstance(defs[head], TwoWayTransducer):
        raise SemanticError(f"{name}: unknown head transducer {head!r}")
    kids = []
    for cn in child_names:
        child = defs.get(cn)
        if child is None:
            raise SemanticError(f"{name}: unknown child {cn!r}")
        if isinstance(child, TwoWayTransducer):
            child = PebbleMachine(variant, cn, child)
        elif child.variant != variant:
            raise SemanticError(f"{name}: child {cn!r} has variant {child.variant}")
        kids.append(child)
    m = PebbleMachine(variant, name, defs[head], tuple(kids))
    try:
        validate_structure(m)
    except MachineError as exc:
        raise SemanticError(str(exc)) from exc
    return m


def parse(text):
    """Parse a machine file into an ordered name -> definition mapping."""
    s = _Stream(_tokens(text))
    defs = {}
    while s.peek() is not None:
        kind, val, line, col = s.next()
        if kind != "atom":
            raise ParseError(f"unexpected {val!r}", line, col)
        namet = s.next("atom")
        name = namet[1]
        if name in defs:
            raise SemanticError(f"duplicate definition name {name!r}")
        if val == "twoway":
            defs[name] = _parse_twoway(s, name)
        elif val in VARIANTS:
            defs[name] = _parse_pebble(s, val, name, defs)
        else:
            raise ParseError(f"unknown block kind {val!r}", line, col)
    return defs


# ------------------------------------------------------------------
# Printing (deterministic, round-trips to structural equality)
# ------------------------------------------------------------------

def _render_output_word(word, out_alpha):
    multi = any(len(s) > 1 and not s.endswith("!") for s in out_alpha)
    if multi:
        return " ".join(word)
    return "".join(word)


def _escape(text):
    return text.replace("\\", "\\\\").replace('"', '\\"')


def print_twoway(t: TwoWayTransducer) -> str:
    lines = [f"twoway {t.name} {{"]
    lines.append("  input: " + " ".join(sorted(t.input_alphabet)) + ";")
    lines.append("  output: " + " ".join(sorted(t.output_alphabet)) + ";")
    lines.append("  states: " + " ".join(t.states) + ";")
    lines.append(f"  initial: {t.initial};")
    lines.append("  finals: " + " ".join(sorted(t.finals)) + ";")
    order = {q: i for i, q in enumerate(t.states)}
    for (q, sym, guard) in sorted(t.delta, key=lambda k: (order[k[0]], k[1])):
        if guard is not None:
            raise SemanticError(f"{t.name}: guarded machines have no file syntax")
        q2, d = t.delta[(q, sym, guard)]
        out = _escape(_render_output_word(t.lam[(q, sym, guard)], t.output_alphabet))
        lines.append(f'  {q} {sym} -> {q2} {d} "{out}";')
    lines.append("}")
    return "\n".join(lines) + "\n"


def _emit_blocks(machine, blocks, objects, top=True):
    """Append the blocks defining ``machine`` into ``blocks`` (an ordered
    name -> text mapping), deduplicating structurally equal definitions."""

    def record(name, obj, text):
        if name in objects:
            if objects[name] != obj:
                raise SemanticError(f"conflicting definitions for {name!r}")
            return
        objects[name] = obj
        blocks[name] = text

    if isinstance(machine, TwoWayTransducer):
        record(machine.name, machine, print_twoway(machine))
        return

    def emit(node, is_top):
        for c in node.children:
            emit(c, False)
        if not isinstance(node.root, TwoWayTransducer):
            raise SemanticError(
                f"{node.name}: constructed program heads have no file syntax")
        if is_top and node.is_leaf():
            if node.root.name == node.name:
                raise SemanticError(f"name clash on {node.root.name!r}")
            record(node.root.name, node.root, print_twoway(node.root))
            record(node.name, node,
                   f"{node.variant} {node.name} {{ head: {node.root.name}; "
                   f"children: []; }}\n")
        elif node.is_leaf():
            if node.root.name != node.name:
                raise SemanticError(
                    f"leaf node {node.name!r} must carry a transducer of the "
                    f"same name to round-trip")
            record(node.name, node.root, print_twoway(node.root))
        else:
            if node.root.name == node.name:
                raise SemanticError(f"name clash on {node.root.name!r}")
            record(node.root.name, node.root, print_twoway(node.root))
            kids = ", ".join(c.name for c in node.children)
            record(node.name, node,
                   f"{node.variant} {node.name} {{ head: {node.root.name}; "
                   f"children: [{kids}]; }}\n")

    emit(machine, top)


def print_machine(machine) -> str:
    """All blocks needed to define a machine (leaves first)."""
    blocks, objects = {}, {}
    _emit_blocks(machine, blocks, objects)
    return "\n".join(blocks.values())


def print_definitions(machines) -> str:
    blocks, objects = {}, {}
    for m in machines:
        _emit_blocks(m, blocks, objects)
    return "\n".join(blocks.values())


def as_pebble(defn, variant="blind"):
    """Top-level lookup result as a pebble machine (wrapping raw
    transducers as height-1 machines)."""
    if isinstance(defn, PebbleMachine):
        return defn
    return PebbleMachine(variant, defn.name, defn)
