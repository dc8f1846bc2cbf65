"""Command-line interface.

Exit codes: 0 success, 1 usage or parse error, 2 semantic error,
3 inconclusive (enumeration budget), 4 counterexample found (equiv).
"""

import argparse
import sys

from .errors import (BudgetExceeded, MachineError, ParseError, PebbletkError,
                     SemanticError)
from .forest import build_forest, print_forest
from .machinefile import as_pebble, parse, print_machine
from .minimize import equivalence_check, explicate, minimize, resolve_morphism
from .pebble import BLIND, LAST, PebbleMachine, eval_any, height
from .pumping import (is_pumpable_blind, is_pumpable_last, witness_audit,
                      DEFAULT_BUDGET)
from .symbols import parse_word, render_word
from .twoway import TwoWayTransducer

EXIT_OK = 0
EXIT_USAGE = 1
EXIT_SEMANTIC = 2
EXIT_INCONCLUSIVE = 3
EXIT_COUNTEREXAMPLE = 4


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def _load(path, name):
    with open(path, encoding="utf-8") as fh:
        defs = parse(fh.read())
    if name not in defs:
        raise SemanticError(f"no machine named {name!r} in {path}")
    return as_pebble(defs[name])


def _pumpable(machine, budget):
    if machine.variant == BLIND:
        return is_pumpable_blind(machine, budget=budget)
    if machine.variant == LAST:
        return is_pumpable_last(machine, budget=budget)
    raise SemanticError(
        f"{machine.name}: pumpability is characterized only for blind and "
        f"last machines")


def cmd_run(args, out):
    machine = _load(args.file, args.machine)
    result = eval_any(machine, parse_word(args.word))
    out.write(render_word(result) + "\n")
    return EXIT_OK


def cmd_growth(args, out):
    machine = _load(args.file, args.machine)
    _, ell, _ = minimize(machine, budget=args.budget)
    out.write(f"{ell}\n")
    return EXIT_OK


def cmd_minimize(args, out):
    machine = _load(args.file, args.machine)
    minimized, ell, removals = minimize(machine, budget=args.budget)
    with open(args.file, encoding="utf-8") as fh:
        source = fh.read()
    lines = [f"// pebbletk recipe: apply {removals} layer removal(s)",
             f"// machine: {args.machine}",
             f"// height: {ell}",
             source.rstrip("\n"), ""]
    if args.explicate and removals:
        try:
            ex = explicate(minimized)
            lines.append(f"// explicated head: {ex.descriptors} descriptors, "
                         f"{len(ex.machine.states)} states")
            for (q, sym, _), (q2, d) in sorted(ex.machine.delta.items()):
                lam = " ".join(ex.machine.lam[(q, sym, None)])
                lines.append(f"// {q} | {sym} -> {q2} {d} [{lam}]")
        except PebbletkError as exc:
            lines.append(f"// explication unavailable: {exc}")
    with open(args.output, "w", encoding="utf-8") as fh:
        fh.write("\n".join(lines) + "\n")
    out.write(f"{ell}\n")
    return EXIT_OK


def load_recipe(path):
    """Re-instantiate a minimize recipe deterministically."""
    from .minimize import remove_layer_blind, remove_layer_last
    with open(path, encoding="utf-8") as fh:
        text = fh.read()
    removals = name = None
    for line in text.splitlines():
        if line.startswith("// pebbletk recipe:"):
            removals = int(line.split("apply", 1)[1].split()[0])
        elif line.startswith("// machine:"):
            name = line.split(":", 1)[1].strip()
    if removals is None or name is None:
        raise SemanticError(f"{path} is not a pebbletk recipe")
    defs = parse(text)
    machine = as_pebble(defs[name])
    remover = remove_layer_blind if machine.variant == BLIND else remove_layer_last
    for _ in range(removals):
        machine = remover(machine, precheck=False)
    return machine


def cmd_pumpable(args, out):
    machine = _load(args.file, args.machine)
    try:
        w = _pumpable(machine, args.budget)
    except BudgetExceeded:
        out.write("inconclusive\n")
        return EXIT_INCONCLUSIVE
    if w is None:
        out.write("no\n")
    else:
        out.write("yes\n")
        if args.witness:
            out.write(witness_audit(w, resolve_morphism(machine)))
    return EXIT_OK


def cmd_forest(args, out):
    machine = _load(args.file, args.machine)
    mu = resolve_morphism(machine)
    forest = build_forest(mu, parse_word(args.word))
    out.write(print_forest(forest) + "\n")
    return EXIT_OK


def cmd_equiv(args, out):
    m1 = _load(args.file, args.machine)
    m2 = _load(args.file2, args.machine2)
    ce = equivalence_check(m1, m2, args.max_len)
    if ce is None:
        out.write("equal\n")
        return EXIT_OK
    out.write(f"counterexample: {render_word(ce) or 'eps'}\n")
    return EXIT_COUNTEREXAMPLE


def build_parser():
    p = _Parser(prog="pebbletk", description=__doc__)
    sub = p.add_subparsers(dest="command", required=True)

    def common(sp, machine2=False):
        sp.add_argument("file")
        sp.add_argument("--machine", required=True)
        sp.add_argument("--budget", type=int, default=DEFAULT_BUDGET)

    sp = sub.add_parser("run", help="evaluate a machine on a word")
    common(sp)
    sp.add_argument("--word", required=True, default="")
    sp.set_defaults(fn=cmd_run)

    sp = sub.add_parser("minimize", help="write a minimized-machine recipe")
    common(sp)
    sp.add_argument("-o", "--output", required=True)
    sp.add_argument("--explicate", action="store_true")
    sp.set_defaults(fn=cmd_minimize)

    sp = sub.add_parser("growth", help="print the minimal recursion height")
    common(sp)
    sp.set_defaults(fn=cmd_growth)

    sp = sub.add_parser("pumpable", help="decide pumpability")
    common(sp)
    sp.add_argument("--witness", action="store_true")
    sp.set_defaults(fn=cmd_pumpable)

    sp = sub.add_parser("forest", help="print the factorization forest of a word")
    common(sp)
    sp.add_argument("--word", required=True)
    sp.set_defaults(fn=cmd_forest)

    sp = sub.add_parser("equiv", help="bounded equivalence check")
    sp.add_argument("file")
    sp.add_argument("file2")
    sp.add_argument("--machine", required=True)
    sp.add_argument("--machine2", required=True)
    sp.add_argument("--max-len", type=int, required=True)
    sp.add_argument("--budget", type=int, default=DEFAULT_BUDGET)
    sp.set_defaults(fn=cmd_equiv)
    return p


def main(argv=None, out=None):
    out = out if out is not None else sys.stdout
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.fn(args, out)
    except ParseError as exc:
        print(f"parse error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except BudgetExceeded as exc:
        print(f"inconclusive: {exc}", file=sys.stderr)
        return EXIT_INCONCLUSIVE
    except (SemanticError, MachineError) as exc:
        print(f"semantic error: {exc}", file=sys.stderr)
        return EXIT_SEMANTIC
    except (PebbletkError, FileNotFoundError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_SEMANTIC


if __name__ == "__main__":
    sys.exit(main())
