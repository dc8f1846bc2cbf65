"""Pumpability of blind and last pebble machines, and pumping families.

A machine of height k is pumpable when some root-to-leaf chain of
submachines, a permutation of the k call levels and a family of idempotent
blocks (l_p a_p r_p with l_p mu(a_p) r_p idempotent, threaded by filler
elements m_0..m_k) make every level's production feed the next level, the
leaf producing a letter.  All quantified elements range over images of
unmarked words; for last machines the block of the previous call site
carries the marked-letter image instead of the bare idempotent.

The search enumerates chains, then permutations, then block data; within
one (chain, permutation) pair the filler search is a boolean reachability
problem on numpy tables.  Work is metered against a budget: exceeding it
raises BudgetExceeded, an outcome distinct from absence.
"""

from dataclasses import dataclass
from itertools import permutations, product as iproduct
import math

import numpy as np

from .errors import BudgetExceeded, PebbletkError
from .monoid import Context, MonoidMorphism, image_submonoid
from .pebble import BLIND, LAST, PebbleMachine, branches, evaluate, height, plain
from .symbols import RECENT, with_mark
from .twoway import TwoWayTransducer, production, transition_morphism

DEFAULT_BUDGET = 10 ** 8


@dataclass(frozen=True)
class PumpabilityWitness:
    flavor: str      # 'blind' or 'last'
    chain: tuple     # root-to-leaf PebbleMachine nodes, length k
    m: tuple         # m_0..m_k, elements
    ell: tuple       # l_1..l_k, indexed by position
    r: tuple         # r_1..r_k
    letters: tuple   # a_1..a_k
    sigma: tuple     # sigma(1)..sigma(k), positions (1-based)

    @property
    def k(self):
        return len(self.chain)

    def idempotents(self, mu: MonoidMorphism):
        mono = mu.target
        return tuple(
            mono.mul(self.ell[p], mono.mul(mu.letter_image[self.letters[p]], self.r[p]))
            for p in range(self.k))


class _Budget:
    def __init__(self, limit):
        self.limit = limit
        self.used = 0

    def charge(self, n=1):
        self.used += n
        if self.used > self.limit:
            raise BudgetExceeded(
                f"pumpability enumeration exceeded budget of {self.limit} checks")


def node_production(node: PebbleMachine, word, i: int):
    """Production of a submachine head at position i; heads are either raw
    transducers or interpreted program transducers."""
    root = node.root
    if isinstance(root, TwoWayTransducer):
        return production(root, word, i)
    return root.production(tuple(word), i)


def machine_morphism(machine: PebbleMachine) -> MonoidMorphism:
    """The machine's transition morphism: product over all submachines."""
    from .pebble import submachines
    roots = [n.root for n in submachines(machine)]
    if not all(isinstance(r, TwoWayTransducer) for r in roots):
        raise PebbletkError(
            "constructed machines need an explicitly supplied morphism")
    return transition_morphism(roots)


class _Tables:
    """Per-(machine, chain) production-count data over the image.

    In ``structured`` mode (constructed machines, whose productions are not
    invariant across context representatives) the tables are evaluated on
    words whose distinguished idempotent block is locally iterated, which
    matches the shape of the pumping family; candidates are then confirmed
    on the family itself."""

    REPEAT = 3

    def __init__(self, machine, mu, flavor, budget, structured=False):
        self.machine = machine
        self.mu = mu
        self.flavor = flavor
        self.budget = budget
        self.structured = structured
        mono = mu.target
        self.mono = mono
        self.M = mono.size
        self.mul = np.array(mono.table, dtype=np.int32)
        letters = sorted(a for a in mu.alphabet if len(a) == 1)
        self.letters = letters
        plain_wit = image_submonoid(mu, letters)
        self.plain_wit = plain_wit
        self.plain = np.array(sorted(plain_wit), dtype=np.int32)
        self.idems = [e for e in sorted(plain_wit) if mono.is_idempotent(e)]
        if flavor == LAST:
            self.amark = {a: mu.letter_image[with_mark(a, RECENT)] for a in letters}
        else:
            self.amark = None
        # reduced triples per idempotent e: (lam, a, rho) with lam = e l,
        # rho = r e, representative (l, r) kept for the audit record
        self.reps = {e: {} for e in self.idems}
        img = mu.letter_image
        for l in sorted(plain_wit):
            for a in letters:
                la = mono.mul(l, img[a])
                for rr in sorted(plain_wit):
                    e = mono.mul(la, rr)
                    if e not in self.reps:
                        continue
                    lam = mono.mul(e, l)
                    rho = mono.mul(rr, e)
                    key = (lam, a, rho)
                    self.reps[e].setdefault(key, (l, rr))
        self._cnt = {}
        self._ok_plain = {}
        self._ok_joint = {}
        self._prod_cache = {}

    def _feeding(self, chain, j):
        node = chain[j - 1]
        nxt = chain[j].root if j < len(chain) else None
        if nxt is None:
            return node, None
        return node, {c.name for c in node.children if c.root is nxt}

    def _count(self, node, feeding, word, i):
        key = (id(node), word, i)
        prod = self._prod_cache.get(key)
        if prod is None:
            prod = node_production(node, word, i)
            self._prod_cache[key] = prod
        if feeding is None:
            return 1 if prod else 0
        return sum(1 for s in prod if s in feeding)

    def _structured_word(self, A, e, l, a, rr, B):
        wit = self.mu.witness
        we = wit[e] * self.REPEAT
        left = wit[A] + we + wit[l]
        return left + (a,) + wit[rr] + we + wit[B], len(left) + 1

    def structured_count(self, chain, j, e, l, a, rr, A, B):
        node, feeding = self._feeding(chain, j)
        word, i = self._structured_word(A, e, l, a, rr, B)
        self.budget.charge(4)
        return self._count(node, feeding, word, i)

    def cnt(self, chain, j):
        """Count table for chain machine j (1-based): occurrences of the
        next chain node among productions on contexts, leaf nonemptiness
        for j = k."""
        key = (tuple(id(n) for n in chain), j)
        hit = self._cnt.get(key)
        if hit is not None:
            return hit
        node = chain[j - 1]
        nxt = chain[j].root if j < len(chain) else None
        feeding = None
        if nxt is not None:
            feeding = {c.name for c in node.children if c.root is nxt}
        table = np.zeros((self.M, len(self.letters), self.M), dtype=np.int32)
        wit = self.mu.witness
        for x in range(self.M):
            wx = wit[x]
            for ai, a in enumerate(self.letters):
                for y in range(self.M):
                    self.budget.charge()
                    word = wx + (a,) + wit[y]
                    prod = node_production(node, word, len(wx) + 1)
                    if feeding is None:
                        table[x, ai, y] = 1 if prod else 0
                    else:
                        table[x, ai, y] = sum(1 for s in prod if s in feeding)
        self._cnt[key] = table
        return table

    def ok_plain(self, chain, j, e):
        """(A, B) pairs where some triple of e satisfies condition j."""
        key = (tuple(id(n) for n in chain), j, e)
        hit = self._ok_plain.get(key)
        if hit is not None:
            return hit
        ok = np.zeros((self.M, self.M), dtype=bool)
        if self.structured:
            for (lam, a, rho), (l, rr) in sorted(self.reps[e].items()):
                for A in range(self.M):
                    for B in range(self.M):
                        if not ok[A, B]:
                            if self.structured_count(chain, j, e, l, a, rr, A, B):
                                ok[A, B] = True
        else:
            cnt = self.cnt(chain, j)
            for (lam, a, rho), _ in sorted(self.reps[e].items()):
                ai = self.letters.index(a)
                self.budget.charge(self.M * self.M)
                rows = self.mul[:, lam]
                cols = self.mul[rho, :]
                ok |= cnt[rows][:, ai, :][:, cols] > 0
        self._ok_plain[key] = ok
        return ok

    def vbar(self, e, lam, a, rho):
        return self.mono.mul(lam, self.mono.mul(self.amark[a], rho))

    def ok_joint(self, chain, j, e):
        """Per marked-block value v: (A, B) pairs where some triple of e
        both satisfies condition j and realizes v as its marked value."""
        key = (tuple(id(n) for n in chain), j, e)
        hit = self._ok_joint.get(key)
        if hit is not None:
            return hit
        byv = {}
        if self.structured:
            for (lam, a, rho), (l, rr) in sorted(self.reps[e].items()):
                v = self.vbar(e, lam, a, rho)
                contrib = byv.get(v)
                if contrib is None:
                    contrib = byv.setdefault(v, np.zeros((self.M, self.M), dtype=bool))
                for A in range(self.M):
                    for B in range(self.M):
                        if not contrib[A, B]:
                            if self.structured_count(chain, j, e, l, a, rr, A, B):
                                contrib[A, B] = True
        else:
            cnt = self.cnt(chain, j)
            for (lam, a, rho), _ in sorted(self.reps[e].items()):
                ai = self.letters.index(a)
                v = self.vbar(e, lam, a, rho)
                self.budget.charge(self.M * self.M)
                rows = self.mul[:, lam]
                cols = self.mul[rho, :]
                contrib = cnt[rows][:, ai, :][:, cols] > 0
                if v in byv:
                    byv[v] |= contrib
                else:
                    byv[v] = contrib
        byv = {v: m for v, m in byv.items() if m.any()}
        self._ok_joint[key] = byv
        return byv

    def pick_triple(self, chain, j, e, A, B, want_v=None):
        """Lexicographically first representative triple of e passing
        condition j at (A, B), optionally realizing marked value want_v."""
        if self.structured:
            for (lam, a, rho), (l, rr) in sorted(self.reps[e].items()):
                if want_v is not None and self.vbar(e, lam, a, rho) != want_v:
                    continue
                if self.structured_count(chain, j, e, l, a, rr, A, B):
                    return l, a, rr
            raise PebbletkError("witness reconstruction lost a triple")
        cnt = self.cnt(chain, j)
        for (lam, a, rho), (l, rr) in sorted(self.reps[e].items()):
            if want_v is not None and self.vbar(e, lam, a, rho) != want_v:
                continue
            ai = self.letters.index(a)
            if cnt[self.mono.mul(A, lam), ai, self.mono.mul(rho, B)] > 0:
                return l, a, rr
        raise PebbletkError("witness reconstruction lost a triple")


# ------------------------------------------------------------------
# Blind search: boolean DP over positions with states (A, B, e)
# ------------------------------------------------------------------

def _blind_search(tables: _Tables, chain, sigma):
    k = len(chain)
    M = tables.M
    mul = tables.mul
    plain = tables.plain
    pmask = np.zeros(M, dtype=bool)
    pmask[plain] = True
    jof = {p: j for j, p in enumerate(sigma, start=1)}  # position -> condition

    layers = []
    state = {}
    for e in tables.idems:
        s = tables.ok_plain(chain, jof[1], e).copy()
        s &= pmask[:, None] & pmask[None, :]
        if s.any():
            state[e] = s
    layers.append(state)
    for p in range(2, k + 1):
        nxt = {}
        for e2 in tables.idems:
            ok2 = tables.ok_plain(chain, jof[p], e2)
            if not ok2.any():
                continue
            acc = np.zeros((M, M), dtype=bool)
            for e, s in state.items():
                for m in plain:
                    tables.budget.charge(M)
                    rows = mul[mul[:, e], m]          # A' as a function of A
                    cols = mul[m, mul[e2, :]]         # required B as function of B'
                    contrib = s[:, cols]
                    np.logical_or.at(acc, rows, contrib)
            acc &= ok2
            acc &= pmask[:, None] & pmask[None, :]
            if acc.any():
                nxt[e2] = acc
        state = nxt
        layers.append(state)
        if not state:
            return None

    final = layers[-1]
    if not any(s.any() for s in final.values()):
        return None

    # reconstruct backwards, lexicographically smallest choice at each step
    e_k = min(e for e, s in final.items() if s.any())
    A, B = (int(v) for v in np.argwhere(final[e_k])[0])
    es, As, Bs = [e_k], [A], [B]
    ms_rev = []
    for p in range(k, 1, -1):
        prev = layers[p - 2]
        found = None
        for e in sorted(prev):
            s = prev[e]
            for Aprev in plain:
                for m in plain:
                    Bprev = int(mul[m, mul[es[-1], Bs[-1]]])
                    if int(mul[mul[Aprev, e], m]) == As[-1] and s[Aprev, Bprev]:
                        found = (int(e), int(Aprev), Bprev, int(m))
                        break
                if found:
                    break
            if found:
                break
        if not found:
            raise PebbletkError("blind witness reconstruction failed")
        e, Aprev, Bprev, m = found
        es.append(e)
        As.append(Aprev)
        Bs.append(Bprev)
        ms_rev.append(m)
    es.reverse()
    As.reverse()
    Bs.reverse()
    ms = [As[0]] + ms_rev[::-1] + [Bs[-1]]

    ells, rs, letters = [], [], []
    for p in range(1, k + 1):
        l, a, rr = tables.pick_triple(chain, jof[p], es[p - 1], As[p - 1], Bs[p - 1])
        ells.append(l)
        rs.append(rr)
        letters.append(a)
    return PumpabilityWitness(BLIND, tuple(chain), tuple(ms), tuple(ells),
                              tuple(rs), tuple(letters), tuple(sigma))


# ------------------------------------------------------------------
# Generic enumerative search (used for last machines, any k; the inner
# two fillers m_0 and m_k are vectorized, the rest enumerated)
# ------------------------------------------------------------------

def _cond_tables(tables, chain, sigma, flavor):
    """For each condition c: (position, marked slot or None, OK table dict).

    For c < k the table is keyed (e, vbar); for c = k keyed (e, None)."""
    k = len(chain)
    out = []
    for c in range(1, k + 1):
        p = sigma[c - 1]
        mq = sigma[c - 2] if (flavor == LAST and c >= 2) else None
        if flavor == LAST and c < k:
            byj = {}
            for e in tables.idems:
                for v, mask in tables.ok_joint(chain, c, e).items():
                    byj[(e, v)] = mask
            out.append((p, mq, byj))
        else:
            byj = {}
            for e in tables.idems:
                mask = tables.ok_plain(chain, c, e)
                if mask.any():
                    byj[(e, None)] = mask
            out.append((p, mq, byj))
    return out


def _generic_search(tables: _Tables, chain, sigma, flavor):
    k = len(chain)
    mul = tables.mul
    mono = tables.mono
    plain = tables.plain
    conds = _cond_tables(tables, chain, sigma, flavor)
    for _, _, byj in conds:
        if not byj:
            return None
    pos_of_cond = {c: conds[c - 1][0] for c in range(1, k + 1)}

    def assemble(choice):
        # choice[c] = (e, vbar-or-None) for the slot at position sigma(c)
        e_at = {pos_of_cond[c]: choice[c - 1][0] for c in range(1, k + 1)}
        v_at = {pos_of_cond[c]: choice[c - 1][1] for c in range(1, k + 1)}
        return e_at, v_at

    def slot_value(s, e_at, v_at, marked_slot):
        return v_at[s] if s == marked_slot else e_at[s]

    for choice in iproduct(*[sorted(byj) for _, _, byj in conds]):
        e_at, v_at = assemble(choice)
        # inner fillers m_1..m_{k-1} enumerated, m_0 and m_k vectorized
        for mids in iproduct(plain.tolist(), repeat=max(0, k - 1)):
            tables.budget.charge(tables.M * tables.M * k)
            acc = None
            for c in range(1, k + 1):
                p, mq, byj = conds[c - 1]
                mask = byj[choice[c - 1]]
                avec = plain.copy()  # m_0 choices
                for s in range(1, p):
                    avec = mul[avec, slot_value(s, e_at, v_at, mq)]
                    avec = mul[avec, mids[s - 1]]
                if p == k:
                    bvec = plain.copy()
                else:
                    z = mids[p - 1]
                    for s in range(p + 1, k):
                        z = mono.mul(z, slot_value(s, e_at, v_at, mq))
                        z = mono.mul(z, mids[s - 1])
                    z = mono.mul(z, slot_value(k, e_at, v_at, mq))
                    bvec = mul[z, plain]
                c_ok = mask[avec[:, None], bvec[None, :]]
                acc = c_ok if acc is None else (acc & c_ok)
                if not acc.any():
                    acc = None
                    break
            if acc is None:
                continue
            i0, ik = np.argwhere(acc)[0]
            m0, mk = int(plain[i0]), int(plain[ik])
            ms = [m0] + list(mids) + [mk]
            ells, rs, letters = [None] * k, [None] * k, [None] * k
            for c in range(1, k + 1):
                p, mq, _ = conds[c - 1]
                e, v = choice[c - 1]
                A = ms[0]
                for s in range(1, p):
                    A = mono.mul(A, slot_value(s, e_at, v_at, mq))
                    A = mono.mul(A, ms[s])
                B = ms[p]
                for s in range(p + 1, k + 1):
                    B = mono.mul(B, slot_value(s, e_at, v_at, mq))
                    B = mono.mul(B, ms[s])
                l, a, rr = tables.pick_triple(chain, c, e, A, B, want_v=v)
                ells[p - 1], rs[p - 1], letters[p - 1] = l, rr, a
            return PumpabilityWitness(flavor, tuple(chain), tuple(ms),
                                      tuple(ells), tuple(rs), tuple(letters),
                                      tuple(sigma))
    return None


# ------------------------------------------------------------------
# Entry points
# ------------------------------------------------------------------

def _is_pumpable(machine, flavor, mu, budget_limit):
    if machine.variant != flavor:
        raise PebbletkError(f"{machine.name} is not a {flavor} machine")
    if mu is None:
        mu = machine_morphism(machine)
    from .pebble import submachines
    structured = any(not isinstance(n.root, TwoWayTransducer)
                     for n in submachines(machine))
    budget = _Budget(budget_limit)
    tables = _Tables(machine, mu, flavor, budget, structured=structured)
    k = height(machine)
    for chain in branches(machine):
        for sigma in permutations(range(1, k + 1)):
            if flavor == BLIND:
                w = _blind_search(tables, chain, sigma)
            else:
                w = _generic_search(tables, chain, sigma, flavor)
            if w is None:
                continue
            if structured:
                # productions of constructed heads are representative
                # sensitive: confirm on the actual pumping family
                if family_check(w, mu):
                    return w
                continue
            ok, detail = verify_witness(w, mu, strict=False)
            if not ok:
                raise PebbletkError(f"unsound witness produced: {detail}")
            return w
    return None


def is_pumpable_blind(machine, mu=None, budget=DEFAULT_BUDGET):
    return _is_pumpable(machine, BLIND, mu, budget)


def is_pumpable_last(machine, mu=None, budget=DEFAULT_BUDGET):
    return _is_pumpable(machine, LAST, mu, budget)


# ------------------------------------------------------------------
# Witness validation, audit record, pumping families
# ------------------------------------------------------------------

def witness_contexts(w: PumpabilityWitness, mu: MonoidMorphism):
    """Rebuild the contexts C_1..C_k exactly as the definitions display
    them; returns a list of (condition, Context)."""
    mono = mu.target
    k = w.k
    es = w.idempotents(mu)

    def eat(val, s):  # multiply val by e_s m_s
        return mono.mul(mono.mul(val, es[s - 1]), w.m[s])

    def mblock(i, j):  # M_{i,j} = m_i e_{i+1} m_{i+1} ... e_j m_j
        val = w.m[i]
        for s in range(i + 1, j + 1):
            val = eat(val, s)
        return val

    def marked_block(p):
        v = mono.mul(es[p - 1], w.ell[p - 1])
        v = mono.mul(v, mu.letter_image[with_mark(w.letters[p - 1], RECENT)])
        v = mono.mul(v, w.r[p - 1])
        return mono.mul(v, es[p - 1])

    out = []
    for j in range(1, k + 1):
        p = w.sigma[j - 1]
        if w.flavor == BLIND or j == 1:
            left = mono.mul(mono.mul(mblock(0, p - 1), es[p - 1]), w.ell[p - 1])
            right = mono.mul(mono.mul(w.r[p - 1], es[p - 1]), mblock(p, k))
        else:
            q = w.sigma[j - 2]
            if q < p:
                left = mono.mul(mblock(0, q - 1), marked_block(q))
                left = mono.mul(left, mblock(q, p - 1))
                left = mono.mul(mono.mul(left, es[p - 1]), w.ell[p - 1])
                right = mono.mul(mono.mul(w.r[p - 1], es[p - 1]), mblock(p, k))
            else:
                left = mono.mul(mono.mul(mblock(0, p - 1), es[p - 1]), w.ell[p - 1])
                right = mono.mul(mono.mul(w.r[p - 1], es[p - 1]), mblock(p, q - 1))
                right = mono.mul(right, marked_block(q))
                right = mono.mul(right, mblock(q, k))
        out.append((j, Context(left, w.letters[p - 1], right)))
    return out


def verify_witness(w: PumpabilityWitness, mu: MonoidMorphism, strict=True):
    """Independent re-check of every defining condition via
    production-on-context on concrete witness words."""
    mono = mu.target
    for p, e in enumerate(w.idempotents(mu), start=1):
        if not mono.is_idempotent(e):
            msg = f"block {p} is not idempotent"
            if strict:
                raise PebbletkError(msg)
            return False, msg
    for j, ctx in witness_contexts(w, mu):
        node = w.chain[j - 1]
        word = mu.witness[ctx.left] + (ctx.letter,) + mu.witness[ctx.right]
        prod = node_production(node, word, len(mu.witness[ctx.left]) + 1)
        if j < w.k:
            nxt = w.chain[j].root
            feeding = {c.name for c in node.children if c.root is nxt}
            count = sum(1 for s in prod if s in feeding)
            if count == 0:
                msg = f"condition {j}: no call into the next chain machine"
                if strict:
                    raise PebbletkError(msg)
                return False, msg
        else:
            if not prod:
                msg = f"condition {w.k}: leaf production empty"
                if strict:
                    raise PebbletkError(msg)
                return False, msg
    return True, None


def family_check(w: PumpabilityWitness, mu: MonoidMorphism, x=4):
    """Check the defining conditions directly on the pumping-family word at
    pumping exponent ``x``: chain machine j must call into machine j+1 (the
    leaf must produce) at the middle copy of its block, reading the word
    marked at the middle copy of the previous call's block."""
    from .pebble import MarkedWord
    vs, us = pumping_family(w, mu)
    base = family_word(vs, us, x)
    k = w.k
    mid = x // 2 + 1

    def letter_pos(p):
        off = len(vs[0])
        for q in range(1, p):
            off += x * len(us[q - 1]) + len(vs[q])
        # position of the distinguished letter inside the middle copy of u_p
        inner = len(_plain_witness(mu)[w.ell[p - 1]]) + 1
        return off + (mid - 1) * len(us[p - 1]) + inner

    for j in range(1, k + 1):
        p = w.sigma[j - 1]
        node = w.chain[j - 1]
        letters = base
        if w.flavor == LAST and j >= 2:
            q = w.sigma[j - 2]
            letters = MarkedWord(base, recent=letter_pos(q)).letters()
        prod = node_production(node, letters, letter_pos(p))
        if j < k:
            nxt = w.chain[j].root
            feeding = {c.name for c in node.children if c.root is nxt}
            if not any(s in feeding for s in prod):
                return False
        elif not prod:
            return False
    return True


_PLAIN_WIT_CACHE = {}


def _plain_witness(mu: MonoidMorphism):
    key = id(mu)
    hit = _PLAIN_WIT_CACHE.get(key)
    if hit is None or hit[0] is not mu:
        letters = sorted(a for a in mu.alphabet if len(a) == 1)
        hit = (mu, image_submonoid(mu, letters))
        _PLAIN_WIT_CACHE[key] = hit
    return hit[1]


def pumping_family(w: PumpabilityWitness, mu: MonoidMorphism):
    """Words (v_0..v_k, u_1..u_k) with |f(v_0 u_1^X ... u_k^X v_k)| growing
    like X^k; built from plain-image witnesses of the witness elements."""
    wit = _plain_witness(mu)
    try:
        vs = tuple(wit[m] for m in w.m)
        us = tuple(wit[w.ell[p]] + (w.letters[p],) + wit[w.r[p]]
                   for p in range(w.k))
    except KeyError as exc:
        raise PebbletkError(f"element {exc.args[0]} has no unmarked witness") from exc
    return vs, us


def family_word(vs, us, x: int):
    out = list(vs[0])
    for j, u in enumerate(us, start=1):
        out.extend(u * x)
        out.extend(vs[j])
    return tuple(out)


def growth_slope(machine: PebbleMachine, vs, us, xs=(4, 8, 16)):
    sizes = []
    for x in xs:
        word = family_word(vs, us, x)
        sizes.append(len(evaluate(machine, plain(word))))
    if min(sizes) == 0:
        raise PebbletkError("pumping family produced an empty output")
    return (math.log(sizes[-1]) - math.log(sizes[0])) / (math.log(xs[-1]) - math.log(xs[0]))


def witness_audit(w: PumpabilityWitness, mu: MonoidMorphism) -> str:
    """Textual audit record: flavor, chain names, element indices with
    their witness words, and sigma."""
    letters = sorted(a for a in mu.alphabet if len(a) == 1)
    wit = image_submonoid(mu, letters)

    def show(e):
        return f"{e}:{''.join(wit[e]) or 'eps'}"

    lines = [
        f"flavor: {w.flavor}",
        "chain: " + " -> ".join(n.name for n in w.chain),
        "sigma: " + " ".join(str(s) for s in w.sigma),
        "m: " + " ".join(show(e) for e in w.m),
        "l: " + " ".join(show(e) for e in w.ell),
        "r: " + " ".join(show(e) for e in w.r),
        "letters: " + " ".join(w.letters),
        "idempotents: " + " ".join(str(e) for e in w.idempotents(mu)),
    ]
    return "\n".join(lines) + "\n"
