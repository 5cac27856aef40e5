"""3-cells as rewrite sequences on whisker-normal layer lists.

A 3-cell of the free Gray-category is represented by its source 2-cell (a
list of layers) and a sequence of atomic moves.  An atomic move is either a
whiskered 3-generator (or its formal inverse) acting on a contiguous block of
layers, or an interchanger swapping two adjacent layers whose generators sit
side by side in the 1-cell string.

The strict laws of the hom-2-categories (associativity, units, middle-four
interchange of 3-cells acting on disjoint blocks, cancellation of formal
inverses) are decided by :func:`canonical`: cancellation followed by the
lexicographically least linearization of the move trace.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import NamedTuple

from .. import terms as T
from ..normal2 import Layer, check_layers, layer_src, layer_tgt, normalize2
from ..terms import One, TypingError, boundary2, boundary3


class MoveError(ValueError):
    pass


class Swap(NamedTuple):
    """Interchanger on the layers at ``offset`` and ``offset + 1``.

    ``fwd`` means the first layer's generator lies to the left (outer side)
    of the second's.
    """

    offset: int
    fwd: bool

    def key(self):
        return (self.offset, 0, not self.fwd, "", False, (), ())

    def inverse(self):
        return Swap(self.offset, not self.fwd)

    def shifted(self, d):
        return Swap(self.offset + d, self.fwd)


class Gen(NamedTuple):
    """Whiskered 3-generator ``left < name > right`` at ``offset``."""

    offset: int
    name: str
    inv: bool
    left: tuple = ()
    right: tuple = ()

    def key(self):
        return (self.offset, 1, False, self.name, self.inv, self.left,
                self.right)

    def inverse(self):
        return self._replace(inv=not self.inv)

    def shifted(self, d):
        return Gen(self.offset + d, self.name, self.inv, self.left,
                   self.right)

    def whiskered(self, left=(), right=()):
        return self._replace(left=tuple(left) + self.left,
                             right=self.right + tuple(right))


def gen_layers(m: Gen, c):
    """(source block, target block) of a generator move, whiskered."""
    src, tgt = c.three_layers(m.name)
    if m.inv:
        src, tgt = tgt, src
    return (tuple(x.whisker(m.left, m.right) for x in src),
            tuple(x.whisker(m.left, m.right) for x in tgt))


def sizes(m, c):
    if type(m) is Swap:
        return 2, 2
    key = ("size", m.name, m.inv)
    out = c._cache.get(key)
    if out is None:
        src, tgt = c.three_layers(m.name)
        out = (len(tgt), len(src)) if m.inv else (len(src), len(tgt))
        c._cache[key] = out
    return out


def swap_pair(l1: Layer, l2: Layer, fwd: bool, c):
    """Interchange two consecutive layers, or ``None`` if not applicable."""
    s1, t1 = c.two_gens[l1.gen][0].path, c.two_gens[l1.gen][1].path
    s2, t2 = c.two_gens[l2.gen][0].path, c.two_gens[l2.gen][1].path
    if layer_tgt(l1, c) != layer_src(l2, c):
        return None
    if fwd:
        k = len(l1.left) + len(t1)
        if k > len(l2.left):
            return None
        mid = l2.left[k:]
        return (Layer(l1.left + s1 + mid, l2.gen, l2.right),
                Layer(l1.left, l1.gen, mid + t2 + l2.right))
    k = len(l2.left) + len(s2)
    if k > len(l1.left):
        return None
    mid = l1.left[k:]
    return (Layer(l2.left, l2.gen, mid + s1 + l1.right),
            Layer(l2.left + t2 + mid, l1.gen, l1.right))


def apply_move(m, layers, c):
    layers = tuple(layers)
    if isinstance(m, Swap):
        i = m.offset
        if i < 0 or i + 2 > len(layers):
            raise MoveError(f"interchanger at {i} out of range")
        pair = swap_pair(layers[i], layers[i + 1], m.fwd, c)
        if pair is None:
            raise MoveError(f"layers at {i} cannot be interchanged "
                            f"({'forward' if m.fwd else 'backward'})")
        return layers[:i] + pair + layers[i + 2:]
    if m.name not in c.three_gens:
        raise MoveError(f"unknown 3-cell {m.name!r}")
    if m.inv and not c.three_gens[m.name][2]:
        raise MoveError(f"{m.name} is not invertible")
    src, tgt = gen_layers(m, c)
    i = m.offset
    if i < 0 or layers[i:i + len(src)] != src:
        raise MoveError(f"{m.name} does not match at {i}")
    return layers[:i] + tgt + layers[i + len(src):]


def replay(layers, moves, c):
    """All intermediate layer lists: ``out[k]`` is the state before move k."""
    out = [tuple(layers)]
    for m in moves:
        out.append(apply_move(m, out[-1], c))
    return out


# ---------------------------------------------------------------- commuting


def commute(m1, m2, c):
    """Ways of rewriting ``m1 ; m2`` as ``m2' ; m1'`` (disjoint blocks)."""
    memo = c._cache.setdefault("commute", {})
    key = (m1, m2)
    if key not in memo:
        memo[key] = _commute(m1, m2, c)
    return memo[key]


def _commute(m1, m2, c):
    s1, t1 = sizes(m1, c)
    s2, t2 = sizes(m2, c)
    a, b = m1.offset, m2.offset
    out = []
    if b >= a + t1:
        out.append((m2.shifted(s1 - t1), m1))
    if b + s2 <= a:
        opt = (m2, m1.shifted(t2 - s2))
        if opt not in out:
            out.append(opt)
    return out


def pull_back_all(seq, j, target, c):
    """Every way of moving ``seq[j]`` to index ``target`` (<= j)."""
    results = [tuple(seq)]
    for pos in range(j, target, -1):
        nxt = []
        for s in results:
            for m2, m1 in commute(s[pos - 1], s[pos], c):
                cand = s[:pos - 1] + (m2, m1) + s[pos + 1:]
                if cand not in nxt:
                    nxt.append(cand)
        if not nxt:
            return []
        results = nxt
    return results


def pull_back(seq, j, target, c):
    res = pull_back_all(seq, j, target, c)
    return res[0] if res else None


def push_forward_all(seq, i, target, c):
    """Every way of moving ``seq[i]`` to index ``target`` (>= i)."""
    results = [tuple(seq)]
    for pos in range(i, target):
        nxt = []
        for s in results:
            for m2, m1 in commute(s[pos], s[pos + 1], c):
                cand = s[:pos] + (m2, m1) + s[pos + 2:]
                if cand not in nxt:
                    nxt.append(cand)
        if not nxt:
            return []
        results = nxt
    return results


def _cancel_once(seq, c):
    n = len(seq)
    for i in range(n):
        for j in range(i + 1, n):
            if not _could_cancel(seq[i], seq[j]):
                continue
            work, pos, end = tuple(seq), i, j
            # clear the moves between the pair: earlier if possible,
            # otherwise later
            for k in range(i + 1, j):
                moved = pull_back(work, k, pos, c)
                if moved is not None:
                    work, pos = moved, pos + 1
            for k in range(end - 1, pos, -1):
                pushed = push_forward_all(work, k, end, c)
                if pushed:
                    work, end = pushed[0], end - 1
            for cand in pull_back_all(work, end, pos + 1, c):
                if cand[pos + 1] == cand[pos].inverse():
                    return cand[:pos] + cand[pos + 2:]
            # the pair may also meet the other way round
            for cand in pull_back_all(work, end, pos, c):
                if cand[pos + 1] == cand[pos].inverse():
                    return cand[:pos] + cand[pos + 2:]
    return None


def _could_cancel(a, b):
    if isinstance(a, Swap):
        return isinstance(b, Swap) and a.fwd != b.fwd
    return (isinstance(b, Gen) and a.name == b.name and a.inv != b.inv
            and a.left == b.left and a.right == b.right)


def cancel(seq, c):
    seq = tuple(seq)
    while True:
        nxt = _cancel_once(seq, c)
        if nxt is None:
            return seq
        seq = nxt


def _front_forms(seq, j, c):
    """Forms ``seq[j]`` can take when pulled to the front."""
    forms = [seq[j]]
    for pos in range(j - 1, -1, -1):
        nxt = []
        for f in forms:
            for m2, _ in commute(seq[pos], f, c):
                if m2 not in nxt:
                    nxt.append(m2)
        if not nxt:
            return []
        forms = nxt
    return forms


def lex_order(seq, c, memo=None):
    """Lexicographically least linearization of the trace of ``seq``."""
    seq = tuple(seq)
    if not seq:
        return ()
    memo = {} if memo is None else memo
    if seq in memo:
        return memo[seq]
    best, starts = None, []
    for j in range(len(seq)):
        for f in _front_forms(seq, j, c):
            if best is None or f.key() < best.key():
                best, starts = f, [j]
            elif f == best and j not in starts:
                starts.append(j)
    rests = {cand[1:] for j in starts for cand in pull_back_all(seq, j, 0, c)
             if cand[0] == best}
    tails = [lex_order(r, c, memo) for r in rests]
    out = (best,) + min(tails, key=lambda r: [m.key() for m in r])
    memo[seq] = out
    return out


CLASS_LIMIT = 20_000


def commutation_class(seq, c, limit=CLASS_LIMIT):
    """All rearrangements of ``seq`` by commuting adjacent moves, or
    ``None`` if there are more than ``limit``."""
    seq = tuple(seq)
    seen, todo = {seq}, [seq]
    while todo:
        s = todo.pop()
        for i in range(len(s) - 1):
            for m2, m1 in commute(s[i], s[i + 1], c):
                n = s[:i] + (m2, m1) + s[i + 2:]
                if n not in seen:
                    if len(seen) >= limit:
                        return None
                    seen.add(n)
                    todo.append(n)
    return seen


def _keys(seq):
    return [m.key() for m in seq]


def canonical_moves(seq, c):
    """Representative of ``seq`` modulo commuting and cancellation."""
    memo = c._cache.setdefault("canonical", {})
    key = tuple(seq)
    if key not in memo:
        memo[key] = _greedy_canonical(key, c)
    return memo[key]


def _greedy_canonical(seq, c):
    seq = tuple(seq)
    while True:
        out = lex_order(cancel(seq, c), c)
        if out == seq:
            return out
        seq = out


# ---------------------------------------------------------------- cells


@dataclass(frozen=True)
class Cell3:
    source: One
    layers: tuple
    moves: tuple = ()

    def states(self, c):
        return replay(self.layers, self.moves, c)

    def target_layers(self, c):
        return self.states(c)[-1]

    def canonical(self, c) -> "Cell3":
        return Cell3(self.source, self.layers, canonical_moves(self.moves, c))

    def inverse(self, c) -> "Cell3":
        return Cell3(self.source, self.target_layers(c),
                     tuple(m.inverse() for m in reversed(self.moves)))

    def then(self, other: "Cell3", c) -> "Cell3":
        if self.target_layers(c) != other.layers:
            raise TypingError("3-cell composite boundary mismatch")
        return Cell3(self.source, self.layers, self.moves + other.moves)

    def whiskered(self, left: One = None, right: One = None) -> "Cell3":
        lp = left.path if left is not None else ()
        rp = right.path if right is not None else ()
        src = self.source
        if right is not None:
            src = src.after(right)
        if left is not None:
            src = left.after(src)
        return Cell3(src, tuple(x.whisker(lp, rp) for x in self.layers),
                     tuple(m.whiskered(lp, rp) if isinstance(m, Gen) else m
                           for m in self.moves))

    def placed(self, before=(), after=(), source=None) -> "Cell3":
        """Surround with identity on 2-cell layers ``before``/``after``."""
        d = len(before)
        return Cell3(source if source is not None else self.source,
                     tuple(before) + self.layers + tuple(after),
                     tuple(m.shifted(d) for m in self.moves))

    def is_identity(self):
        return not self.moves


def identity_cell(nf) -> Cell3:
    return Cell3(nf.source, nf.layers, ())


def evaluate(t, c) -> Cell3:
    """Interpret a (well-typed) 3-cell term as a rewrite sequence."""
    boundary3(t, c)
    return _eval(t, c)


def _eval(t, c):
    if isinstance(t, T.Id3):
        return identity_cell(normalize2(t.c, c))
    if isinstance(t, (T.Gen3, T.InvGen3)):
        src, tgt, _ = c.three_gens[t.name]
        inv = isinstance(t, T.InvGen3)
        start = normalize2(tgt if inv else src, c)
        return Cell3(start.source, start.layers, (Gen(0, t.name, inv),))
    if isinstance(t, (T.Ichg, T.InvIchg)):
        cell = interchanger(t.beta, t.alpha, c)
        return cell if isinstance(t, T.Ichg) else cell.inverse(c)
    if isinstance(t, T.LWhisk1):
        return _eval(t.body, c).whiskered(left=t.g)
    if isinstance(t, T.RWhisk1):
        return _eval(t.body, c).whiskered(right=t.f)
    if isinstance(t, T.LWhisk2):
        nx = normalize2(t.c, c)
        return _eval(t.body, c).placed(before=nx.layers, source=nx.source)
    if isinstance(t, T.RWhisk2):
        return _eval(t.body, c).placed(after=normalize2(t.c, c).layers)
    if isinstance(t, T.VComp3):
        return _eval(t.first, c).then(_eval(t.then, c), c)
    if isinstance(t, T.HComp3):
        a, b = _eval(t.first, c), _eval(t.then, c)
        left = a.placed(after=b.layers)
        right = b.placed(before=a.target_layers(c), source=a.source)
        return left.then(right, c)
    raise TypeError(f"not a 3-cell term: {t!r}")


def interchanger(beta, alpha, c) -> Cell3:
    """The composite interchanger of two 2-cells, as atomic swaps."""
    (g, g2), (f, _) = boundary2(beta, c), boundary2(alpha, c)
    nb, na = normalize2(beta, c).layers, normalize2(alpha, c).layers
    layers = (tuple(x.whisker(right=f.path) for x in nb)
              + tuple(x.whisker(left=g2.path) for x in na))
    moves = []
    for i in reversed(range(len(nb))):
        moves.extend(Swap(i + j, True) for j in range(len(na)))
    cell = Cell3(g.after(f), layers, tuple(moves))
    cell.states(c)
    return cell


def validate_cell(cell: Cell3, c):
    check_layers(cell.source, cell.layers, c)
    return cell.states(c)


# ---------------------------------------------------------------- embedding


def move_term(m, before, c, base):
    """A 3-cell term for the single move ``m`` applied to ``before``."""
    from ..normal2 import WhiskerNormal2Cell, embed2, layer_term

    s, _ = sizes(m, c)
    i = m.offset
    pre, block, post = before[:i], before[i:i + s], before[i + s:]
    two = c.two_gens
    if isinstance(m, Swap):
        l1, l2 = block
        if m.fwd:
            outer = l1
            mid = l2.left[len(l1.left) + len(two[l1.gen][1].path):]
            alpha = Layer(mid, l2.gen, l2.right)
            under = mid + two[l2.gen][0].path + l2.right
        else:
            outer = l2
            mid = l1.left[len(l2.left) + len(two[l2.gen][0].path):]
            alpha = Layer(mid, l1.gen, l1.right)
            under = mid + two[l1.gen][1].path + l1.right
        beta_base = c.end(One(base, under))
        beta = layer_term(Layer(outer.left, outer.gen, ()), beta_base, c)
        alpha_t = layer_term(alpha, base, c)
        core = T.Ichg(beta, alpha_t) if m.fwd else T.InvIchg(beta, alpha_t)
    else:
        core = T.InvGen3(m.name) if m.inv else T.Gen3(m.name)
        if m.right:
            core = T.RWhisk1(core, One(base, m.right))
        if m.left:
            gsrc = boundary2(c.three_gens[m.name][0], c)[0].path
            core = T.LWhisk1(One(c.end(One(base, gsrc + m.right)), m.left),
                             core)
    if pre:
        core = T.LWhisk2(embed2(WhiskerNormal2Cell(
            One(base, layer_src(pre[0], c)), pre), c), core)
    if post:
        core = T.RWhisk2(core, embed2(WhiskerNormal2Cell(
            One(base, layer_src(post[0], c)), post), c))
    return core


def to_term(cell: Cell3, c):
    """Embed a rewrite sequence back into 3-cell term syntax."""
    from ..normal2 import WhiskerNormal2Cell, embed2

    states = cell.states(c)
    base = cell.source.base
    if not cell.moves:
        return T.Id3(embed2(WhiskerNormal2Cell(cell.source, cell.layers), c))
    parts = [move_term(m, states[k], c, base)
             for k, m in enumerate(cell.moves)]
    return T.vcomp3(*parts)
