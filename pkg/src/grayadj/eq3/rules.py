"""Non-strict moves on canonical 3-cells: relation instances and the
naturality ("modification") axioms of interchangers.

Positions index the move sequence of the canonical representative.  A step
names its anchor move and parameters; the remaining moves of the matched
pattern are gathered next to the anchor by commuting independent moves,
which is a strict equality.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .cells import (Cell3, Gen, MoveError, Swap, canonical_moves, evaluate,
                    pull_back_all, push_forward_all, replay, sizes)


class StepError(ValueError):
    pass


NAT_KINDS = ("modification-nat-left", "modification-nat-right")


@dataclass(frozen=True)
class RewriteStep:
    position: int
    kind: str
    params: dict = field(default_factory=dict, hash=False, compare=True)
    direction: str = "forward"

    def to_json(self):
        return {"position": self.position, "kind": self.kind,
                "params": _jsonable(self.params), "direction": self.direction}

    @classmethod
    def from_json(cls, d):
        params = {k: (tuple(v) if isinstance(v, list) else v)
                  for k, v in d.get("params", {}).items()}
        return cls(int(d["position"]), d["kind"], params,
                   d.get("direction", "forward"))


def _jsonable(params):
    return {k: (list(v) if isinstance(v, tuple) else v)
            for k, v in sorted(params.items())}


# ---------------------------------------------------------------- gathering


def gather_after(seq, end, expected, c):
    """Bring ``expected`` moves, in order, to indices ``end, end+1, ...``."""
    seq = tuple(seq)
    for exp in expected:
        found = None
        for j in range(end, len(seq)):
            for cand in pull_back_all(seq, j, end, c):
                if cand[end] == exp:
                    found = cand
                    break
            if found:
                break
        if found is None:
            return None
        seq, end = found, end + 1
    return seq


def gather_before(seq, start, expected, c):
    """Bring ``expected`` moves to the indices right before ``start``.

    Returns ``(seq, new_start)`` where ``seq[new_start:start']`` is the
    expected block followed by the anchor, or ``None``.
    """
    seq = tuple(seq)
    for exp in reversed(expected):
        found = None
        for j in range(start - 1, -1, -1):
            for cand in push_forward_all(seq, j, start - 1, c):
                if cand[start - 1] == exp:
                    found = cand
                    break
            if found:
                break
        if found is None:
            return None
        seq, start = found, start - 1
    return seq, start


def _finish(cell, moves, c):
    try:
        replay(cell.layers, moves, c)
    except MoveError as e:
        raise StepError(f"ill-typed result: {e}") from None
    return Cell3(cell.source, cell.layers, canonical_moves(moves, c))


# ---------------------------------------------------------------- relations


class RelationTable:
    """Canonical forms of every relation side, with inverted variants."""

    def __init__(self, c):
        self.c = c
        self.entries = {}
        for name, lhs, rhs in c.relations:
            a = evaluate(lhs, c).canonical(c)
            b = evaluate(rhs, c).canonical(c)
            self.entries[(name, False)] = (a.layers, a.moves, b.moves)
            ai, bi = a.inverse(c).canonical(c), b.inverse(c).canonical(c)
            self.entries[(name, True)] = (ai.layers, ai.moves, bi.moves)

    def sides(self, name, inverted, direction):
        try:
            frame, lhs, rhs = self.entries[(name, bool(inverted))]
        except KeyError:
            raise StepError(f"unknown relation {name!r}") from None
        return (frame, lhs, rhs) if direction == "forward" else (frame, rhs,
                                                                  lhs)


def _place(m, x, left, right):
    m = m.shifted(x)
    return m.whiskered(left, right) if isinstance(m, Gen) else m


def _strip(whole, part, suffix):
    if suffix:
        if len(part) > len(whole) or whole[len(whole) - len(part):] != part:
            return None
        return whole[:len(whole) - len(part)]
    if whole[:len(part)] != part:
        return None
    return whole[len(part):]


def apply_relation(cell, step, table, c):
    p = step.params
    frame, pattern, repl = table.sides(p["relation"], p.get("inverted", False),
                                       step.direction)
    x, left, right = p["offset"], tuple(p["left"]), tuple(p["right"])
    seq, pos = cell.moves, step.position
    if not 0 <= pos <= len(seq):
        raise StepError("position out of range")
    placed = [_place(m, x, left, right) for m in pattern]
    if placed:
        if pos >= len(seq) or seq[pos] != placed[0]:
            raise StepError("no match at position")
        seq = gather_after(seq, pos + 1, placed[1:], c)
        if seq is None:
            raise StepError("pattern moves cannot be gathered")
    state = replay(cell.layers, seq[:pos], c)[-1]
    want = tuple(layer.whisker(left, right) for layer in frame)
    if x < 0 or state[x:x + len(want)] != want:
        raise StepError("relation frame does not match")
    new = (seq[:pos] + tuple(_place(m, x, left, right) for m in repl)
           + seq[pos + len(placed):])
    return _finish(cell, new, c)


def relation_insertions(cell, states, table, c, prune=True):
    """Yield steps that replace an identity by a relation side."""
    for (name, inverted), (frame, lhs, rhs) in table.entries.items():
        for direction, pattern in (("forward", lhs), ("backward", rhs)):
            if pattern or not frame:
                continue
            for pos, here in enumerate(states):
                if prune and pos:
                    prev = cell.moves[pos - 1]
                    start, width = prev.offset, sizes(prev, c)[1]
                for x in range(len(here) - len(frame) + 1):
                    # a frame untouched by the previous move was already
                    # offered one position earlier, with the same result
                    if prune and pos and (x + len(frame) <= start
                                or x >= start + width):
                        continue
                    a, b = here[x], frame[0]
                    if a.gen != b.gen:
                        continue
                    left = _strip(a.left, b.left, True)
                    right = _strip(a.right, b.right, False)
                    if left is None or right is None:
                        continue
                    step = RewriteStep(pos, "relation",
                                       {"relation": name, "inverted": inverted,
                                        "offset": x, "left": left,
                                        "right": right}, direction)
                    try:
                        yield step, apply_relation(cell, step, table, c)
                    except (StepError, MoveError):
                        continue


def relation_matches(cell, states, table, c):
    """Yield applicable relation steps whose matched side is non-empty."""
    seq = cell.moves
    for (name, inverted), (frame, lhs, rhs) in table.entries.items():
        for direction, pattern in (("forward", lhs), ("backward", rhs)):
            if not pattern:
                continue
            p0 = pattern[0]
            for pos, m in enumerate(seq):
                if type(m) is not type(p0):
                    continue
                x = m.offset - p0.offset
                if x < 0:
                    continue
                if isinstance(m, Gen):
                    if (m.name, m.inv) != (p0.name, p0.inv):
                        continue
                    left = _strip(m.left, p0.left, True)
                    right = _strip(m.right, p0.right, False)
                else:
                    if m.fwd != p0.fwd or not frame:
                        continue
                    here = states[pos]
                    if p0.offset >= len(frame) or m.offset >= len(here):
                        continue
                    a, b = here[m.offset], frame[p0.offset]
                    if a.gen != b.gen:
                        continue
                    left = _strip(a.left, b.left, True)
                    right = _strip(a.right, b.right, False)
                if left is None or right is None:
                    continue
                step = RewriteStep(pos, "relation",
                                   {"relation": name, "inverted": inverted,
                                    "offset": x, "left": left,
                                    "right": right}, direction)
                try:
                    yield step, apply_relation(cell, step, table, c)
                except StepError:
                    continue


# ---------------------------------------------------------------- naturality


def _segments(layer, c):
    two = c.two_gens[layer.gen]
    return two[0].path, two[1].path


def _rewhisker(m, layer, outer, old, new):
    """Replace ``old`` by ``new`` at the position of ``layer`` inside the
    whisker of ``m``."""
    if isinstance(m, Swap):
        return m
    if outer:
        i = len(layer.left)
        if m.left[i:i + len(old)] != old or i + len(old) > len(m.left):
            raise StepError("layer overlaps the 3-cell's span")
        return m._replace(left=m.left[:i] + new + m.left[i + len(old):])
    j = len(m.right) - len(layer.right)
    if j - len(old) < 0 or m.right[j - len(old):j] != old:
        raise StepError("layer overlaps the 3-cell's span")
    return m._replace(right=m.right[:j - len(old)] + new + m.right[j:])


def nat_kind(outer):
    # an outer sweeping layer means the 3-cell sits in the inner argument
    return NAT_KINDS[1] if outer else NAT_KINDS[0]


def nat_shapes(m, side, outer, forward, c):
    """Sweep offsets and transported anchor for one naturality instance.

    Forward means ``m ; sweep(T)`` becomes ``sweep(S) ; m'``; ``m`` is the
    anchor in the forward form and ``m'`` in the backward form.
    """
    s, t = sizes(m, c)
    if forward:
        a = m.offset
        if side == "before":
            lhs = [Swap(a - 1 + i, outer) for i in range(t)]
            rhs = [Swap(a - 1 + i, outer) for i in range(s)]
            moved = a - 1
        else:
            lhs = [Swap(a + t - 1 - i, not outer) for i in range(t)]
            rhs = [Swap(a + s - 1 - i, not outer) for i in range(s)]
            moved = a + 1
        return lhs, rhs, moved
    b = m.offset
    if side == "before":
        a = b + 1
        pre = [Swap(b + i, outer) for i in range(s)]
        post = [Swap(a - 1 + i, outer) for i in range(t)]
    else:
        a = b - 1
        pre = [Swap(a + s - 1 - i, not outer) for i in range(s)]
        post = [Swap(a + t - 1 - i, not outer) for i in range(t)]
    return pre, post, a


def apply_naturality(cell, step, c):
    p = step.params
    side, outer = p["side"], bool(p["outer"])
    if side not in ("before", "after"):
        raise StepError(f"bad side {side!r}")
    if step.kind != nat_kind(outer):
        raise StepError(f"{step.kind} does not describe this instance")
    seq, pos = cell.moves, step.position
    if not 0 <= pos < len(seq):
        raise StepError("no move at position")
    if step.direction == "forward":
        new_seq = _nat_forward(cell, seq, pos, side, outer, c)
    else:
        new_seq = _nat_backward(cell, seq, pos, side, outer, c)
    return _finish(cell, new_seq, c)


def _nat_forward(cell, seq, pos, side, outer, c):
    # the swept layer may be created by a move that the canonical order
    # places after the anchor, so try later placements of the anchor too
    reason = "no adjacent layer"
    for q in range(pos, len(seq)):
        for var in push_forward_all(seq, pos, q, c):
            m = var[q]
            here = replay(cell.layers, var[:q], c)[-1]
            s, t = sizes(m, c)
            idx = m.offset - 1 if side == "before" else m.offset + s
            if not 0 <= idx < len(here):
                continue
            layer = here[idx]
            lhs, rhs, moved = nat_shapes(m, side, outer, True, c)
            gathered = gather_after(var, q + 1, lhs, c)
            if gathered is None:
                reason = "sweep moves not found"
                continue
            src_seg, tgt_seg = _segments(layer, c)
            old, new = ((tgt_seg, src_seg) if side == "before"
                        else (src_seg, tgt_seg))
            m2 = _rewhisker(m, layer, outer, old, new)._replace(offset=moved)
            return (gathered[:q] + tuple(rhs) + (m2,)
                    + gathered[q + 1 + len(lhs):])
    raise StepError(reason)


def _nat_backward(cell, seq, pos, side, outer, c):
    reason = "sweep moves not found"
    for q in range(pos, -1, -1):
        for var in pull_back_all(seq, pos, q, c):
            m = var[q]
            s, t = sizes(m, c)
            pre, post, a = nat_shapes(m, side, outer, False, c)
            res = gather_before(var, q, pre, c)
            if res is None:
                continue
            gathered, start = res
            here = replay(cell.layers, gathered[:start + len(pre)], c)[-1]
            idx = m.offset + s if side == "before" else m.offset - 1
            if not 0 <= idx < len(here):
                reason = "no adjacent layer"
                continue
            layer = here[idx]
            src_seg, tgt_seg = _segments(layer, c)
            old, new = ((src_seg, tgt_seg) if side == "before"
                        else (tgt_seg, src_seg))
            m0 = _rewhisker(m, layer, outer, old, new)._replace(offset=a)
            return (gathered[:start] + (m0,) + tuple(post)
                    + gathered[start + len(pre) + 1:])
    raise StepError(reason)


def naturality_matches(cell, states, c):
    for pos in range(len(cell.moves)):
        for direction in ("forward", "backward"):
            for side in ("before", "after"):
                for outer in (True, False):
                    step = RewriteStep(pos, nat_kind(outer),
                                       {"side": side, "outer": outer},
                                       direction)
                    try:
                        yield step, apply_naturality(cell, step, c)
                    except (StepError, MoveError):
                        continue


# ---------------------------------------------------------------- dispatch


def apply_step(cell, step, c, table=None):
    """Apply one step to a canonical cell; raises :class:`StepError`."""
    if step.direction not in ("forward", "backward"):
        raise StepError(f"bad direction {step.direction!r}")
    if step.kind == "relation":
        return apply_relation(cell, step, table or RelationTable(c), c)
    if step.kind in NAT_KINDS:
        return apply_naturality(cell, step, c)
    if step.kind == "inverse-cancel":
        return apply_cancel(cell, step, c)
    raise StepError(f"unknown step kind {step.kind!r}")


def apply_cancel(cell, step, c):
    seq, pos = cell.moves, step.position
    if step.direction == "forward":
        if pos + 1 >= len(seq) or seq[pos + 1] != seq[pos].inverse():
            raise StepError("no inverse pair at position")
        return _finish(cell, seq[:pos] + seq[pos + 2:], c)
    mv = step.params.get("move")
    if mv is None:
        raise StepError("inverse insertion needs a move")
    m = Swap(*mv) if len(mv) == 2 else Gen(mv[0], mv[1], bool(mv[2]),
                                              tuple(mv[3]), tuple(mv[4]))
    return _finish(cell, seq[:pos] + (m, m.inverse()) + seq[pos:], c)


def neighbours(cell, c, table, insertions=True, prune=True):
    states = replay(cell.layers, cell.moves, c)
    yield from relation_matches(cell, states, table, c)
    yield from naturality_matches(cell, states, c)
    if insertions:
        yield from relation_insertions(cell, states, table, c, prune)
