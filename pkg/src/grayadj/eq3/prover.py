"""Equality certificates for 3-cells and a bounded bidirectional search."""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass

from ..normal2 import BoundaryMismatch, eq2_unchecked
from ..terms import boundary3
from .cells import MoveError, evaluate, to_term
from .rules import RelationTable, RewriteStep, StepError, apply_step, neighbours

DEFAULT_MAX_STATES = 10_000
DEFAULT_MAX_DEPTH = 8


def normalize3_strict(t, c):
    """Canonical term for ``t`` modulo the strict Gray-category laws."""
    return to_term(evaluate(t, c).canonical(c), c)


def strict_equal(a, b, c):
    _parallel(a, b, c)
    return evaluate(a, c).canonical(c) == evaluate(b, c).canonical(c)


def _parallel(a, b, c):
    sa, ta = boundary3(a, c)
    sb, tb = boundary3(b, c)
    if not (eq2_unchecked(sa, sb, c) and eq2_unchecked(ta, tb, c)):
        raise BoundaryMismatch("3-cells are not parallel")


@dataclass(frozen=True)
class EqualityCertificate:
    start: object
    end: object
    steps: tuple = ()

    def to_json(self):
        from ..presentation import render_term

        return {"start": render_term(self.start),
                "end": render_term(self.end),
                "steps": [s.to_json() for s in self.steps]}

    @classmethod
    def from_json(cls, d, c):
        from ..presentation import parse_term

        return cls(parse_term(d["start"], c, 3), parse_term(d["end"], c, 3),
                   tuple(RewriteStep.from_json(s) for s in d["steps"]))


@dataclass
class CheckResult:
    ok: bool
    failed_step: int | None = None
    reason: str = ""

    def __bool__(self):
        return self.ok


def check_certificate(cert, c, table=None) -> CheckResult:
    """Replay ``cert`` and compare its last state with ``cert.end``.

    ``failed_step`` is the index of the offending step, or ``len(steps)``
    when every step applies but the final state is not the claimed end.
    """
    table = table or RelationTable(c)
    try:
        _parallel(cert.start, cert.end, c)
        cell = evaluate(cert.start, c).canonical(c)
        goal = evaluate(cert.end, c).canonical(c)
    except (BoundaryMismatch, MoveError, ValueError) as e:
        return CheckResult(False, None, f"ill-typed endpoints: {e}")
    for i, step in enumerate(cert.steps):
        try:
            cell = apply_step(cell, step, c, table)
        except (StepError, MoveError, KeyError, TypeError) as e:
            return CheckResult(False, i, str(e) or type(e).__name__)
    if cell != goal:
        return CheckResult(False, len(cert.steps),
                           "final state differs from the claimed end")
    return CheckResult(True)


@dataclass
class SearchStats:
    visited: int = 0
    exhausted: bool = False


def prove_eq3(lhs, rhs, c, budget=None, max_depth=DEFAULT_MAX_DEPTH,
              stats=None):
    """Search for a certificate ``lhs == rhs``.

    Returns an :class:`EqualityCertificate` or ``None`` if the search budget
    runs out (a budget of 0 always gives ``None``); ``None`` never means the cells differ.  Raises
    :class:`BoundaryMismatch` for non-parallel inputs.
    """
    _parallel(lhs, rhs, c)
    budget = DEFAULT_MAX_STATES if budget is None else budget
    table = RelationTable(c)
    a = evaluate(lhs, c).canonical(c)
    b = evaluate(rhs, c).canonical(c)
    stats = stats if stats is not None else SearchStats()
    if budget <= 0:
        stats.exhausted = True
        return None
    if a == b:
        return EqualityCertificate(lhs, rhs, ())
    path = bidirectional(a, b, c, table, budget, max_depth, stats)
    if path is None:
        return None
    return EqualityCertificate(lhs, rhs, tuple(path))


def bidirectional(a, b, c, table, budget, max_depth, stats):
    parents = ({a: None}, {b: None})
    depth = ({a: 0}, {b: 0})
    frontier = (deque([a]), deque([b]))
    stats.visited = 2
    while frontier[0] or frontier[1]:
        side = 0 if (frontier[0] and (not frontier[1]
                     or len(frontier[0]) <= len(frontier[1]))) else 1
        cur = frontier[side].popleft()
        if depth[side][cur] >= max_depth:
            continue
        for step, nxt in neighbours(cur, c, table):
            if nxt in parents[side]:
                continue
            parents[side][nxt] = (cur, step)
            depth[side][nxt] = depth[side][cur] + 1
            stats.visited += 1
            if nxt in parents[1 - side]:
                return _join(nxt, parents, c, table)
            if stats.visited >= budget:
                stats.exhausted = True
                return None
            frontier[side].append(nxt)
    stats.exhausted = True
    return None


def _join(meet, parents, c, table):
    left, node = [], meet
    while parents[0][node] is not None:
        prev, step = parents[0][node]
        left.append(step)
        node = prev
    left.reverse()
    right, node = [], meet
    while parents[1][node] is not None:
        prev, step = parents[1][node]
        right.append(invert_step(node, prev, step, c, table))
        node = prev
    return left + right


def invert_step(frm, to, step, c, table):
    """A step taking ``frm`` to ``to``, given ``step`` taking ``to`` to
    ``frm``."""
    flipped = "backward" if step.direction == "forward" else "forward"
    for pos in range(len(frm.moves) + 1):
        cand = RewriteStep(pos, step.kind, step.params, flipped)
        try:
            if apply_step(frm, cand, c, table) == to:
                return cand
        except (StepError, MoveError):
            continue
    # an insertion that partly cancelled is undone by inserting the
    # inverse side somewhere else
    for cand, result in neighbours(frm, c, table, prune=False):
        if result == to:
            return cand
    raise AssertionError("search edge has no inverse step")
