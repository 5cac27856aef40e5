"""Cell terms of dimensions 1-3 and their boundaries.

1-cells are paths written in classical order: ``One("X", ("U", "F"))`` is
``U . F``, i.e. ``F`` first and then ``U``.  The leftmost generator is the
outermost one, which is also the convention for the whisker paths of layers
in :mod:`grayadj.normal2`.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import TYPE_CHECKING, Union

if TYPE_CHECKING:
    from .presentation import Computad


class TypingError(ValueError):
    """An ill-typed term.  ``position`` is the path of child indices to the
    offending subterm, counted from the root."""

    def __init__(self, message, position=()):
        self.position = tuple(position)
        where = "/".join(map(str, self.position)) or "root"
        super().__init__(f"{message} (at {where})")


# ---------------------------------------------------------------- 1-cells


@dataclass(frozen=True)
class One:
    base: str
    path: tuple = ()

    def after(self, other: "One") -> "One":
        """``self . other`` (other first)."""
        return One(other.base, self.path + other.path)

    def __str__(self):
        if not self.path:
            return f"id({self.base})"
        return " . ".join(self.path)


# ---------------------------------------------------------------- 2-cells


@dataclass(frozen=True)
class Id2:
    f: One


@dataclass(frozen=True)
class Gen2:
    name: str


@dataclass(frozen=True)
class LWhisk:
    g: One
    body: "Two"


@dataclass(frozen=True)
class RWhisk:
    body: "Two"
    f: One


@dataclass(frozen=True)
class VComp:
    first: "Two"
    then: "Two"


Two = Union[Id2, Gen2, LWhisk, RWhisk, VComp]
TWO_TYPES = (Id2, Gen2, LWhisk, RWhisk, VComp)


def vcomp(*cells):
    """Left-to-right vertical composite of 2-cells (first cell first)."""
    out = cells[0]
    for c in cells[1:]:
        out = VComp(out, c)
    return out


# ---------------------------------------------------------------- 3-cells


@dataclass(frozen=True)
class Id3:
    c: Two


@dataclass(frozen=True)
class Gen3:
    name: str


@dataclass(frozen=True)
class InvGen3:
    name: str


@dataclass(frozen=True)
class Ichg:
    beta: Two
    alpha: Two


@dataclass(frozen=True)
class InvIchg:
    beta: Two
    alpha: Two


@dataclass(frozen=True)
class LWhisk1:
    g: One
    body: "Three"


@dataclass(frozen=True)
class RWhisk1:
    body: "Three"
    f: One


@dataclass(frozen=True)
class LWhisk2:
    """``c ; body``: the 2-cell ``c`` happens first."""

    c: Two
    body: "Three"


@dataclass(frozen=True)
class RWhisk2:
    """``body ; c``."""

    body: "Three"
    c: Two


@dataclass(frozen=True)
class VComp3:
    """Composition along a shared 2-cell (``*`` in the text format)."""

    first: "Three"
    then: "Three"


@dataclass(frozen=True)
class HComp3:
    """Composition along a shared 1-cell inside a hom-2-category (``;``)."""

    first: "Three"
    then: "Three"


Three = Union[Id3, Gen3, InvGen3, Ichg, InvIchg, LWhisk1, RWhisk1, LWhisk2,
              RWhisk2, VComp3, HComp3]
THREE_TYPES = (Id3, Gen3, InvGen3, Ichg, InvIchg, LWhisk1, RWhisk1, LWhisk2,
               RWhisk2, VComp3, HComp3)


def vcomp3(*cells):
    out = cells[0]
    for c in cells[1:]:
        out = VComp3(out, c)
    return out


def dim(t) -> int:
    if isinstance(t, One):
        return 1
    if isinstance(t, TWO_TYPES):
        return 2
    if isinstance(t, THREE_TYPES):
        return 3
    raise TypeError(f"not a cell term: {t!r}")


# ---------------------------------------------------------------- boundaries


def boundary1(t: One, c: "Computad", position=()):
    """(source object, target object) of a path."""
    here = t.base
    if here not in c.objects:
        raise TypingError(f"unknown object {here!r}", position)
    for name in reversed(t.path):
        if name not in c.one_gens:
            raise TypingError(f"unknown 1-cell {name!r}", position)
        src, tgt = c.one_gens[name]
        if src != here:
            raise TypingError(f"path {t} not composable at {name}", position)
        here = tgt
    return t.base, here


def _whisker_ok(outer: One, inner: One, c, position):
    if boundary1(outer, c, position)[0] != boundary1(inner, c, position)[1]:
        raise TypingError(f"cannot compose {outer} after {inner}", position)
    return outer.after(inner)


def boundary2(t: Two, c: "Computad", position=()):
    """(source 1-cell, target 1-cell) of a 2-cell term."""
    if isinstance(t, Id2):
        boundary1(t.f, c, position)
        return t.f, t.f
    if isinstance(t, Gen2):
        if t.name not in c.two_gens:
            raise TypingError(f"unknown 2-cell {t.name!r}", position)
        return c.two_gens[t.name]
    if isinstance(t, LWhisk):
        s, e = boundary2(t.body, c, position + (1,))
        return (_whisker_ok(t.g, s, c, position),
                _whisker_ok(t.g, e, c, position))
    if isinstance(t, RWhisk):
        s, e = boundary2(t.body, c, position + (0,))
        return (_whisker_ok(s, t.f, c, position),
                _whisker_ok(e, t.f, c, position))
    if isinstance(t, VComp):
        s1, e1 = boundary2(t.first, c, position + (0,))
        s2, e2 = boundary2(t.then, c, position + (1,))
        if e1 != s2:
            raise TypingError(f"vertical composite mismatch: {e1} vs {s2}",
                              position)
        return s1, e2
    raise TypeError(f"not a 2-cell term: {t!r}")


def boundary3(t: Three, c: "Computad", position=()):
    """(source 2-cell, target 2-cell) of a 3-cell term.

    Raises :class:`TypingError` at the first ill-typed subterm; composites
    are compared after whisker normalization.
    """
    from .normal2 import eq2_unchecked

    if isinstance(t, Id3):
        boundary2(t.c, c, position)
        return t.c, t.c
    if isinstance(t, (Gen3, InvGen3)):
        if t.name not in c.three_gens:
            raise TypingError(f"unknown 3-cell {t.name!r}", position)
        src, tgt, inv = c.three_gens[t.name]
        if isinstance(t, InvGen3):
            if not inv:
                raise TypingError(f"{t.name} is not invertible", position)
            return tgt, src
        return src, tgt
    if isinstance(t, (Ichg, InvIchg)):
        g, g2 = boundary2(t.beta, c, position + (0,))
        f, f2 = boundary2(t.alpha, c, position + (1,))
        if boundary1(g, c)[0] != boundary1(f, c)[1]:
            raise TypingError("interchanger arguments not composable",
                              position)
        src = VComp(RWhisk(t.beta, f), LWhisk(g2, t.alpha))
        tgt = VComp(LWhisk(g, t.alpha), RWhisk(t.beta, f2))
        return (src, tgt) if isinstance(t, Ichg) else (tgt, src)
    if isinstance(t, LWhisk1):
        s, e = boundary3(t.body, c, position + (1,))
        out = LWhisk(t.g, s), LWhisk(t.g, e)
        boundary2(out[0], c, position)
        return out
    if isinstance(t, RWhisk1):
        s, e = boundary3(t.body, c, position + (0,))
        out = RWhisk(s, t.f), RWhisk(e, t.f)
        boundary2(out[0], c, position)
        return out
    if isinstance(t, LWhisk2):
        s, e = boundary3(t.body, c, position + (1,))
        out = VComp(t.c, s), VComp(t.c, e)
        boundary2(out[0], c, position)
        return out
    if isinstance(t, RWhisk2):
        s, e = boundary3(t.body, c, position + (0,))
        out = VComp(s, t.c), VComp(e, t.c)
        boundary2(out[0], c, position)
        return out
    if isinstance(t, VComp3):
        s1, e1 = boundary3(t.first, c, position + (0,))
        s2, e2 = boundary3(t.then, c, position + (1,))
        if not eq2_unchecked(e1, s2, c):
            raise TypingError("3-cell composite: target of first is not the "
                              "source of the second", position)
        return s1, e2
    if isinstance(t, HComp3):
        s1, e1 = boundary3(t.first, c, position + (0,))
        s2, e2 = boundary3(t.then, c, position + (1,))
        out = VComp(s1, s2), VComp(e1, e2)
        boundary2(out[0], c, position)
        return out
    raise TypeError(f"not a 3-cell term: {t!r}")
