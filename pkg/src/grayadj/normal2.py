"""Whisker normal form of 2-cells in a free Gray-category.

Interchange of 2-cells is a 3-cell, not an equation, so a 2-cell is exactly
an ordered list of whiskered generators.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import NamedTuple

from .terms import (Gen2, Id2, LWhisk, One, RWhisk, TypingError, VComp,
                    boundary1, boundary2, vcomp)


class BoundaryMismatch(ValueError):
    """Two cells compared for equality are not parallel."""


class Layer(NamedTuple):
    left: tuple
    gen: str
    right: tuple

    def whisker(self, left=(), right=()):
        return Layer(tuple(left) + self.left, self.gen,
                     self.right + tuple(right))

    def __str__(self):
        parts = []
        if self.left:
            parts.append(".".join(self.left) + " <")
        parts.append(self.gen)
        if self.right:
            parts.append("> " + ".".join(self.right))
        return " ".join(parts)


def layer_src(layer: Layer, c) -> tuple:
    return layer.left + c.two_gens[layer.gen][0].path + layer.right


def layer_tgt(layer: Layer, c) -> tuple:
    return layer.left + c.two_gens[layer.gen][1].path + layer.right


@dataclass(frozen=True)
class WhiskerNormal2Cell:
    source: One
    layers: tuple = ()

    def target(self, c) -> One:
        if not self.layers:
            return self.source
        return One(self.source.base, layer_tgt(self.layers[-1], c))

    def __str__(self):
        if not self.layers:
            return f"id2({self.source})"
        return " ; ".join(f"({x})" for x in self.layers)


def _layers(t, c):
    if isinstance(t, Id2):
        return ()
    if isinstance(t, Gen2):
        return (Layer((), t.name, ()),)
    if isinstance(t, LWhisk):
        return tuple(x.whisker(left=t.g.path) for x in _layers(t.body, c))
    if isinstance(t, RWhisk):
        return tuple(x.whisker(right=t.f.path) for x in _layers(t.body, c))
    if isinstance(t, VComp):
        return _layers(t.first, c) + _layers(t.then, c)
    raise TypeError(f"not a 2-cell term: {t!r}")


def normalize2(t, c) -> WhiskerNormal2Cell:
    src, _ = boundary2(t, c)
    return WhiskerNormal2Cell(src, _layers(t, c))


def eq2_unchecked(a, b, c) -> bool:
    return normalize2(a, c) == normalize2(b, c)


def eq2(a, b, c) -> bool:
    """Equality of 2-cells; raises :class:`BoundaryMismatch` when ``a`` and
    ``b`` are not parallel."""
    ba, bb = boundary2(a, c), boundary2(b, c)
    if ba != bb:
        raise BoundaryMismatch(f"{ba[0]} => {ba[1]} vs {bb[0]} => {bb[1]}")
    return normalize2(a, c) == normalize2(b, c)


def layer_term(layer: Layer, base: str, c):
    """The 2-cell term ``left < gen > right`` whose source starts at ``base``."""
    term = Gen2(layer.gen)
    if layer.right:
        term = RWhisk(term, One(base, layer.right))
    if layer.left:
        mid = One(base, c.two_gens[layer.gen][0].path + layer.right)
        term = LWhisk(One(boundary1(mid, c)[1], layer.left), term)
    return term


def embed2(nf: WhiskerNormal2Cell, c):
    """Term representing a normal form; ``normalize2(embed2(nf)) == nf``."""
    if not nf.layers:
        return Id2(nf.source)
    return vcomp(*(layer_term(x, nf.source.base, c) for x in nf.layers))


def check_layers(source: One, layers, c):
    """Validate that ``layers`` compose starting from ``source``."""
    here = source.path
    for i, x in enumerate(layers):
        if x.gen not in c.two_gens:
            raise TypingError(f"unknown 2-cell {x.gen!r}", (i,))
        if layer_src(x, c) != here:
            raise TypingError(f"layer {x} does not start at {here}", (i,))
        here = layer_tgt(x, c)
    return One(source.base, here)
