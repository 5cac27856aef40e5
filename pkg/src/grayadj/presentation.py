"""Finite presentations of Gray-categories and their op/co duals."""

from __future__ import annotations

import enum
from dataclasses import dataclass, field

from . import terms as T
from .terms import One, TypingError, boundary1, boundary2, boundary3


class PresentationError(ValueError):
    pass


class ParseError(PresentationError):
    def __init__(self, message, line, col):
        self.line, self.col = line, col
        super().__init__(f"line {line}, column {col}: {message}")


class BoundaryError(PresentationError):
    def __init__(self, generator, detail):
        self.generator = generator
        super().__init__(f"ill-typed boundary of {generator!r}: {detail}")


class DuplicateName(PresentationError):
    def __init__(self, name):
        self.name = name
        super().__init__(f"duplicate name {name!r}")


RESERVED = {"id", "id2", "id3", "inv", "ichg", "inv_ichg", "object", "1cell",
            "2cell", "3cell", "relation"}


@dataclass(eq=False)
class Computad:
    objects: tuple = ()
    one_gens: dict = field(default_factory=dict)
    two_gens: dict = field(default_factory=dict)
    three_gens: dict = field(default_factory=dict)
    relations: tuple = ()
    _cache: dict = field(default_factory=dict, repr=False)

    def __eq__(self, other):
        if not isinstance(other, Computad):
            return NotImplemented
        return (set(self.objects) == set(other.objects)
                and self.one_gens == other.one_gens
                and self.two_gens == other.two_gens
                and self.three_gens == other.three_gens
                and sorted(self.relations, key=repr)
                == sorted(other.relations, key=repr))

    def kind_of(self, name):
        if name in self.one_gens:
            return 1
        if name in self.two_gens:
            return 2
        if name in self.three_gens:
            return 3
        if name in self.objects:
            return 0
        return None

    def relation(self, name):
        for rel in self.relations:
            if rel[0] == name:
                return rel
        raise KeyError(name)

    def end(self, f: One) -> str:
        return boundary1(f, self)[1]

    def three_layers(self, name):
        """Normalized (source layers, target layers) of a 3-generator."""
        key = ("3", name)
        if key not in self._cache:
            from .normal2 import normalize2
            src, tgt, _ = self.three_gens[name]
            self._cache[key] = (normalize2(src, self).layers,
                                normalize2(tgt, self).layers)
        return self._cache[key]

    def extend(self, objects=(), one_gens=(), two_gens=(), three_gens=(),
               relations=()):
        """A new validated computad with extra generators appended."""
        c = Computad(tuple(self.objects) + tuple(objects),
                     {**self.one_gens, **dict(one_gens)},
                     {**self.two_gens, **dict(two_gens)},
                     {**self.three_gens, **dict(three_gens)},
                     tuple(self.relations) + tuple(relations))
        seen = list(self.objects) + list(self.one_gens) + list(self.two_gens) \
            + list(self.three_gens)
        for name in (list(objects) + [n for n, _ in one_gens]
                     + [n for n, _ in two_gens] + [n for n, _ in three_gens]):
            if name in seen:
                raise DuplicateName(name)
            seen.append(name)
        return validate(c)

    def without_relation(self, name):
        c = Computad(self.objects, dict(self.one_gens), dict(self.two_gens),
                     dict(self.three_gens),
                     tuple(r for r in self.relations if r[0] != name))
        return c


def validate(c: Computad) -> Computad:
    """Check every boundary invariant in declaration order."""
    from .normal2 import normalize2

    for name, (src, tgt) in c.one_gens.items():
        if src not in c.objects or tgt not in c.objects:
            raise BoundaryError(name, "unknown endpoint object")
    for name, (f, g) in c.two_gens.items():
        try:
            if boundary1(f, c) != boundary1(g, c):
                raise BoundaryError(name, f"{f} and {g} are not parallel")
        except TypingError as e:
            raise BoundaryError(name, str(e)) from None
    for name, (a, b, _) in c.three_gens.items():
        try:
            if boundary2(a, c) != boundary2(b, c):
                raise BoundaryError(name, "2-cell boundaries not parallel")
        except TypingError as e:
            raise BoundaryError(name, str(e)) from None
    for name, lhs, rhs in c.relations:
        try:
            s1, t1 = boundary3(lhs, c)
            s2, t2 = boundary3(rhs, c)
        except TypingError as e:
            raise BoundaryError(name, str(e)) from None
        if (normalize2(s1, c) != normalize2(s2, c)
                or normalize2(t1, c) != normalize2(t2, c)):
            raise BoundaryError(name, "sides are not parallel")
    return c


# ---------------------------------------------------------------- parsing

_SYMBOLS = ("=>", "->", "==", "(", ")", ",", ".", "<", ">", ";", "*", ":")


def _tokenize(text, lineno):
    out, i = [], 0
    while i < len(text):
        ch = text[i]
        if ch.isspace():
            i += 1
            continue
        for sym in _SYMBOLS:
            if text.startswith(sym, i):
                out.append((sym, i + 1))
                i += len(sym)
                break
        else:
            j = i
            while j < len(text) and (text[j].isalnum() or text[j] in "_'"):
                j += 1
            if j == i:
                raise ParseError(f"unexpected character {ch!r}", lineno, i + 1)
            out.append((text[i:j], i + 1))
            i = j
    return out


class _Parser:
    def __init__(self, tokens, c, lineno):
        self.toks, self.c, self.lineno, self.i = tokens, c, lineno, 0

    def peek(self):
        return self.toks[self.i][0] if self.i < len(self.toks) else None

    def col(self):
        if self.i < len(self.toks):
            return self.toks[self.i][1]
        return (self.toks[-1][1] + len(self.toks[-1][0])) if self.toks else 1

    def fail(self, msg):
        raise ParseError(msg, self.lineno, self.col())

    def take(self, expected=None):
        tok = self.peek()
        if tok is None or (expected is not None and tok != expected):
            self.fail(f"expected {expected or 'token'}, got {tok!r}")
        self.i += 1
        return tok

    def name(self):
        tok = self.take()
        if not (tok[0].isalpha() or tok[0] == "_") or tok in RESERVED:
            self.i -= 1
            self.fail(f"expected a name, got {tok!r}")
        return tok

    def done(self):
        if self.peek() is not None:
            self.fail(f"unexpected {self.peek()!r}")

    # 1-cells
    def one(self):
        if self.peek() == "id":
            self.take()
            self.take("(")
            obj = self.name()
            if obj not in self.c.objects:
                self.i -= 1
                self.fail(f"unknown object {obj!r}")
            self.take(")")
            return One(obj, ())
        if self.peek() == "(":
            self.take()
            f = self.one()
            self.take(")")
            return f
        path = [self._one_gen()]
        while self.peek() == ".":
            self.take()
            path.append(self._one_gen())
        return One(self.c.one_gens[path[-1]][0], tuple(path))

    def _one_gen(self):
        n = self.name()
        if n not in self.c.one_gens:
            self.i -= 1
            self.fail(f"{n!r} is not a 1-cell")
        return n

    def try_one_then(self, sym):
        start = self.i
        try:
            f = self.one()
        except ParseError:
            self.i = start
            return None
        if self.peek() == sym:
            self.take()
            return f
        self.i = start
        return None

    # 2- and 3-cells
    def expr(self):
        first = self.hseq()
        if self.peek() != "*":
            return first
        out = _as3(first)
        while self.peek() == "*":
            self.take()
            out = T.VComp3(out, _as3(self.hseq()))
        return out

    def hseq(self):
        out = self.whisk()
        while self.peek() == ";":
            self.take()
            out = _seq(out, self.whisk())
        return out

    def whisk(self):
        prefixes = []
        while True:
            f = self.try_one_then("<")
            if f is None:
                break
            prefixes.append(f)
        body = self.primary()
        for f in reversed(prefixes):
            body = (T.LWhisk(f, body) if T.dim(body) == 2
                    else T.LWhisk1(f, body))
        while self.peek() == ">":
            self.take()
            f = self.one()
            body = (T.RWhisk(body, f) if T.dim(body) == 2
                    else T.RWhisk1(body, f))
        return body

    def primary(self):
        tok = self.peek()
        if tok == "(":
            self.take()
            e = self.expr()
            self.take(")")
            return e
        if tok == "id2":
            self.take()
            self.take("(")
            f = self.one()
            self.take(")")
            return T.Id2(f)
        if tok == "id3":
            self.take()
            self.take("(")
            e = self.expr()
            self.take(")")
            if T.dim(e) != 2:
                self.fail("id3 expects a 2-cell")
            return T.Id3(e)
        if tok == "inv":
            self.take()
            self.take("(")
            n = self.name()
            if n not in self.c.three_gens:
                self.i -= 1
                self.fail(f"{n!r} is not a 3-cell")
            self.take(")")
            return T.InvGen3(n)
        if tok in ("ichg", "inv_ichg"):
            self.take()
            self.take("(")
            b = self.expr()
            self.take(",")
            a = self.expr()
            self.take(")")
            if T.dim(a) != 2 or T.dim(b) != 2:
                self.fail("interchanger arguments must be 2-cells")
            return T.Ichg(b, a) if tok == "ichg" else T.InvIchg(b, a)
        n = self.name()
        k = self.c.kind_of(n)
        if k == 2:
            return T.Gen2(n)
        if k == 3:
            return T.Gen3(n)
        self.i -= 1
        self.fail(f"{n!r} is not a 2-cell or 3-cell")


def _as3(t):
    return T.Id3(t) if T.dim(t) == 2 else t


def _seq(a, b):
    da, db = T.dim(a), T.dim(b)
    if da == 2 and db == 2:
        return T.VComp(a, b)
    if da == 2:
        return T.LWhisk2(a, b)
    if db == 2:
        return T.RWhisk2(a, b)
    return T.HComp3(a, b)


def parse_term(text, c, dimension=None, lineno=1):
    """Parse a 1-, 2- or 3-cell term against the generators of ``c``."""
    p = _Parser(_tokenize(text, lineno), c, lineno)
    t = p.one() if dimension == 1 else p.expr()
    p.done()
    if dimension == 3:
        t = _as3(t)
    if dimension is not None and T.dim(t) != dimension:
        raise ParseError(f"expected a {dimension}-cell", lineno, 1)
    return t


def load_presentation(source: str) -> Computad:
    """Parse and validate a ``.gray`` document."""
    c = Computad()
    objects, rels = [], []
    for lineno, raw in enumerate(source.splitlines(), 1):
        line = raw.split("#", 1)[0]
        toks = _tokenize(line, lineno)
        if not toks:
            continue
        p = _Parser(toks, c, lineno)
        head = p.take()
        if head == "object":
            name = p.name()
            p.done()
            _fresh(c, name, p)
            objects.append(name)
            c.objects = tuple(objects)
        elif head == "1cell":
            name = p.name()
            p.take(":")
            src = p.name()
            p.take("->")
            tgt = p.name()
            p.done()
            _fresh(c, name, p)
            for o in (src, tgt):
                if o not in c.objects:
                    raise BoundaryError(name, f"unknown object {o!r}")
            c.one_gens[name] = (src, tgt)
        elif head == "2cell":
            name = p.name()
            p.take(":")
            f = p.one()
            p.take("=>")
            g = p.one()
            p.done()
            _fresh(c, name, p)
            c.two_gens[name] = (f, g)
            _check_2gen(c, name)
        elif head == "3cell":
            inv = False
            if p.peek() == "inv":
                p.take()
                inv = True
            name = p.name()
            p.take(":")
            a = p.hseq()
            p.take("->")
            b = p.hseq()
            p.done()
            if T.dim(a) != 2 or T.dim(b) != 2:
                raise ParseError("3-cell boundaries must be 2-cells", lineno, 1)
            _fresh(c, name, p)
            c.three_gens[name] = (a, b, inv)
            try:
                if boundary2(a, c) != boundary2(b, c):
                    raise BoundaryError(name, "2-cell boundaries not parallel")
            except TypingError as e:
                raise BoundaryError(name, str(e)) from None
        elif head == "relation":
            name = p.name()
            p.take(":")
            lhs = _as3(p.expr())
            p.take("==")
            rhs = _as3(p.expr())
            p.done()
            if name in [r[0] for r in rels]:
                raise DuplicateName(name)
            rels.append((name, lhs, rhs))
            c.relations = tuple(rels)
        else:
            raise ParseError(f"unknown declaration {head!r}", lineno, 1)
    return validate(c)


def _fresh(c, name, p):
    if c.kind_of(name) is not None:
        raise DuplicateName(name)


def _check_2gen(c, name):
    f, g = c.two_gens[name]
    try:
        if boundary1(f, c) != boundary1(g, c):
            raise BoundaryError(name, f"{f} and {g} are not parallel")
    except TypingError as e:
        raise BoundaryError(name, str(e)) from None


# ---------------------------------------------------------------- rendering

_SEQ2 = (T.VComp,)
_SEQ3 = (T.LWhisk2, T.RWhisk2, T.HComp3)


def render_term(t) -> str:
    if isinstance(t, One):
        return str(t)
    if isinstance(t, T.Id2):
        return f"id2({t.f})"
    if isinstance(t, (T.Gen2, T.Gen3)):
        return t.name
    if isinstance(t, T.InvGen3):
        return f"inv({t.name})"
    if isinstance(t, T.Id3):
        return f"id3({render_term(t.c)})"
    if isinstance(t, (T.Ichg, T.InvIchg)):
        head = "ichg" if isinstance(t, T.Ichg) else "inv_ichg"
        return f"{head}({render_term(t.beta)}, {render_term(t.alpha)})"
    # whiskering by an identity is the identity, so it is left out
    if isinstance(t, (T.LWhisk, T.LWhisk1)):
        if not t.g.path:
            return render_term(t.body)
        return f"{_one_op(t.g)} < {_atom(t.body)}"
    if isinstance(t, (T.RWhisk, T.RWhisk1)):
        if not t.f.path:
            return render_term(t.body)
        return f"{_atom(t.body)} > {_one_op(t.f)}"
    if isinstance(t, T.VComp):
        return f"{_seq_left(t.first)} ; {_seq_right(t.then)}"
    if isinstance(t, T.LWhisk2):
        return f"{_seq_left(t.c)} ; {_seq_right(t.body)}"
    if isinstance(t, (T.RWhisk2,)):
        return f"{_seq_left(t.body)} ; {_seq_right(t.c)}"
    if isinstance(t, T.HComp3):
        return f"{_seq_left(t.first)} ; {_seq_right(t.then)}"
    if isinstance(t, T.VComp3):
        left, right = render_term(t.first), render_term(t.then)
        if isinstance(t.first, _SEQ3):
            left = f"({left})"
        if isinstance(t.then, _SEQ3 + (T.VComp3,)):
            right = f"({right})"
        return f"{left} * {right}"
    raise TypeError(f"not a term: {t!r}")


def _one_op(f):
    return str(f)


def _atom(t):
    s = render_term(t)
    if isinstance(t, (T.Id2, T.Gen2, T.Gen3, T.InvGen3, T.Id3, T.Ichg,
                      T.InvIchg)):
        return s
    return f"({s})"


def _seq_left(t):
    s = render_term(t)
    return f"({s})" if isinstance(t, T.VComp3) else s


def _seq_right(t):
    s = render_term(t)
    return f"({s})" if isinstance(t, _SEQ2 + _SEQ3 + (T.VComp3,)) else s


def render(c: Computad) -> str:
    lines = [f"object {o}" for o in c.objects]
    lines += [f"1cell {n} : {s} -> {t}" for n, (s, t) in c.one_gens.items()]
    lines += [f"2cell {n} : {f} => {g}" for n, (f, g) in c.two_gens.items()]
    for n, (a, b, inv) in c.three_gens.items():
        flag = "inv " if inv else ""
        lines.append(f"3cell {flag}{n} : {render_term(a)} -> {render_term(b)}")
    for n, lhs, rhs in c.relations:
        lines.append(f"relation {n} : {render_term(lhs)} == {render_term(rhs)}")
    return "\n".join(lines) + "\n"


# ---------------------------------------------------------------- duality


class Duality(enum.Enum):
    OP = "op"
    CO = "co"
    COOP = "coop"


def dual_term(t, c: Computad, d: Duality):
    """Transport a term of ``c`` into the dual presentation."""
    d = Duality(d)
    if d is Duality.COOP:
        return _co(_op(t, c))
    return _op(t, c) if d is Duality.OP else _co(t)


def _op(t, c):
    if isinstance(t, One):
        return One(c.end(t), tuple(reversed(t.path)))
    if isinstance(t, T.Id2):
        return T.Id2(_op(t.f, c))
    if isinstance(t, (T.Gen2, T.Gen3, T.InvGen3)):
        return t
    if isinstance(t, T.LWhisk):
        return T.RWhisk(_op(t.body, c), _op(t.g, c))
    if isinstance(t, T.RWhisk):
        return T.LWhisk(_op(t.f, c), _op(t.body, c))
    if isinstance(t, T.VComp):
        return T.VComp(_op(t.first, c), _op(t.then, c))
    if isinstance(t, T.Id3):
        return T.Id3(_op(t.c, c))
    if isinstance(t, T.Ichg):
        return T.InvIchg(_op(t.alpha, c), _op(t.beta, c))
    if isinstance(t, T.InvIchg):
        return T.Ichg(_op(t.alpha, c), _op(t.beta, c))
    if isinstance(t, T.LWhisk1):
        return T.RWhisk1(_op(t.body, c), _op(t.g, c))
    if isinstance(t, T.RWhisk1):
        return T.LWhisk1(_op(t.f, c), _op(t.body, c))
    if isinstance(t, T.LWhisk2):
        return T.LWhisk2(_op(t.c, c), _op(t.body, c))
    if isinstance(t, T.RWhisk2):
        return T.RWhisk2(_op(t.body, c), _op(t.c, c))
    if isinstance(t, T.VComp3):
        return T.VComp3(_op(t.first, c), _op(t.then, c))
    if isinstance(t, T.HComp3):
        return T.HComp3(_op(t.first, c), _op(t.then, c))
    raise TypeError(f"not a term: {t!r}")


def _co(t):
    if isinstance(t, (One, T.Id2, T.Gen2, T.Gen3, T.InvGen3)):
        return t
    if isinstance(t, T.LWhisk):
        return T.LWhisk(t.g, _co(t.body))
    if isinstance(t, T.RWhisk):
        return T.RWhisk(_co(t.body), t.f)
    if isinstance(t, T.VComp):
        return T.VComp(_co(t.then), _co(t.first))
    if isinstance(t, T.Id3):
        return T.Id3(_co(t.c))
    if isinstance(t, T.Ichg):
        return T.InvIchg(_co(t.beta), _co(t.alpha))
    if isinstance(t, T.InvIchg):
        return T.Ichg(_co(t.beta), _co(t.alpha))
    if isinstance(t, T.LWhisk1):
        return T.LWhisk1(t.g, _co(t.body))
    if isinstance(t, T.RWhisk1):
        return T.RWhisk1(_co(t.body), t.f)
    if isinstance(t, T.LWhisk2):
        return T.RWhisk2(_co(t.body), _co(t.c))
    if isinstance(t, T.RWhisk2):
        return T.LWhisk2(_co(t.c), _co(t.body))
    if isinstance(t, T.VComp3):
        return T.VComp3(_co(t.first), _co(t.then))
    if isinstance(t, T.HComp3):
        return T.HComp3(_co(t.then), _co(t.first))
    raise TypeError(f"not a term: {t!r}")


def dualize(c: Computad, d) -> Computad:
    d = Duality(d)
    if d is Duality.COOP:
        return dualize(dualize(c, Duality.OP), Duality.CO)
    if d is Duality.OP:
        one = {n: (t, s) for n, (s, t) in c.one_gens.items()}
        two = {n: (_op(f, c), _op(g, c)) for n, (f, g) in c.two_gens.items()}
    else:
        one = dict(c.one_gens)
        two = {n: (g, f) for n, (f, g) in c.two_gens.items()}
    tr = (lambda t: _op(t, c)) if d is Duality.OP else _co
    three = {n: (tr(a), tr(b), inv) for n, (a, b, inv) in c.three_gens.items()}
    rels = tuple((n, tr(l), tr(r)) for n, l, r in c.relations)
    return validate(Computad(tuple(c.objects), one, two, three, rels))
