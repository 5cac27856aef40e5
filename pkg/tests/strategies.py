"""Hypothesis strategies for well-typed cells and small presentations."""

from hypothesis import strategies as st

from grayadj.presentation import (Computad, Duality, dual_term, dualize,
                                   validate)
from grayadj.terms import (Gen2, Gen3, Ichg, Id2, Id3, InvGen3, InvIchg,
                           LWhisk, LWhisk1, LWhisk2, One, RWhisk, RWhisk1,
                           RWhisk2, VComp, VComp3, boundary1, boundary2,
                           boundary3)


def end(f, c):
    return boundary1(f, c)[1]


def slice_(f, i, j, c):
    """The factor ``path[i:j]`` of ``f`` as a 1-cell with its own base."""
    return One(end(One(f.base, f.path[j:]), c), f.path[i:j])


@st.composite
def paths(draw, c, base=None, max_len=3):
    base = draw(st.sampled_from(sorted(c.objects))) if base is None else base
    here, out = base, []
    for _ in range(draw(st.integers(0, max_len))):
        nxt = sorted(n for n, (s, _) in c.one_gens.items() if s == here)
        if not nxt:
            break
        g = draw(st.sampled_from(nxt))
        out.append(g)
        here = c.one_gens[g][1]
    return One(base, tuple(reversed(out)))


def _occurrences(f, c):
    p, out = f.path, []
    for name, (src, _) in sorted(c.two_gens.items()):
        n = len(src.path)
        for i in range(len(p) - n + 1):
            if p[i:i + n] == src.path \
                    and end(One(f.base, p[i + n:]), c) == src.base:
                out.append((i, i + n, name))
    return out


def _wrap(draw, body, f, i, j, c, spare=True):
    left = One(end(One(f.base, f.path[i:]), c), f.path[:i])
    right = One(f.base, f.path[j:])
    if right.path or (spare and draw(st.integers(0, 9)) == 0):
        body = RWhisk(body, right)
    if left.path or (spare and draw(st.integers(0, 9)) == 0):
        body = LWhisk(left, body)
    return body


@st.composite
def two_cells(draw, c, src=None, size=8):
    """A well-typed 2-cell term of at most ``size`` nodes."""
    if src is None:
        src = draw(paths(c))
    return _two(draw, c, src, size)


def _two(draw, c, f, n):
    choices = ["id"]
    occ = _occurrences(f, c)
    if occ and n >= 3:
        choices.append("layer")
    elif occ and n >= 1:
        choices += [o for o in ("layer",)
                    if any(not f.path[:i] and not f.path[j:]
                           for i, j, _ in occ)]
    if n >= 3:
        choices.append("vcomp")
    if n >= 2 and f.path:
        choices.append("whisker")
    kind = draw(st.sampled_from(choices))
    if kind == "id":
        return Id2(f)
    if kind == "layer":
        if n < 3:
            occ = [o for o in occ if not f.path[:o[0]] and not f.path[o[1]:]]
        i, j, name = draw(st.sampled_from(occ))
        return _wrap(draw, Gen2(name), f, i, j, c, spare=n >= 3)
    if kind == "vcomp":
        k = draw(st.integers(1, n - 2))
        a = _two(draw, c, f, k)
        b = _two(draw, c, boundary2(a, c)[1], n - 1 - k)
        return VComp(a, b)
    i = draw(st.integers(0, len(f.path)))
    j = draw(st.integers(i, len(f.path)))
    if i == 0 and j == len(f.path):
        return _two(draw, c, f, n - 1)
    inner = slice_(f, i, j, c)
    used = (1 if f.path[:i] else 0) + (1 if f.path[j:] else 0)
    if n - used < 1:
        return Id2(f)
    body = _two(draw, c, inner, n - used)
    if f.path[j:]:
        body = RWhisk(body, One(f.base, f.path[j:]))
    if f.path[:i]:
        body = LWhisk(One(end(One(f.base, f.path[i:]), c), f.path[:i]), body)
    return body


def term_size(t):
    if isinstance(t, (LWhisk, LWhisk1)):
        return 1 + term_size(t.body)
    if isinstance(t, (RWhisk, RWhisk1)):
        return 1 + term_size(t.body)
    if isinstance(t, (VComp, VComp3)):
        return 1 + term_size(t.first) + term_size(t.then)
    if isinstance(t, (LWhisk2, RWhisk2)):
        return 1 + term_size(t.c) + term_size(t.body)
    if isinstance(t, (Ichg, InvIchg)):
        return 1 + term_size(t.beta) + term_size(t.alpha)
    if isinstance(t, Id3):
        return 1 + term_size(t.c)
    return 1


@st.composite
def scrambled(draw, t, c):
    """A term equal to ``t`` by the strict 2-cell laws, written
    differently."""
    if isinstance(t, VComp):
        a = draw(scrambled(t.first, c))
        b = draw(scrambled(t.then, c))
        if isinstance(b, VComp) and draw(st.booleans()):
            return VComp(VComp(a, b.first), b.then)
        return VComp(a, b)
    if isinstance(t, LWhisk):
        body = draw(scrambled(t.body, c))
        if isinstance(body, VComp) and draw(st.booleans()):
            return VComp(LWhisk(t.g, body.first), LWhisk(t.g, body.then))
        if len(t.g.path) > 1 and draw(st.booleans()):
            k = draw(st.integers(1, len(t.g.path) - 1))
            inner = One(t.g.base, t.g.path[k:])
            outer = One(end(inner, c), t.g.path[:k])
            return LWhisk(outer, LWhisk(inner, body))
        return LWhisk(t.g, body)
    if isinstance(t, RWhisk):
        body = draw(scrambled(t.body, c))
        if isinstance(body, LWhisk) and draw(st.booleans()):
            return LWhisk(body.g, RWhisk(body.body, t.f))
        return RWhisk(body, t.f)
    src, tgt = boundary2(t, c)
    pick = draw(st.integers(0, 5))
    if pick == 0:
        return VComp(Id2(src), t)
    if pick == 1:
        return VComp(t, Id2(tgt))
    if pick == 2:
        return LWhisk(One(end(src, c)), t)
    return t


@st.composite
def three_cells(draw, c):
    """A random 3-cell: a whiskered generator or interchanger, padded with
    2-cells on either side and possibly composed with its own inverse."""
    kind = draw(st.sampled_from(["gen", "ichg"] if c.three_gens else
                                ["ichg"]))
    if kind == "gen":
        name = draw(st.sampled_from(sorted(c.three_gens)))
        core = Gen3(name)
        if c.three_gens[name][2] and draw(st.booleans()):
            core = InvGen3(name)
        src, _ = boundary2(c.three_gens[name][0], c)
        left = draw(paths(c, end(src, c), 1))
        right_base = draw(st.sampled_from(sorted(
            o for o in c.objects
            if any(end(p, c) == src.base for p in _short_paths(c, o)))))
        right = draw(st.sampled_from(
            [p for p in _short_paths(c, right_base) if end(p, c) == src.base]))
        if left.path:
            core = LWhisk1(left, core)
        if right.path:
            core = RWhisk1(core, right)
    else:
        f = draw(paths(c, max_len=2))
        alpha = draw(two_cells(c, f, 3))
        g = draw(paths(c, end(f, c), 2))
        beta = draw(two_cells(c, g, 3))
        core = Ichg(beta, alpha) if draw(st.booleans()) else InvIchg(beta,
                                                                     alpha)
    s, t = boundary3(core, c)
    if draw(st.booleans()):
        # a 2-cell ending where the core starts, drawn in the co dual
        co = dualize(c, Duality.CO)
        pre = dual_term(draw(two_cells(co, boundary2(s, c)[0], 3)), co,
                        Duality.CO)
        core = LWhisk2(pre, core)
    if draw(st.booleans()):
        post = draw(two_cells(c, boundary2(t, c)[1], 3))
        core = RWhisk2(core, post)
    if draw(st.integers(0, 3)) == 0:
        core = VComp3(core, Id3(boundary3(core, c)[1]))
    return core


def _short_paths(c, base, max_len=1):
    out = [One(base)]
    for n, (s, _) in sorted(c.one_gens.items()):
        if s == base:
            out.append(One(base, (n,)))
    return out


@st.composite
def presentations(draw):
    """Small random valid computads with 3-generators and relations."""
    objects = tuple(f"O{i}" for i in range(draw(st.integers(1, 3))))
    c = Computad(objects)
    for i in range(draw(st.integers(0, 3))):
        c.one_gens[f"f{i}"] = (draw(st.sampled_from(objects)),
                               draw(st.sampled_from(objects)))
    for i in range(draw(st.integers(0, 3))):
        src = draw(paths(c, max_len=2))
        tgts = [p for p in (draw(paths(c, src.base, 2)) for _ in range(4))
                if end(p, c) == end(src, c)]
        tgt = tgts[0] if tgts else src
        c.two_gens[f"a{i}"] = (src, tgt)
    # parallel pairs give room for 3-generators between generators
    for name in sorted(c.two_gens):
        if draw(st.booleans()):
            c.two_gens[name + "p"] = c.two_gens[name]
            inv = draw(st.booleans())
            c.three_gens["m" + name] = (Gen2(name), Gen2(name + "p"), inv)
    rels = []
    for name, (a, b, inv) in sorted(c.three_gens.items()):
        if inv and draw(st.booleans()):
            rels.append((f"r{name}", VComp3(Gen3(name), InvGen3(name)),
                         Id3(a)))
    c.relations = tuple(rels)
    return validate(c)
