"""Finite posets as a locally posetal Gray-category.

Objects are finite posets, 1-cells monotone maps, 2-cells the pointwise
order and every 3-cell an identity.  In this model the pseudo-notions
collapse to their ordinary order-theoretic versions, which makes brute
force a usable oracle.
"""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Callable

import numpy as np


class PosetError(ValueError):
    pass


# ---------------------------------------------------------------- posets


@dataclass(frozen=True, eq=False)
class FinPoset:
    elements: tuple
    leq: np.ndarray
    name: str = ""

    def __post_init__(self):
        n = len(self.elements)
        leq = np.asarray(self.leq, dtype=bool).reshape(n, n)
        object.__setattr__(self, "leq", leq)
        if len(set(self.elements)) != n:
            raise PosetError("duplicate elements")
        if n and not leq.diagonal().all():
            raise PosetError("order is not reflexive")
        if (leq & leq.T & ~np.eye(n, dtype=bool)).any():
            raise PosetError("order is not antisymmetric")
        if n and ((leq.astype(int) @ leq.astype(int) > 0) & ~leq).any():
            raise PosetError("order is not transitive")

    def __len__(self):
        return len(self.elements)

    def __eq__(self, other):
        return (isinstance(other, FinPoset) and self.elements == other.elements
                and np.array_equal(self.leq, other.leq))

    def __hash__(self):
        return hash((self.elements, self.leq.tobytes()))

    def index(self, x):
        return self.elements.index(x)

    def covers(self):
        n, leq = len(self), self.leq
        out = []
        for i, j in itertools.permutations(range(n), 2):
            if leq[i, j] and not any(leq[i, k] and leq[k, j]
                                     for k in range(n) if k not in (i, j)):
                out.append((self.elements[i], self.elements[j]))
        return out

    @classmethod
    def from_covers(cls, elements, covers=(), name=""):
        elements = tuple(elements)
        n = len(elements)
        leq = np.eye(n, dtype=bool)
        for a, b in covers:
            leq[elements.index(a), elements.index(b)] = True
        return cls(elements, _closure(leq), name)

    @classmethod
    def chain(cls, n):
        return cls.from_covers(range(n), [(i, i + 1) for i in range(n - 1)],
                               f"chain{n}")

    @classmethod
    def antichain(cls, n):
        return cls.from_covers(range(n), (), f"antichain{n}")


def _closure(leq):
    leq = leq.copy()
    for k in range(len(leq)):
        leq |= leq[:, k:k + 1] & leq[k:k + 1, :]
    return leq


@dataclass(frozen=True, eq=False)
class MonotoneMap:
    dom: FinPoset
    cod: FinPoset
    table: tuple

    def __post_init__(self):
        table = tuple(int(v) for v in self.table)
        object.__setattr__(self, "table", table)
        if len(table) != len(self.dom):
            raise PosetError("table does not cover the domain")
        if any(not 0 <= v < len(self.cod) for v in table):
            raise PosetError("table leaves the codomain")
        t = np.array(table, dtype=int)
        if len(t) and (self.dom.leq & ~self.cod.leq[np.ix_(t, t)]).any():
            raise PosetError("map is not monotone")

    def __eq__(self, other):
        return (isinstance(other, MonotoneMap) and self.table == other.table
                and self.dom == other.dom and self.cod == other.cod)

    def __hash__(self):
        return hash(self.table)

    def __call__(self, i):
        return self.table[i]

    def then(self, other):
        """``other . self``."""
        if self.cod != other.dom:
            raise PosetError("maps are not composable")
        return MonotoneMap(self.dom, other.cod,
                           tuple(other.table[v] for v in self.table))

    def le(self, other):
        """Pointwise order ``self <= other``."""
        if (self.dom, self.cod) != (other.dom, other.cod):
            raise PosetError("maps are not parallel")
        return all(self.cod.leq[a, b] for a, b in zip(self.table, other.table))

    @classmethod
    def identity(cls, p):
        return cls(p, p, tuple(range(len(p))))

    @classmethod
    def const(cls, dom, cod, v):
        return cls(dom, cod, (v,) * len(dom))


def monotone_tables(dom, cod):
    """All monotone maps as an integer array of shape (count, |dom|)."""
    return _tables(dom.leq.tobytes(), len(dom), cod.leq.tobytes(), len(cod))


@lru_cache(maxsize=None)
def _tables(dom_key, n, cod_key, m):
    if n == 0:
        return np.zeros((1, 0), dtype=int)
    if m == 0:
        return np.zeros((0, n), dtype=int)
    dom = np.frombuffer(dom_key, dtype=bool).reshape(n, n)
    cod = np.frombuffer(cod_key, dtype=bool).reshape(m, m)
    grid = np.indices((m,) * n).reshape(n, -1).T
    ii, jj = np.nonzero(dom)
    ok = cod[grid[:, ii], grid[:, jj]].all(axis=1)
    return grid[ok]


def monotone_maps(dom, cod):
    return [MonotoneMap(dom, cod, tuple(t)) for t in monotone_tables(dom, cod)]


# ---------------------------------------------------------------- catalogs


def _canonical_key(leq):
    n = len(leq)
    best = None
    for perm in itertools.permutations(range(n)):
        p = list(perm)
        key = leq[np.ix_(p, p)].tobytes()
        if best is None or key < best:
            best = key
    return best


@lru_cache(maxsize=None)
def _posets_of_size(n):
    pairs = list(itertools.permutations(range(n), 2))
    seen, out = set(), []
    for bits in itertools.product((False, True), repeat=len(pairs)):
        leq = np.eye(n, dtype=bool)
        for (i, j), b in zip(pairs, bits):
            leq[i, j] = b
        if (leq & leq.T & ~np.eye(n, dtype=bool)).any():
            continue
        if not np.array_equal(_closure(leq), leq):
            continue
        key = _canonical_key(leq)
        if key in seen:
            continue
        seen.add(key)
        out.append(FinPoset(tuple(range(n)), leq, f"p{n}_{len(out)}"))
    return tuple(out)


def all_posets(max_size, min_size=0):
    """Posets up to isomorphism, smallest first."""
    return [p for n in range(min_size, max_size + 1)
            for p in _posets_of_size(n)]


def random_poset(n, rng):
    """A random labelled poset: the closure of a random DAG on ``n``
    points."""
    leq = np.eye(n, dtype=bool)
    p = rng.random()
    for i, j in itertools.combinations(range(n), 2):
        if rng.random() < p:
            leq[i, j] = True
    perm = list(range(n))
    rng.shuffle(perm)
    leq = _closure(leq)[np.ix_(perm, perm)]
    return FinPoset(tuple(range(n)), leq)


def parse_catalog(text):
    """Posets in the ``poset / elements / cover`` text format."""
    posets, cur = [], None

    def flush():
        if cur is not None:
            posets.append(FinPoset.from_covers(cur["elements"],
                                               cur["covers"], cur["name"]))

    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        word, _, rest = line.partition(" ")
        if word == "poset":
            flush()
            cur = {"name": rest.strip(), "elements": [], "covers": []}
        elif cur is None:
            raise PosetError(f"line {lineno}: expected 'poset <name>'")
        elif word == "elements":
            cur["elements"] = rest.split()
        elif word == "cover":
            a, lt, b = (rest.split() + ["", "", ""])[:3]
            if lt != "<" or a not in cur["elements"] \
                    or b not in cur["elements"]:
                raise PosetError(f"line {lineno}: expected 'cover a < b' "
                                 "over declared elements")
            cur["covers"].append((a, b))
        else:
            raise PosetError(f"line {lineno}: unknown keyword {word!r}")
    flush()
    return posets


def render_catalog(posets):
    out = []
    for i, p in enumerate(posets):
        out.append(f"poset {p.name or f'P{i}'}")
        out.append("elements " + " ".join(map(str, p.elements)))
        for a, b in p.covers():
            out.append(f"cover {a} < {b}")
    return "\n".join(out) + "\n"


# ---------------------------------------------------------------- adjunctions


def is_galois_connection(F, U):
    """``F(x) <= a`` iff ``x <= U(a)`` for all ``x``, ``a``."""
    if F.dom != U.cod or F.cod != U.dom:
        raise PosetError("F and U are not a pair X -> A, A -> X")
    X, A = F.dom, F.cod
    f, u = np.array(F.table, dtype=int), np.array(U.table, dtype=int)
    if not len(X) or not len(A):
        return True
    return bool(np.array_equal(A.leq[f][:, :], X.leq[:, u]))


def _least_among(H, L, Ks, J, leq):
    """``H <= L.J`` and ``L <= K`` for every ``K`` with ``H <= K.J``.

    ``H`` and ``L`` are tables, ``Ks`` a (count, |A|) array, ``J`` a table
    into the domain of the ``Ks``."""
    if leq.size == 0:
        return True
    if not leq[H, L[J]].all():
        return False
    if not len(Ks):
        return True
    below = leq[H[None, :], Ks[:, J]].all(axis=1)
    above = leq[L[None, :], Ks].all(axis=1)
    return bool((~below | above).all())


@dataclass
class ModelExtension:
    """A left extension in the model; ``sharp(K)`` is the unique 2-cell
    ``L <= K`` (``True``) or its absence."""

    L: MonotoneMap
    sharp: Callable = field(repr=False)


def left_extension_brute(J, H):
    """The least monotone ``L`` with ``H <= L . J``, if it exists."""
    if J.dom != H.dom:
        raise PosetError("J and H must share a domain")
    A, B = J.cod, H.cod
    Ks = monotone_tables(A, B)
    j, h = np.array(J.table, dtype=int), np.array(H.table, dtype=int)
    found = [k for k in Ks if _least_among(h, k, Ks, j, B.leq)]
    if not found:
        return None
    L = MonotoneMap(A, B, tuple(found[0]))

    def sharp(K):
        return L.le(K)

    return ModelExtension(L, sharp)


def is_absolute_left_extension_brute(J, H, L, codomains, check_unit=True):
    """Whether ``G . L`` is the least extension of ``G . H`` along ``J``
    for every monotone ``G`` out of ``H.cod`` into the given posets."""
    j, h, l = (np.array(m.table, dtype=int) for m in (J, H, L))
    B = H.cod
    if check_unit and len(B) and not B.leq[h, l[j]].all():
        return False
    for C in codomains:
        Gs = monotone_tables(B, C)
        Ks = monotone_tables(J.cod, C)
        for g in Gs:
            if not _least_among(g[h], g[l], Ks, j, C.leq):
                return False
    return True


def left_lifting_ok(F, U, G_tables, Ks, C_leq_X, leqA):
    """``F . G <= K`` whenever ``G <= U . K``, for each ``G`` and ``K``."""
    f, u = np.array(F.table, dtype=int), np.array(U.table, dtype=int)
    for g in G_tables:
        if len(g) and not C_leq_X[g, u[f[g]]].all():
            return False
        if not len(Ks):
            continue
        below = C_leq_X[g[None, :], u[Ks]].all(axis=1)
        above = leqA[f[g][None, :], Ks].all(axis=1)
        if not (~below | above).all():
            return False
    return True


# ---------------------------------------------------------------- the five conditions


STATEMENTS = ("1", "2", "3", "4", "5")


def statements(F, U, codomains):
    """Truth of the five equivalent conditions for the pair ``F, U``.

    (2) and (4) quantify over the supplied codomains together with ``X``
    and ``A``; (3) and (5) use preservation by ``F`` and by ``U`` only.
    """
    X, A = F.dom, F.cod
    ident = MonotoneMap.identity(X)
    tests = extend_codomains(codomains, X, A)
    s1 = is_galois_connection(F, U)
    base = is_absolute_left_extension_brute(F, ident, U, [X])
    s2 = base and is_absolute_left_extension_brute(F, ident, U, tests)
    s3 = base and _preserved_by(F, ident, U, F)
    lift_base = _lifting(F, U, [X], ident)
    s4 = lift_base and _lifting(F, U, tests, None)
    s5 = lift_base and _lifting(F, U, [A], U)
    return {"1": s1, "2": s2, "3": s3, "4": s4, "5": s5}


def extend_codomains(codomains, *extra):
    out = list(codomains)
    for p in extra:
        if p not in out:
            out.append(p)
    return out


def _preserved_by(J, H, L, G):
    g, h, l, j = (np.array(m.table, dtype=int) for m in (G, H, L, J))
    C = G.cod
    Ks = monotone_tables(J.cod, C)
    return _least_among(g[h], g[l], Ks, j, C.leq)


def _lifting(F, U, domains, only):
    """Left lifting of the identity through ``U`` with unit ``id <= U.F``,
    preserved by every monotone ``G : C -> X`` (or by ``only``)."""
    X, A = F.dom, F.cod
    for C in domains:
        if only is not None:
            Gs = np.array([only.table], dtype=int).reshape(1, len(C))
        else:
            Gs = monotone_tables(C, X)
        Ks = monotone_tables(C, A)
        if len(X) == 0:
            continue
        if not left_lifting_ok(F, U, Gs, Ks, X.leq, A.leq):
            return False
    return True


@dataclass
class ModelReport:
    pairs: int = 0
    agreements: dict = field(default_factory=dict)
    disagreements: list = field(default_factory=list)

    @property
    def ok(self):
        return not self.disagreements

    def add(self, X, A, F, U, st):
        self.pairs += 1
        key = "".join("1" if st[k] else "0" for k in STATEMENTS)
        self.agreements[key] = self.agreements.get(key, 0) + 1
        if len(set(st.values())) > 1:
            self.disagreements.append({
                "X": render_catalog([X]), "A": render_catalog([A]),
                "F": list(F.table), "U": list(U.table), "statements": st})

    def merge(self, other):
        self.pairs += other.pairs
        for k, v in other.agreements.items():
            self.agreements[k] = self.agreements.get(k, 0) + v
        self.disagreements.extend(other.disagreements)
        return self

    def to_json(self):
        return {"pairs": self.pairs, "ok": self.ok,
                "truth_patterns": dict(sorted(self.agreements.items())),
                "disagreements": self.disagreements}


def benabou_check_model(X, A, max_size=3, codomains=None):
    """Compare the five statements on every monotone pair ``X <-> A``."""
    codomains = all_posets(max_size) if codomains is None else codomains
    report = ModelReport()
    for f in monotone_tables(X, A):
        F = MonotoneMap(X, A, tuple(f))
        for u in monotone_tables(A, X):
            U = MonotoneMap(A, X, tuple(u))
            report.add(X, A, F, U, statements(F, U, codomains))
    return report


def right_adjoint(F):
    """The map ``a -> max {x : F(x) <= a}`` if it is defined everywhere."""
    X, A = F.dom, F.cod
    out = []
    for a in range(len(A)):
        below = [x for x in range(len(X)) if A.leq[F.table[x], a]]
        tops = [x for x in below if all(X.leq[y, x] for y in below)]
        if not tops:
            return None
        out.append(tops[0])
    try:
        return MonotoneMap(A, X, tuple(out))
    except PosetError:
        return None


def sample_pairs(n, size, seed):
    """``n`` seeded random instances ``(X, A, F, U)``; about half of them
    are adjoint pairs."""
    rng = random.Random(seed)
    out = []
    while len(out) < n:
        want_adjoint = rng.random() < 0.5
        while True:
            X, A = random_poset(size, rng), random_poset(size, rng)
            maps = [MonotoneMap(X, A, tuple(f)) for f in monotone_tables(X, A)]
            if not want_adjoint:
                us = monotone_tables(A, X)
                out.append((X, A, maps[rng.randrange(len(maps))],
                            MonotoneMap(A, X, tuple(us[rng.randrange(len(us))]))))
                break
            pairs = [(F, right_adjoint(F)) for F in maps]
            pairs = [p for p in pairs if p[1] is not None]
            if pairs:
                out.append((X, A) + pairs[rng.randrange(len(pairs))])
                break
    return out


def check_samples(n, size, seed, max_size=3):
    codomains = all_posets(max_size)
    report = ModelReport()
    for X, A, F, U in sample_pairs(n, size, seed):
        report.add(X, A, F, U, statements(F, U, codomains))
    return report


def check_exhaustive(max_size=3):
    report = ModelReport()
    posets = all_posets(max_size)
    for X in posets:
        for A in posets:
            report.merge(benabou_check_model(X, A, codomains=posets))
    return report


# ---------------------------------------------------------------- interpretation


@dataclass
class ModelInterpretation:
    """Generators of a computad sent to posets and monotone maps.

    2-generators are interpreted by the pointwise order, so the only
    condition is that each one's source lies below its target; 3-cells are
    identities and impose nothing.
    """

    computad: object
    objects: dict
    maps: dict

    def evaluate(self, f):
        from .terms import One

        assert isinstance(f, One)
        base = self.objects[f.base]
        out = MonotoneMap.identity(base)
        for name in reversed(f.path):
            out = out.then(self.maps[name])
        return out

    def errors(self):
        c, out = self.computad, []
        for name, (src, tgt) in c.one_gens.items():
            m = self.maps.get(name)
            if m is None:
                out.append(f"{name} is not interpreted")
            elif (m.dom, m.cod) != (self.objects[src], self.objects[tgt]):
                out.append(f"{name} has the wrong domain or codomain")
        if out:
            return out
        for name, (src, tgt) in c.two_gens.items():
            if not self.evaluate(src).le(self.evaluate(tgt)):
                out.append(f"2-cell {name} does not hold in the model")
        return out

    def valid(self):
        return not self.errors()


def interpret_pseudoadjunction(c, F, U, names=("F", "U")):
    """Interpret a presentation's ``F, U`` by monotone maps."""
    fs, us = c.one_gens[names[0]], c.one_gens[names[1]]
    objects = {fs[0]: F.dom, fs[1]: F.cod}
    if us != (fs[1], fs[0]):
        raise PosetError("U must go back from the codomain of F")
    return ModelInterpretation(c, objects, {names[0]: F, names[1]: U})


def adjunction_from_model_extension(F, extension, preserved):
    """Unit and counit recovered from a least extension ``U`` of the
    identity along ``F`` and its preservation by ``F``.

    Returns ``(U, unit_holds, counit_holds)``; the counit is the 2-cell
    obtained from the preserved extension for ``K = id``.
    """
    if preserved is None:
        raise PosetError("preservation by F required")
    U = extension.L
    X, A = F.dom, F.cod
    unit = MonotoneMap.identity(X).le(F.then(U))
    counit = preserved.sharp(MonotoneMap.identity(A))
    return U, unit, counit


def extension_preserved_by(F, extension):
    """``F . U`` as the extension of ``F`` along ``F``, when it is one."""
    FU = extension.L.then(F)
    Ks = monotone_tables(F.cod, F.cod)
    f = np.array(F.table, dtype=int)
    if not _least_among(f, np.array(FU.table, dtype=int), Ks, f, F.cod.leq):
        return None
    return ModelExtension(FU, FU.le)
