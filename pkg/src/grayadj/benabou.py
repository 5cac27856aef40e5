"""Pseudoadjunctions versus absolute left pseudoextensions.

The forward direction turns pseudoadjunction data ``(F, U, eta, eps, s, t)``
into the universal-property data of ``eta`` (the maps ``sharp``, ``mu`` and
``lift``); the backward direction rebuilds the adjunction from such data and
a witness that ``F`` preserves the extension.  Every 3-cell equality used on
the way is backed by an :class:`~grayadj.eq3.EqualityCertificate`.
"""

from __future__ import annotations

import dataclasses
from dataclasses import dataclass, field
from typing import Callable

from .eq3 import (EqualityCertificate, check_certificate, evaluate,
                  prove_eq3, strict_equal, to_term)
from .normal2 import BoundaryMismatch, eq2_unchecked, normalize2
from .presentation import Computad, Duality, dual_term, dualize, render_term
from .terms import (Ichg, Id2, Id3, InvIchg, LWhisk, LWhisk1, LWhisk2,
                    One, RWhisk, RWhisk1, RWhisk2, TypingError, VComp, VComp3,
                    boundary2, boundary3, vcomp3)


class ExtensionError(ValueError):
    pass


PASS, FAIL, UNKNOWN = "pass", "fail", "unknown"


def invert3(t, c):
    """Formal inverse of an invertible 3-cell term."""
    return to_term(evaluate(t, c).inverse(c), c)


# ---------------------------------------------------------------- data


@dataclass
class PseudoadjunctionData:
    F: One
    U: One
    eta: object
    eps: object
    s: object
    t: object
    context: Computad
    s_inv: object = None
    t_inv: object = None

    def __post_init__(self):
        if self.s_inv is None:
            self.s_inv = invert3(self.s, self.context)
        if self.t_inv is None:
            self.t_inv = invert3(self.t, self.context)

    @property
    def X(self):
        return self.F.base

    @property
    def A(self):
        return self.context.end(self.F)

    def rebased(self, c):
        return dataclasses.replace(self, context=c)


def from_presentation(c, F="F", U="U", eta="eta", eps="eps", s="s", t="t"):
    """Data read off a presentation by generator name."""
    from .terms import Gen2, Gen3, InvGen3

    f_src, _ = c.one_gens[F]
    u_src, _ = c.one_gens[U]
    return PseudoadjunctionData(One(f_src, (F,)), One(u_src, (U,)),
                                Gen2(eta), Gen2(eps), Gen3(s), Gen3(t), c,
                                InvGen3(s), InvGen3(t))


@dataclass
class PseudoextensionData:
    """The universal property of ``eta : H => L . J`` as realized maps.

    ``sharp(K, f)`` is a 2-cell ``L => K``; ``mu(K, f)`` returns a 3-cell
    ``eta ; (sharp(K, f) > J) -> f`` together with its inverse;
    ``lift(K, f, k, omega)`` is a 3-cell ``k -> sharp(K, f)``.
    """

    J: One
    H: One
    L: One
    eta: object
    sharp: Callable
    mu: Callable
    lift: Callable
    context: Computad


@dataclass
class PreservationWitness:
    G: One
    extension: PseudoextensionData


# ---------------------------------------------------------------- reports


@dataclass
class Check:
    name: str
    verdict: str
    certificate: EqualityCertificate | None = None
    detail: str = ""
    derived: bool = False

    def to_json(self):
        out = {"name": self.name, "verdict": self.verdict}
        if self.certificate is not None:
            out["certificate"] = self.certificate.to_json()
        if self.detail:
            out["detail"] = self.detail
        if self.derived:
            out["derived_by_uniqueness"] = True
        return out


@dataclass
class CoherenceReport:
    checks: list = field(default_factory=list)
    derived_relations: list = field(default_factory=list)

    @property
    def verdict(self):
        verdicts = {ch.verdict for ch in self.checks}
        if FAIL in verdicts:
            return FAIL
        if UNKNOWN in verdicts:
            return UNKNOWN
        return PASS

    @property
    def ok(self):
        return self.verdict == PASS

    def check(self, name) -> Check:
        for ch in self.checks:
            if ch.name == name:
                return ch
        raise KeyError(name)

    def verdicts(self):
        return {ch.name: ch.verdict for ch in self.checks}

    def to_json(self):
        return {"verdict": self.verdict,
                "checks": [ch.to_json() for ch in self.checks],
                "derived_relations": [
                    {"name": n, "lhs": render_term(a), "rhs": render_term(b)}
                    for n, a, b in self.derived_relations]}

    def derived_fragment(self):
        """Derived relations in presentation syntax."""
        lines = []
        for name, lhs, rhs in self.derived_relations:
            lines.append("# derived-by-uniqueness")
            lines.append(f"relation {name} : {render_term(lhs)} == "
                         f"{render_term(rhs)}")
        return "\n".join(lines) + ("\n" if lines else "")


def certify(name, lhs, rhs, c, budget=None, derived=False):
    """A check comparing two parallel 3-cells with the bounded prover."""
    try:
        cert = prove_eq3(lhs, rhs, c, budget)
    except (BoundaryMismatch, TypingError) as e:
        return Check(name, FAIL, detail=str(e))
    if cert is None:
        return Check(name, UNKNOWN, detail="search budget exhausted")
    if not check_certificate(cert, c):
        return Check(name, FAIL, cert, "certificate rejected")
    return Check(name, PASS, cert, derived=derived)


# ---------------------------------------------------------------- pastes


def swallowtail_pastes(d):
    """The eta-triangle and eps-triangle pastes of the data."""
    F, U, eta, eps = d.F, d.U, d.eta, d.eps
    sw1 = vcomp3(LWhisk2(eta, LWhisk1(U, d.s)),
                 RWhisk2(Ichg(eta, eta), LWhisk(U, RWhisk(eps, F))),
                 LWhisk2(eta, RWhisk1(d.t, F)))
    sw2 = vcomp3(RWhisk2(RWhisk1(d.s, U), eps),
                 LWhisk2(LWhisk(F, RWhisk(eta, U)), Ichg(eps, eps)),
                 RWhisk2(LWhisk1(F, d.t), eps))
    return (sw1, Id3(eta)), (sw2, Id3(eps))


def _expected_boundaries(d):
    F, U, X, A = d.F, d.U, d.X, d.A
    s_tgt = VComp(LWhisk(F, d.eta), RWhisk(d.eps, F))
    t_src = VComp(RWhisk(d.eta, U), LWhisk(U, d.eps))
    return [
        ("eta", 2, d.eta, (One(X), U.after(F))),
        ("eps", 2, d.eps, (F.after(U), One(A))),
        ("s", 3, d.s, (Id2(F), s_tgt)),
        ("s_inv", 3, d.s_inv, (s_tgt, Id2(F))),
        ("t", 3, d.t, (t_src, Id2(U))),
        ("t_inv", 3, d.t_inv, (Id2(U), t_src)),
    ]


def _boundary_check(name, dimension, term, want, c):
    try:
        if dimension == 2:
            got = boundary2(term, c)
            ok = got == want
        else:
            got = boundary3(term, c)
            ok = all(eq2_unchecked(g, w, c) for g, w in zip(got, want))
    except (TypingError, KeyError) as e:
        return Check(f"boundary-{name}", FAIL, detail=f"{name}: {e}")
    if not ok:
        return Check(f"boundary-{name}", FAIL,
                     detail=f"{name} has the wrong boundary")
    return Check(f"boundary-{name}", PASS)


def _inverse_checks(d):
    c, out = d.context, []
    for name, fwd, inv in (("s", d.s, d.s_inv), ("t", d.t, d.t_inv)):
        src, tgt = boundary3(fwd, c)
        ok = (strict_equal(vcomp3(fwd, inv), Id3(src), c)
              and strict_equal(vcomp3(inv, fwd), Id3(tgt), c))
        cert = EqualityCertificate(vcomp3(fwd, inv), Id3(src)) if ok else None
        out.append(Check(f"inverse-{name}", PASS if ok else FAIL, cert))
    return out


def check_pseudoadjunction(d, budget=None, swallowtails=(True, True)):
    """Boundary, invertibility and swallowtail checks for ``d``."""
    c = d.context
    report = CoherenceReport()
    for name, dimension, term, want in _expected_boundaries(d):
        report.checks.append(_boundary_check(name, dimension, term, want, c))
    if report.verdict == FAIL:
        return report
    report.checks.extend(_inverse_checks(d))
    pastes = swallowtail_pastes(d)
    for i, (lhs, rhs) in enumerate(pastes):
        if swallowtails[i]:
            report.checks.append(certify(f"swallowtail-{i + 1}", lhs, rhs, c,
                                         budget))
    return report


# ---------------------------------------------------------------- forward


def _require(cond, what):
    if not cond:
        raise BoundaryMismatch(what)


def _check_g(d, G, K, g):
    c = d.context
    _require(boundary2(g, c) == (G, K.after(d.F)),
             "g must be a 2-cell G => K . F")


def sharp_from_adjunction(d, G, K, g):
    """``(g > U) ; (K < eps)``, a 2-cell ``G . U => K``."""
    _check_g(d, G, K, g)
    return VComp(RWhisk(g, d.U), LWhisk(K, d.eps))


def mu_from_adjunction(d, G, K, g):
    """The 3-cell ``(G < eta) ; (sharp > F) -> g`` and its inverse."""
    _check_g(d, G, K, g)
    tail = LWhisk(K, RWhisk(d.eps, d.F))
    mu = VComp3(RWhisk2(InvIchg(g, d.eta), tail),
                LWhisk2(g, LWhisk1(K, d.s_inv)))
    mu_inv = VComp3(LWhisk2(g, LWhisk1(K, d.s)),
                    RWhisk2(Ichg(g, d.eta), tail))
    return mu, mu_inv


def lift_from_adjunction(d, G, K, g, k, omega):
    """The 3-cell ``k -> sharp(g)`` determined by ``omega``."""
    c = d.context
    _check_g(d, G, K, g)
    _require(boundary2(k, c) == (G.after(d.U), K),
             "k must be a 2-cell G . U => K")
    src, tgt = boundary3(omega, c)
    _require(eq2_unchecked(src, VComp(LWhisk(G, d.eta), RWhisk(k, d.F)), c)
             and eq2_unchecked(tgt, g, c),
             "omega must be a 3-cell (G < eta) ; (k > F) -> g")
    return vcomp3(RWhisk2(LWhisk1(G, d.t_inv), k),
                  LWhisk2(LWhisk(G, RWhisk(d.eta, d.U)), InvIchg(k, d.eps)),
                  RWhisk2(RWhisk1(omega, d.U), LWhisk(K, d.eps)))


def extension_equation(d, G, K, g, k, omega):
    """Both sides of the defining equation of the lift."""
    lifted = lift_from_adjunction(d, G, K, g, k, omega)
    mu, _ = mu_from_adjunction(d, G, K, g)
    lhs = VComp3(LWhisk2(LWhisk(G, d.eta), RWhisk1(lifted, d.F)), mu)
    return lhs, omega


def verify_extension_equation(d, G, K, g, k, omega, budget=None):
    lhs, rhs = extension_equation(d, G, K, g, k, omega)
    return CoherenceReport([certify("extension-equation", lhs, rhs,
                                    d.context, budget)])


def verify_uniqueness_instance(d, G, K, g, budget=None):
    """Lifting ``mu(g)`` against ``sharp(g)`` gives the identity."""
    k = sharp_from_adjunction(d, G, K, g)
    mu, _ = mu_from_adjunction(d, G, K, g)
    lifted = lift_from_adjunction(d, G, K, g, k, mu)
    return CoherenceReport([certify("uniqueness", lifted, Id3(k), d.context,
                                    budget)])


def verify_mu_inverses(d, G, K, g):
    c = d.context
    mu, mu_inv = mu_from_adjunction(d, G, K, g)
    src, tgt = boundary3(mu, c)
    out = CoherenceReport()
    for name, a, b in (("mu-then-inverse", vcomp3(mu, mu_inv), Id3(src)),
                       ("inverse-then-mu", vcomp3(mu_inv, mu), Id3(tgt))):
        ok = strict_equal(a, b, c)
        out.checks.append(Check(name, PASS if ok else FAIL,
                                EqualityCertificate(a, b) if ok else None))
    return out


def _fresh(c, base):
    name, i = base, 1
    while c.kind_of(name) is not None:
        name, i = f"{base}{i}", i + 1
    return name


def adjoin_generic(d):
    """Adjoin a fresh object and generic ``G, K, g, k, omega``.

    Returns the rebased data and the generic terms as a dict."""
    from .terms import Gen2, Gen3

    c = d.context
    B = _fresh(c, "B")
    names = {n: _fresh(c, n) for n in ("G", "K", "g", "k", "omega")}
    G, K = One(d.X, (names["G"],)), One(d.A, (names["K"],))
    c2 = c.extend(objects=[B],
                  one_gens=[(names["G"], (d.X, B)), (names["K"], (d.A, B))])
    c2 = c2.extend(two_gens=[(names["g"], (G, K.after(d.F))),
                             (names["k"], (G.after(d.U), K))])
    g, k = Gen2(names["g"]), Gen2(names["k"])
    omega_src = VComp(LWhisk(G, d.eta), RWhisk(k, d.F))
    c2 = c2.extend(three_gens=[(names["omega"], (omega_src, g, False))])
    return d.rebased(c2), {"G": G, "K": K, "g": g, "k": k,
                           "omega": Gen3(names["omega"])}


def extension_from_adjunction(d, G=None):
    """Universal-property data of ``G < eta`` (of ``eta`` when ``G`` is
    omitted)."""
    G = One(d.X) if G is None else G

    return PseudoextensionData(
        J=d.F, H=G, L=G.after(d.U),
        eta=LWhisk(G, d.eta) if G.path else d.eta,
        sharp=lambda K, f: sharp_from_adjunction(d, G, K, f),
        mu=lambda K, f: mu_from_adjunction(d, G, K, f),
        lift=lambda K, f, k, omega: lift_from_adjunction(d, G, K, f, k,
                                                         omega),
        context=d.context)


def preservation_witness(d, G):
    return PreservationWitness(G, extension_from_adjunction(d, G))


# ---------------------------------------------------------------- backward


def rebuild_adjunction(e, w):
    """The data ``(F, U, eta, eps, s, t)`` read off ``e`` and ``w``,
    unchecked."""
    if w is None or w.G != e.J:
        raise ExtensionError("preservation by F required")
    if e.H.path:
        raise ExtensionError("the extension must be along an identity")
    c = e.context
    F, U, eta = e.J, e.L, e.eta
    A = c.end(F)
    eps = w.extension.sharp(One(A), Id2(F))
    s_inv, s = w.extension.mu(One(A), Id2(F))
    k = VComp(RWhisk(eta, U), LWhisk(U, eps))
    omega = VComp3(RWhisk2(InvIchg(eta, eta), LWhisk(U, RWhisk(eps, F))),
                   LWhisk2(eta, LWhisk1(U, s_inv)))
    t = e.lift(U, eta, k, omega)
    eta_sharp = e.sharp(U, eta)
    if normalize2(eta_sharp, c) != normalize2(Id2(U), c):
        # the lift lands in sharp(eta); compose with the comparison 3-cell
        # obtained by lifting the identity
        unit = e.lift(U, eta, Id2(U), Id3(eta))
        t = VComp3(t, invert3(unit, c))
    return PseudoadjunctionData(F, U, eta, eps, s, t, c, s_inv)


def adjunction_from_extension(e, w, budget=None, context=None):
    """Rebuild ``(F, U, eta, eps, s, t)`` from extension data.

    ``w`` must witness preservation of the extension by ``F``.  The second
    swallowtail is obtained from the uniqueness clause of ``w``: the two
    candidate 3-cells are shown to have equal ``F``-whiskered pastes and
    their equality is recorded as a derived relation.  ``context`` is the
    computad the certificates are sought in (defaults to ``e.context``).
    """
    d = rebuild_adjunction(e, w)
    search = context or e.context
    F, eta, A = d.F, d.eta, d.A

    report = check_pseudoadjunction(dataclasses.replace(d, context=search),
                                    budget, swallowtails=(True, False))
    if report.verdict == FAIL:
        return d, report
    alpha, beta = swallowtail_candidates(d)
    mu_w, _ = w.extension.mu(One(A), Id2(F))

    def paste(x):
        return VComp3(LWhisk2(LWhisk(F, eta), RWhisk1(x, F)), mu_w)

    check = certify("swallowtail-2", paste(alpha), paste(beta), search,
                    budget, derived=True)
    report.checks.append(check)
    if check.verdict == PASS:
        report.derived_relations.append(("swallowtail2_derived", alpha, beta))
    return d, report


def roundtrip(d, budget=None, without="swallowtail2"):
    """Adjunction to extension to adjunction.

    The rebuilt data is checked in ``d.context`` minus the relation named
    ``without``, so the second swallowtail has to come from uniqueness.
    Returns the rebuilt data and a report that also compares ``eps``,
    ``s_inv`` and ``t`` with the originals.
    """
    c = d.context
    search = c.without_relation(without) if without else c
    e = extension_from_adjunction(d)
    w = preservation_witness(d, d.F)
    d2, report = adjunction_from_extension(e, w, budget, context=search)
    same = normalize2(d2.eps, c) == normalize2(d.eps, c)
    report.checks.append(Check("roundtrip-eps", PASS if same else FAIL,
                               detail="" if same else "eps differs"))
    report.checks.append(certify("roundtrip-s_inv", d2.s_inv, d.s_inv, c,
                                 budget))
    report.checks.append(certify("roundtrip-t", d2.t, d.t, c, budget))
    return d2, report


def swallowtail_candidates(d):
    """Two 3-cells whose equality is the eps-triangle identity."""
    F, U, eta, eps = d.F, d.U, d.eta, d.eps
    alpha = RWhisk2(LWhisk1(F, d.t), eps)
    beta = VComp3(LWhisk2(LWhisk(F, RWhisk(eta, U)), InvIchg(eps, eps)),
                  RWhisk2(RWhisk1(d.s_inv, U), eps))
    return alpha, beta


# ---------------------------------------------------------------- duality


def dualize_data(d, duality):
    """Transport pseudoadjunction data into a dual presentation.

    Under op and co the roles of ``F`` and ``U`` swap; under co the unit and
    counit swap as well.
    """
    duality = Duality(duality)
    if duality is Duality.COOP:
        return dualize_data(dualize_data(d, Duality.OP), Duality.CO)
    c = d.context
    c2 = dualize(c, duality)

    def tr(x):
        return dual_term(x, c, duality)

    if duality is Duality.OP:
        eta, eps = tr(d.eta), tr(d.eps)
    else:
        eta, eps = tr(d.eps), tr(d.eta)
    return PseudoadjunctionData(tr(d.U), tr(d.F), eta, eps, tr(d.t_inv),
                                tr(d.s_inv), c2, tr(d.t), tr(d.s))


__all__ = ["Check", "CoherenceReport", "ExtensionError",
           "PseudoadjunctionData", "PseudoextensionData",
           "PreservationWitness", "adjoin_generic",
           "adjunction_from_extension", "check_pseudoadjunction",
           "dualize_data", "extension_equation", "extension_from_adjunction",
           "from_presentation", "invert3", "lift_from_adjunction",
           "mu_from_adjunction", "preservation_witness", "rebuild_adjunction", "roundtrip",
           "sharp_from_adjunction", "swallowtail_candidates",
           "swallowtail_pastes", "verify_extension_equation",
           "verify_mu_inverses", "verify_uniqueness_instance"]
