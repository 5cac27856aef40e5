import dataclasses
import json

import pytest
from hypothesis import given, settings, strategies as st

from grayadj.eq3 import (EqualityCertificate, RewriteStep, check_certificate,
                         evaluate, normalize3_strict, prove_eq3, strict_equal)
from grayadj.eq3.prover import SearchStats
from grayadj.normal2 import BoundaryMismatch, eq2_unchecked
from grayadj.presentation import load_presentation, parse_term
from grayadj.terms import (Gen2, Gen3, Ichg, Id2, Id3, InvGen3,
                           LWhisk, LWhisk1, LWhisk2, One, RWhisk, RWhisk1,
                           RWhisk2, VComp, VComp3, boundary3)

from strategies import three_cells

F = One("X", ("F",))

SQUARE = """
object O
object P
object Q
object R
object S
1cell e : O -> P
1cell f1 : P -> Q
1cell f2 : P -> Q
1cell f3 : P -> Q
1cell g1 : Q -> R
1cell g2 : Q -> R
1cell g3 : Q -> R
1cell h : R -> S
1cell hh : S -> S
1cell ee : O -> O
2cell a : f1 => f2
2cell ap : f1 => f2
2cell a2 : f2 => f3
2cell b : g1 => g2
2cell bp : g1 => g2
2cell b2 : g2 => g3
3cell inv m : a -> ap
3cell inv n : b -> bp
"""


@pytest.fixture(scope="module")
def square():
    return load_presentation(SQUARE)


def test_trivial_interchanger_is_strict_identity(psadj):
    t = Ichg(Gen2("eps"), Id2(F))
    src, _ = boundary3(t, psadj)
    assert normalize3_strict(t, psadj) == normalize3_strict(Id3(src), psadj)


def test_inverse_pair_cancels(psadj):
    t = VComp3(Gen3("s"), InvGen3("s"))
    assert strict_equal(t, Id3(Id2(F)), psadj)
    assert evaluate(normalize3_strict(t, psadj), psadj).moves == ()


def test_empty_certificate(psadj):
    cert = EqualityCertificate(Gen3("s"), Gen3("s"), ())
    assert check_certificate(cert, psadj)


def _swallowtail(psadj):
    lhs, rhs = psadj.relation("swallowtail1")[1:]
    return lhs, rhs


def test_one_step_relation_certificate(psadj):
    lhs, rhs = _swallowtail(psadj)
    cert = prove_eq3(lhs, rhs, psadj)
    assert len(cert.steps) == 1
    assert cert.steps[0].kind == "relation"
    assert cert.steps[0].params["relation"] == "swallowtail1"
    assert check_certificate(cert, psadj)


def test_misplaced_step_reports_its_index(adj):
    from grayadj.benabou import adjoin_generic, extension_equation

    d, gen = adjoin_generic(adj)
    lhs, rhs = extension_equation(d, *(gen[n] for n in
                                       ("G", "K", "g", "k", "omega")))
    cert = prove_eq3(lhs, rhs, d.context)
    assert cert is not None and len(cert.steps) >= 3
    steps = list(cert.steps)
    steps[2] = RewriteStep(999, "modification-nat-left",
                           {"side": "before", "outer": False}, "forward")
    bad = dataclasses.replace(cert, steps=tuple(steps))
    result = check_certificate(bad, d.context)
    assert not result and result.failed_step == 2
    assert result.reason


def test_wrong_end_fails_after_last_step(psadj):
    lhs, rhs = _swallowtail(psadj)
    cert = prove_eq3(lhs, rhs, psadj)
    truncated = dataclasses.replace(cert, steps=())
    result = check_certificate(truncated, psadj)
    assert not result and result.failed_step == 0


def test_certificate_json_round_trip(psadj):
    lhs, rhs = _swallowtail(psadj)
    cert = prove_eq3(lhs, rhs, psadj)
    text = json.dumps(cert.to_json(), sort_keys=True)
    back = EqualityCertificate.from_json(json.loads(text), psadj)
    assert check_certificate(back, psadj)
    assert back.steps == cert.steps


def test_non_parallel_is_an_error(psadj):
    with pytest.raises(BoundaryMismatch):
        prove_eq3(Gen3("s"), Id3(Id2(F)), psadj)


def test_missing_relation_gives_unknown(psadj):
    c = psadj.without_relation("swallowtail2")
    lhs, rhs = psadj.relation("swallowtail2")[1:]
    stats = SearchStats()
    assert prove_eq3(lhs, rhs, c, budget=500, stats=stats) is None
    assert stats.exhausted


def test_zero_budget(psadj):
    assert prove_eq3(Gen3("s"), Gen3("s"), psadj, budget=0) is None


def test_rewrite_step_json():
    step = RewriteStep(3, "relation", {"relation": "r", "left": ("F",),
                                       "right": (), "offset": 0,
                                       "inverted": False}, "backward")
    assert RewriteStep.from_json(json.loads(json.dumps(step.to_json()))) \
        == step


@settings(max_examples=150, deadline=None)
@given(st.data())
def test_strict_normalization_properties(psadj, data):
    t = data.draw(three_cells(psadj))
    n = normalize3_strict(t, psadj)
    assert normalize3_strict(n, psadj) == n
    (s1, e1), (s2, e2) = boundary3(t, psadj), boundary3(n, psadj)
    assert eq2_unchecked(s1, s2, psadj) and eq2_unchecked(e1, e2, psadj)
    cert = prove_eq3(t, n, psadj, budget=10)
    assert cert is not None and cert.steps == ()
    assert check_certificate(cert, psadj)


# ---------------------------------------------------------------- square


def _instance(kind, flip):
    a, ap, a2 = Gen2("a"), Gen2("ap"), Gen2("a2")
    b, bp, b2 = Gen2("b"), Gen2("bp"), Gen2("b2")
    f1, f2, f3 = (One("P", (n,)) for n in ("f1", "f2", "f3"))
    g1, g2, g3 = (One("Q", (n,)) for n in ("g1", "g2", "g3"))
    m = InvGen3("m") if flip else Gen3("m")
    n = InvGen3("n") if flip else Gen3("n")
    x, xp = (ap, a) if flip else (a, ap)
    y, yp = (bp, b) if flip else (b, bp)
    if kind == "cubical-alpha":
        lhs = Ichg(b, VComp(a, a2))
        rhs = VComp3(RWhisk2(Ichg(b, a), LWhisk(g2, a2)),
                     LWhisk2(LWhisk(g1, a), Ichg(b, a2)))
    elif kind == "cubical-beta":
        lhs = Ichg(VComp(b, b2), a)
        rhs = VComp3(LWhisk2(RWhisk(b, f1), Ichg(b2, a)),
                     RWhisk2(Ichg(b, a), RWhisk(b2, f2)))
    elif kind == "modification-alpha":
        lhs = VComp3(LWhisk2(RWhisk(b, f1), LWhisk1(g2, m)), Ichg(b, xp))
        rhs = VComp3(Ichg(b, x), RWhisk2(LWhisk1(g1, m), RWhisk(b, f2)))
    else:
        lhs = VComp3(RWhisk2(RWhisk1(n, f1), LWhisk(g2, a)), Ichg(yp, a))
        rhs = VComp3(Ichg(y, a), LWhisk2(LWhisk(g1, a), RWhisk1(n, f2)))
    return lhs, rhs


def _whisker(t, left, right):
    """Whisker by ``hh^(left-1) . h`` and ``e . ee^(right-1)``; 0 means no
    whisker on that side."""
    if left:
        t = LWhisk1(One("R", ("hh",) * (left - 1) + ("h",)), t)
    if right:
        t = RWhisk1(t, One("O", ("e",) + ("ee",) * (right - 1)))
    return t


KINDS = ("cubical-alpha", "cubical-beta", "modification-alpha",
         "modification-beta")


@settings(max_examples=200, deadline=None)
@given(st.sampled_from(KINDS), st.booleans(), st.integers(0, 4),
       st.integers(0, 4), st.booleans())
def test_cubical_and_modification_instances(square, kind, flip, left, right,
                                            backwards):
    lhs, rhs = (_whisker(t, left, right) for t in _instance(kind, flip))
    if backwards:
        lhs, rhs = rhs, lhs
    cert = prove_eq3(lhs, rhs, square, budget=2000)
    assert cert is not None
    assert check_certificate(cert, square)
    back = prove_eq3(rhs, lhs, square, budget=2000)
    assert back is not None and check_certificate(back, square)
    if kind.startswith("cubical"):
        assert cert.steps == ()
    else:
        assert len(cert.steps) == 1
        assert cert.steps[0].kind.startswith("modification-nat")


def test_modification_instance_is_not_strict(square):
    lhs, rhs = _instance("modification-alpha", False)
    assert not strict_equal(lhs, rhs, square)


def test_inline_term_parses_like_constructed(psadj):
    t = parse_term("(eta ; (U < s)) * (ichg(eta, eta) ; (U < eps > F))",
                   psadj, 3)
    assert boundary3(t, psadj)
