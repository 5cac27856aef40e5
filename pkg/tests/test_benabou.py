import dataclasses

import pytest

from grayadj.benabou import (FAIL, PASS, UNKNOWN, ExtensionError,
                             adjoin_generic, adjunction_from_extension,
                             check_pseudoadjunction, dualize_data,
                             extension_from_adjunction, from_presentation,
                             invert3, mu_from_adjunction,
                             preservation_witness, roundtrip,
                             sharp_from_adjunction, swallowtail_pastes,
                             verify_extension_equation, verify_mu_inverses,
                             verify_uniqueness_instance, lift_from_adjunction)
from grayadj.eq3 import check_certificate, normalize3_strict, prove_eq3
from grayadj.normal2 import BoundaryMismatch, Layer, normalize2
from grayadj.presentation import Duality, load_presentation
from grayadj.terms import (Gen2, Id2, Id3, LWhisk, LWhisk1, One, RWhisk,
                           VComp, boundary3)


@pytest.fixture(scope="module")
def generic(adj):
    d, gen = adjoin_generic(adj)
    return d, gen["G"], gen["K"], gen["g"], gen["k"], gen["omega"]


def test_psadj_passes(adj):
    report = check_pseudoadjunction(adj)
    assert report.verdict == PASS
    for name in ("swallowtail-1", "swallowtail-2"):
        cert = report.check(name).certificate
        assert len(cert.steps) == 1 and cert.steps[0].kind == "relation"
        assert check_certificate(cert, adj.context)


def test_missing_swallowtail_is_unknown(psadj):
    d = from_presentation(psadj.without_relation("swallowtail2"))
    report = check_pseudoadjunction(d, budget=500)
    assert report.check("swallowtail-2").verdict == UNKNOWN
    others = {k: v for k, v in report.verdicts().items()
              if k != "swallowtail-2"}
    assert set(others.values()) == {PASS}
    assert report.verdict == UNKNOWN


def test_reversed_t_is_a_boundary_error(adj):
    bad = dataclasses.replace(adj, t=adj.t_inv, t_inv=adj.t)
    report = check_pseudoadjunction(bad)
    assert report.verdict == FAIL
    failed = [ch for ch in report.checks if ch.verdict == FAIL]
    assert failed[0].name == "boundary-t"
    assert "t" in failed[0].detail
    # boundary failures come before any coherence check
    assert not any(ch.name.startswith("swallowtail") for ch in report.checks)


def test_sharp(generic, adj):
    d, G, K, g, k, omega = generic
    nf = normalize2(sharp_from_adjunction(d, G, K, g), d.context)
    assert nf.layers == (Layer((), "g", ("U",)), Layer(("K",), "eps", ()))
    t_src = sharp_from_adjunction(adj, One("X"), adj.U, adj.eta)
    assert normalize2(t_src, adj.context) == normalize2(
        boundary3(adj.t, adj.context)[0], adj.context)


def test_sharp_rejects_bad_boundary(generic):
    d, G, K, g, k, omega = generic
    with pytest.raises(BoundaryMismatch):
        sharp_from_adjunction(d, G, K, k)


def test_counit_from_preserved_extension(adj):
    w = preservation_witness(adj, adj.F)
    eps = w.extension.sharp(One("A"), Id2(adj.F))
    assert normalize2(eps, adj.context) == normalize2(adj.eps, adj.context)


def test_mu_boundary(generic):
    d, G, K, g, k, omega = generic
    mu, mu_inv = mu_from_adjunction(d, G, K, g)
    src, tgt = boundary3(mu, d.context)
    sharp = sharp_from_adjunction(d, G, K, g)
    want = VComp(LWhisk(G, d.eta), RWhisk(sharp, d.F))
    assert normalize2(src, d.context) == normalize2(want, d.context)
    assert normalize2(tgt, d.context) == normalize2(g, d.context)
    assert verify_mu_inverses(d, G, K, g).verdict == PASS


def test_mu_of_identity_is_s_inverse(adj):
    mu, _ = mu_from_adjunction(adj, adj.F, One("A"), Id2(adj.F))
    c = adj.context
    assert normalize3_strict(mu, c) == normalize3_strict(adj.s_inv, c)


def test_mu_whiskered_is_single_move(generic):
    d, G, K, g, k, omega = generic
    mu, _ = mu_from_adjunction(d, K.after(d.F), K, Id2(K.after(d.F)))
    want = LWhisk1(K, d.s_inv)
    assert normalize3_strict(mu, d.context) == \
        normalize3_strict(want, d.context)


def test_lift_boundary_and_errors(generic):
    d, G, K, g, k, omega = generic
    lifted = lift_from_adjunction(d, G, K, g, k, omega)
    src, tgt = boundary3(lifted, d.context)
    assert normalize2(src, d.context) == normalize2(k, d.context)
    assert normalize2(tgt, d.context) == normalize2(
        sharp_from_adjunction(d, G, K, g), d.context)
    with pytest.raises(BoundaryMismatch):
        lift_from_adjunction(d, G, K, g, Id2(K), omega)


def test_extension_equation(generic):
    d, G, K, g, k, omega = generic
    report = verify_extension_equation(d, G, K, g, k, omega)
    assert report.verdict == PASS
    cert = report.check("extension-equation").certificate
    assert len(cert.steps) <= 20
    assert check_certificate(cert, d.context)


def test_degenerate_extension_instance(generic):
    d, G, K, g, k, omega = generic
    sharp = sharp_from_adjunction(d, G, K, g)
    mu, _ = mu_from_adjunction(d, G, K, g)
    assert verify_extension_equation(d, G, K, g, sharp, mu).verdict == PASS


def test_extension_budget_zero(generic):
    d, G, K, g, k, omega = generic
    report = verify_extension_equation(d, G, K, g, k, omega, budget=0)
    assert report.verdict == UNKNOWN


def test_uniqueness_instance(generic):
    d, G, K, g, k, omega = generic
    report = verify_uniqueness_instance(d, G, K, g)
    assert report.verdict == PASS
    assert check_certificate(report.check("uniqueness").certificate,
                             d.context)


def test_roundtrip(adj):
    d2, report = roundtrip(adj)
    assert report.verdict == PASS, report.verdicts()
    c = adj.context
    assert normalize2(d2.eps, c) == normalize2(adj.eps, c)
    for name in ("roundtrip-s_inv", "roundtrip-t"):
        assert check_certificate(report.check(name).certificate, c)
    sw2 = report.check("swallowtail-2")
    assert sw2.derived
    assert [n for n, _, _ in report.derived_relations] == [
        "swallowtail2_derived"]


def test_derived_fragment_reloads(adj, psadj):
    from grayadj import bundled

    _, report = roundtrip(adj)
    fragment = report.derived_fragment()
    assert fragment.startswith("# derived-by-uniqueness")
    c = load_presentation(bundled() + fragment)
    assert "swallowtail2_derived" in [r[0] for r in c.relations]
    assert "swallowtail2_derived" not in [r[0] for r in psadj.relations]


def test_backward_needs_preservation(adj):
    e = extension_from_adjunction(adj)
    with pytest.raises(ExtensionError, match="preservation by F required"):
        adjunction_from_extension(e, None)
    with pytest.raises(ExtensionError):
        adjunction_from_extension(e, preservation_witness(adj, adj.U))


def test_invert3_composes_to_identity(adj):
    c = adj.context
    inv = invert3(adj.t, c)
    src, _ = boundary3(adj.t, c)
    from grayadj.terms import VComp3

    assert prove_eq3(VComp3(adj.t, inv), Id3(src), c).steps == ()


def test_pastes_target_identities(adj):
    (sw1, id1), (sw2, id2) = swallowtail_pastes(adj)
    assert id1 == Id3(adj.eta) and id2 == Id3(adj.eps)


# ---------------------------------------------------------------- duality


@pytest.mark.parametrize("drop", [None, "swallowtail1", "swallowtail2"])
def test_op_preserves_verdicts(psadj, drop):
    c = psadj.without_relation(drop) if drop else psadj
    d = from_presentation(c)
    base = check_pseudoadjunction(d, budget=300).verdicts()
    op = check_pseudoadjunction(dualize_data(d, Duality.OP),
                                budget=300).verdicts()
    assert op == base


@pytest.mark.parametrize("drop", [None, "swallowtail1", "swallowtail2"])
def test_co_swaps_swallowtails(psadj, drop):
    c = psadj.without_relation(drop) if drop else psadj
    d = from_presentation(c)
    base = check_pseudoadjunction(d, budget=300).verdicts()
    co = check_pseudoadjunction(dualize_data(d, Duality.CO),
                                budget=300).verdicts()
    assert co["swallowtail-1"] == base["swallowtail-2"]
    assert co["swallowtail-2"] == base["swallowtail-1"]


def test_dual_certificates_replay(adj):
    for kind in Duality:
        dual = dualize_data(adj, kind)
        report = check_pseudoadjunction(dual)
        assert report.verdict == PASS
        for ch in report.checks:
            if ch.certificate is not None:
                assert check_certificate(ch.certificate, dual.context)


def test_generic_data_requires_fresh_names(adj):
    d, gen = adjoin_generic(adj)
    d2, gen2 = adjoin_generic(d)
    assert gen2["G"] != gen["G"]
    assert isinstance(gen2["g"], Gen2)
