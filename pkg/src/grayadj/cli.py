"""Batch front end: ``grayadj <command> ...``.

Exit status is 0 when every check passes, 1 when one fails or is unknown
and 2 for unreadable or ill-typed input.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from . import bundled
from .benabou import (FAIL, PASS, UNKNOWN, CoherenceReport,
                      ExtensionError, adjoin_generic, check_pseudoadjunction,
                      extension_from_adjunction, from_presentation,
                      preservation_witness, rebuild_adjunction, roundtrip,
                      swallowtail_pastes, verify_extension_equation,
                      verify_mu_inverses, verify_uniqueness_instance)
from .eq3 import check_certificate, prove_eq3
from .eq3.prover import DEFAULT_MAX_STATES, SearchStats
from .normal2 import BoundaryMismatch
from .presentation import (Duality, PresentationError, dualize,
                           load_presentation, parse_term, render)
from .terms import One, TypingError

EXIT_PASS, EXIT_FAIL, EXIT_INPUT = 0, 1, 2
BUNDLED = "psadj.gray"


class InputError(Exception):
    pass


def _read(path):
    if path == BUNDLED and not Path(path).exists():
        return bundled()
    try:
        return Path(path).read_text()
    except OSError as e:
        raise InputError(f"{path}: {e.strerror or e}") from None


def _load(path):
    try:
        return load_presentation(_read(path))
    except PresentationError as e:
        raise InputError(f"{path}: {e}") from None


def _data(c, names):
    """Adjunction data named by ``F,U,eta,eps,s,t``; the 3-cells may be
    written ``inv(name)``, which is how they appear in a dual."""
    from .benabou import PseudoadjunctionData
    from .terms import Gen2

    keys = ("F", "U", "eta", "eps", "s", "t")
    given = names.split(",") if names else list(keys)
    if len(given) != len(keys):
        raise InputError("--generators expects six names F,U,eta,eps,s,t")
    F, U, eta, eps, s, t = (n.strip() for n in given)
    for n, kind in ((F, 1), (U, 1), (eta, 2), (eps, 2)):
        if c.kind_of(n) != kind:
            raise InputError(f"{n!r} is not a {kind}-generator")
    try:
        if names is None:
            return from_presentation(c)
        three = [parse_term(x, c, 3) for x in (s, t)]
        return PseudoadjunctionData(
            One(c.one_gens[F][0], (F,)), One(c.one_gens[U][0], (U,)),
            Gen2(eta), Gen2(eps), three[0], three[1], c)
    except (KeyError, TypingError, PresentationError) as e:
        raise InputError(f"generators do not form adjunction data: {e}") \
            from None


def _emit(args, payload, text_lines):
    if args.format == "json":
        out = json.dumps(payload, indent=2, sort_keys=True) + "\n"
    else:
        out = "\n".join(text_lines) + "\n"
    sys.stdout.write(out)


def _report_lines(report):
    lines = []
    for ch in report.checks:
        extra = ""
        if ch.certificate is not None:
            extra = f" ({len(ch.certificate.steps)} steps)"
        if ch.detail:
            extra += f" - {ch.detail}"
        lines.append(f"{ch.name}: {ch.verdict}{extra}")
    lines.append(f"verdict: {report.verdict}")
    return lines


def _finish_report(args, report, extra=None):
    payload = report.to_json()
    if extra:
        payload.update(extra)
    _emit(args, payload, _report_lines(report))
    return EXIT_PASS if report.verdict == PASS else EXIT_FAIL


# ---------------------------------------------------------------- commands


def cmd_check_adj(args):
    c = _load(args.file)
    d = _data(c, args.generators)
    return _finish_report(args, check_pseudoadjunction(d, args.budget))


def cmd_derive_ext(args):
    c = _load(args.file)
    d, gen = adjoin_generic(_data(c, args.generators))
    G, K, g, k, omega = (gen[n] for n in ("G", "K", "g", "k", "omega"))
    report = CoherenceReport()
    for part in (verify_extension_equation(d, G, K, g, k, omega, args.budget),
                 verify_uniqueness_instance(d, G, K, g, args.budget),
                 verify_mu_inverses(d, G, K, g)):
        report.checks.extend(part.checks)
    for ch in report.checks:
        if ch.certificate is not None and ch.verdict == PASS:
            if not check_certificate(ch.certificate, d.context):
                ch.verdict, ch.detail = FAIL, "certificate rejected on replay"
    return _finish_report(args, report)


def cmd_derive_adj(args):
    c = _load(args.file)
    d = _data(c, args.generators)
    try:
        _, report = roundtrip(d, args.budget)
    except ExtensionError as e:
        raise InputError(str(e)) from None
    if args.out:
        Path(args.out).write_text(report.derived_fragment())
    return _finish_report(args, report)


def _named_terms(d):
    e = extension_from_adjunction(d)
    rebuilt = rebuild_adjunction(e, preservation_witness(d, d.F))
    (sw1, _), (sw2, _) = swallowtail_pastes(d)
    return {"t_roundtrip": rebuilt.t, "s_roundtrip": rebuilt.s,
            "s_inv_roundtrip": rebuilt.s_inv, "t_inv_roundtrip":
            rebuilt.t_inv, "swallowtail1": sw1, "swallowtail2": sw2}


def _term(text, c, named):
    if text in named:
        return named[text]
    try:
        return parse_term(text, c, 3)
    except PresentationError as e:
        raise InputError(f"cannot read 3-cell {text!r}: {e}") from None


def cmd_prove(args):
    c = _load(args.file)
    named = _named_terms(_data(c, args.generators)) \
        if c.kind_of("F") is not None or args.generators else {}
    lhs, rhs = _term(args.lhs, c, named), _term(args.rhs, c, named)
    stats = SearchStats()
    try:
        cert = prove_eq3(lhs, rhs, c, args.budget, stats=stats)
    except (BoundaryMismatch, TypingError) as e:
        raise InputError(str(e)) from None
    verdict = PASS if cert is not None else UNKNOWN
    payload = {"verdict": verdict, "visited": stats.visited,
               "certificate": cert.to_json() if cert else None}
    lines = [f"verdict: {verdict}", f"visited: {stats.visited}"]
    if cert is not None:
        lines += [f"step {i}: {json.dumps(s.to_json(), sort_keys=True)}"
                  for i, s in enumerate(cert.steps)]
    _emit(args, payload, lines)
    return EXIT_PASS if cert is not None else EXIT_FAIL


def cmd_model_test(args):
    from . import posmodel as pm

    codomains = pm.all_posets(args.max_poset_size)
    report = pm.ModelReport()
    if args.catalog:
        try:
            catalog = pm.parse_catalog(_read(args.catalog))
        except pm.PosetError as e:
            raise InputError(f"{args.catalog}: {e}") from None
        tests = pm.extend_codomains(codomains, *catalog)
        for X in catalog:
            for A in catalog:
                report.merge(pm.benabou_check_model(X, A, codomains=tests))
    else:
        report.merge(pm.check_exhaustive(args.max_poset_size))
        if args.samples:
            report.merge(pm.check_samples(args.samples, args.sample_size,
                                          args.seed, args.max_poset_size))
    payload = report.to_json()
    payload.update({"seed": args.seed, "max_poset_size": args.max_poset_size})
    lines = [f"pairs: {report.pairs}",
             f"disagreements: {len(report.disagreements)}"]
    lines += [f"pattern {k}: {v}" for k, v in sorted(report.agreements.items())]
    _emit(args, payload, lines)
    return EXIT_PASS if report.ok else EXIT_FAIL


def cmd_dualize(args):
    c = _load(args.file)
    text = render(dualize(c, Duality(args.kind)))
    if args.out:
        Path(args.out).write_text(text)
    else:
        sys.stdout.write(text)
    return EXIT_PASS


# ---------------------------------------------------------------- parser


def build_parser():
    p = argparse.ArgumentParser(
        prog="grayadj",
        description="Check pseudoadjunctions and absolute pseudoextensions "
                    "in a presented Gray-category.")
    sub = p.add_subparsers(dest="command", required=True)

    def common(q, presentation=True):
        if presentation:
            q.add_argument("file", help=f"a .gray presentation ({BUNDLED!r} "
                                        "names the bundled one)")
            q.add_argument("--generators", metavar="F,U,eta,eps,s,t",
                           help="names of the adjunction generators; s and "
                                "t may be given as inv(name)")
        q.add_argument("--budget", type=int, default=DEFAULT_MAX_STATES,
                       help="search states per proof attempt "
                            f"(default {DEFAULT_MAX_STATES})")
        q.add_argument("--format", choices=("json", "text"), default="json")
        q.add_argument("--seed", type=int, default=0)
        q.add_argument("--max-poset-size", type=int, default=3)
        q.add_argument("--out", metavar="PATH")

    q = sub.add_parser("check-adj", help="coherence checks for F -| U")
    common(q)
    q.set_defaults(run=cmd_check_adj)

    q = sub.add_parser("derive-ext",
                       help="forward construction on generic G, K, g, k, "
                            "omega")
    common(q)
    q.set_defaults(run=cmd_derive_ext)

    q = sub.add_parser("derive-adj",
                       help="rebuild the adjunction from its extension data; "
                            "--out writes derived relations")
    common(q)
    q.set_defaults(run=cmd_derive_adj)

    q = sub.add_parser("prove", help="search for a 3-cell equality")
    common(q)
    q.add_argument("--lhs", required=True,
                   help="a 3-cell term or one of t_roundtrip, s_roundtrip, "
                        "s_inv_roundtrip, t_inv_roundtrip, swallowtail1, "
                        "swallowtail2")
    q.add_argument("--rhs", required=True)
    q.set_defaults(run=cmd_prove)

    q = sub.add_parser("model-test",
                       help="compare the five conditions on finite posets")
    q.add_argument("catalog", nargs="?",
                   help="poset catalog; all posets up to --max-poset-size "
                        "when omitted")
    common(q, presentation=False)
    q.add_argument("--samples", type=int, default=1000,
                   help="random instances (size --sample-size) added to the "
                        "exhaustive run")
    q.add_argument("--sample-size", type=int, default=4)
    q.set_defaults(run=cmd_model_test)

    q = sub.add_parser("dualize", help="write the op, co or coop dual")
    common(q)
    q.add_argument("--kind", choices=[d.value for d in Duality],
                   required=True)
    q.set_defaults(run=cmd_dualize)
    return p


def run(argv=None):
    args = build_parser().parse_args(argv)
    try:
        return args.run(args)
    except InputError as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_INPUT


def main():
    sys.exit(run())


if __name__ == "__main__":
    main()
