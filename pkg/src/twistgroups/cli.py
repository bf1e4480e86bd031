"""Command-line interface.

Exit codes: 0 when a verdict is produced (``unknown`` included), 2 for
invalid or inapplicable input, 3 when the oracle contradicts a certificate.
"""

from __future__ import annotations

import argparse
import sys
from pathlib import Path
from typing import Optional, Sequence

from . import certificates as cert
from .certificates import STANDARD_PAIRS, TORUS_TRIPLE, Verdict
from .errors import InconsistencyError, NotApplicableError, TwistGroupError
from .oracle import find_reducibles, find_relations
from .pingpong import WPPConfig, verify_ppl, verify_ppwtc, verify_wpp
from .report import (CertificateReport, build_params, load_system, parse_int_list, parse_mu,
                     system_to_json)
from .systems import CurveSystem, stats

EXIT_OK, EXIT_INPUT, EXIT_INCONSISTENT = 0, 2, 3

# bounds of the small oracle search run against every theorem-backed answer
CHECK_SYLLABLES, CHECK_STEP = 6, 1


def cross_check(verdict: Verdict, curves, exponents) -> None:
    """Raise :class:`InconsistencyError` if the oracle contradicts ``verdict``."""
    w = verdict.witness
    if w is not None and not w.verify():
        raise InconsistencyError(f"witness {w.word} does not verify")
    if verdict.status != "yes" or curves is None:
        return
    if verdict.question == cert.FREENESS:
        found = find_relations(curves, exponents, CHECK_SYLLABLES, CHECK_STEP)
        if found:
            raise InconsistencyError(f"certified free but {found[0]} is a relation")
    else:
        found = find_reducibles(curves, exponents, CHECK_SYLLABLES, CHECK_STEP)
        if found:
            raise InconsistencyError(f"certified relatively pA but {found[0][0]} fixes {found[0][1]}")


def _classify2(args) -> CertificateReport:
    echo = {"m": args.m, "n1": args.n1, "n2": args.n2, "question": args.question}
    if args.question == "free":
        verdict = cert.classify_free_2(args.m, args.n1, args.n2)
    else:
        verdict = cert.classify_relpa_2(args.m, args.n1, args.n2)
    curves = STANDARD_PAIRS.get(args.m)
    if curves is not None and args.m > 0:
        cross_check(verdict, curves, (args.n1, args.n2))
    return CertificateReport.from_verdict(verdict, echo)


def _torus_triple(args) -> CertificateReport:
    n = parse_int_list(args.exponents, 3)
    echo = {"exponents": list(n), "question": args.question}
    fn = cert.torus_triple_certificate if args.question == "free" else cert.torus_triple_relpa
    verdict = fn(*n)
    cross_check(verdict, TORUS_TRIPLE, n)
    return CertificateReport.from_verdict(verdict, echo)


def _bounds(args) -> CertificateReport:
    system = load_system(args.input)
    parse_mu(args.mu, system.h)
    echo = {"system": system_to_json(system), "theorem": args.theorem, "mu": args.mu,
            "lambda": args.lam}
    if args.theorem == "32":
        verdict = cert.thm32_check(system)
        if system.realized:
            cross_check(verdict, system.torus_slopes, (1,) * system.h)
        return CertificateReport.from_verdict(verdict, echo)
    if args.theorem == "33":
        n = cert.thm33_exponent(system)
        st = stats(system)
        verdict = Verdict(cert.FREENESS, "yes", "theorem",
                          {"theorem": "spread-exponent", "M0": st.M0, "exponent": n})
        if system.realized:
            cross_check(verdict, system.torus_slopes, (n,) * system.h)
        return CertificateReport.from_verdict(verdict, echo)
    if args.theorem == "36":
        verdict = cert.thm36_verdict(system)
        if system.realized:
            n = verdict.payload["exponent"]
            cross_check(verdict, system.torus_slopes, (n,) * system.h)
        return CertificateReport.from_verdict(verdict, echo)
    params = build_params(system, args.mu, args.lam)
    rows = []
    for i in range(system.h):
        bound, n = cert.lemma31_min_exponent(i, system, params)
        rows.append({"generator": i + 1, "bound": bound, "exponent": n})
    exponents = tuple(r["exponent"] for r in rows)
    verdict = Verdict(cert.FREENESS, "yes", "theorem",
                      {"theorem": "ping-pong-bounds", "exponents": list(exponents), "bounds": rows,
                       "mu": [list(r) for r in params.mu]})
    if system.realized:
        cross_check(verdict, system.torus_slopes, exponents)
    return CertificateReport.from_verdict(verdict, echo)


def _exponents_for(system: CurveSystem, text: str) -> tuple[int, ...]:
    return parse_int_list(text, system.h)


def _search(args) -> CertificateReport:
    system = load_system(args.input)
    n = _exponents_for(system, args.exponents)
    echo = {"system": system_to_json(system), "exponents": list(n), "mode": args.mode,
            "max_syllables": args.max_syllables, "max_step": args.max_step}
    if not system.realized:
        raise NotApplicableError("search needs torus_slopes")
    bounds = {"max_syllables": args.max_syllables, "max_step": args.max_step}
    if args.mode == "relations":
        found = find_relations(system.torus_slopes, n, args.max_syllables, args.max_step)
        witnesses = [cert.Witness("relation", w, system.torus_slopes, n) for w in found]
        question = cert.FREENESS
    else:
        found = find_reducibles(system.torus_slopes, n, args.max_syllables, args.max_step)
        witnesses = [cert.Witness("reducible", w, system.torus_slopes, n, f) for w, f in found]
        question = cert.RELPA
    for w in witnesses:
        if not w.verify():
            raise InconsistencyError(f"oracle hit {w.word} does not verify")
    if witnesses:
        return CertificateReport(question, "no", "witness", echo,
                                 {**bounds, "witness": witnesses[0], "witnesses": witnesses})
    return CertificateReport(question, "unknown", "bounded-verification", echo,
                             {**bounds, "witnesses": []})


def _verify(args) -> CertificateReport:
    system = load_system(args.input)
    n = _exponents_for(system, args.exponents)
    params = build_params(system, args.mu, args.lam)
    echo = {"system": system_to_json(system), "exponents": list(n), "mode": args.mode,
            "height": args.height, "n0": args.n0, "power_bound": args.power_bound,
            "mu": args.mu, "lambda": args.lam}
    if args.mode == "ppl":
        rep = verify_ppl(system, n, params, args.height, args.power_bound, check_norm=args.norm)
    elif args.mode == "ppwtc":
        rep = verify_ppwtc(system, n, params, args.height, args.power_bound)
    else:
        if args.n0 is None:
            raise NotApplicableError("wpp mode needs --n0")
        rep = verify_wpp(system, n, params, WPPConfig(args.n0, args.height), args.power_bound)
    status = "yes" if rep.passed else "unknown"
    return CertificateReport(cert.FREENESS, status, "bounded-verification", echo, {"report": rep})


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="twistgroups", description=__doc__.splitlines()[0])
    sub = p.add_subparsers(dest="command", required=True)

    def common(sp):
        sp.add_argument("--json", metavar="PATH", help="write the JSON report to PATH ('-' for stdout)")

    sp = sub.add_parser("classify2", help="two curves with given intersection number")
    sp.add_argument("--m", type=int, required=True)
    sp.add_argument("--n1", type=int, required=True)
    sp.add_argument("--n2", type=int, required=True)
    sp.add_argument("--question", choices=("free", "relpa"), default="free")
    sp.set_defaults(run=_classify2)
    common(sp)

    sp = sub.add_parser("bounds", help="exponent bounds for a curve system")
    sp.add_argument("--input", required=True)
    sp.add_argument("--mu")
    sp.add_argument("--lambda", dest="lam", help="infinite, auto, triangle or a rational")
    sp.add_argument("--theorem", choices=("32", "33", "36", "lemma31"), default="lemma31")
    sp.set_defaults(run=_bounds)
    common(sp)

    sp = sub.add_parser("torus-triple", help="three torus curves meeting pairwise once")
    sp.add_argument("--exponents", required=True)
    sp.add_argument("--question", choices=("free", "relpa"), default="free")
    sp.set_defaults(run=_torus_triple)
    common(sp)

    sp = sub.add_parser("search", help="brute-force relation or reducible search")
    sp.add_argument("--input", required=True)
    sp.add_argument("--exponents", required=True)
    sp.add_argument("--mode", choices=("relations", "reducibles"), default="relations")
    sp.add_argument("--max-syllables", type=int, default=6)
    sp.add_argument("--max-step", type=int, default=3)
    sp.set_defaults(run=_search)
    common(sp)

    sp = sub.add_parser("verify", help="bounded ping-pong verification")
    sp.add_argument("--input", required=True)
    sp.add_argument("--exponents", required=True)
    sp.add_argument("--mode", choices=("ppl", "ppwtc", "wpp"), default="ppl")
    sp.add_argument("--height", type=int, required=True)
    sp.add_argument("--n0", type=int)
    sp.add_argument("--power-bound", type=int, default=5)
    sp.add_argument("--mu")
    sp.add_argument("--lambda", dest="lam", help="infinite, auto, triangle or a rational")
    sp.add_argument("--norm", action="store_true", help="ppl mode: also require norm growth")
    sp.set_defaults(run=_verify)
    common(sp)
    return p


def _summary(rep: CertificateReport) -> str:
    lines = [f"{rep.question}: {rep.status} ({rep.certificate_kind})"]
    pl = rep.payload
    if "theorem" in pl:
        lines.append(f"theorem: {pl['theorem']}")
    w = pl.get("witness")
    if w:
        fixed = w["fixed"]
        extra = "" if fixed is None else f", fixes {fixed}"
        lines.append(f"witness: {w['word_text']} ({w['kind']}{extra}); matrix {w['matrix']}")
        if w["note"]:
            lines.append(f"note: {w['note']}")
    for key in ("exponent", "exponents", "required", "sum", "M0"):
        if key in pl:
            lines.append(f"{key}: {pl[key]}")
    if "report" in pl:
        r = pl["report"]
        lines.append(f"checked {r['checked']} moves, {len(r['violations'])} violations, "
                     f"{len(r['uncovered'])} uncovered, passed={r['passed']}")
    return "\n".join(lines)


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        if args.command == "verify" and args.height < 1:
            raise NotApplicableError("--height must be at least 1")
        rep = args.run(args)
    except InconsistencyError as exc:
        print(f"error: oracle contradicts certificate: {exc}", file=sys.stderr)
        return EXIT_INCONSISTENT
    except (TwistGroupError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    print(_summary(rep))
    if args.json == "-":
        sys.stdout.write(rep.dumps())
    elif args.json:
        Path(args.json).write_text(rep.dumps(), encoding="utf-8")
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
