"""Command-line entry point: run any stage or the whole pipeline.

Exit codes: 0 = verified, 1 = a mathematical check (or output write) failed,
2 = usage error. JSON is the authoritative certificate format; text output
is a derived human-readable summary.
"""

from __future__ import annotations

import argparse
import json
import sys
from dataclasses import dataclass

from .certificate import (
    certificate_document,
    search_certificate_from_document,
    serialize_certificate,
    validate_search_document,
)
from .contradiction import build_contradiction_certificate
from .matroid import (
    Chirotope,
    alternating_chirotope,
    canonical_tope_count,
    check_covector_axioms,
    check_uniform_tope_axioms,
    covectors_from_topes,
    pair_swap_chirotope,
    topes_of,
)
from .search import VerificationError, build_search_instance, enumerate_survivors, verify_search_conclusions
from .strong_map import is_strong_map_covectors, is_strong_map_topes

_COVECTOR_CHECK_LIMIT = 6  # covector-containment cross-check only at desk scale


@dataclass(frozen=True)
class RunConfig:
    command: str
    n: int = 6
    rank: int = 4
    family: str = "alternating"
    threads: int = 1
    output_path: str | None = None
    format: str = "json"


def _family_chirotope(cfg: RunConfig) -> Chirotope:
    if cfg.family == "alternating":
        return alternating_chirotope(cfg.n, cfg.rank)
    return pair_swap_chirotope(cfg.n)


def _emit(cfg: RunConfig, payload: bytes) -> int:
    if cfg.output_path:
        try:
            with open(cfg.output_path, "wb") as fh:
                fh.write(payload)
        except OSError as exc:
            print(f"error: cannot write {cfg.output_path}: {exc}", file=sys.stderr)
            return 1
    else:
        sys.stdout.write(payload.decode("utf-8"))
    return 0


def _emit_json(cfg: RunConfig, doc: dict) -> int:
    return _emit(cfg, serialize_certificate(doc))


def _emit_text(cfg: RunConfig, lines: list[str]) -> int:
    return _emit(cfg, ("\n".join(lines) + "\n").encode("utf-8"))


def _cmd_topes(cfg: RunConfig) -> int:
    topes = topes_of(_family_chirotope(cfg))
    expected = canonical_tope_count(topes.n, topes.r)
    if cfg.format == "text":
        status = _emit_text(cfg, list(topes.strings()))
    else:
        status = _emit_json(
            cfg,
            {
                "family": cfg.family,
                "n": topes.n,
                "rank": topes.r,
                "expected_count": expected,
                "count": len(topes),
                "topes": list(topes.strings()),
            },
        )
    if status:
        return status
    return 0 if len(topes) == expected else 1


def _cmd_axioms(cfg: RunConfig) -> int:
    topes = topes_of(_family_chirotope(cfg))
    tope_report = check_uniform_tope_axioms(topes)
    covector_report = check_covector_axioms(covectors_from_topes(topes))
    ok = tope_report.passed and covector_report.passed
    if cfg.format == "text":
        lines = [
            f"instance: {cfg.family} n={topes.n} rank={topes.r}",
            f"tope count: {tope_report.actual_count} (expected {tope_report.expected_count})",
            f"uniform tope axioms: {'pass' if tope_report.passed else 'FAIL'}",
            f"covectors: {covector_report.vector_count}",
            f"covector axioms: {'pass' if covector_report.passed else 'FAIL'}",
        ]
        status = _emit_text(cfg, lines)
    else:
        status = _emit_json(
            cfg,
            {
                "family": cfg.family,
                "n": topes.n,
                "rank": topes.r,
                "tope_count": tope_report.actual_count,
                "expected_tope_count": tope_report.expected_count,
                "uniform_tope_axioms_pass": tope_report.passed,
                "vc_failures": [list(q) for q in tope_report.missing],
                "covector_count": covector_report.vector_count,
                "covector_axioms_pass": covector_report.passed,
            },
        )
    return status or (0 if ok else 1)


def _cmd_strongmap(cfg: RunConfig) -> int:
    source = topes_of(alternating_chirotope(cfg.n, cfg.rank))
    target = topes_of(pair_swap_chirotope(cfg.n))
    tope_verdict = is_strong_map_topes(source, target)
    covector_verdict = None
    if cfg.n <= _COVECTOR_CHECK_LIMIT:
        covector_verdict = is_strong_map_covectors(
            covectors_from_topes(source), covectors_from_topes(target)
        )
    ok = tope_verdict.holds and (covector_verdict is None or covector_verdict.holds)
    doc = {
        "n": cfg.n,
        "source": {"family": "alternating", "rank": cfg.rank},
        "target": {"family": "m2", "rank": 2},
        "tope_inclusion": {"holds": tope_verdict.holds, "corank": tope_verdict.corank},
    }
    lines = [
        f"strong map alternating(n={cfg.n}, rank={cfg.rank}) -> m2(n={cfg.n})",
        f"tope inclusion: {'holds' if tope_verdict.holds else 'FAILS'} (corank {tope_verdict.corank})",
    ]
    if covector_verdict is not None:
        doc["covector_containment"] = {
            "holds": covector_verdict.holds,
            "corank": covector_verdict.corank,
        }
        doc["methods_agree"] = covector_verdict.holds == tope_verdict.holds
        lines.append(
            f"covector containment: {'holds' if covector_verdict.holds else 'FAILS'}"
        )
    status = _emit_text(cfg, lines) if cfg.format == "text" else _emit_json(cfg, doc)
    return status or (0 if ok else 1)


def _search_text(doc: dict) -> list[str]:
    lines = [
        f"combinations checked: {doc['counts']['combinations_checked']}",
        f"survivors: {doc['counts']['survivor_count']}",
        "forced circuits: "
        + ", ".join(f"{k} -> {v}" for k, v in doc["conclusion"]["circuits"].items()),
    ]
    for i, s in enumerate(doc["survivors"]):
        lines.append(f"survivor {i:2d}: " + " ".join(s["topes"]))
    return lines


def _cmd_lemma6(cfg: RunConfig) -> int:
    cert = enumerate_survivors(build_search_instance(), threads=cfg.threads)
    try:
        verify_search_conclusions(cert)
        verified = True
    except VerificationError as exc:
        print(f"error: {exc}", file=sys.stderr)
        verified = False
    doc = certificate_document(cert)
    status = (
        _emit_text(cfg, _search_text(doc)) if cfg.format == "text" else _emit_json(cfg, doc)
    )
    return status or (0 if verified else 1)


def _contradiction_text(doc: dict) -> list[str]:
    conclusion = doc["conclusion"]
    lines = [
        f"premise strong map: {'holds' if conclusion['premise_strong_map']['holds'] else 'FAILS'}"
        f" (corank {conclusion['premise_strong_map']['corank']})",
        f"combinations checked: {doc['counts']['combinations_checked']}",
        f"survivors: {doc['counts']['survivor_count']}",
    ]
    for entry in doc["restrictions"]:
        ok = entry["source_restriction_is_alternating"] and entry["target_restriction_matches"]
        lines.append(
            f"restriction {{{entry['kept']}}}: {'pass' if ok else 'FAIL'},"
            f" lifted circuit {entry['lifted_circuit']}"
        )
    lines.append(
        f"circuits {conclusion['circuit_a']} vs {conclusion['circuit_b']}:"
        f" {'conflict' if conclusion['contradiction'] else 'no conflict'}"
    )
    lines.append(f"verdict: {conclusion['verdict']}")
    return lines


def _run_contradiction(cfg: RunConfig, certificate_path: str | None) -> int:
    search_cert = None
    if certificate_path:
        try:
            with open(certificate_path, "rb") as fh:
                loaded = json.load(fh)
        except (OSError, json.JSONDecodeError) as exc:
            print(f"error: cannot load {certificate_path}: {exc}", file=sys.stderr)
            return 1
        problems = validate_search_document(loaded)
        if problems:
            for p in problems:
                print(f"invalid certificate: {p}", file=sys.stderr)
            return 1
        search_cert = search_certificate_from_document(loaded)
    cert = build_contradiction_certificate(search_cert=search_cert, threads=cfg.threads)
    doc = certificate_document(cert)
    status = (
        _emit_text(cfg, _contradiction_text(doc))
        if cfg.format == "text"
        else _emit_json(cfg, doc)
    )
    return status or (0 if cert.verdict == "nonfactorizable" else 1)


def run(cfg: RunConfig, certificate_path: str | None = None) -> int:
    handlers = {
        "topes": _cmd_topes,
        "axioms": _cmd_axioms,
        "strongmap": _cmd_strongmap,
        "lemma6": _cmd_lemma6,
    }
    if cfg.command in handlers:
        return handlers[cfg.command](cfg)
    if cfg.command in ("verify-n8", "all"):
        return _run_contradiction(cfg, certificate_path)
    print(f"error: unknown command {cfg.command!r}", file=sys.stderr)
    return 2


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="omcert",
        description=(
            "Oriented-matroid certificates: tope enumeration, axiom checks, "
            "strong-map verdicts, the exhaustive intermediate search on six "
            "elements, and the eight-element nonfactorizability pipeline."
        ),
    )
    sub = parser.add_subparsers(dest="command", required=True)

    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=("json", "text"), default="json")
    common.add_argument("--output", dest="output_path", default=None, metavar="PATH")

    instance = argparse.ArgumentParser(add_help=False)
    instance.add_argument("--family", choices=("alternating", "m2"), default="alternating")
    instance.add_argument("--n", type=int, default=6)
    instance.add_argument("--rank", type=int, default=None)

    threaded = argparse.ArgumentParser(add_help=False)
    threaded.add_argument("--threads", type=int, default=1)

    sub.add_parser("topes", parents=[common, instance], help="list canonical topes of one instance")
    sub.add_parser("axioms", parents=[common, instance], help="axiom reports for one instance")
    strongmap = sub.add_parser(
        "strongmap", parents=[common], help="strong-map verdict alternating -> m2"
    )
    strongmap.add_argument("--n", type=int, default=6)
    strongmap.add_argument("--rank", type=int, default=4)
    sub.add_parser(
        "lemma6", parents=[common, threaded], help="exhaustive intermediate search on 6 elements"
    )
    verify = sub.add_parser(
        "verify-n8",
        parents=[common, threaded],
        help="premise, restriction and conflict checks at n=8",
    )
    verify.add_argument(
        "--certificate",
        default=None,
        metavar="PATH",
        help="reuse a previously emitted search certificate instead of re-running the search",
    )
    sub.add_parser("all", parents=[common, threaded], help="full pipeline certificate")
    return parser


def _config_from_args(parser: argparse.ArgumentParser, args: argparse.Namespace) -> RunConfig:
    family = getattr(args, "family", "alternating")
    n = getattr(args, "n", 6)
    rank = getattr(args, "rank", None)
    if family == "m2":
        if n % 2:
            parser.error(f"family m2 needs an even ground set, got n={n}")
        if rank is None:
            rank = 2
        elif rank != 2:
            parser.error("family m2 has rank 2")
    elif rank is None:
        rank = 4
    if not 1 <= n <= 32:
        parser.error(f"n must be within 1..32, got {n}")
    if not 1 <= rank <= n:
        parser.error(f"rank must be within 1..n, got rank={rank}, n={n}")
    threads = getattr(args, "threads", 1)
    if threads < 1:
        parser.error(f"threads must be >= 1, got {threads}")
    return RunConfig(
        command=args.command,
        n=n,
        rank=rank,
        family=family,
        threads=threads,
        output_path=args.output_path,
        format=args.format,
    )


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    cfg = _config_from_args(parser, args)
    try:
        return run(cfg, certificate_path=getattr(args, "certificate", None))
    except (ValueError, VerificationError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
