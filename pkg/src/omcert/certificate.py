"""Versioned JSON certificates and their offline re-validation.

One schema serves both certificate flavors; the top-level keys are always
``version, instance, counts, survivors, restrictions, conclusion`` in that
order. Signed vectors serialize as strings over {+,-,0}; element subsets
serialize as comma-joined ascending integers inside key strings. Documents
are built from deterministically ordered data only, so serialized bytes are
identical across runs and thread counts.

Validation re-checks everything that is closed-form (counts, memberships,
witness patterns, circuit uniqueness, chirotope equalities, the circuit
conflict) without re-running the 184,756-case enumeration. Regenerating
the instance tope sets (well under a second) is allowed and used to anchor
the membership checks.
"""

from __future__ import annotations

import json
import math
from typing import Any

from .contradiction import (
    CONFLICT_SUPPORT,
    FULL_N,
    INTERMEDIATE_RANK,
    KEPT_A,
    KEPT_B,
    REDUCED_N,
    SOURCE_RANK,
    TARGET_RANK,
    ContradictionCertificate,
    circuits_conflict,
    verify_premise,
)
from .matroid import (
    TopeSet,
    alternating_chirotope,
    check_uniform_tope_axioms,
    circuit_on_support,
    pair_swap_chirotope,
)
from .search import (
    CIRCUIT_SUPPORTS,
    EXCLUDED_TOPES,
    FORCED_CIRCUITS,
    SearchCertificate,
    SearchInstance,
    SurvivorRecord,
    build_search_instance,
)
from .signed_vector import SignedVector

CERTIFICATE_VERSION = 1

SOURCE_FAMILY = "alternating"
TARGET_FAMILY = "m2"


def subset_key(subset: tuple[int, ...]) -> str:
    return ",".join(str(e) for e in subset)


def parse_subset_key(key: str) -> tuple[int, ...]:
    return tuple(int(p) for p in key.split(","))


def _survivor_entry(s: SurvivorRecord) -> dict[str, Any]:
    return {
        "topes": list(s.tope_strings()),
        "vc_witnesses": {subset_key(q): str(w) for q, w in s.vc_witnesses},
        "excluded_check": {t: absent for t, absent in s.excluded_absent},
        "circuits": {subset_key(q): str(c) for q, c in s.circuits},
    }


def search_certificate_document(cert: SearchCertificate) -> dict[str, Any]:
    inst = cert.instance
    return {
        "version": CERTIFICATE_VERSION,
        "instance": {
            "n": inst.n,
            "rank": inst.rank,
            "choose": inst.choose,
            "source_family": SOURCE_FAMILY,
            "source_rank": SOURCE_RANK,
            "target_family": TARGET_FAMILY,
            "target_rank": TARGET_RANK,
            "base_topes": [str(t) for t in inst.base],
            "pool_topes": [str(t) for t in inst.pool],
        },
        "counts": {
            "source_topes": len(inst.base) + len(inst.pool),
            "target_topes": len(inst.base),
            "pool_size": len(inst.pool),
            "combinations_checked": cert.combinations_checked,
            "survivor_count": len(cert.survivors),
        },
        "survivors": [_survivor_entry(s) for s in cert.survivors],
        "restrictions": [],
        "conclusion": {
            "circuits": {
                subset_key(q): str(c)
                for q, c in zip(CIRCUIT_SUPPORTS, cert.conclusion_circuits)
            },
        },
    }


def contradiction_certificate_document(cert: ContradictionCertificate) -> dict[str, Any]:
    doc = search_certificate_document(cert.search)
    return {
        "version": CERTIFICATE_VERSION,
        "instance": {
            "n": FULL_N,
            "source_family": SOURCE_FAMILY,
            "source_rank": SOURCE_RANK,
            "target_family": TARGET_FAMILY,
            "target_rank": TARGET_RANK,
            "intermediate_rank": INTERMEDIATE_RANK,
            "reduction": doc["instance"],
        },
        "counts": {
            "source_topes": cert.source_tope_count,
            "target_topes": cert.target_tope_count,
            "reduction_source_topes": doc["counts"]["source_topes"],
            "reduction_target_topes": doc["counts"]["target_topes"],
            "combinations_checked": cert.search.combinations_checked,
            "survivor_count": len(cert.search.survivors),
        },
        "survivors": doc["survivors"],
        "restrictions": [
            {
                "kept": subset_key(rc.kept),
                "source_restriction_is_alternating": rc.source_restriction_is_alternating,
                "target_restriction_matches": rc.target_restriction_matches,
                "lifted_circuit": str(rc.lifted_circuit),
            }
            for rc in (cert.restriction_a, cert.restriction_b)
        ],
        "conclusion": {
            "premise_strong_map": {
                "holds": cert.premise.holds,
                "method": cert.premise.method,
                "corank": cert.premise.corank,
            },
            "search_verified": cert.search_verified,
            "circuit_a": str(cert.restriction_a.lifted_circuit),
            "circuit_b": str(cert.restriction_b.lifted_circuit),
            "contradiction": cert.circuits_conflict,
            "verdict": cert.verdict,
            "assumptions": [
                {
                    "name": a.name,
                    "statement": a.statement,
                    "verified": a.verified,
                    "note": a.note,
                }
                for a in cert.assumptions
            ],
        },
    }


def certificate_document(cert: SearchCertificate | ContradictionCertificate) -> dict[str, Any]:
    if isinstance(cert, ContradictionCertificate):
        return contradiction_certificate_document(cert)
    return search_certificate_document(cert)


def serialize_certificate(cert: SearchCertificate | ContradictionCertificate | dict) -> bytes:
    doc = cert if isinstance(cert, dict) else certificate_document(cert)
    return (json.dumps(doc, indent=2, ensure_ascii=False) + "\n").encode("utf-8")


def search_certificate_from_document(doc: dict[str, Any]) -> SearchCertificate:
    """Rebuild the in-memory search certificate from its document form."""
    inst_doc = doc["instance"]
    inst = SearchInstance(
        n=inst_doc["n"],
        rank=inst_doc["rank"],
        choose=inst_doc["choose"],
        base=tuple(SignedVector.parse(s) for s in inst_doc["base_topes"]),
        pool=tuple(SignedVector.parse(s) for s in inst_doc["pool_topes"]),
    )
    survivors = tuple(
        SurvivorRecord(
            topes=tuple(SignedVector.parse(s) for s in entry["topes"]),
            vc_witnesses=tuple(
                (parse_subset_key(k), SignedVector.parse(v))
                for k, v in entry["vc_witnesses"].items()
            ),
            excluded_absent=tuple(entry["excluded_check"].items()),
            circuits=tuple(
                (parse_subset_key(k), SignedVector.parse(v))
                for k, v in entry["circuits"].items()
            ),
        )
        for entry in doc["survivors"]
    )
    circuits = doc["conclusion"]["circuits"]
    conclusion = tuple(SignedVector.parse(circuits[subset_key(q)]) for q in CIRCUIT_SUPPORTS)
    return SearchCertificate(
        instance=inst,
        combinations_checked=doc["counts"]["combinations_checked"],
        survivors=survivors,
        conclusion_circuits=(conclusion[0], conclusion[1]),
    )


# ----------------------------------------------------------------------
# validation
# ----------------------------------------------------------------------


def _validate_survivors(
    problems: list[str],
    doc: dict[str, Any],
    base: tuple[str, ...],
    pool: tuple[str, ...],
    n: int,
    rank: int,
) -> None:
    base_set = set(base)
    member_set = base_set | set(pool)
    pool_index = {t: i for i, t in enumerate(pool)}
    expected_circuits = dict(zip(CIRCUIT_SUPPORTS, FORCED_CIRCUITS))

    seen: set[frozenset[str]] = set()
    prev_rank = -1
    for idx, entry in enumerate(doc["survivors"]):
        tag = f"survivor {idx}"
        topes = entry["topes"]
        if len(topes) != len(base) + doc["instance"].get("choose", 10):
            problems.append(f"{tag}: expected 16 topes, found {len(topes)}")
            continue
        tset = frozenset(topes)
        if len(tset) != len(topes):
            problems.append(f"{tag}: duplicate topes")
            continue
        if not base_set <= tset:
            problems.append(f"{tag}: base topes missing")
            continue
        if not tset <= member_set:
            problems.append(f"{tag}: topes outside the instance pool")
            continue
        if tset in seen:
            problems.append(f"{tag}: duplicates another survivor")
        seen.add(tset)

        picks = tuple(sorted(pool_index[t] for t in tset - base_set))
        combo_rank = _combination_rank(picks, len(pool))
        if combo_rank <= prev_rank:
            problems.append(f"{tag}: out of enumeration order")
        prev_rank = combo_rank

        try:
            tope_set = TopeSet(n, rank, frozenset(SignedVector.parse(t) for t in topes))
        except ValueError as exc:
            problems.append(f"{tag}: malformed tope: {exc}")
            continue

        report = check_uniform_tope_axioms(tope_set)
        if not report.passed:
            problems.append(f"{tag}: fails the uniform tope-set axioms")
            continue
        stated = {k: v for k, v in entry["vc_witnesses"].items()}
        for q, w in report.witnesses:
            if stated.get(subset_key(q)) != str(w):
                problems.append(f"{tag}: witness for {subset_key(q)} is not the first avoided pattern")
                break
        for tope, absent in entry["excluded_check"].items():
            if tope not in EXCLUDED_TOPES:
                problems.append(f"{tag}: unexpected exclusion entry {tope}")
            elif not absent or tope in tset:
                problems.append(f"{tag}: excluded tope {tope} present")
        for q, expected in expected_circuits.items():
            stated_circuit = entry["circuits"].get(subset_key(q))
            if stated_circuit != expected:
                problems.append(f"{tag}: circuit on {subset_key(q)} is {stated_circuit}, expected {expected}")
                continue
            if str(circuit_on_support(tope_set, q)) != expected:
                problems.append(f"{tag}: stated circuit on {subset_key(q)} does not match the tope set")


def _combination_rank(combo: tuple[int, ...], n: int) -> int:
    rank = 0
    prev = -1
    k = len(combo)
    for i, c in enumerate(combo):
        for x in range(prev + 1, c):
            rank += math.comb(n - x - 1, k - i - 1)
        prev = c
    return rank


def _validate_search_core(problems: list[str], doc: dict[str, Any]) -> None:
    inst_doc = doc["instance"]
    fresh = build_search_instance()
    base = tuple(str(t) for t in fresh.base)
    pool = tuple(str(t) for t in fresh.pool)
    if tuple(inst_doc["base_topes"]) != base:
        problems.append("instance base topes differ from the generated target topes")
    if tuple(inst_doc["pool_topes"]) != pool:
        problems.append("instance pool topes differ from the generated pool")

    counts = doc["counts"]
    expected_combos = math.comb(len(pool), fresh.choose)
    if counts["combinations_checked"] != expected_combos:
        problems.append(
            f"combinations_checked is {counts['combinations_checked']}, expected {expected_combos}"
        )
    if counts["survivor_count"] != len(doc["survivors"]):
        problems.append("survivor_count disagrees with the survivor list")

    stated = doc["conclusion"]["circuits"]
    for q, c in zip(CIRCUIT_SUPPORTS, FORCED_CIRCUITS):
        if stated.get(subset_key(q)) != c:
            problems.append(f"conclusion circuit on {subset_key(q)} is {stated.get(subset_key(q))}, expected {c}")

    _validate_survivors(problems, doc, base, pool, fresh.n, fresh.rank)


def validate_search_document(doc: dict[str, Any]) -> list[str]:
    """Re-check a search certificate document; returns problem descriptions."""
    problems: list[str] = []
    if doc.get("version") != CERTIFICATE_VERSION:
        problems.append(f"unsupported version {doc.get('version')}")
        return problems
    _validate_search_core(problems, doc)
    return problems


def validate_contradiction_document(doc: dict[str, Any]) -> list[str]:
    """Re-check a full pipeline document; returns problem descriptions."""
    problems: list[str] = []
    if doc.get("version") != CERTIFICATE_VERSION:
        problems.append(f"unsupported version {doc.get('version')}")
        return problems

    inner = dict(doc)
    inner["instance"] = doc["instance"]["reduction"]
    inner["counts"] = {
        "combinations_checked": doc["counts"]["combinations_checked"],
        "survivor_count": doc["counts"]["survivor_count"],
    }
    inner["conclusion"] = {
        "circuits": {
            subset_key(CIRCUIT_SUPPORTS[0]): FORCED_CIRCUITS[0],
            subset_key(CIRCUIT_SUPPORTS[1]): FORCED_CIRCUITS[1],
        }
    }
    _validate_search_core(problems, inner)

    counts = doc["counts"]
    premise = verify_premise(FULL_N)
    stated_premise = doc["conclusion"]["premise_strong_map"]
    if not stated_premise.get("holds") or not premise.holds:
        problems.append("premise strong map does not hold")
    if stated_premise.get("corank") != premise.corank:
        problems.append(f"premise corank is {stated_premise.get('corank')}, expected {premise.corank}")

    from .contradiction import source_topes, target_topes

    if counts["source_topes"] != len(source_topes(FULL_N)):
        problems.append("source tope count disagrees with the generated instance")
    if counts["target_topes"] != len(target_topes(FULL_N)):
        problems.append("target tope count disagrees with the generated instance")

    lifted: dict[tuple[int, ...], str] = {}
    for entry in doc["restrictions"]:
        kept = parse_subset_key(entry["kept"])
        if kept not in (KEPT_A, KEPT_B):
            problems.append(f"unexpected kept set {entry['kept']}")
            continue
        if not entry["source_restriction_is_alternating"] or alternating_chirotope(
            FULL_N, SOURCE_RANK
        ).restrict(kept) != alternating_chirotope(REDUCED_N, SOURCE_RANK):
            problems.append(f"source restriction to {entry['kept']} does not reduce correctly")
        if not entry["target_restriction_matches"] or pair_swap_chirotope(FULL_N).restrict(
            kept
        ) != pair_swap_chirotope(REDUCED_N):
            problems.append(f"target restriction to {entry['kept']} does not reduce correctly")
        circuit = SignedVector.parse(entry["lifted_circuit"])
        restricted = str(circuit.restrict(kept))
        if restricted not in FORCED_CIRCUITS:
            problems.append(f"lifted circuit through {entry['kept']} does not restrict to a forced circuit")
        lifted[kept] = entry["lifted_circuit"]
    if set(lifted) != {KEPT_A, KEPT_B}:
        problems.append("restriction entries incomplete")
        return problems

    conclusion = doc["conclusion"]
    if conclusion["circuit_a"] != lifted[KEPT_A] or conclusion["circuit_b"] != lifted[KEPT_B]:
        problems.append("conclusion circuits disagree with the restriction records")
    a = SignedVector.parse(conclusion["circuit_a"])
    b = SignedVector.parse(conclusion["circuit_b"])
    conflict_mask = 0
    for e in CONFLICT_SUPPORT:
        conflict_mask |= 1 << (e - 1)
    if a.support_mask != conflict_mask or b.support_mask != conflict_mask:
        problems.append("lifted circuits are not supported on the shared conflict support")
    if not circuits_conflict(a, b):
        problems.append("lifted circuits do not conflict")
    if conclusion.get("contradiction") is not True:
        problems.append("contradiction flag is not set")
    if conclusion.get("verdict") != "nonfactorizable":
        problems.append(f"verdict is {conclusion.get('verdict')!r}, expected 'nonfactorizable'")
    if conclusion.get("search_verified") is not True:
        problems.append("search stage is not marked verified")
    return problems


def validate_certificate_document(doc: dict[str, Any]) -> list[str]:
    """Dispatch on document flavor: restrictions present means full pipeline."""
    if doc.get("restrictions"):
        return validate_contradiction_document(doc)
    return validate_search_document(doc)
