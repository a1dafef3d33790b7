from __future__ import annotations

import math
import random
from itertools import combinations

import pytest

from omcert.matroid import (
    check_covector_axioms,
    check_uniform_tope_axioms,
    covectors_from_topes,
)
from omcert.search import (
    EXCLUDED_TOPES,
    FORCED_CIRCUITS,
    SearchCertificate,
    VerificationError,
    advance_combination,
    enumerate_survivors,
    passes_pattern_check,
    unrank_combination,
    verify_search_conclusions,
)
from omcert.signed_vector import SignedVector
from omcert.strong_map import is_strong_map_topes

sv = SignedVector.parse


class TestCombinationPlumbing:
    def test_unrank_matches_itertools(self):
        combos = list(combinations(range(7), 3))
        for rank, combo in enumerate(combos):
            assert tuple(unrank_combination(rank, 7, 3)) == combo

    def test_advance_matches_itertools(self):
        combo = [0, 1, 2]
        seen = [tuple(combo)]
        while advance_combination(combo, 7):
            seen.append(tuple(combo))
        assert seen == list(combinations(range(7), 3))

    def test_unrank_bounds(self):
        with pytest.raises(ValueError):
            unrank_combination(math.comb(7, 3), 7, 3)


class TestInstance:
    def test_sizes(self, search_instance):
        assert len(search_instance.base) == 6
        assert len(search_instance.pool) == 20
        assert search_instance.choose == 10
        assert search_instance.combination_count == 184756

    def test_base_and_pool_disjoint_and_ordered(self, search_instance, alt64):
        base = set(search_instance.base)
        pool = set(search_instance.pool)
        assert not base & pool
        assert base | pool == alt64.topes
        assert list(search_instance.pool) == sorted(
            search_instance.pool, key=SignedVector.order_key
        )

    def test_base_inside_source(self, search_instance, alt64):
        assert set(search_instance.base) <= alt64.topes


class TestEnumeration:
    def test_pinned_counts(self, search_certificate):
        assert search_certificate.combinations_checked == 184756
        assert len(search_certificate.survivors) == 20

    def test_survivors_reverified_by_axiom_checker(self, search_certificate):
        for survivor in search_certificate.survivors:
            report = check_uniform_tope_axioms(survivor.tope_set())
            assert report.passed
            assert len(report.witnesses) == 15

    def test_survivors_contain_base(self, search_certificate, search_instance):
        base = set(search_instance.base)
        for survivor in search_certificate.survivors:
            members = set(survivor.topes)
            assert len(members) == 16
            assert base <= members

    def test_mask_scan_agrees_with_axiom_checker_on_samples(self, search_instance):
        rng = random.Random(20260810)
        base = frozenset(search_instance.base)
        for _ in range(200):
            picks = tuple(sorted(rng.sample(range(20), 10)))
            members = base | {search_instance.pool[i] for i in picks}
            from omcert.matroid import TopeSet

            report = check_uniform_tope_axioms(TopeSet(6, 3, members))
            assert passes_pattern_check(search_instance, picks) == report.passed

    def test_thread_split_gives_same_survivors(self, search_instance, search_certificate):
        cert3 = enumerate_survivors(search_instance, threads=3)
        assert [s.tope_strings() for s in cert3.survivors] == [
            s.tope_strings() for s in search_certificate.survivors
        ]

    def test_bad_thread_count(self, search_instance):
        with pytest.raises(ValueError):
            enumerate_survivors(search_instance, threads=0)


class TestConclusions:
    def test_verify_passes(self, search_certificate):
        assert verify_search_conclusions(search_certificate) is True

    def test_excluded_topes_absent(self, search_certificate):
        for survivor in search_certificate.survivors:
            strings = set(survivor.tope_strings())
            for tope in EXCLUDED_TOPES:
                assert tope not in strings

    def test_forced_circuits(self, search_certificate):
        for survivor in search_certificate.survivors:
            circuits = survivor.circuit_map()
            assert str(circuits[(1, 2, 3, 4)]) == "+-+-00"
            assert str(circuits[(1, 2, 5, 6)]) == "+-00-+"
        assert tuple(str(c) for c in search_certificate.conclusion_circuits) == FORCED_CIRCUITS

    def test_verify_rejects_tampered_certificate(self, search_certificate):
        first = search_certificate.survivors[0]
        bad_survivor = type(first)(
            topes=first.topes,
            vc_witnesses=first.vc_witnesses,
            excluded_absent=((EXCLUDED_TOPES[0], False), (EXCLUDED_TOPES[1], True)),
            circuits=first.circuits,
        )
        tampered = SearchCertificate(
            instance=search_certificate.instance,
            combinations_checked=search_certificate.combinations_checked,
            survivors=(bad_survivor,) + search_certificate.survivors[1:],
            conclusion_circuits=search_certificate.conclusion_circuits,
        )
        with pytest.raises(VerificationError, match="survivor 0"):
            verify_search_conclusions(tampered)

    def test_unique_tope_hitting_each_forced_pattern(self, alt64):
        # the named exclusions are forced: only one source tope restricts to
        # the circuit pattern on each support
        for pattern, support, unique in (
            ("+-+-", (1, 2, 3, 4), "+-+---"),
            ("+--+", (1, 2, 5, 6), "+----+"),
        ):
            target = sv(pattern)
            hits = [
                str(t)
                for t in alt64.ordered()
                if t.restrict(support) in (target, -target)
            ]
            assert hits == [unique]

    def test_conclusion_circuits_perpendicular_to_survivors(self, search_certificate):
        for survivor in search_certificate.survivors:
            for circuit in search_certificate.conclusion_circuits:
                assert all(circuit.perpendicular(t) for t in survivor.topes)


class TestSurvivorsAreOrientedMatroids:
    def test_sandwich_strong_maps(self, search_certificate, alt64, swap6):
        for survivor in search_certificate.survivors:
            ts = survivor.tope_set()
            assert is_strong_map_topes(alt64, ts).holds
            assert is_strong_map_topes(ts, swap6).holds

    def test_sample_survivor_covector_axioms(self, search_certificate):
        for survivor in search_certificate.survivors[:3]:
            report = check_covector_axioms(covectors_from_topes(survivor.tope_set()))
            assert report.passed
