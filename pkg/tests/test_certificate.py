from __future__ import annotations

import json

import pytest

from omcert.certificate import (
    search_certificate_from_document,
    serialize_certificate,
    validate_certificate_document,
    validate_contradiction_document,
    validate_search_document,
)


@pytest.fixture(scope="module")
def search_doc(search_certificate):
    return json.loads(serialize_certificate(search_certificate))


@pytest.fixture(scope="module")
def contradiction_doc(contradiction_certificate):
    return json.loads(serialize_certificate(contradiction_certificate))


class TestSerialization:
    def test_deterministic_bytes(self, search_certificate):
        assert serialize_certificate(search_certificate) == serialize_certificate(
            search_certificate
        )

    def test_top_level_schema(self, search_doc, contradiction_doc):
        for doc in (search_doc, contradiction_doc):
            assert list(doc) == [
                "version",
                "instance",
                "counts",
                "survivors",
                "restrictions",
                "conclusion",
            ]
            assert doc["version"] == 1

    def test_search_counts(self, search_doc):
        assert search_doc["counts"]["combinations_checked"] == 184756
        assert search_doc["counts"]["survivor_count"] == 20
        assert search_doc["counts"]["source_topes"] == 26
        assert search_doc["counts"]["target_topes"] == 6

    def test_survivor_entry_shape(self, search_doc):
        entry = search_doc["survivors"][0]
        assert len(entry["topes"]) == 16
        assert entry["circuits"] == {"1,2,3,4": "+-+-00", "1,2,5,6": "+-00-+"}
        assert set(entry["excluded_check"]) == {"+-+---", "+----+"}
        assert len(entry["vc_witnesses"]) == 15

    def test_contradiction_conclusion(self, contradiction_doc):
        conclusion = contradiction_doc["conclusion"]
        assert conclusion["circuit_a"] == "+-00-+00"
        assert conclusion["circuit_b"] == "+-00+-00"
        assert conclusion["contradiction"] is True
        assert conclusion["verdict"] == "nonfactorizable"
        assert conclusion["premise_strong_map"]["corank"] == 2

    def test_restriction_entries(self, contradiction_doc):
        kept = [entry["kept"] for entry in contradiction_doc["restrictions"]]
        assert kept == ["1,2,3,4,5,6", "1,2,5,6,7,8"]
        for entry in contradiction_doc["restrictions"]:
            assert entry["source_restriction_is_alternating"] is True
            assert entry["target_restriction_matches"] is True

    def test_round_trip(self, search_certificate, search_doc):
        rebuilt = search_certificate_from_document(search_doc)
        assert serialize_certificate(rebuilt) == serialize_certificate(search_certificate)


class TestValidation:
    def test_emitted_documents_are_clean(self, search_doc, contradiction_doc):
        assert validate_search_document(search_doc) == []
        assert validate_contradiction_document(contradiction_doc) == []

    def test_dispatch_on_flavor(self, search_doc, contradiction_doc):
        assert validate_certificate_document(search_doc) == []
        assert validate_certificate_document(contradiction_doc) == []

    def test_unknown_version_rejected(self, search_doc):
        bad = json.loads(json.dumps(search_doc))
        bad["version"] = 2
        assert validate_search_document(bad)

    def test_corrupt_survivor_tope_detected(self, search_doc):
        bad = json.loads(json.dumps(search_doc))
        pool = bad["instance"]["pool_topes"]
        present = set(bad["survivors"][0]["topes"])
        replacement = next(t for t in pool if t not in present)
        bad["survivors"][0]["topes"][15] = replacement
        assert validate_search_document(bad)

    def test_junk_tope_detected(self, search_doc):
        bad = json.loads(json.dumps(search_doc))
        bad["survivors"][3]["topes"][0] = "000000"
        assert validate_search_document(bad)

    def test_wrong_count_detected(self, search_doc):
        bad = json.loads(json.dumps(search_doc))
        bad["counts"]["combinations_checked"] = 184755
        assert any("combinations_checked" in p for p in validate_search_document(bad))

    def test_dropped_survivor_detected(self, search_doc):
        bad = json.loads(json.dumps(search_doc))
        bad["survivors"] = bad["survivors"][:19]
        assert validate_search_document(bad)

    def test_tampered_circuit_detected(self, contradiction_doc):
        bad = json.loads(json.dumps(contradiction_doc))
        bad["conclusion"]["circuit_b"] = bad["conclusion"]["circuit_a"]
        assert validate_contradiction_document(bad)

    def test_tampered_verdict_detected(self, contradiction_doc):
        bad = json.loads(json.dumps(contradiction_doc))
        bad["conclusion"]["verdict"] = "factorizable"
        assert any("verdict" in p for p in validate_contradiction_document(bad))
