import json
import shutil

import pytest

from amalgamkit.errors import ConfigError
from amalgamkit.mtxio import DATA_DIR
from amalgamkit.scenarios import (
    AMBIGUOUS,
    FAIL,
    PASS,
    SCENARIOS,
    SKIPPED,
    ClaimSpec,
    Recorder,
    ScenarioConfig,
    load_claim_table,
    run_scenario,
    verify_all,
)

TABLE = load_claim_table()


class TestClaimTable:
    def test_anchors_nonempty(self):
        for spec in TABLE.values():
            assert spec.topic.strip() and spec.quote.strip()
            assert spec.provenance in {"PAPER", "DERIVED", "TRIVIAL"}
            assert spec.kind in {"value", "multiset", "order"}

    def test_every_claim_belongs_to_a_scenario(self):
        for cid in TABLE:
            assert cid.split(".")[0] in SCENARIOS

    def test_missing_anchor_rejected(self, tmp_path):
        path = tmp_path / "claims.json"
        path.write_text(json.dumps({"claims": [{"id": "S0.x", "topic": "t", "quote": " ",
                                                "expected": 1, "provenance": "PAPER"}]}))
        with pytest.raises(ConfigError):
            load_claim_table(path)

    def test_duplicate_rejected(self, tmp_path):
        c = {"id": "S0.x", "topic": "t", "quote": "q", "expected": 1, "provenance": "PAPER"}
        path = tmp_path / "claims.json"
        path.write_text(json.dumps({"claims": [c, c]}))
        with pytest.raises(ConfigError):
            load_claim_table(path)


class TestRecorder:
    table = {
        "o": ClaimSpec("o", "t", "q", 66, "PAPER", "order"),
        "m": ClaimSpec("m", "t", "q", [1, 2], "PAPER", "multiset"),
        "v": ClaimSpec("v", "t", "q", True, "PAPER"),
    }

    def status(self, cid, value):
        rec = Recorder(self.table)
        rec.claim(cid, lambda: value)
        return rec.reports[0]

    def test_exact_match(self):
        assert self.status("v", True).status == PASS
        assert self.status("v", False).status == FAIL

    def test_multiset_ignores_order(self):
        assert self.status("m", (2, 1)).status == PASS
        assert self.status("m", [2, 2]).status == FAIL

    def test_proper_divisor_is_ambiguous(self):
        assert self.status("o", 33).status == AMBIGUOUS
        assert self.status("o", 66).status == PASS
        assert self.status("o", 5).status == FAIL
        assert self.status("o", 132).status == FAIL

    def test_exception_fails_only_that_claim(self):
        rec = Recorder(self.table)
        rec.claim("v", lambda: 1 / 0)
        rec.claim("o", lambda: 66)
        assert [r.status for r in rec.reports] == [FAIL, PASS]
        assert "ZeroDivisionError" in rec.reports[0].note

    def test_skip_covers_prefix(self):
        rec = Recorder(self.table)
        rec.claim("m", lambda: [1, 2])
        rec.skip("", "no data")
        assert {r.id: r.status for r in rec.reports} == {"m": PASS, "o": SKIPPED, "v": SKIPPED}


class TestConfig:
    def test_unknown_scenario(self):
        with pytest.raises(ConfigError):
            verify_all(ScenarioConfig(scenarios=("S9",)))

    def test_bad_workers(self):
        with pytest.raises(ConfigError):
            ScenarioConfig(workers=0).validate()


class TestFullRun:
    def test_every_claim_reported_once(self, full_report):
        ids = [c.id for c in full_report.claims]
        assert len(ids) == len(set(ids))
        assert set(ids) == set(TABLE)

    def test_no_failures_with_vendored_data(self, full_report):
        failed = [c.id for c in full_report.claims if c.status == FAIL]
        assert failed == []
        assert full_report.ok

    def test_only_order_claims_are_ambiguous(self, full_report):
        amb = {c.id for c in full_report.claims if c.status == AMBIGUOUS}
        assert amb == {"S0.order.y2", "S0.order.g30", "S0.order.g88"}
        for c in full_report.claims:
            if c.status == AMBIGUOUS:
                assert c.expected % c.computed == 0 and c.computed < c.expected

    def test_findings(self, full_report):
        found = {f["id"]: f for f in full_report.findings}
        assert not found["S2.component-choice"]["agrees"]
        assert not found["S3.words.psl32"]["agrees"]

    def test_json_schema(self, full_report):
        doc = json.loads(full_report.to_json())
        assert {"run_id", "config", "claims", "findings", "summary", "boundary"} <= set(doc)
        c = doc["claims"][0]
        assert {"id", "anchor", "expected", "computed", "status", "ms"} <= set(c)
        assert "ms" not in json.loads(full_report.to_json(timing=False))["claims"][0]

    def test_table_lists_every_claim(self, full_report):
        text = full_report.table()
        for c in full_report.claims:
            assert c.id in text


class TestWithoutData:
    @pytest.fixture(scope="class")
    @staticmethod
    def report(tmp_path_factory):
        cfg = ScenarioConfig(cache_dir=str(tmp_path_factory.mktemp("empty")), use_vendored=False)
        return verify_all(cfg)

    def test_data_claims_skipped(self, report):
        status = {c.id: c.status for c in report.claims}
        for cid, s in status.items():
            needs_data = (cid.startswith("S0.") or cid.startswith("S1.co1.")
                          or (cid.startswith("S2.") and cid != "S2.points"))
            if needs_data:
                assert s == SKIPPED, cid
            else:
                assert s == PASS, cid

    def test_skips_are_not_passes(self, report):
        counts = report.counts()
        assert counts[SKIPPED] > 0
        assert counts[PASS] == sum(1 for c in report.claims if c.status == PASS)
        assert report.ok

    def test_s4_needs_no_data(self, tmp_path):
        rec = run_scenario("S4", ScenarioConfig(cache_dir=str(tmp_path), use_vendored=False))
        assert {r.status for r in rec.reports} == {PASS}


def test_a7_path_alone(tmp_path):
    data = tmp_path / "data"
    data.mkdir()
    for name in ("manifest.json", "claims.json", "A7G1-f2r4B0.m1", "A7G1-f2r4B0.m2"):
        shutil.copy(DATA_DIR / name, data / name)
    cfg = ScenarioConfig(data_dir=str(data), cache_dir=str(tmp_path / "cache"), scenarios=("S2",))
    status = {c.id: c.status for c in verify_all(cfg).claims}
    assert all(s == PASS for cid, s in status.items() if cid.startswith("S2.b."))
    assert all(s == SKIPPED for cid, s in status.items() if cid.startswith("S2.a."))
    assert status["S2.cross.agree"] == SKIPPED


def test_parallel_run_matches_serial(vendored_cfg, full_report):
    cfg = ScenarioConfig(cache_dir=vendored_cfg.cache_dir, scenarios=("S1", "S3", "S4"), workers=3)
    par = verify_all(cfg)
    serial = {c.id: (c.status, c.computed) for c in full_report.claims}
    for c in par.claims:
        assert (c.status, c.computed) == serial[c.id]
