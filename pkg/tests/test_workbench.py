"""
Workbench Tests - cache, tracing, settings, report rendering and the
coordinating workbench.
"""

import json
import time
from concurrent.futures import ThreadPoolExecutor
from pathlib import Path

import pytest

from engines.workbench import LogicWorkbench, SessionState
from tools.config import BUNDLED_FIXTURES, Settings
from tools.formula import Prop
from tools.memory_bank import MemoryBank
from tools.observability import ObservabilityLayer
from tools.reporter import ReportGenerator


class TestMemoryBank:
    def setup_method(self):
        self.memory = MemoryBank(max_entries=2)

    def test_set_and_get(self):
        self.memory.set("min", "p", 1)
        assert self.memory.get("min", "p") == 1

    def test_namespaces_are_separate(self):
        self.memory.set("min", "p", 0)
        assert self.memory.get("max", "p") is None

    def test_lru_eviction(self):
        self.memory.set("ns", "a", 1)
        self.memory.set("ns", "b", 2)
        self.memory.get("ns", "a")
        self.memory.set("ns", "c", 3)
        assert self.memory.get("ns", "b") is None
        assert self.memory.get("ns", "a") == 1
        assert self.memory.stats()["evictions"] == 1

    def test_stats_hit_rate(self):
        self.memory.set("ns", "k", "v")
        self.memory.get("ns", "k")     # hit
        self.memory.get("ns", "miss")  # miss
        stats = self.memory.stats()
        assert stats["cache_hits"] == 1
        assert stats["cache_misses"] == 1
        assert stats["hit_rate"] == 50.0

    def test_clear(self):
        self.memory.set("ns", "k", "v")
        self.memory.clear()
        assert self.memory.stats()["total_keys"] == 0

    def test_concurrent_access_under_eviction(self):
        def churn(worker: int) -> int:
            for i in range(2000):
                self.memory.set("ns", (worker, i % 5), i)
                self.memory.get("ns", ((worker + 1) % 8, i % 5))
            return worker

        with ThreadPoolExecutor(max_workers=8) as pool:
            assert sorted(pool.map(churn, range(8))) == list(range(8))
        stats = self.memory.stats()
        assert stats["total_keys"] <= 2
        assert stats["cache_hits"] + stats["cache_misses"] == 8 * 2000


class TestObservabilityLayer:
    def setup_method(self):
        self.obs = ObservabilityLayer(service_name="test_service", max_spans=2)

    def test_span_records_duration(self):
        with self.obs.trace("test_op") as span:
            span.set_attribute("key", "value")
            time.sleep(0.01)
        metrics = self.obs.get_metrics()
        assert metrics["operations"]["test_op"]["count"] == 1
        assert metrics["operations"]["test_op"]["avg_ms"] > 0

    def test_error_tracking(self):
        with pytest.raises(ValueError):
            with self.obs.trace("failing_op"):
                raise ValueError("Test error")
        assert self.obs.get_metrics()["error_count"] == 1
        assert self.obs.get_recent_spans(1)[0]["status"] == "error"

    def test_recent_spans_bounded(self):
        for _ in range(3):
            with self.obs.trace("repeated_op"):
                pass
        assert len(self.obs.get_recent_spans()) == 2
        assert self.obs.get_metrics()["operations"]["repeated_op"]["count"] == 3


class TestSettings:
    def test_defaults(self):
        settings = Settings()
        assert settings.nmax == 8
        assert settings.fixture_dir == BUNDLED_FIXTURES

    def test_from_env(self, monkeypatch, tmp_path):
        monkeypatch.chdir(tmp_path)
        monkeypatch.setenv("LUKA_NMAX", "3")
        monkeypatch.setenv("LUKA_FIXTURE_DIR", str(tmp_path))
        settings = Settings.from_env()
        assert settings.nmax == 3
        assert settings.fixture_dir == Path(tmp_path)

    def test_rejects_bad_bound(self):
        with pytest.raises(ValueError):
            Settings(nmax=0)


class TestReportGenerator:
    def test_unknown_format(self):
        with pytest.raises(ValueError):
            ReportGenerator("xml")

    def test_registry_json(self):
        bench = LogicWorkbench()
        payload = json.loads(ReportGenerator("json").registry(bench.verify_registry()))
        assert {e["scheme_id"] for e in payload} >= {"A1", "DNE", "L15"}
        assert all(e["ok"] for e in payload)


class TestLogicWorkbench:
    def setup_method(self):
        self.bench = LogicWorkbench(Settings(cache_size=10000))

    def test_check_bundled_file(self):
        result = self.bench.check_file(BUNDLED_FIXTURES / "ex-falso.proof")
        assert result.ok
        assert self.bench.session.history[-1]["event"] == "check"

    def test_fixtures_pass(self):
        outcomes = self.bench.run_fixtures()
        assert outcomes
        assert all(o.ok for o in outcomes), [o for o in outcomes if not o.ok]
        assert {"lemma2", "lemma2.proof", "contraposition.proof"} <= {o.name for o in outcomes}

    def test_corrupted_fixture_reported(self, tmp_path):
        (tmp_path / "broken.proof").write_text("1. p ; hyp\n", encoding="utf-8")
        outcomes = {o.name: o for o in self.bench.run_fixtures(tmp_path)}
        assert not outcomes["broken.proof"].ok
        assert outcomes["broken.proof"].reason.startswith("line 1:")

    def test_unparsable_fixture_reported(self, tmp_path):
        (tmp_path / "garbled.proof").write_text("1. p -> ; hyp\n", encoding="utf-8")
        outcomes = {o.name: o for o in self.bench.run_fixtures(tmp_path)}
        assert not outcomes["garbled.proof"].ok

    def test_missing_fixture_dir(self, tmp_path):
        with pytest.raises(FileNotFoundError):
            self.bench.run_fixtures(tmp_path / "absent")

    def test_extend_records_session(self):
        ext = self.bench.extend([Prop("p")], ["p"], 1)
        assert Prop("p") in ext.accepted
        assert self.bench.session.history[-1]["component"] == "consistency_lab"

    def test_metrics(self):
        self.bench.engine.is_tautology(Prop("p"))
        metrics = self.bench.get_metrics()
        assert metrics["memory"]["total_keys"] > 0
        assert "min_value" in metrics["decision_engine"]["operations"]


class TestSessionState:
    def test_add_event(self):
        session = SessionState()
        session.add_event("engine", "decide", {"ok": True})
        assert session.history[0]["data"] == {"ok": True}
