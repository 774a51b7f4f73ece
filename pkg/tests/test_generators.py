import json
import random

import pytest

from vertrel.graph import build_graph, canonical_key, is_connected
from vertrel.generators import (
    CellStats,
    DatasetSpec,
    QuotaError,
    build_dataset,
    gen_ba,
    gen_er,
    gen_ws,
    load_dataset,
    manifest_digest,
    stable_seed,
    write_dataset,
)

from oracles import complete_edges


def spec(**overrides):
    base = dict(orders=(8,), er_count=3, ba_count=2, ws_count=2, master_seed=99)
    base.update(overrides)
    return DatasetSpec(**base)


class TestGenerators:
    def test_er_extremes(self):
        rng = random.Random(0)
        assert gen_er(6, 1.0, rng).m == 15
        assert gen_er(6, 0.0, rng).m == 0

    def test_er_determinism(self):
        a = gen_er(10, 0.3, random.Random(42))
        b = gen_er(10, 0.3, random.Random(42))
        assert a == b

    def test_ba_complete_when_one_newcomer(self):
        g = gen_ba(5, 4, random.Random(1))
        assert g.is_complete()

    def test_ba_min_degree(self):
        for seed in range(15):
            g = gen_ba(12, 2, random.Random(seed))
            assert g.min_degree() >= 2
            g = gen_ba(12, 3, random.Random(seed))
            assert g.min_degree() >= 3

    def test_ba_determinism(self):
        assert gen_ba(12, 2, random.Random(5)) == gen_ba(12, 2, random.Random(5))

    def test_ba_parameter_validation(self):
        with pytest.raises(ValueError):
            gen_ba(4, 1, random.Random(0))
        with pytest.raises(ValueError):
            gen_ba(4, 4, random.Random(0))

    def test_ws_zero_beta_is_ring_lattice(self):
        g = gen_ws(10, 4, 0.0, random.Random(3))
        assert all(d == 4 for d in g.degrees())
        assert g.has_edge(0, 1) and g.has_edge(0, 2) and g.has_edge(0, 8) and g.has_edge(0, 9)

    def test_ws_k2_zero_beta_is_cycle(self):
        g = gen_ws(7, 2, 0.0, random.Random(3))
        expected = build_graph(7, [(i, (i + 1) % 7) for i in range(7)])
        assert g == expected

    def test_ws_determinism_and_validation(self):
        assert gen_ws(11, 4, 0.4, random.Random(9)) == gen_ws(11, 4, 0.4, random.Random(9))
        with pytest.raises(ValueError):
            gen_ws(8, 3, 0.2, random.Random(0))
        with pytest.raises(ValueError):
            gen_ws(8, 8, 0.2, random.Random(0))


class TestStableSeed:
    def test_reproducible_and_distinct(self):
        assert stable_seed(1, "er", 10, 0) == stable_seed(1, "er", 10, 0)
        assert stable_seed(1, "er", 10, 0) != stable_seed(1, "er", 10, 1)
        assert stable_seed(1, "er", 10, 0) != stable_seed(1, "ba", 10, 0)

    def test_known_width(self):
        assert 0 <= stable_seed("x") < 1 << 64


class TestBuildDataset:
    def test_filters_hold(self):
        entries, stats = build_dataset(spec())
        assert len(entries) == 7
        for e in entries:
            assert e.graph.n == 8
            assert is_connected(e.graph)
            assert e.graph.min_degree() >= 2
        assert sum(s.accepted for s in stats) == 7

    def test_pairwise_distinct_canonical_keys(self):
        entries, _ = build_dataset(spec(er_count=10, ba_count=5, ws_count=5))
        keys = [canonical_key(e.graph) for e in entries]
        assert len(set(keys)) == len(keys)

    def test_rebuild_is_identical(self):
        a, _ = build_dataset(spec())
        b, _ = build_dataset(spec())
        assert [(e.graph_id, e.seed, e.graph.edges()) for e in a] == [
            (e.graph_id, e.seed, e.graph.edges()) for e in b
        ]

    def test_zero_probability_quota_failure(self):
        with pytest.raises(QuotaError, match="acceptance rate"):
            build_dataset(spec(er_p=0.0, ba_count=0, ws_count=0, max_attempts=50))

    def test_model_streams_independent(self):
        # dropping one model's quota must not shift the other models' graphs
        full, _ = build_dataset(spec())
        no_er, _ = build_dataset(spec(er_count=0))
        ba_ws_full = [e.graph.edges() for e in full if e.model != "er"]
        ba_ws_reduced = [e.graph.edges() for e in no_er]
        assert ba_ws_full == ba_ws_reduced

    def test_spec_validation(self):
        with pytest.raises(ValueError):
            spec(er_p=1.5)
        with pytest.raises(ValueError):
            spec(ba_m=1)
        with pytest.raises(ValueError):
            spec(ws_k=3)
        with pytest.raises(ValueError):
            spec(orders=())
        with pytest.raises(ValueError):
            spec(ws_k=8)  # needs ws_k < n for the order 8


class TestDatasetFiles:
    def test_roundtrip(self, tmp_path):
        entries, stats = build_dataset(spec())
        manifest = write_dataset(entries, spec(), stats, tmp_path / "ds")
        loaded, manifest2 = load_dataset(tmp_path / "ds")
        assert manifest2 == manifest
        assert [(e.graph_id, e.graph) for e in loaded] == [
            (e.graph_id, e.graph) for e in entries
        ]

    def test_rewrite_is_byte_identical(self, tmp_path):
        entries, stats = build_dataset(spec())
        write_dataset(entries, spec(), stats, tmp_path / "a")
        write_dataset(entries, spec(), stats, tmp_path / "b")
        for name in sorted(p.name for p in (tmp_path / "a").iterdir()):
            assert (tmp_path / "a" / name).read_bytes() == (tmp_path / "b" / name).read_bytes()

    def test_tampered_manifest_rejected(self, tmp_path):
        entries, stats = build_dataset(spec())
        write_dataset(entries, spec(), stats, tmp_path / "ds")
        manifest_path = tmp_path / "ds" / "manifest.json"
        manifest = json.loads(manifest_path.read_text())
        manifest["graphs"][0]["seed"] += 1
        manifest_path.write_text(json.dumps(manifest))
        with pytest.raises(ValueError, match="manifest hash"):
            load_dataset(tmp_path / "ds")

    def test_digest_ignores_existing_hash_field(self):
        manifest = {"a": 1, "manifest_hash": "bogus"}
        assert manifest_digest(manifest) == manifest_digest({"a": 1})
