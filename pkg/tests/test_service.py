import math
import random

import pytest
from helpers import random_graph

from motifrank.client import ServiceClient, ServiceError
from motifrank.service import create_app


@pytest.fixture()
def client():
    with ServiceClient() as sc:
        yield sc


@pytest.fixture()
def diamond_id(client):
    text = "1 3\n1 4\n2 3\n2 4\n3 4\n"
    return client.load_graph(text)["graph_id"]


@pytest.fixture(scope="module")
def shared_client():
    with ServiceClient() as sc:
        g = random_graph(random.Random(51), 50, 0.15)
        lines = "\n".join(f"{a} {b}" for a, b in g.edge_array().tolist())
        info = sc.load_graph(lines, fmt="edges", name="random50")
        yield sc, info["graph_id"]


class TestGraphLifecycle:
    def test_health(self, client):
        assert client.health()["status"] == "ok"

    def test_create_reports_shape(self, client):
        info = client.load_graph("1 2\n2 3\n", name="tiny")
        assert info["name"] == "tiny"
        assert info["num_nodes"] == 3
        assert info["num_edges"] == 2
        assert info["index_offset"] == 1
        assert info["max_degree"] == 2

    def test_list_get_delete(self, client, diamond_id):
        listed = [row["graph_id"] for row in client.list_graphs()]
        assert diamond_id in listed
        assert client.graph_info(diamond_id)["num_edges"] == 5
        client.delete_graph(diamond_id)
        with pytest.raises(ServiceError) as err:
            client.graph_info(diamond_id)
        assert err.value.status_code == 404

    def test_parse_error_is_bad_request(self, client):
        with pytest.raises(ServiceError) as err:
            client.load_graph("1 2\nbyte\n")
        assert err.value.status_code == 400
        assert "line 2" in str(err.value)


class TestScore:
    def test_original_ids_round_trip(self, client, diamond_id):
        out = client.score(diamond_id, 1, 2)
        assert (out["i"], out["j"]) == (1, 2)
        assert out["closures"]["TRIANGLE"] == 2
        assert out["closures"]["CLIQUE4"] == 1
        assert out["closures"]["PATH4"] == 0
        assert out["baselines"]["CN"] == 2.0
        assert out["baselines"]["JACCARD"] == 1.0
        assert out["baselines"]["ADAMIC_ADAR"] == pytest.approx(2 / math.log(3))

    def test_existing_edge_is_domain_error(self, client, diamond_id):
        with pytest.raises(ServiceError) as err:
            client.score(diamond_id, 3, 4)
        assert err.value.status_code == 400
        assert "existing edge" in str(err.value)

    def test_out_of_range_id_is_domain_error(self, client, diamond_id):
        with pytest.raises(ServiceError) as err:
            client.score(diamond_id, 1, 99)
        assert err.value.status_code == 400
        assert "valid ids" in str(err.value)

    def test_missing_field_is_validation_error(self, diamond_id, client):
        with pytest.raises(ServiceError) as err:
            client._request("POST", f"/graphs/{diamond_id}/score", {"i": 1})
        assert err.value.status_code == 422


class TestRank:
    def test_explicit_candidates(self, client, diamond_id):
        out = client.rank(diamond_id, "triangle", k=2, candidates=[(1, 2), (3, 4)][:1])
        assert out["motif"] == "triangle"
        assert out["rows"] == [{"i": 1, "j": 2, "score": 2}]
        assert out["candidates"] == 1

    def test_all_non_edges_of(self, client, diamond_id):
        out = client.rank(diamond_id, "4-clique", all_non_edges_of=1)
        assert out["rows"][0] == {"i": 1, "j": 2, "score": 1}

    def test_candidate_source_is_exclusive(self, client, diamond_id):
        with pytest.raises(ServiceError) as err:
            client.rank(diamond_id, "triangle", candidates=[(1, 2)], all_non_edges_of=1)
        assert err.value.status_code == 400
        assert "exactly one" in str(err.value)
        with pytest.raises(ServiceError):
            client.rank(diamond_id, "triangle")

    def test_saturated_node_has_nothing_to_rank(self, client):
        gid = client.load_graph("1 2\n1 3\n2 3\n")["graph_id"]
        with pytest.raises(ServiceError) as err:
            client.rank(gid, "triangle", all_non_edges_of=1)
        assert err.value.status_code == 400

    def test_unknown_motif_is_domain_error(self, client, diamond_id):
        with pytest.raises(ServiceError) as err:
            client.rank(diamond_id, "5-wheel", candidates=[(1, 2)])
        assert err.value.status_code == 400

    def test_prune_flag_reported(self, shared_client):
        sc, gid = shared_client
        pruned = sc.rank(gid, "4-clique", k=3, all_non_edges_of=0)
        full = sc.rank(gid, "4-clique", k=3, all_non_edges_of=0, prune=False)
        assert pruned["rows"] == full["rows"]
        assert full["pruned"] == 0
        assert pruned["exact_count_calls"] <= full["exact_count_calls"]


class TestEval:
    def test_default_methods_are_all_nine(self, shared_client):
        sc, gid = shared_client
        out = sc.evaluate(gid, seed=1, trials=2, k_max=3)
        assert len(out["methods"]) == 9
        assert set(out["map"]) == set(out["methods"])
        assert set(out["coverage"]) == set(out["methods"])
        for name, curve in out["p_at_k"].items():
            assert len(curve) == 3, name
        assert len(out["trials"]) == 2
        assert out["per_node_map"] is None
        assert out["mean_pair_ms"] > 0.0

    def test_named_methods_and_per_node(self, shared_client):
        sc, gid = shared_client
        out = sc.evaluate(
            gid,
            seed=1,
            trials=2,
            k_max=2,
            methods=["cn", "motif:4-cycle"],
            per_node_map=True,
        )
        assert out["methods"] == ["cn", "motif:4-cycle"]
        assert set(out["per_node_map"]) == {"cn", "motif:4-cycle"}

    def test_seed_reproducibility(self, shared_client):
        sc, gid = shared_client
        a = sc.evaluate(gid, seed=4, trials=2, k_max=2, methods=["cn"])
        b = sc.evaluate(gid, seed=4, trials=2, k_max=2, methods=["cn"])
        # everything but wall-clock timing must match exactly
        assert a["map"] == b["map"]
        assert a["coverage"] == b["coverage"]
        assert a["p_at_k"] == b["p_at_k"]
        for ta, tb in zip(a["trials"], b["trials"]):
            assert ta["per_method"] == tb["per_method"]
            assert ta["n_candidates"] == tb["n_candidates"]

    def test_holdout_bounds_checked_at_boundary(self, shared_client):
        sc, gid = shared_client
        with pytest.raises(ServiceError) as err:
            sc.evaluate(gid, seed=0, holdout_fraction=1.5)
        assert err.value.status_code == 422


class TestBenchAndOracleCheck:
    def test_bench_reports_timing(self, shared_client):
        sc, gid = shared_client
        out = sc.bench(gid, pairs=10, seed=3)
        assert out["pairs"] == 10
        assert len(out["sampled"]) == 10
        assert out["mean_ms"] > 0.0
        again = sc.bench(gid, pairs=10, seed=3)
        assert again["sampled"] == out["sampled"]

    def test_oracle_check_passes(self, shared_client):
        sc, gid = shared_client
        out = sc.oracle_check(gid, pairs=15, seed=2)
        assert out["ok"] is True
        assert out["pairs_checked"] == 15
        assert out["mismatches"] == []

    def test_oracle_check_skips_over_budget(self, shared_client):
        sc, gid = shared_client
        out = sc.oracle_check(gid, pairs=5, seed=2, node_budget=4)
        assert out["pairs_checked"] + out["skipped_over_budget"] == 5

    def test_no_non_edges_to_check(self, client):
        gid = client.load_graph("1 2\n1 3\n2 3\n")["graph_id"]
        with pytest.raises(ServiceError) as err:
            client.oracle_check(gid, pairs=5, seed=0)
        assert err.value.status_code == 400


class TestAppFactory:
    def test_instances_do_not_share_state(self):
        from fastapi.testclient import TestClient

        a = TestClient(create_app())
        b = TestClient(create_app())
        a.post("/graphs", json={"edges_text": "1 2\n"})
        assert a.get("/graphs").json() != []
        assert b.get("/graphs").json() == []
