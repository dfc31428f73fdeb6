"""Client for the HTTP service, used by the command-line front end.

With no server URL the client runs the service in-process (same schemas,
same code paths, no socket); pointing it at a URL switches to real HTTP
against a running server. Responses are plain dicts of the JSON payloads.
"""

from __future__ import annotations

from typing import Optional

import httpx

from .errors import MotifRankError


class ServiceError(MotifRankError):
    """A service request failed; carries the HTTP status code."""

    def __init__(self, status_code: int, message: str):
        super().__init__(message)
        self.status_code = status_code


class ServiceClient:
    """Thin wrapper over the service endpoints."""

    def __init__(self, base_url: Optional[str] = None):
        if base_url is None:
            import warnings

            with warnings.catch_warnings():
                # the bundled starlette warns about its own test client import
                warnings.simplefilter("ignore")
                from fastapi.testclient import TestClient

            from .service import create_app

            self._http = TestClient(create_app(), raise_server_exceptions=False)
        else:
            self._http = httpx.Client(base_url=base_url, timeout=600.0)

    def close(self) -> None:
        self._http.close()

    def __enter__(self) -> "ServiceClient":
        return self

    def __exit__(self, *exc) -> None:
        self.close()

    def _request(self, method: str, path: str, payload: Optional[dict] = None):
        response = self._http.request(method, path, json=payload)
        if response.status_code >= 400:
            try:
                detail = response.json().get("detail", response.text)
            except ValueError:
                detail = response.text
            raise ServiceError(response.status_code, _flatten_detail(detail))
        return response.json()

    # -- endpoints -----------------------------------------------------------

    def health(self) -> dict:
        return self._request("GET", "/health")

    def load_graph(self, edges_text: str, fmt: str = "auto", name: Optional[str] = None) -> dict:
        payload = {"edges_text": edges_text, "format": fmt, "name": name}
        return self._request("POST", "/graphs", payload)

    def list_graphs(self) -> list:
        return self._request("GET", "/graphs")

    def graph_info(self, graph_id: str) -> dict:
        return self._request("GET", f"/graphs/{graph_id}")

    def delete_graph(self, graph_id: str) -> dict:
        return self._request("DELETE", f"/graphs/{graph_id}")

    def score(self, graph_id: str, i: int, j: int) -> dict:
        return self._request("POST", f"/graphs/{graph_id}/score", {"i": i, "j": j})

    def rank(
        self,
        graph_id: str,
        motif: str,
        k: int = 10,
        *,
        candidates: Optional[list[tuple[int, int]]] = None,
        all_non_edges_of: Optional[int] = None,
        prune: bool = True,
    ) -> dict:
        payload = {
            "motif": motif,
            "k": k,
            "candidates": candidates,
            "all_non_edges_of": all_non_edges_of,
            "prune": prune,
        }
        return self._request("POST", f"/graphs/{graph_id}/rank", payload)

    def evaluate(
        self,
        graph_id: str,
        *,
        seed: int,
        holdout_fraction: float = 0.10,
        trials: int = 10,
        noise_edges: int = 0,
        k_max: int = 40,
        methods: Optional[list[str]] = None,
        threads: int = 1,
        per_node_map: bool = False,
    ) -> dict:
        payload = {
            "seed": seed,
            "holdout_fraction": holdout_fraction,
            "trials": trials,
            "noise_edges": noise_edges,
            "k_max": k_max,
            "methods": methods if methods is not None else ["all"],
            "threads": threads,
            "per_node_map": per_node_map,
        }
        return self._request("POST", f"/graphs/{graph_id}/eval", payload)

    def bench(self, graph_id: str, pairs: int, seed: int = 0) -> dict:
        return self._request("POST", f"/graphs/{graph_id}/bench", {"pairs": pairs, "seed": seed})

    def oracle_check(
        self, graph_id: str, pairs: int = 25, seed: int = 0, node_budget: int = 2000
    ) -> dict:
        payload = {"pairs": pairs, "seed": seed, "node_budget": node_budget}
        return self._request("POST", f"/graphs/{graph_id}/oracle-check", payload)


def _flatten_detail(detail) -> str:
    """Make FastAPI validation error payloads readable on one line."""
    if isinstance(detail, str):
        return detail
    if isinstance(detail, list):
        parts = []
        for item in detail:
            loc = ".".join(str(x) for x in item.get("loc", ())) if isinstance(item, dict) else ""
            msg = item.get("msg", str(item)) if isinstance(item, dict) else str(item)
            parts.append(f"{loc}: {msg}" if loc else msg)
        return "; ".join(parts)
    return str(detail)
