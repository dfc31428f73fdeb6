"""Deterministic text output: CSV tables and key=value score lines.

Everything here formats plain payload dicts (the shape the service returns
as JSON), so command-line and HTTP consumers produce identical bytes.
Floats are written with repr, the shortest round-trip form, which makes
output byte-stable across runs, platforms, and worker counts. Lines end
with a single newline character.
"""

from __future__ import annotations

from typing import Iterable, Mapping, Sequence


def format_number(value) -> str:
    """Shortest exact text form: ints bare, floats via round-trip repr."""
    if isinstance(value, bool):
        raise TypeError("booleans are not numbers here")
    if isinstance(value, int):
        return str(value)
    if isinstance(value, float):
        return repr(value)
    raise TypeError(f"not a number: {value!r}")


def _csv(rows: Iterable[Sequence]) -> str:
    out = []
    for row in rows:
        out.append(",".join(str(c) if isinstance(c, str) else format_number(c) for c in row))
    return "\n".join(out) + "\n"


def score_lines(payload: Mapping) -> str:
    """KEY=value lines for one scored pair: seven closures, three baselines."""
    lines = [f"{name}={format_number(value)}" for name, value in payload["closures"].items()]
    lines += [f"{name}={format_number(value)}" for name, value in payload["baselines"].items()]
    return "\n".join(lines) + "\n"


def rank_csv(payload: Mapping) -> str:
    """Ranked candidates as i,j,score rows (original node ids)."""
    rows: list[Sequence] = [("i", "j", "score")]
    rows += [(row["i"], row["j"], row["score"]) for row in payload["rows"]]
    return _csv(rows)


def eval_trials_csv(payload: Mapping, dataset: str, *, with_timing: bool = False) -> str:
    """One row per (dataset, method, trial) with AP, coverage, and the k-curve.

    Per-pair timing is opt-in because wall-clock noise would break the
    byte-identical reproducibility of the default output.
    """
    k_max = len(next(iter(payload["p_at_k"].values())))
    header = ["dataset", "method", "trial", "ap", "coverage"]
    header += [f"p_at_{k}" for k in range(1, k_max + 1)]
    if with_timing:
        header.append("mean_pair_ms")
    rows: list[Sequence] = [tuple(header)]
    for trial in payload["trials"]:
        for method in payload["methods"]:
            metrics = trial["per_method"][method]
            row = [dataset, method, trial["trial"], metrics["ap"], metrics["coverage"]]
            row += list(metrics["p_at_k"])
            if with_timing:
                row.append(trial["mean_pair_ms"])
            rows.append(tuple(row))
    return _csv(rows)


def eval_summary_csv(payload: Mapping, dataset: str, *, with_timing: bool = False) -> str:
    """Method-by-dataset aggregate table: MAP and coverage per method."""
    header = ["dataset", "method", "map", "coverage"]
    if payload.get("per_node_map") is not None:
        header.append("per_node_map")
    if with_timing:
        header.append("mean_pair_ms")
    rows: list[Sequence] = [tuple(header)]
    for method in payload["methods"]:
        row = [dataset, method, payload["map"][method], payload["coverage"][method]]
        if payload.get("per_node_map") is not None:
            row.append(payload["per_node_map"][method])
        if with_timing:
            row.append(payload["mean_pair_ms"])
        rows.append(tuple(row))
    return _csv(rows)


def precision_curve_csv(payload: Mapping, dataset: str) -> str:
    """Mean precision at k = 1..k_max, one row per method."""
    k_max = len(next(iter(payload["p_at_k"].values())))
    header = ["dataset", "method"] + [f"p_at_{k}" for k in range(1, k_max + 1)]
    rows: list[Sequence] = [tuple(header)]
    for method in payload["methods"]:
        rows.append(tuple([dataset, method] + list(payload["p_at_k"][method])))
    return _csv(rows)


def bench_csv(payload: Mapping) -> str:
    """Single-row timing summary of the per-pair closure computation."""
    rows = [
        ("pairs", "mean_ms", "median_ms", "p99_ms"),
        (payload["pairs"], payload["mean_ms"], payload["median_ms"], payload["p99_ms"]),
    ]
    return _csv(rows)


def report_to_payload(report) -> dict:
    """Flatten an EvalReport into the plain-dict shape used by JSON and CSV."""
    return {
        "methods": list(report.methods),
        "map": dict(report.map_by_method),
        "coverage": dict(report.coverage_by_method),
        "p_at_k": {name: list(curve) for name, curve in report.p_at_k_by_method.items()},
        "mean_pair_ms": report.mean_pair_ms,
        "per_node_map": (
            dict(report.per_node_map_by_method)
            if report.per_node_map_by_method is not None
            else None
        ),
        "trials": [
            {
                "trial": t.trial,
                "n_candidates": t.n_candidates,
                "n_positives": t.n_positives,
                "mean_pair_ms": t.mean_pair_ms,
                "per_method": {
                    name: {
                        "ap": m.ap,
                        "coverage": m.coverage,
                        "p_at_k": list(m.p_at_k),
                    }
                    for name, m in t.per_method.items()
                },
            }
            for t in report.trials
        ],
    }
