"""Command-line front end.

Every command is a thin client of the HTTP service: by default the service
runs in-process (no socket, nothing to start), and --server redirects the
same calls to a running instance started with `motifrank serve`.

Exit codes: 0 success, 1 usage error, 2 data error (unreadable input,
out-of-range nodes, a candidate pair that is already an edge, ...).
"""

from __future__ import annotations

import sys
from pathlib import Path
from typing import Optional

import click

from .client import ServiceClient, ServiceError
from .errors import GraphParseError, MotifRankError
from .motifs import MotifKind
from .reports import (
    bench_csv,
    eval_summary_csv,
    eval_trials_csv,
    precision_curve_csv,
    rank_csv,
    score_lines,
)

_MOTIF_NAMES = [kind.value for kind in MotifKind]
_FORMAT = click.Choice(["auto", "edges", "mtx"])


@click.group(context_settings={"help_option_names": ["-h", "--help"]})
@click.option("--server", default=None, metavar="URL", help="Use a running service instead of in-process execution.")
@click.pass_context
def main(ctx: click.Context, server: Optional[str]) -> None:
    """Rank candidate links by the higher-order motifs they would close."""
    ctx.obj = {"server": server}


def _client(ctx: click.Context) -> ServiceClient:
    return ServiceClient(ctx.obj["server"])


def _load(client: ServiceClient, graph_path: str, fmt: str) -> dict:
    text = Path(graph_path).read_text()
    return client.load_graph(text, fmt, name=Path(graph_path).stem)


def _emit(content: str, output: Optional[str]) -> None:
    if output is None:
        click.echo(content, nl=False)
    else:
        Path(output).write_text(content, newline="")


@main.command()
@click.argument("graph", type=click.Path())
@click.argument("i", type=int)
@click.argument("j", type=int)
@click.option("--format", "fmt", type=_FORMAT, default="auto", show_default=True, help="Graph file format.")
@click.pass_context
def score(ctx, graph, i, j, fmt):
    """Print all seven closure counts and the three baselines for pair (I, J)."""
    with _client(ctx) as client:
        info = _load(client, graph, fmt)
        payload = client.score(info["graph_id"], i, j)
    click.echo(score_lines(payload), nl=False)


@main.command()
@click.argument("graph", type=click.Path())
@click.option("--motif", type=click.Choice(_MOTIF_NAMES), required=True, help="Motif kind to rank by.")
@click.option("--k", type=int, default=10, show_default=True, help="Number of top pairs to return.")
@click.option("--candidates", "candidates_path", type=click.Path(), default=None, help="File of candidate pairs, one 'u v' per line.")
@click.option("--all-non-edges-of", "source_node", type=int, default=None, help="Rank every non-neighbor of this node instead of a candidates file.")
@click.option("--prune/--no-prune", default=True, show_default=True, help="Skip exact counting when the degree bound cannot reach the top k (output is identical either way).")
@click.option("--format", "fmt", type=_FORMAT, default="auto", show_default=True)
@click.option("--output", type=click.Path(), default=None, help="Write the CSV here instead of stdout.")
@click.pass_context
def rank(ctx, graph, motif, k, candidates_path, source_node, prune, fmt, output):
    """Exact top-k candidate pairs by closure count, as CSV."""
    if (candidates_path is None) == (source_node is None):
        raise click.UsageError("provide exactly one of --candidates, --all-non-edges-of")
    candidates = None
    if candidates_path is not None:
        candidates = _parse_pairs_file(Path(candidates_path).read_text())
    with _client(ctx) as client:
        info = _load(client, graph, fmt)
        payload = client.rank(
            info["graph_id"],
            motif,
            k,
            candidates=candidates,
            all_non_edges_of=source_node,
            prune=prune,
        )
    _emit(rank_csv(payload), output)


@main.command(name="eval")
@click.argument("graph", type=click.Path())
@click.option("--holdout", type=float, default=0.10, show_default=True, help="Fraction of edges held out as positives per trial.")
@click.option("--trials", type=int, default=10, show_default=True)
@click.option("--seed", type=int, default=0, show_default=True)
@click.option("--noise-edges", default="0", show_default=True, help="Spurious edges to add to each training graph: a count, or 'half' for half the loaded graph's edge count.")
@click.option("--kmax", type=int, default=40, show_default=True, help="Precision curve length (k = 1..kmax).")
@click.option("--threads", type=int, default=1, show_default=True, help="Worker threads for candidate scoring; results are identical for any value.")
@click.option("--method", "--methods", "methods", multiple=True, default=("all",), show_default=True, help="Scoring method (repeatable): cn, jaccard, adamic-adar, motif:<kind>, or 'all' for the standard nine.")
@click.option("--per-node-map", is_flag=True, help="Also report MAP averaged per query node.")
@click.option("--with-timing", is_flag=True, help="Add mean per-pair milliseconds to the CSVs (breaks byte-reproducibility).")
@click.option("--dataset", default=None, help="Dataset label in the CSVs (default: graph file stem).")
@click.option("--format", "fmt", type=_FORMAT, default="auto", show_default=True)
@click.option("--trials-out", type=click.Path(), default=None, help="Write the per-trial CSV here.")
@click.option("--summary-out", type=click.Path(), default=None, help="Write the aggregate CSV here (default: stdout).")
@click.option("--curve-out", type=click.Path(), default=None, help="Write the mean precision@k curve CSV here.")
@click.pass_context
def eval_cmd(ctx, graph, holdout, trials, seed, noise_edges, kmax, threads, methods,
             per_node_map, with_timing, dataset, fmt, trials_out, summary_out, curve_out):
    """Hold-out evaluation of motif closures against the baselines, as CSV."""
    with _client(ctx) as client:
        info = _load(client, graph, fmt)
        if noise_edges == "half":
            noise = info["num_edges"] // 2
        else:
            try:
                noise = int(noise_edges)
            except ValueError:
                raise click.UsageError(
                    f"--noise-edges must be an integer or 'half', got {noise_edges!r}"
                ) from None
        payload = client.evaluate(
            info["graph_id"],
            seed=seed,
            holdout_fraction=holdout,
            trials=trials,
            noise_edges=noise,
            k_max=kmax,
            methods=list(methods),
            threads=threads,
            per_node_map=per_node_map,
        )
    name = dataset if dataset is not None else Path(graph).stem
    if trials_out is not None:
        _emit(eval_trials_csv(payload, name, with_timing=with_timing), trials_out)
    if curve_out is not None:
        _emit(precision_curve_csv(payload, name), curve_out)
    summary = eval_summary_csv(payload, name, with_timing=with_timing)
    _emit(summary, summary_out)


@main.command()
@click.argument("graph", type=click.Path())
@click.option("--pairs", type=int, required=True, help="Number of random non-edge pairs to time.")
@click.option("--seed", type=int, default=0, show_default=True, help="Seed for pair selection (selection is reproducible; timings are not).")
@click.option("--format", "fmt", type=_FORMAT, default="auto", show_default=True)
@click.option("--output", type=click.Path(), default=None, help="Write the CSV here instead of stdout.")
@click.pass_context
def bench(ctx, graph, pairs, seed, fmt, output):
    """Time the all-seven closure computation per pair: mean/median/p99 ms CSV."""
    with _client(ctx) as client:
        info = _load(client, graph, fmt)
        payload = client.bench(info["graph_id"], pairs, seed)
    _emit(bench_csv(payload), output)


@main.command(name="oracle-check")
@click.argument("graph", type=click.Path())
@click.option("--pairs", type=int, default=25, show_default=True, help="Random non-edge pairs to verify.")
@click.option("--seed", type=int, default=0, show_default=True)
@click.option("--node-budget", type=int, default=2000, show_default=True, help="Enumeration size limit; pairs whose two-hop ball exceeds it are skipped.")
@click.option("--format", "fmt", type=_FORMAT, default="auto", show_default=True)
@click.pass_context
def oracle_check(ctx, graph, pairs, seed, node_budget, fmt):
    """Compare the fast counter against brute-force enumeration on random pairs."""
    with _client(ctx) as client:
        info = _load(client, graph, fmt)
        payload = client.oracle_check(info["graph_id"], pairs, seed, node_budget)
    click.echo(
        f"pairs_checked={payload['pairs_checked']} "
        f"skipped_over_budget={payload['skipped_over_budget']} "
        f"mismatches={len(payload['mismatches'])}"
    )
    for bad in payload["mismatches"]:
        click.echo(f"mismatch at ({bad['i']}, {bad['j']}): engine={bad['engine']} oracle={bad['oracle']}")
    if not payload["ok"]:
        raise MotifRankError(
            "oracle check failed: counters disagree"
            if payload["mismatches"]
            else "oracle check could not verify any pair within the node budget"
        )
    click.echo("ok")


@main.command()
@click.option("--host", default="127.0.0.1", show_default=True)
@click.option("--port", type=int, default=8000, show_default=True)
def serve(host, port):
    """Run the HTTP service."""
    import uvicorn

    from .service import create_app

    uvicorn.run(create_app(), host=host, port=port)


def _parse_pairs_file(text: str) -> list[tuple[int, int]]:
    pairs = []
    for lineno, line in enumerate(text.splitlines(), start=1):
        s = line.strip()
        if not s or s[0] in "%#":
            continue
        tokens = s.replace(",", " ").split()
        if len(tokens) != 2:
            raise GraphParseError(f"line {lineno}: expected 'u v' pair, got {len(tokens)} tokens")
        try:
            pairs.append((int(tokens[0]), int(tokens[1])))
        except ValueError:
            raise GraphParseError(f"line {lineno}: malformed node id in {s!r}") from None
    if not pairs:
        raise GraphParseError("empty candidates file: no pair lines found")
    return pairs


def entrypoint() -> None:
    """Console entry with the documented exit codes."""
    try:
        main.main(standalone_mode=False)
    except click.exceptions.Exit as exc:
        sys.exit(exc.exit_code)
    except click.exceptions.Abort:
        click.echo("aborted", err=True)
        sys.exit(1)
    except click.ClickException as exc:
        exc.show()
        sys.exit(1)
    except ServiceError as exc:
        click.echo(f"error: {exc}", err=True)
        sys.exit(1 if exc.status_code == 422 else 2)
    except MotifRankError as exc:
        click.echo(f"error: {exc}", err=True)
        sys.exit(2)
    except OSError as exc:
        click.echo(f"error: {exc}", err=True)
        sys.exit(2)


if __name__ == "__main__":
    entrypoint()
