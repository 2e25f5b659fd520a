"""Operator CLI.

``serve`` runs the HTTP API; the other subcommands are headless clients
over the same engine, emitting the identical canonical JSON/CSV the
endpoints produce, so scripted workflows never need a running server.
"""

from __future__ import annotations

import sys
from pathlib import Path

import click

from .canonical import canonical_json
from .clustering import dbscan, davies_bouldin_score, kmeans, silhouette_score
from .coexistence import coexistence_table, pairwise_matrix
from .embedding import EmbeddingParams, compute_embedding, read_embedding_csv, write_embedding
from .errors import EngineError
from .ingest import load_dataset, read_manifest
from .metrics import group_metrics_table
from .model import Space


def _load(manifest_path: str):
    return load_dataset(read_manifest(manifest_path))


def _read_group_file(path: str | None, default_ids):
    if path is None:
        return list(default_ids)
    lines = Path(path).read_text(encoding="utf-8").splitlines()
    return [line.strip() for line in lines if line.strip()]


@click.group()
def main():
    """Diagnostics for multi-attribute image classifiers."""


@main.command()
@click.option("--manifest", type=click.Path(exists=True), default=None, help="Dataset manifest to load at startup.")
@click.option("--port", envvar="ATTRSCOPE_PORT", default=8000, show_default=True, type=int)
@click.option("--host", default="127.0.0.1", show_default=True)
@click.option("--seed", default=0, show_default=True, type=int, help="Default seed for embedding requests.")
@click.option("--cache-dir", envvar="ATTRSCOPE_CACHE_DIR", type=click.Path(), default=None)
@click.option("--static-dir", type=click.Path(exists=True), default=None, help="Serve the web client from this directory.")
def serve(manifest, port, host, seed, cache_dir, static_dir):
    """Run the HTTP API server."""
    import uvicorn

    from .service import create_app

    app = create_app(
        manifest_path=manifest, cache_dir=cache_dir, default_seed=seed, static_dir=static_dir
    )
    uvicorn.run(app, host=host, port=port)


@main.command()
@click.option("--manifest", type=click.Path(exists=True), required=True)
@click.option("--space", type=click.Choice([s.value for s in Space]), required=True)
@click.option("--method", type=click.Choice(["tsne", "pca"]), default="tsne", show_default=True)
@click.option("--perplexity", default=30.0, show_default=True, type=float)
@click.option("--iterations", default=1000, show_default=True, type=int)
@click.option("--learning-rate", default=200.0, show_default=True, type=float)
@click.option("--exaggeration", default=12.0, show_default=True, type=float)
@click.option("--seed", default=0, show_default=True, type=int)
@click.option("--out", required=True, type=click.Path(), help="Output prefix for the .csv/.json pair.")
def embed(manifest, space, method, perplexity, iterations, learning_rate, exaggeration, seed, out):
    """Project one data space to 2-D and write CSV + JSON sidecar."""
    dataset = _load(manifest)
    params = EmbeddingParams(
        space=Space(space),
        method=method,
        seed=seed,
        perplexity=perplexity,
        iterations=iterations,
        learning_rate=learning_rate,
        exaggeration=exaggeration,
    )
    embedding = compute_embedding(dataset, params)
    csv_path, json_path = write_embedding(embedding, out)
    click.echo(f"wrote {csv_path} and {json_path}")


@main.command()
@click.option("--embedding", "embedding_csv", type=click.Path(exists=True), required=True, help="image_id,x,y CSV.")
@click.option("--group", "group_file", type=click.Path(exists=True), default=None, help="File with one image id per line (default: all embedded ids).")
@click.option("--method", type=click.Choice(["kmeans", "dbscan"]), required=True)
@click.option("--k", default=None, type=int)
@click.option("--eps", default=None, type=float)
@click.option("--min-pts", default=None, type=int)
@click.option("--seed", default=0, show_default=True, type=int)
@click.option("--out", required=True, type=click.Path(), help="Output prefix for labels CSV + scores JSON.")
def cluster(embedding_csv, group_file, method, k, eps, min_pts, seed, out):
    """Cluster embedded coordinates and write labels + validation scores."""
    ids, coords = read_embedding_csv(embedding_csv)
    group = _read_group_file(group_file, ids)
    index = {image_id: i for i, image_id in enumerate(ids)}
    missing = [g for g in group if g not in index]
    if missing:
        raise click.ClickException(f"group ids missing from embedding: {missing}")
    points = coords[[index[g] for g in group]]

    if method == "kmeans":
        if k is None:
            raise click.ClickException("kmeans requires --k")
        run = kmeans(points, k, seed)
        labels = run.labels
        inertia = run.inertia
    else:
        if eps is None or min_pts is None:
            raise click.ClickException("dbscan requires --eps and --min-pts")
        labels = dbscan(points, eps, min_pts)
        inertia = None

    out = Path(out)
    out.parent.mkdir(parents=True, exist_ok=True)
    labels_path = out.with_suffix(".csv")
    with labels_path.open("w", encoding="utf-8") as fh:
        fh.write("image_id,label\n")
        for image_id, label in zip(group, labels):
            fh.write(f"{image_id},{int(label)}\n")
    db, degenerate = davies_bouldin_score(points, labels)
    scores = {
        "k_found": len(set(int(l) for l in labels) - {-1}),
        "inertia": inertia,
        "silhouette": silhouette_score(points, labels),
        "davies_bouldin": db,
        "degenerate_centroids": degenerate,
    }
    scores_path = out.with_suffix(".json")
    scores_path.write_text(canonical_json(scores) + "\n", encoding="utf-8")
    click.echo(f"wrote {labels_path} and {scores_path}")


@main.command()
@click.option("--manifest", type=click.Path(exists=True), required=True)
@click.option("--group", "group_file", type=click.Path(exists=True), default=None, help="File with one image id per line (default: full dataset).")
def metrics(manifest, group_file):
    """Print the per-attribute metrics table as canonical JSON."""
    dataset = _load(manifest)
    group = _read_group_file(group_file, dataset.ids)
    table = group_metrics_table(dataset, group)
    rows = []
    for row in table.rows:
        c = row.counts
        rows.append(
            {
                "attribute": row.attribute,
                "name": row.name,
                "tp": c.tp,
                "tn": c.tn,
                "fp": c.fp,
                "fn": c.fn,
                "positives": c.tp + c.fn,
                "accuracy": row.accuracy,
                "precision": row.precision,
                "recall": row.recall,
                "f1": row.f1,
            }
        )
    click.echo(canonical_json({"group_id": table.group_id, "rows": rows}))


@main.command()
@click.option("--manifest", type=click.Path(exists=True), required=True)
@click.option("--kind", type=click.Choice(["matrix", "table"]), required=True)
@click.option("--measure", type=click.Choice(["correlation", "mutual_information", "conditional_entropy"]), default="correlation", show_default=True)
@click.option("--layout", type=click.Choice(["ACT", "PRD", "cross"]), default="ACT", show_default=True)
@click.option("--k", default=3, show_default=True, type=int)
@click.option("--rank-by", type=click.Choice(["number", "corNum"]), default="number", show_default=True)
@click.option("--limit", default=None, type=int)
def coexist(manifest, kind, measure, layout, k, rank_by, limit):
    """Print co-existence matrices or the combination table as canonical JSON."""
    dataset = _load(manifest)
    if kind == "matrix":
        matrix = pairwise_matrix(dataset, measure, layout)
        payload = {
            "measure": matrix.measure.value,
            "layout": matrix.layout.value,
            "attributes": list(matrix.attributes),
            "values": [list(row) for row in matrix.values],
        }
    else:
        rows = coexistence_table(dataset, k, rank_by=rank_by, limit=limit)
        payload = {
            "k": k,
            "rank_by": rank_by,
            "rows": [
                {
                    "combination": list(r.combination),
                    "names": list(r.names),
                    "number": r.number,
                    "corNum": r.cor_num,
                }
                for r in rows
            ],
        }
    click.echo(canonical_json(payload))


def run():
    try:
        main(standalone_mode=True)
    except EngineError as exc:
        click.echo(canonical_json(exc.payload()), err=True)
        sys.exit(1)


if __name__ == "__main__":
    run()
