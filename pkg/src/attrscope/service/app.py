"""HTTP JSON API over the diagnostics engine.

Every response body is canonical JSON (sorted keys, shortest round-trip
floats, null for undefined), so identical requests against the same
dataset return byte-identical payloads.
"""

from __future__ import annotations

import mimetypes
from pathlib import Path

import numpy as np
from fastapi import FastAPI, Query, Request, Response

from ..canonical import canonical_json_bytes
from ..clustering import ClusterParams, cluster_group
from ..coexistence import coexistence_table, pairwise_matrix
from ..embedding import EmbeddingParams
from ..errors import (
    EmbeddingNotReadyError,
    EngineError,
    NumericalFailureError,
    UnknownGroupError,
    UnknownImageError,
    ValidationError,
)
from ..geometry import select_in_polygon
from ..metrics import attribute_set_patterns, error_rates, group_metrics_table
from ..model import Space
from ..views import gallery_buckets, image_detail
from . import schemas
from .state import COMPUTING, FAILED, AppState, build_state


def _json(payload, status_code: int = 200) -> Response:
    return Response(
        content=canonical_json_bytes(payload),
        status_code=status_code,
        media_type="application/json",
    )


def _status_for(exc: EngineError) -> int:
    if isinstance(exc, (UnknownImageError, UnknownGroupError)):
        return 404
    if isinstance(exc, EmbeddingNotReadyError):
        return 409
    if isinstance(exc, NumericalFailureError):
        return 500
    if isinstance(exc, ValidationError):
        return 400
    return 500


def _summary_payload(dataset) -> dict:
    return schemas.DatasetSummary(
        name=dataset.name,
        A=dataset.n_attributes,
        F=dataset.n_features,
        record_count=dataset.n_images,
        attributes=list(dataset.catalog.names),
    ).model_dump()


def _metrics_payload(table) -> dict:
    rows = []
    for row in table.rows:
        counts = row.counts
        rows.append(
            schemas.AttributeMetricsRow(
                attribute=row.attribute,
                name=row.name,
                tp=counts.tp,
                tn=counts.tn,
                fp=counts.fp,
                fn=counts.fn,
                positives=counts.tp + counts.fn,
                accuracy=row.accuracy,
                precision=row.precision,
                recall=row.recall,
                f1=row.f1,
            )
        )
    return schemas.MetricsTableModel(group_id=table.group_id, rows=rows).model_dump()


def create_app(
    manifest_path=None,
    cache_dir=None,
    default_seed: int = 0,
    static_dir=None,
) -> FastAPI:
    app = FastAPI(title="attrscope", version="0.1.0")
    state = build_state(manifest_path=manifest_path, cache_dir=cache_dir, default_seed=default_seed)
    app.state.engine = state

    @app.exception_handler(EngineError)
    async def engine_error_handler(_request: Request, exc: EngineError):
        return _json(exc.payload(), status_code=_status_for(exc))

    def embedding_params_from_model(model: schemas.EmbeddingParamsModel) -> EmbeddingParams:
        seed = model.seed if model.seed is not None else state.default_seed
        return EmbeddingParams(
            space=Space(model.space),
            method=model.method,
            seed=seed,
            perplexity=model.perplexity,
            iterations=model.iterations,
            learning_rate=model.learning_rate,
            exaggeration=model.exaggeration,
        )

    def ready_embedding(params: EmbeddingParams):
        """Fetch a ready embedding, starting the computation when absent."""
        entry = state.start_embedding(params)
        if entry.status == COMPUTING:
            raise EmbeddingNotReadyError(
                "embedding is still computing", detail={"params": params.to_payload()}
            )
        if entry.status == FAILED:
            raise entry.error
        return entry.embedding

    @app.post("/api/dataset/load")
    def load_dataset_endpoint(body: schemas.LoadDatasetRequest):
        dataset = state.load_manifest(body.manifest)
        return _json(_summary_payload(dataset))

    @app.get("/api/dataset")
    def dataset_summary():
        return _json(_summary_payload(state.require_dataset()))

    @app.get("/api/images")
    def image_index():
        dataset = state.require_dataset()
        rates = error_rates(dataset)
        return _json(
            {
                "ids": list(dataset.ids),
                "error_rates": [float(r) for r in rates],
                "act_counts": [int(c) for c in dataset.act.sum(axis=1)],
                "act_sets": [
                    [int(a) for a in np.flatnonzero(row)] for row in dataset.act
                ],
            }
        )

    @app.get("/api/embedding")
    def embedding_endpoint(
        space: str,
        method: str = "tsne",
        seed: int | None = None,
        perplexity: float = 30.0,
        iterations: int = 1000,
        learning_rate: float = 200.0,
        exaggeration: float = 12.0,
    ):
        state.require_dataset()
        params = embedding_params_from_model(
            schemas.EmbeddingParamsModel(
                space=space,
                method=method,
                seed=seed,
                perplexity=perplexity,
                iterations=iterations,
                learning_rate=learning_rate,
                exaggeration=exaggeration,
            )
        )
        entry = state.start_embedding(params)
        if entry.status == COMPUTING:
            return _json({"status": "computing", "params": params.to_payload()}, status_code=202)
        if entry.status == FAILED:
            raise entry.error
        payload = entry.embedding.to_payload()
        payload["status"] = "ready"
        return _json(payload)

    @app.get("/api/images/{image_id}/detail")
    def image_detail_endpoint(image_id: str):
        dataset = state.require_dataset()
        return _json(image_detail(dataset, image_id))

    @app.get("/api/images/{image_id}/thumbnail")
    def image_thumbnail(image_id: str):
        dataset = state.require_dataset()
        dataset.index_of(image_id)
        ref = dataset.thumbnails.get(image_id)
        if ref is None:
            raise UnknownImageError(image_id)
        path = Path(ref)
        media_type = mimetypes.guess_type(path.name)[0] or "application/octet-stream"
        return Response(content=path.read_bytes(), media_type=media_type)

    @app.post("/api/groups")
    def create_group(body: schemas.GroupCreateRequest):
        dataset = state.require_dataset()
        if body.image_ids is not None and body.polygon is not None:
            raise ValidationError("provide either image_ids or a polygon, not both")
        if body.image_ids is not None:
            image_ids = list(body.image_ids)
            for image_id in image_ids:
                dataset.index_of(image_id)
        elif body.polygon is not None:
            if body.embedding is None:
                raise ValidationError("polygon selection requires embedding parameters")
            embedding = ready_embedding(embedding_params_from_model(body.embedding))
            image_ids = select_in_polygon(embedding, body.polygon)
        else:
            raise ValidationError("provide image_ids or a polygon")
        group = state.groups.create(body.name, image_ids, color=body.color)
        return _json(group.to_payload(), status_code=201)

    @app.get("/api/groups")
    def list_groups():
        return _json({"groups": [g.to_payload() for g in state.groups.list()]})

    @app.get("/api/groups/{group_id}")
    def get_group(group_id: str):
        return _json(state.groups.get(group_id).to_payload())

    @app.delete("/api/groups/{group_id}")
    def delete_group(group_id: str):
        state.groups.delete(group_id)
        return _json({"deleted": group_id})

    @app.get("/api/groups/{group_id}/metrics")
    def group_metrics(group_id: str):
        dataset = state.require_dataset()
        group = state.groups.get(group_id)
        table = group_metrics_table(dataset, group.image_ids, group_id=group_id)
        return _json(_metrics_payload(table))

    @app.post("/api/groups/{group_id}/cluster")
    def cluster_endpoint(group_id: str, body: schemas.ClusterRequest):
        dataset = state.require_dataset()
        group = state.groups.get(group_id)
        params = ClusterParams(
            method=body.method,
            space=Space(body.space),
            k=body.k,
            eps=body.eps,
            min_pts=body.min_pts,
            seed=body.seed,
            coordinate_source=body.coordinate_source,
        )
        embedding = None
        if params.coordinate_source == "embedded-2d":
            if body.embedding is None:
                raise ValidationError("embedded-2d clustering requires embedding parameters")
            embedding = ready_embedding(embedding_params_from_model(body.embedding))
        result = cluster_group(dataset, group.image_ids, params, embedding=embedding)
        return _json(result.to_payload())

    @app.get("/api/groups/{group_id}/gallery")
    def gallery_endpoint(group_id: str, space: str = "ACT"):
        dataset = state.require_dataset()
        group = state.groups.get(group_id)
        buckets = gallery_buckets(dataset, group.image_ids, Space(space))
        return _json({"space": Space(space).value, "buckets": buckets})

    @app.get("/api/coexistence/matrix")
    def matrix_endpoint(measure: str, layout: str, group: str | None = None):
        dataset = state.require_dataset()
        group_ids = state.groups.get(group).image_ids if group else None
        matrix = pairwise_matrix(dataset, measure, layout, group=group_ids)
        return _json(
            schemas.MatrixModel(
                measure=matrix.measure.value,
                layout=matrix.layout.value,
                attributes=list(matrix.attributes),
                values=[list(row) for row in matrix.values],
            ).model_dump()
        )

    @app.get("/api/coexistence/table")
    def table_endpoint(
        k: int,
        rankBy: str = Query("number"),
        limit: int | None = None,
        group: str | None = None,
    ):
        dataset = state.require_dataset()
        group_ids = state.groups.get(group).image_ids if group else None
        rows = coexistence_table(dataset, k, rank_by=rankBy, limit=limit, group=group_ids)
        return _json(
            schemas.CoexistenceTableModel(
                k=k,
                rank_by=rankBy,
                rows=[
                    schemas.CoexistenceRowModel(
                        combination=list(r.combination),
                        names=list(r.names),
                        number=r.number,
                        corNum=r.cor_num,
                    )
                    for r in rows
                ],
            ).model_dump()
        )

    @app.get("/api/attribute-set")
    def attribute_set_endpoint(attrs: str):
        dataset = state.require_dataset()
        try:
            selected = tuple(int(a) for a in attrs.split(",") if a != "")
        except ValueError:
            raise ValidationError(f"attrs must be comma-separated indices, got {attrs!r}") from None
        patterns = attribute_set_patterns(dataset, selected)
        universe_ids = [i for p in patterns for i in p.image_ids]
        universe_ids.sort(key=dataset.index_of)
        return _json(
            schemas.AttributeSetModel(
                attributes=list(selected),
                names=[dataset.catalog.names[a] for a in selected],
                universe=len(universe_ids),
                universe_ids=universe_ids,
                patterns=[
                    schemas.PatternModel(
                        correct=list(p.correct), count=p.count, image_ids=list(p.image_ids)
                    )
                    for p in patterns
                ],
            ).model_dump()
        )

    if static_dir is not None:
        from fastapi.staticfiles import StaticFiles

        app.mount("/", StaticFiles(directory=static_dir, html=True), name="ui")

    return app
