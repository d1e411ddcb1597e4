"""
One function per command. Each returns the JSON document printed on standard output and
writes its tables and result files under ``config.output_dir``.
"""

import json
import logging
import sys
from dataclasses import replace
from pathlib import Path

from geotime_rerank.errors import CorpusValidationError, EvaluationError
from geotime_rerank.eval import (
    Judgments,
    ablation,
    compare_segments,
    evaluate_run,
    format_reports,
    format_segment_table,
    fused_run,
    grid_search_weights,
    load_judgments,
    retrieval_run,
    synth_corpus,
)
from geotime_rerank.event_model import Corpus, ParsedCorpus, load_corpus, serialize_corpus
from geotime_rerank.gtr import ALL_FEATURES, Feature, GtrReranker
from geotime_rerank.providers import AbstractProvider, create_provider
from geotime_rerank.retrieval import DenseIndex, RetrieverKind

from .constant import (
    ABLATION_REPORT_FILE,
    ABLATION_TABLE_FILE,
    CACHE_SUBDIR,
    EVAL_REPORT_FILE,
    EVAL_TABLE_FILE,
    GRID_REPORT_FILE,
    GRID_TABLE_FILE,
    INDEX_SUBDIR,
    SEGMENTS_REPORT_FILE,
    SEGMENTS_TABLE_FILE,
    SYNTH_CORPUS_FILE,
)
from .geojson_export import rerank_feature_collection
from .run_config import RunConfig

BOOSTED_BM25_FEATURES = (Feature.semantic, Feature.category, Feature.distance)


def emit_diagnostics(diagnostics: list[dict]) -> None:
    """Write validation diagnostics to standard error, one JSON object per line."""
    for diagnostic in diagnostics:
        sys.stderr.write(json.dumps(diagnostic, ensure_ascii=False) + "\n")


def write_json(path: Path, doc: dict) -> None:
    path.parent.mkdir(parents=True, exist_ok=True)
    with open(path, "w", encoding="utf-8") as f:
        json.dump(doc, f, indent=2, sort_keys=True, ensure_ascii=False)
        f.write("\n")


def write_text(path: Path, text: str) -> None:
    path.parent.mkdir(parents=True, exist_ok=True)
    with open(path, "w", encoding="utf-8") as f:
        f.write(text if text.endswith("\n") else text + "\n")


def _require_corpus_path(config: RunConfig) -> Path:
    if not config.corpus_path:
        raise ValueError("corpus_path is required for this command.")
    return Path(config.corpus_path).expanduser()


def _load_parsed(config: RunConfig, logger: logging.Logger) -> ParsedCorpus:
    parsed = load_corpus(_require_corpus_path(config), strict=True, logger=logger)
    if parsed.warnings:
        emit_diagnostics([d.to_dict() for d in parsed.warnings])
    return parsed


def _provider(config: RunConfig, corpus: Corpus, logger: logging.Logger) -> AbstractProvider:
    provider_config = config.provider
    if provider_config.cache_dir is None:
        provider_config = replace(provider_config, cache_dir=str(config.output_path / CACHE_SUBDIR))
    return create_provider(provider_config, corpus=corpus, logger=logger)


def _saved_index(config: RunConfig, corpus: Corpus, logger: logging.Logger) -> DenseIndex | None:
    """The index written by ``embed`` when it still matches the corpus and segment spec."""
    index_dir = config.output_path / INDEX_SUBDIR
    try:
        index = DenseIndex.load(index_dir)
    except FileNotFoundError:
        return None
    if index.spec != config.segments.to_spec() or list(index.ids) != corpus.ids:
        logger.info(f"Ignoring stale dense index in {index_dir}")
        return None
    return index


def _reranker(config: RunConfig, corpus: Corpus, logger: logging.Logger) -> GtrReranker:
    provider = _provider(config, corpus, logger)
    return GtrReranker(
        corpus,
        provider,
        config.segments.to_spec(),
        config.gtr,
        dense_index=_saved_index(config, corpus, logger),
        logger=logger,
    )


def _judgments(config: RunConfig, corpus: Corpus, logger: logging.Logger) -> Judgments:
    if config.judgments_path:
        judgments = load_judgments(
            Path(config.judgments_path),
            corpus=corpus,
            symmetric=config.symmetric_judgments,
            logger=logger,
        )
    else:
        judgments = Judgments.from_corpus(corpus, config.symmetric_judgments, logger=logger)
    if not judgments.evaluable_ids:
        raise EvaluationError("No judged query has a non-empty relevant set.")
    return judgments


def _require_query_id(config: RunConfig) -> str:
    if not config.query_id:
        raise ValueError("A query id is required for this command.")
    return config.query_id


def _manifest(config: RunConfig, provider: AbstractProvider, judgments: Judgments) -> dict:
    return {**config.manifest(), "provider": provider.manifest(), "judgments": judgments.manifest()}


def cmd_ingest(config: RunConfig, logger: logging.Logger) -> dict:
    """
    Validate a corpus file.

    Raises:
        CorpusValidationError: If any line has a hard error; every diagnostic is on stderr.
    """
    parsed = load_corpus(_require_corpus_path(config), strict=False, logger=logger)
    diagnostics = [d.to_dict() for d in parsed.diagnostics]
    emit_diagnostics(diagnostics)
    if not parsed.ok:
        raise CorpusValidationError(
            f"{len(parsed.errors)} invalid corpus line(s)", diagnostics=diagnostics
        )
    return {
        "command": "ingest",
        "corpus_path": config.corpus_path,
        "n_z": parsed.corpus.n_z,
        "errors": 0,
        "warnings": len(parsed.warnings),
        "diagnostics": diagnostics,
    }


def cmd_embed(config: RunConfig, logger: logging.Logger) -> dict:
    """Embed every event's structured text and save the dense index."""
    corpus = _load_parsed(config, logger).corpus
    provider = _provider(config, corpus, logger)
    index = DenseIndex.build(corpus, config.segments.to_spec(), provider)
    index_dir = config.output_path / INDEX_SUBDIR
    index.save(index_dir)
    logger.info(
        f"Embedded {corpus.n_z} events: {provider.stats.computed} computed, "
        f"{provider.stats.cache_hits} from cache"
    )
    return {
        "command": "embed",
        "n_z": corpus.n_z,
        "dimension": index.dimension,
        "computed": provider.stats.computed,
        "cache_hits": provider.stats.cache_hits,
        "index_dir": str(index_dir),
        "segment_spec": index.spec.to_dict(),
        "provider": provider.manifest(),
    }


def cmd_retrieve(config: RunConfig, logger: logging.Logger) -> dict:
    """Stage-1 candidates of one query under the configured retriever."""
    query_id = _require_query_id(config)
    corpus = _load_parsed(config, logger).corpus
    query = corpus.get(query_id)
    reranker = _reranker(config, corpus, logger)
    result = reranker.retrieve(query, config.gtr)
    return {
        "command": "retrieve",
        "query_id": query.id,
        "retriever": config.gtr.retriever.value,
        "n_retrieve": config.gtr.n_retrieve,
        "candidates": [
            {"id": c.id, "score": c.score, "rank": rank}
            for rank, c in enumerate(result.candidates, start=1)
        ],
    }


def cmd_rerank(config: RunConfig, logger: logging.Logger) -> dict:
    """Full two-stage run for one query, optionally exported as GeoJSON."""
    query_id = _require_query_id(config)
    corpus = _load_parsed(config, logger).corpus
    query = corpus.get(query_id)
    reranker = _reranker(config, corpus, logger)
    fused = reranker.rerank(query, config.gtr)
    doc = fused.to_dict(query.id, config.gtr.to_dict())
    doc["command"] = "rerank"

    write_json(config.output_path / f"rerank_{query.id}.json", doc)
    if config.geojson:
        geojson_path = config.output_path / f"rerank_{query.id}.geojson"
        collection = rerank_feature_collection(query, corpus, fused, config.gtr)
        write_json(geojson_path, collection)
        doc["geojson_path"] = str(geojson_path)
    return doc


def cmd_eval(config: RunConfig, logger: logging.Logger) -> dict:
    """
    Evaluate dense retrieval, BM25 retrieval, BM25 with boosting and GT-R side by side.
    """
    corpus = _load_parsed(config, logger).corpus
    judgments = _judgments(config, corpus, logger)
    reranker = _reranker(config, corpus, logger)
    query_ids = judgments.evaluable_ids
    cutoffs = tuple(config.cutoffs)
    manifest = _manifest(config, reranker.provider, judgments)

    dense_params = replace(config.gtr, retriever=RetrieverKind.dense)
    bm25_params = replace(config.gtr, retriever=RetrieverKind.bm25)
    boosted_params = bm25_params.with_features(BOOSTED_BM25_FEATURES)
    dense_prepared = reranker.prepare_many(query_ids, dense_params, jobs=config.jobs)
    bm25_prepared = reranker.prepare_many(
        query_ids, bm25_params, BOOSTED_BM25_FEATURES, jobs=config.jobs
    )

    runs = {
        "dense": retrieval_run(dense_prepared),
        "bm25": retrieval_run(bm25_prepared),
        "bm25_boosted": fused_run(reranker, bm25_prepared, boosted_params),
        "gtr": fused_run(reranker, dense_prepared, dense_params),
    }
    run_params = {
        "dense": dense_params,
        "bm25": bm25_params,
        "bm25_boosted": boosted_params,
        "gtr": dense_params,
    }
    reports = [
        evaluate_run(
            run,
            judgments,
            cutoffs,
            name=name,
            manifest={**manifest, "gtr": run_params[name].to_dict()},
            logger=logger,
        )
        for name, run in runs.items()
    ]

    doc = {
        "command": "eval",
        "manifest": manifest,
        "reports": [report.to_dict(include_per_query=False) for report in reports],
    }
    write_json(
        config.output_path / EVAL_REPORT_FILE,
        {**doc, "reports": [report.to_dict() for report in reports]},
    )
    write_text(config.output_path / EVAL_TABLE_FILE, format_reports(reports, cutoffs))
    return doc


def cmd_grid(config: RunConfig, logger: logging.Logger) -> dict:
    """Grid search over semantic/category weights summing to one."""
    corpus = _load_parsed(config, logger).corpus
    judgments = _judgments(config, corpus, logger)
    reranker = _reranker(config, corpus, logger)
    params = config.gtr.with_features(ALL_FEATURES)
    result = grid_search_weights(
        reranker,
        judgments,
        params,
        step=config.grid_step,
        cutoffs=tuple(config.cutoffs),
        jobs=config.jobs,
        logger=logger,
    )
    doc = {
        "command": "grid-search",
        "manifest": _manifest(config, reranker.provider, judgments),
        **result.to_dict(),
    }
    write_json(config.output_path / GRID_REPORT_FILE, doc)
    write_text(config.output_path / GRID_TABLE_FILE, result.format_table())
    return doc


def cmd_ablate(config: RunConfig, logger: logging.Logger) -> dict:
    """Baseline plus one run per removed feature."""
    corpus = _load_parsed(config, logger).corpus
    judgments = _judgments(config, corpus, logger)
    reranker = _reranker(config, corpus, logger)
    params = config.gtr.with_features(ALL_FEATURES)
    result = ablation(
        reranker, judgments, params, cutoffs=tuple(config.cutoffs), jobs=config.jobs, logger=logger
    )
    doc = {
        "command": "ablate",
        "manifest": _manifest(config, reranker.provider, judgments),
        **result.to_dict(),
    }
    write_json(config.output_path / ABLATION_REPORT_FILE, doc)
    write_text(config.output_path / ABLATION_TABLE_FILE, result.format_table())
    return doc


def cmd_synth(config: RunConfig, logger: logging.Logger) -> dict:
    """Write the planted-cluster fixture corpus; related ids carry its judgments."""
    corpus, judgments = synth_corpus(config.seed, config.synth.n_events, config.synth.n_clusters)
    corpus_path = (
        Path(config.corpus_path).expanduser()
        if config.corpus_path
        else config.output_path / SYNTH_CORPUS_FILE
    )
    corpus_path.parent.mkdir(parents=True, exist_ok=True)
    with open(corpus_path, "wb") as f:
        f.write(serialize_corpus(corpus))
    logger.info(f"Wrote {corpus.n_z} synthetic events to {corpus_path}")
    return {
        "command": "synth",
        "corpus_path": str(corpus_path),
        "seed": config.seed,
        "n_z": corpus.n_z,
        "n_clusters": config.synth.n_clusters,
        "judgments": judgments.manifest(),
    }


def cmd_compare_segments(config: RunConfig, logger: logging.Logger) -> dict:
    """Recall and HitRate of BM25 and dense retrieval for every input-segment variant."""
    corpus = _load_parsed(config, logger).corpus
    judgments = _judgments(config, corpus, logger)
    provider = _provider(config, corpus, logger)
    n_retrieve = config.gtr.n_retrieve
    rows = compare_segments(corpus, judgments, provider, n_retrieve=n_retrieve, logger=logger)
    doc = {
        "command": "compare-segments",
        "manifest": _manifest(config, provider, judgments),
        "rows": [row.to_dict() for row in rows],
    }
    write_json(config.output_path / SEGMENTS_REPORT_FILE, doc)
    write_text(config.output_path / SEGMENTS_TABLE_FILE, format_segment_table(rows, n_retrieve))
    return doc


COMMAND_HANDLERS = {
    "ingest": cmd_ingest,
    "embed": cmd_embed,
    "retrieve": cmd_retrieve,
    "rerank": cmd_rerank,
    "eval": cmd_eval,
    "grid-search": cmd_grid,
    "ablate": cmd_ablate,
    "synth": cmd_synth,
    "compare-segments": cmd_compare_segments,
}
