"""
Two-stage retrieval with Geo-Time re-ranking.

``GtrReranker.prepare`` runs stage 1 and computes every raw signal of a query once;
``GtrReranker.fuse`` turns a prepared query into a fused ranking under any parameters
that share the same stage-1 settings. Grid search and ablation fuse the same prepared
queries many times, so the candidate set never changes between their runs.
"""

import logging
import threading
from dataclasses import dataclass, field
from types import MappingProxyType

from tqdm.contrib.concurrent import thread_map

from geotime_rerank.event_model import Corpus, EventRecord, SegmentSpec
from geotime_rerank.providers import AbstractProvider
from geotime_rerank.retrieval import (
    Bm25Index,
    DenseIndex,
    RetrievalResult,
    RetrieverKind,
    bm25_retrieve,
    dense_retrieve,
)

from .constant import ALL_FEATURES, GTR_LOGGER_NAME, Feature
from .feature_rankings import (
    FeatureRanking,
    category_ranking_from_scores,
    category_scores,
    distance_ranking_from_km,
    latitude_diffs,
    latitude_ranking,
    semantic_ranking,
    temporal_ranking_from_days,
)
from .geo_time import haversine_km, temporal_distance
from .gtr_params import GtrParams
from .rrf import FusedResult, rrf_fuse


@dataclass(frozen=True)
class PreparedQuery:
    """
    Stage-1 candidates of one query and their raw, parameter-free signals.

    Attributes:
        query_id (str): Query event id.
        retrieval (RetrievalResult): Z_retrieve with stage-1 scores.
        retriever (RetrieverKind): Retriever that produced ``retrieval``.
        n_retrieve (int): Stage-1 list size.
        earth_radius_km (float): Radius the distances were computed with.
        distances_km (dict[str, float]): Great-circle distance per candidate.
        latitude_diffs (dict[str, float]): Absolute latitude difference per candidate.
        temporal_days (dict[str, int]): Cyclic day-of-year distance per candidate.
        category_scores (dict[str, float] | None): Snippet cross-scores; None if not computed.
    """

    query_id: str
    retrieval: RetrievalResult
    retriever: RetrieverKind
    n_retrieve: int
    earth_radius_km: float
    distances_km: dict[str, float] = field(default_factory=dict)
    latitude_diffs: dict[str, float] = field(default_factory=dict)
    temporal_days: dict[str, int] = field(default_factory=dict)
    category_scores: dict[str, float] | None = None

    @property
    def candidate_ids(self) -> list[str]:
        return self.retrieval.ids


class GtrReranker:
    """
    Re-ranker bound to one corpus, provider and structured-text spec.

    Indices are built on first use and then shared read-only between worker threads.

    Args:
        corpus (Corpus): Corpus searched by both stages.
        provider (AbstractProvider): Embedding, cross-scoring and entity-extraction provider.
        spec (SegmentSpec): Structured-text spec for stage 1.
        params (GtrParams): Default parameters.
        dense_index (DenseIndex | None): Pre-built dense index under ``spec``.
        bm25_index (Bm25Index | None): Pre-built BM25 index under ``spec``.
        logger (logging.Logger | None): Logger.
    """

    def __init__(
        self,
        corpus: Corpus,
        provider: AbstractProvider,
        spec: SegmentSpec,
        params: GtrParams | None = None,
        dense_index: DenseIndex | None = None,
        bm25_index: Bm25Index | None = None,
        logger: logging.Logger | None = None,
    ) -> None:
        self.corpus = corpus
        self.provider = provider
        self.spec = spec
        self.params = params or GtrParams()
        self.logger = logger or logging.getLogger(GTR_LOGGER_NAME)
        self._dense_index = dense_index
        self._bm25_index = bm25_index
        self._index_lock = threading.Lock()

    @property
    def dense_index(self) -> DenseIndex:
        with self._index_lock:
            if self._dense_index is None:
                self.logger.info(f"Building dense index over {self.corpus.n_z} events")
                self._dense_index = DenseIndex.build(self.corpus, self.spec, self.provider)
            return self._dense_index

    @property
    def bm25_index(self) -> Bm25Index:
        with self._index_lock:
            if self._bm25_index is None:
                self._bm25_index = Bm25Index.from_corpus(self.corpus, self.spec)
            return self._bm25_index

    def _query(self, query: EventRecord | str) -> EventRecord:
        return self.corpus.get(query) if isinstance(query, str) else query

    def retrieve(
        self, query: EventRecord | str, params: GtrParams | None = None
    ) -> RetrievalResult:
        """Stage 1: the top ``n_retrieve`` candidates of the configured retriever."""
        params = params or self.params
        query = self._query(query)
        if params.retriever == RetrieverKind.bm25:
            return bm25_retrieve(query, self.bm25_index, self.spec, params.n_retrieve)
        return dense_retrieve(query, self.dense_index, self.spec, params.n_retrieve, self.provider)

    def prepare(
        self,
        query: EventRecord | str,
        params: GtrParams | None = None,
        features: tuple[Feature, ...] | None = None,
    ) -> PreparedQuery:
        """
        Run stage 1 and compute the raw signals the given features need.

        Args:
            query (EventRecord | str): Query event or its id.
            params (GtrParams | None): Stage-1 settings; defaults to the reranker's params.
            features (tuple[Feature, ...] | None): Features to prepare; defaults to the
                enabled features of ``params``.
        """
        params = params or self.params
        query = self._query(query)
        features = params.features if features is None else tuple(features)
        retrieval = self.retrieve(query, params)
        candidates = [self.corpus.get(event_id) for event_id in retrieval.ids]

        distances = {
            z.id: haversine_km(query.point, z.point, params.earth_radius_km) for z in candidates
        }
        scores = None
        if Feature.category in features:
            scores = category_scores(query, candidates, self.provider)
        return PreparedQuery(
            query_id=query.id,
            retrieval=retrieval,
            retriever=params.retriever,
            n_retrieve=params.n_retrieve,
            earth_radius_km=params.earth_radius_km,
            distances_km=distances,
            latitude_diffs=latitude_diffs(query, candidates),
            temporal_days={z.id: temporal_distance(query.date, z.date) for z in candidates},
            category_scores=scores,
        )

    def feature_rankings(
        self, prepared: PreparedQuery, params: GtrParams
    ) -> list[FeatureRanking]:
        """Rankings of the features enabled in ``params``, in canonical feature order."""
        raw_semantic = prepared.retrieval.raw_ranks
        rankings: list[FeatureRanking] = []
        for feature in params.features:
            if feature == Feature.semantic:
                rankings.append(semantic_ranking(prepared.retrieval.scores, params.w_s))
            elif feature == Feature.category:
                if prepared.category_scores is None:
                    raise ValueError(f"Query {prepared.query_id} was prepared without category")
                rankings.append(category_ranking_from_scores(prepared.category_scores, params.w_c))
            elif feature == Feature.distance:
                rankings.append(
                    distance_ranking_from_km(prepared.distances_km, params.tau_d, params.beta_d)
                )
            elif feature == Feature.latitude:
                rankings.append(
                    latitude_ranking(
                        raw_semantic,
                        prepared.distances_km,
                        prepared.latitude_diffs,
                        params.tau_d,
                        params.tau_phi,
                        params.beta_phi,
                        mode=params.latitude_mode,
                    )
                )
            else:
                rankings.append(temporal_ranking_from_days(prepared.temporal_days))
        return rankings

    def fuse(self, prepared: PreparedQuery, params: GtrParams | None = None) -> FusedResult:
        """
        Stage 2: fuse the enabled feature rankings of a prepared query.

        Raises:
            ValueError: If ``params`` asks for different stage-1 settings than ``prepared``.
        """
        params = params or self.params
        if (
            params.retriever != prepared.retriever
            or params.n_retrieve != prepared.n_retrieve
            or params.earth_radius_km != prepared.earth_radius_km
        ):
            raise ValueError("Prepared query was built with different stage-1 parameters.")
        if len(prepared.retrieval) == 0:
            return FusedResult(MappingProxyType({}), (), (), MappingProxyType({}))
        return rrf_fuse(self.feature_rankings(prepared, params), params.rrf_k, params.n_rerank)

    def rerank(self, query: EventRecord | str, params: GtrParams | None = None) -> FusedResult:
        params = params or self.params
        return self.fuse(self.prepare(query, params), params)

    def prepare_many(
        self,
        query_ids: list[str],
        params: GtrParams | None = None,
        features: tuple[Feature, ...] | None = ALL_FEATURES,
        jobs: int = 1,
    ) -> dict[str, PreparedQuery]:
        """Prepare many queries on a bounded worker pool; the result is keyed by query id."""
        params = params or self.params
        if params.retriever == RetrieverKind.dense:
            _ = self.dense_index
        else:
            _ = self.bm25_index

        def prepare_one(query_id: str) -> PreparedQuery:
            return self.prepare(query_id, params, features)

        if jobs <= 1 or len(query_ids) <= 1:
            prepared = [prepare_one(query_id) for query_id in query_ids]
        else:
            prepared = thread_map(
                prepare_one,
                query_ids,
                max_workers=jobs,
                desc="Preparing queries",
                unit="query",
            )
        return dict(zip(query_ids, prepared))


def gtr_rerank(
    query: EventRecord,
    corpus: Corpus,
    dense_index: DenseIndex,
    params: GtrParams,
    provider: AbstractProvider,
) -> FusedResult:
    """
    Full two-stage run for one query over a pre-built dense index.

    Disabled features are neither computed nor fused.
    """
    reranker = GtrReranker(corpus, provider, dense_index.spec, params, dense_index=dense_index)
    return reranker.rerank(query, params)
