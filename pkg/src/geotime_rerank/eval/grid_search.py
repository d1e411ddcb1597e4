import logging
from dataclasses import dataclass

from geotime_rerank.gtr import ALL_FEATURES, GtrParams, GtrReranker, PreparedQuery

from .constant import (
    DEFAULT_CUTOFFS,
    DEFAULT_GRID_STEP,
    EVAL_LOGGER_NAME,
    OBJECTIVE_CUTOFF,
    OBJECTIVE_METRIC,
    Metric,
)
from .eval_report import EvalReport, column_label, format_table, metric_columns, metric_key
from .evaluator import evaluate_run
from .judgments import Judgments
from .runs import fused_run


@dataclass
class WeightGridPoint:
    """
    One (w_s, w_c) pair with w_s + w_c = 1 and its evaluation.
    """

    w_s: float
    w_c: float
    report: EvalReport

    @property
    def objective(self) -> float:
        return self.report.value(OBJECTIVE_METRIC, OBJECTIVE_CUTOFF)

    def to_dict(self) -> dict:
        return {"w_s": self.w_s, "w_c": self.w_c, "metrics": self.report.to_dict(False)["metrics"]}


@dataclass
class GridSearchResult:
    points: list[WeightGridPoint]
    best: WeightGridPoint

    def to_dict(self) -> dict:
        return {
            "objective": metric_key(OBJECTIVE_METRIC, OBJECTIVE_CUTOFF),
            "best": {"w_s": self.best.w_s, "w_c": self.best.w_c, "value": self.best.objective},
            "points": [point.to_dict() for point in self.points],
        }

    def format_table(self) -> str:
        cutoffs = self.best.report.cutoffs
        columns = metric_columns(cutoffs, (Metric.recall, Metric.ndcg, Metric.mrr))
        rows = [
            (
                f"w_s={p.w_s:g} w_c={p.w_c:g}",
                {column_label(k): v for k, v in p.report.flat().items()},
            )
            for p in self.points
        ]
        return format_table(
            rows, [column_label(c) for c in columns], first_header="Weights"
        )


def weight_grid(step: float = DEFAULT_GRID_STEP) -> list[tuple[float, float]]:
    """
    Every (w_s, w_c) with w_s + w_c = 1 on a grid of ``step``, from w_s = 0 upwards.

    Raises:
        ValueError: If ``step`` does not divide 1 evenly.
    """
    if not 0 < step <= 1:
        raise ValueError(f"step must be in (0, 1], got {step}")
    n = round(1.0 / step)
    if abs(n * step - 1.0) > 1e-9:
        raise ValueError(f"step {step} does not divide 1 evenly")
    return [(round(i / n, 10), round((n - i) / n, 10)) for i in range(n + 1)]


def grid_search_weights(
    reranker: GtrReranker,
    judgments: Judgments,
    params: GtrParams,
    step: float = DEFAULT_GRID_STEP,
    prepared: dict[str, PreparedQuery] | None = None,
    cutoffs: tuple[int, ...] = DEFAULT_CUTOFFS,
    jobs: int = 1,
    logger: logging.Logger | None = None,
) -> GridSearchResult:
    """
    Evaluate GT-R at every semantic/category weight pair summing to one.

    A zero weight removes its feature from the fusion. The best point maximizes nDCG@10;
    ties go to the larger semantic weight.

    Args:
        reranker (GtrReranker): Re-ranker over the evaluated corpus.
        judgments (Judgments): Ground truth.
        params (GtrParams): Template; only the weights (and the features they disable) change.
        step (float): Grid step dividing 1 evenly.
        prepared (dict[str, PreparedQuery] | None): Reused prepared queries.
        cutoffs (tuple[int, ...]): Reported cutoffs; the objective cutoff is always added.
        jobs (int): Worker threads for query preparation.
    """
    logger = logger or logging.getLogger(EVAL_LOGGER_NAME)
    grid = weight_grid(step)
    cutoffs = tuple(sorted({*cutoffs, OBJECTIVE_CUTOFF}))
    if prepared is None:
        prepared = reranker.prepare_many(judgments.evaluable_ids, params, ALL_FEATURES, jobs=jobs)

    points = []
    for w_s, w_c in grid:
        point_params = params.with_weights(w_s, w_c)
        report = evaluate_run(
            fused_run(reranker, prepared, point_params),
            judgments,
            cutoffs,
            name=f"w_s={w_s:g},w_c={w_c:g}",
            manifest={"params": point_params.to_dict()},
            logger=logger,
        )
        points.append(WeightGridPoint(w_s, w_c, report))
        logger.info(
            f"Grid point w_s={w_s:g} w_c={w_c:g}: "
            f"{metric_key(OBJECTIVE_METRIC, OBJECTIVE_CUTOFF)}={points[-1].objective:.2f}"
        )

    best = max(points, key=lambda point: (point.objective, point.w_s))
    return GridSearchResult(points=points, best=best)
