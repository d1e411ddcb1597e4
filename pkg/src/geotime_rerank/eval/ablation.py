import logging
from dataclasses import dataclass, field

from geotime_rerank.gtr import ALL_FEATURES, Feature, GtrParams, GtrReranker, PreparedQuery

from .constant import ABLATION_BASELINE, DEFAULT_CUTOFFS, EVAL_LOGGER_NAME
from .eval_report import EvalReport, column_label, format_table, metric_columns
from .evaluator import evaluate_run
from .judgments import Judgments
from .runs import fused_run

ABLATION_ORDER = (
    Feature.latitude,
    Feature.temporal,
    Feature.distance,
    Feature.category,
    Feature.semantic,
)
"""tuple[Feature, ...]: Order in which single-feature removals are reported."""


@dataclass
class AblationRow:
    """
    One ablation run.

    Attributes:
        removed (str): Removed feature, or ``none`` for the baseline.
        report (EvalReport): Evaluation of the run.
        drops (dict[str, float]): ``metric@k`` -> baseline value minus this run's value.
    """

    removed: str
    report: EvalReport
    drops: dict[str, float] = field(default_factory=dict)

    def to_dict(self) -> dict:
        return {
            "removed": self.removed,
            "metrics": self.report.flat(),
            "drops": self.drops,
        }


@dataclass
class AblationResult:
    rows: list[AblationRow]

    @property
    def baseline(self) -> AblationRow:
        return self.rows[0]

    def row(self, removed: str) -> AblationRow:
        return next(row for row in self.rows if row.removed == removed)

    def to_dict(self) -> dict:
        return {"rows": [row.to_dict() for row in self.rows]}

    def format_table(self) -> str:
        columns = metric_columns(self.baseline.report.cutoffs)
        rows = [
            (row.removed, {column_label(k): v for k, v in row.report.flat().items()})
            for row in self.rows
        ]
        return format_table(rows, [column_label(c) for c in columns], first_header="Removed")


def ablation(
    reranker: GtrReranker,
    judgments: Judgments,
    params: GtrParams,
    prepared: dict[str, PreparedQuery] | None = None,
    cutoffs: tuple[int, ...] = DEFAULT_CUTOFFS,
    jobs: int = 1,
    logger: logging.Logger | None = None,
) -> AblationResult:
    """
    Baseline with every feature plus one run per removed feature.

    All runs fuse the same prepared queries, so stage-1 candidates are identical across rows.

    Raises:
        ValueError: If ``params`` does not enable all five features.
    """
    logger = logger or logging.getLogger(EVAL_LOGGER_NAME)
    if set(params.features) != set(ALL_FEATURES):
        raise ValueError("Ablation needs a baseline with all five features enabled.")
    if prepared is None:
        prepared = reranker.prepare_many(judgments.evaluable_ids, params, ALL_FEATURES, jobs=jobs)

    def run(removed: str, run_params: GtrParams) -> EvalReport:
        return evaluate_run(
            fused_run(reranker, prepared, run_params),
            judgments,
            cutoffs,
            name=removed,
            manifest={"params": run_params.to_dict()},
            logger=logger,
        )

    baseline = run(ABLATION_BASELINE, params)
    rows = [AblationRow(ABLATION_BASELINE, baseline, {k: 0.0 for k in baseline.flat()})]
    for feature in ABLATION_ORDER:
        report = run(feature.value, params.without_feature(feature))
        values = report.flat()
        drops = {key: base - values[key] for key, base in baseline.flat().items()}
        rows.append(AblationRow(feature.value, report, drops))
    return AblationResult(rows)
