from dataclasses import dataclass, field

from .constant import ALL_METRICS, METRIC_LABELS, Metric


def metric_key(metric: Metric, k: int) -> str:
    """Flat key such as ``ndcg@10``."""
    return f"{metric.value}@{k}"


@dataclass
class EvalReport:
    """
    Metric values of one run.

    Values are percentages in [0, 100] kept at full precision; tables round them to one
    decimal.

    Attributes:
        name (str): Run label.
        cutoffs (tuple[int, ...]): Reported cutoffs.
        metrics (dict[str, dict[int, float]]): metric name -> cutoff -> mean value in percent.
        per_query (dict[str, dict[str, float]]): query id -> ``metric@k`` -> value in percent.
        n_evaluated (int): Queries with a non-empty relevant set.
        n_skipped (int): Judged queries skipped for an empty relevant set.
        manifest (dict): Run parameters, provider and segment spec.
    """

    name: str
    cutoffs: tuple[int, ...]
    metrics: dict[str, dict[int, float]]
    per_query: dict[str, dict[str, float]] = field(default_factory=dict)
    n_evaluated: int = 0
    n_skipped: int = 0
    manifest: dict = field(default_factory=dict)

    def value(self, metric: Metric, k: int) -> float:
        return self.metrics[metric.value][k]

    def flat(self) -> dict[str, float]:
        return {
            metric_key(Metric(metric), k): value
            for metric, by_k in self.metrics.items()
            for k, value in by_k.items()
        }

    def to_dict(self, include_per_query: bool = True) -> dict:
        data = {
            "name": self.name,
            "cutoffs": list(self.cutoffs),
            "metrics": {
                metric: {str(k): value for k, value in by_k.items()}
                for metric, by_k in self.metrics.items()
            },
            "n_evaluated": self.n_evaluated,
            "n_skipped": self.n_skipped,
            "manifest": self.manifest,
        }
        if include_per_query:
            data["per_query"] = self.per_query
        return data


def format_table(
    rows: list[tuple[str, dict[str, float]]],
    columns: list[str],
    first_header: str = "Run",
    decimals: int = 1,
) -> str:
    """
    Render rows of ``column -> value`` as an aligned plain-text table.
    """
    header = [first_header, *columns]
    body = [
        [label, *(f"{values[c]:.{decimals}f}" if c in values else "-" for c in columns)]
        for label, values in rows
    ]
    widths = [max(len(line[i]) for line in [header, *body]) for i in range(len(header))]

    def render(line: list[str]) -> str:
        cells = [line[0].ljust(widths[0])]
        cells.extend(cell.rjust(width) for cell, width in zip(line[1:], widths[1:]))
        return "  ".join(cells).rstrip()

    separator = "  ".join("-" * width for width in widths)
    return "\n".join([render(header), separator, *(render(line) for line in body)]) + "\n"


def metric_columns(
    cutoffs: tuple[int, ...], metrics: tuple[Metric, ...] = ALL_METRICS
) -> list[str]:
    return [metric_key(metric, k) for metric in metrics for k in cutoffs]


def column_label(key: str) -> str:
    """``ndcg@10`` -> ``nDCG@10``."""
    metric, _, k = key.partition("@")
    return f"{METRIC_LABELS[Metric(metric)]}@{k}"


def format_reports(reports: list[EvalReport], cutoffs: tuple[int, ...]) -> str:
    """Runs as rows and ``Metric@k`` as columns, in the layout of a results table."""
    columns = metric_columns(cutoffs)
    rows = [
        (report.name, {column_label(key): value for key, value in report.flat().items()})
        for report in reports
    ]
    return format_table(rows, [column_label(column) for column in columns])
