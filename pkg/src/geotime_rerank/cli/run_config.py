from dataclasses import dataclass, field
from pathlib import Path
from typing import Optional

from geotime_rerank.constant import DEFAULT_OUTPUT_PATH, DEFAULT_SEED
from geotime_rerank.eval.constant import DEFAULT_CUTOFFS, DEFAULT_GRID_STEP
from geotime_rerank.event_model import Segment, SegmentSpec
from geotime_rerank.gtr import GtrParams
from geotime_rerank.providers import ProviderConfig
from geotime_rerank.utils.log_config import LogConfig


@dataclass
class SegmentConfig:
    """
    Structured-text input of stage 1.

    Attributes:
        segments (list[str]): Ordered segment names out of Title, Summary, Location, Date.
        with_prefix (bool): Prefix every segment with its name.
    """

    segments: list[str] = field(default_factory=lambda: [s.value for s in Segment])
    with_prefix: bool = True

    def to_spec(self) -> SegmentSpec:
        return SegmentSpec.from_names(self.segments, self.with_prefix)


@dataclass
class SynthConfig:
    """
    Synthetic corpus size.

    Attributes:
        n_events (int): Number of events.
        n_clusters (int): Number of planted clusters.
    """

    n_events: int = 200
    n_clusters: int = 10

    def __post_init__(self) -> None:
        if not self.n_events >= self.n_clusters >= 1:
            raise ValueError(
                f"Need n_events >= n_clusters >= 1, got {self.n_events}, {self.n_clusters}"
            )


@dataclass
class RunConfig:
    """
    Configuration shared by every command.

    Attributes:
        corpus_path (Optional[str]): JSONL corpus (the synth command writes it).
        judgments_path (Optional[str]): JSONL judgments; None uses the corpus' related ids.
        symmetric_judgments (bool): Mirror every relevance link.
        output_dir (str): Directory for reports, tables, indices and the default cache.
        seed (int): Random seed, recorded in every manifest.
        jobs (int): Worker threads for per-query work.
        query_id (Optional[str]): Query event of the retrieve and rerank commands.
        geojson (bool): Also export the rerank result as GeoJSON.
        grid_step (float): Weight grid step.
        cutoffs (list[int]): Evaluation cutoffs.
        provider (ProviderConfig): Model provider.
        segments (SegmentConfig): Structured-text input.
        gtr (GtrParams): Retrieval and re-ranking parameters.
        synth (SynthConfig): Synthetic corpus size.
        log_config (LogConfig): Logging.
    """

    corpus_path: Optional[str] = None
    judgments_path: Optional[str] = None
    symmetric_judgments: bool = False
    output_dir: str = str(DEFAULT_OUTPUT_PATH)
    seed: int = DEFAULT_SEED
    jobs: int = 1
    query_id: Optional[str] = None
    geojson: bool = False
    grid_step: float = DEFAULT_GRID_STEP
    cutoffs: list[int] = field(default_factory=lambda: list(DEFAULT_CUTOFFS))
    provider: ProviderConfig = field(default_factory=ProviderConfig)
    segments: SegmentConfig = field(default_factory=SegmentConfig)
    gtr: GtrParams = field(default_factory=GtrParams)
    synth: SynthConfig = field(default_factory=SynthConfig)
    log_config: LogConfig = field(default_factory=LogConfig)

    def __post_init__(self) -> None:
        if self.jobs < 1:
            raise ValueError(f"jobs must be >= 1, got {self.jobs}")
        if not self.cutoffs or min(self.cutoffs) < 1:
            raise ValueError(f"cutoffs must be positive, got {self.cutoffs}")

    @property
    def output_path(self) -> Path:
        return Path(self.output_dir).expanduser()

    def manifest(self) -> dict:
        """Run settings recorded next to every result."""
        return {
            "corpus_path": self.corpus_path,
            "judgments_path": self.judgments_path,
            "symmetric_judgments": self.symmetric_judgments,
            "seed": self.seed,
            "segment_spec": self.segments.to_spec().to_dict(),
            "gtr": self.gtr.to_dict(),
        }
