from dataclasses import dataclass, field, replace

from geotime_rerank.retrieval import RetrieverKind
from geotime_rerank.retrieval.constant import DEFAULT_N_RETRIEVE

from .constant import (
    ALL_FEATURES,
    DEFAULT_BETA_D,
    DEFAULT_BETA_PHI,
    DEFAULT_N_RERANK,
    DEFAULT_RRF_K,
    DEFAULT_TAU_D_KM,
    DEFAULT_TAU_PHI_DEG,
    DEFAULT_W_C,
    DEFAULT_W_S,
    EARTH_RADIUS_KM,
    Feature,
    LatitudeMode,
)


@dataclass
class GtrParams:
    """
    Parameters of two-stage retrieval and Geo-Time re-ranking.

    Attributes:
        n_retrieve (int): Stage-1 candidates kept.
        n_rerank (int): Re-ranked events returned.
        tau_d (float): Distance threshold in km; strictly closer candidates are boosted.
        beta_d (float): Distance booster (rank divisor).
        tau_phi (float): Latitude band half-width in degrees.
        beta_phi (float): Latitude booster (rank divisor).
        w_s (float): Semantic weight; the raw rank is divided by it. 0 excludes the feature.
        w_c (float): Category weight; the raw rank is divided by it. 0 excludes the feature.
        rrf_k (float): RRF constant.
        earth_radius_km (float): Sphere radius for haversine distances.
        enabled_features (list[str]): Features taking part in the fusion.
        retriever (RetrieverKind): Stage-1 retriever feeding the semantic feature.
        latitude_mode (LatitudeMode): Seed of the latitude feature.
    """

    n_retrieve: int = DEFAULT_N_RETRIEVE
    n_rerank: int = DEFAULT_N_RERANK
    tau_d: float = DEFAULT_TAU_D_KM
    beta_d: float = DEFAULT_BETA_D
    tau_phi: float = DEFAULT_TAU_PHI_DEG
    beta_phi: float = DEFAULT_BETA_PHI
    w_s: float = DEFAULT_W_S
    w_c: float = DEFAULT_W_C
    rrf_k: float = DEFAULT_RRF_K
    earth_radius_km: float = EARTH_RADIUS_KM
    enabled_features: list[str] = field(default_factory=lambda: [f.value for f in ALL_FEATURES])
    retriever: RetrieverKind = RetrieverKind.dense
    latitude_mode: LatitudeMode = LatitudeMode.semantic_seeded

    def __post_init__(self) -> None:
        self.retriever = RetrieverKind(self.retriever)
        self.latitude_mode = LatitudeMode(self.latitude_mode)
        try:
            features = [Feature(f) for f in self.enabled_features]
        except ValueError as e:
            raise ValueError(
                f"{e}; enabled_features must be drawn from {[f.value for f in ALL_FEATURES]}"
            ) from None
        if not features:
            raise ValueError("enabled_features must not be empty.")
        if len(set(features)) != len(features):
            raise ValueError(f"enabled_features has duplicates: {self.enabled_features}")
        # canonical order keeps serialized params stable
        self.enabled_features = [f.value for f in ALL_FEATURES if f in features]

        if self.n_retrieve < 1:
            raise ValueError(f"n_retrieve must be >= 1, got {self.n_retrieve}")
        if not 1 <= self.n_rerank <= self.n_retrieve:
            raise ValueError(
                f"n_rerank must be in [1, n_retrieve={self.n_retrieve}], got {self.n_rerank}"
            )
        for name in ("beta_d", "beta_phi", "rrf_k", "earth_radius_km"):
            if not getattr(self, name) > 0:
                raise ValueError(f"{name} must be > 0, got {getattr(self, name)}")
        for name in ("tau_d", "tau_phi"):
            if getattr(self, name) < 0:
                raise ValueError(f"{name} must be >= 0, got {getattr(self, name)}")
        for name, feature in (("w_s", Feature.semantic), ("w_c", Feature.category)):
            weight = getattr(self, name)
            if weight < 0:
                raise ValueError(f"{name} must be >= 0, got {weight}")
            if weight > 1:
                raise ValueError(f"{name} must be <= 1, got {weight}")
            if weight == 0 and feature in features:
                raise ValueError(f"{name} = 0 requires the {feature.value} feature to be disabled")

    @property
    def features(self) -> tuple[Feature, ...]:
        return tuple(Feature(f) for f in self.enabled_features)

    def is_enabled(self, feature: Feature) -> bool:
        return feature.value in self.enabled_features

    def with_features(self, features: list[Feature] | tuple[Feature, ...]) -> "GtrParams":
        return replace(self, enabled_features=[Feature(f).value for f in features])

    def without_feature(self, feature: Feature) -> "GtrParams":
        return self.with_features([f for f in self.features if f != feature])

    def with_weights(self, w_s: float, w_c: float) -> "GtrParams":
        """
        Copy with new weights; a zero weight disables its feature.
        """
        features = [
            f
            for f in self.features
            if not (f == Feature.semantic and w_s == 0) and not (f == Feature.category and w_c == 0)
        ]
        return replace(self, w_s=w_s, w_c=w_c, enabled_features=[f.value for f in features])

    def to_dict(self) -> dict:
        return {
            "n_retrieve": self.n_retrieve,
            "n_rerank": self.n_rerank,
            "tau_d": self.tau_d,
            "beta_d": self.beta_d,
            "tau_phi": self.tau_phi,
            "beta_phi": self.beta_phi,
            "w_s": self.w_s,
            "w_c": self.w_c,
            "rrf_k": self.rrf_k,
            "earth_radius_km": self.earth_radius_km,
            "enabled_features": list(self.enabled_features),
            "retriever": self.retriever.value,
            "latitude_mode": self.latitude_mode.value,
        }
