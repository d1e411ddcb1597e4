"""
GeoJSON view of one re-ranked query.

Coordinates follow GeoJSON order, ``[longitude, latitude]``. Every feature carries a
``role`` property: ``query``, ``candidate``, ``link``, ``distance_threshold`` or
``latitude_band``.
"""

from geotime_rerank.event_model import Corpus, EventRecord, GeoPoint
from geotime_rerank.gtr import FusedResult, GtrParams, destination_point, haversine_km

from .constant import GEOJSON_CIRCLE_SEGMENTS, GEOJSON_PARALLEL_STEP_DEG


def _position(point: GeoPoint) -> list[float]:
    return [point.longitude, point.latitude]


def _feature(geometry_type: str, coordinates: list, properties: dict) -> dict:
    return {
        "type": "Feature",
        "geometry": {"type": geometry_type, "coordinates": coordinates},
        "properties": properties,
    }


def geodesic_circle(
    center: GeoPoint,
    radius_km: float,
    earth_radius_km: float,
    segments: int = GEOJSON_CIRCLE_SEGMENTS,
) -> list[list[float]]:
    """Closed ring of points at a fixed great-circle distance around ``center``."""
    ring = [
        _position(destination_point(center, 360.0 * i / segments, radius_km, earth_radius_km))
        for i in range(segments)
    ]
    ring.append(ring[0])
    return ring


def _unwrap(ring: list[list[float]]) -> list[list[float]]:
    out = [list(ring[0])]
    for lon, lat in ring[1:]:
        prev = out[-1][0]
        while lon - prev > 180.0:
            lon -= 360.0
        while lon - prev < -180.0:
            lon += 360.0
        out.append([lon, lat])
    return out


def _clip(ring: list[list[float]], meridian: float, keep_west: bool) -> list[list[float]]:
    def inside(p: list[float]) -> bool:
        return p[0] <= meridian if keep_west else p[0] >= meridian

    out = []
    for a, b in zip(ring, ring[1:]):
        if inside(a):
            out.append(a)
        if inside(a) != inside(b):
            t = (meridian - a[0]) / (b[0] - a[0])
            out.append([meridian, a[1] + t * (b[1] - a[1])])
    out.append(out[0])
    return out


def circle_geometry(
    center: GeoPoint,
    radius_km: float,
    earth_radius_km: float,
    segments: int = GEOJSON_CIRCLE_SEGMENTS,
) -> dict:
    """
    GeoJSON geometry of a geodesic circle that stays inside longitudes -180 to 180.

    A circle crossing the antimeridian becomes a two-part ``MultiPolygon``; a circle around
    a pole becomes one ``Polygon`` closed along the pole.
    """
    ring = _unwrap(geodesic_circle(center, radius_km, earth_radius_km, segments))
    if abs(ring[-1][0] - ring[0][0]) > 180.0:
        pole = 90.0 if center.latitude > 0 else -90.0
        points = sorted([(lon + 180.0) % 360.0 - 180.0, lat] for lon, lat in ring[:-1])
        cap = [
            [-180.0, points[0][1]],
            *points,
            [180.0, points[-1][1]],
            [180.0, pole],
            [-180.0, pole],
            [-180.0, points[0][1]],
        ]
        return {"type": "Polygon", "coordinates": [cap]}

    west = min(lon for lon, _ in ring)
    east = max(lon for lon, _ in ring)
    if west >= -180.0 and east <= 180.0:
        return {"type": "Polygon", "coordinates": [ring]}
    meridian = 180.0 if east > 180.0 else -180.0
    shift = -360.0 if east > 180.0 else 360.0
    near = _clip(ring, meridian, keep_west=meridian > 0)
    far = [[lon + shift, lat] for lon, lat in _clip(ring, meridian, keep_west=meridian < 0)]
    return {"type": "MultiPolygon", "coordinates": [[near], [far]]}


def parallel(latitude: float, step_deg: float = GEOJSON_PARALLEL_STEP_DEG) -> list[list[float]]:
    """A line of constant latitude around the globe, west to east."""
    n = round(360.0 / step_deg)
    return [[-180.0 + 360.0 * i / n, latitude] for i in range(n + 1)]


def rerank_feature_collection(
    query: EventRecord, corpus: Corpus, fused: FusedResult, params: GtrParams
) -> dict:
    """
    FeatureCollection of a fused result: the query, its top re-ranked events with their
    rank, a line from the query to each of them, the distance-threshold circle and the
    two latitude-band edges.
    """
    features = [
        _feature(
            "Point",
            _position(query.point),
            {"role": "query", "id": query.id, "title": query.title, "date": query.date.isoformat()},
        )
    ]
    for rank, event_id in enumerate(fused.top_ids, start=1):
        event = corpus.get(event_id)
        properties = {
            "role": "candidate",
            "id": event.id,
            "title": event.title,
            "date": event.date.isoformat(),
            "rank": rank,
            "rrf_score": fused.scores[event_id],
            "km": haversine_km(query.point, event.point, params.earth_radius_km),
        }
        features.append(_feature("Point", _position(event.point), properties))
    features.extend(
        _feature(
            "LineString",
            [_position(query.point), _position(corpus.get(event_id).point)],
            {"role": "link", "id": event_id, "rank": rank},
        )
        for rank, event_id in enumerate(fused.top_ids, start=1)
    )

    circle = circle_geometry(query.point, params.tau_d, params.earth_radius_km)
    features.append(
        _feature(
            circle["type"],
            circle["coordinates"],
            {"role": "distance_threshold", "radius_km": params.tau_d},
        )
    )
    for side, offset in (("south", -params.tau_phi), ("north", params.tau_phi)):
        latitude = max(-90.0, min(90.0, query.latitude + offset))
        features.append(
            _feature(
                "LineString",
                parallel(latitude),
                {"role": "latitude_band", "edge": side, "latitude": latitude},
            )
        )
    return {"type": "FeatureCollection", "features": features}
