"""
Spatial and temporal signals: great-circle distance, latitude difference, seasonal distance.
"""

import datetime
import math

from geotime_rerank.event_model import EventRecord, GeoPoint, day_of_year
from geotime_rerank.event_model.constant import DAYS_PER_YEAR

from .constant import EARTH_RADIUS_KM


def haversine_km(p: GeoPoint, q: GeoPoint, radius_km: float = EARTH_RADIUS_KM) -> float:
    """
    Great-circle distance in km between two points given in degrees.

    The haversine term is clamped to [0, 1] so rounding never leaves the domain of arcsin.
    """
    phi_p = math.radians(p.latitude)
    phi_q = math.radians(q.latitude)
    d_phi = phi_q - phi_p
    d_lambda = math.radians(q.longitude - p.longitude)
    h = math.sin(d_phi / 2) ** 2 + math.cos(phi_p) * math.cos(phi_q) * math.sin(d_lambda / 2) ** 2
    return 2.0 * radius_km * math.asin(math.sqrt(min(1.0, max(0.0, h))))


def latitude_diff(q: EventRecord, z: EventRecord) -> float:
    """Absolute latitude difference in degrees."""
    return abs(q.latitude - z.latitude)


def temporal_distance(d1: datetime.date, d2: datetime.date) -> int:
    """
    Cyclic distance in days between the days-of-year of two dates, in [0, 182].

    The year is ignored: the same month-day in different years is at distance 0.
    """
    gap = abs(day_of_year(d1) - day_of_year(d2))
    return min(gap, DAYS_PER_YEAR - gap)


def destination_point(
    origin: GeoPoint, bearing_deg: float, distance_km: float, radius_km: float = EARTH_RADIUS_KM
) -> GeoPoint:
    """
    Point reached from ``origin`` along a great circle with the given initial bearing.
    """
    phi_1 = math.radians(origin.latitude)
    lambda_1 = math.radians(origin.longitude)
    theta = math.radians(bearing_deg)
    delta = distance_km / radius_km
    phi_2 = math.asin(
        min(
            1.0,
            max(
                -1.0,
                math.sin(phi_1) * math.cos(delta)
                + math.cos(phi_1) * math.sin(delta) * math.cos(theta),
            ),
        )
    )
    lambda_2 = lambda_1 + math.atan2(
        math.sin(theta) * math.sin(delta) * math.cos(phi_1),
        math.cos(delta) - math.sin(phi_1) * math.sin(phi_2),
    )
    longitude = (math.degrees(lambda_2) + 540.0) % 360.0 - 180.0
    return GeoPoint(max(-90.0, min(90.0, math.degrees(phi_2))), longitude)
