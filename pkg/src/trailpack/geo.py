"""Great-circle geodesy and nearest-POI selection with jitter hysteresis.

A spherical Earth model is used throughout (IUGG mean radius); at walking-tour
scale the error against an ellipsoidal model is far below GPS accuracy.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

from .config_model import GeoPoint, TourCollection, TrackFeature
from .errors import StalePoi, UndefinedBearing

EARTH_RADIUS_M = 6_371_008.8

#: Default hysteresis margin applied on top of the fix accuracy, meters.
DEFAULT_MARGIN_M = 5.0

#: Accuracy assigned to fixes sourced from scanned location markers, meters.
QR_MARKER_ACCURACY_M = 2.0

FIX_SOURCES = ("gps", "manual", "qr_marker")


@dataclass(frozen=True)
class GpsFix:
    t: float
    location: GeoPoint
    accuracy_m: float
    source: str = "gps"

    def __post_init__(self):
        if self.accuracy_m <= 0:
            raise ValueError("accuracy_m must be positive")
        if self.source not in FIX_SOURCES:
            raise ValueError(f"unknown fix source {self.source!r}")


@dataclass(frozen=True)
class HighlightState:
    current_poi_id: str | None = None
    since_t: float = 0.0


def haversine_distance(a: GeoPoint, b: GeoPoint) -> float:
    """Great-circle distance in meters on the mean-radius sphere."""
    phi1 = math.radians(a.lat)
    phi2 = math.radians(b.lat)
    dphi = math.radians(b.lat - a.lat)
    dlmb = math.radians(b.lon - a.lon)
    h = math.sin(dphi / 2.0) ** 2 + math.cos(phi1) * math.cos(phi2) * math.sin(dlmb / 2.0) ** 2
    return 2.0 * EARTH_RADIUS_M * math.asin(min(1.0, math.sqrt(h)))


def initial_bearing(a: GeoPoint, b: GeoPoint) -> float:
    """Initial great-circle bearing from a to b, degrees clockwise from north."""
    if a == b:
        raise UndefinedBearing("bearing undefined for coincident points")
    phi1 = math.radians(a.lat)
    phi2 = math.radians(b.lat)
    dlmb = math.radians(b.lon - a.lon)
    y = math.sin(dlmb) * math.cos(phi2)
    x = math.cos(phi1) * math.sin(phi2) - math.sin(phi1) * math.cos(phi2) * math.cos(dlmb)
    if abs(y) < 1e-15 and abs(x) < 1e-15:
        raise UndefinedBearing("bearing undefined for antipodal points")
    return math.degrees(math.atan2(y, x)) % 360.0


def nearest_poi(fix: GpsFix, c: TourCollection) -> tuple[str, float]:
    """POI minimizing great-circle distance; ties go to the smallest id."""
    if not c.pois:
        raise ValueError("collection has no POIs")
    best_id = None
    best_d = math.inf
    for poi in c.pois:
        d = haversine_distance(fix.location, poi.location)
        if d < best_d or (d == best_d and (best_id is None or poi.id < best_id)):
            best_id, best_d = poi.id, d
    return best_id, best_d


def select_highlight(prev: HighlightState, fix: GpsFix, c: TourCollection,
                     margin_m: float = DEFAULT_MARGIN_M) -> HighlightState:
    """Evolve the highlighted POI with hysteresis against GPS jitter.

    A candidate replaces the current highlight only when it is closer by more
    than max(margin_m, fix accuracy); an empty state adopts the nearest POI
    unconditionally.
    """
    if margin_m < 0:
        raise ValueError("margin_m must be >= 0")
    cand_id, cand_d = nearest_poi(fix, c)
    if prev.current_poi_id is None:
        return HighlightState(current_poi_id=cand_id, since_t=fix.t)
    current = c.poi_by_id(prev.current_poi_id)
    if current is None:
        raise StalePoi(prev.current_poi_id)
    if cand_id == prev.current_poi_id:
        return prev
    current_d = haversine_distance(fix.location, current.location)
    if cand_d < current_d - max(margin_m, fix.accuracy_m):
        return HighlightState(current_poi_id=cand_id, since_t=fix.t)
    return prev


def _to_vec(p: GeoPoint):
    phi = math.radians(p.lat)
    lmb = math.radians(p.lon)
    return (math.cos(phi) * math.cos(lmb), math.cos(phi) * math.sin(lmb), math.sin(phi))


def _angle(u, v) -> float:
    cross = (
        u[1] * v[2] - u[2] * v[1],
        u[2] * v[0] - u[0] * v[2],
        u[0] * v[1] - u[1] * v[0],
    )
    dot = u[0] * v[0] + u[1] * v[1] + u[2] * v[2]
    return math.atan2(math.sqrt(cross[0] ** 2 + cross[1] ** 2 + cross[2] ** 2), dot)


def _point_segment_distance(p: GeoPoint, a: GeoPoint, b: GeoPoint) -> float:
    """Great-circle distance from p to the arc segment a-b, in meters."""
    d_pa = haversine_distance(p, a)
    d_pb = haversine_distance(p, b)
    if a == b:
        return d_pa
    va, vb, vp = _to_vec(a), _to_vec(b), _to_vec(p)
    sigma_ab = _angle(va, vb)
    sigma_ap = d_pa / EARTH_RADIUS_M
    # Along-track angle from a toward b; outside [0, ab] the closest point is
    # an endpoint, otherwise the cross-track foot.
    try:
        bearing_ab = math.radians(initial_bearing(a, b))
        bearing_ap = math.radians(initial_bearing(a, p))
    except UndefinedBearing:
        return min(d_pa, d_pb)
    xt = math.asin(max(-1.0, min(1.0, math.sin(sigma_ap) * math.sin(bearing_ap - bearing_ab))))
    at = math.atan2(math.cos(bearing_ap - bearing_ab) * math.sin(sigma_ap), math.cos(sigma_ap))
    if at < 0.0 or at > sigma_ab:
        return min(d_pa, d_pb)
    return abs(xt) * EARTH_RADIUS_M


def point_to_track_distance(p: GeoPoint, t: TrackFeature) -> float:
    """Minimum great-circle distance from p to any segment of the track."""
    if len(t.points) < 2:
        raise ValueError("track needs at least 2 points")
    return min(
        _point_segment_distance(p, a, b) for a, b in zip(t.points, t.points[1:])
    )
