"""Deterministic trace replay producing the guidance the visitor app would show.

The replay is a single-threaded fold over the trace: each fix evolves the
highlighted POI through the hysteresis rule, and each step emits one event.
Event streams serialize to NDJSON with a fixed key order so repeated runs are
byte-identical.
"""
from __future__ import annotations

import csv
import io
import json
from dataclasses import dataclass

from .config_model import GeoPoint, TourCollection
from .errors import (
    EmptyCollection,
    InvalidTraceCoordinate,
    MalformedLine,
    NonMonotonicTime,
    StalePoi,
)
from .geo import (
    DEFAULT_MARGIN_M,
    GpsFix,
    HighlightState,
    haversine_distance,
    point_to_track_distance,
    select_highlight,
)
from .provisioning import Bundle

DEFAULT_ARRIVAL_M = 15.0
DEFAULT_PREVIEW_CAP = 280

ELLIPSIS = "…"


@dataclass(frozen=True)
class TracePoint:
    t: float
    location: GeoPoint
    accuracy_m: float


@dataclass(frozen=True)
class GuidanceEvent:
    t: float
    fix: GpsFix
    highlight: str
    distance_m: float
    changed: bool
    within_arrival: bool
    off_track_m: float | None = None


@dataclass(frozen=True)
class ScreenState:
    map_center: GeoPoint
    visible_pois: tuple[str, ...]
    highlight: str
    image_ref: str | None
    distance_text: str
    description_preview: str
    truncated: bool


@dataclass(frozen=True)
class VisitSummary:
    pois_visited: tuple[str, ...]
    pois_total: int
    path_length_m: float
    duration_s: float


def parse_trace(text: str) -> list[TracePoint]:
    """Parse a CSV trace of ``t,lat,lon,accuracy`` lines; header optional."""
    points: list[TracePoint] = []
    reader = csv.reader(io.StringIO(text))
    for line_no, row in enumerate(reader, start=1):
        if not row or (len(row) == 1 and not row[0].strip()):
            continue
        if line_no == 1 and not _is_number(row[0]):
            continue  # header row
        if len(row) != 4:
            raise MalformedLine(line_no, f"expected 4 fields, found {len(row)}")
        try:
            t, lat, lon, acc = (float(v) for v in row)
        except ValueError as exc:
            raise MalformedLine(line_no, str(exc)) from exc
        if not (-90.0 <= lat <= 90.0 and -180.0 <= lon <= 180.0):
            raise InvalidTraceCoordinate(line_no)
        if acc <= 0:
            raise MalformedLine(line_no, "accuracy must be positive")
        if points and t <= points[-1].t:
            raise NonMonotonicTime(line_no)
        points.append(TracePoint(t=t, location=GeoPoint(lon=lon, lat=lat), accuracy_m=acc))
    return points


def write_trace(points: list[TracePoint]) -> str:
    out = io.StringIO()
    writer = csv.writer(out, lineterminator="\n")
    writer.writerow(["t", "lat", "lon", "accuracy"])
    for p in points:
        writer.writerow([p.t, p.location.lat, p.location.lon, p.accuracy_m])
    return out.getvalue()


def _is_number(token: str) -> bool:
    try:
        float(token)
        return True
    except ValueError:
        return False


def simulate(
    b: Bundle,
    trace: list[TracePoint],
    margin_m: float = DEFAULT_MARGIN_M,
    arrival_m: float = DEFAULT_ARRIVAL_M,
) -> list[GuidanceEvent]:
    """Replay a trace against a bundle, one guidance event per trace point."""
    if margin_m < 0 or arrival_m < 0:
        raise ValueError("margin_m and arrival_m must be >= 0")
    collection = b.collection
    if not collection.pois:
        raise EmptyCollection("bundle collection has no POIs")

    events: list[GuidanceEvent] = []
    state = HighlightState()
    prev_highlight: str | None = None
    for point in trace:
        fix = GpsFix(t=point.t, location=point.location, accuracy_m=point.accuracy_m, source="gps")
        state = select_highlight(state, fix, collection, margin_m)
        poi = collection.poi_by_id(state.current_poi_id)
        distance = haversine_distance(fix.location, poi.location)
        off_track = None
        if collection.tracks:
            off_track = min(point_to_track_distance(fix.location, t) for t in collection.tracks)
        events.append(GuidanceEvent(
            t=point.t,
            fix=fix,
            highlight=state.current_poi_id,
            distance_m=distance,
            changed=state.current_poi_id != prev_highlight,
            within_arrival=distance <= arrival_m,
            off_track_m=off_track,
        ))
        prev_highlight = state.current_poi_id
    return events


def format_distance(distance_m: float) -> str:
    """Short UI label: whole meters below 1 km, tenths of km above."""
    meters = round(distance_m)
    if meters < 1000:
        return f"{meters} m"
    return f"{distance_m / 1000.0:.1f} km"


def truncate_description(text: str, cap: int) -> tuple[str, bool]:
    """Cut text to at most cap characters on a word boundary, with ellipsis.

    The preview never splits a word: the cut lands on the last whitespace run
    at or before cap-1 characters. Text with no usable whitespace falls back
    to a hard cut. The full text stays available on the POI itself.
    """
    if cap < 8:
        raise ValueError("cap must be >= 8")
    if len(text) <= cap:
        return text, False
    head = text[: cap - 1]
    cut = -1
    for i, ch in enumerate(head):
        if ch.isspace():
            cut = i
    if cut <= 0:
        return head + ELLIPSIS, True
    return head[:cut].rstrip() + ELLIPSIS, True


def render_screen_state(
    b: Bundle,
    fix: GpsFix,
    h: HighlightState,
    preview_cap: int = DEFAULT_PREVIEW_CAP,
) -> ScreenState:
    """Project bundle + fix + highlight into the three-pane screen model."""
    if h.current_poi_id is None:
        raise StalePoi(None)
    poi = b.collection.poi_by_id(h.current_poi_id)
    if poi is None:
        raise StalePoi(h.current_poi_id)
    distance = haversine_distance(fix.location, poi.location)
    preview, truncated = truncate_description(poi.description, preview_cap)
    asset = b.assets.get(poi.id)
    return ScreenState(
        map_center=fix.location,
        visible_pois=tuple(p.id for p in b.collection.pois),
        highlight=poi.id,
        image_ref=str(b.root / asset) if asset else None,
        distance_text=format_distance(distance),
        description_preview=preview,
        truncated=truncated,
    )


def summarize(events: list[GuidanceEvent], arrival_m: float = DEFAULT_ARRIVAL_M,
              pois_total: int | None = None) -> VisitSummary:
    """Aggregate one simulate() run into curator-facing coverage numbers."""
    visited: list[str] = []
    for event in events:
        if event.distance_m <= arrival_m and event.highlight not in visited:
            visited.append(event.highlight)
    path_length = 0.0
    for a, b in zip(events, events[1:]):
        path_length += haversine_distance(a.fix.location, b.fix.location)
    duration = events[-1].t - events[0].t if events else 0.0
    return VisitSummary(
        pois_visited=tuple(visited),
        pois_total=pois_total if pois_total is not None else len(visited),
        path_length_m=path_length,
        duration_s=duration,
    )


def event_to_json(event: GuidanceEvent) -> str:
    """One NDJSON line with a fixed key order."""
    payload = {
        "t": event.t,
        "fix": {
            "t": event.fix.t,
            "lon": event.fix.location.lon,
            "lat": event.fix.location.lat,
            "accuracy_m": event.fix.accuracy_m,
            "source": event.fix.source,
        },
        "highlight": event.highlight,
        "distance_m": event.distance_m,
        "changed": event.changed,
        "within_arrival": event.within_arrival,
        "off_track_m": event.off_track_m,
    }
    return json.dumps(payload, ensure_ascii=False)


def events_to_ndjson(events: list[GuidanceEvent]) -> str:
    return "".join(event_to_json(e) + "\n" for e in events)


def event_from_json(line: str) -> GuidanceEvent:
    doc = json.loads(line)
    fix = doc["fix"]
    return GuidanceEvent(
        t=doc["t"],
        fix=GpsFix(t=fix["t"], location=GeoPoint(lon=fix["lon"], lat=fix["lat"]),
                   accuracy_m=fix["accuracy_m"], source=fix["source"]),
        highlight=doc["highlight"],
        distance_m=doc["distance_m"],
        changed=doc["changed"],
        within_arrival=doc["within_arrival"],
        off_track_m=doc.get("off_track_m"),
    )
