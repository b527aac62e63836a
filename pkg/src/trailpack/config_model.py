"""Tour configuration data model and lossless GeoJSON parsing/serialization.

The on-disk format is an RFC 7946 FeatureCollection carrying the tour profile
documented in docs/format.md: POIs are Point features, recommended tracks are
LineString features, and a ``type`` property discriminates the two roles.
"""
from __future__ import annotations

import json
import re
from dataclasses import dataclass, field

from .errors import (
    DuplicatePoiId,
    InvalidCoordinate,
    InvariantViolation,
    MalformedJson,
    NoPoiFeatures,
    NotFeatureCollection,
    NotUtf8,
)

POI_ID_RE = re.compile(r"[A-Za-z0-9._-]+\Z")

#: Advisory ceiling on POI description length, in whitespace-separated words.
DEFAULT_WORD_BUDGET = 300


@dataclass(frozen=True)
class Diagnostic:
    """Non-fatal finding attached to a document path, e.g. ``features[3].geometry``."""

    path: str
    code: str
    message: str


@dataclass(frozen=True)
class GeoPoint:
    """WGS84 position; serialized as ``[lon, lat]`` per RFC 7946."""

    lon: float
    lat: float

    def __post_init__(self):
        if not (-180.0 <= self.lon <= 180.0 and -90.0 <= self.lat <= 90.0):
            raise InvalidCoordinate("", f"({self.lon}, {self.lat}) outside valid range")


@dataclass
class PoiFeature:
    id: str
    title: str
    description: str
    image_url: str
    location: GeoPoint
    extra: dict = field(default_factory=dict)
    source_index: int = field(default=-1, compare=False)


@dataclass
class TrackFeature:
    points: list[GeoPoint]
    title: str | None = None
    extra: dict = field(default_factory=dict)
    source_index: int = field(default=-1, compare=False)


@dataclass
class CollectionMeta:
    name: str
    version: str
    language: str = ""
    description: str | None = None
    schema_url: str | None = None
    extra: dict = field(default_factory=dict)


@dataclass
class TourCollection:
    meta: CollectionMeta
    pois: list[PoiFeature]
    tracks: list[TrackFeature] = field(default_factory=list)

    def poi_by_id(self, poi_id: str) -> PoiFeature | None:
        for poi in self.pois:
            if poi.id == poi_id:
                return poi
        return None


_META_KEYS = {
    "name": "name",
    "version": "version",
    "language": "language",
    "description": "description",
    "schema": "schema_url",
}
_POI_KEYS = {"type", "id", "title", "description", "image"}
_TRACK_KEYS = {"type", "title"}


def _coerce_point(coords, path: str) -> GeoPoint:
    if (
        not isinstance(coords, (list, tuple))
        or len(coords) < 2
        or not all(isinstance(v, (int, float)) and not isinstance(v, bool) for v in coords[:2])
    ):
        raise InvalidCoordinate(path, "position must be [lon, lat] numbers")
    lon, lat = float(coords[0]), float(coords[1])
    if not (-180.0 <= lon <= 180.0 and -90.0 <= lat <= 90.0):
        raise InvalidCoordinate(path, f"({lon}, {lat}) outside valid range")
    return GeoPoint(lon, lat)


def parse_collection(text: bytes | str) -> tuple[TourCollection, list[Diagnostic]]:
    """Parse a tour configuration document.

    Returns the collection plus non-fatal diagnostics. A feature is never
    dropped silently: every skipped feature produces a diagnostic naming its
    document path. Structural problems (bad JSON, wrong root, out-of-range
    coordinates, duplicate ids, no POIs at all) raise a ParseError subclass.
    """
    diagnostics: list[Diagnostic] = []

    if isinstance(text, bytes):
        try:
            text = text.decode("utf-8")
        except UnicodeDecodeError as exc:
            raise NotUtf8(str(exc)) from exc
    if text.startswith("\ufeff"):
        text = text[1:]
        diagnostics.append(Diagnostic("", "bom", "leading UTF-8 BOM stripped (profile forbids BOM)"))

    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise MalformedJson(exc.pos, exc.msg) from exc

    if not isinstance(doc, dict) or doc.get("type") != "FeatureCollection":
        raise NotFeatureCollection("root object is not a FeatureCollection")

    meta = _parse_meta(doc.get("properties"), diagnostics)

    pois: list[PoiFeature] = []
    tracks: list[TrackFeature] = []
    features = doc.get("features")
    if not isinstance(features, list):
        raise NotFeatureCollection("FeatureCollection has no features array")

    for idx, feature in enumerate(features):
        path = f"features[{idx}]"
        if not isinstance(feature, dict) or feature.get("type") != "Feature":
            diagnostics.append(Diagnostic(path, "skipped", "not a Feature object"))
            continue
        geometry = feature.get("geometry")
        props = feature.get("properties")
        if not isinstance(props, dict):
            props = {}
        if not isinstance(geometry, dict):
            diagnostics.append(Diagnostic(f"{path}.geometry", "skipped", "missing geometry"))
            continue

        geom_type = geometry.get("type")
        role = props.get("type")
        if role is None:
            role = {"Point": "POI", "LineString": "track"}.get(geom_type)
            if role is not None:
                diagnostics.append(
                    Diagnostic(f"{path}.properties.type", "inferred",
                               f"missing 'type' property, inferred {role!r} from geometry")
                )
        if role == "POI":
            if geom_type != "Point":
                diagnostics.append(
                    Diagnostic(f"{path}.geometry", "skipped",
                               f"POI requires Point geometry, found {geom_type!r}")
                )
                continue
            pois.append(_parse_poi(geometry, props, idx, diagnostics))
        elif role == "track":
            if geom_type != "LineString":
                diagnostics.append(
                    Diagnostic(f"{path}.geometry", "skipped",
                               f"track requires LineString geometry, found {geom_type!r}")
                )
                continue
            track = _parse_track(geometry, props, idx, diagnostics)
            if track is not None:
                tracks.append(track)
        else:
            diagnostics.append(
                Diagnostic(f"{path}.geometry", "skipped",
                           f"unsupported feature role/geometry {role or geom_type!r}")
            )

    if not pois:
        raise NoPoiFeatures("document contains no POI features")

    seen: set[str] = set()
    for poi in pois:
        if poi.id and poi.id in seen:
            raise DuplicatePoiId(poi.id)
        seen.add(poi.id)

    return TourCollection(meta=meta, pois=pois, tracks=tracks), diagnostics


def _parse_meta(props, diagnostics: list[Diagnostic]) -> CollectionMeta:
    if not isinstance(props, dict):
        diagnostics.append(Diagnostic("properties", "missing", "collection has no properties object"))
        props = {}
    kwargs = {"name": "", "version": "", "language": "", "description": None, "schema_url": None}
    extra = {}
    for key, value in props.items():
        if key in _META_KEYS:
            kwargs[_META_KEYS[key]] = value if isinstance(value, str) else str(value)
        else:
            extra[key] = value
            diagnostics.append(
                Diagnostic(f"properties.{key}", "unknown-property", f"unknown collection property {key!r} preserved")
            )
    return CollectionMeta(extra=extra, **kwargs)


def _parse_poi(geometry, props, idx: int, diagnostics: list[Diagnostic]) -> PoiFeature:
    path = f"features[{idx}]"
    location = _coerce_point(geometry.get("coordinates"), f"{path}.geometry.coordinates")
    extra = {}
    for key, value in props.items():
        if key not in _POI_KEYS:
            extra[key] = value
            diagnostics.append(
                Diagnostic(f"{path}.properties.{key}", "unknown-property", f"unknown POI property {key!r} preserved")
            )

    def text_of(key):
        value = props.get(key, "")
        return value if isinstance(value, str) else json.dumps(value)

    return PoiFeature(
        id=text_of("id"),
        title=text_of("title"),
        description=text_of("description"),
        image_url=text_of("image"),
        location=location,
        extra=extra,
        source_index=idx,
    )


def _parse_track(geometry, props, idx: int, diagnostics: list[Diagnostic]) -> TrackFeature | None:
    path = f"features[{idx}]"
    coords = geometry.get("coordinates")
    if not isinstance(coords, list):
        raise InvalidCoordinate(f"{path}.geometry.coordinates", "LineString coordinates must be an array")
    points: list[GeoPoint] = []
    for j, coord in enumerate(coords):
        point = _coerce_point(coord, f"{path}.geometry.coordinates[{j}]")
        if points and point == points[-1]:
            continue  # consecutive duplicates collapsed on parse
        points.append(point)
    if len(points) < 2:
        diagnostics.append(
            Diagnostic(f"{path}.geometry", "skipped", "track needs at least 2 distinct points")
        )
        return None
    extra = {}
    for key, value in props.items():
        if key not in _TRACK_KEYS:
            extra[key] = value
            diagnostics.append(
                Diagnostic(f"{path}.properties.{key}", "unknown-property", f"unknown track property {key!r} preserved")
            )
    title = props.get("title")
    if title is not None and not isinstance(title, str):
        title = str(title)
    return TrackFeature(points=points, title=title, extra=extra, source_index=idx)


def check_invariants(c: TourCollection) -> None:
    """Raise InvariantViolation on the first violated type invariant."""
    if not c.meta.name.strip():
        raise InvariantViolation("properties.name", "collection name must be nonempty")
    if not c.meta.version.strip():
        raise InvariantViolation("properties.version", "collection version must be nonempty")
    if not c.pois:
        raise InvariantViolation("features", "collection must contain at least one POI")
    seen: set[str] = set()
    for i, poi in enumerate(c.pois):
        path = f"features[{i}]"
        if not POI_ID_RE.match(poi.id or ""):
            raise InvariantViolation(f"{path}.properties.id", f"invalid POI id {poi.id!r}")
        if poi.id in seen:
            raise InvariantViolation(f"{path}.properties.id", f"duplicate POI id {poi.id!r}")
        seen.add(poi.id)
        if not poi.title.strip():
            raise InvariantViolation(f"{path}.properties.title", "title must be nonempty")
    for i, track in enumerate(c.tracks):
        if len(track.points) < 2:
            raise InvariantViolation(
                f"features[{len(c.pois) + i}].geometry", "track needs at least 2 points"
            )
        for a, b in zip(track.points, track.points[1:]):
            if a == b:
                raise InvariantViolation(
                    f"features[{len(c.pois) + i}].geometry", "consecutive duplicate track points"
                )


def _position(p: GeoPoint) -> list[float]:
    return [float(p.lon), float(p.lat)]


def _ordered_props(known: dict, extra: dict) -> dict:
    props = {k: v for k, v in known.items() if v is not None}
    for key in sorted(extra):
        props[key] = extra[key]
    return props


def serialize_collection(c: TourCollection) -> str:
    """Serialize a collection back to its canonical document form.

    Output is deterministic: fixed key order, extras sorted by key, floats in
    shortest round-trip notation. ``parse_collection`` of the result is
    semantically equal to ``c``.
    """
    check_invariants(c)

    features = []
    for poi in c.pois:
        features.append({
            "type": "Feature",
            "geometry": {"type": "Point", "coordinates": _position(poi.location)},
            "properties": _ordered_props(
                {
                    "type": "POI",
                    "id": poi.id,
                    "title": poi.title,
                    "description": poi.description,
                    "image": poi.image_url,
                },
                poi.extra,
            ),
        })
    for track in c.tracks:
        features.append({
            "type": "Feature",
            "geometry": {
                "type": "LineString",
                "coordinates": [_position(p) for p in track.points],
            },
            "properties": _ordered_props({"type": "track", "title": track.title}, track.extra),
        })

    doc = {
        "type": "FeatureCollection",
        "properties": _ordered_props(
            {
                "name": c.meta.name,
                "version": c.meta.version,
                "language": c.meta.language or None,
                "description": c.meta.description,
                "schema": c.meta.schema_url,
            },
            c.meta.extra,
        ),
        "features": features,
    }
    return json.dumps(doc, ensure_ascii=False, indent=2) + "\n"


def collections_equal(a: TourCollection, b: TourCollection) -> bool:
    """Semantic equality: field values compare, document positions do not."""
    return a == b


def word_count(text: str) -> int:
    """Whitespace-delimited token count after trimming."""
    return len(text.split())
