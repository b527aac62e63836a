"""One-time tour acquisition: QR/URL bootstrap, fetch, and immutable bundles.

A bundle is built exactly once into an empty directory and never mutated;
swapping tours means deleting the directory and provisioning again. The
on-disk layout is::

    <dir>/collection.geojson     the validated configuration document
    <dir>/assets/<poi_id>.<ext>  cached POI images
    <dir>/manifest.json          SHA-256 digests plus fetch-failure notes

HTTP access goes through an injected fetcher so everything except the two
network operations works with networking disabled.
"""
from __future__ import annotations

import hashlib
import json
import time
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from pathlib import Path
from typing import Callable, Protocol
from urllib.parse import parse_qsl, urlsplit

from .config_model import GeoPoint, TourCollection, parse_collection, serialize_collection
from .errors import (
    DestinationNotEmpty,
    HttpStatus,
    IncompleteMarker,
    InvalidCoordinate,
    IoFailure,
    ManifestMismatch,
    NetworkUnavailable,
    NotABundle,
    NotAUrl,
    TooLarge,
    ValidationFailed,
)
from .schema import Finding, SchemaDescriptor, ValidationReport, default_descriptor, validate

DEFAULT_SIZE_CAP = 10 * 1024 * 1024
DEFAULT_PARALLELISM = 4

_MARKER_PARAMS = ("poi", "lat", "lon")
_IMAGE_EXTENSIONS = {".jpg", ".jpeg", ".png", ".gif", ".webp", ".svg"}


class Fetcher(Protocol):
    """Minimal HTTP retrieval capability: returns (status_code, body)."""

    def get(self, url: str) -> tuple[int, bytes]: ...


class HttpFetcher:
    """Real fetcher backed by requests; follows up to 3 redirects."""

    def __init__(self, timeout: float = 30.0):
        self.timeout = timeout

    def get(self, url: str) -> tuple[int, bytes]:
        import requests

        session = requests.Session()
        session.max_redirects = 3
        try:
            resp = session.get(url, timeout=self.timeout)
        except requests.ConnectionError as exc:
            raise NetworkUnavailable(str(exc)) from exc
        except requests.Timeout as exc:
            raise NetworkUnavailable(f"timeout fetching {url}") from exc
        return resp.status_code, resp.content


class AbortingFetcher:
    """Fetcher that refuses every request; installs the offline guarantee."""

    def get(self, url: str) -> tuple[int, bytes]:
        raise NetworkUnavailable(f"network access disabled (requested {url})")


@dataclass(frozen=True)
class QrPayload:
    variant: str  # "bootstrap" | "location_marker"
    url: str
    poi_id: str | None = None
    location: GeoPoint | None = None


@dataclass
class Bundle:
    collection: TourCollection
    assets: dict[str, str]
    manifest: dict[str, str]
    created_t: float
    origin_url: str
    root: Path
    fetch_failures: dict[str, str] = field(default_factory=dict)


def _require_absolute_http(url: str) -> None:
    parts = urlsplit(url)
    if parts.scheme not in ("http", "https") or not parts.netloc:
        raise NotAUrl(f"not an absolute http(s) URL: {url!r}")


def encode_bootstrap(url: str) -> str:
    """The QR payload for a tour URL is the URL itself."""
    _require_absolute_http(url)
    return url


def decode_qr_payload(text: str) -> QrPayload:
    """Decode a scanned QR string.

    A plain absolute URL bootstraps a tour; a URL carrying all three of the
    query parameters poi/lat/lon is a location marker. Repeated marker
    parameters are rejected.
    """
    _require_absolute_http(text)
    parts = urlsplit(text)
    params = parse_qsl(parts.query, keep_blank_values=True)
    by_name: dict[str, list[str]] = {}
    for key, value in params:
        by_name.setdefault(key, []).append(value)

    present = [name for name in _MARKER_PARAMS if name in by_name]
    if not present:
        return QrPayload(variant="bootstrap", url=text)
    if len(present) < len(_MARKER_PARAMS):
        raise IncompleteMarker([n for n in _MARKER_PARAMS if n not in by_name])
    for name in _MARKER_PARAMS:
        if len(by_name[name]) > 1:
            raise IncompleteMarker([name])  # repeated parameter is ambiguous
    try:
        lat = float(by_name["lat"][0])
        lon = float(by_name["lon"][0])
    except ValueError as exc:
        raise InvalidCoordinate("query", "lat/lon must be decimal numbers") from exc
    if not (-90.0 <= lat <= 90.0 and -180.0 <= lon <= 180.0):
        raise InvalidCoordinate("query", f"({lon}, {lat}) outside valid range")
    return QrPayload(
        variant="location_marker",
        url=text,
        poi_id=by_name["poi"][0],
        location=GeoPoint(lon=lon, lat=lat),
    )


def fetch_collection(url: str, fetcher: Fetcher, size_cap: int = DEFAULT_SIZE_CAP) -> str:
    """Retrieve a configuration document over HTTP, bounded by size_cap."""
    _require_absolute_http(url)
    status, body = fetcher.get(url)
    if status != 200:
        raise HttpStatus(status, url)
    if len(body) > size_cap:
        raise TooLarge(len(body), size_cap)
    return body.decode("utf-8")


def _sha256(data: bytes) -> str:
    return hashlib.sha256(data).hexdigest()


def _asset_name(poi_id: str, image_url: str) -> str:
    suffix = Path(urlsplit(image_url).path).suffix.lower()
    if suffix not in _IMAGE_EXTENSIONS:
        suffix = ".img"
    return f"{poi_id}{suffix}"


def build_bundle(
    doc: str,
    origin_url: str,
    fetcher: Fetcher,
    dest_dir: str | Path,
    descriptor: SchemaDescriptor | None = None,
    parallelism: int = DEFAULT_PARALLELISM,
    now: Callable[[], float] = time.time,
) -> Bundle:
    """Validate a document and materialize it as an offline bundle.

    Validation errors abort. Image downloads run with bounded parallelism;
    a failed download is recorded per POI and degrades that POI to text-only
    rather than failing the build.
    """
    dest = Path(dest_dir)
    if dest.exists() and any(dest.iterdir()):
        raise DestinationNotEmpty(str(dest))

    collection, _ = parse_collection(doc)
    report = validate(collection, descriptor or default_descriptor())
    if not report.valid:
        raise ValidationFailed(report)

    try:
        dest.mkdir(parents=True, exist_ok=True)
        (dest / "assets").mkdir()
    except OSError as exc:
        raise IoFailure(str(dest), str(exc)) from exc

    canonical = serialize_collection(collection)

    def fetch_image(poi):
        try:
            status, body = fetcher.get(poi.image_url)
        except NetworkUnavailable as exc:
            return poi.id, None, f"network unavailable: {exc}"
        if status != 200:
            return poi.id, None, f"HTTP {status}"
        return poi.id, body, None

    assets: dict[str, str] = {}
    fetch_failures: dict[str, str] = {}
    with ThreadPoolExecutor(max_workers=max(1, parallelism)) as pool:
        results = list(pool.map(fetch_image, collection.pois))

    manifest_files: dict[str, str] = {}
    for poi_id, body, failure in results:
        if failure is not None:
            fetch_failures[poi_id] = failure
            continue
        rel = f"assets/{_asset_name(poi_id, collection.poi_by_id(poi_id).image_url)}"
        try:
            (dest / rel).write_bytes(body)
        except OSError as exc:
            raise IoFailure(rel, str(exc)) from exc
        assets[poi_id] = rel
        manifest_files[rel] = _sha256(body)

    try:
        (dest / "collection.geojson").write_text(canonical, encoding="utf-8")
    except OSError as exc:
        raise IoFailure("collection.geojson", str(exc)) from exc
    manifest_files["collection.geojson"] = _sha256(canonical.encode("utf-8"))

    created_t = now()
    manifest_doc = {
        "origin_url": origin_url,
        "created_t": created_t,
        "files": {path: manifest_files[path] for path in sorted(manifest_files)},
        "assets": {poi_id: assets[poi_id] for poi_id in sorted(assets)},
        "fetch_failures": {poi_id: fetch_failures[poi_id] for poi_id in sorted(fetch_failures)},
    }
    try:
        (dest / "manifest.json").write_text(
            json.dumps(manifest_doc, ensure_ascii=False, indent=2) + "\n", encoding="utf-8"
        )
    except OSError as exc:
        raise IoFailure("manifest.json", str(exc)) from exc

    return Bundle(
        collection=collection,
        assets=assets,
        manifest=manifest_doc["files"],
        created_t=created_t,
        origin_url=origin_url,
        root=dest,
        fetch_failures=fetch_failures,
    )


def open_bundle(dir_path: str | Path) -> Bundle:
    """Open a previously built bundle; performs no network access."""
    root = Path(dir_path)
    manifest_path = root / "manifest.json"
    collection_path = root / "collection.geojson"
    if not manifest_path.is_file() or not collection_path.is_file():
        raise NotABundle(f"{root} is missing manifest.json or collection.geojson")
    try:
        manifest_doc = json.loads(manifest_path.read_text(encoding="utf-8"))
    except (OSError, json.JSONDecodeError) as exc:
        raise NotABundle(f"unreadable manifest: {exc}") from exc
    if not isinstance(manifest_doc, dict) or "files" not in manifest_doc:
        raise NotABundle("manifest.json lacks a files map")

    collection, _ = parse_collection(collection_path.read_text(encoding="utf-8"))
    return Bundle(
        collection=collection,
        assets=dict(manifest_doc.get("assets", {})),
        manifest=dict(manifest_doc["files"]),
        created_t=float(manifest_doc.get("created_t", 0.0)),
        origin_url=str(manifest_doc.get("origin_url", "")),
        root=root,
        fetch_failures=dict(manifest_doc.get("fetch_failures", {})),
    )


def verify_bundle(b: Bundle) -> ValidationReport:
    """Re-hash every manifest entry; mismatches and missing files are findings."""
    errors: list[Finding] = []
    for rel in sorted(b.manifest):
        path = b.root / rel
        if not path.is_file():
            errors.append(Finding(rel, "missing-file", "manifest entry has no file on disk"))
            continue
        digest = _sha256(path.read_bytes())
        if digest != b.manifest[rel]:
            errors.append(Finding(rel, "manifest-mismatch", "content digest differs from manifest"))
    return ValidationReport(errors=errors, warnings=[])


def verify_entry(b: Bundle, rel: str) -> None:
    """Lazy single-file verification; raises on mismatch."""
    path = b.root / rel
    if rel not in b.manifest or not path.is_file():
        raise ManifestMismatch(rel)
    if _sha256(path.read_bytes()) != b.manifest[rel]:
        raise ManifestMismatch(rel)
