"""Command-line entry point for curators and CI pipelines.

Subcommands are thin adapters over the library modules. Exit codes are part
of the contract: 0 success, 1 validation findings, 2 usage error, 3 I/O or
network failure. Findings go to stderr in human form (or stdout as JSON with
--json); data goes to stdout.
"""
from __future__ import annotations

import argparse
import json
import os
import sys
from pathlib import Path

from . import provisioning, schema, sim
from .config_model import parse_collection
from .errors import (
    BundleError,
    DescriptorError,
    FetchError,
    IoFailure,
    NotABundle,
    ParseError,
    QrError,
    TraceError,
    TrailpackError,
    ValidationFailed,
)
from .geo import GpsFix
from .provisioning import AbortingFetcher, HttpFetcher

EXIT_OK = 0
EXIT_FINDINGS = 1
EXIT_USAGE = 2
EXIT_IO = 3


def _env_flag(name: str) -> bool:
    return os.environ.get(name, "").strip().lower() in ("1", "true", "yes", "on")


def _fetcher(args) -> provisioning.Fetcher:
    if getattr(args, "offline", False) or _env_flag("TRAILPACK_OFFLINE"):
        return AbortingFetcher()
    return HttpFetcher()


def _descriptor(args) -> schema.SchemaDescriptor:
    path = getattr(args, "schema", None) or os.environ.get("TRAILPACK_SCHEMA")
    if not path:
        return schema.default_descriptor()
    return schema.load_descriptor(Path(path).read_text(encoding="utf-8"))


def _print_report(report: schema.ValidationReport, as_json: bool) -> None:
    if as_json:
        print(json.dumps(report.as_dict(), ensure_ascii=False, indent=2))
        return
    for finding in report.errors:
        print(f"error: {finding.path}: {finding.message}", file=sys.stderr)
    for finding in report.warnings:
        print(f"warning: {finding.path}: {finding.message}", file=sys.stderr)


def _report_from_exception(exc: TrailpackError) -> schema.ValidationReport:
    path = getattr(exc, "path", "") or ""
    code = type(exc).__name__
    return schema.ValidationReport(errors=[schema.Finding(path, code, str(exc))], warnings=[])


def cmd_validate(args) -> int:
    try:
        text = Path(args.file).read_text(encoding="utf-8", errors="surrogateescape")
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_IO
    try:
        descriptor = _descriptor(args)
    except (OSError, DescriptorError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_IO
    try:
        collection, diagnostics = parse_collection(text)
    except ParseError as exc:
        _print_report(_report_from_exception(exc), args.json)
        return EXIT_FINDINGS
    report = schema.validate(collection, descriptor)
    for diag in diagnostics:
        report.warnings.append(schema.Finding(diag.path, diag.code, diag.message))
    _print_report(report, args.json)
    return EXIT_OK if report.valid else EXIT_FINDINGS


def cmd_schema_export(args) -> int:
    print(schema.serialize_descriptor(_descriptor(args)), end="")
    return EXIT_OK


def cmd_fetch(args) -> int:
    try:
        body = provisioning.fetch_collection(args.url, _fetcher(args))
    except (FetchError, QrError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_IO
    if args.output:
        Path(args.output).write_text(body, encoding="utf-8")
    else:
        print(body, end="")
    return EXIT_OK


def cmd_bundle_build(args) -> int:
    source = args.source
    fetcher = _fetcher(args)
    origin = source
    try:
        if source.startswith(("http://", "https://")):
            doc = provisioning.fetch_collection(source, fetcher)
        else:
            doc = Path(source).read_text(encoding="utf-8")
            origin = Path(source).resolve().as_uri()
    except FetchError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_IO
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_IO
    try:
        descriptor = _descriptor(args)
        bundle = provisioning.build_bundle(doc, origin, fetcher, args.dest, descriptor)
    except ValidationFailed as exc:
        _print_report(exc.report, args.json)
        return EXIT_FINDINGS
    except ParseError as exc:
        _print_report(_report_from_exception(exc), args.json)
        return EXIT_FINDINGS
    except (BundleError, OSError, DescriptorError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_IO
    print(f"bundle built at {bundle.root} "
          f"({len(bundle.assets)} assets, {len(bundle.fetch_failures)} image failures)",
          file=sys.stderr)
    return EXIT_OK


def cmd_bundle_verify(args) -> int:
    try:
        bundle = provisioning.open_bundle(args.dir)
    except NotABundle as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_IO
    report = provisioning.verify_bundle(bundle)
    _print_report(report, args.json)
    return EXIT_OK if report.valid else EXIT_FINDINGS


def cmd_qr_encode(args) -> int:
    try:
        print(provisioning.encode_bootstrap(args.url))
    except QrError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_FINDINGS
    return EXIT_OK


def cmd_qr_decode(args) -> int:
    try:
        payload = provisioning.decode_qr_payload(args.text)
    except TrailpackError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_FINDINGS
    out = {"variant": payload.variant, "url": payload.url}
    if payload.variant == "location_marker":
        out["poi"] = payload.poi_id
        out["lon"] = payload.location.lon
        out["lat"] = payload.location.lat
    print(json.dumps(out, ensure_ascii=False))
    return EXIT_OK


def cmd_simulate(args) -> int:
    try:
        bundle = provisioning.open_bundle(args.bundle)
        trace = sim.parse_trace(Path(args.trace).read_text(encoding="utf-8"))
    except (NotABundle, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_IO
    except TraceError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_FINDINGS
    events = sim.simulate(bundle, trace, margin_m=args.margin, arrival_m=args.arrival)
    ndjson = sim.events_to_ndjson(events)
    if args.output:
        Path(args.output).write_text(ndjson, encoding="utf-8")
    else:
        print(ndjson, end="")
    if args.plot:
        from .plotting import render_tour_map

        render_tour_map(bundle.collection, args.plot, events=events, arrival_m=args.arrival)
        print(f"figure written to {args.plot}", file=sys.stderr)
    return EXIT_OK


def cmd_locate(args) -> int:
    try:
        bundle = provisioning.open_bundle(args.bundle)
    except NotABundle as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_IO
    from .geo import GeoPoint, HighlightState, nearest_poi

    fix = GpsFix(t=0.0, location=GeoPoint(lon=args.lon, lat=args.lat),
                 accuracy_m=args.accuracy, source="manual")
    poi_id, _ = nearest_poi(fix, bundle.collection)
    state = sim.render_screen_state(bundle, fix, HighlightState(current_poi_id=poi_id))
    print(json.dumps({
        "map_center": {"lon": state.map_center.lon, "lat": state.map_center.lat},
        "visible_pois": list(state.visible_pois),
        "highlight": state.highlight,
        "image_ref": state.image_ref,
        "distance_text": state.distance_text,
        "description_preview": state.description_preview,
        "truncated": state.truncated,
    }, ensure_ascii=False, indent=2))
    return EXIT_OK


def cmd_summary(args) -> int:
    try:
        lines = Path(args.events).read_text(encoding="utf-8").splitlines()
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_IO
    events = [sim.event_from_json(line) for line in lines if line.strip()]
    summary = sim.summarize(events, arrival_m=args.arrival)
    print(json.dumps({
        "pois_visited": list(summary.pois_visited),
        "pois_total": summary.pois_total,
        "path_length_m": summary.path_length_m,
        "duration_s": summary.duration_s,
    }, ensure_ascii=False, indent=2))
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="trailpack",
                                     description="Offline-first walking tour toolkit")
    parser.add_argument("--offline", action="store_true",
                        help="fail fast on any network access (also TRAILPACK_OFFLINE=1)")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("validate", help="validate a tour configuration file")
    p.add_argument("file")
    p.add_argument("--schema", help="descriptor file (default: built-in or TRAILPACK_SCHEMA)")
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_validate)

    p_schema = sub.add_parser("schema", help="descriptor operations")
    schema_sub = p_schema.add_subparsers(dest="schema_command", required=True)
    p = schema_sub.add_parser("export", help="print the active descriptor document")
    p.add_argument("--schema", help="descriptor file to re-export")
    p.set_defaults(func=cmd_schema_export)

    p = sub.add_parser("fetch", help="fetch a configuration document over HTTP")
    p.add_argument("url")
    p.add_argument("-o", "--output")
    p.set_defaults(func=cmd_fetch)

    p_bundle = sub.add_parser("bundle", help="offline bundle operations")
    bundle_sub = p_bundle.add_subparsers(dest="bundle_command", required=True)
    p = bundle_sub.add_parser("build", help="build an offline bundle from a file or URL")
    p.add_argument("source")
    p.add_argument("-d", "--dest", required=True)
    p.add_argument("--schema")
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_bundle_build)
    p = bundle_sub.add_parser("verify", help="re-hash a bundle against its manifest")
    p.add_argument("dir")
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_bundle_verify)

    p_qr = sub.add_parser("qr", help="QR payload encoding/decoding")
    qr_sub = p_qr.add_subparsers(dest="qr_command", required=True)
    p = qr_sub.add_parser("encode")
    p.add_argument("url")
    p.set_defaults(func=cmd_qr_encode)
    p = qr_sub.add_parser("decode")
    p.add_argument("text")
    p.set_defaults(func=cmd_qr_decode)

    p = sub.add_parser("simulate", help="replay a GPS trace against a bundle")
    p.add_argument("--bundle", required=True)
    p.add_argument("--trace", required=True)
    p.add_argument("--margin", type=float, default=5.0)
    p.add_argument("--arrival", type=float, default=15.0)
    p.add_argument("-o", "--output", help="NDJSON output file (default stdout)")
    p.add_argument("--plot", help="write a tour/trace overview figure to this file")
    p.set_defaults(func=cmd_simulate)

    p = sub.add_parser("locate", help="manual location input: one screen state")
    p.add_argument("--bundle", required=True)
    p.add_argument("--lat", type=float, required=True)
    p.add_argument("--lon", type=float, required=True)
    p.add_argument("--accuracy", type=float, default=25.0)
    p.set_defaults(func=cmd_locate)

    p = sub.add_parser("summary", help="aggregate an NDJSON event stream")
    p.add_argument("--events", required=True)
    p.add_argument("--arrival", type=float, default=15.0)
    p.set_defaults(func=cmd_summary)

    return parser


def run(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_USAGE if exc.code not in (0, None) else EXIT_OK
    try:
        return args.func(args)
    except IoFailure as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_IO
    except TrailpackError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_FINDINGS


def main() -> None:
    sys.exit(run())
