import hashlib
import json

import pytest

from trailpack.config_model import GeoPoint
from trailpack.errors import (
    DestinationNotEmpty,
    HttpStatus,
    IncompleteMarker,
    InvalidCoordinate,
    NetworkUnavailable,
    NotABundle,
    NotAUrl,
    TooLarge,
    ValidationFailed,
)
from trailpack.provisioning import (
    AbortingFetcher,
    build_bundle,
    decode_qr_payload,
    encode_bootstrap,
    fetch_collection,
    open_bundle,
    verify_bundle,
)

from conftest import StubFetcher


class TestQrPayload:
    def test_plain_url_is_bootstrap(self):
        payload = decode_qr_payload("https://example.org/tour.geojson")
        assert payload.variant == "bootstrap"
        assert payload.url == "https://example.org/tour.geojson"

    def test_marker_with_all_params(self):
        payload = decode_qr_payload("https://example.org/t.geojson?poi=mill-3&lat=44.05&lon=10.60")
        assert payload.variant == "location_marker"
        assert payload.poi_id == "mill-3"
        assert payload.location == GeoPoint(10.60, 44.05)

    def test_marker_param_order_free(self):
        a = decode_qr_payload("https://e.org/t?poi=x&lat=1&lon=2")
        b = decode_qr_payload("https://e.org/t?lon=2&poi=x&lat=1")
        assert (a.poi_id, a.location) == (b.poi_id, b.location)

    def test_not_a_url(self):
        with pytest.raises(NotAUrl):
            decode_qr_payload("hello world")

    def test_relative_url_rejected(self):
        with pytest.raises(NotAUrl):
            encode_bootstrap("tour.geojson")

    def test_partial_marker_params(self):
        with pytest.raises(IncompleteMarker) as err:
            decode_qr_payload("https://e.org/t?poi=x&lat=1")
        assert err.value.missing == ("lon",)

    def test_repeated_marker_param_rejected(self):
        with pytest.raises(IncompleteMarker):
            decode_qr_payload("https://e.org/t?poi=x&poi=y&lat=1&lon=2")

    def test_marker_coordinate_out_of_range(self):
        with pytest.raises(InvalidCoordinate):
            decode_qr_payload("https://e.org/t?poi=x&lat=91&lon=2")

    def test_unrelated_query_params_stay_bootstrap(self):
        payload = decode_qr_payload("https://e.org/t.geojson?ref=brochure&v=2")
        assert payload.variant == "bootstrap"

    def test_encode_decode_round_trip(self):
        url = "https://example.org/tours/mills.geojson"
        assert decode_qr_payload(encode_bootstrap(url)).url == url


class TestFetchCollection:
    def test_stub_identity(self, fixture_text):
        fetcher = StubFetcher({"https://e.org/t": (200, fixture_text.encode())})
        assert fetch_collection("https://e.org/t", fetcher) == fixture_text

    def test_http_status(self):
        with pytest.raises(HttpStatus) as err:
            fetch_collection("https://e.org/missing", StubFetcher())
        assert err.value.code == 404

    def test_too_large(self):
        fetcher = StubFetcher({"https://e.org/big": (200, b"x" * (11 * 1024 * 1024))})
        with pytest.raises(TooLarge):
            fetch_collection("https://e.org/big", fetcher)

    def test_aborting_fetcher_raises(self):
        with pytest.raises(NetworkUnavailable):
            fetch_collection("https://e.org/t", AbortingFetcher())


class TestBuildBundle:
    def test_full_build(self, bundle):
        assert len(bundle.assets) == 8
        assert len(bundle.manifest) == 9  # 8 assets + collection.geojson
        assert bundle.fetch_failures == {}
        assert verify_bundle(bundle).valid

    def test_digests_match_independent_hashing(self, bundle):
        for rel, digest in bundle.manifest.items():
            assert hashlib.sha256((bundle.root / rel).read_bytes()).hexdigest() == digest

    def test_manifest_sorted_by_path(self, bundle):
        manifest_doc = json.loads((bundle.root / "manifest.json").read_text())
        assert list(manifest_doc["files"]) == sorted(manifest_doc["files"])

    def test_failed_image_degrades(self, tmp_path, fixture_text, image_fetcher, collection):
        del image_fetcher.responses[collection.pois[2].image_url]
        bundle = build_bundle(fixture_text, "https://e.org/t", image_fetcher, tmp_path / "b")
        assert len(bundle.assets) == 7
        assert list(bundle.fetch_failures) == [collection.pois[2].id]
        assert verify_bundle(bundle).valid

    def test_validation_failure_aborts(self, tmp_path, fixture_doc, image_fetcher):
        del fixture_doc["features"][0]["properties"]["title"]
        with pytest.raises(ValidationFailed):
            build_bundle(json.dumps(fixture_doc), "https://e.org/t", image_fetcher, tmp_path / "b")
        assert not (tmp_path / "b").exists()

    def test_destination_not_empty(self, tmp_path, fixture_text, image_fetcher):
        dest = tmp_path / "b"
        dest.mkdir()
        (dest / "stray").write_text("x")
        with pytest.raises(DestinationNotEmpty):
            build_bundle(fixture_text, "https://e.org/t", image_fetcher, dest)


class TestOpenVerify:
    def test_open_after_build(self, bundle):
        reopened = open_bundle(bundle.root)
        assert reopened.collection == bundle.collection
        assert reopened.manifest == bundle.manifest
        assert reopened.assets == bundle.assets

    def test_open_is_offline(self, bundle):
        # no fetcher is even passed; opening only touches the filesystem
        reopened = open_bundle(bundle.root)
        assert reopened.origin_url == "https://example.org/tour.geojson"

    def test_missing_manifest_is_not_a_bundle(self, tmp_path):
        with pytest.raises(NotABundle):
            open_bundle(tmp_path)

    def test_flipped_byte_detected(self, bundle):
        rel = bundle.assets[bundle.collection.pois[0].id]
        path = bundle.root / rel
        data = bytearray(path.read_bytes())
        data[0] ^= 0x01
        path.write_bytes(bytes(data))
        report = verify_bundle(open_bundle(bundle.root))
        assert len(report.errors) == 1
        assert report.errors[0].path == rel
        assert report.errors[0].code == "manifest-mismatch"

    def test_deleted_asset_detected(self, bundle):
        rel = bundle.assets[bundle.collection.pois[1].id]
        (bundle.root / rel).unlink()
        report = verify_bundle(open_bundle(bundle.root))
        assert [f.code for f in report.errors] == ["missing-file"]
