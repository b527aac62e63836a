import json
import random

import pytest

from trailpack.config_model import (
    GeoPoint,
    parse_collection,
    serialize_collection,
    word_count,
)
from trailpack.errors import (
    DuplicatePoiId,
    InvalidCoordinate,
    InvariantViolation,
    MalformedJson,
    NoPoiFeatures,
    NotFeatureCollection,
    NotUtf8,
)

from genutil import random_collection

SINGLE_POI_DOC = json.dumps({
    "type": "FeatureCollection",
    "properties": {"name": "Mulini", "version": "1.0", "language": "it"},
    "features": [
        {
            "type": "Feature",
            "geometry": {"type": "Point", "coordinates": [10.60, 44.05]},
            "properties": {
                "type": "POI",
                "id": "mill-1",
                "title": "Mulino di valle",
                "description": "Un mulino idraulico ben conservato.",
                "image": "https://example.org/mill-1.jpg",
            },
        }
    ],
})


class TestParse:
    def test_single_poi_document(self):
        c, diags = parse_collection(SINGLE_POI_DOC)
        assert len(c.pois) == 1
        assert len(c.tracks) == 0
        assert diags == []
        assert c.pois[0].id == "mill-1"
        assert c.pois[0].location == GeoPoint(10.60, 44.05)

    def test_fixture_has_8_pois_and_1_track(self, fixture_text):
        c, diags = parse_collection(fixture_text)
        assert len(c.pois) == 8
        assert len(c.tracks) == 1
        assert diags == []

    def test_latitude_out_of_range(self):
        doc = SINGLE_POI_DOC.replace("[10.6, 44.05]", "[10.6, 91]").replace("44.05", "91")
        with pytest.raises(InvalidCoordinate) as err:
            parse_collection(doc)
        assert "features[0]" in err.value.path

    def test_swapped_lat_lon_detected_when_out_of_range(self):
        # [lat, lon] swap with lat 91 lands outside the valid range.
        doc = json.loads(SINGLE_POI_DOC)
        doc["features"][0]["geometry"]["coordinates"] = [91, 10.6]
        parse_collection(json.dumps(doc))  # 91 is a legal longitude: ambiguous, accepted
        doc["features"][0]["geometry"]["coordinates"] = [44.05, 190.0]
        with pytest.raises(InvalidCoordinate):
            parse_collection(json.dumps(doc))

    def test_not_utf8(self):
        with pytest.raises(NotUtf8):
            parse_collection(b"\xff\xfe{}")

    def test_malformed_json_carries_position(self):
        with pytest.raises(MalformedJson) as err:
            parse_collection('{"type": "FeatureCollection", ')
        assert err.value.position > 0

    def test_not_feature_collection(self):
        with pytest.raises(NotFeatureCollection):
            parse_collection('{"type": "Feature"}')

    def test_no_poi_features(self):
        with pytest.raises(NoPoiFeatures):
            parse_collection('{"type": "FeatureCollection", "properties": {}, "features": []}')

    def test_duplicate_poi_id(self):
        doc = json.loads(SINGLE_POI_DOC)
        doc["features"].append(json.loads(json.dumps(doc["features"][0])))
        with pytest.raises(DuplicatePoiId) as err:
            parse_collection(json.dumps(doc))
        assert err.value.poi_id == "mill-1"

    def test_unknown_properties_preserved_with_warning(self):
        doc = json.loads(SINGLE_POI_DOC)
        doc["features"][0]["properties"]["audio"] = "https://example.org/a.mp3"
        c, diags = parse_collection(json.dumps(doc))
        assert c.pois[0].extra == {"audio": "https://example.org/a.mp3"}
        assert any(d.code == "unknown-property" for d in diags)

    def test_unsupported_geometry_skipped_with_diagnostic(self):
        doc = json.loads(SINGLE_POI_DOC)
        doc["features"].append({
            "type": "Feature",
            "geometry": {"type": "Polygon", "coordinates": [[[0, 0], [0, 1], [1, 1], [0, 0]]]},
            "properties": {},
        })
        c, diags = parse_collection(json.dumps(doc))
        assert len(c.pois) == 1
        skipped = [d for d in diags if d.code == "skipped"]
        assert len(skipped) == 1
        assert skipped[0].path == "features[1].geometry"

    def test_no_silent_loss(self):
        doc = json.loads(SINGLE_POI_DOC)
        doc["features"] += [
            {"type": "Feature", "geometry": {"type": "Polygon", "coordinates": []}, "properties": {}},
            "not-a-feature",
            {"type": "Feature", "geometry": None, "properties": {}},
        ]
        c, diags = parse_collection(json.dumps(doc))
        skipped = [d for d in diags if d.code == "skipped"]
        assert len(doc["features"]) == len(c.pois) + len(c.tracks) + len(skipped)

    def test_consecutive_duplicate_track_points_collapse(self):
        doc = json.loads(SINGLE_POI_DOC)
        doc["features"].append({
            "type": "Feature",
            "geometry": {"type": "LineString",
                         "coordinates": [[10.6, 44.05], [10.6, 44.05], [10.61, 44.06]]},
            "properties": {"type": "track"},
        })
        c, _ = parse_collection(json.dumps(doc))
        assert len(c.tracks[0].points) == 2


class TestSerialize:
    def test_round_trip_fixture(self, fixture_text):
        c, _ = parse_collection(fixture_text)
        again, diags = parse_collection(serialize_collection(c))
        assert again == c
        assert diags == []

    def test_byte_determinism(self, collection):
        assert serialize_collection(collection) == serialize_collection(collection)

    def test_empty_track_list(self, collection):
        collection.tracks = []
        doc = json.loads(serialize_collection(collection))
        assert all(f["properties"]["type"] == "POI" for f in doc["features"])

    def test_invariant_violation_on_empty_title(self, collection):
        collection.pois[0].title = "  "
        with pytest.raises(InvariantViolation) as err:
            serialize_collection(collection)
        assert err.value.path == "features[0].properties.title"

    def test_invariant_violation_on_bad_id(self, collection):
        collection.pois[0].id = "has space"
        with pytest.raises(InvariantViolation):
            serialize_collection(collection)

    @pytest.mark.parametrize("seed", range(30))
    def test_round_trip_generated(self, seed):
        c = random_collection(random.Random(seed))
        again, _ = parse_collection(serialize_collection(c))
        assert again == c


def test_word_count():
    assert word_count("") == 0
    assert word_count("  one   two\nthree ") == 3
