import json

import pytest

from trailpack.cli import run
from trailpack.schema import default_descriptor, load_descriptor

from conftest import FIXTURE_PATH


@pytest.fixture
def built_bundle_dir(bundle):
    return str(bundle.root)


class TestValidate:
    def test_clean_fixture_exits_0(self, capsys):
        assert run(["validate", str(FIXTURE_PATH)]) == 0
        assert capsys.readouterr().err == ""

    def test_duplicate_id_exits_1_with_one_finding(self, tmp_path, fixture_doc, capsys):
        fixture_doc["features"].append(json.loads(json.dumps(fixture_doc["features"][0])))
        broken = tmp_path / "broken.geojson"
        broken.write_text(json.dumps(fixture_doc))
        assert run(["validate", str(broken), "--json"]) == 1
        out = json.loads(capsys.readouterr().out)
        assert not out["valid"]
        assert len(out["errors"]) == 1
        assert out["errors"][0]["code"] == "DuplicatePoiId"

    def test_missing_file_exits_3(self):
        assert run(["validate", "/nonexistent/tour.geojson"]) == 3

    def test_json_findings_on_stdout(self, tmp_path, fixture_doc, capsys):
        del fixture_doc["features"][0]["properties"]["image"]
        f = tmp_path / "t.geojson"
        f.write_text(json.dumps(fixture_doc))
        assert run(["validate", str(f), "--json"]) == 1
        out = json.loads(capsys.readouterr().out)
        assert out["errors"][0]["path"] == "features[0].properties.image"

    def test_schema_env_var(self, tmp_path, monkeypatch, capsys):
        from trailpack.schema import serialize_descriptor

        schema_file = tmp_path / "schema.json"
        schema_file.write_text(serialize_descriptor(default_descriptor()))
        monkeypatch.setenv("TRAILPACK_SCHEMA", str(schema_file))
        assert run(["validate", str(FIXTURE_PATH)]) == 0


class TestSchemaExport:
    def test_export_round_trips(self, capsys):
        assert run(["schema", "export"]) == 0
        exported = capsys.readouterr().out
        assert load_descriptor(exported) == default_descriptor()


class TestUsage:
    def test_unknown_subcommand_exits_2(self, capsys):
        assert run(["frobnicate"]) == 2

    def test_missing_required_arg_exits_2(self, capsys):
        assert run(["simulate", "--trace", "x.csv"]) == 2


class TestQr:
    def test_encode_decode(self, capsys):
        assert run(["qr", "encode", "https://example.org/t.geojson"]) == 0
        encoded = capsys.readouterr().out.strip()
        assert run(["qr", "decode", encoded]) == 0
        payload = json.loads(capsys.readouterr().out)
        assert payload["variant"] == "bootstrap"

    def test_decode_marker(self, capsys):
        assert run(["qr", "decode", "https://e.org/t?poi=mill-3&lat=44.05&lon=10.60"]) == 0
        payload = json.loads(capsys.readouterr().out)
        assert payload == {"variant": "location_marker",
                           "url": "https://e.org/t?poi=mill-3&lat=44.05&lon=10.60",
                           "poi": "mill-3", "lon": 10.6, "lat": 44.05}

    def test_decode_garbage_exits_1(self, capsys):
        assert run(["qr", "decode", "hello world"]) == 1


class TestOffline:
    def test_fetch_offline_exits_3(self, capsys):
        assert run(["--offline", "fetch", "https://example.org/t.geojson"]) == 3

    def test_offline_env_var(self, monkeypatch, capsys):
        monkeypatch.setenv("TRAILPACK_OFFLINE", "1")
        assert run(["fetch", "https://example.org/t.geojson"]) == 3

    def test_bundle_build_from_url_offline_exits_3(self, tmp_path):
        assert run(["--offline", "bundle", "build", "https://e.org/t.geojson",
                    "-d", str(tmp_path / "b")]) == 3


class TestBundleAndSimulate:
    def test_verify_clean(self, built_bundle_dir, capsys):
        assert run(["bundle", "verify", built_bundle_dir]) == 0

    def test_verify_tampered_exits_1(self, bundle, capsys):
        rel = next(iter(bundle.assets.values()))
        path = bundle.root / rel
        path.write_bytes(path.read_bytes() + b"x")
        assert run(["bundle", "verify", str(bundle.root)]) == 1

    def test_verify_not_a_bundle_exits_3(self, tmp_path):
        assert run(["bundle", "verify", str(tmp_path)]) == 3

    def test_simulate_empty_trace(self, built_bundle_dir, tmp_path, capsys):
        trace = tmp_path / "walk.csv"
        trace.write_text("")
        assert run(["simulate", "--bundle", built_bundle_dir, "--trace", str(trace)]) == 0
        assert capsys.readouterr().out == ""

    def test_simulate_to_file_and_summary(self, built_bundle_dir, tmp_path, capsys, collection):
        lines = ["t,lat,lon,accuracy"]
        for i, poi in enumerate(collection.pois[:3]):
            lines.append(f"{i * 60},{poi.location.lat},{poi.location.lon},5")
        trace = tmp_path / "walk.csv"
        trace.write_text("\n".join(lines) + "\n")
        events_path = tmp_path / "events.ndjson"
        assert run(["simulate", "--bundle", built_bundle_dir, "--trace", str(trace),
                    "-o", str(events_path)]) == 0
        assert len(events_path.read_text().splitlines()) == 3

        assert run(["summary", "--events", str(events_path)]) == 0
        summary = json.loads(capsys.readouterr().out)
        assert len(summary["pois_visited"]) == 3

    def test_simulate_plot(self, built_bundle_dir, tmp_path, capsys, collection):
        trace = tmp_path / "walk.csv"
        poi = collection.pois[0]
        trace.write_text(f"0,{poi.location.lat},{poi.location.lon},5\n")
        figure = tmp_path / "report.png"
        assert run(["simulate", "--bundle", built_bundle_dir, "--trace", str(trace),
                    "-o", str(tmp_path / "e.ndjson"), "--plot", str(figure)]) == 0
        assert figure.is_file() and figure.stat().st_size > 0

    def test_locate(self, built_bundle_dir, capsys, collection):
        poi = collection.pois[4]
        assert run(["locate", "--bundle", built_bundle_dir,
                    "--lat", str(poi.location.lat), "--lon", str(poi.location.lon)]) == 0
        state = json.loads(capsys.readouterr().out)
        assert state["highlight"] == poi.id
        assert state["distance_text"] == "0 m"

    def test_bundle_build_from_file(self, tmp_path, capsys, monkeypatch):
        # image downloads fail offline but the build degrades, not aborts
        monkeypatch.setenv("TRAILPACK_OFFLINE", "1")
        dest = tmp_path / "b"
        assert run(["bundle", "build", str(FIXTURE_PATH), "-d", str(dest)]) == 0
        assert (dest / "collection.geojson").is_file()
        manifest = json.loads((dest / "manifest.json").read_text())
        assert len(manifest["fetch_failures"]) == 8
        assert run(["bundle", "verify", str(dest)]) == 0
