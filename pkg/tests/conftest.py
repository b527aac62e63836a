import json
import sys
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

from trailpack.config_model import parse_collection
from trailpack.provisioning import build_bundle

FIXTURE_PATH = Path(__file__).parent.parent / "fixtures" / "montefegatesi.geojson"


class StubFetcher:
    """In-memory fetcher; maps url -> (status, bytes)."""

    def __init__(self, responses=None):
        self.responses = dict(responses or {})
        self.calls = []

    def get(self, url):
        self.calls.append(url)
        if url not in self.responses:
            return 404, b""
        return self.responses[url]


@pytest.fixture
def fixture_text():
    return FIXTURE_PATH.read_text(encoding="utf-8")


@pytest.fixture
def fixture_doc(fixture_text):
    return json.loads(fixture_text)


@pytest.fixture
def collection(fixture_text):
    c, _ = parse_collection(fixture_text)
    return c


@pytest.fixture
def image_fetcher(collection):
    responses = {
        poi.image_url: (200, f"image-bytes-for-{poi.id}".encode()) for poi in collection.pois
    }
    return StubFetcher(responses)


@pytest.fixture
def bundle(tmp_path, fixture_text, image_fetcher):
    return build_bundle(
        fixture_text, "https://example.org/tour.geojson", image_fetcher, tmp_path / "bundle"
    )
