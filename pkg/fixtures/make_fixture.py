"""Regenerate the Montefegatesi reference fixture in canonical form.

Eight mill POIs inside a ~1 km x 1 km box near the village, plus one
recommended track threading through them. Run from the repository root:

    python fixtures/make_fixture.py
"""
from pathlib import Path

from trailpack.config_model import (
    CollectionMeta,
    GeoPoint,
    PoiFeature,
    TourCollection,
    TrackFeature,
    serialize_collection,
)

# ~1 km box: 0.009 deg of latitude, 0.0125 deg of longitude at 44 N.
BASE_LON = 10.620
BASE_LAT = 44.060

MILLS = [
    ("mill-1", 0.0005, 0.0004, "Lower valley mill with an intact grinding chamber."),
    ("mill-2", 0.0022, 0.0013, "Twin-wheel mill; the headrace channel is still visible."),
    ("mill-3", 0.0041, 0.0009, "Ruined mill whose millstones lie beside the stream."),
    ("mill-4", 0.0058, 0.0021, "Mid-valley mill with a restored wooden sluice gate."),
    ("mill-5", 0.0072, 0.0035, "Mill rebuilt in the nineteenth century on older footings."),
    ("mill-6", 0.0089, 0.0047, "Smallest of the group, fed by a stone aqueduct."),
    ("mill-7", 0.0104, 0.0063, "Upper mill with carved ownership marks on the lintel."),
    ("mill-8", 0.0119, 0.0078, "Highest mill, closest to the spring that fed the system."),
]


def build_collection() -> TourCollection:
    pois = []
    for poi_id, dlon, dlat, first_sentence in MILLS:
        description = (
            f"{first_sentence} The mill belongs to the group of eight hydraulic mills "
            "that once served the village, drawing water from the same mountain stream "
            "through a shared system of channels and basins. Interpretive details on "
            "site are sparse, so take time to trace the water path from intake to wheel pit."
        )
        pois.append(PoiFeature(
            id=poi_id,
            title=f"Hydraulic mill {poi_id.split('-')[1]}",
            description=description,
            image_url=f"https://example.org/images/{poi_id}.jpg",
            location=GeoPoint(lon=BASE_LON + dlon, lat=BASE_LAT + dlat),
        ))
    track = TrackFeature(
        title="Mill valley walk",
        points=[p.location for p in pois],
    )
    meta = CollectionMeta(
        name="Montefegatesi mill valley",
        version="1.0",
        language="en",
        description="Walking tour of the eight hydraulic mills near Montefegatesi.",
        schema_url="https://example.org/tour-schema.json",
    )
    return TourCollection(meta=meta, pois=pois, tracks=[track])


if __name__ == "__main__":
    out = Path(__file__).parent / "montefegatesi.geojson"
    out.write_text(serialize_collection(build_collection()), encoding="utf-8")
    print(f"wrote {out}")
