"""Seeded random generators for collections and traces used across tests."""
import random
import string

from trailpack.config_model import (
    CollectionMeta,
    GeoPoint,
    PoiFeature,
    TourCollection,
    TrackFeature,
)

_ID_ALPHABET = string.ascii_lowercase + string.digits + "._-"


def random_collection(rng: random.Random, max_pois=12, max_tracks=2) -> TourCollection:
    n_pois = rng.randint(1, max_pois)
    base_lon = rng.uniform(-170, 170)
    base_lat = rng.uniform(-80, 80)
    ids = set()
    pois = []
    while len(pois) < n_pois:
        poi_id = "".join(rng.choice(_ID_ALPHABET) for _ in range(rng.randint(1, 12)))
        if poi_id in ids:
            continue
        ids.add(poi_id)
        pois.append(PoiFeature(
            id=poi_id,
            title=" ".join(rng.choice(["Mill", "Bridge", "Spring", "Ruin", "Gate"])
                           for _ in range(rng.randint(1, 3))),
            description=" ".join("word%d" % rng.randint(0, 500)
                                 for _ in range(rng.randint(0, 80))),
            image_url=f"https://example.org/img/{poi_id}.jpg",
            location=GeoPoint(
                lon=round(base_lon + rng.uniform(-0.05, 0.05), 6),
                lat=round(base_lat + rng.uniform(-0.05, 0.05), 6),
            ),
            extra={"note": "x"} if rng.random() < 0.2 else {},
        ))
    tracks = []
    for _ in range(rng.randint(0, max_tracks)):
        n_pts = rng.randint(2, 8)
        pts = []
        while len(pts) < n_pts:
            pt = GeoPoint(
                lon=round(base_lon + rng.uniform(-0.05, 0.05), 6),
                lat=round(base_lat + rng.uniform(-0.05, 0.05), 6),
            )
            if pts and pt == pts[-1]:
                continue
            pts.append(pt)
        tracks.append(TrackFeature(points=pts, title=rng.choice([None, "walk", "loop"])))
    meta = CollectionMeta(
        name="tour-%d" % rng.randint(0, 10**6),
        version="%d.%d" % (rng.randint(0, 9), rng.randint(0, 9)),
        language=rng.choice(["", "en", "it", "de-CH"]),
        description=rng.choice([None, "a generated tour"]),
        schema_url=rng.choice([None, "https://example.org/schema.json"]),
    )
    return TourCollection(meta=meta, pois=pois, tracks=tracks)
