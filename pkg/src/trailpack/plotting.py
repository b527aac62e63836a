"""Figure rendering for simulation reports.

Renders a plan view of a tour (POIs, recommended tracks, and optionally the
replayed trace) to an image file next to the NDJSON output. Axes are plain
lon/lat degrees; at tour scale the distortion is irrelevant for a report.
"""
from __future__ import annotations

from pathlib import Path

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt

from .config_model import TourCollection
from .sim import GuidanceEvent


def render_tour_map(
    collection: TourCollection,
    out_path: str | Path,
    events: list[GuidanceEvent] | None = None,
    arrival_m: float | None = None,
    title: str | None = None,
) -> Path:
    """Write a tour overview figure; returns the path written."""
    fig, ax = plt.subplots(figsize=(7, 7))

    for track in collection.tracks:
        lons = [p.lon for p in track.points]
        lats = [p.lat for p in track.points]
        ax.plot(lons, lats, color="tab:green", linewidth=1.5, alpha=0.8,
                label=track.title or "track")

    ax.scatter(
        [p.location.lon for p in collection.pois],
        [p.location.lat for p in collection.pois],
        color="tab:red", zorder=3, s=40, label="POI",
    )
    for poi in collection.pois:
        ax.annotate(poi.id, (poi.location.lon, poi.location.lat),
                    textcoords="offset points", xytext=(4, 4), fontsize=8)

    if events:
        lons = [e.fix.location.lon for e in events]
        lats = [e.fix.location.lat for e in events]
        ax.plot(lons, lats, color="tab:blue", linewidth=1.0, alpha=0.7, label="trace")
        changes = [e for e in events if e.changed]
        if changes:
            ax.scatter(
                [e.fix.location.lon for e in changes],
                [e.fix.location.lat for e in changes],
                marker="x", color="tab:blue", zorder=4, s=30, label="highlight change",
            )

    ax.set_xlabel("longitude (°E)")
    ax.set_ylabel("latitude (°N)")
    ax.set_title(title or collection.meta.name)
    ax.set_aspect("equal", adjustable="datalim")
    handles, labels = ax.get_legend_handles_labels()
    seen: dict[str, object] = {}
    for handle, label in zip(handles, labels):
        seen.setdefault(label, handle)
    if seen:
        ax.legend(seen.values(), seen.keys(), loc="best", fontsize=8)
    ax.grid(True, linewidth=0.3, alpha=0.5)

    out = Path(out_path)
    fig.savefig(out, dpi=150, bbox_inches="tight")
    plt.close(fig)
    return out
