"""trailpack: validate, bundle, and simulate offline-first GeoJSON walking tours."""

from .config_model import (
    CollectionMeta,
    Diagnostic,
    GeoPoint,
    PoiFeature,
    TourCollection,
    TrackFeature,
    parse_collection,
    serialize_collection,
)
from .geo import (
    GpsFix,
    HighlightState,
    haversine_distance,
    initial_bearing,
    nearest_poi,
    point_to_track_distance,
    select_highlight,
)
from .provisioning import (
    Bundle,
    QrPayload,
    build_bundle,
    decode_qr_payload,
    encode_bootstrap,
    fetch_collection,
    open_bundle,
    verify_bundle,
)
from .schema import (
    PropertyRule,
    SchemaDescriptor,
    ValidationReport,
    default_descriptor,
    load_descriptor,
    validate,
)
from .sim import (
    GuidanceEvent,
    ScreenState,
    TracePoint,
    VisitSummary,
    parse_trace,
    render_screen_state,
    simulate,
    summarize,
    truncate_description,
)

__version__ = "0.1.0"
