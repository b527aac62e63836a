"""Exception hierarchy shared across the toolkit."""


class TrailpackError(Exception):
    """Base class for all toolkit errors."""


# --- configuration parsing ---------------------------------------------------

class ParseError(TrailpackError):
    """Fatal problem while parsing a tour configuration document."""


class NotUtf8(ParseError):
    pass


class MalformedJson(ParseError):
    def __init__(self, position, message="malformed JSON"):
        super().__init__(f"{message} at position {position}")
        self.position = position


class NotFeatureCollection(ParseError):
    pass


class NoPoiFeatures(ParseError):
    pass


class DuplicatePoiId(ParseError):
    def __init__(self, poi_id):
        super().__init__(f"duplicate POI id {poi_id!r}")
        self.poi_id = poi_id


class InvalidCoordinate(ParseError):
    def __init__(self, path, message="coordinate out of range"):
        super().__init__(f"{message} at {path}")
        self.path = path


class InvariantViolation(TrailpackError):
    def __init__(self, path, message):
        super().__init__(f"{path}: {message}")
        self.path = path


# --- schema descriptors ------------------------------------------------------

class DescriptorError(TrailpackError):
    """Fatal problem while loading a schema descriptor document."""


class MalformedDescriptor(DescriptorError):
    def __init__(self, path, message="malformed descriptor"):
        super().__init__(f"{message} at {path}")
        self.path = path


class DuplicateRule(DescriptorError):
    def __init__(self, scope, name):
        super().__init__(f"duplicate rule ({scope}, {name})")
        self.scope = scope
        self.name = name


class UnknownKind(DescriptorError):
    def __init__(self, name):
        super().__init__(f"unknown property kind {name!r}")
        self.kind = name


# --- geodesy and guidance ----------------------------------------------------

class UndefinedBearing(TrailpackError):
    """Bearing is undefined for coincident or antipodal points."""


class StalePoi(TrailpackError):
    """A highlight references a POI id absent from the active collection."""

    def __init__(self, poi_id):
        super().__init__(f"POI {poi_id!r} not in the active collection")
        self.poi_id = poi_id


# --- provisioning ------------------------------------------------------------

class QrError(TrailpackError):
    """Problem decoding a QR payload string."""


class NotAUrl(QrError):
    pass


class IncompleteMarker(QrError):
    def __init__(self, missing):
        super().__init__(f"location marker missing parameter(s): {', '.join(missing)}")
        self.missing = tuple(missing)


class FetchError(TrailpackError):
    """Problem retrieving a remote resource."""


class NetworkUnavailable(FetchError):
    pass


class HttpStatus(FetchError):
    def __init__(self, code, url=""):
        super().__init__(f"HTTP {code} for {url}" if url else f"HTTP {code}")
        self.code = code


class TooLarge(FetchError):
    def __init__(self, size, cap):
        super().__init__(f"response of {size} bytes exceeds cap of {cap} bytes")
        self.size = size
        self.cap = cap


class BundleError(TrailpackError):
    """Problem building or opening an offline bundle."""


class ValidationFailed(BundleError):
    def __init__(self, report):
        errors = getattr(report, "errors", [])
        super().__init__(f"validation failed with {len(errors)} error(s)")
        self.report = report


class DestinationNotEmpty(BundleError):
    pass


class IoFailure(BundleError):
    def __init__(self, path, message):
        super().__init__(f"{path}: {message}")
        self.path = path


class NotABundle(BundleError):
    pass


class ManifestMismatch(BundleError):
    def __init__(self, path):
        super().__init__(f"digest mismatch for {path}")
        self.path = path


# --- simulation --------------------------------------------------------------

class TraceError(TrailpackError):
    """Fatal problem while parsing a position trace."""


class MalformedLine(TraceError):
    def __init__(self, line_no, message="malformed line"):
        super().__init__(f"line {line_no}: {message}")
        self.line_no = line_no


class NonMonotonicTime(TraceError):
    def __init__(self, line_no):
        super().__init__(f"line {line_no}: timestamps must strictly increase")
        self.line_no = line_no


class InvalidTraceCoordinate(TraceError):
    def __init__(self, line_no):
        super().__init__(f"line {line_no}: coordinate out of range")
        self.line_no = line_no


class EmptyCollection(TrailpackError):
    """A bundle unexpectedly contains no POIs (corruption)."""
