"""Machine-readable property descriptors and data-driven validation.

A descriptor is the public contract for a deployment's tour profile: which
properties exist on the collection, on POIs, and on tracks, what kind of value
each holds, and whether it is required. Validation rules live in descriptor
data, not in code, so a deployment can extend the profile without touching the
toolkit. The document format is specified in docs/schema-descriptor.md.
"""
from __future__ import annotations

import json
from dataclasses import dataclass, field
from urllib.parse import urlsplit

from .config_model import TourCollection, word_count
from .errors import DuplicateRule, MalformedDescriptor, UnknownKind

SCOPES = ("collection", "poi", "track")
KINDS = ("text", "url", "integer", "number", "enum")


@dataclass(frozen=True)
class PropertyRule:
    scope: str
    name: str
    kind: str
    required: bool = False
    max_length: int | None = None
    word_budget: int | None = None
    values: tuple[str, ...] = ()

    def __post_init__(self):
        if self.scope not in SCOPES:
            raise MalformedDescriptor(self.name, f"unknown scope {self.scope!r}")
        if self.kind not in KINDS:
            raise UnknownKind(self.kind)
        if self.kind == "enum" and not self.values:
            raise MalformedDescriptor(self.name, "enum rule needs at least one value")
        if self.max_length is not None and self.max_length <= 0:
            raise MalformedDescriptor(self.name, "max_length must be positive")


@dataclass(frozen=True)
class SchemaDescriptor:
    version: str
    rules: tuple[PropertyRule, ...]

    def __post_init__(self):
        if not self.version:
            raise MalformedDescriptor("version", "version must be nonempty")
        seen = set()
        for rule in self.rules:
            key = (rule.scope, rule.name)
            if key in seen:
                raise DuplicateRule(*key)
            seen.add(key)

    def rules_for(self, scope: str) -> list[PropertyRule]:
        return [r for r in self.rules if r.scope == scope]


@dataclass(frozen=True)
class Finding:
    path: str
    code: str
    message: str


@dataclass
class ValidationReport:
    errors: list[Finding] = field(default_factory=list)
    warnings: list[Finding] = field(default_factory=list)

    @property
    def valid(self) -> bool:
        return not self.errors

    def as_dict(self) -> dict:
        return {
            "valid": self.valid,
            "errors": [vars(f) for f in self.errors],
            "warnings": [vars(f) for f in self.warnings],
        }


def default_descriptor() -> SchemaDescriptor:
    """The built-in descriptor mirroring the toolkit's tour profile."""
    return SchemaDescriptor(
        version="1",
        rules=(
            PropertyRule("collection", "name", "text", required=True),
            PropertyRule("collection", "version", "text", required=True),
            PropertyRule("collection", "language", "text", required=False),
            PropertyRule("collection", "description", "text", required=False),
            PropertyRule("collection", "schema", "url", required=False),
            PropertyRule("poi", "type", "enum", required=True, values=("POI",)),
            PropertyRule("poi", "id", "text", required=True),
            PropertyRule("poi", "title", "text", required=True),
            PropertyRule("poi", "description", "text", required=True, word_budget=300),
            PropertyRule("poi", "image", "url", required=True),
            PropertyRule("track", "type", "enum", required=True, values=("track",)),
            PropertyRule("track", "title", "text", required=False),
        ),
    )


def serialize_descriptor(d: SchemaDescriptor) -> str:
    rules = []
    for r in d.rules:
        entry: dict = {"scope": r.scope, "name": r.name, "kind": r.kind, "required": r.required}
        if r.max_length is not None:
            entry["max_length"] = r.max_length
        if r.word_budget is not None:
            entry["word_budget"] = r.word_budget
        if r.kind == "enum":
            entry["values"] = list(r.values)
        rules.append(entry)
    return json.dumps({"version": d.version, "rules": rules}, ensure_ascii=False, indent=2) + "\n"


def load_descriptor(text: bytes | str) -> SchemaDescriptor:
    """Parse a descriptor document; structural problems raise DescriptorError."""
    if isinstance(text, bytes):
        text = text.decode("utf-8")
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise MalformedDescriptor("", exc.msg) from exc
    if not isinstance(doc, dict):
        raise MalformedDescriptor("", "descriptor root must be an object")
    version = doc.get("version")
    if not isinstance(version, str) or not version:
        raise MalformedDescriptor("version", "missing or empty version")
    raw_rules = doc.get("rules")
    if not isinstance(raw_rules, list):
        raise MalformedDescriptor("rules", "missing rules array")

    rules = []
    for i, raw in enumerate(raw_rules):
        path = f"rules[{i}]"
        if not isinstance(raw, dict):
            raise MalformedDescriptor(path, "rule must be an object")
        for key in ("scope", "name", "kind"):
            if not isinstance(raw.get(key), str):
                raise MalformedDescriptor(f"{path}.{key}", f"missing {key}")
        kind = raw["kind"]
        if kind not in KINDS:
            raise UnknownKind(kind)
        if raw["scope"] not in SCOPES:
            raise MalformedDescriptor(f"{path}.scope", f"unknown scope {raw['scope']!r}")
        rules.append(PropertyRule(
            scope=raw["scope"],
            name=raw["name"],
            kind=kind,
            required=bool(raw.get("required", False)),
            max_length=raw.get("max_length"),
            word_budget=raw.get("word_budget"),
            values=tuple(raw.get("values", ())),
        ))
    return SchemaDescriptor(version=version, rules=tuple(rules))


def _is_absolute_http_url(value: str) -> bool:
    parts = urlsplit(value)
    return parts.scheme in ("http", "https") and bool(parts.netloc)


def _feature_value(scope: str, obj, name: str):
    """Resolve a rule name to the parsed model field it landed in."""
    if scope == "collection":
        mapping = {
            "name": obj.meta.name or None,
            "version": obj.meta.version or None,
            "language": obj.meta.language or None,
            "description": obj.meta.description,
            "schema": obj.meta.schema_url,
        }
        if name in mapping:
            return mapping[name]
        return obj.meta.extra.get(name)
    if scope == "poi":
        mapping = {
            "type": "POI",
            "id": obj.id or None,
            "title": obj.title or None,
            "description": obj.description or None,
            "image": obj.image_url or None,
        }
        if name in mapping:
            return mapping[name]
        return obj.extra.get(name)
    mapping = {"type": "track", "title": obj.title}
    if name in mapping:
        return mapping[name]
    return obj.extra.get(name)


def _check_rule(rule: PropertyRule, value, path: str, errors, warnings):
    if value is None:
        if rule.required:
            errors.append(Finding(path, "required", f"missing required property {rule.name!r}"))
        return
    if rule.kind in ("text", "url", "enum") and not isinstance(value, str):
        errors.append(Finding(path, "type", f"{rule.name!r} must be a string"))
        return
    if rule.kind == "integer" and (isinstance(value, bool) or not isinstance(value, int)):
        errors.append(Finding(path, "type", f"{rule.name!r} must be an integer"))
        return
    if rule.kind == "number" and (isinstance(value, bool) or not isinstance(value, (int, float))):
        errors.append(Finding(path, "type", f"{rule.name!r} must be a number"))
        return
    if rule.kind == "url" and not _is_absolute_http_url(value):
        errors.append(Finding(path, "url-shape", f"{rule.name!r} must be an absolute http(s) URL"))
        return
    if rule.kind == "enum" and value not in rule.values:
        errors.append(Finding(path, "enum", f"{rule.name!r} must be one of {list(rule.values)}"))
        return
    if rule.max_length is not None and isinstance(value, str) and len(value) > rule.max_length:
        errors.append(Finding(path, "max-length", f"{rule.name!r} exceeds {rule.max_length} characters"))
        return
    if rule.word_budget is not None and isinstance(value, str):
        count = word_count(value)
        if count > rule.word_budget:
            warnings.append(Finding(
                path, "word-budget",
                f"{rule.name!r} has {count} words, budget is {rule.word_budget}",
            ))


def validate(c: TourCollection, d: SchemaDescriptor) -> ValidationReport:
    """Apply every descriptor rule; findings carry feature-indexed paths.

    Report order is deterministic: collection findings first, then features in
    document order, rules by name within a feature.
    """
    errors: list[Finding] = []
    warnings: list[Finding] = []

    for rule in sorted(d.rules_for("collection"), key=lambda r: r.name):
        _check_rule(rule, _feature_value("collection", c, rule.name),
                    f"properties.{rule.name}", errors, warnings)

    indexed = [("poi", p, p.source_index if p.source_index >= 0 else i)
               for i, p in enumerate(c.pois)]
    indexed += [("track", t, t.source_index if t.source_index >= 0 else len(c.pois) + i)
                for i, t in enumerate(c.tracks)]
    indexed.sort(key=lambda item: item[2])

    for scope, feature, idx in indexed:
        for rule in sorted(d.rules_for(scope), key=lambda r: r.name):
            _check_rule(rule, _feature_value(scope, feature, rule.name),
                        f"features[{idx}].properties.{rule.name}", errors, warnings)

    return ValidationReport(errors=errors, warnings=warnings)
