/**
 * Descriptor-driven validation mirroring the core toolkit's rule engine:
 * same finding codes, same document paths, same error/warning split, same
 * deterministic ordering (collection first, then features in document order,
 * rules alphabetically within each scope).
 */
import { rulesFor } from "./descriptor.js";
export function wordCount(text) {
    const trimmed = text.trim();
    return trimmed === "" ? 0 : trimmed.split(/\s+/).length;
}
function isAbsoluteHttpUrl(value) {
    return /^https?:\/\/[^/?#]/.test(value);
}
function orNull(value) {
    return value === "" ? null : value;
}
function fieldValue(scope, obj, name) {
    if (scope === "collection") {
        const meta = obj.meta;
        switch (name) {
            case "name": return orNull(meta.name);
            case "version": return orNull(meta.version);
            case "language": return orNull(meta.language);
            case "description": return meta.description;
            case "schema": return meta.schema;
            default: return meta.extra[name];
        }
    }
    if (scope === "poi") {
        const poi = obj;
        switch (name) {
            case "type": return "POI";
            case "id": return orNull(poi.id);
            case "title": return orNull(poi.title);
            case "description": return orNull(poi.description);
            case "image": return orNull(poi.image);
            default: return poi.extra[name];
        }
    }
    const track = obj;
    switch (name) {
        case "type": return "track";
        case "title": return track.title;
        default: return track.extra[name];
    }
}
function checkRule(rule, value, path, errors, warnings) {
    if (value === null || value === undefined) {
        if (rule.required) {
            errors.push({ path, code: "required", message: `missing required property '${rule.name}'` });
        }
        return;
    }
    const stringKinds = ["text", "url", "enum"];
    if (stringKinds.includes(rule.kind) && typeof value !== "string") {
        errors.push({ path, code: "type", message: `'${rule.name}' must be a string` });
        return;
    }
    if (rule.kind === "integer" &&
        (typeof value !== "number" || !Number.isInteger(value))) {
        errors.push({ path, code: "type", message: `'${rule.name}' must be an integer` });
        return;
    }
    if (rule.kind === "number" && typeof value !== "number") {
        errors.push({ path, code: "type", message: `'${rule.name}' must be a number` });
        return;
    }
    if (rule.kind === "url" && !isAbsoluteHttpUrl(value)) {
        errors.push({ path, code: "url-shape", message: `'${rule.name}' must be an absolute http(s) URL` });
        return;
    }
    if (rule.kind === "enum" && !(rule.values ?? []).includes(value)) {
        errors.push({ path, code: "enum", message: `'${rule.name}' must be one of ${JSON.stringify(rule.values)}` });
        return;
    }
    if (rule.maxLength !== undefined && typeof value === "string" && value.length > rule.maxLength) {
        errors.push({ path, code: "max-length", message: `'${rule.name}' exceeds ${rule.maxLength} characters` });
        return;
    }
    if (rule.wordBudget !== undefined && typeof value === "string") {
        const count = wordCount(value);
        if (count > rule.wordBudget) {
            warnings.push({
                path, code: "word-budget",
                message: `'${rule.name}' has ${count} words, budget is ${rule.wordBudget}`,
            });
        }
    }
}
function byName(rules) {
    return [...rules].sort((a, b) => (a.name < b.name ? -1 : a.name > b.name ? 1 : 0));
}
export function validateDocument(doc, descriptor) {
    const errors = [];
    const warnings = [];
    for (const rule of byName(rulesFor(descriptor, "collection"))) {
        checkRule(rule, fieldValue("collection", doc, rule.name), `properties.${rule.name}`, errors, warnings);
    }
    const indexed = [];
    doc.pois.forEach((p, i) => {
        indexed.push({ scope: "poi", feature: p, idx: p.sourceIndex >= 0 ? p.sourceIndex : i });
    });
    doc.tracks.forEach((t, i) => {
        indexed.push({
            scope: "track", feature: t,
            idx: t.sourceIndex >= 0 ? t.sourceIndex : doc.pois.length + i,
        });
    });
    indexed.sort((a, b) => a.idx - b.idx);
    for (const { scope, feature, idx } of indexed) {
        for (const rule of byName(rulesFor(descriptor, scope))) {
            checkRule(rule, fieldValue(scope, feature, rule.name), `features[${idx}].properties.${rule.name}`, errors, warnings);
        }
    }
    return { valid: errors.length === 0, errors, warnings };
}
