/**
 * Editing session state: one curator, one document, all local.
 *
 * Findings are recomputed after every field commit. Export is refused while
 * structural errors remain; warnings (such as word-budget overruns) never
 * block export. Parse diagnostics from load are reported as warnings, the
 * same way the command-line validator reports them.
 */
import { rulesFor } from "./descriptor.js";
import { emptyDocument, parseDocument, ParseFailure, serializeDocument, } from "./model.js";
import { validateDocument, wordCount } from "./validate.js";
export class ExportBlocked extends Error {
    constructor(errors) {
        super(`export blocked by ${errors.length} validation error(s)`);
        this.errors = errors;
    }
}
export class UnknownPoi extends Error {
    constructor(id) {
        super(`no POI with id '${id}'`);
    }
}
export class EditorSession {
    constructor(doc, descriptor) {
        this.dirty = false;
        /** Non-fatal parse diagnostics from load, reported alongside warnings. */
        this.parseDiagnostics = [];
        /** Fatal parse failure from load; the session opened in new-tour mode. */
        this.loadError = null;
        this.doc = doc;
        this.descriptor = descriptor;
        this.findings = this.recompute();
    }
    /** Open a document, or a blank new-tour session for empty/broken input. */
    static load(text, descriptor) {
        if (text.trim() === "") {
            return new EditorSession(emptyDocument(), descriptor);
        }
        try {
            const { doc, diagnostics } = parseDocument(text);
            const session = new EditorSession(doc, descriptor);
            session.parseDiagnostics = diagnostics;
            session.findings = session.recompute();
            return session;
        }
        catch (e) {
            if (e instanceof ParseFailure) {
                const session = new EditorSession(emptyDocument(), descriptor);
                session.loadError = e.finding;
                return session;
            }
            throw e;
        }
    }
    recompute() {
        const report = validateDocument(this.doc, this.descriptor);
        return {
            valid: report.valid,
            errors: report.errors,
            warnings: [...report.warnings, ...this.parseDiagnostics],
        };
    }
    commit() {
        this.dirty = true;
        this.findings = this.recompute();
    }
    poi(id) {
        const poi = this.doc.pois.find((p) => p.id === id);
        if (!poi)
            throw new UnknownPoi(id);
        return poi;
    }
    /**
     * Commit one POI field. Returns the findings now attached to that field's
     * path. Numeric fields reject unparsable input without committing.
     */
    editPoi(id, field, value) {
        const poi = this.poi(id);
        if (field === "lon" || field === "lat") {
            const num = Number(value);
            const limit = field === "lon" ? 180 : 90;
            if (value.trim() === "" || Number.isNaN(num) || Math.abs(num) > limit) {
                return [{
                        path: this.poiPath(poi, field),
                        code: "InvalidCoordinate",
                        message: `'${field}' must be a number in [-${limit}, ${limit}]`,
                    }];
            }
            poi[field] = num;
        }
        else {
            poi[field] = value;
        }
        this.commit();
        return this.findingsAt(this.poiPath(poi, field));
    }
    editCollection(field, value) {
        if (field === "description" || field === "schema") {
            this.doc.meta[field] = value === "" ? null : value;
        }
        else {
            this.doc.meta[field] = value;
        }
        this.commit();
        return this.findingsAt(`properties.${field}`);
    }
    addPoi(id) {
        const used = [...this.doc.pois, ...this.doc.tracks].map((f) => f.sourceIndex);
        const poi = {
            id, title: "", description: "", image: "",
            lon: 0, lat: 0, extra: {}, sourceIndex: Math.max(-1, ...used) + 1,
        };
        this.doc.pois.push(poi);
        this.commit();
        return poi;
    }
    removePoi(id) {
        const index = this.doc.pois.findIndex((p) => p.id === id);
        if (index < 0)
            throw new UnknownPoi(id);
        this.doc.pois.splice(index, 1);
        this.commit();
    }
    /** Live word count and budget for a POI's description field. */
    descriptionBudget(id) {
        const poi = this.poi(id);
        const rule = rulesFor(this.descriptor, "poi").find((r) => r.name === "description");
        return { words: wordCount(poi.description), budget: rule?.wordBudget ?? null };
    }
    get exportEnabled() {
        return this.findings.errors.length === 0;
    }
    /** Serialize the working document; refused while errors are outstanding. */
    exportDocument() {
        if (!this.exportEnabled) {
            throw new ExportBlocked(this.findings.errors);
        }
        return serializeDocument(this.doc);
    }
    poiPath(poi, field) {
        const idx = poi.sourceIndex >= 0
            ? poi.sourceIndex
            : this.doc.pois.indexOf(poi);
        const name = field === "lon" || field === "lat" ? "coordinates" : field;
        return field === "lon" || field === "lat"
            ? `features[${idx}].geometry.${name}`
            : `features[${idx}].properties.${name}`;
    }
    findingsAt(path) {
        return [...this.findings.errors, ...this.findings.warnings]
            .filter((f) => f.path === path);
    }
}
