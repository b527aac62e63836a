/**
 * One-shot validation of a document text, shaped like the command-line
 * validator's JSON report: fatal parse failures become a single error
 * finding, and parse diagnostics are appended to the warnings.
 */
import { parseDocument, ParseFailure } from "./model.js";
import { validateDocument } from "./validate.js";
export function reportForText(text, descriptor) {
    let parsed;
    try {
        parsed = parseDocument(text);
    }
    catch (e) {
        if (e instanceof ParseFailure) {
            return { valid: false, errors: [e.finding], warnings: [] };
        }
        throw e;
    }
    const report = validateDocument(parsed.doc, descriptor);
    return {
        valid: report.valid,
        errors: report.errors,
        warnings: [...report.warnings, ...parsed.diagnostics],
    };
}
