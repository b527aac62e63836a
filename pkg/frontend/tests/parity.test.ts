/**
 * Validation parity: the editor's findings must agree with the core
 * command-line validator on the frozen 20-document corpus. Expected reports
 * were captured from `trailpack validate --json` by gen_corpus.py; findings
 * are compared as sorted (path, code) pairs so the two implementations may
 * word their messages differently.
 */
import { readdirSync, readFileSync } from "node:fs";
import { join, dirname } from "node:path";
import { fileURLToPath } from "node:url";
import { describe, expect, it } from "vitest";

import { loadDescriptor } from "../src/descriptor.js";
import { DEFAULT_DESCRIPTOR_JSON } from "../src/default-descriptor.js";
import { reportForText } from "../src/report.js";
import type { Finding } from "../src/model.js";

const corpusDir = join(dirname(fileURLToPath(import.meta.url)), "corpus");
const descriptor = loadDescriptor(DEFAULT_DESCRIPTOR_JSON);

interface Expected {
  exit_code: number;
  valid: boolean;
  errors: Finding[];
  warnings: Finding[];
}

function keys(findings: Finding[]): string[] {
  return findings.map((f) => `${f.path} :: ${f.code}`).sort();
}

const docs = readdirSync(corpusDir).filter((n) => n.endsWith(".geojson")).sort();

describe("editor/core validation parity", () => {
  it("corpus has 20 documents", () => {
    expect(docs).toHaveLength(20);
  });

  for (const name of docs) {
    it(`agrees with the core validator on ${name}`, () => {
      const text = readFileSync(join(corpusDir, name), "utf-8");
      const expectedPath = join(corpusDir, name.replace("doc_", "expected_").replace(".geojson", ".json"));
      const expected = JSON.parse(readFileSync(expectedPath, "utf-8")) as Expected;

      const report = reportForText(text, descriptor);
      expect(report.valid).toBe(expected.valid);
      expect(report.valid).toBe(expected.exit_code === 0);
      expect(keys(report.errors)).toEqual(keys(expected.errors));
      expect(keys(report.warnings)).toEqual(keys(expected.warnings));
    });
  }
});
