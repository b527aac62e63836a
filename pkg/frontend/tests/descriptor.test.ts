import { describe, expect, it } from "vitest";

import { DescriptorError, loadDescriptor, rulesFor } from "../src/descriptor.js";
import { DEFAULT_DESCRIPTOR_JSON } from "../src/default-descriptor.js";

describe("loadDescriptor", () => {
  it("loads the embedded default descriptor", () => {
    const d = loadDescriptor(DEFAULT_DESCRIPTOR_JSON);
    expect(d.version).toBe("1");
    expect(rulesFor(d, "poi").map((r) => r.name))
      .toEqual(["type", "id", "title", "description", "image"]);
    const description = rulesFor(d, "poi").find((r) => r.name === "description");
    expect(description?.wordBudget).toBe(300);
    expect(description?.required).toBe(true);
  });

  it("rejects non-JSON input", () => {
    expect(() => loadDescriptor("nope")).toThrowError(DescriptorError);
  });

  it("rejects a duplicate (scope, name) rule", () => {
    const text = JSON.stringify({
      version: "1",
      rules: [
        { scope: "poi", name: "title", kind: "text", required: true },
        { scope: "poi", name: "title", kind: "text", required: false },
      ],
    });
    expect(() => loadDescriptor(text)).toThrowError(/duplicate rule/);
  });

  it("rejects an unknown kind", () => {
    const text = JSON.stringify({
      version: "1",
      rules: [{ scope: "poi", name: "title", kind: "blob", required: true }],
    });
    expect(() => loadDescriptor(text)).toThrowError(/unknown kind/);
  });

  it("requires values for enum rules", () => {
    const text = JSON.stringify({
      version: "1",
      rules: [{ scope: "poi", name: "type", kind: "enum", required: true }],
    });
    expect(() => loadDescriptor(text)).toThrowError(/needs values/);
  });
});
