import { describe, expect, it } from "vitest";

import { loadDescriptor } from "../src/descriptor.js";
import { DEFAULT_DESCRIPTOR_JSON } from "../src/default-descriptor.js";
import { fieldSpecs } from "../src/form.js";

const descriptor = loadDescriptor(DEFAULT_DESCRIPTOR_JSON);

describe("fieldSpecs", () => {
  it("follows descriptor rule order", () => {
    expect(fieldSpecs(descriptor, "collection").map((f) => f.name))
      .toEqual(["name", "version", "language", "description", "schema"]);
  });

  it("maps rule kinds to widgets", () => {
    const byName = Object.fromEntries(
      fieldSpecs(descriptor, "poi").map((f) => [f.name, f.widget]));
    expect(byName.type).toBe("select");
    expect(byName.image).toBe("url");
    expect(byName.description).toBe("textarea");
    expect(byName.title).toBe("text");
  });

  it("adding a descriptor rule adds a field with no code change", () => {
    const extended = JSON.parse(DEFAULT_DESCRIPTOR_JSON);
    extended.rules.push({ scope: "poi", name: "audio", kind: "url", required: false });
    const specs = fieldSpecs(loadDescriptor(JSON.stringify(extended)), "poi");
    expect(specs.map((f) => f.name)).toContain("audio");
    expect(specs[specs.length - 1]).toMatchObject({ name: "audio", widget: "url", required: false });
  });

  it("carries requiredness and budgets into the specs", () => {
    const description = fieldSpecs(descriptor, "poi").find((f) => f.name === "description");
    expect(description).toMatchObject({ required: true, wordBudget: 300 });
  });
});
