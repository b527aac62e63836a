/**
 * Page wiring for the offline editor. Everything happens in the browser:
 * file open/save uses the standard file dialogs, and no network request is
 * made after the page itself loads.
 */

import { loadDescriptor, type SchemaDescriptor } from "./descriptor.js";
import { DEFAULT_DESCRIPTOR_JSON } from "./default-descriptor.js";
import { buildField, fieldSpecs } from "./form.js";
import { EditorSession, type CollectionField, type PoiField } from "./session.js";

let descriptor: SchemaDescriptor = loadDescriptor(DEFAULT_DESCRIPTOR_JSON);
let session = EditorSession.load("", descriptor);
let selectedPoi: string | null = null;

function byId<T extends HTMLElement>(id: string): T {
  return document.getElementById(id) as T;
}

function renderStatus(): void {
  const status = byId<HTMLElement>("status");
  const parts: string[] = [];
  if (session.loadError) {
    parts.push(`load failed (${session.loadError.code}): ${session.loadError.message} — started a new tour`);
  }
  parts.push(`${session.findings.errors.length} error(s), ${session.findings.warnings.length} warning(s)`);
  if (session.dirty) parts.push("unsaved changes");
  status.textContent = parts.join(" · ");
  byId<HTMLButtonElement>("save").disabled = !session.exportEnabled;
}

function renderCollectionForm(): void {
  const container = byId<HTMLElement>("collection-form");
  container.replaceChildren();
  for (const spec of fieldSpecs(descriptor, "collection")) {
    const name = spec.name as CollectionField;
    const meta = session.doc.meta as unknown as Record<string, unknown>;
    const raw = name in meta ? meta[name] : session.doc.meta.extra[name];
    const handle = buildField(document, spec, raw == null ? "" : String(raw), (value) => {
      const findings = session.editCollection(name, value);
      handle.setMessages(findings);
      renderStatus();
    });
    handle.setMessages(session.findings.errors.concat(session.findings.warnings)
      .filter((f) => f.path === `properties.${spec.name}`));
    container.appendChild(handle.root);
  }
}

function renderPoiList(): void {
  const list = byId<HTMLElement>("poi-list");
  list.replaceChildren();
  for (const poi of session.doc.pois) {
    const li = document.createElement("li");
    const button = document.createElement("button");
    button.textContent = poi.title || poi.id || "(unnamed)";
    button.addEventListener("click", () => {
      selectedPoi = poi.id;
      renderPoiForm();
    });
    li.appendChild(button);
    list.appendChild(li);
  }
}

function renderPoiForm(): void {
  const container = byId<HTMLElement>("poi-form");
  container.replaceChildren();
  if (selectedPoi === null) return;
  const poi = session.poi(selectedPoi);
  const idx = poi.sourceIndex >= 0 ? poi.sourceIndex : session.doc.pois.indexOf(poi);

  for (const spec of fieldSpecs(descriptor, "poi")) {
    if (spec.name === "type") continue; // fixed by the feature role
    const name = spec.name as PoiField;
    const record = poi as unknown as Record<string, unknown>;
    const raw = name in record ? record[name] : poi.extra[name];
    const handle = buildField(document, spec, raw == null ? "" : String(raw), (value) => {
      const findings = session.editPoi(poi.id, name, value);
      selectedPoi = poi.id;
      handle.setMessages(findings);
      if (spec.wordBudget !== undefined) {
        const { words, budget } = session.descriptionBudget(poi.id);
        handle.setCounter(`${words} / ${budget} words`);
      }
      renderStatus();
    });
    handle.setMessages(session.findings.errors.concat(session.findings.warnings)
      .filter((f) => f.path === `features[${idx}].properties.${spec.name}`));
    if (spec.wordBudget !== undefined) {
      const { words, budget } = session.descriptionBudget(poi.id);
      handle.setCounter(`${words} / ${budget} words`);
    }
    container.appendChild(handle.root);
  }

  for (const coord of ["lon", "lat"] as const) {
    const handle = buildField(
      document,
      { name: coord, label: coord === "lon" ? "Longitude" : "Latitude",
        widget: "number", required: true },
      String(poi[coord]),
      (value) => {
        const findings = session.editPoi(poi.id, coord, value);
        handle.setMessages(findings);
        renderStatus();
      },
    );
    container.appendChild(handle.root);
  }
}

function renderAll(): void {
  renderStatus();
  renderCollectionForm();
  renderPoiList();
  renderPoiForm();
}

function openFile(file: File): void {
  const reader = new FileReader();
  reader.onload = () => {
    session = EditorSession.load(String(reader.result), descriptor);
    selectedPoi = session.doc.pois[0]?.id ?? null;
    renderAll();
  };
  reader.readAsText(file);
}

function openDescriptor(file: File): void {
  const reader = new FileReader();
  reader.onload = () => {
    descriptor = loadDescriptor(String(reader.result));
    session.descriptor = descriptor;
    renderAll();
  };
  reader.readAsText(file);
}

function saveFile(): void {
  const text = session.exportDocument();
  const blob = new Blob([text], { type: "application/geo+json" });
  const link = document.createElement("a");
  link.href = URL.createObjectURL(blob);
  link.download = "tour.geojson";
  link.click();
  URL.revokeObjectURL(link.href);
  session.dirty = false;
  renderStatus();
}

export function main(): void {
  byId<HTMLInputElement>("open").addEventListener("change", (event) => {
    const file = (event.target as HTMLInputElement).files?.[0];
    if (file) openFile(file);
  });
  byId<HTMLInputElement>("open-descriptor").addEventListener("change", (event) => {
    const file = (event.target as HTMLInputElement).files?.[0];
    if (file) openDescriptor(file);
  });
  byId<HTMLButtonElement>("save").addEventListener("click", saveFile);
  byId<HTMLButtonElement>("new-poi").addEventListener("click", () => {
    const id = `poi-${session.doc.pois.length + 1}`;
    session.addPoi(id);
    selectedPoi = id;
    renderAll();
  });
  renderAll();
}

if (typeof document !== "undefined" && document.getElementById("open")) {
  main();
}
