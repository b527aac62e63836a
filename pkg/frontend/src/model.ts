/**
 * Editor-side mirror of the tour configuration document.
 *
 * Parsing is deliberately lenient where the core parser is lenient (missing
 * profile properties become empty fields for the form to flag) and strict
 * where it is strict (bad root, bad coordinates, duplicate ids). Unknown
 * properties are carried through untouched so a load/export cycle never
 * destroys extensions the editor does not understand.
 */

export interface Finding {
  path: string;
  code: string;
  message: string;
}

export interface Poi {
  id: string;
  title: string;
  description: string;
  image: string;
  lon: number;
  lat: number;
  extra: Record<string, unknown>;
  sourceIndex: number;
}

export interface Track {
  title: string | null;
  points: [number, number][]; // [lon, lat]
  extra: Record<string, unknown>;
  sourceIndex: number;
}

export interface CollectionMeta {
  name: string;
  version: string;
  language: string;
  description: string | null;
  schema: string | null;
  extra: Record<string, unknown>;
}

export interface TourDocument {
  meta: CollectionMeta;
  pois: Poi[];
  tracks: Track[];
}

export class ParseFailure extends Error {
  constructor(public finding: Finding) {
    super(finding.message);
  }
}

const POI_KEYS = ["type", "id", "title", "description", "image"];
const TRACK_KEYS = ["type", "title"];

export const POI_ID_PATTERN = /^[A-Za-z0-9._-]+$/;

function fail(path: string, code: string, message: string): never {
  throw new ParseFailure({ path, code, message });
}

function asPosition(value: unknown, path: string): [number, number] {
  if (!Array.isArray(value) || value.length < 2 ||
      typeof value[0] !== "number" || typeof value[1] !== "number") {
    fail(path, "InvalidCoordinate", "position must be [lon, lat] numbers");
  }
  const [lon, lat] = value as [number, number];
  if (lon < -180 || lon > 180 || lat < -90 || lat > 90) {
    fail(path, "InvalidCoordinate", `(${lon}, ${lat}) outside valid range`);
  }
  return [lon, lat];
}

function str(value: unknown): string {
  if (value === undefined || value === null) return "";
  return typeof value === "string" ? value : JSON.stringify(value);
}

export function parseDocument(text: string): { doc: TourDocument; diagnostics: Finding[] } {
  const diagnostics: Finding[] = [];
  let root: unknown;
  try {
    root = JSON.parse(text.replace(/^﻿/, ""));
  } catch (e) {
    fail("", "MalformedJson", String(e));
  }
  if (typeof root !== "object" || root === null ||
      (root as Record<string, unknown>).type !== "FeatureCollection") {
    fail("", "NotFeatureCollection", "root object is not a FeatureCollection");
  }
  const obj = root as Record<string, unknown>;

  const meta: CollectionMeta = {
    name: "", version: "", language: "", description: null, schema: null, extra: {},
  };
  let props: Record<string, unknown>;
  if (typeof obj.properties === "object" && obj.properties !== null) {
    props = obj.properties as Record<string, unknown>;
  } else {
    diagnostics.push({
      path: "properties", code: "missing", message: "collection has no properties object",
    });
    props = {};
  }
  for (const [key, value] of Object.entries(props)) {
    if (key === "name") meta.name = str(value);
    else if (key === "version") meta.version = str(value);
    else if (key === "language") meta.language = str(value);
    else if (key === "description") meta.description = str(value);
    else if (key === "schema") meta.schema = str(value);
    else {
      meta.extra[key] = value;
      diagnostics.push({
        path: `properties.${key}`,
        code: "unknown-property",
        message: `unknown collection property '${key}' preserved`,
      });
    }
  }

  const features = obj.features;
  if (!Array.isArray(features)) {
    fail("", "NotFeatureCollection", "FeatureCollection has no features array");
  }

  const pois: Poi[] = [];
  const tracks: Track[] = [];
  features.forEach((feature, idx) => {
    const path = `features[${idx}]`;
    if (typeof feature !== "object" || feature === null ||
        (feature as Record<string, unknown>).type !== "Feature") {
      diagnostics.push({ path, code: "skipped", message: "not a Feature object" });
      return;
    }
    const f = feature as Record<string, unknown>;
    const geometry = f.geometry as Record<string, unknown> | null;
    const fprops = (typeof f.properties === "object" && f.properties !== null)
      ? (f.properties as Record<string, unknown>)
      : {};
    if (typeof geometry !== "object" || geometry === null) {
      diagnostics.push({ path: `${path}.geometry`, code: "skipped", message: "missing geometry" });
      return;
    }
    const geomType = geometry.type;
    let role = (fprops.type ?? undefined) as string | undefined;
    if (role === undefined) {
      role = geomType === "Point" ? "POI" : geomType === "LineString" ? "track" : undefined;
      if (role !== undefined) {
        diagnostics.push({
          path: `${path}.properties.type`,
          code: "inferred",
          message: `missing 'type' property, inferred '${role}' from geometry`,
        });
      }
    }
    if (role === "POI" && geomType === "Point") {
      const [lon, lat] = asPosition(geometry.coordinates, `${path}.geometry.coordinates`);
      const extra: Record<string, unknown> = {};
      for (const key of Object.keys(fprops)) {
        if (!POI_KEYS.includes(key)) {
          extra[key] = fprops[key];
          diagnostics.push({
            path: `${path}.properties.${key}`,
            code: "unknown-property",
            message: `unknown POI property '${key}' preserved`,
          });
        }
      }
      pois.push({
        id: str(fprops.id),
        title: str(fprops.title),
        description: str(fprops.description),
        image: str(fprops.image),
        lon, lat, extra,
        sourceIndex: idx,
      });
    } else if (role === "track" && geomType === "LineString") {
      const coords = geometry.coordinates;
      if (!Array.isArray(coords)) {
        fail(`${path}.geometry.coordinates`, "InvalidCoordinate",
             "LineString coordinates must be an array");
      }
      const points: [number, number][] = [];
      (coords as unknown[]).forEach((c, j) => {
        const pt = asPosition(c, `${path}.geometry.coordinates[${j}]`);
        const prev = points[points.length - 1];
        if (prev && prev[0] === pt[0] && prev[1] === pt[1]) return;
        points.push(pt);
      });
      if (points.length < 2) {
        diagnostics.push({
          path: `${path}.geometry`,
          code: "skipped",
          message: "track needs at least 2 distinct points",
        });
        return;
      }
      const extra: Record<string, unknown> = {};
      for (const key of Object.keys(fprops)) {
        if (!TRACK_KEYS.includes(key)) {
          extra[key] = fprops[key];
          diagnostics.push({
            path: `${path}.properties.${key}`,
            code: "unknown-property",
            message: `unknown track property '${key}' preserved`,
          });
        }
      }
      tracks.push({
        title: fprops.title === undefined ? null : str(fprops.title),
        points, extra,
        sourceIndex: idx,
      });
    } else {
      diagnostics.push({
        path: `${path}.geometry`,
        code: "skipped",
        message: `unsupported feature role/geometry '${role ?? String(geomType)}'`,
      });
    }
  });

  if (pois.length === 0) {
    fail("", "NoPoiFeatures", "document contains no POI features");
  }
  const seen = new Set<string>();
  for (const poi of pois) {
    if (poi.id !== "" && seen.has(poi.id)) {
      fail("", "DuplicatePoiId", `duplicate POI id '${poi.id}'`);
    }
    seen.add(poi.id);
  }
  return { doc: { meta, pois, tracks }, diagnostics };
}

function orderedProps(
  known: [string, unknown][],
  extra: Record<string, unknown>,
): Record<string, unknown> {
  const out: Record<string, unknown> = {};
  for (const [key, value] of known) {
    if (value !== null && value !== undefined) out[key] = value;
  }
  for (const key of Object.keys(extra).sort()) out[key] = extra[key];
  return out;
}

/** Canonical serialization mirroring the core toolkit's key order. */
export function serializeDocument(doc: TourDocument): string {
  const features: unknown[] = [];
  for (const poi of doc.pois) {
    features.push({
      type: "Feature",
      geometry: { type: "Point", coordinates: [poi.lon, poi.lat] },
      properties: orderedProps(
        [["type", "POI"], ["id", poi.id], ["title", poi.title],
         ["description", poi.description], ["image", poi.image]],
        poi.extra,
      ),
    });
  }
  for (const track of doc.tracks) {
    features.push({
      type: "Feature",
      geometry: { type: "LineString", coordinates: track.points },
      properties: orderedProps([["type", "track"], ["title", track.title]], track.extra),
    });
  }
  const root = {
    type: "FeatureCollection",
    properties: orderedProps(
      [["name", doc.meta.name], ["version", doc.meta.version],
       ["language", doc.meta.language === "" ? null : doc.meta.language],
       ["description", doc.meta.description], ["schema", doc.meta.schema]],
      doc.meta.extra,
    ),
    features,
  };
  return JSON.stringify(root, null, 2) + "\n";
}

export function emptyDocument(): TourDocument {
  return {
    meta: { name: "", version: "", language: "", description: null, schema: null, extra: {} },
    pois: [],
    tracks: [],
  };
}
