/**
 * Schema-driven form generation. Field lists come straight from the
 * descriptor, in descriptor rule order: adding a rule to the descriptor file
 * adds a form field with no code changes here.
 */

import type { PropertyRule, SchemaDescriptor, Scope } from "./descriptor.js";
import { rulesFor } from "./descriptor.js";

export type Widget = "text" | "textarea" | "url" | "number" | "select";

export interface FieldSpec {
  name: string;
  label: string;
  widget: Widget;
  required: boolean;
  maxLength?: number;
  wordBudget?: number;
  options?: string[];
}

function widgetFor(rule: PropertyRule): Widget {
  switch (rule.kind) {
    case "enum": return "select";
    case "url": return "url";
    case "integer":
    case "number": return "number";
    case "text": return rule.wordBudget !== undefined ? "textarea" : "text";
  }
}

function labelFor(name: string): string {
  return name.charAt(0).toUpperCase() + name.slice(1).replace(/[_-]/g, " ");
}

/** Form fields for one scope, in descriptor rule order. */
export function fieldSpecs(descriptor: SchemaDescriptor, scope: Scope): FieldSpec[] {
  return rulesFor(descriptor, scope).map((rule) => ({
    name: rule.name,
    label: labelFor(rule.name),
    widget: widgetFor(rule),
    required: rule.required,
    maxLength: rule.maxLength,
    wordBudget: rule.wordBudget,
    options: rule.values,
  }));
}

export interface FieldHandle {
  root: HTMLElement;
  input: HTMLInputElement | HTMLTextAreaElement | HTMLSelectElement;
  setMessages(messages: { code: string; message: string }[]): void;
  setCounter(text: string): void;
}

/** Build one labelled form row; `onCommit` fires on every input event. */
export function buildField(
  doc: Document,
  spec: FieldSpec,
  value: string,
  onCommit: (value: string) => void,
): FieldHandle {
  const root = doc.createElement("div");
  root.className = "field";

  const label = doc.createElement("label");
  label.textContent = spec.required ? `${spec.label} *` : spec.label;
  root.appendChild(label);

  let input: HTMLInputElement | HTMLTextAreaElement | HTMLSelectElement;
  if (spec.widget === "select") {
    const select = doc.createElement("select");
    for (const option of spec.options ?? []) {
      const el = doc.createElement("option");
      el.value = option;
      el.textContent = option;
      select.appendChild(el);
    }
    input = select;
  } else if (spec.widget === "textarea") {
    input = doc.createElement("textarea");
  } else {
    const el = doc.createElement("input");
    el.type = spec.widget === "number" ? "text" : spec.widget;
    input = el;
  }
  input.value = value;
  input.addEventListener("input", () => onCommit(input.value));
  root.appendChild(input);

  const counter = doc.createElement("span");
  counter.className = "counter";
  root.appendChild(counter);

  const messages = doc.createElement("ul");
  messages.className = "messages";
  root.appendChild(messages);

  return {
    root,
    input,
    setMessages(found) {
      messages.replaceChildren();
      for (const f of found) {
        const li = doc.createElement("li");
        li.className = f.code === "word-budget" ? "warning" : "error";
        li.textContent = `${f.code}: ${f.message}`;
        messages.appendChild(li);
      }
    },
    setCounter(text) {
      counter.textContent = text;
    },
  };
}
