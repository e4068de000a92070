// Pure view-model helpers; everything here is DOM-free and unit-testable.

import type { BookBlock, QueryEntry, QueryResponse, TocNode } from "./api.js";

export const TARGET_KINDS = [
  { value: "QuestionContainer", label: "Questions" },
  { value: "BookContainer", label: "Book texts" },
  { value: "NameContainer", label: "Names" },
  { value: "ConceptContainer", label: "Concepts" },
  { value: "TermContainer", label: "Terms" },
] as const;

export interface ResultRow {
  rank: number;
  id: string;
  score: string;
  namespace: string;
  anchor: string | null;
  preview: string | null;
}

/** Rows in exactly the API order; scores rendered with nine decimals. */
export function resultRows(response: QueryResponse): ResultRow[] {
  return response.entries.map((entry: QueryEntry, i: number) => ({
    rank: i + 1,
    id: entry.id,
    score: entry.score.toFixed(9),
    namespace: entry.id.split(":", 1)[0] ?? "",
    anchor: entry.anchor ?? null,
    preview: entry.preview ?? null,
  }));
}

export interface TocRow {
  id: string;
  label: string;
  depth: number;
}

export function flattenToc(roots: TocNode[]): TocRow[] {
  const rows: TocRow[] = [];
  const walk = (node: TocNode) => {
    rows.push({ id: node.id, label: node.label, depth: node.depth });
    node.children.forEach(walk);
  };
  roots.forEach(walk);
  return rows;
}

/** Anchor of the first description under a topic, for toc navigation. */
export function firstDescriptionAnchor(blocks: BookBlock[], topicId: string): string | null {
  let inTopic = false;
  for (const block of blocks) {
    if (block.kind === "topic") {
      inTopic = block.id === topicId;
    } else if (block.kind === "description") {
      if (inTopic || (block.topics ?? []).includes(topicId)) {
        return block.anchor;
      }
    }
  }
  return null;
}

export function describeRecorded(count: number): string {
  if (count === 0) return "Nothing recorded yet - record a paragraph to query.";
  return count === 1 ? "1 recorded description" : `${count} recorded descriptions`;
}
