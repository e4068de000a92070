// Pure view-model helpers; everything here is DOM-free and unit-testable.
export const TARGET_KINDS = [
    { value: "QuestionContainer", label: "Questions" },
    { value: "BookContainer", label: "Book texts" },
    { value: "NameContainer", label: "Names" },
    { value: "ConceptContainer", label: "Concepts" },
    { value: "TermContainer", label: "Terms" },
];
/** Rows in exactly the API order; scores rendered with nine decimals. */
export function resultRows(response) {
    return response.entries.map((entry, i) => ({
        rank: i + 1,
        id: entry.id,
        score: entry.score.toFixed(9),
        namespace: entry.id.split(":", 1)[0] ?? "",
        anchor: entry.anchor ?? null,
        preview: entry.preview ?? null,
    }));
}
export function flattenToc(roots) {
    const rows = [];
    const walk = (node) => {
        rows.push({ id: node.id, label: node.label, depth: node.depth });
        node.children.forEach(walk);
    };
    roots.forEach(walk);
    return rows;
}
/** Anchor of the first description under a topic, for toc navigation. */
export function firstDescriptionAnchor(blocks, topicId) {
    let inTopic = false;
    for (const block of blocks) {
        if (block.kind === "topic") {
            inTopic = block.id === topicId;
        }
        else if (block.kind === "description") {
            if (inTopic || (block.topics ?? []).includes(topicId)) {
                return block.anchor;
            }
        }
    }
    return null;
}
export function describeRecorded(count) {
    if (count === 0)
        return "Nothing recorded yet - record a paragraph to query.";
    return count === 1 ? "1 recorded description" : `${count} recorded descriptions`;
}
