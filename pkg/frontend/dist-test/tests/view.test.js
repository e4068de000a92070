import assert from "node:assert/strict";
import { test } from "node:test";
import { TARGET_KINDS, describeRecorded, firstDescriptionAnchor, flattenToc, resultRows, } from "../src/view.js";
test("result rows preserve API order exactly and format scores to 9 dp", () => {
    const response = {
        target_kind: "QuestionContainer",
        entries: [
            { id: "q:b", score: 0.125, anchor: "o:q:b", preview: "two" },
            { id: "q:a", score: 0.0625 },
        ],
        warnings: [],
    };
    const rows = resultRows(response);
    assert.deepEqual(rows.map((r) => [r.rank, r.id, r.score]), [
        [1, "q:b", "0.125000000"],
        [2, "q:a", "0.062500000"],
    ]);
    assert.equal(rows[0].namespace, "q");
    assert.equal(rows[1].anchor, null);
});
test("toc flattening is depth-first in declaration order", () => {
    const roots = [
        {
            id: "topic:a",
            label: "A",
            depth: 1,
            children: [
                { id: "topic:a1", label: "A1", depth: 2, children: [] },
                { id: "topic:a2", label: "A2", depth: 2, children: [] },
            ],
        },
        { id: "topic:b", label: "B", depth: 1, children: [] },
    ];
    assert.deepEqual(flattenToc(roots).map((r) => r.id), ["topic:a", "topic:a1", "topic:a2", "topic:b"]);
});
test("first description anchor follows the topic in reading order", () => {
    const blocks = [
        { id: "topic:a", kind: "topic", anchor: "", text: "A" },
        { id: "q:q0", kind: "question", anchor: "o:q:q0" },
        { id: "dsc:one", kind: "description", anchor: "o:descp:one", topics: ["topic:a"] },
        { id: "topic:b", kind: "topic", anchor: "", text: "B" },
        { id: "dsc:two", kind: "description", anchor: "o:descp:two", topics: ["topic:b", "topic:a"] },
    ];
    assert.equal(firstDescriptionAnchor(blocks, "topic:a"), "o:descp:one");
    assert.equal(firstDescriptionAnchor(blocks, "topic:b"), "o:descp:two");
    assert.equal(firstDescriptionAnchor(blocks, "topic:missing"), null);
});
test("all five container kinds are selectable", () => {
    assert.deepEqual(TARGET_KINDS.map((k) => k.value), [
        "QuestionContainer",
        "BookContainer",
        "NameContainer",
        "ConceptContainer",
        "TermContainer",
    ]);
});
test("recorded hint wording", () => {
    assert.match(describeRecorded(0), /Nothing recorded/);
    assert.equal(describeRecorded(1), "1 recorded description");
    assert.equal(describeRecorded(3), "3 recorded descriptions");
});
