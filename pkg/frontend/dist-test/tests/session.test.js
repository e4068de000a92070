import assert from "node:assert/strict";
import { test } from "node:test";
import { ReadingSession } from "../src/session.js";
function memoryStorage() {
    const data = new Map();
    return {
        data,
        getItem: (k) => data.get(k) ?? null,
        setItem: (k, v) => void data.set(k, v),
    };
}
test("toggle records and un-records in click order", () => {
    const session = new ReadingSession(memoryStorage());
    assert.equal(session.toggle("dsc:b"), true);
    assert.equal(session.toggle("dsc:a"), true);
    assert.deepEqual([...session.recorded], ["dsc:b", "dsc:a"]);
    assert.equal(session.toggle("dsc:b"), false);
    assert.deepEqual([...session.recorded], ["dsc:a"]);
    assert.equal(session.isRecorded("dsc:a"), true);
    assert.equal(session.isRecorded("dsc:b"), false);
});
test("a new session over the same storage restores the recorded set", () => {
    const storage = memoryStorage();
    const first = new ReadingSession(storage);
    first.toggle("dsc:x");
    first.toggle("dsc:y");
    first.rememberQuery({ target_kind: "QuestionContainer", k: 5 });
    const reloaded = new ReadingSession(storage);
    assert.deepEqual([...reloaded.recorded], ["dsc:x", "dsc:y"]);
    assert.deepEqual(reloaded.lastQuery, { target_kind: "QuestionContainer", k: 5 });
});
test("ids outside the served book are rejected", () => {
    const session = new ReadingSession(memoryStorage(), new Set(["dsc:real"]));
    session.toggle("dsc:real");
    assert.throws(() => session.toggle("dsc:fake"), /unknown description/);
    assert.deepEqual([...session.recorded], ["dsc:real"]);
});
test("stale persisted ids are dropped against the current book", () => {
    const storage = memoryStorage();
    const old = new ReadingSession(storage);
    old.toggle("dsc:kept");
    old.toggle("dsc:gone");
    const next = new ReadingSession(storage, new Set(["dsc:kept"]));
    assert.deepEqual([...next.recorded], ["dsc:kept"]);
});
test("corrupt storage payloads reset the session instead of throwing", () => {
    const storage = memoryStorage();
    storage.setItem("bookwalk.session.v1", "{not json");
    const session = new ReadingSession(storage);
    assert.deepEqual([...session.recorded], []);
    assert.equal(session.lastQuery, null);
});
test("null storage disables persistence but keeps the session working", () => {
    const session = new ReadingSession(null);
    session.toggle("dsc:a");
    assert.deepEqual([...session.recorded], ["dsc:a"]);
});
test("clear empties the recorded set", () => {
    const storage = memoryStorage();
    const session = new ReadingSession(storage);
    session.toggle("dsc:a");
    session.clear();
    assert.deepEqual([...session.recorded], []);
    assert.deepEqual([...new ReadingSession(storage).recorded], []);
});
