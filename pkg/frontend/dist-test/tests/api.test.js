import assert from "node:assert/strict";
import { test } from "node:test";
import { ApiClient, ApiError } from "../src/api.js";
function jsonResponse(body, status = 200) {
    return new Response(JSON.stringify(body), {
        status,
        headers: { "content-type": "application/json" },
    });
}
test("query posts JSON to /api/query and parses the body", async () => {
    const calls = [];
    const fetchImpl = (input, init) => {
        calls.push({ input, init });
        return Promise.resolve(jsonResponse({ target_kind: "QuestionContainer", entries: [], warnings: [] }));
    };
    const client = new ApiClient("http://svc", fetchImpl);
    const body = await client.query({ seeds: ["dsc:a"], target_kind: "question", k: 3 });
    assert.equal(calls[0].input, "http://svc/api/query");
    assert.equal(calls[0].init?.method, "POST");
    assert.deepEqual(JSON.parse(String(calls[0].init?.body)), {
        seeds: ["dsc:a"],
        target_kind: "question",
        k: 3,
    });
    assert.deepEqual(body.entries, []);
});
test("HTTP errors surface the service's detail message", async () => {
    const client = new ApiClient("", () => Promise.resolve(jsonResponse({ detail: "no seed node is present in the graph" }, 400)));
    await assert.rejects(client.query({ seeds: ["dsc:ghost"], target_kind: "question" }), (err) => {
        assert.ok(err instanceof ApiError);
        assert.equal(err.status, 400);
        assert.match(err.message, /no seed node/);
        return true;
    });
});
test("network failures become ApiError with no status", async () => {
    const client = new ApiClient("", () => Promise.reject(new TypeError("connection refused")));
    await assert.rejects(client.getToc(), (err) => {
        assert.ok(err instanceof ApiError);
        assert.equal(err.status, undefined);
        assert.match(err.message, /cannot reach/);
        return true;
    });
});
test("non-JSON error bodies fall back to the status line", async () => {
    const client = new ApiClient("", () => Promise.resolve(new Response("<html>gateway exploded</html>", { status: 502, statusText: "Bad Gateway" })));
    await assert.rejects(client.getBook(), (err) => {
        assert.ok(err instanceof ApiError);
        assert.match(err.message, /502/);
        return true;
    });
});
