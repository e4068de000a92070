// Typed client for the bookwalk HTTP API. The fetch implementation is
// injectable so tests can run without a browser.
export class ApiError extends Error {
    constructor(message, status) {
        super(message);
        this.status = status;
        this.name = "ApiError";
    }
}
async function errorDetail(response) {
    try {
        const body = (await response.json());
        if (body && typeof body.detail === "string")
            return body.detail;
    }
    catch {
        // non-JSON error body; fall through to the status line
    }
    return `${response.status} ${response.statusText}`;
}
export class ApiClient {
    constructor(baseUrl = "", fetchImpl = (input, init) => fetch(input, init)) {
        this.baseUrl = baseUrl;
        this.fetchImpl = fetchImpl;
    }
    async request(path, init) {
        let response;
        try {
            response = await this.fetchImpl(this.baseUrl + path, init);
        }
        catch (cause) {
            throw new ApiError(`cannot reach the service: ${String(cause)}`);
        }
        if (!response.ok) {
            throw new ApiError(await errorDetail(response), response.status);
        }
        return (await response.json());
    }
    getToc() {
        return this.request("/api/toc");
    }
    getBook() {
        return this.request("/api/book");
    }
    query(body) {
        return this.request("/api/query", {
            method: "POST",
            headers: { "content-type": "application/json" },
            body: JSON.stringify(body),
        });
    }
}
