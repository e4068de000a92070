// Reading session: the ordered set of recorded descriptions plus the last
// query shape, persisted in client-local storage so a reload restores it.
const STORAGE_KEY = "bookwalk.session.v1";
export class ReadingSession {
    /**
     * @param storage   usually window.localStorage; null disables persistence
     * @param validIds  description ids present in the served book; recorded
     *                  entries outside this set are rejected (and stale
     *                  persisted ones dropped on load)
     */
    constructor(storage, validIds = null) {
        this.storage = storage;
        this.validIds = validIds;
        this.recordedIds = [];
        this.last = null;
        this.load();
    }
    get recorded() {
        return this.recordedIds;
    }
    get lastQuery() {
        return this.last;
    }
    isRecorded(id) {
        return this.recordedIds.includes(id);
    }
    /** Toggle membership; returns the new state. Keeps click order. */
    toggle(id) {
        if (this.validIds && !this.validIds.has(id)) {
            throw new Error(`unknown description id: ${id}`);
        }
        const at = this.recordedIds.indexOf(id);
        if (at >= 0) {
            this.recordedIds.splice(at, 1);
        }
        else {
            this.recordedIds.push(id);
        }
        this.persist();
        return at < 0;
    }
    clear() {
        this.recordedIds = [];
        this.persist();
    }
    rememberQuery(query) {
        this.last = query;
        this.persist();
    }
    load() {
        if (!this.storage)
            return;
        let raw = null;
        try {
            raw = this.storage.getItem(STORAGE_KEY);
        }
        catch {
            return; // storage unavailable; run without persistence
        }
        if (!raw)
            return;
        try {
            const parsed = JSON.parse(raw);
            const recorded = Array.isArray(parsed.recorded) ? parsed.recorded : [];
            this.recordedIds = recorded.filter((id) => typeof id === "string" && (!this.validIds || this.validIds.has(id)));
            this.last = parsed.lastQuery ?? null;
        }
        catch {
            this.recordedIds = [];
            this.last = null;
        }
    }
    persist() {
        if (!this.storage)
            return;
        const state = { recorded: this.recordedIds, lastQuery: this.last };
        try {
            this.storage.setItem(STORAGE_KEY, JSON.stringify(state));
        }
        catch {
            // quota or privacy mode: the session still works, it just won't survive reload
        }
    }
}
