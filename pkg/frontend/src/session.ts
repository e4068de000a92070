// Reading session: the ordered set of recorded descriptions plus the last
// query shape, persisted in client-local storage so a reload restores it.

export interface StorageLike {
  getItem(key: string): string | null;
  setItem(key: string, value: string): void;
}

export interface LastQuery {
  target_kind: string;
  k: number;
}

const STORAGE_KEY = "bookwalk.session.v1";

interface PersistedSession {
  recorded: string[];
  lastQuery: LastQuery | null;
}

export class ReadingSession {
  private recordedIds: string[] = [];
  private last: LastQuery | null = null;

  /**
   * @param storage   usually window.localStorage; null disables persistence
   * @param validIds  description ids present in the served book; recorded
   *                  entries outside this set are rejected (and stale
   *                  persisted ones dropped on load)
   */
  constructor(
    private readonly storage: StorageLike | null,
    private readonly validIds: ReadonlySet<string> | null = null,
  ) {
    this.load();
  }

  get recorded(): readonly string[] {
    return this.recordedIds;
  }

  get lastQuery(): LastQuery | null {
    return this.last;
  }

  isRecorded(id: string): boolean {
    return this.recordedIds.includes(id);
  }

  /** Toggle membership; returns the new state. Keeps click order. */
  toggle(id: string): boolean {
    if (this.validIds && !this.validIds.has(id)) {
      throw new Error(`unknown description id: ${id}`);
    }
    const at = this.recordedIds.indexOf(id);
    if (at >= 0) {
      this.recordedIds.splice(at, 1);
    } else {
      this.recordedIds.push(id);
    }
    this.persist();
    return at < 0;
  }

  clear(): void {
    this.recordedIds = [];
    this.persist();
  }

  rememberQuery(query: LastQuery): void {
    this.last = query;
    this.persist();
  }

  private load(): void {
    if (!this.storage) return;
    let raw: string | null = null;
    try {
      raw = this.storage.getItem(STORAGE_KEY);
    } catch {
      return; // storage unavailable; run without persistence
    }
    if (!raw) return;
    try {
      const parsed = JSON.parse(raw) as PersistedSession;
      const recorded = Array.isArray(parsed.recorded) ? parsed.recorded : [];
      this.recordedIds = recorded.filter(
        (id) => typeof id === "string" && (!this.validIds || this.validIds.has(id)),
      );
      this.last = parsed.lastQuery ?? null;
    } catch {
      this.recordedIds = [];
      this.last = null;
    }
  }

  private persist(): void {
    if (!this.storage) return;
    const state: PersistedSession = { recorded: this.recordedIds, lastQuery: this.last };
    try {
      this.storage.setItem(STORAGE_KEY, JSON.stringify(state));
    } catch {
      // quota or privacy mode: the session still works, it just won't survive reload
    }
  }
}
