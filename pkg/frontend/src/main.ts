import { ApiClient, ApiError } from "./api.js";
import type { BookBlock, QueryResponse } from "./api.js";
import { clear, el, scrollToAnchor } from "./dom.js";
import { QueryFlow } from "./queryflow.js";
import { ReadingSession } from "./session.js";
import {
  TARGET_KINDS,
  describeRecorded,
  firstDescriptionAnchor,
  flattenToc,
  resultRows,
} from "./view.js";

const api = new ApiClient();

const tocPane = document.getElementById("toc") as HTMLElement;
const contentPane = document.getElementById("content") as HTMLElement;
const recordedPane = document.getElementById("recorded") as HTMLElement;
const recordedHint = document.getElementById("recorded-hint") as HTMLElement;
const resultsPane = document.getElementById("results") as HTMLElement;
const queryStatus = document.getElementById("query-status") as HTMLElement;
const targetSelect = document.getElementById("target-kind") as HTMLSelectElement;
const kInput = document.getElementById("result-count") as HTMLInputElement;
const submitButton = document.getElementById("submit-query") as HTMLButtonElement;
const banner = document.getElementById("banner") as HTMLElement;

let session: ReadingSession;
let bookBlocks: BookBlock[] = [];

for (const kind of TARGET_KINDS) {
  targetSelect.append(el("option", { value: kind.value }, kind.label));
}

const flow = new QueryFlow((request) => api.query(request), {
  onResult(response) {
    renderResults(response);
    queryStatus.textContent =
      response.warnings.length > 0 ? response.warnings.join("; ") : "";
  },
  onError(error) {
    // keep whatever results are on screen; just surface the message
    queryStatus.textContent =
      error instanceof ApiError ? error.message : "query failed, please retry";
  },
  onBusy(busy) {
    submitButton.disabled = busy || session.recorded.length === 0;
  },
});

function renderBanner(message: string | null): void {
  clear(banner);
  if (message === null) {
    banner.hidden = true;
    return;
  }
  banner.hidden = false;
  banner.append(
    el("span", {}, message),
    el("button", { type: "button" }, "retry"),
  );
  banner.querySelector("button")!.addEventListener("click", () => void boot());
}

function renderToc(blocks: BookBlock[], rows: ReturnType<typeof flattenToc>): void {
  clear(tocPane);
  for (const row of rows) {
    const link = el("a", { href: "#", class: `toc-entry depth-${row.depth}` }, row.label);
    link.addEventListener("click", (event) => {
      event.preventDefault();
      const anchor = firstDescriptionAnchor(blocks, row.id);
      if (anchor) scrollToAnchor(anchor);
    });
    tocPane.append(link);
  }
}

function renderBook(blocks: BookBlock[]): void {
  clear(contentPane);
  for (const block of blocks) {
    if (block.kind === "topic") {
      const depth = Math.min(6, Math.max(1, lookupDepth(block.id)));
      contentPane.append(
        el(`h${depth}` as "h1", { class: "topic-heading" }, block.text ?? block.id),
      );
      continue;
    }
    const body = el("div", { class: "block-body" });
    body.innerHTML = block.html ?? "";
    const wrapper = el(
      "article",
      { id: block.anchor, class: `block ${block.kind}`, "data-node": block.id },
      body,
    );
    if (block.kind === "description") {
      const button = el("button", { type: "button", class: "record" }, recordLabel(block.id));
      button.addEventListener("click", () => {
        session.toggle(block.id);
        button.textContent = recordLabel(block.id);
        wrapper.classList.toggle("recorded", session.isRecorded(block.id));
        renderRecorded();
      });
      wrapper.append(button);
      wrapper.classList.toggle("recorded", session.isRecorded(block.id));
    }
    contentPane.append(wrapper);
  }
}

let tocDepths = new Map<string, number>();

function lookupDepth(topicId: string): number {
  return tocDepths.get(topicId) ?? 2;
}

function recordLabel(id: string): string {
  return session.isRecorded(id) ? "recorded - click to remove" : "record";
}

function renderRecorded(): void {
  clear(recordedPane);
  for (const id of session.recorded) {
    const block = bookBlocks.find((b) => b.id === id);
    const link = el("a", { href: "#", class: "recorded-entry" }, id);
    if (block) {
      link.addEventListener("click", (event) => {
        event.preventDefault();
        scrollToAnchor(block.anchor);
      });
    }
    recordedPane.append(link);
  }
  recordedHint.textContent = describeRecorded(session.recorded.length);
  submitButton.disabled = session.recorded.length === 0;
}

function renderResults(response: QueryResponse): void {
  clear(resultsPane);
  const rows = resultRows(response);
  if (rows.length === 0) {
    resultsPane.append(el("p", { class: "empty" }, "no results"));
    return;
  }
  for (const row of rows) {
    const entry = el(
      "div",
      { class: `result ${row.namespace}` },
      el("span", { class: "rank" }, String(row.rank)),
      el("span", { class: "score" }, row.score),
      el("span", { class: "result-id" }, row.id),
    );
    if (row.preview) {
      entry.append(el("p", { class: "preview" }, row.preview));
    }
    if (row.anchor) {
      entry.classList.add("linked");
      entry.addEventListener("click", () => scrollToAnchor(row.anchor!));
    }
    resultsPane.append(entry);
  }
}

submitButton.addEventListener("click", () => {
  const k = Math.max(1, Number(kInput.value) || 10);
  const target = targetSelect.value;
  session.rememberQuery({ target_kind: target, k });
  void flow.submit({ seeds: [...session.recorded], target_kind: target, k });
});

async function boot(): Promise<void> {
  renderBanner(null);
  try {
    const [toc, book] = await Promise.all([api.getToc(), api.getBook()]);
    bookBlocks = book.blocks;
    const rows = flattenToc(toc.roots);
    tocDepths = new Map(rows.map((r) => [r.id, r.depth]));
    const valid = new Set(
      bookBlocks.filter((b) => b.kind === "description").map((b) => b.id),
    );
    session = new ReadingSession(window.localStorage, valid);
    if (bookBlocks.length === 0) {
      clear(contentPane);
      contentPane.append(el("p", { class: "empty" }, "this book is empty"));
    } else {
      renderBook(bookBlocks);
    }
    renderToc(bookBlocks, rows);
    renderRecorded();
    const last = session.lastQuery;
    if (last) {
      targetSelect.value = last.target_kind;
      kInput.value = String(last.k);
    }
  } catch (error) {
    renderBanner(
      error instanceof ApiError ? error.message : "failed to load the book",
    );
  }
}

void boot();
