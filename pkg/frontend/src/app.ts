// DOM wiring: submit queries, render results, toggle evidence, retry.

import { fetchSearch, SearchApiError } from "./api.js";
import { buildViewModel, renderColumns, renderError, renderLoading } from "./view.js";

// Served under /ui by the API itself, so the API lives at the origin root.
const API_BASE = "";

interface AppState {
  sequence: number;
  controller: AbortController | null;
  lastQuery: string;
}

export function initApp(root: Document): void {
  const form = root.querySelector<HTMLFormElement>("#search-form");
  const input = root.querySelector<HTMLInputElement>("#query-input");
  const results = root.querySelector<HTMLElement>("#results");
  if (!form || !input || !results) throw new Error("app markup missing");

  const state: AppState = { sequence: 0, controller: null, lastQuery: "" };

  async function runSearch(query: string): Promise<void> {
    if (!query.trim()) return;
    state.lastQuery = query;
    // one search in flight: a newer submission aborts the stale one
    state.controller?.abort();
    state.controller = new AbortController();
    const ticket = ++state.sequence;
    results!.innerHTML = renderLoading(query);
    try {
      const response = await fetchSearch(API_BASE, query, undefined, state.controller.signal);
      if (ticket !== state.sequence) return; // stale response, ignore
      results!.innerHTML = renderColumns(buildViewModel(response));
    } catch (err) {
      if (ticket !== state.sequence) return;
      if (err instanceof DOMException && err.name === "AbortError") return;
      const message = err instanceof SearchApiError
        ? err.message
        : "Search service unreachable.";
      results!.innerHTML = renderError(message);
    }
  }

  form.addEventListener("submit", (event) => {
    event.preventDefault();
    void runSearch(input.value);
  });

  results.addEventListener("click", (event) => {
    const target = event.target as HTMLElement;
    if (target.matches(".evidence-toggle")) {
      const list = target.nextElementSibling as HTMLElement | null;
      if (list) {
        const expanded = target.getAttribute("aria-expanded") === "true";
        target.setAttribute("aria-expanded", String(!expanded));
        list.hidden = expanded;
      }
    }
    if (target.matches(".retry")) {
      void runSearch(state.lastQuery);
    }
  });
}

// module scripts run after the document is parsed, so the markup is ready;
// test environments import this module without the markup and call initApp
// themselves
if (typeof document !== "undefined" && document.querySelector("#search-form")) {
  initApp(document);
}
