// Pure view layer: build a view model from the API payload and render it
// to HTML strings. Keeping this DOM-free makes it directly unit-testable.

import type { ResultCard, SearchResponse } from "./api.js";

export const STANCE_ORDER = ["support", "refute", "neutral"] as const;

export const STANCE_HEADINGS: Record<string, string> = {
  support: "Supporting",
  refute: "Opposing",
  neutral: "Neutral",
};

export interface Column {
  stance: string;
  heading: string;
  cards: ResultCard[];
}

export interface ResultViewModel {
  query: string;
  retrieved: number;
  dropped: number;
  columns: Column[];
}

// Columns keep the payload's stance order and card order; empty buckets
// are simply not rendered.
export function buildViewModel(response: SearchResponse): ResultViewModel {
  const columns: Column[] = [];
  for (const stance of STANCE_ORDER) {
    const cards = response.clusters[stance] ?? [];
    if (cards.length > 0) {
      columns.push({ stance, heading: STANCE_HEADINGS[stance] ?? stance, cards });
    }
  }
  return {
    query: response.query,
    retrieved: response.retrieved,
    dropped: response.dropped,
    columns,
  };
}

export function escapeHtml(text: string): string {
  return text
    .replace(/&/g, "&amp;")
    .replace(/</g, "&lt;")
    .replace(/>/g, "&gt;")
    .replace(/"/g, "&quot;")
    .replace(/'/g, "&#39;");
}

// Shorten a headline at a whole-word boundary only; the full text stays
// available via the expanded card, so no word is ever cut in half.
export function truncateAtWordBoundary(text: string, maxChars: number): string {
  if (text.length <= maxChars) return text;
  const slice = text.slice(0, maxChars + 1);
  const lastSpace = slice.lastIndexOf(" ");
  if (lastSpace <= 0) return text;
  return `${text.slice(0, lastSpace)}…`;
}

function renderEvidence(card: ResultCard): string {
  if (card.evidence.length === 0) return "";
  const bullets = card.evidence
    .map((ev) => `<li class="evidence-item">${escapeHtml(ev.text)}</li>`)
    .join("");
  return [
    `<button class="evidence-toggle" type="button" aria-expanded="false">`,
    `Evidence (${card.evidence.length})</button>`,
    `<ul class="evidence-list" hidden>${bullets}</ul>`,
  ].join("");
}

export function renderCard(card: ResultCard): string {
  const badge = card.source.trusted
    ? `<span class="badge badge-trusted" title="listed as a trusted source">trusted</span>`
    : "";
  const kind = `<span class="badge badge-kind">${escapeHtml(card.source.kind)}</span>`;
  return [
    `<article class="card" data-doc-id="${escapeHtml(card.doc_id)}" data-group="${card.group}">`,
    `<p class="card-perspective" title="${escapeHtml(card.perspective)}">`,
    `${escapeHtml(truncateAtWordBoundary(card.perspective, 160))}</p>`,
    `<p class="card-source">${kind}${badge} ${escapeHtml(card.source.name)}</p>`,
    `<a class="card-link" href="${escapeHtml(card.url)}" target="_blank" rel="noopener">`,
    `${escapeHtml(card.title)}</a>`,
    renderEvidence(card),
    `</article>`,
  ].join("");
}

export function renderColumns(vm: ResultViewModel): string {
  if (vm.columns.length === 0) {
    return `<p class="empty-state">No perspectives found for this query.</p>`;
  }
  const columns = vm.columns
    .map((column) => [
      `<section class="column column-${column.stance}" data-stance="${column.stance}">`,
      `<h2>${escapeHtml(column.heading)} <span class="count">${column.cards.length}</span></h2>`,
      column.cards.map(renderCard).join(""),
      `</section>`,
    ].join(""))
    .join("");
  return `<div class="columns">${columns}</div>`;
}

export function renderError(message: string): string {
  return [
    `<div class="error-banner" role="alert">`,
    `<span>${escapeHtml(message)}</span>`,
    `<button class="retry" type="button">Retry</button>`,
    `</div>`,
  ].join("");
}

export function renderLoading(query: string): string {
  return `<p class="loading">Searching for “${escapeHtml(query)}”…</p>`;
}
