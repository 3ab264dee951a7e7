/** DOM painting. Everything shown is copied verbatim from API payloads. */

import type { NodeSummary, NodeView } from "./api.js";
import { AppState, SortColumn, canMutate, sortChildren } from "./model.js";

export interface Handlers {
  newSession(spots: number | null, position: string | null): void;
  descend(childKey: string): void;
  back(): void;
  jumpTo(index: number): void;
  sortBy(column: SortColumn): void;
  auto(budgetNodes: number | null, budgetSecs: number | null): void;
  cancel(): void;
  downloadProof(): void;
  dismissBanner(): void;
}

function el<K extends keyof HTMLElementTagNameMap>(
  tag: K,
  className?: string,
  text?: string,
): HTMLElementTagNameMap[K] {
  const node = document.createElement(tag);
  if (className) node.className = className;
  if (text !== undefined) node.textContent = text;
  return node;
}

function banner(state: AppState, h: Handlers): HTMLElement | null {
  if (!state.banner) return null;
  const box = el("div", "banner", state.banner);
  const close = el("button", "banner-dismiss", "dismiss");
  close.addEventListener("click", () => h.dismissBanner());
  box.appendChild(close);
  return box;
}

function newSessionForm(h: Handlers): HTMLElement {
  const form = el("div", "new-session");
  form.appendChild(el("h2", undefined, "New session"));
  const spots = el("input", "spots-input");
  spots.placeholder = "spots, e.g. 2";
  const position = el("input", "position-input");
  position.placeholder = "or a position string, e.g. 0.0.}]!";
  const go = el("button", "create-button", "Start");
  go.addEventListener("click", () => {
    const s = spots.value.trim();
    const p = position.value.trim();
    h.newSession(s ? Number(s) : null, p ? p : null);
  });
  form.append(spots, position, go);
  return form;
}

function breadcrumb(state: AppState, h: Handlers): HTMLElement {
  const nav = el("nav", "breadcrumb");
  state.breadcrumb.forEach((key, i) => {
    if (i > 0) nav.appendChild(el("span", "crumb-sep", ">"));
    const last = i === state.breadcrumb.length - 1;
    const crumb = el(last ? "span" : "a", "crumb" + (last ? " crumb-focus" : ""), key);
    if (!last) crumb.addEventListener("click", () => h.jumpTo(i));
    nav.appendChild(crumb);
  });
  return nav;
}

function statusChip(status: string): HTMLElement {
  return el("span", `status-chip status-${status}`, status);
}

function nodeCard(view: NodeView): HTMLElement {
  const card = el("section", "node-card");
  const head = el("div", "node-key", view.key);
  card.appendChild(head);
  card.appendChild(statusChip(view.status));

  const lands = el("ul", "lands");
  for (const land of view.lands) lands.appendChild(el("li", "land", land));
  card.appendChild(lands);

  const chips = el("div", "chips");
  chips.appendChild(el("span", "chip parity", `parity ${view.parity}`));
  for (const r of view.rcts) chips.appendChild(el("span", "chip rct", r));
  card.appendChild(chips);

  const facts = el("div", "facts", `lives ${view.lives} | lands ${view.landCount}`);
  card.appendChild(facts);
  return card;
}

const COLUMNS: { col: SortColumn; label: string }[] = [
  { col: "lives", label: "lives" },
  { col: "landCount", label: "lands" },
  { col: "status", label: "status" },
];

function childrenTable(state: AppState, h: Handlers): HTMLElement {
  const view = state.focus!;
  const table = el("table", "children-table");
  const thead = el("thead");
  const hrow = el("tr");
  hrow.appendChild(el("th", undefined, "child"));
  for (const { col, label } of COLUMNS) {
    const arrow =
      state.sort.column === col ? (state.sort.dir === 1 ? " ↑" : " ↓") : "";
    const th = el("th", "sortable", label + arrow);
    th.dataset.col = col;
    th.addEventListener("click", () => h.sortBy(col));
    hrow.appendChild(th);
  }
  thead.appendChild(hrow);
  table.appendChild(thead);

  const tbody = el("tbody");
  const rows: readonly NodeSummary[] = view.children ?? [];
  for (const child of sortChildren(rows, state.sort)) {
    const tr = el("tr", "child-row");
    tr.dataset.key = child.key;
    tr.appendChild(el("td", "child-key", child.key));
    tr.appendChild(el("td", "child-lives", String(child.lives)));
    tr.appendChild(el("td", "child-lands", String(child.landCount)));
    const td = el("td", "child-status");
    td.appendChild(statusChip(child.status));
    tr.appendChild(td);
    tr.addEventListener("click", () => h.descend(child.key));
    tbody.appendChild(tr);
  }
  table.appendChild(tbody);
  return table;
}

function autoControls(state: AppState, h: Handlers): HTMLElement {
  const box = el("div", "auto-form");
  const nodes = el("input", "budget-nodes");
  nodes.placeholder = "node budget";
  const secs = el("input", "budget-secs");
  secs.placeholder = "seconds budget";
  const start = el("button", "auto-button", "Auto");
  start.disabled = state.autoRunning;
  start.addEventListener("click", () => {
    const n = nodes.value.trim();
    const t = secs.value.trim();
    h.auto(n ? Number(n) : null, t ? Number(t) : null);
  });
  const stop = el("button", "cancel-button", "Cancel");
  stop.disabled = !state.autoRunning;
  stop.addEventListener("click", () => h.cancel());
  box.append(nodes, secs, start, stop);

  if (state.progress) {
    const p = state.progress;
    const widget = el(
      "div",
      "progress-widget",
      `${p.status} | result ${p.result} | explored ${p.nodesExplored} | memo ${p.memoSize}`,
    );
    box.appendChild(widget);
  }
  return box;
}

function sessionView(state: AppState, h: Handlers): HTMLElement {
  const main = el("div", "session");
  main.appendChild(breadcrumb(state, h));
  const backBtn = el("button", "back-button", "Back");
  backBtn.disabled = state.breadcrumb.length <= 1 || !canMutate(state);
  backBtn.addEventListener("click", () => h.back());
  main.appendChild(backBtn);
  main.appendChild(nodeCard(state.focus!));
  main.appendChild(childrenTable(state, h));
  main.appendChild(autoControls(state, h));
  const proof = el("button", "proof-button", "Proof");
  proof.addEventListener("click", () => h.downloadProof());
  main.appendChild(proof);
  return main;
}

export function render(root: HTMLElement, state: AppState, h: Handlers): void {
  root.textContent = "";
  const b = banner(state, h);
  if (b) root.appendChild(b);
  if (state.sessionId === null || state.focus === null) {
    root.appendChild(newSessionForm(h));
  } else {
    root.appendChild(sessionView(state, h));
  }
}
