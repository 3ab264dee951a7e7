/** Pure view-model: every field derives from API responses, never from game logic. */

import type { NodeSummary, NodeView, Progress } from "./api.js";

export type SortColumn = "lives" | "landCount" | "status";

export interface SortSpec {
  column: SortColumn;
  dir: 1 | -1;
}

export interface AppState {
  sessionId: string | null;
  breadcrumb: string[];
  focus: NodeView | null;
  sort: SortSpec;
  banner: string | null;
  busy: boolean;
  progress: Progress | null;
  autoRunning: boolean;
}

export function initialState(): AppState {
  return {
    sessionId: null,
    breadcrumb: [],
    focus: null,
    sort: { column: "lives", dir: -1 },
    banner: null,
    busy: false,
    progress: null,
    autoRunning: false,
  };
}

export function sessionCreated(s: AppState, id: string, root: NodeView): AppState {
  return { ...initialState(), sessionId: id, breadcrumb: [root.key], focus: root, sort: s.sort };
}

export function focusDescended(s: AppState, view: NodeView): AppState {
  return { ...s, breadcrumb: [...s.breadcrumb, view.key], focus: view, banner: null };
}

export function focusWentBack(s: AppState, view: NodeView): AppState {
  const crumb = s.breadcrumb.slice(0, -1);
  return { ...s, breadcrumb: crumb, focus: view, banner: null };
}

export function focusRefreshed(s: AppState, view: NodeView): AppState {
  return { ...s, focus: view };
}

export function sortToggled(s: AppState, column: SortColumn): AppState {
  const dir = s.sort.column === column ? ((s.sort.dir * -1) as 1 | -1) : -1;
  return { ...s, sort: { column, dir } };
}

export function bannerShown(s: AppState, message: string): AppState {
  return { ...s, banner: message };
}

export function bannerDismissed(s: AppState): AppState {
  return { ...s, banner: null };
}

export function mutationStarted(s: AppState): AppState {
  return { ...s, busy: true };
}

export function mutationFinished(s: AppState): AppState {
  return { ...s, busy: false };
}

export function autoStarted(s: AppState): AppState {
  return { ...s, autoRunning: true, progress: null };
}

export function progressUpdated(s: AppState, p: Progress): AppState {
  return { ...s, progress: p, autoRunning: p.status === "running" };
}

/** The session vanished server-side; drop to the new-session form with a notice. */
export function sessionLost(s: AppState, message: string): AppState {
  return { ...initialState(), sort: s.sort, banner: message };
}

export function canMutate(s: AppState): boolean {
  return !s.busy;
}

const STATUS_RANK: Record<string, number> = { W: 0, L: 1, Unknown: 2 };

function rank(status: string): number {
  return STATUS_RANK[status] ?? 3;
}

/** Stable sort of a children list; ties fall back to the node key. */
export function sortChildren(children: readonly NodeSummary[], sort: SortSpec): NodeSummary[] {
  const cmp = (a: NodeSummary, b: NodeSummary): number => {
    let d: number;
    if (sort.column === "status") d = rank(a.status) - rank(b.status);
    else d = a[sort.column] - b[sort.column];
    if (d !== 0) return d * sort.dir;
    return a.key < b.key ? -1 : a.key > b.key ? 1 : 0;
  };
  return [...children].sort(cmp);
}

/** True when the progress status means the worker has stopped. */
export function isTerminal(status: string): boolean {
  return status === "done" || status === "cancelled" || status === "exhausted";
}
