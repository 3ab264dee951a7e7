/** Controller: one in-flight mutation at a time, read-only polls in between. */

import { ApiError, Client } from "./api.js";
import * as model from "./model.js";
import { Handlers, render } from "./render.js";

const POLL_MS = 500;

export type ProofSaver = (name: string, text: string) => void;

function browserSaver(name: string, text: string): void {
  const blob = new Blob([text], { type: "text/plain" });
  const url = URL.createObjectURL(blob);
  const a = document.createElement("a");
  a.href = url;
  a.download = name;
  a.click();
  URL.revokeObjectURL(url);
}

export class Console {
  state: model.AppState = model.initialState();
  private pollTimer: ReturnType<typeof setTimeout> | null = null;

  constructor(
    private readonly root: HTMLElement,
    private readonly client: Client,
    private readonly saveProof: ProofSaver = browserSaver,
  ) {}

  start(): void {
    this.paint();
  }

  private paint(): void {
    render(this.root, this.state, this.handlers());
  }

  private set(next: model.AppState): void {
    this.state = next;
    this.paint();
  }

  private fail(e: unknown): void {
    if (e instanceof ApiError && e.status === 404 && /unknown session/.test(e.message)) {
      this.stopPolling();
      this.set(model.sessionLost(this.state, `session expired: ${e.message}`));
      return;
    }
    const msg = e instanceof Error ? e.message : String(e);
    this.set(model.bannerShown(this.state, msg));
  }

  /** Run one mutation; concurrent clicks while busy are dropped. */
  private async mutate(op: () => Promise<void>): Promise<void> {
    if (!model.canMutate(this.state)) return;
    this.set(model.mutationStarted(this.state));
    try {
      await op();
    } catch (e) {
      this.fail(e);
    } finally {
      this.set(model.mutationFinished(this.state));
    }
  }

  private stopPolling(): void {
    if (this.pollTimer !== null) {
      clearTimeout(this.pollTimer);
      this.pollTimer = null;
    }
  }

  private schedulePoll(): void {
    this.stopPolling();
    this.pollTimer = setTimeout(() => void this.poll(), POLL_MS);
  }

  private async poll(): Promise<void> {
    const sid = this.state.sessionId;
    if (sid === null) return;
    try {
      const p = await this.client.progress(sid);
      this.set(model.progressUpdated(this.state, p));
      if (model.isTerminal(p.status)) {
        const view = await this.client.node(sid, this.state.breadcrumb.at(-1));
        this.set(model.focusRefreshed(this.state, view));
      } else if (p.status === "running") {
        this.schedulePoll();
      }
    } catch (e) {
      this.fail(e);
    }
  }

  private handlers(): Handlers {
    return {
      newSession: (spots, position) =>
        void this.mutate(async () => {
          const body = position !== null ? { position } : { spots: spots ?? undefined };
          const res = await this.client.createSession(body);
          this.set(model.sessionCreated(this.state, res.id, res.root));
        }),
      descend: (childKey) =>
        void this.mutate(async () => {
          const view = await this.client.descend(this.state.sessionId!, childKey);
          this.set(model.focusDescended(this.state, view));
        }),
      back: () =>
        void this.mutate(async () => {
          const view = await this.client.back(this.state.sessionId!);
          this.set(model.focusWentBack(this.state, view));
        }),
      jumpTo: (index) =>
        void this.mutate(async () => {
          while (this.state.breadcrumb.length - 1 > index) {
            const view = await this.client.back(this.state.sessionId!);
            this.set(model.focusWentBack(this.state, view));
          }
        }),
      sortBy: (column) => this.set(model.sortToggled(this.state, column)),
      auto: (budgetNodes, budgetSecs) =>
        void this.mutate(async () => {
          await this.client.auto(this.state.sessionId!, {
            budgetNodes: budgetNodes ?? undefined,
            budgetSecs: budgetSecs ?? undefined,
          });
          this.set(model.autoStarted(this.state));
          this.schedulePoll();
        }),
      cancel: () =>
        void this.mutate(async () => {
          await this.client.cancel(this.state.sessionId!);
          await this.poll();
        }),
      downloadProof: () =>
        void this.mutate(async () => {
          const key = this.state.breadcrumb.at(-1);
          const text = await this.client.proof(this.state.sessionId!, key);
          this.saveProof("sprouts-proof.txt", text);
        }),
      dismissBanner: () => this.set(model.bannerDismissed(this.state)),
    };
  }
}

export function mount(root: HTMLElement, base: string): Console {
  const app = new Console(root, new Client(base));
  app.start();
  return app;
}
