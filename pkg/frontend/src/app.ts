// Browser wiring: a single-page facilitator app. All state lives in one
// module-level object; every render is a full redraw of the relevant
// panel (the grids are small, tens of cells).

import { ApiClient, ApiError } from "./api.js";
import {
  DraftGrid,
  autoSwapCell,
  checkCell,
  emptyGrid,
  exportCsv,
  gridReady,
  importCsv,
  missingCells,
  toSubmission,
} from "./grid.js";
import { display, full } from "./format.js";
import { feedbackView, reportView } from "./dashboard.js";
import type { Report, RoundFeedback, SessionState } from "./types.js";

interface AppState {
  client: ApiClient;
  session: SessionState | null;
  draft: DraftGrid;
  feedback: RoundFeedback | null;
  report: Report | null;
  notice: string;
}

const state: AppState = {
  client: new ApiClient(
    new URLSearchParams(location.search).get("service") ?? "http://127.0.0.1:8710",
  ),
  session: null,
  draft: {},
  feedback: null,
  report: null,
  notice: "",
};

function $(id: string): HTMLElement {
  const el = document.getElementById(id);
  if (!el) throw new Error(`missing element #${id}`);
  return el;
}

function el<K extends keyof HTMLElementTagNameMap>(
  tag: K,
  attrs: Record<string, string> = {},
  ...children: (Node | string)[]
): HTMLElementTagNameMap[K] {
  const node = document.createElement(tag);
  for (const [k, v] of Object.entries(attrs)) node.setAttribute(k, v);
  node.append(...children);
  return node;
}

// Linguistic term labels are cosmetic and client-side only; the
// protocol always carries subscripts.
function termLabel(kind: "j" | "r", idx: number): string {
  const stored = localStorage.getItem(`twodulv-label-${kind}${idx}`);
  return stored ?? `s${idx}`;
}

function setNotice(text: string): void {
  state.notice = text;
  $("notice").textContent = text;
}

async function refresh(): Promise<void> {
  if (!state.session) return;
  const id = state.session.id;
  state.session = await state.client.getSession(id);
  state.feedback = await state.client.getFeedback(id);
  if (state.session.session.status === "finalized") {
    state.report = await state.client.getReport(id);
  }
  renderAll();
}

// --- session setup -------------------------------------------------------

function renderSetup(): void {
  const root = $("setup");
  root.replaceChildren(
    el("h2", {}, "New session"),
    el("label", {}, "Judgment terms (l) ", el("input", { id: "in-l", value: "7", type: "number" })),
    el("label", {}, "Reliability terms (z) ", el("input", { id: "in-z", value: "5", type: "number" })),
    el("label", {}, "eta ", el("input", { id: "in-eta", value: "0.4", step: "0.05", type: "number" })),
    el("label", {}, "alpha ", el("input", { id: "in-alpha", value: "1", type: "number" })),
    el("label", {}, "Experts (comma separated) ", el("input", { id: "in-experts", value: "e1,e2,e3,e4" })),
    el("label", {}, "Alternatives ", el("input", { id: "in-alts", value: "a1,a2,a3,a4,a5" })),
    el("button", { id: "btn-create" }, "Create session"),
  );
  $("btn-create").addEventListener("click", onCreate);
}

async function onCreate(): Promise<void> {
  const ids = (raw: string) => raw.split(",").map((s) => s.trim()).filter(Boolean);
  const definition = {
    scale: {
      l: Number(($("in-l") as HTMLInputElement).value),
      z: Number(($("in-z") as HTMLInputElement).value),
    },
    eta: Number(($("in-eta") as HTMLInputElement).value),
    alpha: Number(($("in-alpha") as HTMLInputElement).value),
    experts: ids(($("in-experts") as HTMLInputElement).value),
    alternatives: ids(($("in-alts") as HTMLInputElement).value),
  };
  try {
    const { id } = await state.client.createSession(definition);
    state.session = await state.client.getSession(id);
    state.draft = emptyGrid(definition.experts, definition.alternatives);
    state.feedback = await state.client.getFeedback(id);
    setNotice(`session ${id} created`);
    renderAll();
  } catch (err) {
    setNotice(err instanceof ApiError ? `${err.message}: ${err.details.join("; ")}` : String(err));
  }
}

// --- round entry ---------------------------------------------------------

function renderGrid(): void {
  const root = $("entry");
  if (!state.session) {
    root.replaceChildren();
    return;
  }
  const doc = state.session.session;
  if (doc.status === "finalized") {
    root.replaceChildren(el("p", {}, "Session finalized; no further rounds."));
    return;
  }
  const { scale, experts, alternatives } = doc;
  const table = el("table", { class: "grid" });
  const head = el("tr", {}, el("th", {}, "expert \\ alternative"));
  for (const a of alternatives) head.append(el("th", {}, a));
  table.append(head);
  for (const e of experts) {
    const tr = el("tr", {}, el("th", {}, e));
    for (const a of alternatives) {
      const cell = state.draft[e][a];
      const check = checkCell(cell, scale);
      const td = el("td", {
        class: check.problems.length ? "bad" : check.complete ? "ok" : "empty",
        title: check.problems.join("; "),
      });
      cell.forEach((value, i) => {
        const input = el("input", {
          type: "number",
          value: value === null ? "" : String(value),
          title: i < 2 ? termLabel("j", i) : termLabel("r", i),
        });
        input.addEventListener("change", () => {
          const raw = input.value.trim();
          state.draft[e][a][i] = raw === "" ? null : Number(raw);
          renderGrid();
        });
        td.append(input);
      });
      if (check.reversed) {
        const fix = el("button", { class: "swap" }, "swap");
        fix.addEventListener("click", () => {
          state.draft[e][a] = autoSwapCell(state.draft[e][a]);
          renderGrid();
        });
        td.append(fix);
      }
      tr.append(td);
    }
    table.append(tr);
  }

  const ready = gridReady(state.draft, scale);
  const missing = missingCells(state.draft);
  const submit = el("button", { id: "btn-submit" }, `Submit round ${doc.rounds.length + 1}`);
  if (!ready) submit.setAttribute("disabled", "disabled");
  submit.addEventListener("click", onSubmitRound);

  const csvBox = el("textarea", { id: "csv-box", rows: "4", placeholder: "expert,alternative,a,b,c,d" });
  const importBtn = el("button", {}, "Import CSV");
  importBtn.addEventListener("click", () => {
    const { grid, errors } = importCsv(state.draft, (csvBox as HTMLTextAreaElement).value, true);
    state.draft = grid;
    setNotice(errors.length ? errors.join("; ") : "CSV applied");
    renderGrid();
  });
  const exportBtn = el("button", {}, "Export CSV");
  exportBtn.addEventListener("click", () => {
    (csvBox as HTMLTextAreaElement).value = exportCsv(state.draft);
  });

  root.replaceChildren(
    el("h2", {}, `Round ${doc.rounds.length + 1} entry`),
    table,
    el("p", { class: "hint" }, ready ? "ready to submit" : `incomplete: ${missing.join(", ")}`),
    submit,
    el("div", {}, csvBox, importBtn, exportBtn),
  );
}

async function onSubmitRound(): Promise<void> {
  if (!state.session) return;
  try {
    const fb = await state.client.submitRound(
      state.session.id,
      toSubmission(state.draft),
      state.session.revision,
    );
    state.feedback = fb;
    state.draft = emptyGrid(
      state.session.session.experts,
      state.session.session.alternatives,
    );
    setNotice(`round ${fb.round_index} accepted` +
      (fb.warnings?.length ? ` (${fb.warnings.join("; ")})` : ""));
    await refresh();
  } catch (err) {
    if (err instanceof ApiError && err.isConflict) {
      // keep the draft; the facilitator re-submits after reviewing
      state.session = await state.client.getSession(state.session.id);
      setNotice("session changed elsewhere; review and submit again");
      renderAll();
    } else {
      setNotice(err instanceof ApiError ? `${err.message}: ${err.details.join("; ")}` : String(err));
    }
  }
}

// --- feedback dashboard --------------------------------------------------

function barList(title: string, items: { label: string; value: number; fraction: number }[]): HTMLElement {
  const box = el("div", { class: "bars" }, el("h3", {}, title));
  for (const item of items) {
    box.append(
      el("div", { class: "bar-row" },
        el("span", { class: "bar-label" }, item.label),
        el("span", {
          class: "bar",
          style: `width:${Math.round(item.fraction * 200)}px`,
          "data-value": full(item.value),
          title: full(item.value),
        }),
        el("span", {}, display(item.value))),
    );
  }
  return box;
}

function renderFeedback(): void {
  const root = $("feedback");
  if (!state.session || state.report) {
    root.replaceChildren();
    return;
  }
  if (!state.feedback || state.feedback.rounds === 0) {
    root.replaceChildren(el("p", {}, "Submit a round to see uncertainty and deviation feedback."));
    return;
  }
  const doc = state.session.session;
  const view = feedbackView(state.feedback, doc.experts, doc.alternatives);

  const heat = el("table", { class: "heat" });
  const head = el("tr", {}, el("th", {}, "distance"));
  for (const a of doc.alternatives) head.append(el("th", {}, a));
  heat.append(head);
  for (const e of doc.experts) {
    const tr = el("tr", {}, el("th", {}, e));
    for (const cell of view.heat.filter((c) => c.expert === e)) {
      tr.append(el("td", {
        style: `background:rgba(200,60,40,${cell.intensity.toFixed(3)})`,
        "data-value": full(cell.value),
        title: full(cell.value),
      }, display(cell.value)));
    }
    heat.append(tr);
  }

  const finalize = el("button", { id: "btn-finalize" }, "Finalize session");
  finalize.addEventListener("click", onFinalize);

  root.replaceChildren(
    el("h2", {}, `Feedback after round ${view.rounds}`),
    barList("Uncertainty totals (latest round)", view.uncertaintyBars),
    barList("Deviation from aggregate", view.deviationBars),
    heat,
    finalize,
  );
}

async function onFinalize(): Promise<void> {
  if (!state.session) return;
  try {
    state.report = await state.client.finalize(state.session.id);
    setNotice("session finalized");
    await refresh();
  } catch (err) {
    setNotice(err instanceof ApiError ? `${err.message}: ${err.details.join("; ")}` : String(err));
  }
}

// --- report --------------------------------------------------------------

function renderReport(): void {
  const root = $("report");
  if (!state.report) {
    root.replaceChildren();
    return;
  }
  const view = reportView(state.report);

  const weights = el("table", {}, el("tr", {},
    el("th", {}, "expert"), el("th", {}, "lambda1"), el("th", {}, "lambda2"), el("th", {}, "lambda")));
  for (const row of view.weights) {
    weights.append(el("tr", {},
      el("th", {}, row.expert),
      el("td", { "data-value": full(row.lambda1), title: full(row.lambda1) }, display(row.lambda1)),
      el("td", { "data-value": full(row.lambda2), title: full(row.lambda2) }, display(row.lambda2)),
      el("td", { "data-value": full(row.lambda), title: full(row.lambda) }, display(row.lambda))));
  }

  const fitted = el("table", {}, el("tr", {},
    el("th", {}, "expert"),
    ...state.report.alternatives.map((a) => el("th", {}, a))));
  for (const row of view.fitted) {
    fitted.append(el("tr", {},
      el("th", {}, row.expert),
      ...row.vector.map((x) => el("td", { "data-value": full(x), title: full(x) }, display(x)))));
  }

  const group = el("table", {}, el("tr", {},
    el("th", {}, "s_g"),
    ...view.groupVector.map((g) =>
      el("td", { "data-value": full(g.value), title: full(g.value) }, display(g.value)))));

  const exportBtn = el("button", {}, "Export report JSON");
  exportBtn.addEventListener("click", () => {
    const blob = new Blob([JSON.stringify(state.report)], { type: "application/json" });
    const a = el("a", { href: URL.createObjectURL(blob), download: "report.json" });
    a.click();
  });

  root.replaceChildren(
    el("h2", {}, "Decision report"),
    el("h3", {}, "Expert weights"),
    weights,
    el("h3", {}, "Fitted preference vectors"),
    fitted,
    el("h3", {}, "Group preference"),
    group,
    el("p", { class: "ranking" }, `Ranking: ${view.ranking}`),
    ...(view.hasTies ? [el("p", { class: "tie-badge" }, "contains ties")] : []),
    ...view.warnings.map((w) => el("p", { class: "warning" }, w)),
    exportBtn,
  );
}

function renderAll(): void {
  $("setup").style.display = state.session ? "none" : "block";
  renderGrid();
  renderFeedback();
  renderReport();
}

export function boot(): void {
  renderSetup();
  renderAll();
}

if (typeof document !== "undefined" && document.getElementById("setup")) {
  boot();
}
