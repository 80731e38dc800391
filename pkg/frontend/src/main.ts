/** DOM wiring for the workbench. All logic lives in state.ts; this file
 * only renders state and forwards events. */

import { allPackages } from "./model.js";
import {
  acceptRecommendation,
  exportModel,
  initialState,
  loadModel,
  requestRecommendations,
  selectContext,
  WorkbenchState,
} from "./state.js";

let state: WorkbenchState = initialState({ serverUrl: "" });
let requestEpoch = 0; // clicks supersede any in-flight request

function el<K extends keyof HTMLElementTagNameMap>(
  tag: K,
  text?: string,
): HTMLElementTagNameMap[K] {
  const node = document.createElement(tag);
  if (text !== undefined) node.textContent = text;
  return node;
}

function setState(next: WorkbenchState): void {
  state = next;
  render();
}

function renderTree(root: HTMLElement): void {
  root.replaceChildren();
  for (const pkg of allPackages(state.model)) {
    const pkgRow = el("div", `\u{1F4E6} ${pkg.name}`);
    pkgRow.className = "pkg";
    pkgRow.onclick = () => setState(selectContext(state, { kind: "package", name: pkg.name }));
    root.appendChild(pkgRow);
    for (const cls of pkg.classes) {
      const clsRow = el("div", `  ${cls.abstract ? "«abstract» " : ""}${cls.name}`);
      clsRow.className = "cls";
      clsRow.onclick = () => setState(selectContext(state, { kind: "class", name: cls.name }));
      root.appendChild(clsRow);
      for (const feat of cls.features) {
        root.appendChild(el("div", `    ${feat.name}: ${feat.kind}`));
      }
    }
  }
}

function renderRecommendations(root: HTMLElement): void {
  root.replaceChildren();
  if (state.settings.n === 0) {
    root.appendChild(el("p", "n is 0 in settings; nothing to recommend."));
    return;
  }
  for (const row of state.lastRecommendations) {
    const line = el("div", `${row.item} (${row.score.toFixed(4)}) `);
    const accept = el("button", row.accepted ? "accepted" : "accept");
    accept.disabled = row.accepted;
    accept.onclick = () => setState(acceptRecommendation(state, row.item));
    line.appendChild(accept);
    root.appendChild(line);
  }
}

function render(): void {
  const banner = document.querySelector<HTMLElement>("#error")!;
  banner.textContent = state.error ?? "";
  banner.style.display = state.error ? "block" : "none";

  const ctx = document.querySelector<HTMLElement>("#context")!;
  ctx.textContent = state.selectedContext
    ? `${state.selectedContext.kind} ${state.selectedContext.name}`
    : "none";

  renderTree(document.querySelector<HTMLElement>("#tree")!);
  renderRecommendations(document.querySelector<HTMLElement>("#recommendations")!);
}

function install(): void {
  const app = document.querySelector<HTMLElement>("#app")!;

  const banner = el("div");
  banner.id = "error";
  banner.style.color = "crimson";
  app.appendChild(banner);

  const controls = el("div");
  app.appendChild(controls);

  const fileInput = el("input");
  fileInput.type = "file";
  fileInput.onchange = async () => {
    const file = fileInput.files?.[0];
    if (file) setState(loadModel(state, await file.text()));
  };
  controls.appendChild(fileInput);

  const blank = el("button", "blank model");
  blank.onclick = () => setState(loadModel(state, null));
  controls.appendChild(blank);

  const request = el("button", "recommend");
  request.onclick = async () => {
    const epoch = ++requestEpoch;
    const next = await requestRecommendations(state, fetch.bind(window));
    if (epoch === requestEpoch) setState(next);
  };
  controls.appendChild(request);

  const download = el("button", "export");
  download.onclick = () => {
    const blob = new Blob([exportModel(state)], { type: "application/json" });
    const link = el("a");
    link.href = URL.createObjectURL(blob);
    link.download = "model.json";
    link.click();
    URL.revokeObjectURL(link.href);
  };
  controls.appendChild(download);

  const status = el("div", "active context: ");
  status.appendChild(el("span")).id = "context";
  app.appendChild(status);

  const tree = el("div");
  tree.id = "tree";
  app.appendChild(tree);

  const recommendations = el("div");
  recommendations.id = "recommendations";
  app.appendChild(recommendations);

  render();
}

install();
