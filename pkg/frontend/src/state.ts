/** Pure workbench state and transitions. All model state is client-side;
 * the server is only consulted for ranked recommendations. */

import {
  blankModel,
  findClass,
  findPackage,
  Model,
  ModelClass,
  ModelPackage,
  ModelParseError,
  parseModel,
  serializeModel,
  FeatureKind,
} from "./model.js";
import { FetchLike, postRecommendations, RankedEntry } from "./api.js";

export interface SelectedContext {
  kind: "class" | "package";
  name: string;
}

export interface RecommendationRow {
  item: string;
  score: number;
  accepted: boolean;
}

export interface Settings {
  scheme: string;
  k: number;
  kContexts: number;
  n: number;
  serverUrl: string;
}

export interface WorkbenchState {
  model: Model;
  selectedContext: SelectedContext | null;
  lastRecommendations: RecommendationRow[];
  settings: Settings;
  error: string | null;
}

export const DEFAULT_SETTINGS: Settings = {
  scheme: "SEs",
  k: 5,
  kContexts: 5,
  n: 10,
  serverUrl: "",
};

export function initialState(settings: Partial<Settings> = {}): WorkbenchState {
  return {
    model: blankModel(),
    selectedContext: null,
    lastRecommendations: [],
    settings: { ...DEFAULT_SETTINGS, ...settings },
    error: null,
  };
}

/** Load a model document, or reset to the blank template when absent.
 * A parse failure keeps the previous model and surfaces the error. */
export function loadModel(state: WorkbenchState, text: string | null): WorkbenchState {
  if (text === null) {
    return {
      ...state,
      model: blankModel(),
      selectedContext: null,
      lastRecommendations: [],
      error: null,
    };
  }
  try {
    const model = parseModel(text);
    return {
      ...state,
      model,
      selectedContext: null,
      lastRecommendations: [],
      error: null,
    };
  } catch (exc) {
    if (exc instanceof ModelParseError) {
      return { ...state, error: exc.message };
    }
    throw exc;
  }
}

export function selectContext(
  state: WorkbenchState,
  context: SelectedContext,
): WorkbenchState {
  const exists =
    context.kind === "class"
      ? findClass(state.model, context.name) !== undefined
      : findPackage(state.model, context.name) !== undefined;
  if (!exists) {
    return { ...state, error: `no ${context.kind} named ${context.name}` };
  }
  return { ...state, selectedContext: context, lastRecommendations: [], error: null };
}

export async function requestRecommendations(
  state: WorkbenchState,
  fetchImpl: FetchLike,
): Promise<WorkbenchState> {
  if (state.selectedContext === null) {
    return { ...state, error: "select a class or package first" };
  }
  if (state.settings.n === 0) {
    return { ...state, lastRecommendations: [], error: null };
  }
  let entries: RankedEntry[];
  try {
    entries = await postRecommendations(
      state.settings.serverUrl,
      {
        model: state.model,
        scheme: state.settings.scheme,
        context: state.selectedContext,
        k: state.settings.k,
        kContexts: state.settings.kContexts,
        n: state.settings.n,
      },
      fetchImpl,
    );
  } catch (exc) {
    return { ...state, error: exc instanceof Error ? exc.message : String(exc) };
  }
  return {
    ...state,
    lastRecommendations: entries.map((e) => ({ ...e, accepted: false })),
    error: null,
  };
}

function withFeature(cls: ModelClass, name: string, kind: FeatureKind): ModelClass {
  return { ...cls, features: [...cls.features, { name, kind }] };
}

function withClass(pkg: ModelPackage, name: string): ModelPackage {
  return { ...pkg, classes: [...pkg.classes, { name, features: [] }] };
}

function mapClass(
  model: Model,
  name: string,
  f: (cls: ModelClass) => ModelClass,
): Model {
  const visit = (pkg: ModelPackage): ModelPackage => ({
    ...pkg,
    classes: pkg.classes.map((c) => (c.name === name ? f(c) : c)),
    subpackages: pkg.subpackages.map(visit),
  });
  return { ...model, packages: model.packages.map(visit) };
}

function mapPackage(
  model: Model,
  name: string,
  f: (pkg: ModelPackage) => ModelPackage,
): Model {
  const visit = (pkg: ModelPackage): ModelPackage =>
    pkg.name === name ? f(pkg) : { ...pkg, subpackages: pkg.subpackages.map(visit) };
  return { ...model, packages: model.packages.map(visit) };
}

/** Accept a recommended item into the model under the selected context.
 * Recommendations are names only, so an accepted feature defaults to kind
 * attribute unless the caller toggles it to reference. */
export function acceptRecommendation(
  state: WorkbenchState,
  item: string,
  kind: FeatureKind = "attribute",
): WorkbenchState {
  const row = state.lastRecommendations.find((r) => r.item === item);
  if (row === undefined || row.accepted || state.selectedContext === null) {
    return state;
  }
  const ctx = state.selectedContext;
  const model =
    ctx.kind === "class"
      ? mapClass(state.model, ctx.name, (cls) => withFeature(cls, item, kind))
      : mapPackage(state.model, ctx.name, (pkg) => withClass(pkg, item));
  return {
    ...state,
    model,
    lastRecommendations: state.lastRecommendations.map((r) =>
      r.item === item ? { ...r, accepted: true } : r,
    ),
    error: null,
  };
}

export function exportModel(state: WorkbenchState): string {
  return serializeModel(state.model);
}
