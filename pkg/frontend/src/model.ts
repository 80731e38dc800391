/** Client-side mirror of the JSON model interchange format. */

export type FeatureKind = "attribute" | "reference";

export interface ModelFeature {
  name: string;
  kind: FeatureKind;
  type?: string;
}

export interface ModelClass {
  name: string;
  abstract?: boolean;
  supertypes?: string[];
  features: ModelFeature[];
}

export interface ModelPackage {
  name: string;
  classes: ModelClass[];
  subpackages: ModelPackage[];
}

export interface Model {
  source?: string;
  packages: ModelPackage[];
}

export class ModelParseError extends Error {}

function fail(message: string): never {
  throw new ModelParseError(message);
}

function parseFeature(raw: unknown): ModelFeature {
  if (typeof raw !== "object" || raw === null) fail("feature must be an object");
  const obj = raw as Record<string, unknown>;
  if (typeof obj.name !== "string" || obj.name === "") fail("feature needs a name");
  if (obj.kind !== "attribute" && obj.kind !== "reference") {
    fail(`feature ${obj.name}: bad kind ${String(obj.kind)}`);
  }
  const out: ModelFeature = { name: obj.name, kind: obj.kind };
  if (typeof obj.type === "string") out.type = obj.type;
  return out;
}

function parseClass(raw: unknown): ModelClass {
  if (typeof raw !== "object" || raw === null) fail("class must be an object");
  const obj = raw as Record<string, unknown>;
  if (typeof obj.name !== "string" || obj.name === "") fail("class needs a name");
  const out: ModelClass = {
    name: obj.name,
    features: Array.isArray(obj.features) ? obj.features.map(parseFeature) : [],
  };
  if (obj.abstract === true) out.abstract = true;
  if (Array.isArray(obj.supertypes)) {
    out.supertypes = obj.supertypes.map((s) =>
      typeof s === "string" ? s : fail("supertype must be a string"),
    );
  }
  return out;
}

function parsePackage(raw: unknown): ModelPackage {
  if (typeof raw !== "object" || raw === null) fail("package must be an object");
  const obj = raw as Record<string, unknown>;
  if (typeof obj.name !== "string" || obj.name === "") fail("package needs a name");
  return {
    name: obj.name,
    classes: Array.isArray(obj.classes) ? obj.classes.map(parseClass) : [],
    subpackages: Array.isArray(obj.subpackages)
      ? obj.subpackages.map(parsePackage)
      : [],
  };
}

export function parseModel(text: string): Model {
  let doc: unknown;
  try {
    doc = JSON.parse(text);
  } catch (exc) {
    fail(`not valid JSON: ${String(exc)}`);
  }
  if (typeof doc !== "object" || doc === null) fail("document must be an object");
  const obj = doc as Record<string, unknown>;
  if (!Array.isArray(obj.packages)) fail("document needs a packages array");
  const out: Model = { packages: obj.packages.map(parsePackage) };
  if (typeof obj.source === "string") out.source = obj.source;
  return out;
}

export function serializeModel(model: Model): string {
  return JSON.stringify(model, null, 2) + "\n";
}

export function blankModel(): Model {
  return { packages: [{ name: "Package1", classes: [], subpackages: [] }] };
}

/** Depth-first walk over packages; containers pair with direct parents. */
export function allPackages(model: Model): ModelPackage[] {
  const out: ModelPackage[] = [];
  const visit = (pkg: ModelPackage) => {
    out.push(pkg);
    pkg.subpackages.forEach(visit);
  };
  model.packages.forEach(visit);
  return out;
}

export function allClasses(model: Model): { pkg: ModelPackage; cls: ModelClass }[] {
  return allPackages(model).flatMap((pkg) =>
    pkg.classes.map((cls) => ({ pkg, cls })),
  );
}

export function findClass(model: Model, name: string): ModelClass | undefined {
  return allClasses(model).find(({ cls }) => cls.name === name)?.cls;
}

export function findPackage(model: Model, name: string): ModelPackage | undefined {
  return allPackages(model).find((pkg) => pkg.name === name);
}
