"""JSON interchange format for metamodels: parser and serializer.

Schema:
  {"source": str, "packages": [{"name": str, "classes": [
      {"name": str, "abstract": bool?, "supertypes": [str]?,
       "features": [{"name": str, "kind": "attribute"|"reference",
                     "type": str?}]}],
    "subpackages": [...]}]}

The parser produces the same Metamodel a semantically equivalent XMI
document would.
"""

from __future__ import annotations

import json
from typing import Any

from .errors import MalformedJson, SchemaViolation
from .model import (
    FeatureKind,
    MetaClass,
    MetaPackage,
    Metamodel,
    StructuralFeature,
    dedup_classes,
    finalize_metamodel,
)


def _require(obj: dict, key: str, where: str) -> Any:
    if not isinstance(obj, dict) or key not in obj:
        raise SchemaViolation(f"missing required field {key!r} in {where}")
    return obj[key]


def _parse_feature(obj: dict) -> StructuralFeature:
    name = _require(obj, "name", "feature")
    kind_raw = _require(obj, "kind", f"feature {name!r}")
    try:
        kind = FeatureKind(kind_raw)
    except ValueError:
        raise SchemaViolation(f"feature {name!r}: bad kind {kind_raw!r}") from None
    if not isinstance(name, str) or not name:
        raise SchemaViolation("feature name must be a non-empty string")
    return StructuralFeature(name, kind, obj.get("type"))


def _parse_class(obj: dict) -> MetaClass:
    name = _require(obj, "name", "class")
    if not isinstance(name, str) or not name:
        raise SchemaViolation("class name must be a non-empty string")
    return MetaClass(
        name=name,
        features=tuple(_parse_feature(f) for f in obj.get("features", [])),
        supertypes=tuple(obj.get("supertypes", [])),
        is_abstract=bool(obj.get("abstract", False)),
    )


def _parse_package(obj: dict, source_uri: str) -> MetaPackage:
    name = _require(obj, "name", "package")
    if not isinstance(name, str) or not name:
        raise SchemaViolation("package name must be a non-empty string")
    classes = [_parse_class(c) for c in obj.get("classes", [])]
    return MetaPackage(
        name,
        dedup_classes(name, classes, source_uri),
        tuple(_parse_package(p, source_uri) for p in obj.get("subpackages", [])),
    )


def parse_json_model(data: bytes, source_uri: str = "") -> Metamodel:
    """Parse the JSON model format.

    Raises MalformedJson, SchemaViolation, or CyclicInheritance.
    """
    try:
        doc = json.loads(data)
    except (json.JSONDecodeError, UnicodeDecodeError) as exc:
        raise MalformedJson(f"{source_uri}: {exc}") from exc
    if not isinstance(doc, dict):
        raise SchemaViolation("top-level document must be an object")
    packages = tuple(
        _parse_package(p, source_uri) for p in _require(doc, "packages", "document")
    )
    uri = source_uri or doc.get("source", "")
    return finalize_metamodel(packages, uri, data)


def _feature_dict(f: StructuralFeature) -> dict:
    out: dict[str, Any] = {"name": f.name, "kind": f.kind.value}
    if f.type_name is not None:
        out["type"] = f.type_name
    return out


def _class_dict(c: MetaClass) -> dict:
    out: dict[str, Any] = {"name": c.name}
    if c.is_abstract:
        out["abstract"] = True
    if c.supertypes:
        out["supertypes"] = list(c.supertypes)
    out["features"] = [_feature_dict(f) for f in c.features]
    return out


def _package_dict(p: MetaPackage) -> dict:
    return {
        "name": p.name,
        "classes": [_class_dict(c) for c in p.classes],
        "subpackages": [_package_dict(s) for s in p.subpackages],
    }


def model_to_dict(m: Metamodel) -> dict:
    return {"source": m.source_uri, "packages": [_package_dict(p) for p in m.packages]}


def serialize_json_model(m: Metamodel) -> bytes:
    """Deterministic serialization; reparsing yields a structurally
    equal Metamodel."""
    return json.dumps(model_to_dict(m), indent=2, sort_keys=True).encode("utf-8")
