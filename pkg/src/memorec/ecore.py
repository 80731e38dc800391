"""Parser for the supported Ecore XMI subset.

Root must be an EPackage. Classes come from eClassifiers with
xsi:type ecore:EClass; features from eStructuralFeatures with xsi:type
ecore:EAttribute or ecore:EReference. Everything else is ignored rather
than rejected, to maximize corpus yield.
"""

from __future__ import annotations

import xml.etree.ElementTree as ET

from .errors import MalformedXml, UnsupportedRoot
from .model import (
    FeatureKind,
    MetaClass,
    MetaPackage,
    Metamodel,
    StructuralFeature,
    dedup_classes,
    finalize_metamodel,
)

_XSI_TYPE = "{http://www.w3.org/2001/XMLSchema-instance}type"


def _local(tag: str) -> str:
    """Local name of a possibly namespace-qualified tag."""
    if "}" in tag:
        return tag.rsplit("}", 1)[1]
    if ":" in tag:
        return tag.rsplit(":", 1)[1]
    return tag


def _xsi_type(elem: ET.Element) -> str:
    value = elem.get(_XSI_TYPE, "")
    return value.rsplit(":", 1)[-1]


def _supertype_names(raw: str) -> list[str]:
    """Resolve space-separated fragment paths to final segment names."""
    names = []
    for ref in raw.split():
        frag = ref.split("#", 1)[-1]
        name = frag.rstrip("/").rsplit("/", 1)[-1]
        if name:
            names.append(name)
    return names


def _type_name(raw: str | None) -> str | None:
    if raw is None:
        return None
    # eType may be "#//Cls" or "ecore:EDataType http://...#//EString"
    last = raw.split()[-1] if raw.split() else raw
    if "#" in last:
        frag = last.split("#", 1)[1]
        return frag.rstrip("/").rsplit("/", 1)[-1] or None
    return last or None


_FEATURE_KINDS = {
    "EAttribute": FeatureKind.ATTRIBUTE,
    "EReference": FeatureKind.REFERENCE,
}


def _parse_class(elem: ET.Element) -> MetaClass | None:
    name = elem.get("name")
    if not name:
        return None
    features: list[StructuralFeature] = []
    for child in elem:
        if _local(child.tag) != "eStructuralFeatures":
            continue
        kind = _FEATURE_KINDS.get(_xsi_type(child))
        fname = child.get("name")
        if kind is None or not fname:
            continue
        features.append(StructuralFeature(fname, kind, _type_name(child.get("eType"))))
    return MetaClass(
        name=name,
        features=tuple(features),
        supertypes=tuple(_supertype_names(elem.get("eSuperTypes", ""))),
        is_abstract=elem.get("abstract") == "true",
    )


def _parse_package(elem: ET.Element, source_uri: str) -> MetaPackage | None:
    name = elem.get("name")
    if not name:
        return None
    classes: list[MetaClass] = []
    subpackages: list[MetaPackage] = []
    for child in elem:
        local = _local(child.tag)
        if local == "eClassifiers" and _xsi_type(child) == "EClass":
            cls = _parse_class(child)
            if cls is not None:
                classes.append(cls)
        elif local == "eSubpackages":
            sub = _parse_package(child, source_uri)
            if sub is not None:
                subpackages.append(sub)
    return MetaPackage(name, dedup_classes(name, classes, source_uri), tuple(subpackages))


def parse_ecore_xmi(data: bytes, source_uri: str = "") -> Metamodel:
    """Parse the supported XMI subset into a Metamodel.

    Raises MalformedXml, UnsupportedRoot, or CyclicInheritance.
    """
    try:
        root = ET.fromstring(data)
    except ET.ParseError as exc:
        raise MalformedXml(f"{source_uri}: {exc}") from exc
    if _local(root.tag) != "EPackage":
        raise UnsupportedRoot(f"{source_uri}: root element is {root.tag!r}, not an EPackage")
    pkg = _parse_package(root, source_uri)
    packages = (pkg,) if pkg is not None else ()
    return finalize_metamodel(packages, source_uri, data)
