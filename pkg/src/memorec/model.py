"""Domain types for metamodels: packages, classes, structural features.

Values are immutable after construction and safe to share across threads.
Name matching is exact and case-sensitive everywhere.
"""

from __future__ import annotations

import hashlib
import logging
from dataclasses import dataclass, field
from enum import Enum

from .errors import CyclicInheritance

log = logging.getLogger(__name__)


class FeatureKind(str, Enum):
    ATTRIBUTE = "attribute"
    REFERENCE = "reference"


@dataclass(frozen=True)
class StructuralFeature:
    name: str
    kind: FeatureKind
    type_name: str | None = None  # metadata only, never recommended


@dataclass(frozen=True)
class MetaClass:
    name: str
    features: tuple[StructuralFeature, ...] = ()
    supertypes: tuple[str, ...] = ()  # class names within the same metamodel
    is_abstract: bool = False


@dataclass(frozen=True)
class MetaPackage:
    name: str
    classes: tuple[MetaClass, ...] = ()
    subpackages: tuple[MetaPackage, ...] = ()


@dataclass(frozen=True)
class Metamodel:
    id: str  # content hash of the exact source bytes, lowercase hex
    source_uri: str
    packages: tuple[MetaPackage, ...] = ()


def content_hash(data: bytes) -> str:
    """SHA-256 of the exact bytes, lowercase hex."""
    return hashlib.sha256(data).hexdigest()


def all_classes(m: Metamodel) -> list[tuple[str, MetaClass]]:
    """Depth-first traversal pairing each class with its directly
    containing package's simple name, in declaration order."""
    out: list[tuple[str, MetaClass]] = []

    def walk(pkg: MetaPackage) -> None:
        for cls in pkg.classes:
            out.append((pkg.name, cls))
        for sub in pkg.subpackages:
            walk(sub)

    for pkg in m.packages:
        walk(pkg)
    return out


def all_packages(m: Metamodel) -> list[MetaPackage]:
    """All packages in the tree, depth-first, declaration order."""
    out: list[MetaPackage] = []

    def walk(pkg: MetaPackage) -> None:
        out.append(pkg)
        for sub in pkg.subpackages:
            walk(sub)

    for pkg in m.packages:
        walk(pkg)
    return out


def class_index(m: Metamodel) -> dict[str, MetaClass]:
    """Class name -> class map; first declaration wins on cross-package
    name collisions."""
    index: dict[str, MetaClass] = {}
    for _, cls in all_classes(m):
        index.setdefault(cls.name, cls)
    return index


def check_acyclic_inheritance(index: dict[str, MetaClass]) -> None:
    """Raise CyclicInheritance if the supertype graph has a cycle.

    Supertype names not present in the index are ignored (they were
    dropped during parsing).
    """
    WHITE, GRAY, BLACK = 0, 1, 2
    color = {name: WHITE for name in index}

    def visit(name: str) -> None:
        color[name] = GRAY
        for sup in index[name].supertypes:
            if sup not in color:
                continue
            if color[sup] == GRAY:
                raise CyclicInheritance(f"supertype cycle through {sup!r}")
            if color[sup] == WHITE:
                visit(sup)
        color[name] = BLACK

    for name in index:
        if color[name] == WHITE:
            visit(name)


def structurally_equal(a: Metamodel, b: Metamodel) -> bool:
    """Equality over the package trees, ignoring id and source."""
    return a.packages == b.packages


@dataclass
class _RawClass:
    """Pre-resolution class as read from a source file."""

    name: str
    features: list[StructuralFeature] = field(default_factory=list)
    supertypes: list[str] = field(default_factory=list)
    is_abstract: bool = False


def finalize_metamodel(
    packages: tuple[MetaPackage, ...], source_uri: str, data: bytes
) -> Metamodel:
    """Validate supertype resolution and acyclicity, returning the model.

    Supertypes that do not resolve to a class in the same metamodel are
    dropped with a warning; raw corpora contain dangling references.
    """
    m = Metamodel(id=content_hash(data), source_uri=source_uri, packages=packages)
    known = {cls.name for _, cls in all_classes(m)}

    def prune(pkg: MetaPackage) -> MetaPackage:
        classes = []
        for cls in pkg.classes:
            kept = tuple(s for s in cls.supertypes if s in known)
            if len(kept) != len(cls.supertypes):
                dropped = [s for s in cls.supertypes if s not in known]
                log.warning(
                    "%s: dropping unresolvable supertypes %s of class %s",
                    source_uri,
                    dropped,
                    cls.name,
                )
                cls = MetaClass(cls.name, cls.features, kept, cls.is_abstract)
            classes.append(cls)
        return MetaPackage(pkg.name, tuple(classes), tuple(prune(s) for s in pkg.subpackages))

    m = Metamodel(m.id, m.source_uri, tuple(prune(p) for p in m.packages))
    check_acyclic_inheritance(class_index(m))
    return m


def dedup_classes(pkg_name: str, classes: list[MetaClass], source_uri: str) -> tuple[MetaClass, ...]:
    """Class names must be unique within a package; keep first, warn."""
    seen: set[str] = set()
    out: list[MetaClass] = []
    for cls in classes:
        if cls.name in seen:
            log.warning(
                "%s: duplicate class %s in package %s dropped", source_uri, cls.name, pkg_name
            )
            continue
        seen.add(cls.name)
        out.append(cls)
    return tuple(out)
