"""Encoding of metamodels into context#item pair multisets.

Four schemes:
  SEs - class#feature for each directly owned structural feature
  IEs - SEs plus class#feature for each inherited feature
  SEc - package#class for each class (direct containing package)
  IEc - all classes flattened under one artificial package
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum

from .errors import CyclicInheritance, UnknownContext
from .model import MetaClass, Metamodel, all_classes, all_packages, class_index

ARTIFICIAL_PACKAGE = "__root"


class EncodingScheme(str, Enum):
    SEs = "SEs"
    IEs = "IEs"
    SEc = "SEc"
    IEc = "IEc"

    @property
    def class_context(self) -> bool:
        """True when contexts are classes and items are features."""
        return self in (EncodingScheme.SEs, EncodingScheme.IEs)


@dataclass(frozen=True)
class ItemPair:
    context: str
    item: str

    def __str__(self) -> str:
        return f"{self.context}#{self.item}"


@dataclass(frozen=True)
class EncodedMetamodel:
    metamodel_id: str
    scheme: EncodingScheme
    pairs: tuple[ItemPair, ...]  # multiset, declaration order
    # every context valid under the scheme, including item-less ones
    known_contexts: tuple[str, ...]

    def context_item_lists(self) -> dict[str, list[str]]:
        """Context -> items in pair order (duplicates kept)."""
        out: dict[str, list[str]] = {c: [] for c in self.known_contexts}
        for p in self.pairs:
            out.setdefault(p.context, []).append(p.item)
        return out

    def items_of(self, context: str) -> list[str]:
        """Items of one context, duplicates removed keeping first."""
        if context not in self.known_contexts:
            raise UnknownContext(f"{context!r} under scheme {self.scheme.value}")
        seen: set[str] = set()
        out: list[str] = []
        for p in self.pairs:
            if p.context == context and p.item not in seen:
                seen.add(p.item)
                out.append(p.item)
        return out


def inherited_features(cls: MetaClass, index: dict[str, MetaClass]) -> set[str]:
    """Feature names of all strict transitive supertypes of cls."""
    out: set[str] = set()
    seen: set[str] = set()
    stack = list(cls.supertypes)
    while stack:
        name = stack.pop()
        if name in seen or name not in index:
            continue
        seen.add(name)
        sup = index[name]
        out.update(f.name for f in sup.features)
        stack.extend(sup.supertypes)
    if cls.name in seen:
        raise CyclicInheritance(f"class {cls.name!r} inherits from itself")
    return out


def encode(m: Metamodel, scheme: EncodingScheme) -> EncodedMetamodel:
    """Produce the context#item multiset for one scheme.

    Deterministic: pair order follows declaration order.
    """
    pairs: list[ItemPair] = []
    classes = all_classes(m)
    if scheme.class_context:
        index = class_index(m)
        for _, cls in classes:
            for feat in cls.features:
                pairs.append(ItemPair(cls.name, feat.name))
            if scheme is EncodingScheme.IEs:
                for fname in sorted(inherited_features(cls, index)):
                    pairs.append(ItemPair(cls.name, fname))
        contexts = tuple(dict.fromkeys(cls.name for _, cls in classes))
    elif scheme is EncodingScheme.SEc:
        for pkg_name, cls in classes:
            pairs.append(ItemPair(pkg_name, cls.name))
        contexts = tuple(dict.fromkeys(p.name for p in all_packages(m)))
    else:  # IEc
        for _, cls in classes:
            pairs.append(ItemPair(ARTIFICIAL_PACKAGE, cls.name))
        contexts = (ARTIFICIAL_PACKAGE,)
    return EncodedMetamodel(m.id, scheme, tuple(pairs), contexts)


def context_items(m: Metamodel, scheme: EncodingScheme, context: str) -> list[str]:
    """Items paired with one context, declaration order, deduplicated.

    Raises UnknownContext if the context does not exist under the scheme.
    """
    return encode(m, scheme).items_of(context)


def dump_pairs(enc: EncodedMetamodel) -> str:
    """Debug dump: one context#item line, sorted lexicographically."""
    return "\n".join(sorted(str(p) for p in enc.pairs))
