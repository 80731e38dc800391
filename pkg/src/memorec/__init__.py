"""Metamodel completion recommender: context-aware collaborative
filtering over a corpus of Ecore-style metamodels."""

from .encoder import ARTIFICIAL_PACKAGE, EncodedMetamodel, EncodingScheme, ItemPair, encode
from .engine import RankedList, RecommendationQuery, Recommender
from .model import (
    FeatureKind,
    MetaClass,
    MetaPackage,
    Metamodel,
    StructuralFeature,
    all_classes,
    content_hash,
)

__version__ = "0.1.0"

__all__ = [
    "ARTIFICIAL_PACKAGE",
    "EncodedMetamodel",
    "EncodingScheme",
    "FeatureKind",
    "ItemPair",
    "MetaClass",
    "MetaPackage",
    "Metamodel",
    "RankedList",
    "RecommendationQuery",
    "Recommender",
    "StructuralFeature",
    "all_classes",
    "content_hash",
    "encode",
    "__version__",
]
