"""Exception hierarchy shared across the package."""


class MemorecError(Exception):
    """Base class for all errors raised by this package."""


class MalformedXml(MemorecError):
    """Input bytes are not a well-formed XML document."""


class UnsupportedRoot(MemorecError):
    """XML root element is not an EPackage."""


class MalformedJson(MemorecError):
    """Input bytes are not a well-formed JSON document."""


class SchemaViolation(MemorecError):
    """JSON document does not match the model schema."""


class CyclicInheritance(MemorecError):
    """A supertype cycle was detected among classes."""


class UnknownContext(MemorecError):
    """The named context does not exist under the given scheme."""


class UnknownMetamodel(MemorecError):
    """The metamodel id is not present in the graph/index."""


class MixedSchemes(MemorecError):
    """Encoded metamodels with different schemes were combined."""


class DuplicateMetamodelId(MemorecError):
    """Two encoded metamodels share the same id."""


class CorpusTooSmall(MemorecError):
    """Corpus has fewer metamodels than requested folds."""


class EmptyCaseSet(MemorecError):
    """A metric was requested over zero query cases."""


class IoFailure(MemorecError):
    """Filesystem read/write failed."""


class VersionMismatch(MemorecError):
    """Index file was written by an incompatible format version."""


class CorruptIndex(MemorecError):
    """Index file is unreadable or has a wrong magic header."""
