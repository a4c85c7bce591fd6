"""Exception types shared across the toolkit."""


class SmellgraphError(Exception):
    """Base class for all toolkit errors."""


class EmptyCorpusError(SmellgraphError):
    """No source files matched the requested corpus."""


class JavaSyntaxError(SmellgraphError):
    """A source file could not be parsed (carries file and line)."""

    def __init__(self, message, line=None, path=None):
        self.line = line
        self.path = path
        where = f"{path or '<source>'}:{line}" if line else (path or "<source>")
        super().__init__(f"{where}: {message}")


class OverlappingEditsError(SmellgraphError):
    """Rewrite edits overlap each other or leave the entity span."""


class RewriteBreaksParseError(SmellgraphError):
    """An edited source no longer parses."""


class MergeUnsupportedError(SmellgraphError):
    """A merge candidate cannot be rewritten safely."""


class MoveUnsupportedError(SmellgraphError):
    """A move candidate cannot be rewritten safely."""


class WrongEntityKindError(SmellgraphError):
    """A detector was asked about an entity kind it does not handle."""


class SchemaMismatchError(SmellgraphError):
    """Graph features do not line up with the feature schema."""


class EmptyMaskError(SmellgraphError):
    """A readout mask selected no nodes."""


class AllIgnoredError(SmellgraphError):
    """Every row of a loss batch carried the ignore label."""


class ShapeMismatchError(SmellgraphError):
    """Tensor shapes are incompatible."""


class NonFiniteError(SmellgraphError):
    """A NaN or Inf appeared in a numeric computation."""


class EmptyDatasetError(SmellgraphError):
    """Training was requested on an empty dataset."""


class UnknownSampleError(SmellgraphError):
    """An annotation referenced a sample id not in the store."""


class AnnotationValidationError(SmellgraphError):
    """An annotation record violated its invariants."""


class ImmutableSampleError(SmellgraphError):
    """An annotation targeted a sample whose label is fixed by construction."""


class CorruptDatasetError(SmellgraphError):
    """A dataset file could not be decoded."""


class NoGoldError(SmellgraphError):
    """Opportunity scoring was requested without gold labels."""
