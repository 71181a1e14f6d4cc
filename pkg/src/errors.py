"""Exceptions raised by the toolkit.

Every error carries an ``exit_code`` so the command line can map it without
inspecting types: 1 for usage problems, 2 for data problems.
"""

from typing import Iterable, Optional


class XFragError(Exception):
    """Base class for all toolkit errors."""

    exit_code = 2


class UsageError(XFragError):
    """Invalid command-line flags or parameter combinations."""

    exit_code = 1


class ParseError(XFragError):
    """Malformed XML input."""

    def __init__(self, message: str, offset: Optional[int] = None):
        self.offset = offset
        if offset is not None:
            message = f"{message} (byte offset {offset})"
        super().__init__(message)


class UnsupportedFeatureError(XFragError):
    """Well-formed XML using a construct outside the supported subset."""

    def __init__(self, construct: str, offset: Optional[int] = None):
        self.construct = construct
        self.offset = offset
        message = f"unsupported XML construct: {construct}"
        if offset is not None:
            message = f"{message} (byte offset {offset})"
        super().__init__(message)


class LabelingConflictError(XFragError):
    """An element already carries the attribute a label or reference would use."""


class AddressSyntaxError(XFragError):
    """String is not a rendered address label."""


class PatternSyntaxError(XFragError):
    """Invalid address pattern source."""


class PredicateSyntaxError(XFragError):
    """Malformed selection predicate."""


class InvalidSelectorError(XFragError):
    """Path selector that cannot be projected."""


class EmptyProjectionError(XFragError):
    """Path selector matched no element."""


class InvalidParameterError(XFragError):
    """Out-of-range numeric parameter passed to an operator."""


class EmptyInputError(XFragError):
    """Operator received an empty collection it cannot summarize."""


class UnknownElementError(XFragError):
    """Tag type or tag name not present in the tag schema."""


class UnknownPathError(XFragError):
    """Predicate path does not exist in the document schema."""


class InvalidKError(XFragError):
    """Group count outside 1..number of elements."""


class AllocationIncompleteError(XFragError):
    """Fragment without a node placement."""


class StrategyMismatchError(XFragError):
    """Allocation strategy not applicable to the manifest."""


class IncompleteSetError(XFragError):
    """Fragments listed in the manifest are missing from the store."""

    def __init__(self, missing: Iterable[str]):
        self.missing = sorted(missing)
        super().__init__(f"missing fragments: {', '.join(self.missing)}")


class LinkResolutionError(XFragError):
    """Reference link whose target cannot be found."""


class InvalidCutError(XFragError):
    """Filler cut at the document root or at a non-existent address."""


class DuplicateCutError(XFragError):
    """Same address listed twice as a filler cut."""


class IncompleteStreamError(XFragError):
    """Hole referencing a filler that was not supplied."""

    def __init__(self, missing: Iterable[str]):
        self.missing = sorted(missing)
        super().__init__(f"incomplete filler stream, missing: {', '.join(self.missing)}")


class FillerCycleError(XFragError):
    """Holes that reference each other in a cycle."""


class ManifestError(XFragError):
    """Manifest that violates its own invariants or cannot be read."""
