"""Classification names, readable names, parse-back, and URL slugs.

A classification name concatenates each fundamental facet's assigned value
path root-to-leaf with `.` and joins the fundamental facets with `|` in
scheme order. Non-fundamental facets never contribute. Because value
tokens exclude both delimiters, the mapping from fundamental assignments
to names is injective and reversible.
"""

from __future__ import annotations

from .facet_model import (
    TOKEN_PATTERN,
    FacetAssignment,
    PathResolutionError,
    Scheme,
    resolve_path,
)

VALUE_DELIMITER = "."
FACET_DELIMITER = "|"

# A technique whose factor is the combined one may drop the leading `multi`
# employment token in its readable name.
OMITTABLE_TOKEN = "multi"
COMBINED_FACTOR_TOKEN = "multi-factor"


class NamingError(ValueError):
    """Base class for naming failures."""


class MissingFundamentalAssignmentError(NamingError):
    def __init__(self, facet: str, count: int):
        what = "no value" if count == 0 else f"{count} values"
        super().__init__(
            f"fundamental facet {facet!r} has {what} assigned; "
            "a classification name needs exactly one"
        )
        self.facet = facet


class GrammarError(NamingError):
    """The text does not match the name grammar."""


class SegmentCountMismatchError(NamingError):
    def __init__(self, expected: int, got: int):
        super().__init__(
            f"expected {expected} fundamental facet segment(s), got {got}"
        )
        self.expected = expected
        self.got = got


class UnknownPathError(NamingError):
    """A segment does not resolve in its fundamental facet's value tree."""


def _fundamental_segments(
    assignment: FacetAssignment, scheme: Scheme
) -> list[list[str]]:
    segments = []
    for facet in scheme.fundamental_facets:
        paths = assignment.paths(facet.name)
        if len(paths) != 1:
            raise MissingFundamentalAssignmentError(facet.name, len(paths))
        segments.append(list(paths[0]))
    return segments


def classification_name(assignment: FacetAssignment, scheme: Scheme) -> str:
    """Render the delimiter-joined name of an assignment's fundamental facets."""
    segments = _fundamental_segments(assignment, scheme)
    return FACET_DELIMITER.join(VALUE_DELIMITER.join(seg) for seg in segments)


def readable_name(
    assignment: FacetAssignment, scheme: Scheme, omit_multi: bool = False
) -> str:
    """The classification name with every delimiter replaced by a space.

    With omit_multi, and only when some fundamental facet is assigned the
    combined-factor value, the leading `multi` token of the other segments
    is dropped.
    """
    segments = _fundamental_segments(assignment, scheme)
    if omit_multi and [COMBINED_FACTOR_TOKEN] in segments:
        trimmed = []
        for seg in segments:
            if seg != [COMBINED_FACTOR_TOKEN] and seg[0] == OMITTABLE_TOKEN:
                seg = seg[1:]
            if seg:
                trimmed.append(seg)
        segments = trimmed
    return " ".join(token for seg in segments for token in seg)


def parse_classification_name(text: str, scheme: Scheme) -> FacetAssignment:
    """Parse a classification name back into its fundamental assignments.

    Round-trips with classification_name for every valid assignment.
    """
    segments = text.split(FACET_DELIMITER)
    for segment in segments:
        if not segment:
            raise GrammarError(f"empty segment in {text!r}")
        for token in segment.split(VALUE_DELIMITER):
            if not TOKEN_PATTERN.match(token):
                raise GrammarError(f"invalid token {token!r} in {text!r}")
    fundamentals = scheme.fundamental_facets
    if len(segments) != len(fundamentals):
        raise SegmentCountMismatchError(len(fundamentals), len(segments))
    entries = {}
    for facet, segment in zip(fundamentals, segments):
        steps = tuple(segment.split(VALUE_DELIMITER))
        try:
            resolve_path(facet, steps)
        except PathResolutionError as exc:
            raise UnknownPathError(str(exc)) from exc
        entries[facet.name] = (steps,)
    return FacetAssignment(entries)


def slug(assignment: FacetAssignment, scheme: Scheme, entry_id: str) -> str:
    """URL slug: the classification name with `|` as `--` and `.` as `-`,
    followed by `--` and the entry id. Entry ids never contain `--`, so the
    id can be recovered by splitting on the last `--`."""
    name = classification_name(assignment, scheme)
    return name.replace(FACET_DELIMITER, "--").replace(VALUE_DELIMITER, "-") + "--" + entry_id
