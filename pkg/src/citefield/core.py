"""Core domain types for citation field extraction.

A citation is a single string segmented into word-level tokens, each carrying
one field label (author, title, venue, year, or the background label `other`).
Field instances are maximal runs of same-labeled tokens; there is no B/I
distinction, so two abutting same-label fields are not representable.

Tokenization at this level is word-level: maximal alphanumeric runs are one
token each, and every other non-space character is a token of its own. That
rule guarantees token boundaries never straddle the punctuation that separates
citation fields. Subword handling lives in :mod:`citefield.subword`.
"""

import json
from dataclasses import dataclass
from enum import Enum
from pathlib import Path
from typing import Iterable


class FieldLabel(Enum):
    """Token-level field classes. `OTHER` is the background class."""

    AUTHOR = "author"
    TITLE = "title"
    VENUE = "venue"
    YEAR = "year"
    OTHER = "other"


# Fixed label order used everywhere a label index is needed (models, metrics).
LABEL_ORDER: tuple[FieldLabel, ...] = (
    FieldLabel.AUTHOR,
    FieldLabel.TITLE,
    FieldLabel.VENUE,
    FieldLabel.YEAR,
    FieldLabel.OTHER,
)
LABEL_INDEX: dict[FieldLabel, int] = {lab: i for i, lab in enumerate(LABEL_ORDER)}
NUM_LABELS = len(LABEL_ORDER)

# The four foreground fields, in reporting order.
CONTENT_LABELS: tuple[FieldLabel, ...] = LABEL_ORDER[:4]


class Origin(Enum):
    """Which dataset a citation belongs to: the small labeled task set or the
    large generated set."""

    TASK = "task"
    GENERATED = "generated"


@dataclass(frozen=True)
class Token:
    """One word-level token with its character span in the source string."""

    text: str
    start: int  # inclusive
    end: int  # exclusive


@dataclass(frozen=True)
class LabeledCitation:
    """A citation string with one field label per token.

    Invariants (checked by :func:`validate_citation`):
      * ``len(tokens) == len(labels) >= 1``
      * token spans are non-overlapping and strictly increasing
      * each token's text equals the source substring over its span
    """

    source: str
    tokens: tuple[Token, ...]
    labels: tuple[FieldLabel, ...]
    origin: Origin = Origin.TASK

    def __len__(self) -> int:
        return len(self.tokens)

    @property
    def words(self) -> tuple[str, ...]:
        return tuple(t.text for t in self.tokens)


@dataclass(frozen=True)
class FieldSpan:
    """A maximal run of same-labeled tokens; `label` is never OTHER.

    `start`/`end` are token indices (end exclusive).
    """

    label: FieldLabel
    start: int
    end: int


def word_tokenize(text: str) -> tuple[Token, ...]:
    """Split a string into word-level tokens.

    Maximal runs of alphanumeric characters form one token; every other
    non-whitespace character is a single-character token.
    """
    tokens: list[Token] = []
    i, n = 0, len(text)
    while i < n:
        ch = text[i]
        if ch.isspace():
            i += 1
            continue
        if ch.isalnum():
            j = i + 1
            while j < n and text[j].isalnum():
                j += 1
            tokens.append(Token(text[i:j], i, j))
            i = j
        else:
            tokens.append(Token(ch, i, i + 1))
            i += 1
    return tuple(tokens)


def spans_from_labels(labels: Iterable[FieldLabel]) -> list[FieldSpan]:
    """Extract all maximal non-OTHER runs from a label sequence, in order."""
    labels = list(labels)
    spans: list[FieldSpan] = []
    start = None
    current = None
    for i, lab in enumerate(labels):
        if lab != current:
            if current is not None and current != FieldLabel.OTHER:
                spans.append(FieldSpan(current, start, i))
            start, current = i, lab
    if current is not None and current != FieldLabel.OTHER:
        spans.append(FieldSpan(current, start, len(labels)))
    return spans


def labels_from_spans(spans: Iterable[FieldSpan], n: int) -> tuple[FieldLabel, ...]:
    """Paint spans onto an all-OTHER label vector of length `n`.

    Inverse of :func:`spans_from_labels` for span sets that are non-overlapping,
    within bounds, and never adjacent with the same label.
    """
    labels = [FieldLabel.OTHER] * n
    for span in spans:
        if not (0 <= span.start < span.end <= n):
            raise ValueError(f"span {span} out of bounds for length {n}")
        for i in range(span.start, span.end):
            if labels[i] != FieldLabel.OTHER:
                raise ValueError(f"span {span} overlaps an earlier span")
            labels[i] = span.label
    return tuple(labels)


def validate_citation(c: LabeledCitation) -> list[str]:
    """Return a list of invariant violations (empty means valid).

    Violations are data, not failures: callers decide whether to skip, repair,
    or abort.
    """
    problems: list[str] = []
    if len(c.tokens) == 0:
        problems.append("citation has no tokens")
    if len(c.tokens) != len(c.labels):
        problems.append(
            f"length mismatch: {len(c.tokens)} tokens vs {len(c.labels)} labels"
        )
    prev_end = -1
    for i, tok in enumerate(c.tokens):
        if tok.start >= tok.end:
            problems.append(f"token {i}: empty or inverted span [{tok.start},{tok.end})")
            continue
        if tok.start < prev_end:
            problems.append(f"token {i}: span overlaps or reorders previous token")
        if tok.start < 0 or tok.end > len(c.source):
            problems.append(f"token {i}: span outside source string")
        elif c.source[tok.start : tok.end] != tok.text:
            problems.append(
                f"token {i}: text {tok.text!r} does not match source substring"
            )
        prev_end = max(prev_end, tok.end)
    return problems


def citation_from_text(
    text: str,
    labels: Iterable[FieldLabel] | None = None,
    origin: Origin = Origin.TASK,
) -> LabeledCitation:
    """Tokenize `text` and attach `labels` (all-OTHER when omitted)."""
    tokens = word_tokenize(text)
    if labels is None:
        labs = tuple(FieldLabel.OTHER for _ in tokens)
    else:
        labs = tuple(labels)
        if len(labs) != len(tokens):
            raise ValueError(
                f"{len(labs)} labels for {len(tokens)} tokens in {text!r}"
            )
    return LabeledCitation(text, tokens, labs, origin)


# ---------------------------------------------------------------------------
# Line-delimited citation files
# ---------------------------------------------------------------------------
# One JSON object per line: {"source", "tokens": [{"text","start","end"}...],
# "labels": [...], "origin"}. Serialization is canonical (fixed key order,
# compact separators) so that load -> save round-trips bit-exactly.


def citation_to_json(c: LabeledCitation) -> str:
    obj = {
        "source": c.source,
        "tokens": [{"text": t.text, "start": t.start, "end": t.end} for t in c.tokens],
        "labels": [lab.value for lab in c.labels],
        "origin": c.origin.value,
    }
    return json.dumps(obj, ensure_ascii=False, separators=(",", ":"))


def citation_from_json(line: str) -> LabeledCitation:
    obj = json.loads(line)
    tokens = tuple(Token(t["text"], t["start"], t["end"]) for t in obj["tokens"])
    labels = tuple(FieldLabel(v) for v in obj["labels"])
    return LabeledCitation(obj["source"], tokens, labels, Origin(obj["origin"]))


def write_citations(path: str | Path, citations: Iterable[LabeledCitation]) -> None:
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        for c in citations:
            fh.write(citation_to_json(c))
            fh.write("\n")


def read_citations(path: str | Path) -> list[LabeledCitation]:
    out: list[LabeledCitation] = []
    with open(path, "r", encoding="utf-8") as fh:
        for line in fh:
            line = line.strip()
            if line:
                out.append(citation_from_json(line))
    return out
