"""Rendering bibliographic records into labeled citation strings.

A citation style is data, not code: an ordered list of template segments,
each naming a record field (or a literal) plus the connective prefix/suffix
around it. Rendering emits the citation string together with character-exact
field spans, so every token inside a rendered field carries that field's
label and all connective text carries OTHER.

Styles are the generator of both the large generated corpus and the small
task-set fixtures. Five built-ins ship with the package (see
``data/builtin_styles.json``); they differ in field order, author formatting,
and punctuation.
"""

import json
import random
import re
from dataclasses import dataclass
from enum import Enum
from importlib import resources
from pathlib import Path
from typing import Iterable, Sequence

from .core import FieldLabel, LabeledCitation, Origin, word_tokenize
from .errors import StyleError
from .ingest import BibRecord, validate_record


class FieldSource(Enum):
    """What a template segment renders."""

    AUTHOR_LIST = "authors"
    YEAR = "year"
    TITLE = "title"
    VENUE = "venue"
    VOLUME_ISSUE = "volume_issue"
    PAGES = "pages"
    LITERAL = "literal"


# Segment sources that carry a field label; everything else renders as OTHER.
SOURCE_LABEL: dict[FieldSource, FieldLabel] = {
    FieldSource.AUTHOR_LIST: FieldLabel.AUTHOR,
    FieldSource.YEAR: FieldLabel.YEAR,
    FieldSource.TITLE: FieldLabel.TITLE,
    FieldSource.VENUE: FieldLabel.VENUE,
}

_CORE_SOURCES = (
    FieldSource.AUTHOR_LIST,
    FieldSource.YEAR,
    FieldSource.TITLE,
    FieldSource.VENUE,
)


class AuthorFormat(Enum):
    FAMILY_COMMA_INITIALS = "family_comma_initials"
    INITIALS_FAMILY = "initials_family"


@dataclass(frozen=True)
class Segment:
    source: FieldSource
    prefix: str = ""
    suffix: str = ""
    text: str = ""  # literal segments only


@dataclass(frozen=True)
class CitationStyle:
    name: str
    segments: tuple[Segment, ...]
    author_format: AuthorFormat
    author_separator: str
    terminal: str


@dataclass(frozen=True)
class RenderedCitation:
    citation: LabeledCitation
    style_name: str


def validate_style(style: CitationStyle) -> list[str]:
    problems = []
    for source in _CORE_SOURCES:
        count = sum(1 for s in style.segments if s.source == source)
        if count != 1:
            problems.append(f"segment {source.value} appears {count} times (need 1)")
    for seg in style.segments:
        if seg.source == FieldSource.LITERAL and not seg.text:
            problems.append("literal segment with empty text")
        if seg.source != FieldSource.LITERAL and seg.text:
            problems.append(f"non-literal segment {seg.source.value} carries text")
    return problems


# ---------------------------------------------------------------------------
# Author formatting
# ---------------------------------------------------------------------------

_BARE_INITIAL = re.compile(r"[^\W\d_]", re.UNICODE)
_DOTTED_INITIAL = re.compile(r"[^\W\d_]\.", re.UNICODE)


def format_initials(given: str) -> str:
    """Compress a given name to initials, preserving the record's own
    initialization style: 'C. E.' -> 'C.E.', 'J' -> 'J', 'Jane' -> 'J.'."""
    out = []
    for part in given.split():
        if _BARE_INITIAL.fullmatch(part) or _DOTTED_INITIAL.fullmatch(part):
            out.append(part)
        else:
            out.append(part[0] + ".")
    return "".join(out)


def format_authors(record: BibRecord, style: CitationStyle) -> str:
    rendered = []
    for author in record.authors:
        initials = format_initials(author.given)
        if not initials:
            rendered.append(author.family)
        elif style.author_format == AuthorFormat.FAMILY_COMMA_INITIALS:
            rendered.append(f"{author.family}, {initials}")
        else:
            rendered.append(f"{initials} {author.family}")
    return style.author_separator.join(rendered)


# ---------------------------------------------------------------------------
# Rendering
# ---------------------------------------------------------------------------


def _segment_text(record: BibRecord, style: CitationStyle, seg: Segment) -> str:
    if seg.source == FieldSource.LITERAL:
        return seg.text
    if seg.source == FieldSource.AUTHOR_LIST:
        return format_authors(record, style)
    if seg.source == FieldSource.YEAR:
        return str(record.year)
    if seg.source == FieldSource.TITLE:
        return record.title
    if seg.source == FieldSource.VENUE:
        return record.venue
    if seg.source == FieldSource.VOLUME_ISSUE:
        if record.volume and record.issue:
            return f"{record.volume}({record.issue})"
        return record.volume or ""
    if seg.source == FieldSource.PAGES:
        if record.pages is None:
            return ""
        if record.pages.first == record.pages.last:
            return record.pages.first
        return f"{record.pages.first}-{record.pages.last}"
    raise StyleError(f"unknown segment source {seg.source}")


def render(record: BibRecord, style: CitationStyle) -> RenderedCitation:
    """Render one record under one style with character-exact field spans.

    A segment whose field is absent from the record (pages, volume) is
    omitted together with its prefix and suffix. Raises StyleError if the
    record or style is invalid, or if the style glues field text to
    connective text so tightly that a token straddles the boundary.
    """
    problems = validate_record(record)
    if problems:
        raise StyleError(f"invalid record: {'; '.join(problems)}")
    problems = validate_style(style)
    if problems:
        raise StyleError(f"invalid style {style.name!r}: {'; '.join(problems)}")

    parts: list[str] = []
    ranges: list[tuple[FieldLabel, int, int]] = []
    pos = 0
    for seg in style.segments:
        text = _segment_text(record, style, seg)
        if not text:
            continue
        parts.append(seg.prefix)
        pos += len(seg.prefix)
        label = SOURCE_LABEL.get(seg.source)
        if label is not None:
            ranges.append((label, pos, pos + len(text)))
        parts.append(text)
        pos += len(text)
        parts.append(seg.suffix)
        pos += len(seg.suffix)
    parts.append(style.terminal)
    source = "".join(parts)

    tokens = word_tokenize(source)
    labels: list[FieldLabel] = []
    for tok in tokens:
        label = FieldLabel.OTHER
        for field_label, start, end in ranges:
            if start <= tok.start and tok.end <= end:
                label = field_label
                break
            if tok.start < end and tok.end > start:
                raise StyleError(
                    f"style {style.name!r}: token {tok.text!r} straddles the "
                    f"{field_label.value} field boundary"
                )
        labels.append(label)

    citation = LabeledCitation(source, tokens, tuple(labels), Origin.GENERATED)
    return RenderedCitation(citation, style.name)


def generate_corpus(
    records: Sequence[BibRecord],
    styles: Sequence[CitationStyle],
    per_record_styles: int,
    seed: int,
    balance: bool = True,
) -> list[RenderedCitation]:
    """Render each record under `per_record_styles` distinct sampled styles.

    Deterministic given `seed`. When `balance` is set and any record carries
    a discipline tag, records are grouped by tag and every group is
    downsampled to the smallest group's size before rendering (untagged
    records form their own group).
    """
    if not styles:
        raise StyleError("no styles supplied")
    if not 1 <= per_record_styles <= len(styles):
        raise StyleError(
            f"per_record_styles={per_record_styles} not in [1, {len(styles)}]"
        )
    rng = random.Random(seed)

    kept = list(records)
    if balance and any(r.discipline is not None for r in records):
        groups: dict[str | None, list[int]] = {}
        for i, rec in enumerate(records):
            groups.setdefault(rec.discipline, []).append(i)
        smallest = min(len(idx) for idx in groups.values())
        keep_idx: set[int] = set()
        for tag in groups:
            members = groups[tag]
            if len(members) > smallest:
                keep_idx.update(rng.sample(members, smallest))
            else:
                keep_idx.update(members)
        kept = [records[i] for i in sorted(keep_idx)]

    out: list[RenderedCitation] = []
    for rec in kept:
        for style in rng.sample(list(styles), k=per_record_styles):
            out.append(render(rec, style))
    return out


# ---------------------------------------------------------------------------
# Style files
# ---------------------------------------------------------------------------
# A style file is a JSON document: {"styles": [style, ...]} where each style
# is {"name", "author_format", "author_separator", "terminal", "segments"}
# and each segment is {"source", "prefix", "suffix"} plus "text" for
# literals. The shipped data/builtin_styles.json is the format reference.


def _style_to_obj(style: CitationStyle) -> dict:
    segments = []
    for seg in style.segments:
        obj = {"source": seg.source.value, "prefix": seg.prefix, "suffix": seg.suffix}
        if seg.source == FieldSource.LITERAL:
            obj["text"] = seg.text
        segments.append(obj)
    return {
        "name": style.name,
        "author_format": style.author_format.value,
        "author_separator": style.author_separator,
        "terminal": style.terminal,
        "segments": segments,
    }


def _style_from_obj(obj: dict) -> CitationStyle:
    try:
        segments = tuple(
            Segment(
                source=FieldSource(s["source"]),
                prefix=s.get("prefix", ""),
                suffix=s.get("suffix", ""),
                text=s.get("text", ""),
            )
            for s in obj["segments"]
        )
        style = CitationStyle(
            name=obj["name"],
            segments=segments,
            author_format=AuthorFormat(obj["author_format"]),
            author_separator=obj["author_separator"],
            terminal=obj["terminal"],
        )
    except (KeyError, ValueError) as exc:
        raise StyleError(f"malformed style object: {exc}") from exc
    problems = validate_style(style)
    if problems:
        raise StyleError(f"invalid style {style.name!r}: {'; '.join(problems)}")
    return style


def save_styles(path: str | Path, styles: Iterable[CitationStyle]) -> None:
    doc = {"styles": [_style_to_obj(s) for s in styles]}
    Path(path).write_text(
        json.dumps(doc, ensure_ascii=False, indent=2) + "\n", encoding="utf-8"
    )


def load_styles(path: str | Path) -> list[CitationStyle]:
    try:
        doc = json.loads(Path(path).read_text(encoding="utf-8"))
    except (OSError, json.JSONDecodeError) as exc:
        raise StyleError(f"cannot load styles from {path}: {exc}") from exc
    return [_style_from_obj(obj) for obj in doc["styles"]]


def builtin_styles() -> list[CitationStyle]:
    """The five shipped styles (harvard-like, ieee-like, chicago-like,
    plain-numbered, abbrev-initials)."""
    data = resources.files("citefield.data").joinpath("builtin_styles.json")
    doc = json.loads(data.read_text(encoding="utf-8"))
    return [_style_from_obj(obj) for obj in doc["styles"]]
