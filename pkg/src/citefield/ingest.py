"""Reading structured bibliographic records.

Two input formats are supported:

* ``lines`` — one JSON object per line with keys ``authors`` (list of
  ``{"family", "given"}``), ``title``, ``venue``, ``year``, and optional
  ``volume``, ``issue``, ``pages`` (``{"first", "last"}``), ``discipline``.
* ``bibtex`` — a pragmatic subset of BibTeX: entry types ``article``,
  ``inproceedings`` and ``book``; braced, quoted, or bare field values;
  ``journal`` or ``booktitle`` mapped to the venue. No ``@string``, no
  ``crossref``, no LaTeX decoding beyond brace stripping.
"""

import json
import re
from dataclasses import dataclass
from pathlib import Path

from .errors import IngestError

YEAR_MIN, YEAR_MAX = 1800, 2100


@dataclass(frozen=True)
class PersonName:
    family: str
    given: str


@dataclass(frozen=True)
class PageRange:
    first: str
    last: str


@dataclass(frozen=True)
class BibRecord:
    """A structured bibliographic entry feeding the citation renderer."""

    authors: tuple[PersonName, ...]
    title: str
    venue: str
    year: int
    volume: str | None = None
    issue: str | None = None
    pages: PageRange | None = None
    discipline: str | None = None


@dataclass(frozen=True)
class Diagnostic:
    """A per-record problem report emitted by lenient parsing."""

    line: int
    message: str


def validate_record(rec: BibRecord) -> list[str]:
    """Return invariant violations for a record (empty means valid)."""
    problems = []
    if not rec.authors:
        problems.append("authors empty")
    if not rec.title.strip():
        problems.append("title empty")
    if not rec.venue.strip():
        problems.append("venue empty")
    if not (YEAR_MIN <= rec.year <= YEAR_MAX):
        problems.append(f"year {rec.year} outside [{YEAR_MIN}, {YEAR_MAX}]")
    return problems


# ---------------------------------------------------------------------------
# Line-delimited JSON records
# ---------------------------------------------------------------------------


def record_to_json(rec: BibRecord) -> str:
    obj: dict = {
        "authors": [{"family": a.family, "given": a.given} for a in rec.authors],
        "title": rec.title,
        "venue": rec.venue,
        "year": rec.year,
    }
    if rec.volume is not None:
        obj["volume"] = rec.volume
    if rec.issue is not None:
        obj["issue"] = rec.issue
    if rec.pages is not None:
        obj["pages"] = {"first": rec.pages.first, "last": rec.pages.last}
    if rec.discipline is not None:
        obj["discipline"] = rec.discipline
    return json.dumps(obj, ensure_ascii=False, separators=(",", ":"))


def record_from_json(line: str) -> BibRecord:
    obj = json.loads(line)
    try:
        authors = tuple(PersonName(a["family"], a["given"]) for a in obj["authors"])
        pages = None
        if obj.get("pages") is not None:
            pages = PageRange(str(obj["pages"]["first"]), str(obj["pages"]["last"]))
        return BibRecord(
            authors=authors,
            title=obj["title"],
            venue=obj["venue"],
            year=int(obj["year"]),
            volume=_opt_str(obj.get("volume")),
            issue=_opt_str(obj.get("issue")),
            pages=pages,
            discipline=_opt_str(obj.get("discipline")),
        )
    except (KeyError, TypeError, ValueError) as exc:
        raise IngestError(f"malformed record object: {exc}") from exc


def _opt_str(value) -> str | None:
    return None if value is None else str(value)


def write_records(path: str | Path, records: list[BibRecord]) -> None:
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        for rec in records:
            fh.write(record_to_json(rec))
            fh.write("\n")


# ---------------------------------------------------------------------------
# BibTeX subset
# ---------------------------------------------------------------------------

_ENTRY_TYPES = {"article", "inproceedings", "book"}
_REQUIRED = ("author", "title", "year")

_ENTRY_HEAD = re.compile(r"@\s*(\w+)\s*\{", re.DOTALL)


def parse_bibtex_entry(text: str) -> BibRecord:
    """Parse a single BibTeX entry into a BibRecord.

    Raises IngestError naming the offending field for missing required fields
    (author/title/year and journal-or-booktitle) and for unbalanced braces.
    """
    text = text.strip()
    head = _ENTRY_HEAD.match(text)
    if not head:
        raise IngestError("entry does not start with '@type{'")
    entry_type = head.group(1).lower()
    if entry_type not in _ENTRY_TYPES:
        raise IngestError(f"unsupported entry type '@{entry_type}'")

    body, rest = _balanced_block(text, head.end() - 1)
    if rest.strip():
        raise IngestError("trailing characters after entry closing brace")
    fields = _parse_fields(body)

    for name in _REQUIRED:
        if name not in fields or not fields[name].strip():
            raise IngestError(f"missing required field: {name}")
    venue = fields.get("journal") or fields.get("booktitle")
    if not venue or not venue.strip():
        raise IngestError("missing required field: journal or booktitle")

    year_text = fields["year"].strip()
    if not re.fullmatch(r"\d{1,4}", year_text):
        raise IngestError(f"missing required field: year (unparseable {year_text!r})")

    return BibRecord(
        authors=tuple(_parse_author(a) for a in _split_authors(fields["author"])),
        title=fields["title"].strip(),
        venue=venue.strip(),
        year=int(year_text),
        volume=fields.get("volume", "").strip() or None,
        issue=(fields.get("number") or fields.get("issue", "")).strip() or None,
        pages=_parse_pages(fields.get("pages", "")),
        discipline=fields.get("discipline", "").strip() or None,
    )


def _balanced_block(text: str, open_at: int) -> tuple[str, str]:
    """Return (content between braces, remainder after the closing brace)."""
    depth = 0
    for i in range(open_at, len(text)):
        if text[i] == "{":
            depth += 1
        elif text[i] == "}":
            depth -= 1
            if depth == 0:
                return text[open_at + 1 : i], text[i + 1 :]
    raise IngestError("unbalanced braces in entry")


def _parse_fields(body: str) -> dict[str, str]:
    """Split an entry body into name -> value, honoring brace nesting."""
    # Drop the citation key (everything before the first top-level comma).
    parts = _split_top_level(body)
    fields: dict[str, str] = {}
    for part in parts[1:]:
        if "=" not in part:
            if part.strip():
                raise IngestError(f"malformed field assignment: {part.strip()!r}")
            continue
        name, value = part.split("=", 1)
        fields[name.strip().lower()] = _strip_value(value.strip())
    return fields


def _split_top_level(body: str) -> list[str]:
    parts, depth, buf = [], 0, []
    in_quote = False
    for ch in body:
        if ch == '"' and depth == 0:
            in_quote = not in_quote
        elif ch == "{":
            depth += 1
        elif ch == "}":
            depth -= 1
            if depth < 0:
                raise IngestError("unbalanced braces in entry body")
        if ch == "," and depth == 0 and not in_quote:
            parts.append("".join(buf))
            buf = []
        else:
            buf.append(ch)
    if depth != 0:
        raise IngestError("unbalanced braces in entry body")
    parts.append("".join(buf))
    return parts


def _strip_value(value: str) -> str:
    value = value.strip()
    if value.startswith("{") and value.endswith("}"):
        value = value[1:-1]
    elif value.startswith('"') and value.endswith('"'):
        value = value[1:-1]
    # Brace stripping is the only LaTeX handling we do.
    value = value.replace("{", "").replace("}", "")
    return " ".join(value.split())


def _split_authors(author_field: str) -> list[str]:
    names = [n.strip() for n in re.split(r"\s+and\s+", author_field) if n.strip()]
    if not names:
        raise IngestError("missing required field: author")
    return names


def _parse_author(name: str) -> PersonName:
    if "," in name:
        family, given = name.split(",", 1)
        return PersonName(family.strip(), given.strip())
    parts = name.split()
    if len(parts) == 1:
        return PersonName(parts[0], "")
    return PersonName(parts[-1], " ".join(parts[:-1]))


def _parse_pages(value: str) -> PageRange | None:
    value = value.strip()
    if not value:
        return None
    m = re.fullmatch(r"([^-\s]+)\s*-{1,2}\s*([^-\s]+)", value)
    if m:
        return PageRange(m.group(1), m.group(2))
    return PageRange(value, value)


def split_bibtex_entries(text: str) -> list[tuple[int, str]]:
    """Split a BibTeX file into (line_number, entry_text) pairs."""
    entries: list[tuple[int, str]] = []
    i = 0
    while True:
        at = text.find("@", i)
        if at < 0:
            break
        line_no = text.count("\n", 0, at) + 1
        brace = text.find("{", at)
        if brace < 0:
            entries.append((line_no, text[at:]))
            break
        try:
            _, rest = _balanced_block(text, brace)
        except IngestError:
            entries.append((line_no, text[at:]))
            break
        end = len(text) - len(rest)
        entries.append((line_no, text[at:end]))
        i = end
    return entries


# ---------------------------------------------------------------------------
# File-level reader
# ---------------------------------------------------------------------------


def read_records(
    path: str | Path, fmt: str = "lines", strict: bool = False
) -> tuple[list[BibRecord], list[Diagnostic]]:
    """Read all parseable records from `path` in file order.

    In lenient mode (default) a record that fails to parse or violates the
    BibRecord invariants is skipped and reported as a Diagnostic; in strict
    mode the first failure raises IngestError. The total of returned records
    plus diagnostics equals the number of input records.
    """
    if fmt not in ("lines", "bibtex"):
        raise IngestError(f"unknown record format {fmt!r}")
    try:
        text = Path(path).read_text(encoding="utf-8")
    except OSError as exc:
        raise IngestError(f"cannot read {path}: {exc}") from exc

    if fmt == "lines":
        units = [
            (i + 1, line)
            for i, line in enumerate(text.splitlines())
            if line.strip()
        ]
        parse = record_from_json
    else:
        units = split_bibtex_entries(text)
        parse = parse_bibtex_entry

    records: list[BibRecord] = []
    diagnostics: list[Diagnostic] = []
    for line_no, unit in units:
        try:
            rec = parse(unit)
            problems = validate_record(rec)
            if problems:
                raise IngestError("; ".join(problems))
            records.append(rec)
        except IngestError as exc:
            if strict:
                raise IngestError(f"line {line_no}: {exc}") from exc
            diagnostics.append(Diagnostic(line_no, str(exc)))
    return records, diagnostics
