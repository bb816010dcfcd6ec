"""Line-oriented N-Triples reading and TSV writing.

The parser is deliberately forgiving: each line is parsed independently,
malformed lines are counted and skipped, and the loader aborts only when the
skipped fraction exceeds a configurable bound. Literal objects keep their
datatype/language tag in the lexical form (e.g. '"1955"^^<...#integer>'), so
distinct tags intern as distinct terms.
"""

from __future__ import annotations

import logging
import re
from dataclasses import dataclass, field
from pathlib import Path
from typing import Iterable, Iterator

from .store import Ontology, Vocabulary, ontology_from_triples

log = logging.getLogger("ontoalign.ntriples")


class ParseError(Exception):
    """Raised when an input file cannot be read or is mostly garbage."""


@dataclass
class ParseStats:
    parsed: int = 0
    skipped: int = 0
    samples: list[str] = field(default_factory=list)

    def skip(self, line: str) -> None:
        self.skipped += 1
        if len(self.samples) < 5:
            self.samples.append(line.strip()[:120])


_LINE = re.compile(
    r"^(?P<s><[^<>]*>|_:\S+)\s+"
    r"(?P<p><[^<>]*>)\s+"
    r"(?P<o>.+?)\s*\.\s*$"
)
_LITERAL = re.compile(
    r'^"(?P<text>(?:[^"\\]|\\.)*)"'
    r"(?:@(?P<lang>[A-Za-z][A-Za-z0-9-]*)|\^\^(?P<dt><[^<>]*>))?$"
)
_ESCAPES = {
    "t": "\t", "b": "\b", "n": "\n", "r": "\r", "f": "\f",
    '"': '"', "'": "'", "\\": "\\",
}


def _unescape(text: str) -> str:
    out: list[str] = []
    i = 0
    n = len(text)
    while i < n:
        ch = text[i]
        if ch != "\\":
            out.append(ch)
            i += 1
            continue
        if i + 1 >= n:
            raise ValueError("dangling backslash")
        nxt = text[i + 1]
        if nxt in _ESCAPES:
            out.append(_ESCAPES[nxt])
            i += 2
        elif nxt == "u":
            if i + 6 > n:
                raise ValueError("truncated \\u escape")
            out.append(chr(int(text[i + 2 : i + 6], 16)))
            i += 6
        elif nxt == "U":
            if i + 10 > n:
                raise ValueError("truncated \\U escape")
            cp = int(text[i + 2 : i + 10], 16)
            if cp > 0x10FFFF:
                raise ValueError("code point out of range")
            out.append(chr(cp))
            i += 10
        else:
            raise ValueError(f"bad escape \\{nxt}")
    return "".join(out)


def _strip_iri(token: str) -> str:
    return token[1:-1] if token.startswith("<") else token


def parse_ntriples(
    lines: Iterable[str], stats: ParseStats | None = None
) -> Iterator[tuple[str, str, str]]:
    """Yield (subject, predicate, object) per well-formed line.

    IRIs are delivered without angle brackets; blank node labels keep their
    '_:' prefix; literal objects are re-serialized to a canonical quoted form
    with unescaped text and the original tag.
    """
    stats = stats if stats is not None else ParseStats()
    for line in lines:
        bare = line.strip()
        if not bare or bare.startswith("#"):
            continue
        m = _LINE.match(bare)
        if not m:
            stats.skip(line)
            continue
        obj_tok = m.group("o")
        if obj_tok.startswith('"'):
            lm = _LITERAL.match(obj_tok)
            if not lm:
                stats.skip(line)
                continue
            try:
                text = _unescape(lm.group("text"))
            except ValueError:
                stats.skip(line)
                continue
            obj = f'"{text}"'
            if lm.group("lang"):
                obj += f"@{lm.group('lang')}"
            elif lm.group("dt"):
                obj += f"^^{lm.group('dt')}"
        elif obj_tok.startswith("<") and obj_tok.endswith(">"):
            obj = _strip_iri(obj_tok)
        elif obj_tok.startswith("_:") and not re.search(r"\s", obj_tok):
            obj = obj_tok
        else:
            stats.skip(line)
            continue
        stats.parsed += 1
        yield _strip_iri(m.group("s")), _strip_iri(m.group("p")), obj


def load_ontology(
    paths: str | Path | Iterable[str | Path],
    origin: str = "first",
    vocab: Vocabulary | None = None,
    max_skip_fraction: float = 0.01,
) -> Ontology:
    """Load and schema-close one ontology from N-Triples files.

    `paths` may be a file, a directory (all *.nt inside, sorted), or a list.
    Aborts with ParseError when more than `max_skip_fraction` of the non-blank
    lines are malformed, so silently corrupted dumps do not produce silently
    tiny ontologies.
    """
    files = _expand_paths(paths)
    if not files:
        raise ParseError(f"no N-Triples input found at {paths!r}")
    stats = ParseStats()
    triples: list[tuple[str, str, str]] = []
    for f in files:
        try:
            with open(f, encoding="utf-8") as fh:
                triples.extend(parse_ntriples(fh, stats))
        except OSError as exc:
            raise ParseError(f"cannot read {f}: {exc}") from exc
    total = stats.parsed + stats.skipped
    if total and stats.skipped / total > max_skip_fraction:
        raise ParseError(
            f"{stats.skipped} of {total} lines malformed"
            f" (> {max_skip_fraction:.0%}); first offenders: {stats.samples}"
        )
    if stats.skipped:
        log.warning("skipped %d malformed lines out of %d", stats.skipped, total)
    onto = ontology_from_triples(triples, origin=origin, vocab=vocab)
    log.info(
        "loaded %s: %d terms, %d statements (inverse-closed), %d rejected",
        origin, onto.term_count(), onto.statement_count(), onto.rejected_statements,
    )
    return onto


def _expand_paths(paths: str | Path | Iterable[str | Path]) -> list[Path]:
    if isinstance(paths, (str, Path)):
        paths = [paths]
    out: list[Path] = []
    for p in paths:
        p = Path(p)
        if p.is_dir():
            out.extend(sorted(p.glob("*.nt")))
        else:
            out.append(p)
    return out


# --------------------------------------------------------------- alignments

KINDS = ("instance", "relation", "class")
DIRECTIONS = ("equivalence", "left_in_right", "right_in_left")


@dataclass(frozen=True)
class AlignmentRow:
    left: str
    right: str
    score: float
    kind: str  # instance | relation | class
    direction: str  # equivalence | left_in_right | right_in_left


def _field_escape(value: str) -> str:
    return (
        value.replace("\\", "\\\\").replace("\t", "\\t")
        .replace("\n", "\\n").replace("\r", "\\r")
    )


def _field_unescape(value: str) -> str:
    out: list[str] = []
    i = 0
    while i < len(value):
        ch = value[i]
        if ch == "\\" and i + 1 < len(value):
            out.append({"t": "\t", "n": "\n", "r": "\r", "\\": "\\"}.get(value[i + 1], value[i + 1]))
            i += 2
        else:
            out.append(ch)
            i += 1
    return "".join(out)


def write_alignment(rows: Iterable[AlignmentRow], path: str | Path) -> int:
    """Write alignment rows as TSV, sorted by (kind, left, descending score)."""
    ordered = sorted(rows, key=lambda r: (r.kind, r.left, -r.score, r.right))
    with open(path, "w", encoding="utf-8") as fh:
        for r in ordered:
            fh.write(
                f"{_field_escape(r.left)}\t{_field_escape(r.right)}\t"
                f"{r.score:.6f}\t{r.kind}\t{r.direction}\n"
            )
    return len(ordered)


def read_alignment(path: str | Path) -> list[AlignmentRow]:
    rows: list[AlignmentRow] = []
    with open(path, encoding="utf-8") as fh:
        for line in fh:
            line = line.rstrip("\n")
            if not line:
                continue
            parts = line.split("\t")
            if len(parts) != 5:
                raise ParseError(f"alignment row with {len(parts)} columns: {line!r}")
            rows.append(
                AlignmentRow(
                    _field_unescape(parts[0]), _field_unescape(parts[1]),
                    float(parts[2]), parts[3], parts[4],
                )
            )
    return rows


def load_gold(path: str | Path) -> set[tuple[str, str]]:
    """Load a two-column gold TSV into a deduplicated pair set."""
    pairs: set[tuple[str, str]] = set()
    bad = 0
    with open(path, encoding="utf-8") as fh:
        for line in fh:
            line = line.rstrip("\n")
            if not line or line.startswith("#"):
                continue
            parts = line.split("\t")
            if len(parts) < 2 or not parts[0] or not parts[1]:
                bad += 1
                continue
            pairs.add((_field_unescape(parts[0]), _field_unescape(parts[1])))
    if bad:
        log.warning("gold file %s: skipped %d malformed rows", path, bad)
    return pairs
