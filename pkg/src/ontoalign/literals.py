"""Literal equality through normalization keys.

Literal-to-literal equality is decided lazily through a shared-normalized-value
index: two literals can match only if they normalize to the same key, so the
engine never materializes an all-pairs literal table. The built-in measures are
identity-after-normalization and return 0 or 1; fancier measures can subclass
:class:`LiteralMeasure`, but they must still block on a key (compare only
within a key group).
"""

from __future__ import annotations

import re

_TAG = re.compile(r'^"(?P<text>.*)"(?:@[A-Za-z][A-Za-z0-9-]*|\^\^<[^<>]*>)?$', re.S)


def literal_text(lexical: str) -> str:
    """Strip quotes and any datatype/language tag from a stored literal form."""
    m = _TAG.match(lexical)
    return m.group("text") if m else lexical


class LiteralMeasure:
    """Base equality measure: same normalization key means probability 1."""

    name = "strict"

    def key(self, lexical: str) -> str:
        """Normalization key: tag and quotes stripped, whitespace trimmed."""
        return literal_text(lexical).strip()

    def probability(self, a: str, b: str) -> float:
        """Equality probability for two literals *with the same key*."""
        return 1.0


class AlnumLowerMeasure(LiteralMeasure):
    """Case- and punctuation-insensitive: keeps alphanumerics, lowercased.

    Makes '"213/467-1108"' and '"213-467-1108"' equal while keeping
    '"Sugata Sanshirô"' distinct from '"Sanshiro Sugata"' (word order
    still matters because characters are kept in sequence).
    """

    name = "alnum-lower"

    def key(self, lexical: str) -> str:
        text = literal_text(lexical)
        return "".join(ch for ch in text if ch.isalnum()).lower()


MEASURES: dict[str, type[LiteralMeasure]] = {
    "strict": LiteralMeasure,
    "alnum-lower": AlnumLowerMeasure,
}


def get_measure(name: str) -> LiteralMeasure:
    try:
        return MEASURES[name]()
    except KeyError:
        raise ValueError(f"unknown literal mode {name!r}; choose from {sorted(MEASURES)}")


def literal_equality(a: str, b: str, measure: LiteralMeasure | None = None) -> float:
    """Pairwise equality of two literal lexical forms under a measure."""
    measure = measure or LiteralMeasure()
    ka, kb = measure.key(a), measure.key(b)
    if ka != kb:
        return 0.0
    return measure.probability(a, b)


def build_key_index(ontology, measure: LiteralMeasure) -> dict[str, list[int]]:
    """Group an ontology's literal term ids by normalization key.

    Empty keys are dropped: a literal that normalizes to nothing anchors
    nothing (it would otherwise match every other empty-keyed literal).
    """
    index: dict[str, list[int]] = {}
    for tid in ontology.literals():
        k = measure.key(ontology.lexical(tid))
        if k:
            index.setdefault(k, []).append(tid)
    return index
