"""Probability arithmetic for independent events.

Everything the alignment engine combines is treated as independent, so
conjunction is a product, disjunction is the complement of a product of
complements, and quantifiers over finite sets reduce to those two. The engine
inlines the streaming forms of these in its hot loops; these named helpers are
the reference semantics and are property-tested against exhaustive outcome
enumeration.
"""

from __future__ import annotations

import math
from typing import Iterable


def p_and(probabilities: Iterable[float]) -> float:
    """All of the independent events happen."""
    return math.prod(probabilities)


def p_or(probabilities: Iterable[float]) -> float:
    """At least one of the independent events happens."""
    return 1.0 - math.prod(1.0 - p for p in probabilities)


def p_forall(probabilities: Iterable[float]) -> float:
    """Every member of a finite family of independent events happens."""
    return math.prod(probabilities)


def p_exists(probabilities: Iterable[float]) -> float:
    """Some member of a finite family of independent events happens."""
    return 1.0 - math.prod(1.0 - p for p in probabilities)


def expected_count(probabilities: Iterable[float]) -> float:
    """Expected number of the events that happen (needs no independence)."""
    return sum(probabilities)
