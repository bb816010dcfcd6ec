"""Fixpoint alignment of two ontologies.

Each iteration recomputes instance-equivalence probabilities from the previous
iteration's tables (a full snapshot read, never in-place), derives the maximal
assignment, then recomputes relation-inclusion probabilities from the fresh
equivalences. Iteration stops when fewer than a configured fraction of the
assigned instances change partner. Class inclusions are computed once, at the
end, from the final assignment.

Evidence model, in words:

* Two instances are likely equal if they share statements through relations
  that are likely aligned, weighted by how identifying those relations are
  (the inverse functionality): sharing a value of a one-to-one relation is
  near-proof, sharing a value of a many-to-many relation is a hint.
* A relation of one ontology is included in a relation of the other to the
  degree that its statements, transported through known-equal terms, land on
  actual statements of the other relation.
* A class is included in another to the degree that its members have a known
  equal inside the other class.

Literal-literal equalities are clamped up front through the shared
normalized-value index and never change. All products over evidence factors
are computed over ascending-sorted factor lists, so results do not depend on
traversal order, worker count, or which ontology is called "first" when the
two roles are swapped.
"""

from __future__ import annotations

import logging
import time
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field

from .functionality import FunctionalityTable, build_functionality_table
from .literals import LiteralMeasure, build_key_index, get_measure
from .ntriples import AlignmentRow
from .store import INSTANCE, LITERAL, Ontology

log = logging.getLogger("ontoalign.engine")


@dataclass
class AlignmentConfig:
    """Tunable knobs. The defaults are the documented, tested configuration."""

    theta: float = 0.1  # bootstrap relation-inclusion prior; also the storage floor
    max_iterations: int = 10
    convergence_fraction: float = 0.01  # stop when fewer instances change partner
    pair_cap: int = 10_000  # statements/instances sampled per relation/class sweep
    negative_evidence: bool = False  # penalize unmatched statements of aligned relations
    negative_inner: str = "object"  # "object" (per-object equalities) | "pair" (published form)
    restrict_to_assignment: bool = True  # use only previous argmax equalities as evidence
    literal_mode: str = "strict"
    functionality_mode: str = "harmonic-mean"
    class_score_threshold: float = 0.4  # reporting floor for class rows
    class_instance_ceiling: int | None = None  # drop class rows for classes larger than this
    threads: int = 1


@dataclass
class IterationStats:
    iteration: int
    changed: int
    tracked: int  # instances assigned in this or the previous iteration
    change_fraction: float
    equivalences: int
    subrelations: int
    pairs_evaluated: int
    seconds: float


class EquivalenceTable:
    """Sparse term-equivalence probabilities, readable from either side.

    Keys are (first-ontology term id, second-ontology term id); both row and
    column access are maintained so lookups are symmetric in argument order.
    """

    def __init__(self) -> None:
        self._fwd: dict[int, dict[int, float]] = {}
        self._bwd: dict[int, dict[int, float]] = {}
        self._n = 0

    def set(self, left: int, right: int, p: float) -> None:
        row = self._fwd.setdefault(left, {})
        if right not in row:
            self._n += 1
        row[right] = p
        self._bwd.setdefault(right, {})[left] = p

    def get(self, left: int, right: int) -> float:
        return self._fwd.get(left, _EMPTY).get(right, 0.0)

    def row(self, left: int) -> dict[int, float]:
        return self._fwd.get(left, _EMPTY)

    def col(self, right: int) -> dict[int, float]:
        return self._bwd.get(right, _EMPTY)

    def pairs(self):
        for left, row in self._fwd.items():
            for right, p in row.items():
                yield left, right, p

    def __len__(self) -> int:
        return self._n


_EMPTY: dict[int, float] = {}


@dataclass
class MaximalAssignment:
    """Per-instance argmax of the equivalence table, both directions.

    forward maps first-ontology instances to their best second-ontology
    partner (and score); backward is the mirror. Ties break toward the
    lexically smallest partner identifier.
    """

    forward: dict[int, tuple[int, float]] = field(default_factory=dict)
    backward: dict[int, tuple[int, float]] = field(default_factory=dict)


@dataclass
class SubrelationTable:
    """Directed relation-inclusion probabilities, sparse, both directions."""

    o1_to_o2: dict[tuple[int, int], float] = field(default_factory=dict)
    o2_to_o1: dict[tuple[int, int], float] = field(default_factory=dict)

    def __len__(self) -> int:
        return len(self.o1_to_o2) + len(self.o2_to_o1)


@dataclass
class ClassAlignmentTable:
    """Directed class-inclusion probabilities with supporting-instance counts."""

    o1_to_o2: dict[tuple[int, int], tuple[float, int]] = field(default_factory=dict)
    o2_to_o1: dict[tuple[int, int], tuple[float, int]] = field(default_factory=dict)


@dataclass
class AlignmentState:
    """Everything one iteration reads; treat as an immutable snapshot."""

    o1: Ontology
    o2: Ontology
    config: AlignmentConfig
    fun1: FunctionalityTable
    fun2: FunctionalityTable
    measure: LiteralMeasure
    literal_seeds: list[tuple[int, int, float]]
    equiv: EquivalenceTable
    assignment: MaximalAssignment
    subrel: SubrelationTable | None  # None means the uniform bootstrap prior
    iteration: int = 0


@dataclass
class AlignmentResult:
    o1: Ontology
    o2: Ontology
    config: AlignmentConfig
    equiv: EquivalenceTable
    assignment: MaximalAssignment
    subrel: SubrelationTable
    classes: ClassAlignmentTable
    iterations: list[IterationStats]
    converged: bool


class EvidenceView:
    """Equality evidence readable during one sweep.

    Literal pairs are always visible (they are clamped). Instance pairs are,
    by default, only those of the previous maximal assignment; with the
    restriction off, every stored pair is evidence.
    """

    def __init__(
        self,
        o1: Ontology,
        o2: Ontology,
        table: EquivalenceTable,
        assignment: MaximalAssignment,
        restrict: bool,
    ) -> None:
        left: dict[int, dict[int, float]] = {}
        right: dict[int, dict[int, float]] = {}
        kind1, kind2 = o1.kind, o2.kind
        for a, b, p in table.pairs():
            if restrict and kind1(a) == INSTANCE:
                fa = assignment.forward.get(a)
                ba = assignment.backward.get(b)
                if not ((fa and fa[0] == b) or (ba and ba[0] == a)):
                    continue
            left.setdefault(a, {})[b] = p
            right.setdefault(b, {})[a] = p
        self._left = left
        self._right = right
        self._left_sorted: dict[int, tuple[tuple[int, float], ...]] = {
            a: tuple(sorted(row.items())) for a, row in left.items()
        }
        self._right_sorted: dict[int, tuple[tuple[int, float], ...]] = {
            b: tuple(sorted(row.items())) for b, row in right.items()
        }

    def partners_left(self, term: int) -> tuple[tuple[int, float], ...]:
        """(second-ontology partner, probability) pairs for a first-ontology term."""
        return self._left_sorted.get(term, ())

    def partners_right(self, term: int) -> tuple[tuple[int, float], ...]:
        return self._right_sorted.get(term, ())

    def p(self, left: int, right: int) -> float:
        return self._left.get(left, _EMPTY).get(right, 0.0)


# ------------------------------------------------------------------ bootstrap


def literal_seed_pairs(
    o1: Ontology, o2: Ontology, measure: LiteralMeasure, theta: float
) -> list[tuple[int, int, float]]:
    """Cross-ontology literal matches through the shared normalization key."""
    idx1 = build_key_index(o1, measure)
    idx2 = build_key_index(o2, measure)
    seeds: list[tuple[int, int, float]] = []
    for key, ids1 in idx1.items():
        ids2 = idx2.get(key)
        if not ids2:
            continue
        for a in ids1:
            la = o1.lexical(a)
            for b in ids2:
                p = measure.probability(la, o2.lexical(b))
                if p > theta:
                    seeds.append((a, b, p))
    return seeds


def bootstrap(
    o1: Ontology,
    o2: Ontology,
    config: AlignmentConfig | None = None,
    fun1: FunctionalityTable | None = None,
    fun2: FunctionalityTable | None = None,
) -> AlignmentState:
    """Initial state: clamped literal matches, uniform relation prior theta."""
    config = config or AlignmentConfig()
    measure = get_measure(config.literal_mode)
    fun1 = fun1 or build_functionality_table(o1, config.functionality_mode)
    fun2 = fun2 or build_functionality_table(o2, config.functionality_mode)
    seeds = literal_seed_pairs(o1, o2, measure, config.theta)
    table = EquivalenceTable()
    for a, b, p in seeds:
        table.set(a, b, p)
    return AlignmentState(
        o1=o1, o2=o2, config=config, fun1=fun1, fun2=fun2, measure=measure,
        literal_seeds=seeds, equiv=table, assignment=MaximalAssignment(),
        subrel=None, iteration=0,
    )


# --------------------------------------------------------- instance equalities


def _sub_lookups(state: AlignmentState):
    """Relation-inclusion lookups for the ongoing iteration.

    The very first iteration sees the uniform prior theta for every
    cross-ontology relation pair; afterwards, missing entries read as zero.
    """
    if state.subrel is None:
        theta = state.config.theta

        def sub12(_r1: int, _r2: int) -> float:
            return theta

        def sub21(_r2: int, _r1: int) -> float:
            return theta

        return sub12, sub21
    d12 = state.subrel.o1_to_o2
    d21 = state.subrel.o2_to_o1

    def sub12(r1: int, r2: int) -> float:
        return d12.get((r1, r2), 0.0)

    def sub21(r2: int, r1: int) -> float:
        return d21.get((r2, r1), 0.0)

    return sub12, sub21


def _instance_factors(
    state: AlignmentState, ev: EvidenceView, x: int
) -> dict[int, list[float]]:
    """Positive-evidence factors per candidate partner of x.

    Walks x's statements, hops to known-equal objects, and lands on the
    candidates' statements; each matched statement pair contributes one factor
    (1 - P(incl)(r',r) fun_inv(r) P(y,y')) (1 - P(incl)(r,r') fun_inv(r') P(y,y')).
    Candidates of a different term kind are skipped: a resource never equals
    a literal.
    """
    o1, o2 = state.o1, state.o2
    fun1, fun2 = state.fun1, state.fun2
    sub12, sub21 = _sub_lookups(state)
    acc: dict[int, list[float]] = {}
    for r, y in o1.by_subject.get(x, ()):
        if1 = fun1.inverse_fun(r)
        for y2, pyy in ev.partners_left(y):
            for q, x2 in o2.by_subject.get(y2, ()):
                if o2.kind(x2) != INSTANCE:
                    continue
                r2 = q ^ 1  # the statement r2(x2, y2) seen from its object side
                f = (1.0 - sub21(r2, r) * if1 * pyy) * (
                    1.0 - sub12(r, r2) * fun2.inverse_fun(r2) * pyy
                )
                acc.setdefault(x2, []).append(f)
    return acc


def _sorted_product(factors: list[float]) -> float:
    factors.sort()
    prod = 1.0
    for f in factors:
        prod *= f
    return prod


def _relation_partner_map(state: AlignmentState) -> dict[int, tuple[int, ...]]:
    """First-ontology relation -> second-ontology relations with any stored
    inclusion score. Empty during the bootstrap iteration (prior is implicit),
    so penalties only ever weigh computed alignments."""
    if state.subrel is None:
        return {}
    partners: dict[int, set[int]] = {}
    for (r1, r2) in state.subrel.o1_to_o2:
        partners.setdefault(r1, set()).add(r2)
    for (r2, r1) in state.subrel.o2_to_o1:
        partners.setdefault(r1, set()).add(r2)
    return {r1: tuple(sorted(rs)) for r1, rs in partners.items()}


def _penalty_factors(
    state: AlignmentState,
    ev: EvidenceView,
    rel_partners: dict[int, tuple[int, ...]],
    objs_cache: dict[int, dict[int, list[int]]],
    x: int,
    x2: int,
) -> list[float]:
    """Negative-evidence factors: statements of x whose objects have no equal
    among x2's objects under an aligned relation count against the pair.

    A candidate that lacks an aligned relation entirely is penalized through
    the empty inner product (worth exactly 1), i.e. having the relation and
    disagreeing is no worse than not having it at all.
    """
    o1, o2 = state.o1, state.o2
    fun1, fun2 = state.fun1, state.fun2
    sub12, sub21 = _sub_lookups(state)
    objs2 = objs_cache.get(x2)
    if objs2 is None:
        objs2 = {}
        for q, o in o2.by_subject.get(x2, ()):
            objs2.setdefault(q, []).append(o)
        objs_cache[x2] = objs2
    pair_prev: float | None = None
    if state.config.negative_inner == "pair":
        pair_prev = state.equiv.get(x, x2)
    pens: list[float] = []
    for r, y in o1.by_subject.get(x, ()):
        fr = fun1.fun(r)
        for r2 in rel_partners.get(r, ()):
            s21 = sub21(r2, r)
            s12 = sub12(r, r2)
            if s21 <= 0.0 and s12 <= 0.0:
                continue
            objs = objs2.get(r2, ())
            if pair_prev is None:
                inner = 1.0
                for y2 in objs:
                    pe = ev.p(y, y2)
                    if pe:
                        inner *= 1.0 - pe
            else:
                inner = (1.0 - pair_prev) ** len(objs)
            if s21 > 0.0:
                pens.append(1.0 - fr * s21 * inner)
            if s12 > 0.0:
                pens.append(1.0 - fun2.fun(r2) * s12 * inner)
    return pens


def instance_equivalence(state: AlignmentState, x: int, x2: int) -> float:
    """Positive-evidence equivalence of one candidate pair, unpruned.

    Reads the state's tables as "previous iteration": this is the value the
    next sweep would assign. x is a first-ontology instance, x2 second.
    """
    ev = EvidenceView(
        state.o1, state.o2, state.equiv, state.assignment,
        state.config.restrict_to_assignment,
    )
    factors = _instance_factors(state, ev, x).get(x2)
    if not factors:
        return 0.0
    return 1.0 - _sorted_product(factors)


def instance_equivalence_with_negative(state: AlignmentState, x: int, x2: int) -> float:
    """Equivalence of one pair with unmatched-statement penalties applied."""
    ev = EvidenceView(
        state.o1, state.o2, state.equiv, state.assignment,
        state.config.restrict_to_assignment,
    )
    factors = _instance_factors(state, ev, x).get(x2)
    if not factors:
        return 0.0
    positive = 1.0 - _sorted_product(factors)
    pens = _penalty_factors(
        state, ev, _relation_partner_map(state), {}, x, x2
    )
    return positive * _sorted_product(pens)


def update_all_instances(state: AlignmentState) -> tuple[EquivalenceTable, int]:
    """One full instance sweep: a fresh table from the previous snapshot.

    Returns the new table and the number of candidate pairs evaluated (the
    sweep never enumerates the full cross product; candidates come only from
    shared evidence). Rows are computed independently per instance, so the
    sweep may run on any number of worker threads with identical output.
    """
    cfg = state.config
    ev = EvidenceView(
        state.o1, state.o2, state.equiv, state.assignment, cfg.restrict_to_assignment
    )
    rel_partners = _relation_partner_map(state) if cfg.negative_evidence else {}
    theta = cfg.theta
    subjects = state.o1.by_subject
    instances = [x for x in sorted(subjects) if state.o1.kind(x) == INSTANCE]

    def compute_chunk(chunk: list[int]) -> tuple[list[tuple[int, dict[int, float]]], int]:
        out: list[tuple[int, dict[int, float]]] = []
        evaluated = 0
        objs_cache: dict[int, dict[int, list[int]]] = {}
        for x in chunk:
            acc = _instance_factors(state, ev, x)
            evaluated += len(acc)
            row: dict[int, float] = {}
            for x2, factors in acc.items():
                p = 1.0 - _sorted_product(factors)
                if cfg.negative_evidence and p > 0.0:
                    pens = _penalty_factors(state, ev, rel_partners, objs_cache, x, x2)
                    p *= _sorted_product(pens)
                if p > theta:
                    row[x2] = p
            if row:
                out.append((x, row))
        return out, evaluated

    if cfg.threads <= 1 or len(instances) < 2:
        chunks = [instances]
    else:
        size = max(1, (len(instances) + cfg.threads - 1) // cfg.threads)
        chunks = [instances[i : i + size] for i in range(0, len(instances), size)]

    results: list[tuple[list[tuple[int, dict[int, float]]], int]]
    if len(chunks) == 1:
        results = [compute_chunk(chunks[0])]
    else:
        with ThreadPoolExecutor(max_workers=len(chunks)) as pool:
            results = list(pool.map(compute_chunk, chunks))

    table = EquivalenceTable()
    for a, b, p in state.literal_seeds:
        table.set(a, b, p)
    evaluated = 0
    for rows, n in results:
        evaluated += n
        for x, row in rows:
            for x2, p in row.items():
                table.set(x, x2, p)
    return table, evaluated


def compute_maximal_assignment(
    table: EquivalenceTable, o1: Ontology, o2: Ontology
) -> MaximalAssignment:
    """Per-instance argmax over stored scores; ties go to the lexically
    smallest partner. Literal rows are ignored: the assignment is about
    instances."""
    assignment = MaximalAssignment()
    for a, row in table._fwd.items():
        if o1.kind(a) != INSTANCE:
            continue
        best: tuple[int, float] | None = None
        for b, p in row.items():
            if (
                best is None
                or p > best[1]
                or (p == best[1] and o2.lexical(b) < o2.lexical(best[0]))
            ):
                best = (b, p)
        if best:
            assignment.forward[a] = best
    for b, col in table._bwd.items():
        if o2.kind(b) != INSTANCE:
            continue
        best = None
        for a, p in col.items():
            if (
                best is None
                or p > best[1]
                or (p == best[1] and o1.lexical(a) < o1.lexical(best[0]))
            ):
                best = (a, p)
        if best:
            assignment.backward[b] = best
    return assignment


# ------------------------------------------------------------- subrelations


def _subrel_rows(
    side: Ontology,
    other: Ontology,
    partners,
    relation: int,
    pair_cap: int,
) -> dict[int, float]:
    """Inclusion scores of one relation into every candidate of the other side.

    Per statement r(x, y): the chance that (x, y) transported through known
    equalities lands on an r'(x', y') statement (numerator, per candidate r'),
    against the chance that it lands on any known pair at all (denominator).
    """
    stmts = side.by_relation.get(relation, ())[:pair_cap]
    num: dict[int, float] = {}
    den = 0.0
    for x, y in stmts:
        ex = partners(x)
        if not ex:
            continue
        ey = partners(y)
        if not ey:
            continue
        dprod = 1.0
        nprods: dict[int, float] = {}
        for x2, px in ex:
            for y2, py in ey:
                miss = 1.0 - px * py
                dprod *= miss
                for r2 in other.relations_between(x2, y2):
                    nprods[r2] = nprods.get(r2, 1.0) * miss
        den += 1.0 - dprod
        for r2, prod in nprods.items():
            num[r2] = num.get(r2, 0.0) + (1.0 - prod)
    if den <= 0.0:
        return {}
    return {r2: v / den for r2, v in num.items() if v > 0.0}


def update_subrelations(
    state: AlignmentState, table: EquivalenceTable, assignment: MaximalAssignment
) -> SubrelationTable:
    """Relation-inclusion sweep over the just-computed equivalences.

    Inverse relations are first-class: every directed pair with any shared
    evidence gets a computed score, including a relation against its own
    cross-ontology namesake (never hardcoded)."""
    cfg = state.config
    ev = EvidenceView(state.o1, state.o2, table, assignment, cfg.restrict_to_assignment)
    out = SubrelationTable()
    for r1 in sorted(state.o1.by_relation):
        for r2, p in _subrel_rows(
            state.o1, state.o2, ev.partners_left, r1, cfg.pair_cap
        ).items():
            out.o1_to_o2[(r1, r2)] = p
    for r2 in sorted(state.o2.by_relation):
        for r1, p in _subrel_rows(
            state.o2, state.o1, ev.partners_right, r2, cfg.pair_cap
        ).items():
            out.o2_to_o1[(r2, r1)] = p
    return out


def subrelation_probability(
    state: AlignmentState, side: Ontology, relation: int, other_relation: int
) -> float:
    """Inclusion of `relation` (of `side`) in `other_relation` of the other
    ontology, evaluated from the state's current equivalences."""
    ev = EvidenceView(
        state.o1, state.o2, state.equiv, state.assignment,
        state.config.restrict_to_assignment,
    )
    if side is state.o1:
        rows = _subrel_rows(state.o1, state.o2, ev.partners_left, relation, state.config.pair_cap)
    elif side is state.o2:
        rows = _subrel_rows(state.o2, state.o1, ev.partners_right, relation, state.config.pair_cap)
    else:
        raise ValueError("side must be one of the state's ontologies")
    return rows.get(other_relation, 0.0)


# ------------------------------------------------------------------- classes


def _class_rows(
    side: Ontology,
    other: Ontology,
    partners,
    cls: int,
    pair_cap: int,
) -> dict[int, tuple[float, int]]:
    """Inclusion of one class into every candidate class of the other side:
    the average, over (up to pair_cap of) its instances, of the probability
    that some other-side class member is equal. Returns score and the number
    of supporting instances."""
    insts = side.instances_of(cls)[:pair_cap]
    if not insts:
        return {}
    acc: dict[int, float] = {}
    support: dict[int, int] = {}
    for x in insts:
        prods: dict[int, float] = {}
        for x2, p in partners(x):
            for c2 in other.classes_of(x2):
                prods[c2] = prods.get(c2, 1.0) * (1.0 - p)
        for c2, prod in prods.items():
            contribution = 1.0 - prod
            if contribution > 0.0:
                acc[c2] = acc.get(c2, 0.0) + contribution
                support[c2] = support.get(c2, 0) + 1
    n = len(insts)
    return {c2: (v / n, support[c2]) for c2, v in acc.items()}


def compute_class_alignment(state: AlignmentState) -> ClassAlignmentTable:
    """Directed class inclusions from the final equivalences, both ways."""
    cfg = state.config
    ev = EvidenceView(
        state.o1, state.o2, state.equiv, state.assignment, cfg.restrict_to_assignment
    )
    out = ClassAlignmentTable()
    for c1 in sorted(state.o1.classes()):
        for c2, entry in _class_rows(
            state.o1, state.o2, ev.partners_left, c1, cfg.pair_cap
        ).items():
            out.o1_to_o2[(c1, c2)] = entry
    for c2 in sorted(state.o2.classes()):
        for c1, entry in _class_rows(
            state.o2, state.o1, ev.partners_right, c2, cfg.pair_cap
        ).items():
            out.o2_to_o1[(c2, c1)] = entry
    return out


def class_inclusion(
    state: AlignmentState, side: Ontology, cls: int, other_cls: int
) -> float:
    """Inclusion of `cls` (of `side`) in `other_cls` of the other ontology."""
    ev = EvidenceView(
        state.o1, state.o2, state.equiv, state.assignment,
        state.config.restrict_to_assignment,
    )
    if side is state.o1:
        rows = _class_rows(state.o1, state.o2, ev.partners_left, cls, state.config.pair_cap)
    elif side is state.o2:
        rows = _class_rows(state.o2, state.o1, ev.partners_right, cls, state.config.pair_cap)
    else:
        raise ValueError("side must be one of the state's ontologies")
    return rows.get(other_cls, (0.0, 0))[0]


# ------------------------------------------------------------------ fixpoint


def _assignment_change(
    prev: MaximalAssignment, new: MaximalAssignment
) -> tuple[int, int]:
    """How many instances changed partner, over how many were ever assigned."""
    changed = 0
    tracked = 0
    for old, fresh in ((prev.forward, new.forward), (prev.backward, new.backward)):
        keys = old.keys() | fresh.keys()
        tracked += len(keys)
        for k in keys:
            a = old.get(k)
            b = fresh.get(k)
            if (a and a[0]) != (b and b[0]):
                changed += 1
    return changed, tracked


def step(state: AlignmentState) -> tuple[AlignmentState, IterationStats]:
    """One full iteration: instance sweep, assignment, relation sweep."""
    started = time.perf_counter()
    table, evaluated = update_all_instances(state)
    assignment = compute_maximal_assignment(table, state.o1, state.o2)
    changed, tracked = _assignment_change(state.assignment, assignment)
    subrel = update_subrelations(state, table, assignment)
    fresh = AlignmentState(
        o1=state.o1, o2=state.o2, config=state.config,
        fun1=state.fun1, fun2=state.fun2, measure=state.measure,
        literal_seeds=state.literal_seeds,
        equiv=table, assignment=assignment, subrel=subrel,
        iteration=state.iteration + 1,
    )
    stats = IterationStats(
        iteration=fresh.iteration,
        changed=changed,
        tracked=tracked,
        change_fraction=(changed / tracked) if tracked else 0.0,
        equivalences=len(table),
        subrelations=len(subrel),
        pairs_evaluated=evaluated,
        seconds=time.perf_counter() - started,
    )
    return fresh, stats


def run_fixpoint(
    o1: Ontology, o2: Ontology, config: AlignmentConfig | None = None
) -> AlignmentResult:
    """Align two ontologies end to end."""
    state = bootstrap(o1, o2, config)
    cfg = state.config
    history: list[IterationStats] = []
    converged = False
    for _ in range(cfg.max_iterations):
        state, stats = step(state)
        history.append(stats)
        log.info(
            "iteration %d: %d/%d assignments changed (%.2f%%),"
            " %d equivalences, %d subrelations, %.2fs",
            stats.iteration, stats.changed, stats.tracked,
            100.0 * stats.change_fraction, stats.equivalences,
            stats.subrelations, stats.seconds,
        )
        if stats.change_fraction < cfg.convergence_fraction:
            converged = True
            break
    classes = compute_class_alignment(state)
    if not converged and cfg.max_iterations > 0:
        log.warning("stopped at max_iterations=%d without converging", cfg.max_iterations)
    return AlignmentResult(
        o1=o1, o2=o2, config=cfg, equiv=state.equiv, assignment=state.assignment,
        subrel=state.subrel if state.subrel is not None else SubrelationTable(),
        classes=classes, iterations=history, converged=converged,
    )


# ------------------------------------------------------------------- reports


def result_rows(
    result: AlignmentResult,
) -> tuple[list[AlignmentRow], list[AlignmentRow], list[AlignmentRow]]:
    """Materialize the result as alignment rows (instances, relations, classes).

    Instance rows are the forward maximal assignment. Relation and class rows
    keep the first ontology's term on the left and encode the inclusion
    direction explicitly; class rows respect the reporting threshold and the
    optional instance-count ceiling.
    """
    o1, o2, cfg = result.o1, result.o2, result.config
    instances = [
        AlignmentRow(o1.lexical(x), o2.lexical(b), p, "instance", "equivalence")
        for x, (b, p) in result.assignment.forward.items()
    ]
    relations = [
        AlignmentRow(
            o1.relation_lexical(r1), o2.relation_lexical(r2), p,
            "relation", "left_in_right",
        )
        for (r1, r2), p in result.subrel.o1_to_o2.items()
    ]
    relations += [
        AlignmentRow(
            o1.relation_lexical(r1), o2.relation_lexical(r2), p,
            "relation", "right_in_left",
        )
        for (r2, r1), p in result.subrel.o2_to_o1.items()
    ]

    def class_ok(c1: int, c2: int) -> bool:
        ceiling = cfg.class_instance_ceiling
        if ceiling is None:
            return True
        return (
            len(o1.instances_of(c1)) <= ceiling and len(o2.instances_of(c2)) <= ceiling
        )

    classes = [
        AlignmentRow(o1.lexical(c1), o2.lexical(c2), p, "class", "left_in_right")
        for (c1, c2), (p, _) in result.classes.o1_to_o2.items()
        if p >= cfg.class_score_threshold and class_ok(c1, c2)
    ]
    classes += [
        AlignmentRow(o1.lexical(c1), o2.lexical(c2), p, "class", "right_in_left")
        for (c2, c1), (p, _) in result.classes.o2_to_o1.items()
        if p >= cfg.class_score_threshold and class_ok(c1, c2)
    ]
    return instances, relations, classes
