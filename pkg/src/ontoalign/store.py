"""Indexed in-memory store for one RDFS ontology.

Terms (instances, literals, classes) and relations are interned to dense
integer ids. Every relation has a materialized inverse, and every statement
is stored together with its inverse statement, so traversals can walk from
any term over all incident edges by looking only at subject-indexed
statements. Type and schema edges (rdf:type, rdfs:subClassOf,
rdfs:subPropertyOf) live in dedicated indexes, not in the general statement
store: class alignment consumes them separately and they carry no
functionality semantics.
"""

from __future__ import annotations

import logging
from typing import Iterable, Iterator, NamedTuple

log = logging.getLogger("ontoalign.store")

RDF_TYPE = "http://www.w3.org/1999/02/22-rdf-syntax-ns#type"
RDFS_SUBCLASSOF = "http://www.w3.org/2000/01/rdf-schema#subClassOf"
RDFS_SUBPROPERTYOF = "http://www.w3.org/2000/01/rdf-schema#subPropertyOf"

INSTANCE = "instance"
LITERAL = "literal"
RELATION = "relation"
CLASS = "class"

INVERSE_MARK = "⁻¹"  # superscript -1, appended to inverse relation names


class Term(NamedTuple):
    id: int
    kind: str
    lexical: str
    origin: str


class Relation(NamedTuple):
    id: int
    lexical: str
    inverse: int
    origin: str


class Vocabulary(NamedTuple):
    """IRIs treated as schema predicates. Override for nonstandard dumps."""

    type: tuple[str, ...] = (RDF_TYPE,)
    subclass: tuple[str, ...] = (RDFS_SUBCLASSOF,)
    subproperty: tuple[str, ...] = (RDFS_SUBPROPERTYOF,)


class Ontology:
    """One ontology: interned terms, inverse-closed statements, schema indexes.

    Build with :func:`ontology_from_triples` (or the N-Triples loader), which
    classifies term kinds in a first pass. After loading, treat the object as
    immutable; all query methods are read-only.
    """

    def __init__(self, origin: str):
        self.origin = origin
        # term tables: instances, literals, classes share one id space
        self._term_id: dict[str, int] = {}
        self._term_lex: list[str] = []
        self._term_kind: list[str] = []
        # relation table: separate id space; ids 2k / 2k+1 are mutual inverses
        self._rel_id: dict[str, int] = {}
        self._rel_lex: list[str] = []
        # statements, stored in both directions
        self._stmts: set[tuple[int, int, int]] = set()
        self.by_subject: dict[int, list[tuple[int, int]]] = {}
        self.by_relation: dict[int, list[tuple[int, int]]] = {}
        self.by_relation_object: dict[tuple[int, int], list[int]] = {}
        self._pair_rels: dict[tuple[int, int], list[int]] = {}
        # schema
        self._types_of: dict[int, list[int]] = {}  # instance -> classes
        self._instances_of: dict[int, list[int]] = {}  # class -> instances
        self._type_pairs: set[tuple[int, int]] = set()
        self.subclass_edges: dict[int, set[int]] = {}
        self.subproperty_edges: dict[int, set[int]] = {}
        self._closed = False
        self.rejected_statements = 0

    # ------------------------------------------------------------------ terms

    def intern_term(self, lexical: str, kind: str) -> int:
        """Intern a non-relation term; id is stable per (lexical, kind, origin)."""
        tid = self._term_id.get(lexical)
        if tid is not None:
            if self._term_kind[tid] != kind:
                raise ValueError(
                    f"term {lexical!r} already interned as {self._term_kind[tid]},"
                    f" not {kind}"
                )
            return tid
        tid = len(self._term_lex)
        self._term_id[lexical] = tid
        self._term_lex.append(lexical)
        self._term_kind.append(kind)
        return tid

    def intern_relation(self, lexical: str) -> int:
        """Intern a relation, creating its inverse alongside it."""
        rid = self._rel_id.get(lexical)
        if rid is not None:
            return rid
        rid = len(self._rel_lex)
        self._rel_id[lexical] = rid
        self._rel_lex.append(lexical)
        inv_lex = lexical + INVERSE_MARK
        self._rel_id[inv_lex] = rid + 1
        self._rel_lex.append(inv_lex)
        return rid

    def term(self, tid: int) -> Term:
        return Term(tid, self._term_kind[tid], self._term_lex[tid], self.origin)

    def term_id(self, lexical: str) -> int | None:
        return self._term_id.get(lexical)

    def kind(self, tid: int) -> str:
        return self._term_kind[tid]

    def lexical(self, tid: int) -> str:
        return self._term_lex[tid]

    def relation(self, rid: int) -> Relation:
        return Relation(rid, self._rel_lex[rid], rid ^ 1, self.origin)

    def relation_id(self, lexical: str) -> int | None:
        return self._rel_id.get(lexical)

    def relation_lexical(self, rid: int) -> str:
        return self._rel_lex[rid]

    def inverse(self, rid: int) -> int:
        # inverses are allocated as adjacent id pairs
        return rid ^ 1

    def term_count(self) -> int:
        return len(self._term_lex)

    def relation_ids(self) -> range:
        return range(len(self._rel_lex))

    def instances(self) -> list[int]:
        return [t for t, k in enumerate(self._term_kind) if k == INSTANCE]

    def literals(self) -> list[int]:
        return [t for t, k in enumerate(self._term_kind) if k == LITERAL]

    def classes(self) -> list[int]:
        return [t for t, k in enumerate(self._term_kind) if k == CLASS]

    # ------------------------------------------------------------- statements

    def add_statement(self, subject: int, relation: int, obj: int) -> None:
        """Add one statement and its inverse. Idempotent.

        Subject must be an instance (literals appear as subjects only in the
        auto-generated inverse direction); classes and relations may not take
        part in ordinary statements at all.
        """
        skind = self._term_kind[subject]
        okind = self._term_kind[obj]
        if skind != INSTANCE:
            raise ValueError(
                f"statement {self._render(subject, relation, obj)}:"
                f" subject is a {skind}"
            )
        if okind not in (INSTANCE, LITERAL):
            raise ValueError(
                f"statement {self._render(subject, relation, obj)}:"
                f" object is a {okind}"
            )
        self._insert(subject, relation, obj)
        self._insert(obj, relation ^ 1, subject)

    def _insert(self, s: int, r: int, o: int) -> None:
        key = (s, r, o)
        if key in self._stmts:
            return
        self._stmts.add(key)
        self.by_subject.setdefault(s, []).append((r, o))
        self.by_relation.setdefault(r, []).append((s, o))
        self.by_relation_object.setdefault((r, o), []).append(s)
        self._pair_rels.setdefault((s, o), []).append(r)

    def statement_count(self) -> int:
        return len(self._stmts)

    def has_statement(self, s: int, r: int, o: int) -> bool:
        return (s, r, o) in self._stmts

    def statements_with_subject(self, subject: int) -> Iterator[tuple[int, int]]:
        """Stream (relation, object) for a subject; inverse edges included."""
        return iter(self.by_subject.get(subject, ()))

    def subjects_of(self, relation: int, obj: int) -> Iterator[int]:
        return iter(self.by_relation_object.get((relation, obj), ()))

    def pairs_of(self, relation: int) -> Iterator[tuple[int, int]]:
        return iter(self.by_relation.get(relation, ()))

    def relations_between(self, subject: int, obj: int) -> Iterator[int]:
        return iter(self._pair_rels.get((subject, obj), ()))

    def _render(self, s: int, r: int, o: int) -> str:
        return (
            f"{self._rel_lex[r]}({self._term_lex[s]}, {self._term_lex[o]})"
        )

    # ----------------------------------------------------------- type/schema

    def add_type(self, instance: int, cls: int) -> None:
        if self._term_kind[instance] != INSTANCE or self._term_kind[cls] != CLASS:
            raise ValueError(
                f"type edge needs instance and class, got"
                f" {self._term_kind[instance]} / {self._term_kind[cls]}"
            )
        if (instance, cls) in self._type_pairs:
            return
        self._type_pairs.add((instance, cls))
        self._types_of.setdefault(instance, []).append(cls)
        self._instances_of.setdefault(cls, []).append(instance)

    def classes_of(self, instance: int) -> list[int]:
        return self._types_of.get(instance, [])

    def instances_of(self, cls: int) -> list[int]:
        return self._instances_of.get(cls, [])

    def add_subclass(self, sub: int, sup: int) -> None:
        self.subclass_edges.setdefault(sub, set()).add(sup)

    def add_subproperty(self, sub: int, sup: int) -> None:
        self.subproperty_edges.setdefault(sub, set()).add(sup)
        # r below s implies r's inverse below s's inverse
        self.subproperty_edges.setdefault(sub ^ 1, set()).add(sup ^ 1)

    def superclasses_of(self, cls: int) -> set[int]:
        return _reachable(self.subclass_edges, cls)

    def close_under_schema(self) -> None:
        """Materialize the transitive consequences of subclass/subproperty edges.

        Cycles collapse into mutual containment (each member inherits every
        other member's extension) and are logged. Idempotent.
        """
        self._warn_cycles(self.subclass_edges, "subClassOf", self._term_lex)
        for inst, classes in list(self._types_of.items()):
            derived: set[int] = set()
            for c in classes:
                derived |= _reachable(self.subclass_edges, c)
            for d in derived:
                self.add_type(inst, d)
        self._warn_cycles(self.subproperty_edges, "subPropertyOf", self._rel_lex)
        for rel in list(self.subproperty_edges):
            for sup in _reachable(self.subproperty_edges, rel):
                for s, o in list(self.by_relation.get(rel, ())):
                    self._insert(s, sup, o)
                    self._insert(o, sup ^ 1, s)
        self._closed = True

    def _warn_cycles(
        self, edges: dict[int, set[int]], label: str, names: list[str]
    ) -> None:
        seen: set[frozenset[int]] = set()
        for node in edges:
            reach = _reachable(edges, node)
            if node in reach:
                group = frozenset(
                    m for m in reach | {node} if node in _reachable(edges, m) or m == node
                )
                if group not in seen:
                    seen.add(group)
                    log.warning(
                        "%s cycle collapsed to one equivalence group: %s",
                        label,
                        ", ".join(sorted(names[m] for m in group)),
                    )


def _reachable(edges: dict[int, set[int]], start: int) -> set[int]:
    """All nodes reachable from start over one or more edges."""
    out: set[int] = set()
    frontier = list(edges.get(start, ()))
    while frontier:
        node = frontier.pop()
        if node in out:
            continue
        out.add(node)
        frontier.extend(edges.get(node, ()))
    return out


def ontology_from_triples(
    triples: Iterable[tuple[str, str, str]],
    origin: str = "first",
    vocab: Vocabulary | None = None,
) -> Ontology:
    """Build a closed ontology from lexical triples.

    Objects whose lexical form starts with a double quote are literals;
    everything else is a resource. Term kinds are decided in a first pass:
    predicates and subPropertyOf endpoints are relations, rdf:type objects and
    subClassOf endpoints are classes, the rest are instances. Ordinary
    statements that would use a class or relation as subject/object are
    rejected and counted (the class/relation reading wins over instancehood).
    """
    vocab = vocab or Vocabulary()
    type_preds = set(vocab.type)
    sub_preds = set(vocab.subclass)
    prop_preds = set(vocab.subproperty)

    plain: list[tuple[str, str, str]] = []
    type_edges: list[tuple[str, str]] = []
    subclass: list[tuple[str, str]] = []
    subprop: list[tuple[str, str]] = []
    class_lex: set[str] = set()
    rel_lex: set[str] = set()

    for s, p, o in triples:
        if p in type_preds:
            type_edges.append((s, o))
            class_lex.add(o)
        elif p in sub_preds:
            subclass.append((s, o))
            class_lex.update((s, o))
        elif p in prop_preds:
            subprop.append((s, o))
            rel_lex.update((s, o))
        else:
            plain.append((s, p, o))
            rel_lex.add(p)

    overlap = class_lex & rel_lex
    for lex in sorted(overlap):
        log.warning("%r used both as class and relation; treating as relation", lex)
    class_lex -= rel_lex

    onto = Ontology(origin)
    for lex in sorted(rel_lex):
        onto.intern_relation(lex)
    for lex in sorted(class_lex):
        onto.intern_term(lex, CLASS)

    def resource_id(lex: str) -> int | None:
        # relations and classes cannot take part in ordinary statements
        if lex in rel_lex:
            return None
        existing = onto.term_id(lex)
        if existing is not None:
            return existing if onto.kind(existing) != CLASS else None
        return onto.intern_term(lex, INSTANCE)

    for s, p, o in plain:
        rid = onto.relation_id(p)
        sid = resource_id(s)
        if o.startswith('"'):
            oid = onto.intern_term(o, LITERAL)
        else:
            oid = resource_id(o)
        if sid is None or oid is None:
            onto.rejected_statements += 1
            log.warning("rejected statement %s(%s, %s): schema term in data position", p, s, o)
            continue
        onto.add_statement(sid, rid, oid)

    for s, c in type_edges:
        cid = onto.term_id(c)
        sid = resource_id(s)
        if sid is None or cid is None or onto.kind(cid) != CLASS:
            # subject is a schema term, or the class got demoted to a relation
            log.warning("dropped type edge %s -> %s", s, c)
            continue
        onto.add_type(sid, cid)

    for a, b in subclass:
        ca, cb = onto.term_id(a), onto.term_id(b)
        if ca is None or cb is None or onto.kind(ca) != CLASS or onto.kind(cb) != CLASS:
            onto.rejected_statements += 1
            continue
        onto.add_subclass(ca, cb)

    for a, b in subprop:
        onto.add_subproperty(onto.intern_relation(a), onto.intern_relation(b))

    onto.close_under_schema()
    return onto
