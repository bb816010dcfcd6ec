import pytest

from ontoalign.store import (
    CLASS,
    INSTANCE,
    INVERSE_MARK,
    LITERAL,
    Ontology,
    ontology_from_triples,
)


def test_intern_is_idempotent_and_kind_stable():
    onto = Ontology("first")
    a = onto.intern_term("x", INSTANCE)
    assert onto.intern_term("x", INSTANCE) == a
    with pytest.raises(ValueError):
        onto.intern_term("x", LITERAL)


def test_relations_come_in_inverse_pairs():
    onto = Ontology("first")
    r = onto.intern_relation("knows")
    assert onto.inverse(r) == r + 1
    assert onto.inverse(onto.inverse(r)) == r
    assert onto.relation_lexical(onto.inverse(r)) == "knows" + INVERSE_MARK
    # interning again returns the same base id
    assert onto.intern_relation("knows") == r


def test_statements_are_stored_in_both_directions():
    onto = Ontology("first")
    r = onto.intern_relation("bornIn")
    a = onto.intern_term("alice", INSTANCE)
    p = onto.intern_term("paris", INSTANCE)
    onto.add_statement(a, r, p)
    assert onto.has_statement(a, r, p)
    assert onto.has_statement(p, onto.inverse(r), a)
    assert onto.statement_count() == 2
    # idempotent
    onto.add_statement(a, r, p)
    assert onto.statement_count() == 2


def test_subject_constraints():
    """Literals may appear as subjects only through the automatic inverse."""
    onto = Ontology("first")
    r = onto.intern_relation("label")
    a = onto.intern_term("alice", INSTANCE)
    lit = onto.intern_term('"Alice"', LITERAL)
    with pytest.raises(ValueError):
        onto.add_statement(lit, r, a)
    onto.add_statement(a, r, lit)
    assert list(onto.statements_with_subject(lit)) == [(onto.inverse(r), a)]


def test_classes_cannot_join_ordinary_statements():
    onto = Ontology("first")
    r = onto.intern_relation("at")
    a = onto.intern_term("alice", INSTANCE)
    c = onto.intern_term("Person", CLASS)
    with pytest.raises(ValueError):
        onto.add_statement(a, r, c)
    with pytest.raises(ValueError):
        onto.add_statement(c, r, a)


def test_query_indexes_are_consistent():
    onto = Ontology("first")
    r = onto.intern_relation("bornIn")
    a = onto.intern_term("a", INSTANCE)
    b = onto.intern_term("b", INSTANCE)
    p = onto.intern_term("p", INSTANCE)
    onto.add_statement(a, r, p)
    onto.add_statement(b, r, p)
    assert sorted(onto.subjects_of(r, p)) == sorted([a, b])
    assert sorted(onto.pairs_of(r)) == sorted([(a, p), (b, p)])
    assert list(onto.relations_between(a, p)) == [r]
    assert list(onto.relations_between(p, a)) == [onto.inverse(r)]


def test_schema_closure_materializes_superclass_members():
    onto = Ontology("first")
    person = onto.intern_term("Person", CLASS)
    agent = onto.intern_term("Agent", CLASS)
    onto.add_subclass(person, agent)
    x = onto.intern_term("x", INSTANCE)
    onto.add_type(x, person)
    onto.close_under_schema()
    assert x in onto.instances_of(agent)
    assert set(onto.classes_of(x)) == {person, agent}
    # calling again must not duplicate anything
    onto.close_under_schema()
    assert onto.instances_of(agent).count(x) == 1


def test_schema_closure_materializes_superproperty_statements():
    onto = Ontology("first")
    sub = onto.intern_relation("capital")
    sup = onto.intern_relation("cityOf")
    onto.add_subproperty(sub, sup)
    a = onto.intern_term("berlin", INSTANCE)
    b = onto.intern_term("germany", INSTANCE)
    onto.add_statement(a, sub, b)
    onto.close_under_schema()
    assert onto.has_statement(a, sup, b)
    assert onto.has_statement(b, onto.inverse(sup), a)


def test_subclass_cycles_collapse_with_warning(caplog):
    onto = Ontology("first")
    c1 = onto.intern_term("A", CLASS)
    c2 = onto.intern_term("B", CLASS)
    onto.add_subclass(c1, c2)
    onto.add_subclass(c2, c1)
    x = onto.intern_term("x", INSTANCE)
    onto.add_type(x, c1)
    with caplog.at_level("WARNING"):
        onto.close_under_schema()
    assert x in onto.instances_of(c2)
    assert any("cycle" in r.message.lower() for r in caplog.records)


def test_from_triples_basic_partition():
    triples = [
        ("alice", "label", '"Alice"'),
        ("alice", "bornIn", "paris"),
        ("alice", "http://www.w3.org/1999/02/22-rdf-syntax-ns#type", "Person"),
        ("Person", "http://www.w3.org/2000/01/rdf-schema#subClassOf", "Agent"),
    ]
    onto = ontology_from_triples(triples)
    assert onto.kind(onto.term_id("alice")) == INSTANCE
    assert onto.kind(onto.term_id('"Alice"')) == LITERAL
    assert onto.kind(onto.term_id("Person")) == CLASS
    assert onto.relation_id("bornIn") is not None
    # type/subclass edges are schema, not ordinary statements
    assert onto.statement_count() == 4  # label + bornIn, each with inverse
    agent = onto.term_id("Agent")
    assert onto.term_id("alice") in onto.instances_of(agent)


def test_from_triples_rejects_statements_on_schema_terms():
    """A term used as a class cannot also be a statement object."""
    triples = [
        ("x", "http://www.w3.org/1999/02/22-rdf-syntax-ns#type", "Person"),
        ("x", "likes", "Person"),
    ]
    onto = ontology_from_triples(triples)
    assert onto.rejected_statements == 1
    assert not onto.by_relation.get(onto.relation_id("likes"))


def test_from_triples_relation_wins_over_class(caplog):
    triples = [
        ("x", "P", "y"),
        ("z", "http://www.w3.org/1999/02/22-rdf-syntax-ns#type", "P"),
    ]
    with caplog.at_level("WARNING"):
        onto = ontology_from_triples(triples)
    assert onto.relation_id("P") is not None
    assert onto.term_id("P") is None or onto.kind(onto.term_id("P")) != CLASS
    assert onto.rejected_statements == 0  # the type edge is dropped, not a statement


def test_from_triples_subproperty_closure():
    triples = [
        ("capital", "http://www.w3.org/2000/01/rdf-schema#subPropertyOf", "cityOf"),
        ("berlin", "capital", "germany"),
    ]
    onto = ontology_from_triples(triples)
    sup = onto.relation_id("cityOf")
    assert onto.has_statement(onto.term_id("berlin"), sup, onto.term_id("germany"))


def test_inverse_subproperty_edges_follow_base_edges():
    onto = Ontology("first")
    sub = onto.intern_relation("capital")
    sup = onto.intern_relation("cityOf")
    onto.add_subproperty(sub, sup)
    assert onto.inverse(sup) in onto.subproperty_edges.get(onto.inverse(sub), set())
