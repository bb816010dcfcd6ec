"""Ontology builders shared by the test modules."""

from __future__ import annotations

import random

from ontoalign.store import CLASS, INSTANCE, LITERAL, Ontology


def make_ontology(
    origin: str,
    statements: list[tuple[str, str, str]],
    types: list[tuple[str, str]] = (),
    subclasses: list[tuple[str, str]] = (),
) -> Ontology:
    """Build an ontology from readable name triples.

    Object names starting with a double quote are literals; everything else is
    an instance. Schema is closed before returning.
    """
    onto = Ontology(origin)

    def term(name: str) -> int:
        return onto.intern_term(name, LITERAL if name.startswith('"') else INSTANCE)

    for s, r, o in statements:
        onto.add_statement(term(s), onto.intern_relation(r), term(o))
    for sub, sup in subclasses:
        onto.add_subclass(onto.intern_term(sub, CLASS), onto.intern_term(sup, CLASS))
    for inst, cls in types:
        onto.add_type(term(inst), onto.intern_term(cls, CLASS))
    onto.close_under_schema()
    return onto


def alice_statements(label: str, born: str, married: str, names: list[str]):
    """The canonical six-statement fixture under configurable names."""
    alice, bob, paris = names
    return [
        (alice, label, '"Alice"'),
        (bob, label, '"Bob"'),
        (paris, label, '"Paris"'),
        (alice, born, paris),
        (bob, born, paris),
        (alice, married, bob),
    ]


def alice_pair() -> tuple[Ontology, Ontology]:
    o1 = make_ontology(
        "first", alice_statements("label", "wasBornIn", "marriedTo", ["alice", "bob", "paris"])
    )
    o2 = make_ontology(
        "second", alice_statements("name", "birthPlace", "spouse", ["a2", "b2", "p2"])
    )
    return o1, o2


def random_world_pair(
    rng: random.Random,
    n_inst: int = 12,
    n_attr: int = 2,
    n_link: int = 2,
    n_class: int = 3,
    drop: float = 0.15,
    value_pool: int | None = None,
) -> tuple[Ontology, Ontology]:
    """Two random projections of one random world.

    Entities share literal attribute values across the two sides (the only
    alignment anchor); identifiers and relation names are disjoint. A smaller
    value pool than the entity count forces shared values and therefore
    ambiguous candidates.
    """
    value_pool = value_pool if value_pool is not None else max(2, n_inst)
    world_attr: list[tuple[int, int, str]] = []  # (entity, attr, value)
    for e in range(n_inst):
        for a in range(n_attr):
            if rng.random() < 0.85:
                world_attr.append((e, a, f'"v{a}-{rng.randrange(value_pool)}"'))
    world_link: list[tuple[int, int, int]] = []  # (entity, link, entity)
    for _ in range(n_inst * n_link):
        e = rng.randrange(n_inst)
        e2 = rng.randrange(n_inst)
        world_link.append((e, rng.randrange(max(1, n_link)), e2))
    world_type: list[tuple[int, int]] = []
    for e in range(n_inst):
        if n_class and rng.random() < 0.7:
            world_type.append((e, rng.randrange(n_class)))

    sides = []
    for tag in ("a", "b"):
        statements = []
        for e, a, v in world_attr:
            if rng.random() >= drop:
                statements.append((f"{tag}:e{e}", f"{tag}:attr{a}", v))
        for e, l, e2 in world_link:
            if rng.random() >= drop:
                statements.append((f"{tag}:e{e}", f"{tag}:link{l}", f"{tag}:e{e2}"))
        types = [(f"{tag}:e{e}", f"{tag}:c{c}") for e, c in world_type]
        sides.append(
            make_ontology("first" if tag == "a" else "second", statements, types=types)
        )
    return sides[0], sides[1]


def engine_table_dict(table) -> dict[tuple[int, int], float]:
    return {(a, b): p for a, b, p in table.pairs()}
