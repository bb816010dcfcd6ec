"""
Aligning two small ontologies in memory
=======================================

Two libraries describe the same three people under different identifiers,
different relation names, and different class names. The only thing the
sides share is literal values. Watch the fixpoint pull instances, relations,
and classes into alignment from that alone.
"""

from ontoalign import ontology_from_triples, result_rows, run_fixpoint

TYPE = "http://www.w3.org/1999/02/22-rdf-syntax-ns#type"

left = ontology_from_triples(
    [
        ("alice", "label", '"Alice Carroll"'),
        ("alice", "wasBornIn", "oxford"),
        ("alice", "marriedTo", "bob"),
        ("bob", "label", '"Bob Carroll"'),
        ("oxford", "label", '"Oxford"'),
        ("alice", TYPE, "Person"),
        ("bob", TYPE, "Person"),
        ("oxford", TYPE, "City"),
    ],
    origin="first",
)

right = ontology_from_triples(
    [
        ("p1", "name", '"Alice Carroll"'),
        ("p1", "birthPlace", "c1"),
        ("p1", "spouse", "p2"),
        ("p2", "name", '"Bob Carroll"'),
        ("c1", "name", '"Oxford"'),
        ("p1", TYPE, "Human"),
        ("p2", TYPE, "Human"),
        ("c1", TYPE, "Town"),
    ],
    origin="second",
)

result = run_fixpoint(left, right)

print(f"converged: {result.converged} after {len(result.iterations)} iterations")
for stats in result.iterations:
    print(
        f"  iteration {stats.iteration}: {stats.equivalences} candidate pairs,"
        f" {stats.changed}/{stats.tracked} assignments changed"
    )

instances, relations, classes = result_rows(result)

print("\ninstance matches:")
for row in instances:
    print(f"  {row.left}  ==  {row.right}   p={row.score:.3f}")

# inclusions are directed; an equivalent pair shows up once per direction
print("\nrelation inclusions:")
for row in relations:
    arrow = "->" if row.direction == "left_in_right" else "<-"
    print(f"  {row.left} {arrow} {row.right}   p={row.score:.3f}")

print("\nclass inclusions:")
for row in classes:
    arrow = "->" if row.direction == "left_in_right" else "<-"
    print(f"  {row.left} {arrow} {row.right}   p={row.score:.3f}")
