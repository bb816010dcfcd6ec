#!/usr/bin/env python3
# How the four functionality estimators disagree.
#
# hasPassport is one-to-one, livesIn is many-to-one, likesDish is all-pairs.
# arg-ratio calls the all-pairs relation a perfect function (same number of
# subjects and objects); the default harmonic-mean mode calls it 1/n.

from ontoalign import MODES, build_functionality_table, ontology_from_triples

people = [f"p{i}" for i in range(5)]
dishes = [f"d{i}" for i in range(5)]

triples = []
triples += [(p, "hasPassport", f'"PASS-{i:03d}"') for i, p in enumerate(people)]
triples += [(p, "livesIn", "springfield") for p in people]
triples += [(p, "likesDish", d) for p in people for d in dishes]

onto = ontology_from_triples(triples, origin="first")

names = ["hasPassport", "livesIn", "likesDish"]
tables = {m: build_functionality_table(onto, m) for m in MODES}
print(f"{'relation':<14}" + "".join(f"{m:>18}" for m in MODES))
for name in names:
    rid = onto.relation_id(name)
    values = [tables[m].fun(rid) for m in MODES]
    print(f"{name:<14}" + "".join(f"{v:>18.4f}" for v in values))

print(f"\n{'inverse of':<14}" + "".join(f"{m:>18}" for m in MODES))
for name in names:
    rid = onto.relation_id(name)
    values = [tables[m].inverse_fun(rid) for m in MODES]
    print(f"{name:<14}" + "".join(f"{v:>18.4f}" for v in values))
