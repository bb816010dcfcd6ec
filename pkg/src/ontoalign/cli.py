"""Command-line interface.

Subcommands:

* ``align``          align two N-Triples ontologies, write TSVs + a manifest
* ``eval``           score a predicted alignment against a gold TSV
* ``generate``       build a synthetic ontology pair with gold alignments
* ``functionality``  print per-relation functionality of one ontology

Exit codes: 0 success, 2 usage error, 3 unreadable or malformed input,
4 alignment did not converge and --strict was given.
"""

from __future__ import annotations

import argparse
import hashlib
import logging
import random
import sys
from pathlib import Path

from .engine import AlignmentConfig, AlignmentResult, run_fixpoint, result_rows
from .evaluation import evaluate_instances, evaluate_threshold_sweep
from .functionality import MODES, build_functionality_table
from .literals import MEASURES
from .ntriples import (
    AlignmentRow,
    ParseError,
    _expand_paths,
    load_gold,
    load_ontology,
    parse_ntriples,
    read_alignment,
    write_alignment,
)
from .store import INSTANCE

log = logging.getLogger("ontoalign.cli")

EXIT_OK = 0
EXIT_USAGE = 2  # argparse's own
EXIT_IO = 3
EXIT_NOT_CONVERGED = 4


def _add_align_options(p: argparse.ArgumentParser) -> None:
    p.add_argument("left", help="first ontology: .nt file or directory of .nt files")
    p.add_argument("right", help="second ontology")
    p.add_argument("--out", required=True, help="output directory (created if missing)")
    p.add_argument("--theta", type=float, default=0.1,
                   help="bootstrap relation prior and storage floor (default 0.1)")
    p.add_argument("--max-iterations", type=int, default=10)
    p.add_argument("--convergence", type=float, default=0.01,
                   help="stop when fewer than this fraction of assignments change")
    p.add_argument("--pair-cap", type=int, default=10_000,
                   help="statements/instances sampled per relation or class")
    p.add_argument("--negative-evidence", action="store_true",
                   help="penalize pairs whose aligned relations disagree")
    p.add_argument("--negative-inner", choices=("object", "pair"), default="object")
    p.add_argument("--no-restrict", action="store_true",
                   help="use every stored equivalence as evidence, not just the assignment")
    p.add_argument("--literal-mode", choices=tuple(MEASURES), default="strict")
    p.add_argument("--functionality-mode", choices=MODES, default="harmonic-mean")
    p.add_argument("--class-threshold", type=float, default=0.4,
                   help="reporting floor for class rows")
    p.add_argument("--class-ceiling", type=int, default=None,
                   help="drop class rows for classes with more instances than this")
    p.add_argument("--threads", type=int, default=1)
    p.add_argument("--all-probabilities", action="store_true",
                   help="write every stored instance pair, not just the maximal assignment")
    p.add_argument("--strict", action="store_true",
                   help="exit 4 when the fixpoint does not converge")


def _config_from_args(args: argparse.Namespace) -> AlignmentConfig:
    return AlignmentConfig(
        theta=args.theta,
        max_iterations=args.max_iterations,
        convergence_fraction=args.convergence,
        pair_cap=args.pair_cap,
        negative_evidence=args.negative_evidence,
        negative_inner=args.negative_inner,
        restrict_to_assignment=not args.no_restrict,
        literal_mode=args.literal_mode,
        functionality_mode=args.functionality_mode,
        class_score_threshold=args.class_threshold,
        class_instance_ceiling=args.class_ceiling,
        threads=args.threads,
    )


def _digest(paths) -> str:
    h = hashlib.sha256()
    for f in _expand_paths(paths):
        h.update(Path(f).read_bytes())
    return h.hexdigest()


def _manifest_lines(
    args: argparse.Namespace,
    result: AlignmentResult,
    outputs: dict[str, tuple[Path, int]],
) -> list[str]:
    cfg = result.config
    kv: dict[str, object] = {
        "converged": str(result.converged).lower(),
        "iterations": len(result.iterations),
        "input.left.path": args.left,
        "input.left.sha256": _digest(args.left),
        "input.left.terms": result.o1.term_count(),
        "input.left.statements": result.o1.statement_count(),
        "input.right.path": args.right,
        "input.right.sha256": _digest(args.right),
        "input.right.terms": result.o2.term_count(),
        "input.right.statements": result.o2.statement_count(),
    }
    for name, value in vars(cfg).items():
        kv[f"config.{name}"] = value
    for s in result.iterations:
        base = f"iteration.{s.iteration}"
        kv[f"{base}.changed"] = s.changed
        kv[f"{base}.tracked"] = s.tracked
        kv[f"{base}.change_fraction"] = f"{s.change_fraction:.6f}"
        kv[f"{base}.equivalences"] = s.equivalences
        kv[f"{base}.subrelations"] = s.subrelations
        kv[f"{base}.pairs_evaluated"] = s.pairs_evaluated
        kv[f"{base}.seconds"] = f"{s.seconds:.3f}"
    for name, (path, count) in outputs.items():
        kv[f"output.{name}.path"] = str(path)
        kv[f"output.{name}.rows"] = count
    return [f"{k}={kv[k]}" for k in sorted(kv)]


def cmd_align(args: argparse.Namespace) -> int:
    try:
        o1 = load_ontology(args.left, origin="first")
        o2 = load_ontology(args.right, origin="second")
    except ParseError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_IO
    result = run_fixpoint(o1, o2, _config_from_args(args))
    instances, relations, classes = result_rows(result)
    if args.all_probabilities:
        instances = [
            AlignmentRow(o1.lexical(a), o2.lexical(b), p, "instance", "equivalence")
            for a, b, p in result.equiv.pairs()
            if o1.kind(a) == INSTANCE and o2.kind(b) == INSTANCE
        ]
    out = Path(args.out)
    try:
        out.mkdir(parents=True, exist_ok=True)
        outputs: dict[str, tuple[Path, int]] = {}
        for name, rows in (
            ("instances", instances), ("relations", relations), ("classes", classes),
        ):
            path = out / f"{name}.tsv"
            outputs[name] = (path, write_alignment(rows, path))
        manifest = out / "manifest.txt"
        manifest.write_text(
            "\n".join(_manifest_lines(args, result, outputs)) + "\n", encoding="utf-8"
        )
    except OSError as exc:
        print(f"error: cannot write outputs: {exc}", file=sys.stderr)
        return EXIT_IO
    last = result.iterations[-1] if result.iterations else None
    print(
        f"aligned in {len(result.iterations)} iterations"
        f" (converged={str(result.converged).lower()}"
        f"{f', final change {last.change_fraction:.2%}' if last else ''})"
    )
    for name, (path, count) in outputs.items():
        print(f"  {name}: {count} rows -> {path}")
    print(f"  manifest -> {manifest}")
    if args.strict and not result.converged:
        return EXIT_NOT_CONVERGED
    return EXIT_OK


def _fact_counts(paths: list[str]) -> dict[str, int]:
    """Statements per resource (subject or resource object) in raw triples."""
    counts: dict[str, int] = {}
    for path in paths:
        for f in _expand_paths(path):
            with open(f, encoding="utf-8") as fh:
                for s, _p, o in parse_ntriples(fh):
                    counts[s] = counts.get(s, 0) + 1
                    if not o.startswith('"'):
                        counts[o] = counts.get(o, 0) + 1
    return counts


def cmd_eval(args: argparse.Namespace) -> int:
    try:
        rows = [r for r in read_alignment(args.predicted) if r.kind == args.kind]
        gold = load_gold(args.gold)
        counts = _fact_counts(args.facts_from) if args.facts_from else None
    except (ParseError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_IO
    if args.min_facts and counts is None:
        print("error: --min-facts needs --facts-from", file=sys.stderr)
        return EXIT_USAGE
    if args.sweep:
        print("threshold\tprecision\trecall\tf1\tpredicted\tcorrect\tgold")
        for threshold, m in evaluate_threshold_sweep(
            rows, gold, min_facts=args.min_facts, fact_counts=counts
        ):
            print(
                f"{threshold:.2f}\t{m.precision:.4f}\t{m.recall:.4f}\t{m.f1:.4f}"
                f"\t{m.predicted}\t{m.correct}\t{m.gold}"
            )
        return EXIT_OK
    m = evaluate_instances(rows, gold, min_facts=args.min_facts, fact_counts=counts)
    print(f"precision\t{m.precision:.4f}")
    print(f"recall\t{m.recall:.4f}")
    print(f"f1\t{m.f1:.4f}")
    print(f"predicted_in_gold_region\t{m.predicted}")
    print(f"correct\t{m.correct}")
    print(f"gold\t{m.gold}")
    return EXIT_OK


def cmd_functionality(args: argparse.Namespace) -> int:
    try:
        onto = load_ontology(args.ontology, origin="first")
    except ParseError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_IO
    table = build_functionality_table(onto, args.mode)
    rows = []
    for rid in range(0, len(table.values), 2):  # base relations; odd ids are inverses
        stmts = len(onto.by_relation.get(rid, ()))
        if not stmts:
            continue
        rows.append(
            (onto.relation_lexical(rid), table.values[rid], table.values[rid ^ 1], stmts)
        )
    rows.sort(key=lambda r: (-r[1], r[0]))
    print("relation\tfunctionality\tinverse_functionality\tstatements")
    for name, fun, ifun, stmts in rows[: args.top] if args.top else rows:
        print(f"{name}\t{fun:.6f}\t{ifun:.6f}\t{stmts}")
    return EXIT_OK


# ------------------------------------------------------------------ generate

_FIRST = (
    "Ada", "Alan", "Barbara", "Claude", "Donald", "Edsger", "Frances", "Grace",
    "Hedy", "John", "Katherine", "Kurt", "Leslie", "Margaret", "Niklaus", "Radia",
)
_LAST = (
    "Allen", "Backus", "Church", "Dijkstra", "Goldberg", "Hamilton", "Hopper",
    "Kay", "Knuth", "Lamport", "Liskov", "Lovelace", "McCarthy", "Perlman",
    "Shannon", "Turing",
)

_RDF_TYPE = "http://www.w3.org/1999/02/22-rdf-syntax-ns#type"
_RDFS_SUBCLASS = "http://www.w3.org/2000/01/rdf-schema#subClassOf"

# first-ontology name -> second-ontology name
_REL_NAMES = {
    "hasCode": "code",
    "hasName": "label",
    "hasPhone": "phone",
    "bornIn": "birthPlace",
    "diedIn": "deathPlace",
    "worksAt": "employedBy",
    "locatedIn": "basedIn",
}
_CLASS_NAMES = {
    "Person": "Human",
    "Agent": "Actor",
    "City": "Town",
    "Place": "Location",
    "Organization": "Employer",
}


def _nt_literal(value: str) -> str:
    return '"' + value.replace("\\", "\\\\").replace('"', '\\"') + '"'


def _nt_line(s: str, p: str, o: str, literal: bool = False) -> str:
    obj = _nt_literal(o) if literal else f"<{o}>"
    return f"<{s}> <{p}> {obj} ."


def _phone(rng: random.Random) -> str:
    return (
        f"+{rng.randrange(1, 100)}-{rng.randrange(100, 1000)}"
        f"-{rng.randrange(100, 1000)}-{rng.randrange(1000, 10000)}"
    )


def generate_pair(
    out_dir: str | Path,
    instances: int = 200,
    seed: int = 0,
    attribute_drop: float = 0.0,
    perturb_literals: float = 0.0,
    scramble_phones: float = 0.0,
    split_relation: bool = False,
    merge_relations: bool = False,
) -> dict[str, Path]:
    """Write a synthetic ontology pair plus gold alignments.

    Both sides describe the same entities under fully renamed identifiers;
    literal values are the only common ground, which is exactly the regime the
    aligner is built for. The knobs inject controlled disagreement into the
    second ontology only:

    * attribute_drop    drop this fraction of phone statements
    * perturb_literals  reformat this fraction of phones ('-' becomes '/')
    * scramble_phones   replace this fraction of phone values outright
    * split_relation    split worksAt into two relations by subject parity
    * merge_relations   merge bornIn and diedIn into one placeOf relation
    """
    rng = random.Random(seed)
    out = Path(out_dir)
    out.mkdir(parents=True, exist_ok=True)
    n_cities = max(2, instances // 7)
    n_orgs = max(1, instances // 10)

    name_seen: dict[str, int] = {}

    def fresh_name() -> str:
        name = f"{rng.choice(_FIRST)} {rng.choice(_LAST)}"
        bump = name_seen.get(name, 0)
        name_seen[name] = bump + 1
        return name if bump == 0 else f"{name} {bump + 1}"

    cities = [
        {"local": f"city{j}", "code": f"C{j:04d}-{rng.randrange(10**6):06d}",
         "name": f"City of {fresh_name().split()[-1]} {j}"}
        for j in range(n_cities)
    ]
    orgs = [
        {"local": f"org{k}", "code": f"G{k:04d}-{rng.randrange(10**6):06d}",
         "name": f"Org {fresh_name()} {k}", "city": rng.randrange(n_cities)}
        for k in range(n_orgs)
    ]
    people = []
    for i in range(instances):
        people.append(
            {
                "local": f"person{i}",
                "code": f"P{i:05d}-{rng.randrange(10**6):06d}",
                "name": fresh_name(),
                "phone": _phone(rng),
                "born": rng.randrange(n_cities),
                "died": rng.randrange(n_cities) if rng.random() < 0.5 else None,
                "org": rng.randrange(n_orgs) if rng.random() < 0.85 else None,
            }
        )

    def iri(side: int, local: str) -> str:
        host = "one.example" if side == 1 else "two.example"
        return f"http://{host}/{local}"

    def rel(side: int, name: str) -> str:
        return iri(side, name if side == 1 else _REL_NAMES[name])

    def cls(side: int, name: str) -> str:
        return iri(side, name if side == 1 else _CLASS_NAMES[name])

    def local2(local: str) -> str:
        for a, b in (("person", "human"), ("city", "town"), ("org", "employer")):
            if local.startswith(a):
                return b + local[len(a):]
        return local

    def entity(side: int, local: str) -> str:
        return iri(side, local if side == 1 else local2(local))

    # second-ontology noise decisions, one draw per person, fixed order
    noise = []
    for person in people:
        drop = rng.random() < attribute_drop
        scramble = (not drop) and rng.random() < scramble_phones
        perturb = (not drop) and (not scramble) and rng.random() < perturb_literals
        scrambled = _phone(rng) if scramble else None
        noise.append((drop, scrambled, perturb))

    def side_lines(side: int) -> list[str]:
        lines = [
            _nt_line(cls(side, "Person"), _RDFS_SUBCLASS, cls(side, "Agent")),
            _nt_line(cls(side, "City"), _RDFS_SUBCLASS, cls(side, "Place")),
        ]
        for j, city in enumerate(cities):
            s = entity(side, city["local"])
            lines.append(_nt_line(s, _RDF_TYPE, cls(side, "City")))
            lines.append(_nt_line(s, rel(side, "hasCode"), city["code"], literal=True))
            lines.append(_nt_line(s, rel(side, "hasName"), city["name"], literal=True))
        for k, org in enumerate(orgs):
            s = entity(side, org["local"])
            lines.append(_nt_line(s, _RDF_TYPE, cls(side, "Organization")))
            lines.append(_nt_line(s, rel(side, "hasCode"), org["code"], literal=True))
            lines.append(_nt_line(s, rel(side, "hasName"), org["name"], literal=True))
            lines.append(
                _nt_line(s, rel(side, "locatedIn"), entity(side, cities[org["city"]]["local"]))
            )
        for i, person in enumerate(people):
            s = entity(side, person["local"])
            drop, scrambled, perturb = noise[i]
            lines.append(_nt_line(s, _RDF_TYPE, cls(side, "Person")))
            lines.append(_nt_line(s, rel(side, "hasCode"), person["code"], literal=True))
            lines.append(_nt_line(s, rel(side, "hasName"), person["name"], literal=True))
            phone = person["phone"]
            if side == 2 and scrambled:
                phone = scrambled
            if side == 2 and perturb:
                phone = phone.replace("-", "/")
            if side == 1 or not drop:
                lines.append(_nt_line(s, rel(side, "hasPhone"), phone, literal=True))
            born = entity(side, cities[person["born"]]["local"])
            if side == 2 and merge_relations:
                lines.append(_nt_line(s, iri(2, "placeOf"), born))
                if person["died"] is not None:
                    lines.append(
                        _nt_line(s, iri(2, "placeOf"), entity(side, cities[person["died"]]["local"]))
                    )
            else:
                lines.append(_nt_line(s, rel(side, "bornIn"), born))
                if person["died"] is not None:
                    lines.append(
                        _nt_line(s, rel(side, "diedIn"), entity(side, cities[person["died"]]["local"]))
                    )
            if person["org"] is not None:
                if side == 2 and split_relation:
                    half = "employedByA" if i % 2 == 0 else "employedByB"
                    works = iri(2, half)
                else:
                    works = rel(side, "worksAt")
                lines.append(_nt_line(s, works, entity(side, orgs[person["org"]]["local"])))
        return lines

    files: dict[str, Path] = {}
    for name, lines in (("left", side_lines(1)), ("right", side_lines(2))):
        path = out / f"{name}.nt"
        path.write_text("\n".join(lines) + "\n", encoding="utf-8")
        files[name] = path

    gold_i = out / "gold_instances.tsv"
    with open(gold_i, "w", encoding="utf-8") as fh:
        for group in (people, cities, orgs):
            for item in group:
                fh.write(f"{entity(1, item['local'])}\t{entity(2, item['local'])}\n")
    files["gold_instances"] = gold_i

    gold_r = out / "gold_relations.tsv"
    with open(gold_r, "w", encoding="utf-8") as fh:
        for o1name, o2name in _REL_NAMES.items():
            if split_relation and o1name == "worksAt":
                fh.write(f"{rel(1, o1name)}\t{iri(2, 'employedByA')}\tright_in_left\n")
                fh.write(f"{rel(1, o1name)}\t{iri(2, 'employedByB')}\tright_in_left\n")
            elif merge_relations and o1name in ("bornIn", "diedIn"):
                fh.write(f"{rel(1, o1name)}\t{iri(2, 'placeOf')}\tleft_in_right\n")
            else:
                fh.write(f"{rel(1, o1name)}\t{rel(2, o1name)}\tequivalence\n")
    files["gold_relations"] = gold_r

    gold_c = out / "gold_classes.tsv"
    with open(gold_c, "w", encoding="utf-8") as fh:
        for o1name in _CLASS_NAMES:
            fh.write(f"{cls(1, o1name)}\t{cls(2, o1name)}\tequivalence\n")
    files["gold_classes"] = gold_c
    return files


def cmd_generate(args: argparse.Namespace) -> int:
    try:
        files = generate_pair(
            args.out_dir,
            instances=args.instances,
            seed=args.seed,
            attribute_drop=args.attribute_drop,
            perturb_literals=args.perturb_literals,
            scramble_phones=args.scramble_phones,
            split_relation=args.split_relation,
            merge_relations=args.merge_relations,
        )
    except OSError as exc:
        print(f"error: cannot write outputs: {exc}", file=sys.stderr)
        return EXIT_IO
    for name, path in files.items():
        print(f"  {name}: {path}")
    return EXIT_OK


# ---------------------------------------------------------------------- main


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="ontoalign",
        description="Holistic instance/relation/class alignment of two ontologies.",
    )
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("-v", "--verbose", action="store_true",
                        help="log per-iteration progress to stderr")
    sub = parser.add_subparsers(dest="command", required=True)

    p_align = sub.add_parser("align", parents=[common],
                             help="align two N-Triples ontologies")
    _add_align_options(p_align)
    p_align.set_defaults(func=cmd_align)

    p_eval = sub.add_parser("eval", parents=[common],
                            help="score a predicted alignment TSV against gold")
    p_eval.add_argument("predicted", help="alignment TSV (as written by align)")
    p_eval.add_argument("gold", help="gold TSV: left<TAB>right per line")
    p_eval.add_argument("--kind", choices=("instance", "relation", "class"),
                        default="instance")
    p_eval.add_argument("--min-facts", type=int, default=0,
                        help="ignore gold pairs where neither side has more facts than this")
    p_eval.add_argument("--facts-from", nargs="+", default=None,
                        help="N-Triples files to count facts from (for --min-facts)")
    p_eval.add_argument("--sweep", action="store_true",
                        help="print metrics for every acceptance threshold in 0.05 steps")
    p_eval.set_defaults(func=cmd_eval)

    p_gen = sub.add_parser("generate", parents=[common], help="write a synthetic ontology pair with gold")
    p_gen.add_argument("--out-dir", required=True)
    p_gen.add_argument("--instances", type=int, default=200, help="number of persons")
    p_gen.add_argument("--seed", type=int, default=0)
    p_gen.add_argument("--attribute-drop", type=float, default=0.0,
                       help="fraction of second-side phone statements to drop")
    p_gen.add_argument("--perturb-literals", type=float, default=0.0,
                       help="fraction of second-side phones reformatted ('-' to '/')")
    p_gen.add_argument("--scramble-phones", type=float, default=0.0,
                       help="fraction of second-side phones replaced with new numbers")
    p_gen.add_argument("--split-relation", action="store_true",
                       help="split worksAt into employedByA/employedByB on the second side")
    p_gen.add_argument("--merge-relations", action="store_true",
                       help="merge bornIn and diedIn into placeOf on the second side")
    p_gen.set_defaults(func=cmd_generate)

    p_fun = sub.add_parser("functionality", parents=[common], help="print per-relation functionality")
    p_fun.add_argument("ontology", help=".nt file or directory")
    p_fun.add_argument("--mode", choices=MODES, default="harmonic-mean")
    p_fun.add_argument("--top", type=int, default=None, help="show only the top N relations")
    p_fun.set_defaults(func=cmd_functionality)
    return parser


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    logging.basicConfig(
        level=logging.INFO if args.verbose else logging.WARNING,
        format="%(levelname)s %(name)s: %(message)s",
        stream=sys.stderr,
    )
    return args.func(args)


if __name__ == "__main__":
    sys.exit(main())
