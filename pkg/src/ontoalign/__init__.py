"""Holistic alignment of two instance-rich ontologies.

Probabilistic, fixpoint-based: instance equivalences, directed
relation inclusions, and directed class inclusions reinforce each other
until the maximal assignment stops changing.

>>> from ontoalign import load_ontology, run_fixpoint
>>> result = run_fixpoint(load_ontology("a.nt"), load_ontology("b.nt"))  # doctest: +SKIP
"""

from .engine import (
    AlignmentConfig,
    AlignmentResult,
    AlignmentState,
    ClassAlignmentTable,
    EquivalenceTable,
    IterationStats,
    MaximalAssignment,
    SubrelationTable,
    bootstrap,
    class_inclusion,
    compute_class_alignment,
    compute_maximal_assignment,
    instance_equivalence,
    instance_equivalence_with_negative,
    result_rows,
    run_fixpoint,
    step,
    subrelation_probability,
)
from .evaluation import Metrics, evaluate_instances, evaluate_threshold_sweep
from .functionality import (
    MODES,
    FunctionalityTable,
    build_functionality_table,
    global_functionality,
    local_functionality,
)
from .literals import get_measure, literal_equality
from .ntriples import (
    AlignmentRow,
    ParseError,
    load_gold,
    load_ontology,
    parse_ntriples,
    read_alignment,
    write_alignment,
)
from .store import Ontology, Vocabulary, ontology_from_triples

__version__ = "0.1.0"

__all__ = [
    "AlignmentConfig",
    "AlignmentResult",
    "AlignmentRow",
    "AlignmentState",
    "ClassAlignmentTable",
    "EquivalenceTable",
    "FunctionalityTable",
    "IterationStats",
    "MODES",
    "MaximalAssignment",
    "Metrics",
    "Ontology",
    "ParseError",
    "SubrelationTable",
    "Vocabulary",
    "bootstrap",
    "build_functionality_table",
    "class_inclusion",
    "compute_class_alignment",
    "compute_maximal_assignment",
    "evaluate_instances",
    "evaluate_threshold_sweep",
    "get_measure",
    "global_functionality",
    "instance_equivalence",
    "instance_equivalence_with_negative",
    "literal_equality",
    "load_gold",
    "load_ontology",
    "local_functionality",
    "ontology_from_triples",
    "parse_ntriples",
    "read_alignment",
    "result_rows",
    "run_fixpoint",
    "step",
    "subrelation_probability",
    "write_alignment",
]
