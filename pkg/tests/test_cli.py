"""End-to-end command-line behaviour: generate, align, eval, functionality.

Everything runs in-process through main() so exit codes and output files are
asserted exactly as a shell user would see them.
"""

import hashlib

import pytest

from ontoalign.cli import main
from ontoalign.ntriples import read_alignment


@pytest.fixture(scope="module")
def world(tmp_path_factory):
    """A small generated pair plus a finished alignment run over it."""
    root = tmp_path_factory.mktemp("world")
    data = root / "data"
    out = root / "out"
    assert main(["generate", "--out-dir", str(data), "--instances", "40",
                 "--seed", "5"]) == 0
    assert main(["align", str(data / "left.nt"), str(data / "right.nt"),
                 "--out", str(out)]) == 0
    return data, out


def test_generate_is_seed_deterministic(tmp_path):
    for sub, seed in (("a", "1"), ("b", "1"), ("c", "2")):
        assert main(["generate", "--out-dir", str(tmp_path / sub),
                     "--instances", "25", "--seed", seed]) == 0
    same = [(tmp_path / s / "left.nt").read_bytes() for s in ("a", "b")]
    assert same[0] == same[1]
    assert (tmp_path / "a" / "right.nt").read_bytes() == (tmp_path / "b" / "right.nt").read_bytes()
    assert (tmp_path / "c" / "left.nt").read_bytes() != same[0]


def test_align_writes_outputs_and_manifest(world):
    data, out = world
    for name in ("instances.tsv", "relations.tsv", "classes.tsv", "manifest.txt"):
        assert (out / name).exists()
    manifest = dict(
        line.split("=", 1)
        for line in (out / "manifest.txt").read_text().splitlines()
    )
    assert manifest["converged"] == "true"
    assert manifest["config.theta"] == "0.1"
    assert int(manifest["iterations"]) >= 1
    # the recorded digest really is the digest of the input file
    expect = hashlib.sha256((data / "left.nt").read_bytes()).hexdigest()
    assert manifest["input.left.sha256"] == expect
    assert int(manifest["output.instances.rows"]) == len(
        read_alignment(out / "instances.tsv")
    )


def test_eval_round_trip_is_perfect(world, capsys):
    data, out = world
    assert main(["eval", str(out / "instances.tsv"),
                 str(data / "gold_instances.tsv")]) == 0
    lines = dict(
        line.split("\t") for line in capsys.readouterr().out.strip().splitlines()
    )
    assert lines["precision"] == "1.0000"
    assert lines["recall"] == "1.0000"
    assert lines["f1"] == "1.0000"


def test_eval_sweep_prints_twenty_thresholds(world, capsys):
    data, out = world
    assert main(["eval", str(out / "instances.tsv"),
                 str(data / "gold_instances.tsv"), "--sweep"]) == 0
    lines = capsys.readouterr().out.strip().splitlines()
    assert lines[0].startswith("threshold\tprecision")
    assert len(lines) == 21
    assert lines[1].startswith("0.05\t")
    assert lines[-1].startswith("1.00\t")


def test_eval_min_facts_requires_facts_from(world, capsys):
    data, out = world
    assert main(["eval", str(out / "instances.tsv"),
                 str(data / "gold_instances.tsv"), "--min-facts", "2"]) == 2
    assert "--facts-from" in capsys.readouterr().err


def test_eval_relation_kind_scores_relations(world, capsys):
    data, out = world
    assert main(["eval", str(out / "relations.tsv"),
                 str(data / "gold_relations.tsv"), "--kind", "relation"]) == 0
    lines = dict(
        line.split("\t") for line in capsys.readouterr().out.strip().splitlines()
    )
    assert lines["recall"] == "1.0000"


def test_all_probabilities_writes_more_rows(world, tmp_path):
    data, out = world
    full = tmp_path / "full"
    assert main(["align", str(data / "left.nt"), str(data / "right.nt"),
                 "--out", str(full), "--all-probabilities"]) == 0
    assert len(read_alignment(full / "instances.tsv")) > len(
        read_alignment(out / "instances.tsv")
    )


def test_zero_iterations_yields_empty_unconverged_outputs(world, tmp_path):
    data, _ = world
    out = tmp_path / "none"
    code = main(["align", str(data / "left.nt"), str(data / "right.nt"),
                 "--out", str(out), "--max-iterations", "0"])
    assert code == 0
    assert read_alignment(out / "instances.tsv") == []
    assert "converged=false" in (out / "manifest.txt").read_text().splitlines()


def test_strict_flag_turns_non_convergence_into_exit_4(world, tmp_path):
    data, _ = world
    code = main(["align", str(data / "left.nt"), str(data / "right.nt"),
                 "--out", str(tmp_path / "strict"), "--max-iterations", "0",
                 "--strict"])
    assert code == 4


def test_missing_input_exits_3(tmp_path, capsys):
    code = main(["align", str(tmp_path / "absent.nt"), str(tmp_path / "also.nt"),
                 "--out", str(tmp_path / "out")])
    assert code == 3
    assert "error:" in capsys.readouterr().err


def test_usage_errors_exit_2():
    with pytest.raises(SystemExit) as exc:
        main(["align"])  # missing positionals and --out
    assert exc.value.code == 2
    with pytest.raises(SystemExit) as exc:
        main(["no-such-command"])
    assert exc.value.code == 2


def test_help_exits_0():
    with pytest.raises(SystemExit) as exc:
        main(["--help"])
    assert exc.value.code == 0


def test_functionality_lists_relations(world, capsys):
    data, _ = world
    assert main(["functionality", str(data / "left.nt")]) == 0
    lines = capsys.readouterr().out.strip().splitlines()
    assert lines[0] == "relation\tfunctionality\tinverse_functionality\tstatements"
    names = {line.split("\t")[0] for line in lines[1:]}
    assert "http://one.example/hasCode" in names
    # hasCode values are unique, so its functionality is exactly 1 both ways
    code_row = next(l for l in lines[1:] if l.endswith("\t80") or "hasCode" in l)
    _, fun, ifun, _ = code_row.split("\t")
    assert fun == "1.000000" and ifun == "1.000000"


def test_functionality_top_limits_rows(world, capsys):
    data, _ = world
    assert main(["functionality", str(data / "left.nt"), "--top", "2"]) == 0
    lines = capsys.readouterr().out.strip().splitlines()
    assert len(lines) == 3
