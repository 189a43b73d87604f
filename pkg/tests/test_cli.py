import json

from skimol.cli import main
from skimol.molgraph import isomorphic, parse_mol
from skimol.ski import parse_term, term_to_mol


def run_cli(capsys, *argv):
    code = main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


def test_parse_term(capsys):
    code, out, err = run_cli(capsys, "parse", "--term", "((S K) K) I")
    assert code == 0
    g = parse_mol(out)
    assert g.node_count == 8
    assert isomorphic(g, term_to_mol(parse_term("((S K) K) I")))


def test_parse_empty_term(capsys):
    code, out, err = run_cli(capsys, "parse", "--term", "")
    assert code == 1
    assert "error" in err


def test_parse_unspaced_warns(capsys):
    code, out, err = run_cli(capsys, "parse", "--term", "SII")
    assert code == 0
    assert "free variable" in err


def test_parse_caret_output(capsys):
    code, out, err = run_cli(capsys, "parse", "--term", "I", "--caret")
    assert code == 0
    assert out.strip() == "I 1 ^ FROUT 1"


def test_parse_mol_validation_error(capsys, tmp_path):
    bad = tmp_path / "bad.mol"
    bad.write_text("I a\nA a b c\nFRIN b\nFROUT c\nFRIN a\n")
    code, out, err = run_cli(capsys, "parse", "--mol", str(bad))
    assert code == 1
    assert "'a'" in err


def test_parse_mol_roundtrip(capsys, tmp_path):
    mol = tmp_path / "in.mol"
    mol.write_text("FROUT 6 ^ S 10 10 1 ^ A 1 3 2 ^ K 3 ^ A 2 5 4 ^ K 5 ^ A 4 7 6 ^ I 7")
    code, out, err = run_cli(capsys, "parse", "--mol", str(mol))
    assert code == 0
    assert parse_mol(out).node_count == 8


def test_parse_mol_cap(capsys, tmp_path):
    mol = tmp_path / "open.mol"
    mol.write_text("A 1 2 3\n")
    code, out, err = run_cli(capsys, "parse", "--mol", str(mol), "--cap")
    assert code == 0
    assert parse_mol(out).type_counts() == {"A": 1, "FRIN": 2, "FROUT": 1}


def test_reduce_to_normal_form(capsys, tmp_path):
    trace = tmp_path / "trace.json"
    code, out, err = run_cli(
        capsys,
        "reduce", "--term", "((S K) K) I", "--seed", "7", "--trace", str(trace),
    )
    assert code == 0
    assert "outcome: normal-form" in out
    assert "term: I" in out
    records = json.loads(trace.read_text())
    assert records and records[0]["rewrite"]


def test_reduce_budget_exhausted_exit_code(capsys, tmp_path):
    code, out, err = run_cli(
        capsys, "reduce", "--term", "(S I I) (S I I)", "--steps", "100",
    )
    assert code == 2
    assert "outcome: budget-exhausted" in out


def test_reduce_deterministic_artifacts(capsys, tmp_path):
    args = [
        "reduce", "--term", "(S I I) (S I I)", "--steps", "60", "--seed", "9",
    ]
    paths = []
    for name in ("a", "b"):
        trace = tmp_path / f"{name}.json"
        report = tmp_path / f"{name}-report.json"
        out_mol = tmp_path / f"{name}.mol"
        run_cli(
            capsys, *args, "--trace", str(trace), "--report", str(report),
            "--out", str(out_mol),
        )
        paths.append((trace.read_bytes(), report.read_bytes(), out_mol.read_bytes()))
    assert paths[0] == paths[1]


def test_reduce_strict_prefunded(capsys):
    code, out, err = run_cli(
        capsys,
        "reduce", "--term", "((S K) K) I", "--token-mode", "strict",
        "--prefund", "100", "--seed", "3",
    )
    assert code == 0
    assert "term: I" in out


def test_reduce_custom_costs(capsys, tmp_path):
    costs = tmp_path / "costs.json"
    costs.write_text(json.dumps({"A-A": 10}))
    trace = tmp_path / "t.json"
    report = tmp_path / "r.json"
    code, out, err = run_cli(
        capsys,
        "reduce", "--term", "((S K) K) I", "--seed", "7",
        "--costs", str(costs), "--trace", str(trace), "--report", str(report),
    )
    assert code == 0
    data = json.loads(report.read_text())
    ka_steps = [
        r for r in json.loads(trace.read_text()) if r["rewrite"] == "K-A"
    ]
    assert ka_steps and all(r["costOut"] == 10 for r in ka_steps)
    assert data["cumulativeNet"] == sum(
        s["net"] for s in data["perStep"]
    )


def test_reduce_snapshots(capsys, tmp_path):
    trace = tmp_path / "t.json"
    code, out, err = run_cli(
        capsys,
        "reduce", "--term", "(S I I) (S I I)", "--steps", "10",
        "--snapshot-every", "5", "--trace", str(trace),
    )
    data = json.loads(trace.read_text())
    assert set(data) == {"records", "snapshots"}
    assert data["snapshots"]


def test_reduce_mol_file_with_minted_names(capsys, tmp_path):
    mol = tmp_path / "m.mol"
    mol.write_text("I Z3\nFROUT Z3\n")
    code, out, err = run_cli(capsys, "reduce", "--mol", str(mol))
    assert code == 1
    assert "reserved prefix" in err
    code, out, err = run_cli(
        capsys, "reduce", "--mol", str(mol), "--accept-minted"
    )
    assert code == 0
    assert "term: I" in out


def test_reduce_golden_trace(capsys, tmp_path):
    """The trace schema and content are pinned against a committed fixture."""
    from pathlib import Path

    golden = Path(__file__).parent / "data" / "golden_trace.json"
    trace = tmp_path / "trace.json"
    code, out, err = run_cli(
        capsys, "reduce", "--term", "((S K) K) I", "--seed", "7",
        "--trace", str(trace),
    )
    assert code == 0
    assert trace.read_bytes() == golden.read_bytes()


def test_verify_schemas(capsys):
    code, out, err = run_cli(capsys, "verify-schemas")
    assert code == 0
    lines = [l for l in out.splitlines() if l]
    assert "12 schemas checked, 0 failed" in out
    assert any("A-K" in l and "not a bijection" in l for l in lines)


def test_verify_schemas_all(capsys):
    code, out, err = run_cli(capsys, "verify-schemas", "--all")
    assert code == 0
    assert "14 schemas checked, 0 failed" in out
    assert "synth-S-K" in out and "synth-S-A" in out
