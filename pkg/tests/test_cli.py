import json

import jsonschema
import pytest

from minor_designs.cli import main
from minor_designs.formats import report_schema


@pytest.fixture
def workdir(tmp_path, monkeypatch):
    monkeypatch.chdir(tmp_path)
    return tmp_path


def run(argv, capsys):
    code = main(argv)
    out, err = capsys.readouterr()
    return code, out, err


def load(path):
    body = json.loads(path.read_text())
    jsonschema.validate(body, report_schema())
    return body


def test_construct_blocks_verify_pipeline(workdir, capsys):
    assert run(["construct", "--family", "paley_conference", "--param", "q=7", "--out", "s.mat"], capsys)[0] == 0
    code, out, _ = run(["spectrum", "--in", "s.mat", "--k", "4", "--json", "spec.json"], capsys)
    assert code == 0
    assert load(workdir / "spec.json")["parameters"]["counts"] == {"1": 42, "9": 28}
    assert run(["blocks", "--in", "s.mat", "--k", "4", "--a", "9", "--out", "b.blk"], capsys)[0] == 0
    code, out, _ = run(["verify-design", "--blocks", "b.blk", "--t", "3", "--json", "r.json"], capsys)
    assert code == 0 and "3-(8,4,2)" in out
    body = load(workdir / "r.json")
    assert body["lambda"] == "2"
    assert list(body["manifest"]["inputs"].values())[0]
    code, out, _ = run(["gs-check", "--blocks", "b.blk"], capsys)
    assert code == 0 and "0 or 2" in out


def test_predict_reconcile(workdir, capsys):
    run(["construct", "--family", "paley_conference", "--param", "q=7", "--out", "s.mat"], capsys)
    code, out, _ = run(["predict", "--in", "s.mat", "--k", "4", "--a", "9", "--t", "3", "--reconcile", "--json", "p.json"], capsys)
    assert code == 0
    body = load(workdir / "p.json")
    assert body["reconciled"] is True and body["lambda"] == "2"


def test_predict_three_minors_on_signed_cube(workdir, capsys):
    run(["construct", "--family", "signed_hypercube", "--param", "d=3", "--out", "s3.mat"], capsys)
    code, out, _ = run(["predict", "--in", "s3.mat", "--k", "4", "--a", "1", "--scheme", "hamming:3",
                        "--c", "4", "--eta", "blocks", "--reconcile", "--json", "p.json"], capsys)
    assert code == 0
    assert [x["value"] for x in load(workdir / "p.json")["lambda"]] == ["7", "5", "9"]


def test_predict_closed_form(workdir, capsys):
    code, out, _ = run(["predict", "--source", "thm:hmpbd", "--param", "v=8", "--json", "p.json"], capsys)
    assert code == 0
    assert load(workdir / "p.json")["predictions"][-1]["expected"]["lambda"] == 56


def test_empty_block_file_is_a_degenerate_design(workdir, capsys):
    (workdir / "empty.blk").write_text("v=8 k=4\n")
    code, out, _ = run(["verify-design", "--blocks", "empty.blk", "--t", "3", "--json", "r.json"], capsys)
    assert code == 0
    body = load(workdir / "r.json")
    assert body["degenerate"] == "empty" and body["lambda"] == "0"


def test_verify_pbibd_and_pbd(workdir, capsys):
    run(["construct", "--family", "hadamard_bordered", "--param", "v=4", "--out", "a.mat"], capsys)
    run(["blocks", "--in", "a.mat", "--k", "3", "--a", "-1", "--out", "b3.blk"], capsys)
    run(["blocks", "--in", "a.mat", "--k", "4", "--a", "-2", "--out", "b4.blk"], capsys)
    code, out, _ = run(["verify-pbibd", "--blocks", "b3.blk", "--scheme", "hadamard_3class:4"], capsys)
    assert code == 0 and "PBIBD(8,3;4,6)" in out
    code, out, _ = run(["verify-pbd", "--blocks", "b3.blk", "--blocks", "b4.blk", "--K", "3,4", "--json", "u.json"], capsys)
    assert code == 0 and "regular PBD(8,{3,4},12)" in out
    load(workdir / "u.json")


def test_hypotheses_violation_exits_3(workdir, capsys):
    run(["construct", "--family", "signed_hypercube", "--param", "d=3", "--out", "s3.mat"], capsys)
    code, out, err = run(["check-hypotheses", "--in", "s3.mat", "--k", "4", "--t", "2", "--json", "h.json"], capsys)
    assert code == 3
    assert json.loads(err)["exit_code"] == 3
    assert load(workdir / "h.json")["kind"] == "hypotheses"


def test_gs_violation_exits_2(workdir, capsys):
    lines = ["v=6 k=4"] + [" ".join(map(str, b)) for b in [(1, 2, 3, 4), (1, 2, 3, 5), (1, 2, 4, 5)]]
    (workdir / "b.blk").write_text("\n".join(lines) + "\n")
    code, _, err = run(["gs-check", "--blocks", "b.blk"], capsys)
    assert code == 2
    assert json.loads(err)["error"] == "VerificationMismatch"


def test_input_errors_exit_4(workdir, capsys):
    code, _, err = run(["spectrum", "--in", "missing.mat", "--k", "3"], capsys)
    assert code == 4
    body = json.loads(err)
    assert body["exit_code"] == 4 and body["manifest"]["outcome"] == "error"
    (workdir / "bad.mat").write_text("minor-designs matrix v=2 symmetry=none\n1 2\n")
    assert run(["spectrum", "--in", "bad.mat", "--k", "1"], capsys)[0] == 4
    assert run(["construct", "--family", "paley_conference", "--param", "q=15", "--out", "x.mat"], capsys)[0] == 4
    with pytest.raises(SystemExit) as exc:
        main(["spectrum"])
    assert exc.value.code == 4


def test_identities_command(workdir, capsys):
    run(["construct", "--family", "paley_conference", "--param", "q=5", "--out", "s.mat"], capsys)
    code, out, _ = run(["identities", "--in", "s.mat", "--json", "i.json"], capsys)
    assert code == 0 and "jacobi" in out
    load(workdir / "i.json")


def test_reproduce_single_table(workdir, capsys):
    code, out, _ = run(["reproduce", "--table", "ex:skew3", "--q", "7", "--json", "r.json"], capsys)
    assert code == 0
    assert "3-(8,4,2)" in out
    body = load(workdir / "r.json")
    assert body["parameters"]["counts"]["fail"] == 0
    code, out, _ = run(["reproduce", "--table", "sec:4.1-e7"], capsys)
    assert code == 0 and "4 passed" in out


def test_parallel_runs_give_identical_reports(workdir, capsys):
    run(["construct", "--family", "paley_conference", "--param", "q=11", "--out", "s.mat"], capsys)
    run(["blocks", "--in", "s.mat", "--k", "4", "--a", "9", "--out", "b.blk"], capsys)
    bodies = []
    for w in ("1", "4"):
        run(["--workers", w, "verify-design", "--blocks", "b.blk", "--t", "3", "--json", f"r{w}.json"], capsys)
        body = load(workdir / f"r{w}.json")
        body["manifest"].pop("timing")
        body["manifest"]["arguments"].pop("workers")
        bodies.append(body)
    assert bodies[0] == bodies[1]
