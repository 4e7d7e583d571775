"""Verification suite plumbing and the command-line interface."""

import json
import subprocess
import sys

import pgclass as pg
from pgclass.cli import main
from pgclass.presentation import presentation_text
from pgclass.verify import CLAIMS, run_ingested_census, run_paper_suite


def run_cli(*args):
    import contextlib
    import io

    out = io.StringIO()
    err = io.StringIO()
    with contextlib.redirect_stdout(out), contextlib.redirect_stderr(err):
        code = main(list(args))
    return code, out.getvalue(), err.getvalue()


def write_pres(tmp_path, label, p, name=None):
    P = pg.build(label, p)
    f = tmp_path / f"{name or label}_{p}.pg"
    f.write_text(presentation_text(P), encoding="utf-8")
    return f


# -- CLI ---------------------------------------------------------------------------


def test_cli_classify_text(tmp_path):
    f = write_pres(tmp_path, "heisenberg_p3", 3)
    code, out, _ = run_cli("classify", str(f))
    assert code == 0
    assert "gvz              : True" in out
    assert "vz               : True" in out


def test_cli_classify_json(tmp_path):
    f = write_pres(tmp_path, "heisenberg_p3", 3)
    code, out, _ = run_cli("classify", str(f), "--json")
    assert code == 0
    js = json.loads(out)
    assert js["gvz"] is True and js["nested"] is True
    assert js["cd"] == {"1": 9, "3": 2}


def test_cli_classify_parse_error_exit_1(tmp_path):
    f = tmp_path / "bad.pg"
    f.write_text("group g prime 3\ngens a b\ncomm [a,b] = 1\n", encoding="utf-8")
    code, out, err = run_cli("classify", str(f))
    assert code == 1
    assert "error" in err.lower()
    code, out, _ = run_cli("classify", str(f), "--json")
    assert code == 1
    assert "error" in json.loads(out)


def test_cli_classify_missing_file():
    code, _, err = run_cli("classify", "/nonexistent/path.pg")
    assert code == 1


def test_cli_internal_inconsistency_exit_2(tmp_path, monkeypatch):
    import pgclass.cli as cli_mod

    f = write_pres(tmp_path, "heisenberg_p3", 3)

    def boom(P):
        raise pg.InternalInconsistencyError("forced for the exit-code test")

    monkeypatch.setattr(cli_mod, "classification_report", boom)
    code, _, err = run_cli("classify", str(f))
    assert code == 2
    assert "inconsistency" in err.lower()


def test_cli_chartable_json(tmp_path):
    f = write_pres(tmp_path, "C_p", 3)
    code, out, _ = run_cli("chartable", str(f), "--json")
    assert code == 0
    js = json.loads(out)
    assert len(js["rows"]) == 3
    assert js["rows"][0]["values"] == ["1", "1", "1"]


def test_cli_count():
    code, out, _ = run_cli("count", "--p", "5", "--order", "p6", "--json")
    assert code == 0
    js = json.loads(out)
    assert js["gvz"] == 270 and js["nested"] == 156
    code, out, _ = run_cli("count", "--p", "3", "--order", "p5")
    assert code == 0
    assert "34" in out and "23" in out


def test_cli_count_rejects_p3_order6():
    code, out, _ = run_cli("count", "--p", "3", "--order", "p6", "--json")
    assert code == 1
    assert "error" in json.loads(out)


def test_cli_corpus_list():
    code, out, _ = run_cli("corpus", "list", "--json")
    assert code == 0
    rows = json.loads(out)
    labels = {r["label"] for r in rows}
    assert "G_(18,1)" in labels
    assert all("citation" in r for r in rows)


def test_cli_corpus_emit_round_trip(tmp_path):
    out_file = tmp_path / "g18.pg"
    code, _, _ = run_cli("corpus", "emit", "G_(18,1)", "--p", "5", "-o", str(out_file))
    assert code == 0
    code, out, _ = run_cli("classify", str(out_file), "--json")
    assert code == 0
    js = json.loads(out)
    assert js["gvz"] is True and js["nested"] is False


def test_cli_classify_stdin(tmp_path, monkeypatch):
    import io

    text = presentation_text(pg.build("C_p2", 3))
    monkeypatch.setattr(sys, "stdin", io.StringIO(text))
    code, out, _ = run_cli("classify", "-", "--json")
    assert code == 0
    assert json.loads(out)["order"] == 9


def test_cli_entrypoint_subprocess(tmp_path):
    f = write_pres(tmp_path, "heisenberg_p3", 3)
    proc = subprocess.run(
        [sys.executable, "-m", "pgclass.cli", "classify", str(f), "--json"],
        capture_output=True,
        text=True,
        timeout=120,
    )
    assert proc.returncode == 0
    assert json.loads(proc.stdout)["gvz"] is True


# -- census -------------------------------------------------------------------------


def test_census_empty_dir(tmp_path):
    res = run_ingested_census(tmp_path)
    assert res.ok and res.summary["pass"] == 0


def test_census_counts_nested_nonabelian(tmp_path):
    write_pres(tmp_path, "heisenberg_p3", 3, "h1")
    write_pres(tmp_path, "extraspecial_p3_exp_p2", 3, "h2")
    write_pres(tmp_path, "E_p3", 3, "ab")
    write_pres(tmp_path, "C_p3", 3, "cyc")
    res = run_ingested_census(tmp_path, expected_nested_nonabelian=2, expected_total=4)
    assert res.ok, res.render_text()


def test_census_detects_count_mismatch(tmp_path):
    write_pres(tmp_path, "heisenberg_p3", 3, "h1")
    res = run_ingested_census(tmp_path, expected_nested_nonabelian=5)
    assert not res.ok
    bad = [r for r in res.records if r.status == "fail"]
    assert bad and bad[0].check == "census-count"


def test_census_reports_broken_file(tmp_path):
    write_pres(tmp_path, "heisenberg_p3", 3, "ok")
    (tmp_path / "broken.pg").write_text("group g prime 4\ngens a\n", encoding="utf-8")
    res = run_ingested_census(tmp_path, expected_total=1)
    statuses = {r.group: r.status for r in res.records if r.check == "census-file"}
    assert statuses["broken.pg"] == "fail"
    assert statuses["ok_3.pg"] == "pass"
    assert res.summary["fail"] == 1  # the total still matches the parsable one


def test_census_cli(tmp_path):
    write_pres(tmp_path, "heisenberg_p3", 3, "h")
    out_json = tmp_path / "census.json"
    code, out, _ = run_cli(
        "census", str(tmp_path), "--expect-nested-nonabelian", "1",
        "--json", str(out_json),
    )
    assert code == 0
    js = json.loads(out_json.read_text())
    assert js["suite"] == "census"
    assert js["summary"]["fail"] == 0


def test_census_cli_failure_exit_code_3(tmp_path):
    write_pres(tmp_path, "heisenberg_p3", 3, "h")
    code, out, _ = run_cli("census", str(tmp_path), "--expect-nested-nonabelian", "9")
    assert code == 3
    assert "FAIL" in out


# -- paper suite ----------------------------------------------------------------------


def test_claims_registry_is_total():
    res = run_paper_suite(primes=(3,))
    for r in res.records:
        assert r.citation == CLAIMS[r.check]
    assert res.summary["fail"] == 0, res.render_text()


def test_paper_suite_small_primes_pass_and_skip():
    res = run_paper_suite(primes=(3,))
    skips = [r for r in res.records if r.status == "skip"]
    assert any("prime range" in r.detail for r in skips)
    assert res.ok


def test_paper_suite_json_schema():
    res = run_paper_suite(primes=(3,))
    js = res.to_json()
    assert set(js) == {"suite", "records", "summary"}
    for r in js["records"]:
        assert set(r) == {"check", "group", "p", "status", "citation"}


def test_suite_determinism_across_thread_counts():
    from pgclass.verify import suite_to_json_text

    a = suite_to_json_text(run_paper_suite(primes=(3,), threads=1))
    b = suite_to_json_text(run_paper_suite(primes=(3,), threads=4))
    assert a == b
