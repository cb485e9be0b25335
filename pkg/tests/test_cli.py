import csv
import json
import shutil
from pathlib import Path

from holocert.cli import EXIT_INCONCLUSIVE, EXIT_INPUT, EXIT_OK, main

DATA = Path(__file__).resolve().parents[1] / "src" / "holocert" / "data"


def _run(tmp_path, *argv, name="out.json"):
    out = tmp_path / name
    code = main([*argv, "--json", str(out)])
    return code, json.loads(out.read_text())


def test_eval_terms(tmp_path, capsys):
    code, rep = _run(tmp_path, "eval", str(DATA / "trinomial.rec"), "--to", "5")
    assert code == EXIT_OK
    assert [r["a"] for r in rep["rows"]] == ["1/1", "1/1", "3/1", "7/1", "19/1", "51/1"]
    assert rep["rows"][2]["b"] == "7/3"
    assert "51" in capsys.readouterr().out


def test_scan_finds_small_violations(tmp_path):
    code, rep = _run(tmp_path, "scan", str(DATA / "trinomial.rec"), "--check", "logmono3", "--to", "200")
    assert code == EXIT_INCONCLUSIVE
    assert max(n for n, _ in rep["scan"]["violations"]) == 9


def test_scan_laguerre(tmp_path):
    code, rep = _run(tmp_path, "scan", str(DATA / "motzkin_factorial.rec"), "--check", "laguerre:2", "--to", "300")
    assert code == EXIT_OK
    assert rep["scan"]["violations"] == []


def test_classify_padding(tmp_path):
    code, rep = _run(tmp_path, "classify", "--expansion", "1 - (2)/n^2 + O(n^-4)")
    assert code == EXIT_OK
    code, _ = _run(tmp_path, "classify", "--expansion", "1 - (2)/n^2 + O(n^-4)", "--no-pad", name="b.json")
    assert code == EXIT_INCONCLUSIVE


def test_certify_logmono3_trinomial(tmp_path):
    code, rep = _run(tmp_path, "certify-logmono3", str(DATA / "trinomial.rec"))
    assert code == EXIT_OK
    assert rep["status"] == "holds"
    assert rep["refinement"]["refined_start"] == 8
    assert rep["bounds"]["provenance"] == "certified"
    assert rep["bounds"]["certificate"]["base_index"] == 10


def test_certify_laguerre2_motzkin_factorial(tmp_path):
    code, rep = _run(tmp_path, "certify-laguerre2", str(DATA / "motzkin_factorial.rec"))
    assert code == EXIT_OK
    assert rep["refinement"]["refined_start"] == 0


def test_supplied_bounds_that_fail(tmp_path):
    # the published trinomial pair read over 256; the exact check rejects n = 12
    g = "1 + 1/(2*n^2) - 3/(8*n^3) + 9/(32*n^4) - 355/(256*n^5)"
    f = "1 + 1/(2*n^2) - 3/(8*n^3) + 9/(32*n^4) + 157/(256*n^5)"
    code, rep = _run(tmp_path, "certify-logmono3", str(DATA / "trinomial.rec"), "--bounds", f"{g},{f},12")
    assert code == EXIT_INCONCLUSIVE
    assert rep["bounds"]["provenance"] == "user-supplied"
    assert [12, "lower"] in rep["sandwich_violations"]


def test_closed_form_and_inconclusive(tmp_path):
    code, rep = _run(tmp_path, "certify-logmono3", str(DATA / "factorial.rec"))
    assert rep["bounds"]["provenance"] == "closed-form"
    # u_n = 1 identically: no threshold exists, reported on stderr
    assert main(["certify-logmono3", str(DATA / "constant.rec")]) == EXIT_INCONCLUSIVE


def test_input_errors(tmp_path, capsys):
    assert main(["eval", str(tmp_path / "missing.rec"), "--to", "3"]) == EXIT_INPUT
    bad = tmp_path / "bad.rec"
    bad.write_text("order: 1\ncoeff[1]: n +\ninitial: 1\n")
    assert main(["eval", str(bad), "--to", "3"]) == EXIT_INPUT
    assert "bad.rec:2" in capsys.readouterr().err


def test_json_deterministic_except_timing(tmp_path):
    _, a = _run(tmp_path, "certify-logmono3", str(DATA / "trinomial.rec"), name="a.json")
    _, b = _run(tmp_path, "certify-logmono3", str(DATA / "trinomial.rec"), name="b.json")
    a.pop("timing")
    b.pop("timing")
    assert a == b


def test_plot_data(tmp_path):
    plot = tmp_path / "plot.csv"
    main(["certify-laguerre2", str(DATA / "motzkin_factorial.rec"), "--plot-data", str(plot), "--horizon", "400"])
    rows = list(csv.reader(plot.open()))
    assert rows[0] == ["n", "u_n", "g", "f"]
    for n, u, g, f in rows[1:50]:
        assert float(g) < float(u) < float(f)


def test_batch_isolates_bad_files(tmp_path):
    src = tmp_path / "recs"
    src.mkdir()
    shutil.copy(DATA / "trinomial.rec", src)
    (src / "broken.rec").write_text("order: 2\ninitial: 1\n")
    out = tmp_path / "reports"
    code = main(["batch", str(src), "--check", "logmono3", "--out", str(out)])
    assert code == EXIT_INPUT
    summary = json.loads((out / "summary.json").read_text())
    status = {e["file"]: e["status"] for e in summary["files"]}
    assert status == {"broken.rec": "error", "trinomial.rec": "holds"}
    assert (out / "trinomial.json").exists() and (out / "broken.json").exists()
