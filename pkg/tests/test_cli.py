import io
import json
import subprocess
import sys
from math import sqrt

import pytest

from pattern_turan.cli import run
from pattern_turan.io import write_hypergraph, write_pattern
from pattern_turan.pattern import Hypergraph, Pattern

FAST = ["--random-starts", "10", "--starts", "5"]


@pytest.fixture
def files(tmp_path, example):
    pat = tmp_path / "example.pat"
    write_pattern(example, pat)
    k43 = tmp_path / "k43.hg"
    write_hypergraph(Hypergraph.complete(4, 3), k43)
    edge = tmp_path / "edge.hg"
    write_hypergraph(Hypergraph.complete(3, 3), edge)
    tri = tmp_path / "tri.hg"
    write_hypergraph(Hypergraph.complete(3, 2), tri)
    k22 = tmp_path / "k22.hg"
    write_hypergraph(Hypergraph.complete(2, 2), k22)
    nonmin = tmp_path / "nonmin.pat"
    write_pattern(Pattern(2, 3, [(1, 1, 0), (1, 0, 1)], frozenset()), nonmin)
    return {"pat": str(pat), "k43": str(k43), "edge": str(edge), "tri": str(tri),
            "k22": str(k22), "nonmin": str(nonmin), "dir": tmp_path}


def call(argv, manifest):
    out, err = io.StringIO(), io.StringIO()
    code = run(argv + ["--manifest", str(manifest)] if argv and "--manifest" not in argv else argv,
               stdout=out, stderr=err)
    return code, out.getvalue(), err.getvalue()


def test_lagrangian(files):
    man = files["dir"] / "m.json"
    code, out, _ = call(["lagrangian", "--pattern", files["pat"]], man)
    res = json.loads(out)
    assert code == 0
    assert res["value"] == pytest.approx(2 * sqrt(3) - 3, abs=1e-6)
    manifest = json.loads(man.read_text())
    assert manifest["subcommand"] == "lagrangian"
    assert set(manifest) >= {"config", "input_digests", "tool_version", "wall_time", "result_digest"}
    assert files["pat"] in manifest["input_digests"]


def test_lagrangian_deterministic(files):
    man = files["dir"] / "m.json"
    runs = []
    for _ in range(2):
        code, out, _ = call(["lagrangian", "--pattern", files["pat"], "--seed", "3"] + FAST, man)
        m = json.loads(man.read_text())
        m.pop("wall_time")
        runs.append((out, m))
    assert runs[0] == runs[1]


def test_pn_witness_and_graph(files):
    man = files["dir"] / "m.json"
    gout = files["dir"] / "w.hg"
    code, out, _ = call(["pn", "--pattern", files["pat"], "--n", "7", "--witness",
                         "--graph-out", str(gout)], man)
    res = json.loads(out)
    assert code == 0 and res["p_n"] == 20
    assert [r["p_n"] for r in res["ratios"]] == [1, 3, 6, 12, 20]
    assert res["ratios"][1]["density"]["exact"] == "3/4"
    assert gout.read_text().startswith("7 3\n")


def test_pn_csv(files):
    code, out, _ = call(["pn", "--pattern", files["pat"], "--n", "6", "--csv"], files["dir"] / "m.json")
    lines = out.strip().splitlines()
    assert code == 0 and lines[0] == "n,p_n,density,density_exact"
    assert lines[-1].endswith(",3/5") and len(lines) == 5


def test_minimal(files):
    man = files["dir"] / "m.json"
    code, out, _ = call(["minimal", "--pattern", files["nonmin"]] + FAST, man)
    assert code == 1 and json.loads(out)["minimal"] is False
    code, out, _ = call(["minimal", "--pattern", files["pat"]] + FAST, man)
    assert code == 0 and json.loads(out)["minimal"] is True


def test_forbid(files):
    outdir = files["dir"] / "fam"
    code, out, _ = call(["forbid", "--pattern", files["pat"], "--max-vertices", "4", "--out", str(outdir)],
                        files["dir"] / "fm.json")
    assert code == 0 and json.loads(out)["count"] == 1
    assert (outdir / "F0000.hg").read_text().startswith("4 3\n")
    assert json.loads((outdir / "index.json").read_text())["members"][0]["edges"] == 4


def test_forbid_default_manifest_location(files):
    outdir = files["dir"] / "fam2"
    code = run(["forbid", "--pattern", files["pat"], "--max-vertices", "4", "--out", str(outdir)],
               stdout=io.StringIO(), stderr=io.StringIO())
    assert code == 0 and (outdir / "manifest.json").exists()


def test_embed(files):
    man = files["dir"] / "m.json"
    code, out, _ = call(["embed", "--pattern", files["pat"], "--graph", files["k43"]], man)
    assert code == 1 and json.loads(out)["embeds"] is False
    code, out, _ = call(["embed", "--pattern", files["pat"], "--graph", files["edge"]], man)
    res = json.loads(out)
    assert code == 0 and res["embeds"] and set(res["witness"]) == {"0", "1", "2"}


def test_exact_ex_pattern_and_family(files):
    man = files["dir"] / "m.json"
    code, out, _ = call(["exact-ex", "--pattern", files["pat"], "--n", "5"], man)
    res = json.loads(out)
    assert code == 0 and res["ex"] == res["p_n"] == 6
    famdir = files["dir"] / "fam"
    run(["forbid", "--pattern", files["pat"], "--max-vertices", "4", "--out", str(famdir)],
        stdout=io.StringIO(), stderr=io.StringIO())
    code, out, _ = call(["exact-ex", "--family", str(famdir), "--n", "4"], man)
    assert code == 0 and json.loads(out)["ex"] == 3


def test_exact_ex_usage_errors(files):
    man = files["dir"] / "m.json"
    code, _, err = call(["exact-ex", "--n", "4"], man)
    assert code == 2 and "exactly one" in err
    empty = files["dir"] / "empty"
    empty.mkdir()
    code, _, _ = call(["exact-ex", "--family", str(empty), "--n", "4"], man)
    assert code == 2
    code, out, _ = call(["exact-ex", "--family", str(empty), "--n", "4", "--k", "3"], man)
    assert code == 0 and json.loads(out)["ex"] == 4


def test_rigid(files):
    man = files["dir"] / "m.json"
    code, out, _ = call(["rigid", "--pattern", files["pat"], "--sizes", "1,3"], man)
    assert code == 0 and json.loads(out)["rigid"] is True
    code, out, _ = call(["rigid", "--pattern", files["pat"], "--sizes", "1,2"], man)
    assert code == 1 and json.loads(out)["rigid"] is False


def test_rigid_cap(files):
    code, _, err = call(["rigid", "--pattern", files["pat"], "--sizes", "3,7"], files["dir"] / "m.json")
    assert code == 3 and "CapExceededError" in err


def test_irrational(files):
    code, out, _ = call(["irrational", "--k", "4"] + FAST, files["dir"] / "m.json")
    res = json.loads(out)
    assert code == 0 and res["passed"] and res["ell"] == 3


def test_homdensity(files):
    code, out, _ = call(["homdensity", "--f", files["k22"], "--g", files["tri"]], files["dir"] / "m.json")
    res = json.loads(out)
    assert code == 0 and res["t_exact"] == "2/3" and res["hom_count"] == 6


def test_hlagrangian_and_ctgap(files):
    man = files["dir"] / "m.json"
    code, out, _ = call(["hlagrangian", "--graph", files["tri"]] + FAST, man)
    assert code == 0 and json.loads(out)["value"] == pytest.approx(2 / 3, abs=1e-6)
    code, out, _ = call(["ctgap", "--graph", files["tri"]] + FAST, man)
    res = json.loads(out)
    assert code == 0 and res["density"]["exact"] == "1" and res["gap"] == pytest.approx(1 / 3, abs=1e-6)


def test_csv_output(files):
    code, out, _ = call(["homdensity", "--f", files["k22"], "--g", files["tri"], "--out", "csv"],
                        files["dir"] / "m.json")
    assert code == 0 and out.splitlines()[0] == "hom_count,map_count,t_exact,t_value"


def test_validation_errors(files):
    bad = files["dir"] / "bad.pat"
    bad.write_text("3 2\nR: 1\n1 1\n")
    man = files["dir"] / "m.json"
    code, _, err = call(["lagrangian", "--pattern", str(bad)], man)
    assert code == 3 and "profile weight != k" in err
    code, _, _ = call(["lagrangian", "--pattern", str(files["dir"] / "missing.pat")], man)
    assert code == 3
    code, _, _ = call(["embed", "--pattern", files["pat"], "--graph", files["tri"]], man)
    assert code == 3


def test_usage_errors(files):
    assert call(["lagrangian"], files["dir"] / "m.json")[0] == 2
    assert call(["nonsense"], files["dir"] / "m.json")[0] == 2
    assert run([], stdout=io.StringIO(), stderr=io.StringIO()) == 2


def test_console_script(files, tmp_path):
    proc = subprocess.run([sys.executable, "-m", "pattern_turan.cli", "pn", "--pattern", files["pat"],
                           "--n", "5", "--manifest", str(tmp_path / "m.json")],
                          capture_output=True, text=True)
    assert proc.returncode == 0 and json.loads(proc.stdout)["p_n"] == 6
    proc = subprocess.run([sys.executable, "-m", "pattern_turan.cli", "--help"], capture_output=True, text=True)
    assert proc.returncode == 0 and "PATTERN_TURAN_MAX_EDGE_SLOTS" in proc.stdout
