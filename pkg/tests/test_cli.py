import subprocess
import sys

import pytest

from boolwidth.cli import main
from boolwidth.generators import gen_hsu_grid
from boolwidth.oracles import brute_subset_opt
from boolwidth.subset_dp import catalog


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def kv(text):
    return dict(line.split("=", 1) for line in text.splitlines() if "=" in line and not line.startswith("#"))


@pytest.fixture
def hsu_grid_files(tmp_cwd, capsys):
    assert run(capsys, "gen", "hsu-grid", "--p", "4", "--q", "4", "-o", "g.txt")[0] == 0
    code, out, _ = run(capsys, "decompose", "--graph", "g.txt", "--method", "hsu-vertical", "-o", "t.txt")
    assert code == 0 and kv(out)["method"] == "hsu-vertical"
    return tmp_cwd


def test_golden_dominating_set(hsu_grid_files, capsys):
    code, out, _ = run(capsys, "solve", "subset", "--problem", "dominating-set", "--graph", "g.txt", "--tree", "t.txt")
    assert code == 0
    prob = catalog("dominating-set")
    expect = brute_subset_opt(gen_hsu_grid(4, 4), prob.sigma, prob.rho, "min")
    assert kv(out)["value"] == str(expect)
    assert out.splitlines()[1:5] == ["sigma=N", "rho=co{0}", "objective=min", "d=1"]


def test_gen_writes_family_comment(tmp_cwd, capsys):
    run(capsys, "gen", "hsu", "--k", "3", "-o", "h.txt")
    text = (tmp_cwd / "h.txt").read_text()
    assert text.startswith("# family hsu k=3\n# cut 1,2,3,4\np 8 ")
    code, out, _ = run(capsys, "gen", "path", "--n", "3")
    assert code == 0 and "p 3 2" in out


def test_cut_uses_file_cut(tmp_cwd, capsys):
    run(capsys, "gen", "hsu", "--k", "3", "-o", "h.txt")
    code, out, _ = run(capsys, "cut", "--graph", "h.txt", "--nss", "--classes", "1")
    assert code == 0
    assert kv(out) == {
        "vertices": "1,2,3,4",
        "closure_count": "4",
        "beta": "2.000000",
        "rank": "3",
        "nss": "8",
        "classes_d1": "4",
    }
    code, out, _ = run(capsys, "cut", "--graph", "h.txt", "--vertices", "1")
    assert kv(out)["closure_count"] == "1"  # the staircase's empty-neighbourhood vertex
    code, out, _ = run(capsys, "cut", "--graph", "h.txt", "--vertices", "4")
    assert kv(out)["closure_count"] == "2"


def test_width_and_decompose_agree(hsu_grid_files, capsys):
    code, out, _ = run(capsys, "width", "--function", "boolean", "--graph", "g.txt", "--tree", "t.txt")
    assert code == 0 and kv(out)["closure_count"] == "11"
    code, out, _ = run(capsys, "decompose", "--graph", "g.txt", "--method", "hsu-horizontal", "--function", "rank", "-o", "h.txt")
    assert kv(out)["width"] == "7"


def test_decompose_to_stdout_puts_info_on_stderr(tmp_cwd, capsys):
    run(capsys, "gen", "cycle", "--n", "6", "-o", "c.txt")
    code, out, err = run(capsys, "decompose", "--graph", "c.txt", "--method", "exact", "--function", "rank")
    assert code == 0
    assert out.startswith("leaf") or out.startswith("#") or out.startswith("node")
    assert kv(err)["width"] == "2"


def test_greedy_needs_seed_and_is_flagged(tmp_cwd, capsys):
    run(capsys, "gen", "random", "--n", "9", "--p-edge", "0.4", "--seed", "3", "-o", "r.txt")
    code, _, err = run(capsys, "decompose", "--graph", "r.txt", "--method", "greedy")
    assert code == 2 and err.startswith("error: bad input:")
    code, out, _ = run(capsys, "decompose", "--graph", "r.txt", "--method", "greedy", "--seed", "1", "-o", "t.txt")
    assert code == 0 and kv(out)["heuristic"] == "true"


def test_random_gen_requires_seed(tmp_cwd, capsys):
    code, out, err = run(capsys, "gen", "random", "--n", "5", "--p-edge", "0.5")
    assert code == 2 and out == "" and err == "error: bad input: random graphs need --seed\n"


def test_solve_partition(hsu_grid_files, capsys):
    base = ("solve", "partition", "--graph", "g.txt", "--tree", "t.txt")
    assert kv(run(capsys, *base, "--problem", "q-coloring", "--q", "3")[1])["feasible"] == "false"
    assert kv(run(capsys, *base, "--problem", "q-coloring", "--q", "4")[1])["feasible"] == "true"
    (hsu_grid_files / "m.txt").write_text("q 2\n{0} N\nN N\n")
    code, out, _ = run(capsys, *base, "--matrix", "m.txt", "--extremal-class", "1")
    assert code == 0 and kv(out)["value"].isdigit()


def test_solve_subset_custom_sets(hsu_grid_files, capsys):
    args = ("solve", "subset", "--graph", "g.txt", "--tree", "t.txt")
    code, out, _ = run(capsys, *args, "--sigma", "{0}", "--rho", "{1}")
    assert code == 0 and kv(out)["d"] == "2"
    code, _, err = run(capsys, *args, "--sigma", "{0}")
    assert code == 2
    code, _, err = run(capsys, *args, "--sigma", "{x}", "--rho", "N")
    assert code == 2 and err.count("\n") == 1


def test_verify_graph_and_generated(tmp_cwd, capsys):
    run(capsys, "gen", "hsu", "--k", "3", "-o", "h.txt")
    code, out, _ = run(capsys, "verify", "--graph", "h.txt", "--seed", "1")
    assert code == 0 and kv(out)["disagreements"] == "0"
    assert kv(out)["cut.rank"] == "agree"
    code, out, _ = run(capsys, "verify", "--n", "6", "--seed", "4", "--count", "2")
    assert code == 0 and kv(out)["disagreements"] == "0" and "g2.width.rank" in kv(out)
    code, _, err = run(capsys, "verify", "--graph", "h.txt")
    assert code == 2
    code, _, _ = run(capsys, "verify", "--n", "6")
    assert code == 2


def test_bounds(tmp_cwd, capsys):
    run(capsys, "gen", "complete", "--n", "5", "-o", "k.txt")
    code, out, _ = run(capsys, "bounds", "--graph", "k.txt", "--exact", "--samples", "4", "--seed", "2")
    assert code == 0
    d = kv(out)
    assert (d["rw"], d["closure_width"], d["chain"], d["cuts_checked"], d["cut_violations"]) == ("1", "2", "pass", "4", "0")


def test_refusal_exit_code(tmp_cwd, capsys):
    run(capsys, "gen", "random", "--n", "12", "--p-edge", "0.5", "--seed", "1", "-o", "r.txt")
    code, out, err = run(capsys, "decompose", "--graph", "r.txt", "--method", "exact")
    assert code == 3 and out == "" and err.startswith("error: refused:")


def test_bad_input_exit_codes(tmp_cwd, capsys):
    (tmp_cwd / "bad.txt").write_text("p 3 1\ne 1 9\n")
    code, _, err = run(capsys, "cut", "--graph", "bad.txt", "--vertices", "1")
    assert code == 2 and err.startswith("error: bad input:")
    code, _, err = run(capsys, "cut", "--graph", "missing.txt", "--vertices", "1")
    assert code == 2
    with pytest.raises(SystemExit) as exc:
        main(["width", "--function", "treewidth"])
    assert exc.value.code == 2
    assert capsys.readouterr().err.startswith("error: usage:")


def test_tree_mismatch_is_bad_input(tmp_cwd, capsys):
    run(capsys, "gen", "path", "--n", "4", "-o", "p4.txt")
    run(capsys, "gen", "path", "--n", "5", "-o", "p5.txt")
    run(capsys, "decompose", "--graph", "p4.txt", "--method", "random", "--seed", "0", "-o", "t4.txt")
    code, _, err = run(capsys, "width", "--function", "rank", "--graph", "p5.txt", "--tree", "t4.txt")
    assert code == 2 and err.startswith("error: bad input:")


def test_module_entry_point(tmp_path):
    proc = subprocess.run(
        [sys.executable, "-m", "boolwidth", "gen", "cycle", "--n", "4"],
        capture_output=True, text=True, cwd=tmp_path,
    )
    assert proc.returncode == 0 and "p 4 4" in proc.stdout
