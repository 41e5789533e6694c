import io
import subprocess
import sys

import pytest

from conftest import T1_BP, T1_COLORS
from nct.cli import main
from nct.treefile import TreeFile, generate


def run(*argv):
    buf = io.StringIO()
    code = main([str(a) for a in argv], out=buf)
    return code, buf.getvalue()


@pytest.fixture
def t1_file(tmp_path):
    path = tmp_path / "t1.txt"
    TreeFile(9, 3, T1_BP, T1_COLORS).write(path)
    return path


def test_gen_is_deterministic(tmp_path):
    a = run("gen", "--n", 500, "--sigma", 7, "--seed", 3)[1]
    b = run("gen", "--n", 500, "--sigma", 7, "--seed", 3)[1]
    c = run("gen", "--n", 500, "--sigma", 7, "--seed", 4)[1]
    assert a == b != c
    tf = TreeFile.parse(a)
    assert tf.n == 500 and max(tf.colors) <= 7


def test_gen_zipf_and_tiny(tmp_path):
    out = tmp_path / "one.txt"
    assert run("gen", "--n", 1, "--sigma", 1, "-o", out)[0] == 0
    assert out.read_text() == "1 1\n()\n1\n"
    tf = TreeFile.parse(run("gen", "--n", 2000, "--sigma", 50, "--model", "zipf", "--zipf-s", 1.5)[1])
    assert tf.colors.count(1) > tf.colors.count(50)


@pytest.mark.parametrize("structure", ["small", "large"])
def test_build_query_t1(t1_file, tmp_path, structure):
    idx = tmp_path / f"{structure}.idx"
    code, out = run("build", t1_file, "--structure", structure, "--freq-threshold", 2, "-o", idx)
    assert code == 0 and f"structure {structure}" in out
    assert run("query", idx, 6, 1) == (0, "1 3\n")
    assert run("query", idx, 5, 3) == (0, "6 1\n")
    assert run("query", idx, 9, 2) == (0, "7 1\n")


def test_verify_both(t1_file):
    code, out = run("verify", t1_file, "--structure", "both")
    assert code == 0
    assert out.splitlines()[-1] == "PASS"
    assert "verify small: 27 queries, 0 mismatches" in out


def test_verify_saved_index(tmp_path):
    tree = tmp_path / "g.txt"
    run("gen", "--n", 3000, "--sigma", 40, "--seed", 1, "-o", tree)
    idx = tmp_path / "g.idx"
    assert run("build", tree, "-o", idx)[0] == 0
    code, out = run("verify", tree, "--index", idx, "--queries", 500)
    assert code == 0 and "500 queries, 0 mismatches" in out


def test_verify_rejects_foreign_index(tmp_path, t1_file):
    other = tmp_path / "o.txt"
    run("gen", "--n", 9, "--sigma", 3, "--seed", 2, "-o", other)
    idx = tmp_path / "o.idx"
    run("build", other, "-o", idx)
    assert run("verify", t1_file, "--index", idx)[0] == 2


def test_bench_prints_report_and_timings(tmp_path):
    tree = tmp_path / "b.txt"
    run("gen", "--n", 2000, "--sigma", 4, "--seed", 9, "-o", tree)
    code, out = run("bench", tree, "--queries", 200)
    assert code == 0
    report, bench = out.split("--- bench\n")
    assert "bits.total" in report and "ref.nH0" in report
    kv = dict(line.split("=", 1) for line in bench.splitlines())
    assert kv["structure"] == "small" and kv["queries"] == "200"
    assert float(kv["query_median_us"]) > 0


def test_space_report_is_reproducible(tmp_path):
    tree = tmp_path / "r.txt"
    run("gen", "--n", 1500, "--sigma", 20, "--seed", 5, "-o", tree)
    a = run("build", tree, "-o", tmp_path / "a.idx")[1]
    b = run("build", tree, "-o", tmp_path / "b.idx")[1]
    assert a.split("\n", 1)[1] == b.split("\n", 1)[1]
    assert (tmp_path / "a.idx").read_bytes() == (tmp_path / "b.idx").read_bytes()


@pytest.mark.parametrize("text", [
    "3 2\n(()())\n1 2\n",        # too few colors
    "3 2\n(()()\n1 2 1\n",        # wrong length
    "3 2\n())(()\n1 2 1\n",       # unbalanced
    "3 2\n(()())\n1 2 3\n",       # color out of range
    "x 2\n(()())\n1 2 1\n",       # not a number
    "3 2\n(()())\n",              # missing line
])
def test_malformed_input_exits_2(tmp_path, text):
    bad = tmp_path / "bad.txt"
    bad.write_text(text)
    assert run("build", bad)[0] == 2
    assert run("verify", bad)[0] == 2


def test_bad_arguments_exit_2(t1_file, tmp_path):
    idx = tmp_path / "t.idx"
    run("build", t1_file, "-o", idx)
    assert run("query", idx, 10, 1)[0] == 2
    assert run("query", tmp_path / "missing.idx", 1, 1)[0] == 2
    assert run("verify", t1_file, "--queries", "lots")[0] == 2
    junk = tmp_path / "junk.idx"
    junk.write_bytes(b"NCTX\x01")
    assert run("query", junk, 1, 1)[0] == 2


def test_console_entry_point(t1_file):
    proc = subprocess.run([sys.executable, "-m", "nct.cli", "verify", str(t1_file)],
                          capture_output=True, text=True)
    assert proc.returncode == 0 and proc.stdout.endswith("PASS\n")


def test_generate_roundtrip():
    tf = generate(300, 5, 11)
    assert TreeFile.parse(tf.format()) == tf
