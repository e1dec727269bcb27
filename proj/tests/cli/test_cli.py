"""End-to-end checks of the cpgscan command line.

Run by ctest as `python3 test_cli.py --cli PATH --source-dir DIR`.
"""

import argparse
import json
import re
import subprocess
import sys
import tempfile
import unittest
from pathlib import Path

import jsonschema

CLI = None
SOURCE_DIR = None

SQUARE_PROGRAM = """#include <stdio.h>
int main() {
  int a = 2;
  int b = a * a;
  if (b > a)
    b = b - a;
  printf("a + b = %d", a + b);
  return 0;
}
"""

INJECTION = """void handler() {
  char *x = input();
  char *y = x;
  exec(y);
}
"""

ML_DIRECT = """void direct() {
  char *x = input();
  exec(x);
}
"""

ML_SANITIZED = """void cleaned() {
  char *x = input();
  char *y = sanitize(x);
  exec(y);
}
"""

INJECTION_QUERY = """from Call a, Call b, TaintFlow flow
where
  a.getFunction().equals("input") and
  b.getFunction().equals("exec") and
  flow.source(a).sink(b).exists()
select a, b, flow
"""

NO_MATCH = """from Call a, Call b, TaintFlow flow
where
  a.getFunction().equals("recv") and
  b.getFunction().equals("system") and
  flow.source(a).sink(b).exists()
select a, b, flow
"""


def run(*args, check_code=None):
    proc = subprocess.run([CLI, *map(str, args)], capture_output=True, text=True, timeout=300)
    if check_code is not None and proc.returncode != check_code:
        raise AssertionError(
            f"{args}: exit {proc.returncode}, wanted {check_code}\nstdout:\n{proc.stdout}\nstderr:\n{proc.stderr}")
    return proc


def write_project(root, files):
    root.mkdir(parents=True, exist_ok=True)
    for name, text in files.items():
        path = root / name
        path.parent.mkdir(parents=True, exist_ok=True)
        path.write_text(text)
    return root


class CliTest(unittest.TestCase):

    def setUp(self):
        self._tmp = tempfile.TemporaryDirectory()
        self.tmp = Path(self._tmp.name)

    def tearDown(self):
        self._tmp.cleanup()

    def extract(self, files, name="proj", code=0, *extra):
        project = write_project(self.tmp / name, files)
        snap = self.tmp / (name + ".snap")
        proc = run("extract", project, "--out", snap, *extra, check_code=code)
        return snap, proc

    def test_square_program_summary_is_compressed(self):
        _, proc = self.extract({"square.c": SQUARE_PROGRAM})
        nodes = int(re.search(r"^nodes=(\d+)", proc.stdout, re.M).group(1))
        edges = int(re.search(r"^edges=(\d+)", proc.stdout, re.M).group(1))
        self.assertGreaterEqual(nodes, 8)
        self.assertLessEqual(nodes, 12)
        self.assertGreaterEqual(edges, 12)
        self.assertLessEqual(edges, 18)

    def test_timing_goes_to_its_own_file(self):
        timing = self.tmp / "timing.json"
        snap, _ = self.extract({"square.c": SQUARE_PROGRAM}, "proj", 0, "--timing", timing)
        data = json.loads(timing.read_text())
        self.assertIn("total_ms", data)
        self.assertNotIn("ms", (snap / "meta.json").read_text())

    def test_empty_directory_is_fatal(self):
        empty = self.tmp / "empty"
        empty.mkdir()
        proc = run("extract", empty, "--out", self.tmp / "out", check_code=1)
        self.assertIn("EmptyProject", proc.stderr)

    def test_partial_graph_exits_2(self):
        snap, proc = self.extract({"good.c": INJECTION, "bad.c": "void broken( {\n"}, "proj", 2)
        self.assertIn("parse error", proc.stdout)
        self.assertTrue((snap / "meta.json").is_file())
        report = run("detect", snap, "--format", "json", check_code=2)
        self.assertTrue(json.loads(report.stdout)["graph"]["partial"])

    def test_injection_query_finds_one_row(self):
        snap, _ = self.extract({"inj.c": INJECTION})
        vql = self.tmp / "injection.vql"
        vql.write_text(INJECTION_QUERY)
        proc = run("query", snap, vql, check_code=0)
        self.assertTrue(proc.stdout.endswith("1 row\n"), proc.stdout)
        rows = json.loads(run("query", snap, vql, "--format", "json", check_code=0).stdout)
        self.assertEqual(rows["columns"], ["a", "b", "flow"])
        self.assertEqual(len(rows["rows"]), 1)
        self.assertEqual(len(rows["rows"][0][2]["path"]), 3)

    def test_empty_result_prints_zero_rows(self):
        snap, _ = self.extract({"inj.c": INJECTION})
        vql = self.tmp / "none.vql"
        vql.write_text(NO_MATCH)
        proc = run("query", snap, vql, check_code=0)
        self.assertEqual(proc.stdout.strip(), "0 rows")

    def test_malformed_query_is_fatal(self):
        snap, _ = self.extract({"inj.c": INJECTION})
        vql = self.tmp / "bad.vql"
        vql.write_text("from Call a where a.getFunction(.equals(\"x\") select a\n")
        proc = run("query", snap, vql, check_code=1)
        self.assertIn("Syntax", proc.stderr)

    def test_bad_flags_are_fatal(self):
        run("detect", check_code=1)
        run("extract", self.tmp, "--out", self.tmp / "o", "--workers", "0", check_code=1)
        run("frobnicate", check_code=1)

    def test_report_validates_against_schema(self):
        schema = json.loads((SOURCE_DIR / "docs" / "report.schema.json").read_text())
        snap = self.tmp / "corpus.snap"
        run("extract", SOURCE_DIR / "corpus", "--out", snap, check_code=0)
        for extra in ([], ["--ml-url", "builtin"]):
            proc = run("detect", snap, "--config", SOURCE_DIR / "corpus" / "cpgscan.toml", "--format", "json",
                       *extra, check_code=0)
            report = json.loads(proc.stdout)
            jsonschema.validate(report, schema)
            self.assertGreater(len(report["findings"]), 0)

    def test_corpus_scores_perfectly(self):
        snap = self.tmp / "corpus.snap"
        report = self.tmp / "report.json"
        run("extract", SOURCE_DIR / "corpus", "--out", snap, check_code=0)
        run("detect", snap, "--config", SOURCE_DIR / "corpus" / "cpgscan.toml", "--format", "json", "--out", report,
            check_code=0)
        score = json.loads(run("score", report, SOURCE_DIR / "corpus" / "truth.json", "--format", "json",
                               check_code=0).stdout)
        for rule in ("CWE401", "CWE415", "CWE416", "CODE_INJECTION"):
            self.assertEqual(score["must_and_maybe"][rule]["recall"], 100.0, rule)
            self.assertGreaterEqual(score["must_and_maybe"][rule]["precision"], 90.0, rule)
            self.assertEqual(score["must"][rule]["precision"], 100.0, rule)

    def test_detect_is_reproducible(self):
        corpus = SOURCE_DIR / "corpus"
        config = corpus / "cpgscan.toml"
        one = self.tmp / "one.snap"
        eight = self.tmp / "eight.snap"
        run("extract", corpus, "--out", one, "--workers", 1, check_code=0)
        run("extract", corpus, "--out", eight, "--workers", 8, check_code=0)
        for name in ("nodes.jsonl", "edges.jsonl", "meta.json"):
            self.assertEqual((one / name).read_bytes(), (eight / name).read_bytes(), name)
        base = run("detect", one, "--config", config, "--format", "json", check_code=0).stdout
        self.assertEqual(base, run("detect", one, "--config", config, "--format", "json", check_code=0).stdout)
        self.assertEqual(base, run("detect", eight, "--config", config, "--format", "json", "--no-cache",
                                   check_code=0).stdout)
        self.assertEqual(base, run("detect", corpus, "--config", config, "--format", "json", "--workers", 3,
                                   check_code=0).stdout)

    def test_rule_selection_is_a_subset(self):
        snap = self.tmp / "corpus.snap"
        config = SOURCE_DIR / "corpus" / "cpgscan.toml"
        run("extract", SOURCE_DIR / "corpus", "--out", snap, check_code=0)
        full = json.loads(run("detect", snap, "--config", config, "--format", "json", check_code=0).stdout)
        only = json.loads(run("detect", snap, "--config", config, "--format", "json", "--rules", "CWE415",
                              check_code=0).stdout)
        self.assertEqual(only["rules"], ["CWE415"])
        self.assertEqual(only["findings"], [f for f in full["findings"] if f["rule"] == "CWE415"])
        proc = run("detect", snap, "--rules", "CWE999", check_code=1)
        self.assertIn("CWE999", proc.stderr)

    def test_unreachable_model_server_leaves_report_unchanged(self):
        snap, _ = self.extract({"inj.c": INJECTION, "direct.c": ML_DIRECT})
        plain = run("detect", snap, "--format", "json", check_code=0)
        down = run("detect", snap, "--format", "json", "--ml-url", "http://127.0.0.1:1", check_code=0)
        self.assertEqual(plain.stdout, down.stdout)
        self.assertIn("ML scan skipped", down.stderr)

    def test_builtin_model_flags_direct_flow_only(self):
        snap, _ = self.extract({"direct.c": ML_DIRECT})
        report = json.loads(run("detect", snap, "--format", "json", "--rules", "CWE401", "--ml-url", "builtin",
                                check_code=0).stdout)
        ml = [f for f in report["findings"] if f["rule"] == "ML_TAINT"]
        self.assertEqual(len(ml), 1)
        self.assertEqual(ml[0]["confidence"], "maybe")

        config = self.tmp / "cfg.toml"
        config.write_text('[rules]\nsanitizers = ["sanitize"]\n')
        snap, _ = self.extract({"cleaned.c": ML_SANITIZED}, "clean")
        report = json.loads(run("detect", snap, "--format", "json", "--config", config, "--ml-url", "builtin",
                                check_code=0).stdout)
        self.assertEqual([f for f in report["findings"] if f["rule"] == "ML_TAINT"], [])

    def test_score_rejects_unknown_case(self):
        snap, _ = self.extract({"elsewhere/inj.c": INJECTION})
        report = self.tmp / "r.json"
        run("detect", snap, "--format", "json", "--out", report, check_code=0)
        truth = self.tmp / "truth.json"
        truth.write_text(json.dumps({"cases": {"other/case": []}}))
        proc = run("score", report, truth, check_code=1)
        self.assertIn("UnknownCase", proc.stderr)


if __name__ == "__main__":
    parser = argparse.ArgumentParser()
    parser.add_argument("--cli", required=True)
    parser.add_argument("--source-dir", required=True)
    args, rest = parser.parse_known_args()
    CLI = args.cli
    SOURCE_DIR = Path(args.source_dir)
    unittest.main(argv=[sys.argv[0], *rest], verbosity=2)
