#!/usr/bin/env python3
# Copyright 2026 The truecon Authors
#
# Licensed under the Apache License, Version 2.0 (the "License");
# you may not use this file except in compliance with the License.
# You may obtain a copy of the License at
#
#     http://www.apache.org/licenses/LICENSE-2.0
#
# Unless required by applicable law or agreed to in writing, software
# distributed under the License is distributed on an "AS IS" BASIS,
# WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
# See the License for the specific language governing permissions and
# limitations under the License.

"""End-to-end checks of the truecon command line."""

import json
import os
import subprocess
import sys
import unittest

EXE = sys.argv.pop(1)
HERE = os.path.dirname(os.path.abspath(__file__))
DATA = os.path.join(HERE, "data")

try:
    import jsonschema

    with open(os.path.join(HERE, "..", "docs", "report-schema.json")) as fh:
        SCHEMA = json.load(fh)
except ImportError:
    jsonschema = None


def run(*args, env=None):
    e = dict(os.environ)
    e.pop("TRUECON_STATE_CAP", None)
    e.update(env or {})
    p = subprocess.run([EXE, *args], capture_output=True, text=True, env=e)
    return p.returncode, p.stdout, p.stderr


def run_json(*args, env=None):
    code, out, err = run("--format", "json", *args, env=env)
    doc = json.loads(out)
    if jsonschema is not None:
        jsonschema.validate(doc, SCHEMA)
    return code, doc


class Cli(unittest.TestCase):
    def test_intro_pair_hh(self):
        code, out, _ = run("equiv", "--kind", "hh", "--lhs", "a|b", "--rhs", "a.b+b.a")
        self.assertEqual(code, 0)
        self.assertIn("not equivalent", out)
        code, doc = run_json("equiv", "--kind", "hh", "--lhs", "a|b", "--rhs", "a.b+b.a")
        self.assertEqual(code, 0)
        self.assertFalse(doc["equivalent"])
        self.assertEqual(doc["distinguishing"]["holds_on"], "lhs")

    def test_intro_pair_ib(self):
        code, doc = run_json("equiv", "--kind", "ib", "--lhs", "a|b", "--rhs", "a.b+b.a")
        self.assertEqual(code, 0)
        self.assertTrue(doc["equivalent"])
        self.assertIsNone(doc["distinguishing"])

    def test_check_autoconcurrency(self):
        code, out, _ = run("check", "--structure", "(a.a)|a", "--formula", "<x:a><y:a><-x>tt")
        self.assertEqual((code, out), (0, "true\n"))
        code, out, _ = run("check", "--structure", "a.a", "--formula", "<x:a><y:a><-x>tt")
        self.assertEqual((code, out), (0, "false\n"))

    def test_check_with_config_and_env(self):
        f = os.path.join(DATA, "example1.txt")
        code, out, _ = run("check", "--structure", f, "--formula", "<-x>tt", "--config", "{e1, e3}", "--env", "x=e1")
        self.assertEqual((code, out), (0, "true\n"))
        code, out, _ = run("check", "--structure", f, "--formula", "(x:a)<-x><-y>tt", "--config", "e1 e2",
                           "--env", "x=e1,y=e2")
        self.assertEqual((code, out), (0, "false\n"))

    def test_not_a_configuration(self):
        f = os.path.join(DATA, "example1.txt")
        code, doc = run_json("check", "--structure", f, "--formula", "tt", "--config", "e2")
        self.assertEqual(code, 1)
        self.assertEqual(doc["error"]["type"], "NotAConfiguration")

    def test_validate_missing_root(self):
        code, _, err = run("validate", "--structure", os.path.join(DATA, "missing_root.txt"))
        self.assertEqual(code, 1)
        self.assertIn("not rooted", err)
        code, doc = run_json("validate", "--structure", os.path.join(DATA, "missing_root.txt"))
        self.assertEqual(code, 1)
        self.assertEqual(doc["error"]["kind"], "NotRooted")

    def test_validate_term(self):
        code, doc = run_json("validate", "--structure", "a|b")
        self.assertEqual(code, 0)
        self.assertEqual((doc["events"], doc["configurations"]), (2, 4))

    def test_syntax_error_position(self):
        code, doc = run_json("check", "--structure", "a|", "--formula", "tt")
        self.assertEqual(code, 1)
        self.assertEqual(doc["error"]["type"], "SyntaxError")
        self.assertEqual(doc["error"]["position"], 2)
        code, doc = run_json("check", "--structure", "a", "--formula", "<x:a>(tt")
        self.assertEqual(code, 1)
        self.assertIn("position", doc["error"])

    def test_unknown_kind_and_bad_flags(self):
        self.assertEqual(run("equiv", "--kind", "xx", "--lhs", "a", "--rhs", "a")[0], 1)
        self.assertEqual(run("equiv", "--lhs", "a")[0], 1)
        self.assertEqual(run("charform", "--kind", "hh", "--depth", "-2", "--structure", "a")[0], 1)

    def test_state_cap_env(self):
        code, _, err = run("equiv", "--kind", "hh", "--lhs", "a|b", "--rhs", "a|b", env={"TRUECON_STATE_CAP": "2"})
        self.assertEqual(code, 1)
        self.assertIn("cap", err)
        self.assertEqual(run("equiv", "--kind", "hh", "--lhs", "a", "--rhs", "a",
                             env={"TRUECON_STATE_CAP": "many"})[0], 1)
        self.assertEqual(run("equiv", "--kind", "hh", "--lhs", "a|b", "--rhs", "a|b",
                             env={"TRUECON_STATE_CAP": "1000"})[0], 0)

    def test_distinguish_round_trip(self):
        pairs = [("hh", "a|b", "a.b+b.a"), ("h", "a|a", "a.a"), ("wh", "a.a", "a|a"),
                 ("hwh", "(a|(b+c)) + (a|b) + ((a+c)|b)", "(a|(b+c)) + ((a+c)|b)"),
                 ("hh", "a.b+b.a", "a|b")]
        for kind, lhs, rhs in pairs:
            code, doc = run_json("distinguish", "--kind", kind, "--lhs", lhs, "--rhs", rhs)
            self.assertEqual(code, 0)
            formula = doc["distinguishing"]["formula"]
            on = {}
            for side, s in (("lhs", lhs), ("rhs", rhs)):
                c, out, _ = run("check", "--structure", s, "--formula", formula)
                self.assertEqual(c, 0)
                on[side] = out.strip() == "true"
            holds = doc["distinguishing"]["holds_on"]
            self.assertTrue(on[holds])
            self.assertFalse(on["rhs" if holds == "lhs" else "lhs"])

    def test_distinguish_equivalent(self):
        code, doc = run_json("distinguish", "--kind", "hh", "--lhs", "a", "--rhs", "a+a")
        self.assertEqual(code, 0)
        self.assertTrue(doc["equivalent"])

    def test_charform(self):
        code, doc = run_json("charform", "--kind", "hh", "--structure", "a|b", "--rhs", "a.b+b.a")
        self.assertEqual(code, 0)
        self.assertFalse(doc["rhs_satisfies"])
        code, doc = run_json("charform", "--kind", "hh", "--structure", "a|b", "--rhs", "b|a")
        self.assertTrue(doc["rhs_satisfies"])
        code, doc = run_json("charform", "--kind", "wh", "--structure", "a", "--rhs", "a+a")
        self.assertTrue(doc["rhs_satisfies"])
        code, doc = run_json("charform", "--kind", "wh", "--structure", "a", "--rhs", "a.a")
        self.assertFalse(doc["rhs_satisfies"])
        code, doc = run_json("charform", "--kind", "hh", "--depth", "0", "--structure", "a")
        self.assertEqual(doc["modal_depth"], 0)
        code, doc = run_json("charform", "--kind", "h", "--structure", "a", "--act", "b")
        self.assertEqual(doc["act"], ["a", "b"])
        c, out, _ = run("check", "--structure", "a", "--formula", doc["formula"])
        self.assertEqual((c, out), (0, "true\n"))

    def test_json_is_lossless(self):
        for args in (("equiv", "--kind", "hh", "--lhs", "a|b", "--rhs", "a.b+b.a"),
                     ("charform", "--kind", "wh", "--structure", "a|b"),
                     ("validate", "--structure", "a.b"),
                     ("check", "--structure", "a", "--formula", "<a>tt")):
            code, out, _ = run("--format", "json", *args)
            self.assertEqual(code, 0)
            doc = json.loads(out)
            self.assertEqual(json.loads(json.dumps(doc)), doc)
            self.assertEqual(json.dumps(doc, indent=2) + "\n", out)

    def test_crossval_small(self):
        code, doc = run_json("crossval", "--events", "2", "--labels", "1", "--random", "100",
                             "--step-events", "2", "--theta-events", "2")
        self.assertEqual(code, 0)
        self.assertTrue(doc["passed"])
        self.assertEqual(doc["structures"], 5)
        self.assertTrue(all(p["violations"] == 0 for p in doc["properties"]))


if __name__ == "__main__":
    unittest.main(verbosity=1)
