#!/usr/bin/env python3
#
# Copyright 2026 The PrivInfer Authors
#
# Licensed under the Apache License, Version 2.0 (the "License");
# you may not use this file except in compliance with the License.
# You may obtain a copy of the License at
#
#      http://www.apache.org/licenses/LICENSE-2.0
#
# Unless required by applicable law or agreed to in writing, software
# distributed under the License is distributed on an "AS IS" BASIS,
# WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
# See the License for the specific language governing permissions and
# limitations under the License.
#

"""Drives the privinfer binary: exit codes and JSON output shapes.

usage: cli_test.py PRIVINFER_BINARY SOURCE_DIR
"""

import json
import os
import subprocess
import sys
import tempfile

import jsonschema
import referencing

BIN, ROOT = sys.argv[1], sys.argv[2]
FIX = os.path.join(ROOT, "fixtures")
SCHEMAS = os.path.join(ROOT, "schemas")

failures = []


def schema_registry():
    resources = []
    for name in os.listdir(SCHEMAS):
        with open(os.path.join(SCHEMAS, name)) as f:
            s = json.load(f)
        resources.append((s["$id"], referencing.Resource.from_contents(s)))
    return referencing.Registry().with_resources(resources)


REGISTRY = schema_registry()


def validate(doc, schema):
    s = REGISTRY.contents(schema + ".schema.json")
    jsonschema.Draft202012Validator(s, registry=REGISTRY).validate(doc)


def run(args, env=None, cwd=None):
    e = dict(os.environ)
    e.pop("PRIVINFER_GRID_N", None)
    e.update(env or {})
    return subprocess.run([BIN] + args, capture_output=True, text=True, env=e,
                          cwd=cwd, timeout=240)


def case(name, args, code, schema=None, env=None, check=None):
    p = run(args, env)
    ok = p.returncode == code
    why = "" if ok else "exit %d, want %d: %s" % (p.returncode, code,
                                                 p.stderr.strip()[:300])
    if ok and schema:
        try:
            validate(json.loads(p.stdout), schema)
        except (ValueError, jsonschema.ValidationError) as err:
            ok, why = False, "schema %s: %s" % (schema, str(err)[:300])
    if ok and check:
        try:
            check(p)
        except AssertionError as err:
            ok, why = False, "check: %s" % err
    print("%s %s%s" % ("ok  " if ok else "FAIL", name, "" if ok else " -- " + why))
    if not ok:
        failures.append(name)
    return p


def fx(name, ext=".pinf"):
    return os.path.join(FIX, name + ext)


tmp = tempfile.mkdtemp(prefix="privinfer_cli_")
bad = os.path.join(tmp, "bad.pinf")
with open(bad, "w") as f:
    f.write("let x = mlet = 1 in x\n")
d1, d2 = os.path.join(tmp, "d1.json"), os.path.join(tmp, "d2.json")
with open(d1, "w") as f:
    json.dump({"support": [True, False], "mass": ["0.25", "0.75"]}, f)
with open(d2, "w") as f:
    json.dump({"support": [True, False], "mass": ["0.5", "0.5"]}, f)
bad_dist = os.path.join(tmp, "bad.json")
with open(bad_dist, "w") as f:
    json.dump({"support": [True], "mass": ["0.5"]}, f)

case("no subcommand", [], 2)
case("unknown option", ["parse", "--nope", fx("beta_input")], 2)
case("parse", ["parse", fx("beta_input")], 0)
case("parse syntax error", ["parse", bad], 3)
# Paths are validated with the other arguments: a usage error.
case("missing file", ["parse", os.path.join(tmp, "absent.pinf")], 2)


def lists_main(p):
    assert "main" in p.stdout, p.stdout


case("check", ["check", fx("beta_input")], 0, check=lists_main)
case("run json", ["run", fx("beta_input"), "--arg", "[true]", "--arg", "1",
                  "--arg", "1", "--arg", "1", "--json"], 0, schema="dist")
case("relcheck accept", ["relcheck", fx("hellinger_exp"), "--type",
                         fx("hellinger_exp", ".rt"), "--json"], 0,
     schema="relcheck")
case("relcheck reject", ["relcheck", fx("mutants/broken_addnoise"), "--type",
                         fx("mutants/broken_addnoise", ".rt"), "--json"], 1,
     schema="relcheck")
case("verify-dp pass", ["verify-dp", fx("beta_input"), "--arg", "_", "--arg",
                        "1", "--arg", "1", "--arg", "1", "--eps", "1",
                        "--max-len", "3", "--slack", "1e-9", "--json",
                        "--all-pairs"], 0, schema="dp_report")
case("verify-dp refute", ["verify-dp", fx("mutants/broken_addnoise"), "--arg",
                          "_", "--arg", "1", "--arg", "1", "--arg", "1",
                          "--eps", "1", "--max-len", "2", "--json"], 1,
     schema="dp_report")
case("verify-dp cap", ["--max-inputs", "3", "verify-dp", fx("beta_input"),
                       "--arg", "_", "--arg", "1", "--arg", "1", "--arg", "1",
                       "--eps", "1", "--max-len", "3"], 3)


def sd_is_quarter(p):
    assert abs(json.loads(p.stdout)["value"] - 0.25) < 1e-15, p.stdout


case("divergence", ["divergence", "--kind", "SD", d1, d2, "--json"], 0,
     check=sd_is_quarter)
case("divergence bad mass", ["divergence", "--kind", "SD", d1, bad_dist], 3)
case("mech laplace", ["--real-extent", "2", "mech", "laplace", "--eps", "1",
                      "--x", "0"], 0, schema="dist")
case("mech exp", ["mech", "exp", "--eps", "1", "--scores", "0,1,1"], 0,
     schema="dist")


def grid_is(n):
    def check(p):
        doc = json.loads(p.stdout)
        assert len(doc["support"]) == n, len(doc["support"])
    return check


prog = os.path.join(tmp, "flat.pinf")
with open(prog, "w") as f:
    f.write("let main : M[[0,1]] = ran beta(1, 1)\n")
conf = os.path.join(tmp, "privinfer.ini")
with open(conf, "w") as f:
    f.write("grid=20\n")
case("grid from env", ["run", prog, "--json"], 0, env={"PRIVINFER_GRID_N": "10"},
     check=grid_is(10))
case("config over env", ["--config", conf, "run", prog, "--json"], 0,
     env={"PRIVINFER_GRID_N": "10"}, check=grid_is(20))
case("flag over config", ["--config", conf, "--grid", "5", "run", prog,
                          "--json"], 0, check=grid_is(5))


def corpus_passes(p):
    assert json.loads(p.stdout)["pass"] is True


case("corpus quick", ["corpus", "--quick", "--json"], 0, schema="corpus",
     check=corpus_passes)

print("%d failure(s)" % len(failures))
sys.exit(1 if failures else 0)
