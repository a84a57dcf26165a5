#!/usr/bin/env python3
"""End-to-end checks for the qcal command line tool."""

import json
import math
import os
import subprocess
import sys
import tempfile

BIN = sys.argv[1]
failures = 0


def run(args, env=None):
    e = dict(os.environ)
    e.pop("QCAL_SEED", None)
    if env:
        e.update(env)
    return subprocess.run([BIN] + args, capture_output=True, text=True, env=e)


def check(name, cond):
    global failures
    print(("PASS " if cond else "FAIL ") + name)
    if not cond:
        failures += 1


# --- eval ------------------------------------------------------------------

r = run(["eval", "calE", "--q", "0.5", "--z", "0"])
check("eval at 0 converges", r.returncode == 0)
check("eval value is 1 to 17 digits", "value_re     = 1" in r.stdout)
check("eval reports status", "status       = Converged" in r.stdout)

r = run(["eval", "calE", "--q", "0.5", "--z", "4", "--method", "product"])
check("eval pole exits 1", r.returncode == 1)
check("eval pole names the pole", "pole" in r.stderr)

r = run(["eval", "calE", "--q", "0.5", "--z", "4.2", "--method", "series"])
check("eval outside domain exits 1", r.returncode == 1)

def eval_value(args):
    out = run(args).stdout
    vals = {}
    for line in out.splitlines():
        k, _, v = line.partition("=")
        vals[k.strip()] = v.strip()
    return complex(float(vals["value_re"]), float(vals["value_im"]))

v_half = eval_value(["eval", "calE", "--q", "0.5", "--z", "1"])
v_two = eval_value(["eval", "calE", "--q", "2", "--z", "1"])
check("duality: q=2 equals q=0.5", abs(v_half - v_two) < 1e-12)

r = run(["eval", "calE", "--q", "0.5", "--z", "nonsense"])
check("bad --z exits 2", r.returncode == 2)

r = run(["eval", "nosuchfn", "--q", "0.5", "--z", "1"])
check("unknown function exits 2", r.returncode == 2)

r = run(["eval", "calE", "--q", "-1", "--z", "1"])
check("invalid q exits 1 (math domain)", r.returncode == 1)

# --- sweep -----------------------------------------------------------------

def parse_csv(text):
    lines = text.strip().split("\n")
    return lines[0], [ln.split(",") for ln in lines[1:]]

with tempfile.TemporaryDirectory() as td:
    path = os.path.join(td, "out.csv")
    r = run(["sweep", "calCos", "--q", "0.5", "--start", "0", "--stop", "10",
             "--steps", "101", "--out", path])
    check("sweep exits 0", r.returncode == 0)
    with open(path, "rb") as f:
        raw = f.read()
    check("sweep uses LF line endings", b"\r" not in raw)
    header, rows = parse_csv(raw.decode())
    check("sweep header", header == "x,value_re,value_im,terms,err_estimate,status")
    check("sweep row count", len(rows) == 101)
    check("sweep bounded |value_re| <= 1",
          all(abs(float(row[1])) <= 1.0 + 1e-11 for row in rows))
    check("sweep statuses converged", all(row[5] == "Converged" for row in rows))

    # bit-stable across runs
    r2 = run(["sweep", "calCos", "--q", "0.5", "--start", "0", "--stop", "10",
              "--steps", "101", "--out", path])
    with open(path, "rb") as f:
        raw2 = f.read()
    check("sweep output is bit-stable", raw == raw2)

r = run(["sweep", "calE", "--q", "0.5", "--var", "x_imag_axis", "--start",
         "-20", "--stop", "20", "--steps", "81"])
header, rows = parse_csv(r.stdout)
check("imag-axis sweep exits 0", r.returncode == 0)
check("imag-axis rows lie on the unit circle",
      all(abs(float(x[1]) ** 2 + float(x[2]) ** 2 - 1.0) <= 1e-11 for x in rows))

r = run(["sweep", "eq", "--q", "0.5", "--start", "0", "--stop", "1",
         "--steps", "2"])
header, rows = parse_csv(r.stdout)
check("steps=2 gives exactly 2 rows", len(rows) == 2)
check("endpoint grid", rows[0][0] == "0" and rows[1][0] == "1")

# partial sweep: e_q at q=0.5 leaves the domain at x = 2
r = run(["sweep", "eq", "--q", "0.5", "--start", "0", "--stop", "3",
         "--steps", "4"])
check("partial sweep exits 3", r.returncode == 3)
header, rows = parse_csv(r.stdout)
check("non-converged rows keep status, empty values",
      any(row[1] == "" and row[5] != "Converged" for row in rows))

r = run(["sweep", "eq", "--q", "0.5", "--start", "1", "--stop", "0",
         "--steps", "4"])
check("start >= stop exits 2", r.returncode == 2)

r = run(["sweep", "eq", "--q", "0.5", "--start", "0", "--stop", "1",
         "--steps", "4", "--out", "/nonexistent-dir/x.csv"])
check("unwritable output exits 4", r.returncode == 4)

# --- check -----------------------------------------------------------------

r = run(["check", "--format", "json"])
check("check json exits 0", r.returncode == 0)
doc = json.loads(r.stdout)
check("json schema version", doc.get("schema") == 1)
reports = doc["reports"]
check("json reports all pass", all(rep["passed"] for rep in reports))
required = {"id", "samples_evaluated", "skipped", "max_residual",
            "mean_residual", "worst_point", "passed"}
check("json report fields",
      all(required <= set(rep) for rep in reports))
check("json worst_point fields",
      all({"arg_re", "arg_im", "q"} <= set(rep["worst_point"])
          for rep in reports))

r = run(["check", "--format", "text"])
check("check text exits 0", r.returncode == 0)
lines = [ln for ln in r.stdout.splitlines() if ln.strip()]
check("text line count equals registry size", len(lines) == len(reports))
check("text lines say PASS", all("PASS" in ln for ln in lines))

r = run(["check", "--tol", "Pythagorean=1e-16"])
check("unattainable tolerance exits nonzero", r.returncode != 0)
check("failing line says FAIL", any("FAIL" in ln for ln in r.stdout.splitlines()))

r = run(["check", "--tol", "NoSuchIdentity=1e-3"])
check("unknown identity override exits 2", r.returncode == 2)

r1 = run(["check", "--format", "json"], env={"QCAL_SEED": "7"})
r2 = run(["check", "--format", "json"], env={"QCAL_SEED": "7"})
r3 = run(["check", "--format", "json"], env={"QCAL_SEED": "8"})
check("QCAL_SEED is deterministic", r1.stdout == r2.stdout)
check("QCAL_SEED changes the grids", r1.stdout != r3.stdout)
check("reseeded check still passes", r3.returncode == 0)

# --- radius ----------------------------------------------------------------

r = run(["radius", "--q", "0.5"])
check("radius q=0.5 is 4", r.returncode == 0 and "R_q = 4" in r.stdout)
r = run(["radius", "--q", "1"])
check("radius q=1 is inf", "inf" in r.stdout)
r = run(["radius", "--q", "2"])
check("radius q=2 is 4", "R_q = 4" in r.stdout)

r = run(["bogus-subcommand"])
check("usage error exits 2", r.returncode == 2)

print(f"{failures} failures")
sys.exit(1 if failures else 0)
