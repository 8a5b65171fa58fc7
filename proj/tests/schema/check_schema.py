"""Runs every subcommand with --json, validates against the schema, and
checks that parse -> dump -> parse is lossless."""

import json
import subprocess
import sys

import jsonschema

exe, schema_path, monkey = sys.argv[1:4]
schema = json.load(open(schema_path))
jsonschema.Draft202012Validator.check_schema(schema)
validator = jsonschema.Draft202012Validator(schema)

tri = ["--letters", "0.5,0.3,0.2"]
stop = ["--letters", "0.55,0.35", "--stop", "0.1"]
cases = [
    tri + ["gamma"],
    ["--model", monkey, "gamma"],
    tri + ["rank", "1000"],
    ["--model", monkey, "rank", "1"],
    stop + ["word", "77"],
    tri + ["prob", "1/1000"],
    tri + ["qtilde", "25.5"],
    tri + ["verify"],
    tri + ["converge-q", "--zmax", "40"],
    ["--letters", "0.5,0.5", "converge-q", "--zmax", "20"],
    stop + ["converge-rank", "--rmax", "100000"],
    ["--letters", "0.5,0.25,0.25", "oscillate", "--periods", "40"],
    tri + ["oracle", "--max-len", "8"],
]

failed = 0
for args in cases:
    proc = subprocess.run([exe, *args, "--json"], capture_output=True, text=True)
    label = " ".join(args)
    if proc.returncode != 0:
        print(f"FAIL {label}: exit {proc.returncode}: {proc.stderr.strip()}")
        failed += 1
        continue
    doc = json.loads(proc.stdout)
    errors = sorted(validator.iter_errors(doc), key=lambda e: list(e.path))
    again = json.loads(json.dumps(doc))
    if errors:
        print(f"FAIL {label}: {errors[0].message} at {list(errors[0].path)}")
        failed += 1
    elif again != doc:
        print(f"FAIL {label}: round trip changed the document")
        failed += 1
    else:
        print(f"ok   {label}")

# A document with a wrong schema tag must be rejected.
bad = json.loads(subprocess.run([exe, *tri, "gamma", "--json"], capture_output=True, text=True).stdout)
bad["schema"] = "rankzipf-report/0"
if validator.is_valid(bad):
    print("FAIL schema tag not enforced")
    failed += 1

sys.exit(1 if failed else 0)
