"""Validates edschar JSON output against the published schemas."""
import json
import pathlib
import subprocess
import sys

from jsonschema import Draft202012Validator
from referencing import Registry, Resource

tool, schemas, systems = sys.argv[1], pathlib.Path(sys.argv[2]), pathlib.Path(sys.argv[3])

record = json.loads((schemas / "record.schema.json").read_text())
table1 = json.loads((schemas / "table1.schema.json").read_text())
registry = Registry().with_resources(
    [(s["$id"], Resource.from_contents(s)) for s in (record, table1)]
)

runs = [
    (["chars", "--model", "maxwell", "--n", "4", "--seed", "7"], record, 0),
    (["chars", "--model", "su2ym", "--n", "3", "--modular-check"], record, 0),
    (["chars", "--eds", str(systems / "contact.eds")], record, 0),
    (["verify", "--model", "maxwell", "--n", "3"], record, 0),
    (["verify", "--model", "su2ym", "--n", "5", "--trials", "1"], record, 0),
    (["verify", "--eds", str(systems / "broken.eds")], record, 5),
    (["table1", "--trials", "1"], table1, 0),
]

failures = 0
for args, schema, code in runs:
    proc = subprocess.run([tool, *args, "--format", "json"], capture_output=True, text=True)
    label = " ".join(args)
    if proc.returncode != code:
        print(f"FAIL {label}: exit {proc.returncode}, expected {code}")
        failures += 1
        continue
    errors = list(Draft202012Validator(schema, registry=registry).iter_errors(json.loads(proc.stdout)))
    for e in errors:
        print(f"FAIL {label}: {e.message} at {list(e.path)}")
    failures += bool(errors)
    if not errors:
        print(f"ok   {label}")

sys.exit(1 if failures else 0)
