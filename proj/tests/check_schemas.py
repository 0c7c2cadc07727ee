"""Runs the CLI with --json and validates each output against docs/schemas."""
import json
import pathlib
import subprocess
import sys
import tempfile

import jsonschema


def run(cli, *args, expect_rc=0):
    proc = subprocess.run([cli, *args, "--json"], capture_output=True, text=True, check=False)
    if proc.returncode != expect_rc:
        raise SystemExit(f"{' '.join(args)}: exit {proc.returncode}, expected {expect_rc}\n{proc.stderr}")
    return json.loads(proc.stdout)


def main():
    cli, schema_dir = sys.argv[1], pathlib.Path(sys.argv[2])
    schemas = {p.name.removesuffix(".schema.json"): json.loads(p.read_text()) for p in schema_dir.glob("*.schema.json")}
    store = pathlib.Path(tempfile.mkdtemp()) / "store.jsonl"

    found = run(cli, "exists", "--shape", "4,2,1", "--type", "2,2,2,1")
    cases = [
        ("cds", run(cli, "cds", "4,2,1")),
        ("cds", run(cli, "cds", "1")),
        ("census", run(cli, "census", "--r", "4", "--box", "6x6")),
        ("exists", found),
        ("exists", run(cli, "exists", "--shape", "4,2,1", "--type", "3,3,1")),
        ("exists", run(cli, "exists", "--shape", "6,6,6,6,6,5", "--type", "6,6,6,6,6,5", "--budget", "1", expect_rc=3)),
        ("tableau", found["tableau"]),
        ("color4", run(cli, "color4", "5,5,3,3,2")),
        ("tableau", run(cli, "recolor", "--in", "1 2 3 4/3 4/2", "--to", "2,2,1,1,1")),
        ("verify_record", run(cli, "verify", "--shape", "4,2,1")),
        ("verify_box", run(cli, "verify", "--box", "4x4", "--store", str(store))),
        ("verify_box", run(cli, "verify", "--box", "5x5", "--budget", "3", "--no-store", expect_rc=3)),
        ("counterexamples", run(cli, "counterexamples")),
    ]
    for line in store.read_text().splitlines():
        cases.append(("verify_record", json.loads(line)))

    for name, doc in cases:
        jsonschema.validate(doc, schemas[name])
    print(f"{len(cases)} documents valid against {len(schemas)} schemas")


if __name__ == "__main__":
    main()
