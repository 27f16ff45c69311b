#!/usr/bin/env python3
"""Run a dkm command with --json and validate its stdout against a schema.

usage: validate_json.py SCHEMA EXPECTED_EXIT -- DKM_BINARY ARGS...

Also runs the command a second time and requires byte-identical output.
"""
import json
import subprocess
import sys

import jsonschema


def main(argv):
    if len(argv) < 5 or argv[3] != "--":
        print(__doc__, file=sys.stderr)
        return 2
    schema_path, expected_exit, command = argv[1], int(argv[2]), argv[4:]
    with open(schema_path, encoding="utf-8") as f:
        schema = json.load(f)

    first = subprocess.run(command, capture_output=True)
    if first.returncode != expected_exit:
        print(f"exit code {first.returncode}, expected {expected_exit}", file=sys.stderr)
        print(first.stderr.decode(errors="replace"), file=sys.stderr)
        return 1
    try:
        jsonschema.validate(json.loads(first.stdout), schema)
    except (json.JSONDecodeError, jsonschema.ValidationError) as e:
        print(f"invalid output: {e}", file=sys.stderr)
        return 1

    second = subprocess.run(command, capture_output=True)
    if second.stdout != first.stdout:
        print("output differs between identical runs", file=sys.stderr)
        return 1
    print(f"ok: {' '.join(command[1:])}")
    return 0


if __name__ == "__main__":
    sys.exit(main(sys.argv))
