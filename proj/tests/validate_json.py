"""Validates the CLI's JSON output against the shipped schemas."""
import json
import pathlib
import subprocess
import sys

import jsonschema

CASES = [
    ("bounds", ["bounds", "get", "--q", "2", "--v", "11", "--k", "4"]),
    ("bounds", ["--certificate", "bounds", "get", "--q", "8", "--v", "14", "--k", "6"]),
    ("bounds", ["bounds", "get", "--q", "9", "--v", "18", "--k", "8"]),
    ("bounds", ["bounds", "table", "--q", "2", "--v-range", "6..12", "--k-range", "3..4"]),
    ("status", ["divset", "status", "--q", "2", "--r", "3", "--n-range", "45..60"]),
    ("status", ["--certificate", "macwlp", "status", "--q", "3", "--r", "2", "--n-range", "1..60"]),
    ("status", ["divset", "status", "--q", "2", "--r", "2", "--n-range", "1..20", "--undecided-only"]),
    ("lp", ["--certificate", "macwlp", "lp", "--q", "2", "--n", "52", "--delta", "8"]),
    ("lp", ["macwlp", "lp", "--q", "2", "--n", "51", "--delta", "8", "--dims", "auto"]),
    ("lp", ["macwlp", "lp", "--q", "2", "--n", "17", "--delta", "4", "--dims", "6..8"]),
]


def main() -> int:
    exe, schema_dir = sys.argv[1], pathlib.Path(sys.argv[2])
    failures = 0
    for schema_name, args in CASES:
        schema = json.loads((schema_dir / f"{schema_name}.schema.json").read_text())
        cmd = [exe, "--format", "json", *args]
        first = subprocess.run(cmd, capture_output=True, check=True).stdout
        second = subprocess.run([exe, "--jobs", "1", "--format", "json", *args], capture_output=True, check=True).stdout
        try:
            jsonschema.validate(json.loads(first), schema)
        except jsonschema.ValidationError as e:
            print(f"FAIL {' '.join(args)}: {e.message}")
            failures += 1
            continue
        if first != second:
            print(f"FAIL {' '.join(args)}: output differs between runs")
            failures += 1
            continue
        print(f"ok   {' '.join(args)}")
    return 1 if failures else 0


if __name__ == "__main__":
    sys.exit(main())
