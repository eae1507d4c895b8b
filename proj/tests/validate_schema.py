"""Validates the golden transcripts against the session schema.

Requests marked invalid_request are deliberately malformed; only their replies are checked.
"""
import json
import pathlib
import sys

import jsonschema

schema_path, golden_dir = map(pathlib.Path, sys.argv[1:3])
validator = jsonschema.Draft202012Validator(json.loads(schema_path.read_text()))
count = 0
for path in sorted(golden_dir.glob("*.jsonl")):
    for n, line in enumerate(path.read_text().splitlines(), 1):
        record = json.loads(line)
        sides = ("reply",) if record.get("invalid_request") else ("request", "reply")
        for side in sides:
            errors = list(validator.iter_errors(record[side]))
            if errors:
                sys.exit(f"{path.name}:{n} {side}: {errors[0].message}")
            count += 1
print(f"{count} messages valid")
