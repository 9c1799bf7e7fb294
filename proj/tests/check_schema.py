"""Validates pfx JSON reports against docs/report.schema.json."""

import json
import subprocess
import sys

import jsonschema

COMMANDS = [
    ["eval", "cdi", "--x1", "0.5", "--x2", "0.5", "--a", "0", "--lambda", "5"],
    ["eval", "cdi", "--x1", "0.5", "--x2", "0.5", "--a", "0", "--lambda", "-1"],
    ["eval", "clf", "--x1", "1/4", "--x2", "1/4", "--s", "1", "--t", "1", "--u", "0", "--lambda", "3"],
    ["eval", "tve", "--x", "0.2,0.3,0.4", "--a", "1", "--lambda", "2"],
    ["eval", "pi-family", "--m", "1", "--a", "1", "--lambda", "2"],
    ["verify-finite", "bpf", "--count", "3", "--n-max", "4"],
    ["verify-finite", "gpf", "--r", "3", "--count", "3", "--n-max", "3", "--seed", "1"],
    ["verify-finite", "twpf", "--count", "3", "--n-max", "3"],
    ["verify-finite", "affp", "--count", "3", "--n-max", "6"],
]


def main(pfx, schema_path):
    with open(schema_path) as f:
        schema = json.load(f)
    for args in COMMANDS:
        out = subprocess.run([pfx] + args, capture_output=True, text=True).stdout
        jsonschema.validate(json.loads(out), schema)
    print(f"{len(COMMANDS)} reports valid")


if __name__ == "__main__":
    main(sys.argv[1], sys.argv[2])
