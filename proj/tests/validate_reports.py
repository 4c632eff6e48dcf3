# Copyright 2026 The unifactor Authors
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

"""Runs every unifactor command once and checks the reports against the schema."""
import json
import subprocess
import sys
import tempfile
from pathlib import Path

import jsonschema


def main() -> int:
    binary, schema_path = sys.argv[1], sys.argv[2]
    schema = json.loads(Path(schema_path).read_text())
    jsonschema.Draft202012Validator.check_schema(schema)
    validator = jsonschema.Draft202012Validator(schema)
    with tempfile.TemporaryDirectory() as tmp:
        d = Path(tmp)
        circ = d / "c.qasm"
        target = d / "t.json"
        target.write_text('{"n": 1, "re": [[0, 1], [1, 0]], "im": [[0, 0], [0, 0]]}')
        runs = {
            "gen": ["gen", "--family", "tfim", "--qubits", "3", "--depth", "2", "--seed", "1",
                    "--out", str(circ), "--report"],
            "instantiate": ["instantiate", "--circuit", str(circ), "--target", "self",
                            "--seed", "2", "--out"],
            "optimize": ["optimize", "--circuit", str(circ), "--seed", "3", "--verify",
                         "--out"],
            "verify": ["verify", "--circuit-a", str(circ), "--circuit-b", str(circ), "--out"],
        }
        failures = 0
        for name, args in runs.items():
            report = d / f"{name}.json"
            proc = subprocess.run([binary, *args, str(report)], capture_output=True, text=True)
            if proc.returncode not in (0, 2):
                print(f"{name}: exit {proc.returncode}: {proc.stderr}")
                failures += 1
                continue
            errors = list(validator.iter_errors(json.loads(report.read_text())))
            for e in errors:
                print(f"{name}: {e.json_path}: {e.message}")
            failures += bool(errors)
            print(f"{name}: {'ok' if not errors else 'INVALID'}")
        one = d / "one.qasm"
        one.write_text("OPENQASM 2.0;\nqreg q[1];\nu3(0.1,0.2,0.3) q[0];\n")
        report = d / "lbfgs.json"
        subprocess.run([binary, "instantiate", "--circuit", str(one), "--target", str(target),
                        "--optimizer", "lbfgs", "--seed", "4", "--out", str(report)],
                       capture_output=True, check=False)
        errors = list(validator.iter_errors(json.loads(report.read_text())))
        failures += bool(errors)
        print(f"instantiate (target file): {'ok' if not errors else 'INVALID'}")
    return 1 if failures else 0


if __name__ == "__main__":
    sys.exit(main())
