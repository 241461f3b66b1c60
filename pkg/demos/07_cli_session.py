"""Driving the command-line surface programmatically.

The CLI reads one statement per line (file or stdin) and emits text or
JSON reports; exit code 0 means all verdicts decided, 2 flags an honest
Unknown, 1 an error.  The same session grammar backs library scripting.
"""

import json
import subprocess
import sys
import tempfile

SCRIPT = """\
let F = RF(GF(2); t)
let M = classify(F, X^4+t*X^2+t)
classify F X^4+t^3
resolvent X^4+a*X^3+c*X+d
let q = PF(1+t; t)
member M q
verify-gen M B g=t^2+t,h=t
express M [1,(1)/(t)] + t*PF(t^2+t; t)
brauer split (t,1]
brauer index (t,1]x(1,0]
brauer kernel-gens M
"""

with tempfile.NamedTemporaryFile("w", suffix=".txt", delete=False) as fh:
    fh.write(SCRIPT)
    path = fh.name

proc = subprocess.run(
    [sys.executable, "-m", "witt2.cli", path, "--json"],
    capture_output=True,
    text=True,
)
print("exit code:", proc.returncode)
for line in proc.stdout.splitlines():
    report = json.loads(line)
    key = next(k for k in ("result", "error") if k in report)
    summary = json.dumps(report[key], sort_keys=True)
    if len(summary) > 100:
        summary = summary[:97] + "..."
    print(f"{report['command']:45s} -> {summary}")
