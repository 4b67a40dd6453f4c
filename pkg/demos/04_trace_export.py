"""Writing a full audit trail of a consensus run.

Every round becomes a JSON document (or a set of CSV tables) and the run
ends with summary.json. The output directory defaults to a temporary one.
"""
import json
import sys
import tempfile
from pathlib import Path

from lingconsensus import emit_trace, load_fixture, run_consensus

problem = load_fixture()
result = run_consensus(problem)

out = Path(sys.argv[1]) if len(sys.argv) > 1 else Path(tempfile.mkdtemp(prefix="consensus-trace-"))
json_files = emit_trace(result.reports, out / "json", problem=problem, converged=result.converged)
csv_files = emit_trace(result.reports, out / "csv", "csv", problem=problem, converged=result.converged)

print(f"{len(json_files)} JSON files and {len(csv_files)} CSV files under {out}")
for path in sorted((out / "csv").glob("round-1-*.csv")):
    print("  ", path.name)

summary = json.loads((out / "json" / "summary.json").read_text())
print("rounds:", summary["rounds"], "converged:", summary["converged"])
print("winner:", summary["ranking"][0])
