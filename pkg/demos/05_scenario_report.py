# Running scenarios from Python and reading the report back.
import json
import tempfile
from pathlib import Path

from teletwist.scenario import emit_report, parse_run, read_report, run_configs

configs = parse_run(json.dumps([
    {"scenario": "teleport", "group": {"family": "zn-pair", "N": 4}, "samples": 5, "id": "zn4"},
    {"scenario": "sweep-lambda", "lambda": [0.0, 0.5, 0.9], "id": "sweep"},
]))

# %% rows from both scenarios, merged in config order
report = run_configs(configs, seed=11)
print("all passed:", report.passed, " rows:", len(report.rows))

# %% CSV on disk, 17 significant digits, metadata as comment lines
with tempfile.TemporaryDirectory() as tmp:
    path = Path(tmp) / "report.csv"
    emit_report(report, "csv", path)
    print(path.read_text().splitlines()[:6])
    back = read_report(path)
    print("round trip equal:", back.rows == report.rows)
