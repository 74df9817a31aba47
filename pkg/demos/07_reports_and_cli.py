"""
Reports as JSON and CSV
=======================

Every result is a dataclass. Reports serialize rationals as "n/d" strings and
read back bit for bit. The same records come out of the command line.
"""

import subprocess
import sys
import tempfile
from pathlib import Path

from ramexp import CoefficientSpec, direct_partial_sum, dumps, loads, record, to_csv

spec = CoefficientSpec.power(2)
series = direct_partial_sum(spec, 6, 100, checkpoints=[10, 50])
text = dumps(record(series, spec))
print(text)
assert loads(text)["report"]["checkpoints"][-1][1] == series.value
print(to_csv(series))

with tempfile.TemporaryDirectory() as tmp:
    path = Path(tmp) / "spec.json"
    path.write_text('{"family": "power", "s": 3, "overrides": [{"p": 2, "mode": "all_ones"}]}')
    for argv in (["sum", "--q", "4", "--a", "2", "--oracle"],
                 ["classify", "--spec", str(path), "--output", "csv"],
                 ["verify", "--suite", "holder", "--max", "64"]):
        out = subprocess.run([sys.executable, "-m", "ramexp", *argv], capture_output=True, text=True)
        print("$ ramexp", " ".join(argv), f"(exit {out.returncode})")
        print(out.stdout)
