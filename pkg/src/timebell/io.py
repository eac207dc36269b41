"""Run manifests, output tables and record/summary files.

File formats (UTF-8, LF line endings):

* ``manifest.json`` / ``summary.json``: one JSON object, sorted keys.
  Floats are written with ``repr``, which round-trips exactly.
* ``records.csv``: header ``k,setting1,setting2,outcome1,outcome2`` then one
  pair per line; settings are 0/1, outcomes ``+1``/``-1``.
* tables: comma-separated with a header row; floats use 17 significant digits.
"""

import csv
import io
import json
import math
from dataclasses import asdict, dataclass, field
from datetime import datetime, timezone

from . import __version__
from .experiment import RNG_ALGORITHM, ChshEstimate, Records

MANIFEST_NAME = "manifest.json"
RECORDS_NAME = "records.csv"
SUMMARY_NAME = "summary.json"
RECORD_FIELDS = ("k", "setting1", "setting2", "outcome1", "outcome2")


def format_number(x):
    if isinstance(x, float):
        return format(x, ".17g")
    return str(x)


@dataclass(frozen=True)
class RunManifest:
    command: str
    params: dict
    version: str = __version__
    rng: str = RNG_ALGORITHM
    timestamp: str = field(default_factory=lambda: datetime.now(timezone.utc).isoformat())

    def to_json(self):
        return json.dumps(asdict(self), sort_keys=True, indent=2) + "\n"

    @classmethod
    def from_json(cls, text):
        return cls(**json.loads(text))


@dataclass(frozen=True)
class OutputTable:
    columns: tuple
    rows: tuple = ()

    def __post_init__(self):
        object.__setattr__(self, "columns", tuple(self.columns))
        object.__setattr__(self, "rows", tuple(tuple(r) for r in self.rows))
        for r in self.rows:
            if len(r) != len(self.columns):
                raise ValueError(f"row {r!r} has {len(r)} cells, expected {len(self.columns)}")

    def to_csv(self):
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(self.columns)
        for r in self.rows:
            w.writerow(["" if c is None else format_number(c) for c in r])
        return buf.getvalue()


def records_to_csv(records):
    lines = [",".join(RECORD_FIELDS)]
    for k, s1, s2, o1, o2 in zip(records.k.tolist(), records.setting1.tolist(), records.setting2.tolist(),
                                 records.outcome1.tolist(), records.outcome2.tolist()):
        lines.append(f"{k},{s1},{s2},{o1:+d},{o2:+d}")
    return "\n".join(lines) + "\n"


def records_from_csv(text):
    reader = csv.reader(io.StringIO(text))
    header = next(reader, None)
    if header is None or tuple(header) != RECORD_FIELDS:
        raise ValueError(f"records file must start with header {','.join(RECORD_FIELDS)}")
    cols = [[] for _ in RECORD_FIELDS]
    for lineno, row in enumerate(reader, start=2):
        if len(row) != len(RECORD_FIELDS):
            raise ValueError(f"line {lineno}: expected {len(RECORD_FIELDS)} fields, got {len(row)}")
        for c, v in zip(cols, row):
            c.append(int(v))
    return Records(*cols)


def summary_to_json(estimate, analytic_value):
    doc = {
        "chsh_value": estimate.value,
        "stderr": estimate.stderr,
        "n_pairs": estimate.n_pairs,
        "per_setting": [{"correlation": c, "count": n} for c, n in estimate.per_setting],
        "analytic_value": analytic_value,
        "deviation_in_stderr": (
            abs(estimate.value - analytic_value) / estimate.stderr if estimate.stderr > 0 else math.inf
        ),
    }
    return json.dumps(doc, sort_keys=True, indent=2) + "\n"


def estimate_from_summary(text):
    doc = json.loads(text)
    return ChshEstimate(
        value=doc["chsh_value"],
        stderr=doc["stderr"],
        per_setting=tuple((p["correlation"], p["count"]) for p in doc["per_setting"]),
    )


def write_text(path, text):
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        fh.write(text)


def read_text(path):
    with open(path, encoding="utf-8") as fh:
        return fh.read()
