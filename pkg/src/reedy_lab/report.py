"""Machine-readable reports: a list of named checks with witnesses and tables.

Everything stored in a report is normalized to JSON-native values when it is
added, so ``Report.from_json(r.to_json()) == r`` holds exactly.  The JSON text
is canonical (sorted keys, fixed indentation); the wall-clock field is the
only part that may differ between two runs with the same seed.
"""
from __future__ import annotations

import dataclasses
import json
from dataclasses import dataclass, field as dc_field
from fractions import Fraction

from .linalg import Mat

FORMAT = 1
PASS = "PASS"
FAIL = "FAIL"


def jsonable(obj):
    """A JSON-native copy of obj: scalars become ints or 'p/q' strings, keys become strings."""
    if obj is None or isinstance(obj, (bool, str)):
        return obj
    if isinstance(obj, int):
        return int(obj)
    if isinstance(obj, float):
        return obj
    if isinstance(obj, Fraction) or type(obj).__name__ == "mpq":
        return int(obj.numerator) if obj.denominator == 1 else f"{obj.numerator}/{obj.denominator}"
    if isinstance(obj, Mat):
        return [[jsonable(x) for x in row] for row in obj.a]
    if isinstance(obj, dict):
        return {_key(k): jsonable(v) for k, v in obj.items()}
    if isinstance(obj, (set, frozenset)):
        return sorted((jsonable(x) for x in obj), key=lambda v: json.dumps(v, sort_keys=True))
    if isinstance(obj, (list, tuple)):
        return [jsonable(x) for x in obj]
    if dataclasses.is_dataclass(obj):
        return {f.name: jsonable(getattr(obj, f.name)) for f in dataclasses.fields(obj)}
    if hasattr(obj, "to_json"):
        return jsonable(obj.to_json())
    return str(obj)


def _key(k) -> str:
    if isinstance(k, tuple):
        return "->".join(str(x) for x in k)
    return str(k)


@dataclass
class Check:
    name: str
    passed: bool
    witnesses: object = None
    scope: str = "EXACT"

    def __post_init__(self):
        self.passed = bool(self.passed)
        self.witnesses = jsonable(self.witnesses)


@dataclass
class Report:
    command: str
    instance: str
    field: str
    seed: int
    checks: list = dc_field(default_factory=list)
    tables: dict = dc_field(default_factory=dict)
    status: str = ""                 # "", or an error tag when the run stopped early
    message: str = ""
    wall_clock_seconds: float | None = None

    def add(self, name: str, passed: bool, witnesses=None, scope: str = "EXACT") -> Check:
        c = Check(name, passed, witnesses, scope)
        self.checks.append(c)
        return c

    def table(self, name: str, value) -> None:
        self.tables[name] = jsonable(value)

    @property
    def passed(self) -> bool:
        return not self.status and all(c.passed for c in self.checks)

    def canonicalize(self) -> None:
        self.checks.sort(key=lambda c: c.name)

    def to_dict(self, wall_clock: bool = True) -> dict:
        d = {
            "format": FORMAT,
            "command": self.command,
            "instance": self.instance,
            "field": self.field,
            "seed": self.seed,
            "verdict": PASS if self.passed else FAIL,
            "status": self.status,
            "message": self.message,
            "checks": [{"name": c.name, "passed": c.passed, "witnesses": c.witnesses, "scope": c.scope}
                       for c in self.checks],
            "tables": self.tables,
        }
        if wall_clock:
            d["wall_clock_seconds"] = self.wall_clock_seconds
        return d

    def to_json(self, wall_clock: bool = True) -> str:
        return json.dumps(self.to_dict(wall_clock), sort_keys=True, indent=2) + "\n"

    @classmethod
    def from_dict(cls, d: dict) -> "Report":
        if d.get("format") != FORMAT:
            raise ValueError(f"unsupported report format {d.get('format')!r}")
        r = cls(d["command"], d["instance"], d["field"], d["seed"], [], dict(d["tables"]),
                d.get("status", ""), d.get("message", ""), d.get("wall_clock_seconds"))
        r.checks = [Check(c["name"], c["passed"], c["witnesses"], c["scope"]) for c in d["checks"]]
        return r

    @classmethod
    def from_json(cls, text: str) -> "Report":
        return cls.from_dict(json.loads(text))

    def to_text(self) -> str:
        lines = [f"{self.command} on {self.instance} over {self.field} (seed {self.seed}): "
                 f"{PASS if self.passed else FAIL}"]
        if self.status:
            lines.append(f"  stopped: {self.status}: {self.message}")
        for c in self.checks:
            tag = PASS if c.passed else FAIL
            extra = "" if c.scope == "EXACT" else f" [{c.scope}]"
            lines.append(f"  {tag:4} {c.name}{extra}")
            if not c.passed and c.witnesses not in (None, [], {}):
                lines.append(f"       witness: {json.dumps(c.witnesses, sort_keys=True)[:300]}")
        for name in sorted(self.tables):
            lines.append(f"  {name}: {json.dumps(self.tables[name], sort_keys=True)[:400]}")
        return "\n".join(lines) + "\n"
