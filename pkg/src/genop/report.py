"""Check reports and their JSON / table serialisation."""
import json
import math
from dataclasses import dataclass, field

SCHEMA_VERSION = 1
STATUSES = ("pass", "fail", "non-converged")


@dataclass
class CheckReport:
    check_name: str
    measured_residual: float
    tolerance: float
    resolution_trace: list = field(default_factory=list)
    provenance: str = ""
    floor: float = 0.0
    details: dict = field(default_factory=dict)

    @property
    def status(self):
        r = self.measured_residual
        if r is not None and math.isfinite(r) and r <= self.tolerance:
            return "pass"
        # the tolerance sits below what this resolution can certify
        if self.floor >= self.tolerance:
            return "non-converged"
        return "fail"

    def to_dict(self):
        return {
            "check_name": self.check_name,
            "status": self.status,
            "measured_residual": _num(self.measured_residual),
            "tolerance": _num(self.tolerance),
            "resolution_floor": _num(self.floor),
            "resolution_trace": [[_num(a), _num(b)] for a, b in self.resolution_trace],
            "provenance": self.provenance,
            "details": _jsonable(self.details),
        }


def _num(x):
    if x is None:
        return None
    if isinstance(x, (int,)) and not isinstance(x, bool):
        return x
    x = float(x)
    if math.isnan(x):
        return "nan"
    if math.isinf(x):
        return "inf" if x > 0 else "-inf"
    return x


def _jsonable(obj):
    if isinstance(obj, dict):
        return {str(k): _jsonable(v) for k, v in sorted(obj.items())}
    if isinstance(obj, (list, tuple)):
        return [_jsonable(v) for v in obj]
    if isinstance(obj, complex):
        return {"re": _num(obj.real), "im": _num(obj.imag)}
    if isinstance(obj, bool) or obj is None or isinstance(obj, str):
        return obj
    if hasattr(obj, "item"):  # numpy scalar
        return _jsonable(obj.item())
    if isinstance(obj, (int, float)):
        return _num(obj)
    return str(obj)


def summarize(reports):
    counts = {s: 0 for s in STATUSES}
    for r in reports:
        counts[r.status] += 1
    counts["total"] = len(reports)
    return counts


def build_document(reports, config_echo, version):
    reports = sorted(reports, key=lambda r: r.check_name)
    return {
        "schema_version": SCHEMA_VERSION,
        "version": version,
        "config": _jsonable(config_echo),
        "checks": [r.to_dict() for r in reports],
        "summary": summarize(reports),
    }


def to_json(doc):
    return json.dumps(doc, indent=2, sort_keys=True) + "\n"


def to_table(doc):
    rows = [("check", "status", "residual", "tolerance")]
    for c in doc["checks"]:
        rows.append((c["check_name"], c["status"], _fmt(c["measured_residual"]), _fmt(c["tolerance"])))
    widths = [max(len(r[i]) for r in rows) for i in range(4)]
    lines = ["  ".join(cell.ljust(w) for cell, w in zip(r, widths)).rstrip() for r in rows]
    lines.insert(1, "  ".join("-" * w for w in widths))
    s = doc["summary"]
    lines.append("")
    lines.append(f"{s['pass']} pass, {s['fail']} fail, {s['non-converged']} non-converged "
                 f"({s['total']} checks)")
    return "\n".join(lines) + "\n"


def _fmt(x):
    if isinstance(x, float):
        return f"{x:.3e}"
    return str(x)
