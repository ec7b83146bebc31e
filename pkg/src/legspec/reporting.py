"""Machine-readable check records and suite reports.

Every record pairs a measured value with its threshold and a stable
``anchor`` slug naming the mathematical claim it verifies, so reports
stay traceable when thresholds are overridden.  Reports serialize to a
versioned JSON schema; the wall-time field is the only entry excluded
from the byte-stability contract (it is placed last and may be stripped
for comparisons).
"""

import json
import time

from . import __version__

SCHEMA_VERSION = 1

PASS = "pass"
FAIL = "fail"
DEGENERATE = "degenerate"
INCONCLUSIVE = "inconclusive"
INFO = "info"


class CheckRecord:
    def __init__(self, name, anchor, kind, value, threshold, status, details=None):
        self.name = name
        self.anchor = anchor
        self.kind = kind
        self.value = value
        self.threshold = threshold
        self.status = status
        self.details = details or {}

    def as_dict(self):
        out = {
            "name": self.name,
            "anchor": self.anchor,
            "kind": self.kind,
            "value": self.value,
            "threshold": self.threshold,
            "status": self.status,
        }
        if self.details:
            out["details"] = self.details
        return out

    def line(self):
        thr = "" if self.threshold is None else f" (threshold {self.threshold:g})"
        val = f"{self.value:.3e}" if isinstance(self.value, float) else f"{self.value}"
        return f"[{self.status.upper():>12}] {self.name}: {val}{thr}"


def residual_record(name, anchor, value, threshold, degenerate=False, details=None):
    if degenerate:
        status = DEGENERATE
    else:
        status = PASS if value <= threshold else FAIL
    return CheckRecord(name, anchor, "residual", float(value), float(threshold), status, details)


def count_record(name, anchor, value, expected, details=None):
    status = PASS if value == expected else FAIL
    det = dict(details or {}, expected=expected)
    return CheckRecord(name, anchor, "count", int(value), None, status, det)


def bound_record(name, anchor, verdict, details=None):
    if verdict.inconclusive:
        status = INCONCLUSIVE
    else:
        status = PASS if verdict.passed else FAIL
    det = dict(details or {}, **verdict.diagnostics, equality=verdict.equality)
    return CheckRecord(name, anchor, "bound", int(verdict.diagnostics.get("multiplicity", -1)), None, status, det)


def info_record(name, anchor, value, details=None):
    return CheckRecord(name, anchor, "info", value, None, INFO, details)


class Report:
    """Outcome of one suite run: config echo plus ordered records."""

    def __init__(self, suite, config_echo):
        self.suite = suite
        self.config_echo = config_echo
        self.records = []
        self._t0 = time.perf_counter()
        self.wall_time_s = None

    def extend(self, records):
        self.records.extend(records)

    def finish(self):
        self.wall_time_s = time.perf_counter() - self._t0
        return self

    def counts(self):
        out = {PASS: 0, FAIL: 0, DEGENERATE: 0, INCONCLUSIVE: 0, INFO: 0}
        for r in self.records:
            out[r.status] += 1
        return out

    def exit_code(self):
        c = self.counts()
        if c[FAIL]:
            return 1
        if c[INCONCLUSIVE]:
            return 2
        return 0

    def as_dict(self, include_timing=True):
        out = {
            "schema": SCHEMA_VERSION,
            "suite": self.suite,
            "toolkit_version": __version__,
            "config": self.config_echo,
            "checks": [r.as_dict() for r in self.records],
            "counts": self.counts(),
        }
        if include_timing:
            out["wall_time_s"] = self.wall_time_s
        return out

    def to_json(self, include_timing=True):
        return json.dumps(self.as_dict(include_timing), indent=2) + "\n"

    def print_lines(self, stream=None):
        import sys

        stream = stream or sys.stdout
        for r in self.records:
            print(r.line(), file=stream)
        c = self.counts()
        wt = f" in {self.wall_time_s:.2f}s" if self.wall_time_s is not None else ""
        print(
            f"suite '{self.suite}': {c[PASS]} pass, {c[FAIL]} fail, "
            f"{c[DEGENERATE]} degenerate, {c[INCONCLUSIVE]} inconclusive, "
            f"{c[INFO]} info{wt}",
            file=stream,
        )
