"""Per-candidate verdicts and the aggregate replay report, with JSON/CSV/text serialization."""

from __future__ import annotations

import csv
import io
import json
from collections import Counter
from dataclasses import dataclass, field
from datetime import datetime, timezone
from enum import Enum
from typing import Optional


class Verdict(str, Enum):
    TAIL_BOUND = "tail_bound"
    HEIGHT_BOUND_EXCEEDED = "height_bound_exceeded"
    QUOTIENT_TOO_SMALL = "quotient_too_small"
    DIVISIBILITY_FAILED = "divisibility_failed"
    NOT_A_CANDIDATE = "not_a_candidate"
    SURVIVED = "survived"

    @property
    def eliminating(self) -> bool:
        return self is not Verdict.SURVIVED


@dataclass(frozen=True)
class EliminationRecord:
    k: int
    r: int
    decomposition: Optional[tuple[int, int]]
    verdict: Verdict
    evidence: dict[str, int] = field(default_factory=dict)

    def to_dict(self) -> dict:
        a, b = self.decomposition if self.decomposition else (None, None)
        return {
            "k": self.k,
            "r": str(self.r),
            "a": None if a is None else str(a),
            "b": None if b is None else str(b),
            "verdict": self.verdict.value,
            "evidence": {key: str(v) for key, v in self.evidence.items()},
        }

    @classmethod
    def from_dict(cls, d: dict) -> EliminationRecord:
        dec = None if d["a"] is None else (int(d["a"]), int(d["b"]))
        return cls(
            k=int(d["k"]),
            r=int(d["r"]),
            decomposition=dec,
            verdict=Verdict(d["verdict"]),
            evidence={key: int(v) for key, v in d["evidence"].items()},
        )


def _now() -> str:
    return datetime.now(timezone.utc).strftime("%Y-%m-%dT%H:%M:%SZ")


@dataclass
class ReplayReport:
    case: str
    records: list[EliminationRecord]
    census: dict[str, int]
    checks: dict[str, bool]
    closed: bool
    notes: list[str] = field(default_factory=list)
    tool_version: str = ""
    timestamp: str = field(default_factory=_now)

    def __post_init__(self):
        if not self.tool_version:
            from . import __version__

            self.tool_version = __version__

    @property
    def survivors(self) -> list[EliminationRecord]:
        return [rec for rec in self.records if not rec.verdict.eliminating]

    def verdict_histogram(self) -> dict[str, int]:
        counts = Counter(rec.verdict.value for rec in self.records)
        return dict(sorted(counts.items()))

    def to_dict(self) -> dict:
        return {
            "case": self.case,
            "closed": self.closed,
            "census": dict(self.census),
            "checks": dict(self.checks),
            "notes": list(self.notes),
            "records": [rec.to_dict() for rec in self.records],
            "tool_version": self.tool_version,
            "timestamp": self.timestamp,
        }

    @classmethod
    def from_dict(cls, d: dict) -> ReplayReport:
        return cls(
            case=d["case"],
            records=[EliminationRecord.from_dict(x) for x in d["records"]],
            census={key: int(v) for key, v in d["census"].items()},
            checks={key: bool(v) for key, v in d.get("checks", {}).items()},
            closed=bool(d["closed"]),
            notes=list(d.get("notes", [])),
            tool_version=d.get("tool_version", ""),
            timestamp=d.get("timestamp", ""),
        )

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=2) + "\n"

    @classmethod
    def from_json(cls, text: str) -> ReplayReport:
        return cls.from_dict(json.loads(text))

    def to_csv(self) -> str:
        buf = io.StringIO()
        writer = csv.writer(buf, lineterminator="\n")
        writer.writerow(["k", "r", "a", "b", "verdict", "evidence"])
        for rec in self.records:
            d = rec.to_dict()
            ev = ";".join(f"{key}={v}" for key, v in d["evidence"].items())
            writer.writerow([d["k"], d["r"], d["a"] or "", d["b"] or "", d["verdict"], ev])
        return buf.getvalue()

    def to_text(self) -> str:
        lines = [f"case: {self.case}", f"closed: {'yes' if self.closed else 'NO'}"]
        lines.append("census:")
        lines += [f"  {key}: {v}" for key, v in self.census.items()]
        lines.append("checks:")
        lines += [f"  {key}: {'ok' if v else 'FAILED'}" for key, v in self.checks.items()]
        if self.records:
            lines.append("verdicts:")
            lines += [f"  {key}: {v}" for key, v in self.verdict_histogram().items()]
        for rec in self.survivors:
            lines.append(f"SURVIVOR k={rec.k} r={rec.r} evidence={rec.evidence}")
        lines += [f"note: {n}" for n in self.notes]
        return "\n".join(lines) + "\n"

    def render(self, fmt: str) -> str:
        if fmt == "json":
            return self.to_json()
        if fmt == "csv":
            return self.to_csv()
        if fmt == "text":
            return self.to_text()
        raise ValueError(f"unknown format {fmt!r}")


def strip_timestamp(d: dict) -> dict:
    return {key: v for key, v in d.items() if key != "timestamp"}
