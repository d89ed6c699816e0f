"""Serializable run records, the JSON Lines cache and CSV emission."""

from __future__ import annotations

import csv
import io
import json
import os
from dataclasses import asdict, dataclass, field
from datetime import datetime, timezone
from typing import Optional

import mpmath

SCHEMA_VERSION = 1

CSV_HEADER = [
    "q", "mod8", "h", "j", "r", "m", "epsilon_id", "L", "omega", "sha_analytic",
    "sha_rounded", "abs_error", "is_square", "precision", "X", "runtime_ms",
]


def fmt(x, digits: int) -> str:
    """Decimal string with ``digits`` significant digits."""
    return mpmath.nstr(x, digits)


@dataclass
class RunRecord:
    schema_version: int
    q: int
    precision: int
    mod8: int = 0
    h: int = 0
    j: int = 0
    r: int = 0
    m: int = 0
    epsilon_id: int = 0
    selection_rule: str = ""
    L: str = ""
    omega: str = ""
    sha_analytic: str = ""
    sha_rounded: int = 0
    abs_error: str = ""
    is_square: bool = False
    integral: bool = False
    X: int = 0
    working_digits: int = 0
    per_char: list = field(default_factory=list)
    candidates: list = field(default_factory=list)
    anchor: Optional[dict] = None
    error: Optional[str] = None
    # excluded from equality: wall-clock data differs run to run
    timing: dict = field(default_factory=dict, compare=False)

    def to_json(self) -> str:
        return json.dumps(asdict(self), sort_keys=True, ensure_ascii=False)

    @classmethod
    def from_json(cls, line: str) -> "RunRecord":
        data = json.loads(line)
        if "schema_version" not in data:
            raise ValueError("record without schema_version")
        return cls(**data)

    def deterministic_dict(self) -> dict:
        d = asdict(self)
        d.pop("timing")
        return d

    def csv_row(self, timings: bool = False) -> list:
        return [
            self.q, self.mod8, self.h, self.j, self.r, self.m, self.epsilon_id, self.L,
            self.omega, self.sha_analytic, self.sha_rounded, self.abs_error,
            "true" if self.is_square else "false", self.precision, self.X,
            self.timing.get("runtime_ms", "") if timings else "",
        ]


def _iso(t: float) -> str:
    return datetime.fromtimestamp(t, tz=timezone.utc).isoformat()


def record_from_result(res, ctx) -> RunRecord:
    """Build a RunRecord from a pipeline ``QResult``."""
    P = ctx.decimal_digits
    rep = res.report
    work = res.work_ctx or ctx
    # enough digits to show the integer part of Sha and P digits after it
    sha_digits = work.decimal_digits
    with work.activate():
        per_char = [
            {
                "chi": c.label,
                "L_re": fmt(c.L.real, P),
                "L_im": fmt(c.L.imag, P),
                "W_re": fmt(c.W.real, P),
                "W_im": fmt(c.W.imag, P),
                "unitarity_residual": fmt(c.unitarity_residual, 5),
                "cutoff_residual": fmt(c.cutoff_residual, 5),
            }
            for c in res.lseries.per_char
        ]
        candidates = [
            {
                "epsilon_id": c.rho.epsilon.ident,
                "epsilon": c.rho.epsilon.describe(),
                "L": fmt(c.report.L, P),
                "sha_analytic": fmt(c.report.sha_analytic, sha_digits),
                "sha_rounded": c.report.sha_rounded,
                "abs_error": fmt(c.report.abs_error, 5),
            }
            for c in res.candidates
        ]
        anchor = None
        if res.anchor is not None:
            anchor = {
                "sign_choice": res.anchor.sign_choice,
                "primes": res.anchor.n_primes,
                "matched_epsilon_ids": list(res.anchor.matched),
            }
        return RunRecord(
            schema_version=SCHEMA_VERSION,
            q=res.q,
            precision=P,
            mod8=rep.mod8,
            h=rep.h,
            j=rep.j,
            r=rep.r,
            m=rep.m,
            epsilon_id=rep.epsilon_id,
            selection_rule=res.selection_rule,
            L=fmt(rep.L, P),
            omega=fmt(rep.omega, P),
            sha_analytic=fmt(rep.sha_analytic, sha_digits),
            sha_rounded=rep.sha_rounded,
            abs_error=fmt(rep.abs_error, 5),
            is_square=rep.is_perfect_square,
            integral=rep.integral(),
            X=rep.X,
            working_digits=work.decimal_digits,
            per_char=per_char,
            candidates=candidates,
            anchor=anchor,
            timing={
                "runtime_ms": res.runtime_ms,
                "started_at": _iso(res.started_at),
                "finished_at": _iso(res.finished_at),
            },
        )


def error_record(q: int, precision: int, message: str) -> RunRecord:
    return RunRecord(SCHEMA_VERSION, q, precision, mod8=q % 8, error=message)


def load_cache(path: str) -> dict[int, RunRecord]:
    """Latest record per q; unreadable or foreign-schema lines are skipped."""
    out: dict[int, RunRecord] = {}
    if not os.path.exists(path):
        return out
    with open(path, encoding="utf-8") as fh:
        for line in fh:
            line = line.strip()
            if not line:
                continue
            try:
                rec = RunRecord.from_json(line)
            except (ValueError, TypeError):
                continue
            if rec.schema_version != SCHEMA_VERSION:
                continue
            prev = out.get(rec.q)
            if prev is None or prev.error or (rec.error is None and rec.precision >= prev.precision):
                out[rec.q] = rec
    return out


def write_csv(records, fh, timings: bool = False) -> None:
    writer = csv.writer(fh, lineterminator="\n")
    writer.writerow(CSV_HEADER)
    for rec in sorted(records, key=lambda r: r.q):
        writer.writerow(rec.csv_row(timings))


def csv_text(records, timings: bool = False) -> str:
    buf = io.StringIO()
    write_csv(records, buf, timings)
    return buf.getvalue()
