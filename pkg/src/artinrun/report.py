"""Line-delimited JSON report records.

Every line is one JSON object with a ``kind`` field.  Integers are written
as plain decimal JSON numbers of unbounded width, and keys are sorted, so
the same record always renders to the same bytes.
"""

from __future__ import annotations

import json
from dataclasses import dataclass

from . import __version__
from .artin import ArtinEvent, Counts, RunReport, Termination, Verdict
from .polynomial import Polynomial

KINDS = ("event", "summary", "progress", "verification")


@dataclass(frozen=True)
class ReportLine:
    kind: str
    payload: dict

    def __post_init__(self):
        if self.kind not in KINDS:
            raise ValueError(f"unknown report kind {self.kind!r}")

    def dumps(self) -> str:
        return json.dumps({"kind": self.kind, **self.payload}, sort_keys=True, separators=(",", ":"))


def parse_line(line: str) -> ReportLine:
    doc = json.loads(line)
    kind = doc.pop("kind")
    return ReportLine(kind, doc)


def event_line(ev: ArtinEvent) -> ReportLine:
    return ReportLine("event", {
        "j": ev.j,
        "n": ev.n,
        "p": ev.p,
        "verdict": ev.verdict.value,
        "duplicate": ev.duplicate,
    })


def event_from_line(line: ReportLine) -> ArtinEvent:
    d = line.payload
    return ArtinEvent(d["j"], d["n"], d["p"], Verdict(d["verdict"]), d["duplicate"])


def summary_line(rep: RunReport) -> ReportLine:
    return ReportLine("summary", {
        "version": __version__,
        "fingerprint": rep.fingerprint,
        "f": rep.f.spec(),
        "g": rep.g,
        "n_range": list(rep.n_range),
        "stop_on_failure": rep.stop_on_failure,
        "use_abs": rep.use_abs,
        "r": rep.r,
        "c": rep.c,
        "first_failure": None if rep.first_failure is None else {"n": rep.first_failure[0], "p": rep.first_failure[1]},
        "n_scanned": list(rep.n_scanned),
        "counts": {
            "evaluated": rep.counts.evaluated,
            "prime": rep.counts.prime,
            "skipped_divides_g": rep.counts.skipped_divides_g,
        },
        "terminated": rep.terminated.value,
    })


def report_from_line(line: ReportLine) -> RunReport:
    """Rebuild a RunReport (without its event stream) from a summary line."""
    d = line.payload
    ff = d["first_failure"]
    return RunReport(
        f=Polynomial.parse(d["f"]),
        g=d["g"],
        n_range=tuple(d["n_range"]),
        stop_on_failure=d["stop_on_failure"],
        use_abs=d["use_abs"],
        r=d["r"],
        c=d["c"],
        first_failure=None if ff is None else (ff["n"], ff["p"]),
        n_scanned=tuple(d["n_scanned"]),
        counts=Counts(**d["counts"]),
        terminated=Termination(d["terminated"]),
    )


def verification_line(vr) -> ReportLine:
    inst = vr.instance
    return ReportLine("verification", {
        "version": __version__,
        "record": inst.name,
        "f": inst.f.spec(),
        "g": inst.g,
        "h": vr.h.spec(),
        "shift": vr.shift,
        "expected_c": inst.expected_c,
        "expected_n_range": None if inst.expected_n_range is None else list(inst.expected_n_range),
        "c": vr.c,
        "r": vr.f_run.r,
        "first_failure": None if vr.f_run.first_failure is None
        else {"n": vr.f_run.first_failure[0], "p": vr.f_run.first_failure[1]},
        "checks": [{"name": ch.name, "status": ch.status.value, "detail": ch.detail} for ch in vr.checks],
        "status": vr.status.value,
    })


def progress_line(**fields) -> ReportLine:
    return ReportLine("progress", fields)


def leaderboard_line(rank: int, entry, fingerprint: str) -> ReportLine:
    """Leaderboard export row; shares the summary schema's core fields.

    The wall-clock timestamp stays in the checkpoint only, so exports of
    identical searches are byte-identical.
    """
    row = entry.to_dict()
    del row["timestamp"]
    return ReportLine("summary", {
        "version": __version__,
        "fingerprint": fingerprint,
        "rank": rank,
        **row,
    })
