"""The nested jobseeker -> org -> project exchange document.

Shape::

    {
      "schema_version": 1,
      "jobseekers": {
        "js0000-jane-doe": {
          "_name": "Jane Doe",
          "_declared_skills": ["c++", "java"],
          "acme": {
            "project1": {
              "title": "Payment Platform",
              "duration": "Jan 2020 - Jun 2021",
              "details": "...",
              "seq": 0
            }
          }
        }
      }
    }

Inside a jobseeker object every non-underscore key is an organization
holding its projects; the reserved "_name" and "_declared_skills" siblings
carry what the org nesting cannot. Duration strings are preserved raw and
re-parsed to months on load (deterministically). The optional "seq" field
records each experience's position in the original record so grouping by
organization stays order-lossless.

Jobseekers are keyed, not ordered: loading returns records sorted by
jobseeker id, which is the corpus order for parser-assigned ids.
"""
from __future__ import annotations

import json
from pathlib import Path
from typing import Iterable

from .errors import DocumentFormatError, DuplicateJobseekerError
from .parser import ExperienceEntry, ResumeRecord, parse_duration

DOCUMENT_SCHEMA_VERSION = 1

_RESERVED_NAME = "_name"
_RESERVED_SKILLS = "_declared_skills"


def emit_intermediate(records: Iterable[ResumeRecord]) -> dict:
    """Serialize records into the exchange document (plain dict)."""
    jobseekers: dict[str, dict] = {}
    for record in records:
        if record.jobseeker_id in jobseekers:
            raise DuplicateJobseekerError(
                f"jobseeker {record.jobseeker_id!r} emitted twice"
            )
        body: dict = {
            _RESERVED_NAME: record.name,
            _RESERVED_SKILLS: sorted(record.declared_skills),
        }
        counters: dict[str, int] = {}
        for seq, exp in enumerate(record.experiences):
            org = body.setdefault(exp.organization, {})
            counters[exp.organization] = counters.get(exp.organization, 0) + 1
            org[f"project{counters[exp.organization]}"] = {
                "title": exp.project_title,
                "duration": exp.duration_raw,
                "details": exp.details,
                "seq": seq,
            }
        jobseekers[record.jobseeker_id] = body
    return {"schema_version": DOCUMENT_SCHEMA_VERSION, "jobseekers": jobseekers}


def _require_str(value: object, path: str) -> str:
    if not isinstance(value, str):
        raise DocumentFormatError(f"{path}: expected a string")
    return value


def load_intermediate(doc: dict) -> list[ResumeRecord]:
    """Inverse of emit_intermediate, modulo duration re-parsing."""
    if not isinstance(doc, dict):
        raise DocumentFormatError("document must be an object")
    jobseekers = doc.get("jobseekers")
    if not isinstance(jobseekers, dict):
        raise DocumentFormatError("missing 'jobseekers' object")

    records = []
    for jobseeker_id in sorted(jobseekers):
        path = f"jobseekers.{jobseeker_id}"
        body = jobseekers[jobseeker_id]
        if not isinstance(body, dict):
            raise DocumentFormatError(f"{path}: expected an object")

        name = body.get(_RESERVED_NAME, "unknown")
        name = _require_str(name, f"{path}.{_RESERVED_NAME}")
        raw_skills = body.get(_RESERVED_SKILLS, [])
        if not isinstance(raw_skills, list) or any(
            not isinstance(s, str) for s in raw_skills
        ):
            raise DocumentFormatError(
                f"{path}.{_RESERVED_SKILLS}: expected a list of strings"
            )

        staged = []  # (seq, document order, org, project payload path, payload)
        order = 0
        for org, projects in body.items():
            if org.startswith("_"):
                if org not in (_RESERVED_NAME, _RESERVED_SKILLS):
                    raise DocumentFormatError(f"{path}.{org}: unknown reserved key")
                continue
            if not isinstance(projects, dict):
                raise DocumentFormatError(f"{path}.{org}: expected a project object")
            for pkey, payload in projects.items():
                ppath = f"{path}.{org}.{pkey}"
                if not isinstance(payload, dict):
                    raise DocumentFormatError(f"{ppath}: expected an object")
                for required in ("title", "duration", "details"):
                    if required not in payload:
                        raise DocumentFormatError(f"{ppath}.{required}: missing")
                    _require_str(payload[required], f"{ppath}.{required}")
                seq = payload.get("seq", order)
                if not isinstance(seq, int) or isinstance(seq, bool) or seq < 0:
                    raise DocumentFormatError(f"{ppath}.seq: expected a non-negative int")
                staged.append((seq, order, org, payload))
                order += 1

        experiences = []
        for seq, _, org, payload in sorted(staged, key=lambda item: (item[0], item[1])):
            raw_duration = payload["duration"]
            experiences.append(
                ExperienceEntry(
                    organization=org,
                    project_title=payload["title"],
                    duration_months=parse_duration(raw_duration),
                    details=payload["details"],
                    duration_raw=raw_duration,
                )
            )
        records.append(
            ResumeRecord(
                jobseeker_id=jobseeker_id,
                name=name,
                declared_skills=set(raw_skills),
                experiences=experiences,
            )
        )
    return records


def dumps_intermediate(records: Iterable[ResumeRecord]) -> str:
    return json.dumps(emit_intermediate(records), indent=2, sort_keys=True) + "\n"


def write_intermediate(records: Iterable[ResumeRecord], path: str | Path) -> None:
    Path(path).write_text(dumps_intermediate(records), encoding="utf-8")


def read_intermediate(path: str | Path) -> list[ResumeRecord]:
    try:
        raw = Path(path).read_text(encoding="utf-8")
    except OSError as exc:
        raise DocumentFormatError(f"cannot read document {path}: {exc}") from exc
    try:
        doc = json.loads(raw)
    except json.JSONDecodeError as exc:
        raise DocumentFormatError(f"{path}: not valid JSON ({exc})") from exc
    return load_intermediate(doc)
