"""Resume text parsing: sections, skills, durations, experience blocks.

The input is UTF-8 plain text, one resume per file. Parsing is deterministic
and never raises on messy content; anything unparseable lands in the parse
report as a diagnostic instead. Only an entirely empty input is an error.

Section splitting is line-anchored: a line whose stripped, lowercased text
(minus a trailing colon) equals one of the configured header keywords opens
that section. Text before the first recognized header is the identity block;
with no recognized header at all, the whole text is classified "other".

Experience blocks are paragraphs (blank-line separated) of the experience
section. A block is claimed as one project only when it contains a date or
duration pattern; inside such a block the leading lines are read as, in
order of appearance: date lines, the organization (first line that is
neither a date nor a skill alias), and the verbatim project title (the next
such line). Everything after the leading lines is the details text, kept as
one contiguous slice of the resume. Dateless blocks are skipped with a
diagnostic, so keep a project's description in the same paragraph as its
header lines.
"""
from __future__ import annotations

import re
from dataclasses import dataclass, field

from .errors import ResumeParseError
from .lexicon import SkillLexicon, normalize_skill
from .tokenization import DEFAULT_KEEP_CHARS, EMPTY_STOP_WORDS, tokenize

__all__ = [
    "DEFAULT_SECTION_HEADERS",
    "ExperienceEntry",
    "ParseReport",
    "ResumeRecord",
    "SectionMap",
    "extract_skills",
    "normalize_org",
    "parse_duration",
    "parse_resume",
    "split_sections",
    "tokenize",
]

# Header keyword -> section it opens. Matched as whole lines, case-insensitive,
# with an optional trailing colon.
DEFAULT_SECTION_HEADERS: dict[str, str] = {
    "skills": "skills",
    "technical skills": "skills",
    "skill set": "skills",
    "experience": "experience",
    "work experience": "experience",
    "professional experience": "experience",
    "projects": "experience",
    "employment history": "experience",
    "education": "other",
    "summary": "other",
    "objective": "other",
}

ORG_SUFFIXES = frozenset(
    "inc incorporated ltd limited llc llp pvt plc corp corporation co gmbh".split()
)

_MONTH_NAMES = (
    "jan(?:uary)?|feb(?:ruary)?|mar(?:ch)?|apr(?:il)?|may|jun(?:e)?|jul(?:y)?"
    "|aug(?:ust)?|sep(?:t(?:ember)?)?|oct(?:ober)?|nov(?:ember)?|dec(?:ember)?"
)
_SEP = r"\s*(?:-|–|—|to)\s*"
_MONTH_RANGE_RE = re.compile(
    rf"\b({_MONTH_NAMES})\.?\s+(\d{{4}}){_SEP}({_MONTH_NAMES})\.?\s+(\d{{4}})\b",
    re.IGNORECASE,
)
_YEAR_RANGE_RE = re.compile(rf"\b(\d{{4}}){_SEP}(\d{{4}})\b", re.IGNORECASE)
_YEARS_MONTHS_RE = re.compile(
    r"\b(\d+)\s*(?:years?|yrs?)(?:\s*(?:and\s+)?(\d+)\s*(?:months?|mos?))?\b",
    re.IGNORECASE,
)
_MONTHS_RE = re.compile(r"\b(\d+)\s*(?:months?|mos?)\b", re.IGNORECASE)

# Any substring recognizable by parse_duration; used to claim project blocks.
_DATE_SEARCH_RE = re.compile(
    "|".join(
        p.pattern
        for p in (_MONTH_RANGE_RE, _YEAR_RANGE_RE, _YEARS_MONTHS_RE, _MONTHS_RE)
    ),
    re.IGNORECASE,
)

_MONTH_NUM = {
    "jan": 1, "feb": 2, "mar": 3, "apr": 4, "may": 5, "jun": 6,
    "jul": 7, "aug": 8, "sep": 9, "oct": 10, "nov": 11, "dec": 12,
}

_SLUG_RE = re.compile(r"[^a-z0-9]+")


@dataclass
class SectionMap:
    """Text of each recognized resume section (header lines excluded)."""

    identity: str = ""
    skills: str = ""
    experience: str = ""
    other: str = ""


@dataclass
class ExperienceEntry:
    organization: str
    project_title: str
    duration_months: int
    details: str
    duration_raw: str = ""


@dataclass
class ResumeRecord:
    jobseeker_id: str
    name: str
    declared_skills: set[str]
    experiences: list[ExperienceEntry]


@dataclass
class ParseReport:
    """Human-readable diagnostics accumulated while parsing one resume."""

    diagnostics: list[str] = field(default_factory=list)

    def add(self, message: str) -> None:
        self.diagnostics.append(message)

    def to_list(self) -> list[str]:
        return list(self.diagnostics)


def _split_sections(
    text: str, headers: dict[str, str]
) -> tuple[SectionMap, bool]:
    buckets: dict[str, list[str]] = {
        "identity": [], "skills": [], "experience": [], "other": [],
    }
    current = "identity"
    saw_header = False
    for line in text.replace("\r\n", "\n").replace("\r", "\n").split("\n"):
        key = line.strip().lower().rstrip(":").strip()
        section = headers.get(key)
        if section is not None:
            current = section
            saw_header = True
            # A repeated section keeps a paragraph break so blocks never
            # straddle the splice point.
            if buckets[current]:
                buckets[current].append("")
            continue
        buckets[current].append(line)
    if not saw_header:
        buckets["other"] = buckets["identity"] + buckets["other"]
        buckets["identity"] = []
    sections = SectionMap(
        **{name: "\n".join(lines).strip("\n") for name, lines in buckets.items()}
    )
    return sections, saw_header


def split_sections(
    text: str, headers: dict[str, str] = DEFAULT_SECTION_HEADERS
) -> SectionMap:
    """Partition resume text into identity/skills/experience/other blocks."""
    return _split_sections(text, headers)[0]


def extract_skills(section_text: str, lexicon: SkillLexicon) -> set[str]:
    """Canonical skills found in the text, longest alias phrase first.

    Stop words are kept during matching so multi-word aliases containing
    them still resolve.
    """
    keep = DEFAULT_KEEP_CHARS + "".join(
        c for c in lexicon.token_chars() if c not in DEFAULT_KEEP_CHARS
    )
    tokens = tokenize(section_text, keep_chars=keep, stop_words=EMPTY_STOP_WORDS)
    phrase_index: dict[tuple[str, ...], str] = {}
    max_len = 1
    for alias, canonical in lexicon.alias_index.items():
        alias_tokens = tuple(tokenize(alias, keep_chars=keep, stop_words=EMPTY_STOP_WORDS))
        if alias_tokens:
            phrase_index[alias_tokens] = canonical
            max_len = max(max_len, len(alias_tokens))

    found: set[str] = set()
    i = 0
    while i < len(tokens):
        for n in range(min(max_len, len(tokens) - i), 0, -1):
            canonical = phrase_index.get(tuple(tokens[i : i + n]))
            if canonical is not None:
                found.add(canonical)
                i += n
                break
        else:
            i += 1
    return found


def parse_duration(raw: str, report: ParseReport | None = None) -> int:
    """Parse a duration string to whole months; 0 plus a diagnostic otherwise.

    Supported forms: "Jan 2020 - Jun 2021" (inclusive of both endpoint
    months), "2019 - 2021" (12 months per year of delta), "2 years",
    "18 months", "1 yr 6 months".
    """
    text = raw.strip().lower()

    m = _MONTH_RANGE_RE.fullmatch(text)
    if m:
        m1, y1, m2, y2 = m.groups()
        start = int(y1) * 12 + _MONTH_NUM[m1[:3]]
        end = int(y2) * 12 + _MONTH_NUM[m2[:3]]
        months = end - start + 1
        if months < 0:
            if report is not None:
                report.add(f"duration {raw!r}: end precedes start, treated as unknown")
            return 0
        return months

    m = _YEAR_RANGE_RE.fullmatch(text)
    if m:
        delta = int(m.group(2)) - int(m.group(1))
        if delta < 0:
            if report is not None:
                report.add(f"duration {raw!r}: end precedes start, treated as unknown")
            return 0
        return 12 * delta

    m = _YEARS_MONTHS_RE.fullmatch(text)
    if m:
        years, months = m.groups()
        return 12 * int(years) + int(months or 0)

    m = _MONTHS_RE.fullmatch(text)
    if m:
        return int(m.group(1))

    if report is not None:
        report.add(f"duration {raw!r}: unrecognized, treated as unknown")
    return 0


def normalize_org(raw: str) -> str:
    """Case-fold, trim punctuation and strip legal-form suffixes."""
    text = raw.strip().lower()
    text = re.sub(r"^[^a-z0-9]+", "", text)
    while True:
        text = text.rstrip(" \t.,;:&")
        words = text.split()
        if words and words[-1] in ORG_SUFFIXES:
            text = " ".join(words[:-1])
            continue
        break
    text = re.sub(r"\s+", " ", text)
    return text if text else "unknown-org"


def _first_nonempty_line(text: str) -> str:
    for line in text.split("\n"):
        if line.strip():
            return line.strip()
    return ""


def _slug(name: str) -> str:
    slug = _SLUG_RE.sub("-", name.lower()).strip("-")[:24].rstrip("-")
    return slug or "unnamed"


def _is_date_line(line: str) -> bool:
    return bool(_DATE_SEARCH_RE.fullmatch(line.strip("()[],;:. \t")))


def _parse_experience_block(
    block: str, lexicon: SkillLexicon, report: ParseReport
) -> ExperienceEntry:
    lines = block.split("\n")
    duration_raw = ""
    for line in lines:
        m = _DATE_SEARCH_RE.search(line)
        if m:
            duration_raw = m.group(0)
            break

    org_raw: str | None = None
    title: str | None = None
    details_start = len(lines)
    for idx, line in enumerate(lines):
        stripped = line.strip()
        if not stripped or _is_date_line(stripped):
            continue
        if normalize_skill(stripped.strip(".,;:"), lexicon) is not None:
            continue  # a bare skill line never names the org or the title
        if org_raw is None:
            org_raw = stripped
            continue
        if title is None:
            title = stripped
            continue
        details_start = idx
        break

    organization = normalize_org(org_raw or "")
    if org_raw is None:
        report.add(f"experience block {_first_nonempty_line(block)!r}: no organization line")
    if title is None:
        title = "untitled"
    months = parse_duration(duration_raw, report)
    details = "\n".join(lines[details_start:])
    return ExperienceEntry(
        organization=organization,
        project_title=title,
        duration_months=months,
        details=details,
        duration_raw=duration_raw,
    )


def parse_resume(
    text: str,
    lexicon: SkillLexicon,
    id_seed: int,
    headers: dict[str, str] = DEFAULT_SECTION_HEADERS,
) -> tuple[ResumeRecord, ParseReport]:
    """Parse one resume into a structured record plus diagnostics.

    ``id_seed`` is the caller's corpus counter; the jobseeker id is derived
    deterministically from it and the name slug, so re-parsing the same text
    with the same seed yields an identical record.
    """
    if not text.strip():
        raise ResumeParseError("resume text is empty")
    report = ParseReport()
    sections, saw_header = _split_sections(text, headers)

    # The name is the first non-empty line outside any recognized section:
    # the identity preamble when headers exist, the whole text otherwise.
    if saw_header:
        name = _first_nonempty_line(sections.identity)
    else:
        name = _first_nonempty_line(sections.other)
    if not name:
        name = "unknown"
        report.add("no name line found")
    else:
        report.add(f"name {name!r} taken from first line (low confidence heuristic)")

    declared = extract_skills(sections.skills, lexicon)

    experiences: list[ExperienceEntry] = []
    for block in re.split(r"\n\s*\n", sections.experience):
        if not block.strip():
            continue
        if not _DATE_SEARCH_RE.search(block):
            report.add(
                f"experience block {_first_nonempty_line(block)!r}: "
                "no date pattern, skipped"
            )
            continue
        experiences.append(_parse_experience_block(block, lexicon, report))

    record = ResumeRecord(
        jobseeker_id=f"js{id_seed:04d}-{_slug(name)}",
        name=name,
        declared_skills=declared,
        experiences=experiences,
    )
    return record, report
