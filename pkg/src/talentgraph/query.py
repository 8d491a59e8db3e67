"""Query DSL parsing, filtering and deterministic top-k ranking.

Grammar (case-insensitive)::

    query  := ["top" [N]] term ("," term)*
    term   := skill-phrase [range]
    range  := A "-" B   inclusive years, A <= B
            | A "+"     at least A years

Skill phrases are resolved through the lexicon's alias index, so
"CPP 8-10" and "c++ 8-10" are the same term. Trailing filler words
(candidate(s), resume(s), jobseeker(s)) are ignored, which keeps prose
queries like "top C++ candidates" valid.

A jobseeker matches a term when the jobseeker-skill edge exists and, for
bounded terms, the accumulated years fall inside the inclusive range.
Matches are ranked by the sum of per-skill strengths over the query terms,
ties broken lexicographically by jobseeker id, then truncated to top k.
"""
from __future__ import annotations

import re
from dataclasses import dataclass, field

from .errors import (
    EmptyQueryError,
    NodeNotFoundError,
    QueryError,
    QueryRangeError,
    UnknownSkillError,
)
from .graph import EdgeKind, KnowledgeGraph, NodeKind
from .lexicon import SkillLexicon, normalize_skill

DEFAULT_TOP_K = 10

_FILLER_WORDS = frozenset(
    "candidate candidates resume resumes jobseeker jobseekers".split()
)
_TOP_RE = re.compile(r"^\s*top\b(?:\s+(\d+)\b)?\s*", re.IGNORECASE)
_NUM = r"-?\d+(?:\.\d+)?"
_RANGE_RE = re.compile(rf"^(?P<phrase>.*?)\s+(?P<lo>{_NUM})\s*[-–]\s*(?P<hi>{_NUM})$")
_MIN_ONLY_RE = re.compile(rf"^(?P<phrase>.*?)\s+(?P<lo>{_NUM})\s*\+$")


@dataclass(frozen=True)
class QueryTerm:
    skill: str
    min_years: float | None = None
    max_years: float | None = None


@dataclass(frozen=True)
class Query:
    terms: tuple[QueryTerm, ...]
    top_k: int = DEFAULT_TOP_K


@dataclass
class RankedResult:
    jobseeker_id: str
    total_score: float
    per_skill: list[tuple[str, float, float]]  # (skill, strength, years)

    def to_dict(self) -> dict:
        return {
            "jobseeker_id": self.jobseeker_id,
            "total_score": self.total_score,
            "per_skill": [
                {"skill": s, "strength": strength, "years": years}
                for s, strength, years in self.per_skill
            ],
        }


def _strip_fillers(words: list[str]) -> list[str]:
    while words and words[-1].lower() in _FILLER_WORDS:
        words.pop()
    return words


def _parse_term(raw: str, lexicon: SkillLexicon) -> QueryTerm:
    text = " ".join(_strip_fillers(raw.split()))
    if not text:
        raise EmptyQueryError("empty query term")

    phrase, lo, hi = text, None, None
    m = _RANGE_RE.match(text)
    if m:
        phrase, lo, hi = m.group("phrase"), float(m.group("lo")), float(m.group("hi"))
    else:
        m = _MIN_ONLY_RE.match(text)
        if m:
            phrase, lo = m.group("phrase"), float(m.group("lo"))

    if lo is not None:
        if lo < 0 or (hi is not None and hi < 0):
            raise QueryRangeError(f"negative bound in {text!r}")
        if hi is not None and hi < lo:
            raise QueryRangeError(f"range {lo:g}-{hi:g} has min > max")

    skill = normalize_skill(phrase, lexicon)
    if skill is None:
        raise UnknownSkillError(phrase.strip())
    return QueryTerm(skill=skill, min_years=lo, max_years=hi)


def parse_query(text: str, lexicon: SkillLexicon) -> Query:
    """Parse the query DSL; unknown skills are an error, never dropped."""
    remainder = text
    top_k = DEFAULT_TOP_K
    m = _TOP_RE.match(text)
    if m:
        if m.group(1) is not None:
            top_k = int(m.group(1))
            if top_k <= 0:
                raise QueryError("top N must be positive")
        remainder = text[m.end():]

    raw_terms = [t for t in remainder.split(",") if t.strip()]
    if not raw_terms:
        raise EmptyQueryError("query contains no terms")

    terms = []
    seen: set[str] = set()
    for raw in raw_terms:
        term = _parse_term(raw, lexicon)
        if term.skill in seen:
            raise QueryError(f"duplicate skill {term.skill!r} in query")
        seen.add(term.skill)
        terms.append(term)
    return Query(terms=tuple(terms), top_k=top_k)


def _term_matches(graph: KnowledgeGraph, jobseeker_id: str, term: QueryTerm) -> bool:
    edge = graph.get_edge(EdgeKind.JOBSEEKER_SKILL, jobseeker_id, term.skill)
    if edge is None:
        return False
    years = edge.months_sum / 12.0
    if term.min_years is not None and years < term.min_years:
        return False
    if term.max_years is not None and years > term.max_years:
        return False
    return True


def execute(query: Query, graph: KnowledgeGraph) -> list[RankedResult]:
    """Filter jobseekers satisfying every term, rank by total strength."""
    results = []
    for jobseeker_id in graph.jobseeker_ids():
        if not all(_term_matches(graph, jobseeker_id, t) for t in query.terms):
            continue
        per_skill = []
        for term in query.terms:
            strength = graph.jobseeker_skill_strength(jobseeker_id, term.skill)
            years = graph.skill_years(jobseeker_id, term.skill)
            per_skill.append((term.skill, strength, years))
        total = sum(s for _, s, _ in per_skill)
        results.append(RankedResult(jobseeker_id, total, per_skill))
    results.sort(key=lambda r: (-r.total_score, r.jobseeker_id))
    return results[: query.top_k]


@dataclass
class TermExplanation:
    skill: str
    strength: float
    sentiment_mean: float
    duration_bonus: float
    years: float
    support_count: int
    projects: list[str]
    min_years: float | None
    max_years: float | None
    satisfied: bool

    def to_dict(self) -> dict:
        return {
            "skill": self.skill,
            "strength": self.strength,
            "sentiment_mean": self.sentiment_mean,
            "duration_bonus": self.duration_bonus,
            "years": self.years,
            "support_count": self.support_count,
            "projects": list(self.projects),
            "min_years": self.min_years,
            "max_years": self.max_years,
            "satisfied": self.satisfied,
        }


@dataclass
class Explanation:
    jobseeker_id: str
    total_score: float
    qualifies: bool
    terms: list[TermExplanation] = field(default_factory=list)

    def to_dict(self) -> dict:
        return {
            "jobseeker_id": self.jobseeker_id,
            "total_score": self.total_score,
            "qualifies": self.qualifies,
            "terms": [t.to_dict() for t in self.terms],
        }


def explain(jobseeker_id: str, query: Query, graph: KnowledgeGraph) -> Explanation:
    """Per-skill decomposition sufficient to recompute the ranking score."""
    if not graph.has_node(NodeKind.JOBSEEKER, jobseeker_id):
        raise NodeNotFoundError(f"no jobseeker node {jobseeker_id!r}")
    terms = []
    for term in query.terms:
        if graph.has_node(NodeKind.SKILL, term.skill):
            sentiment, bonus, years, support = graph.jobseeker_skill_parts(
                jobseeker_id, term.skill
            )
            projects = graph.supporting_projects(jobseeker_id, term.skill)
        else:
            sentiment, bonus, years, support, projects = 0.0, 0.0, 0.0, 0, []
        terms.append(
            TermExplanation(
                skill=term.skill,
                strength=sentiment + bonus,
                sentiment_mean=sentiment,
                duration_bonus=bonus,
                years=years,
                support_count=support,
                projects=projects,
                min_years=term.min_years,
                max_years=term.max_years,
                satisfied=_term_matches(graph, jobseeker_id, term),
            )
        )
    return Explanation(
        jobseeker_id=jobseeker_id,
        total_score=sum(t.strength for t in terms),
        qualifies=all(t.satisfied for t in terms),
        terms=terms,
    )
