"""Corpus and graph statistics."""
from __future__ import annotations

from collections import Counter
from dataclasses import dataclass, field
from typing import Iterable

from .graph import EdgeKind, KnowledgeGraph, NodeKind
from .lexicon import SkillLexicon
from .parser import ResumeRecord


@dataclass
class CorpusStats:
    resume_count: int = 0
    distinct_skills: int = 0
    avg_skills_per_resume: float = 0.0
    avg_projects_per_resume: float = 0.0
    skills_by_category: dict[str, int] = field(default_factory=dict)

    def to_dict(self) -> dict:
        return {
            "resume_count": self.resume_count,
            "distinct_skills": self.distinct_skills,
            "avg_skills_per_resume": self.avg_skills_per_resume,
            "avg_projects_per_resume": self.avg_projects_per_resume,
            "skills_by_category": dict(sorted(self.skills_by_category.items())),
        }


def compute_stats(records: Iterable[ResumeRecord], lexicon: SkillLexicon) -> CorpusStats:
    """Counts and means over parsed records (declared skills)."""
    records = list(records)
    if not records:
        return CorpusStats()
    all_skills: set[str] = set()
    skill_total = 0
    project_total = 0
    for record in records:
        all_skills |= record.declared_skills
        skill_total += len(record.declared_skills)
        project_total += len(record.experiences)
    categories = Counter(lexicon.category_of(s) or "uncategorized" for s in all_skills)
    return CorpusStats(
        resume_count=len(records),
        distinct_skills=len(all_skills),
        avg_skills_per_resume=skill_total / len(records),
        avg_projects_per_resume=project_total / len(records),
        skills_by_category=dict(categories),
    )


def compute_graph_stats(graph: KnowledgeGraph) -> CorpusStats:
    """Same statistics read off a built graph (skills = jobseeker-skill edges)."""
    resume_count = len(graph.jobseeker_ids())
    if resume_count == 0:
        return CorpusStats()
    skill_edges = sum(1 for _ in graph.edges_of_kind(EdgeKind.JOBSEEKER_SKILL))
    project_edges = sum(1 for _ in graph.edges_of_kind(EdgeKind.JOBSEEKER_PROJECT))
    categories = Counter(
        graph.nodes[node].get("category") or "uncategorized"
        for node in graph.nodes
        if node.kind is NodeKind.SKILL
    )
    return CorpusStats(
        resume_count=resume_count,
        distinct_skills=len(graph.skill_keys()),
        avg_skills_per_resume=skill_edges / resume_count,
        avg_projects_per_resume=project_edges / resume_count,
        skills_by_category=dict(categories),
    )
