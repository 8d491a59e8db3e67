"""Weighted knowledge graph of jobseekers, skills, organizations, projects.

Edges carry (sum, count) accumulators rather than running means, so derived
strengths are exact averages independent of ingestion order, and two graphs
built from disjoint corpora can be merged by component-wise addition.

Construction per resume:

1. Ensure the jobseeker node and a skill node (plus a zero-accumulator
   jobseeker-skill edge) for every declared skill.
2. For each experience, ensure organization and project nodes with
   jobseeker-project and project-org edges; project keys are surrogate
   ("<jobseeker_id>:p<ordinal>") because project descriptions are never
   unified across resumes.
3. Score the description once (scope-free) and accumulate that same score
   into the skill-project edge of every skill mentioned in the details.
4. Accumulate the same score and the experience's months into the
   jobseeker-skill edge.
5. Accumulate the same score into the org-skill edge.
6. The accumulated months feed a bounded duration bonus at read time:
   strength = mean(score) + factor * min(months, cap) / cap.

After construction the graph is immutable by convention and safe for
concurrent reads; parallel ingestion builds shard graphs and merges them.
"""
from __future__ import annotations

import json
from dataclasses import dataclass
from enum import Enum
from pathlib import Path
from typing import Iterator

from .errors import (
    DuplicateJobseekerError,
    GraphConfigError,
    GraphFormatError,
    NodeNotFoundError,
)
from .lexicon import SentimentGazetteer, SkillLexicon
from .parser import ResumeRecord, extract_skills
from .scoring import score_description

GRAPH_SCHEMA_VERSION = 1


class NodeKind(str, Enum):
    JOBSEEKER = "jobseeker"
    SKILL = "skill"
    ORGANIZATION = "organization"
    PROJECT = "project"


class EdgeKind(str, Enum):
    JOBSEEKER_SKILL = "jobseeker_skill"
    SKILL_PROJECT = "skill_project"
    ORG_SKILL = "org_skill"
    JOBSEEKER_PROJECT = "jobseeker_project"
    PROJECT_ORG = "project_org"


EDGE_ENDPOINTS: dict[EdgeKind, tuple[NodeKind, NodeKind]] = {
    EdgeKind.JOBSEEKER_SKILL: (NodeKind.JOBSEEKER, NodeKind.SKILL),
    EdgeKind.SKILL_PROJECT: (NodeKind.SKILL, NodeKind.PROJECT),
    EdgeKind.ORG_SKILL: (NodeKind.ORGANIZATION, NodeKind.SKILL),
    EdgeKind.JOBSEEKER_PROJECT: (NodeKind.JOBSEEKER, NodeKind.PROJECT),
    EdgeKind.PROJECT_ORG: (NodeKind.PROJECT, NodeKind.ORGANIZATION),
}


@dataclass(frozen=True)
class NodeId:
    kind: NodeKind
    key: str


@dataclass
class WeightedEdge:
    kind: EdgeKind
    source: str
    target: str
    weight_sum: float = 0.0
    support_count: int = 0
    months_sum: int = 0

    def mean_weight(self) -> float:
        return self.weight_sum / self.support_count if self.support_count else 0.0


@dataclass(frozen=True)
class ScoringConfig:
    duration_bonus_factor: float = 0.5
    duration_cap_months: int = 120

    def __post_init__(self):
        if self.duration_bonus_factor < 0:
            raise ValueError("duration_bonus_factor must be >= 0")
        if self.duration_cap_months <= 0:
            raise ValueError("duration_cap_months must be positive")


def project_key(jobseeker_id: str, ordinal: int) -> str:
    return f"{jobseeker_id}:p{ordinal}"


class KnowledgeGraph:
    def __init__(self, config: ScoringConfig | None = None):
        self.config = config or ScoringConfig()
        self.nodes: dict[NodeId, dict[str, str]] = {}
        self.edges: dict[tuple[EdgeKind, str, str], WeightedEdge] = {}

    # -- construction -----------------------------------------------------

    def _ensure_node(self, node: NodeId, **attrs: str) -> None:
        if node not in self.nodes:
            self.nodes[node] = dict(attrs)

    def _edge(self, kind: EdgeKind, source: str, target: str) -> WeightedEdge:
        key = (kind, source, target)
        edge = self.edges.get(key)
        if edge is None:
            edge = WeightedEdge(kind=kind, source=source, target=target)
            self.edges[key] = edge
        return edge

    def add_resume(
        self,
        record: ResumeRecord,
        lexicon: SkillLexicon,
        gazetteer: SentimentGazetteer,
    ) -> "KnowledgeGraph":
        """Ingest one parsed resume; rejects an already-ingested jobseeker id."""
        jobseeker = NodeId(NodeKind.JOBSEEKER, record.jobseeker_id)
        if jobseeker in self.nodes:
            raise DuplicateJobseekerError(
                f"jobseeker {record.jobseeker_id!r} already ingested"
            )
        self._ensure_node(jobseeker, name=record.name)

        for skill in sorted(record.declared_skills):
            self._ensure_skill(skill, lexicon)
            self._edge(EdgeKind.JOBSEEKER_SKILL, record.jobseeker_id, skill)

        for ordinal, exp in enumerate(record.experiences):
            org = exp.organization
            self._ensure_node(NodeId(NodeKind.ORGANIZATION, org))
            pkey = project_key(record.jobseeker_id, ordinal)
            self._ensure_node(NodeId(NodeKind.PROJECT, pkey), title=exp.project_title)
            self._edge(
                EdgeKind.JOBSEEKER_PROJECT, record.jobseeker_id, pkey
            ).support_count += 1
            self._edge(EdgeKind.PROJECT_ORG, pkey, org).support_count += 1

            mentioned = extract_skills(exp.details, lexicon)
            if not mentioned:
                continue
            # One scope-free score per description: every skill mentioned in
            # it receives the identical contribution.
            score = score_description(exp.details, None, gazetteer).weight
            for skill in sorted(mentioned):
                self._ensure_skill(skill, lexicon)
                edge = self._edge(EdgeKind.SKILL_PROJECT, skill, pkey)
                edge.weight_sum += score
                edge.support_count += 1

                edge = self._edge(EdgeKind.JOBSEEKER_SKILL, record.jobseeker_id, skill)
                edge.weight_sum += score
                edge.support_count += 1
                edge.months_sum += exp.duration_months

                edge = self._edge(EdgeKind.ORG_SKILL, org, skill)
                edge.weight_sum += score
                edge.support_count += 1
        return self

    def _ensure_skill(self, skill: str, lexicon: SkillLexicon) -> None:
        self._ensure_node(
            NodeId(NodeKind.SKILL, skill), category=lexicon.category_of(skill) or ""
        )

    # -- lookups ----------------------------------------------------------

    def has_node(self, kind: NodeKind, key: str) -> bool:
        return NodeId(kind, key) in self.nodes

    def _require_node(self, kind: NodeKind, key: str) -> None:
        if not self.has_node(kind, key):
            raise NodeNotFoundError(f"no {kind.value} node {key!r}")

    def get_edge(self, kind: EdgeKind, source: str, target: str) -> WeightedEdge | None:
        return self.edges.get((kind, source, target))

    def edges_of_kind(self, kind: EdgeKind) -> Iterator[WeightedEdge]:
        for key in sorted(self.edges, key=lambda k: (k[0].value, k[1], k[2])):
            if key[0] is kind:
                yield self.edges[key]

    def jobseeker_ids(self) -> list[str]:
        return sorted(
            n.key for n in self.nodes if n.kind is NodeKind.JOBSEEKER
        )

    def skill_keys(self) -> list[str]:
        return sorted(n.key for n in self.nodes if n.kind is NodeKind.SKILL)

    def node_attrs(self, kind: NodeKind, key: str) -> dict[str, str]:
        self._require_node(kind, key)
        return dict(self.nodes[NodeId(kind, key)])

    # -- derived strengths ------------------------------------------------

    def duration_bonus(self, months_sum: int) -> float:
        cap = self.config.duration_cap_months
        return self.config.duration_bonus_factor * min(months_sum, cap) / cap

    def jobseeker_skill_parts(
        self, jobseeker_id: str, skill: str
    ) -> tuple[float, float, float, int]:
        """(sentiment mean, duration bonus, years, support count) for one edge."""
        self._require_node(NodeKind.JOBSEEKER, jobseeker_id)
        self._require_node(NodeKind.SKILL, skill)
        edge = self.get_edge(EdgeKind.JOBSEEKER_SKILL, jobseeker_id, skill)
        if edge is None:
            return 0.0, 0.0, 0.0, 0
        return (
            edge.mean_weight(),
            self.duration_bonus(edge.months_sum),
            edge.months_sum / 12.0,
            edge.support_count,
        )

    def jobseeker_skill_strength(self, jobseeker_id: str, skill: str) -> float:
        """Mean project sentiment for the skill plus the duration bonus."""
        sentiment, bonus, _, _ = self.jobseeker_skill_parts(jobseeker_id, skill)
        return sentiment + bonus

    def org_skill_strength(self, org: str, skill: str) -> float:
        """Mean of accumulated skill-project scores across the org's projects."""
        self._require_node(NodeKind.ORGANIZATION, org)
        self._require_node(NodeKind.SKILL, skill)
        edge = self.get_edge(EdgeKind.ORG_SKILL, org, skill)
        return edge.mean_weight() if edge else 0.0

    def skill_years(self, jobseeker_id: str, skill: str) -> float:
        """Accumulated project months for the skill, in years."""
        self._require_node(NodeKind.JOBSEEKER, jobseeker_id)
        self._require_node(NodeKind.SKILL, skill)
        edge = self.get_edge(EdgeKind.JOBSEEKER_SKILL, jobseeker_id, skill)
        return edge.months_sum / 12.0 if edge else 0.0

    def supporting_projects(self, jobseeker_id: str, skill: str) -> list[str]:
        """Project keys of this jobseeker whose details mention the skill."""
        return [
            edge.target
            for edge in self.edges_of_kind(EdgeKind.JOBSEEKER_PROJECT)
            if edge.source == jobseeker_id
            and (EdgeKind.SKILL_PROJECT, skill, edge.target) in self.edges
        ]

    def project_score(self, pkey: str) -> float:
        """The description score recorded on the project's skill edges (0 if none)."""
        self._require_node(NodeKind.PROJECT, pkey)
        for edge in self.edges_of_kind(EdgeKind.SKILL_PROJECT):
            if edge.target == pkey:
                return edge.mean_weight()
        return 0.0

    # -- merge ------------------------------------------------------------

    def merge(self, other: "KnowledgeGraph") -> "KnowledgeGraph":
        """Combine two graphs over disjoint jobseeker sets (same config)."""
        if self.config != other.config:
            raise GraphConfigError(
                f"config mismatch: {self.config} vs {other.config}"
            )
        overlap = set(self.jobseeker_ids()) & set(other.jobseeker_ids())
        if overlap:
            raise DuplicateJobseekerError(
                f"jobseekers in both graphs: {sorted(overlap)}"
            )
        merged = KnowledgeGraph(self.config)
        for graph in (self, other):
            for node, attrs in graph.nodes.items():
                merged._ensure_node(node, **attrs)
            for (kind, source, target), edge in graph.edges.items():
                acc = merged._edge(kind, source, target)
                acc.weight_sum += edge.weight_sum
                acc.support_count += edge.support_count
                acc.months_sum += edge.months_sum
        return merged

    # -- persistence ------------------------------------------------------

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, KnowledgeGraph):
            return NotImplemented
        return (
            self.config == other.config
            and self.nodes == other.nodes
            and self.edges == other.edges
        )

    def to_dict(self) -> dict:
        from . import __version__

        return {
            "schema_version": GRAPH_SCHEMA_VERSION,
            "config": {
                "duration_bonus_factor": self.config.duration_bonus_factor,
                "duration_cap_months": self.config.duration_cap_months,
                "tool_version": __version__,
            },
            "nodes": [
                {"kind": node.kind.value, "key": node.key, "attrs": dict(attrs)}
                for node, attrs in sorted(
                    self.nodes.items(), key=lambda kv: (kv[0].kind.value, kv[0].key)
                )
            ],
            "edges": [
                {
                    "kind": edge.kind.value,
                    "source": edge.source,
                    "target": edge.target,
                    "weight_sum": edge.weight_sum,
                    "support_count": edge.support_count,
                    "months_sum": edge.months_sum,
                }
                for _, edge in sorted(
                    self.edges.items(), key=lambda kv: (kv[0][0].value, kv[0][1], kv[0][2])
                )
            ],
        }

    @classmethod
    def from_dict(cls, doc: dict) -> "KnowledgeGraph":
        if not isinstance(doc, dict):
            raise GraphFormatError("graph document must be an object")
        config_doc = doc.get("config")
        if not isinstance(config_doc, dict):
            raise GraphFormatError("missing 'config' object")
        try:
            config = ScoringConfig(
                duration_bonus_factor=float(config_doc["duration_bonus_factor"]),
                duration_cap_months=int(config_doc["duration_cap_months"]),
            )
        except (KeyError, TypeError, ValueError) as exc:
            raise GraphFormatError(f"bad config: {exc}") from exc

        graph = cls(config)
        for i, rec in enumerate(doc.get("nodes", [])):
            where = f"nodes[{i}]"
            try:
                node = NodeId(NodeKind(rec["kind"]), rec["key"])
                attrs = rec.get("attrs", {})
            except (KeyError, TypeError, ValueError) as exc:
                raise GraphFormatError(f"{where}: {exc}") from exc
            if not isinstance(node.key, str) or not isinstance(attrs, dict):
                raise GraphFormatError(f"{where}: bad key or attrs")
            if node in graph.nodes:
                raise GraphFormatError(f"{where}: duplicate node {node.key!r}")
            graph.nodes[node] = dict(attrs)

        for i, rec in enumerate(doc.get("edges", [])):
            where = f"edges[{i}]"
            try:
                kind = EdgeKind(rec["kind"])
                edge = WeightedEdge(
                    kind=kind,
                    source=rec["source"],
                    target=rec["target"],
                    weight_sum=float(rec["weight_sum"]),
                    support_count=int(rec["support_count"]),
                    months_sum=int(rec.get("months_sum", 0)),
                )
            except (KeyError, TypeError, ValueError) as exc:
                raise GraphFormatError(f"{where}: {exc}") from exc
            if edge.support_count < 0 or edge.weight_sum < 0 or edge.months_sum < 0:
                raise GraphFormatError(f"{where}: negative accumulator")
            if edge.support_count == 0 and edge.weight_sum != 0.0:
                raise GraphFormatError(f"{where}: weight_sum without support")
            src_kind, dst_kind = EDGE_ENDPOINTS[kind]
            if NodeId(src_kind, edge.source) not in graph.nodes:
                raise GraphFormatError(f"{where}: dangling source {edge.source!r}")
            if NodeId(dst_kind, edge.target) not in graph.nodes:
                raise GraphFormatError(f"{where}: dangling target {edge.target!r}")
            key = (kind, edge.source, edge.target)
            if key in graph.edges:
                raise GraphFormatError(f"{where}: duplicate edge")
            graph.edges[key] = edge
        return graph

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=2, sort_keys=True) + "\n"

    def save(self, path: str | Path) -> None:
        Path(path).write_text(self.to_json(), encoding="utf-8")

    @classmethod
    def load(cls, path: str | Path) -> "KnowledgeGraph":
        try:
            raw = Path(path).read_text(encoding="utf-8")
        except OSError as exc:
            raise GraphFormatError(f"cannot read graph file {path}: {exc}") from exc
        try:
            doc = json.loads(raw)
        except json.JSONDecodeError as exc:
            raise GraphFormatError(f"{path}: not valid JSON ({exc})") from exc
        return cls.from_dict(doc)

    def to_dot(self) -> str:
        """Graphviz rendering with mean edge weights, for eyeballing fixtures."""
        def quote(text: str) -> str:
            return text.replace("\\", "\\\\").replace('"', '\\"')

        lines = ["digraph talentgraph {"]
        for node, attrs in sorted(
            self.nodes.items(), key=lambda kv: (kv[0].kind.value, kv[0].key)
        ):
            label = attrs.get("name") or attrs.get("title") or node.key
            lines.append(
                f'  "{node.kind.value}:{quote(node.key)}" '
                f'[label="{quote(label)}", kind="{node.kind.value}"];'
            )
        for _, edge in sorted(
            self.edges.items(), key=lambda kv: (kv[0][0].value, kv[0][1], kv[0][2])
        ):
            src_kind, dst_kind = EDGE_ENDPOINTS[edge.kind]
            lines.append(
                f'  "{src_kind.value}:{quote(edge.source)}" -> '
                f'"{dst_kind.value}:{quote(edge.target)}"'
                f' [label="{edge.kind.value} {edge.mean_weight():.3f}"];'
            )
        lines.append("}")
        return "\n".join(lines) + "\n"
