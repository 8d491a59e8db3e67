"""Evaluation metrics against labeled gold fixtures.

Extraction metrics are micro-averaged over (resume, skill) pairs. Sentiment
is binary: a description is predicted positive when its score exceeds the
threshold (default 0). Ranking quality is hit-rate@k by default: a query
counts as a hit when at least one gold-relevant jobseeker appears in the
top k; precision@k is available via ``mode="precision"``.

Conventions for empty denominators are fixed so degenerate fixtures stay
well-defined: precision of an empty prediction set is 1.0, recall against
an empty gold set is 1.0, and F1 of (0, 0) is 0.

Gold fixture document::

    {
      "schema_version": 1,
      "skills": {"<jobseeker_id>": ["c++", ...]},
      "sentiment": {"<jobseeker_id>:p<n>": "positive" | "neutral"},
      "queries": [{"query": "top c++ candidates", "relevant": ["<id>", ...]}]
    }
"""
from __future__ import annotations

import json
from dataclasses import dataclass, field
from pathlib import Path
from typing import Mapping, Sequence

from .errors import FixtureError, NodeNotFoundError
from .graph import EdgeKind, KnowledgeGraph
from .lexicon import SkillLexicon
from .query import Query, execute, parse_query

POSITIVE = "positive"
NEUTRAL = "neutral"
SENTIMENT_CLASSES = (POSITIVE, NEUTRAL)
DEFAULT_SENTIMENT_THRESHOLD = 0.0


@dataclass(frozen=True)
class ExtractionMetrics:
    precision: float
    recall: float
    f1: float

    def to_dict(self) -> dict:
        return {"precision": self.precision, "recall": self.recall, "f1": self.f1}


@dataclass(frozen=True)
class SentimentMetrics:
    accuracy: float
    precision: float
    recall: float

    def to_dict(self) -> dict:
        return {
            "accuracy": self.accuracy,
            "precision": self.precision,
            "recall": self.recall,
        }


def _check_keys(predicted: Mapping, gold: Mapping, what: str) -> None:
    if set(predicted) != set(gold):
        missing = sorted(set(gold) - set(predicted))
        extra = sorted(set(predicted) - set(gold))
        raise FixtureError(
            f"{what}: key mismatch (missing {missing[:5]}, extra {extra[:5]})"
        )


def _ratio(numerator: int, denominator: int) -> float:
    return numerator / denominator if denominator else 1.0


def extraction_metrics(
    predicted: Mapping[str, set[str]], gold: Mapping[str, set[str]]
) -> ExtractionMetrics:
    """Micro-averaged precision/recall/F1 over per-resume skill sets."""
    _check_keys(predicted, gold, "extraction fixture")
    tp = fp = fn = 0
    for key in gold:
        pred, truth = set(predicted[key]), set(gold[key])
        tp += len(pred & truth)
        fp += len(pred - truth)
        fn += len(truth - pred)
    precision = _ratio(tp, tp + fp)
    recall = _ratio(tp, tp + fn)
    f1 = 2 * precision * recall / (precision + recall) if precision + recall else 0.0
    return ExtractionMetrics(precision=precision, recall=recall, f1=f1)


def classify_score(score: float, threshold: float = DEFAULT_SENTIMENT_THRESHOLD) -> str:
    return POSITIVE if score > threshold else NEUTRAL


def sentiment_metrics(
    predicted: Mapping[str, str], gold: Mapping[str, str]
) -> SentimentMetrics:
    """Binary classification counts for the positive class."""
    _check_keys(predicted, gold, "sentiment fixture")
    if not gold:
        raise FixtureError("sentiment fixture is empty")
    for mapping, side in ((predicted, "predicted"), (gold, "gold")):
        for key, label in mapping.items():
            if label not in SENTIMENT_CLASSES:
                raise FixtureError(f"sentiment fixture: bad {side} class {label!r} for {key!r}")
    tp = fp = fn = correct = 0
    for key in gold:
        pred_pos = predicted[key] == POSITIVE
        gold_pos = gold[key] == POSITIVE
        correct += pred_pos == gold_pos
        tp += pred_pos and gold_pos
        fp += pred_pos and not gold_pos
        fn += gold_pos and not pred_pos
    return SentimentMetrics(
        accuracy=correct / len(gold),
        precision=_ratio(tp, tp + fp),
        recall=_ratio(tp, tp + fn),
    )


def topk_accuracy(
    rankings: Mapping[str, Sequence[str]],
    gold: Mapping[str, set[str]],
    k: int,
    mode: str = "hit",
) -> float:
    """Fraction of queries hit within the top k (or mean precision@k)."""
    if k < 1:
        raise FixtureError(f"k must be >= 1, got {k}")
    if mode not in ("hit", "precision"):
        raise FixtureError(f"unknown top-k mode {mode!r}")
    _check_keys(rankings, gold, "ranking fixture")
    if not gold:
        raise FixtureError("ranking fixture has no queries")
    total = 0.0
    for key in gold:
        top = list(rankings[key])[:k]
        relevant = set(gold[key])
        if mode == "hit":
            total += bool(relevant & set(top))
        else:
            total += len(relevant & set(top)) / k
    return total / len(gold)


@dataclass
class GoldLabels:
    skills: dict[str, set[str]] = field(default_factory=dict)
    sentiment: dict[str, str] = field(default_factory=dict)
    queries: list[tuple[str, set[str]]] = field(default_factory=list)


def load_gold(path: str | Path) -> GoldLabels:
    """Load and validate a gold fixture document."""
    try:
        doc = json.loads(Path(path).read_text(encoding="utf-8"))
    except OSError as exc:
        raise FixtureError(f"cannot read gold file {path}: {exc}") from exc
    except json.JSONDecodeError as exc:
        raise FixtureError(f"{path}: not valid JSON ({exc})") from exc
    if not isinstance(doc, dict):
        raise FixtureError(f"{path}: top level must be an object")

    gold = GoldLabels()
    skills = doc.get("skills", {})
    if not isinstance(skills, dict):
        raise FixtureError("'skills' must be an object")
    for key, value in skills.items():
        if not isinstance(value, list) or any(not isinstance(s, str) for s in value):
            raise FixtureError(f"skills.{key}: expected a list of strings")
        gold.skills[key] = set(value)

    sentiment = doc.get("sentiment", {})
    if not isinstance(sentiment, dict):
        raise FixtureError("'sentiment' must be an object")
    for key, value in sentiment.items():
        if value not in SENTIMENT_CLASSES:
            raise FixtureError(f"sentiment.{key}: expected one of {SENTIMENT_CLASSES}")
        gold.sentiment[key] = value

    queries = doc.get("queries", [])
    if not isinstance(queries, list):
        raise FixtureError("'queries' must be a list")
    for i, item in enumerate(queries):
        if (
            not isinstance(item, dict)
            or not isinstance(item.get("query"), str)
            or not isinstance(item.get("relevant"), list)
        ):
            raise FixtureError(f"queries[{i}]: expected {{query, relevant}}")
        gold.queries.append((item["query"], set(item["relevant"])))
    return gold


@dataclass
class EvalReport:
    extraction: ExtractionMetrics | None = None
    sentiment: SentimentMetrics | None = None
    topk: dict[int, float] = field(default_factory=dict)

    def to_dict(self) -> dict:
        return {
            "extraction": self.extraction.to_dict() if self.extraction else None,
            "sentiment": self.sentiment.to_dict() if self.sentiment else None,
            "topk": {str(k): v for k, v in sorted(self.topk.items())},
        }

    def format_table(self) -> str:
        lines = ["metric                        value", "-" * 35]
        if self.extraction:
            lines.append("skill extraction")
            lines.append(f"  precision                   {self.extraction.precision:.4f}")
            lines.append(f"  recall                      {self.extraction.recall:.4f}")
            lines.append(f"  f1-score                    {self.extraction.f1:.4f}")
        if self.sentiment:
            lines.append("sentiment")
            lines.append(f"  accuracy                    {self.sentiment.accuracy:.4f}")
            lines.append(f"  precision                   {self.sentiment.precision:.4f}")
            lines.append(f"  recall                      {self.sentiment.recall:.4f}")
        if self.topk:
            lines.append("ranking (hit-rate@k)")
            for k, value in sorted(self.topk.items()):
                lines.append(f"  top {k:<2} relevant            {value:.4f}")
        return "\n".join(lines)


def evaluate_graph(
    graph: KnowledgeGraph,
    gold: GoldLabels,
    lexicon: SkillLexicon,
    mode: str = "hit",
) -> EvalReport:
    """Compare a built graph against gold labels.

    Extraction predictions are the skills with a jobseeker-skill edge;
    sentiment predictions come from the score recorded on each project's
    skill edges; rankings come from executing each gold query (widened to
    at least the top 10 so hit-rate@10 is meaningful).
    """
    report = EvalReport()
    if gold.skills:
        known = set(graph.jobseeker_ids())
        missing = sorted(set(gold.skills) - known)
        if missing:
            raise FixtureError(f"gold references unknown jobseekers: {missing[:5]}")
        predicted_skills = {
            jobseeker_id: {
                edge.target
                for edge in graph.edges_of_kind(EdgeKind.JOBSEEKER_SKILL)
                if edge.source == jobseeker_id
            }
            for jobseeker_id in gold.skills
        }
        report.extraction = extraction_metrics(predicted_skills, gold.skills)

    if gold.sentiment:
        predicted_classes = {}
        for pkey in gold.sentiment:
            try:
                predicted_classes[pkey] = classify_score(graph.project_score(pkey))
            except NodeNotFoundError as exc:
                raise FixtureError(f"gold references unknown project {pkey!r}") from exc
        report.sentiment = sentiment_metrics(predicted_classes, gold.sentiment)

    if gold.queries:
        rankings: dict[str, list[str]] = {}
        relevant_map: dict[str, set[str]] = {}
        for query_str, relevant in gold.queries:
            if query_str in relevant_map:
                raise FixtureError(f"duplicate gold query {query_str!r}")
            parsed = parse_query(query_str, lexicon)
            widened = Query(terms=parsed.terms, top_k=max(10, parsed.top_k))
            rankings[query_str] = [r.jobseeker_id for r in execute(widened, graph)]
            relevant_map[query_str] = relevant
        report.topk = {
            k: topk_accuracy(rankings, relevant_map, k, mode=mode) for k in (3, 5, 10)
        }
    return report
