"""Command-line entry point.

Subcommands: ingest, query, explain, export, stats, eval. All machine
readable output (--json) is deterministic: identical inputs and flags
produce byte-identical bytes.
"""
from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from .errors import TalentGraphError
from .evaluation import evaluate_graph, load_gold
from .graph import KnowledgeGraph, NodeKind, ScoringConfig
from .intermediate import write_intermediate
from .lexicon import (
    SkillEntry,
    SkillLexicon,
    load_sentiment_gazetteer,
    load_skill_lexicon,
)
from .parser import parse_resume
from .query import Query, execute, explain, parse_query
from .stats import compute_graph_stats, compute_stats


def _emit_json(payload: dict, out: Path | None = None) -> None:
    text = json.dumps(payload, indent=2, sort_keys=True) + "\n"
    if out is None:
        sys.stdout.write(text)
    else:
        out.write_text(text, encoding="utf-8")


def _lexicon_for_graph(lexicon_path: str | None, graph: KnowledgeGraph) -> SkillLexicon:
    """Load the lexicon, or fall back to canonical-only entries from the graph.

    The fallback resolves canonical skill names but no aliases, which is
    enough for queries written against graph skill keys.
    """
    if lexicon_path:
        return load_skill_lexicon(lexicon_path)
    entries = [
        SkillEntry(
            canonical=node.key,
            category=attrs.get("category") or "uncategorized",
            aliases=frozenset([node.key]),
        )
        for node, attrs in graph.nodes.items()
        if node.kind is NodeKind.SKILL
    ]
    return SkillLexicon(entries)


def _cmd_ingest(args: argparse.Namespace) -> int:
    corpus = Path(args.corpus)
    if not corpus.is_dir():
        raise TalentGraphError(f"corpus directory not found: {corpus}")
    lexicon = load_skill_lexicon(args.lexicon)
    gazetteer = load_sentiment_gazetteer(args.gazetteer)
    config = ScoringConfig(
        duration_bonus_factor=args.duration_bonus_factor,
        duration_cap_months=args.duration_cap_months,
    )
    graph = KnowledgeGraph(config)

    files = sorted(corpus.glob("*.txt"))
    if not files:
        print(f"warning: no .txt resumes in {corpus}", file=sys.stderr)
    records = []
    diagnostics = 0
    for seed, path in enumerate(files):
        text = path.read_text(encoding="utf-8")
        if not text.strip():
            print(f"warning: {path} is empty, skipped", file=sys.stderr)
            continue
        record, report = parse_resume(text, lexicon, seed)
        diagnostics += len(report.diagnostics)
        if args.verbose:
            for message in report.diagnostics:
                print(f"{path.name}: {message}", file=sys.stderr)
        records.append(record)
        graph.add_resume(record, lexicon, gazetteer)

    graph.save(args.out)
    if args.intermediate:
        write_intermediate(records, args.intermediate)
    print(
        f"ingested {len(records)} resumes -> {args.out} "
        f"({len(graph.nodes)} nodes, {len(graph.edges)} edges, "
        f"{diagnostics} diagnostics)"
    )
    return 0


def _format_results(query: Query, results) -> str:
    lines = [f"rank  {'jobseeker':<28} {'total':>8}  per-skill"]
    for rank, result in enumerate(results, start=1):
        breakdown = "; ".join(
            f"{skill} {strength:.3f} ({years:.1f}y)"
            for skill, strength, years in result.per_skill
        )
        lines.append(
            f"{rank:<5} {result.jobseeker_id:<28} {result.total_score:>8.4f}  {breakdown}"
        )
    if not results:
        lines.append("(no matching jobseekers)")
    return "\n".join(lines)


def _cmd_query(args: argparse.Namespace) -> int:
    graph = KnowledgeGraph.load(args.graph)
    lexicon = _lexicon_for_graph(args.lexicon, graph)
    query = parse_query(args.dsl, lexicon)
    results = execute(query, graph)
    if args.json:
        _emit_json(
            {
                "schema_version": 1,
                "query": args.dsl,
                "top_k": query.top_k,
                "results": [r.to_dict() for r in results],
            },
            Path(args.out) if args.out else None,
        )
    else:
        print(_format_results(query, results))
    return 0


def _cmd_explain(args: argparse.Namespace) -> int:
    graph = KnowledgeGraph.load(args.graph)
    lexicon = _lexicon_for_graph(args.lexicon, graph)
    query = parse_query(args.dsl, lexicon)
    explanation = explain(args.jobseeker, query, graph)
    if args.json:
        _emit_json({"schema_version": 1, "explanation": explanation.to_dict()})
        return 0
    print(f"jobseeker {explanation.jobseeker_id}")
    print(f"  qualifies: {'yes' if explanation.qualifies else 'no'}")
    print(f"  total score: {explanation.total_score:.4f}")
    for term in explanation.terms:
        bounds = ""
        if term.min_years is not None:
            bounds = f" [needs {term.min_years:g}"
            bounds += f"-{term.max_years:g}y]" if term.max_years is not None else "+y]"
        status = "ok" if term.satisfied else "FAILS"
        print(
            f"  {term.skill}: strength {term.strength:.4f} "
            f"(sentiment {term.sentiment_mean:.4f} + duration {term.duration_bonus:.4f}), "
            f"{term.years:.2f} years over {term.support_count} scored projects"
            f"{bounds} {status}"
        )
        if term.projects:
            print(f"    projects: {', '.join(term.projects)}")
    return 0


def _cmd_export(args: argparse.Namespace) -> int:
    graph = KnowledgeGraph.load(args.graph)
    text = graph.to_json() if args.format == "json" else graph.to_dot()
    if args.out:
        Path(args.out).write_text(text, encoding="utf-8")
    else:
        sys.stdout.write(text)
    return 0


def _cmd_stats(args: argparse.Namespace) -> int:
    path = Path(args.path)
    if path.is_dir():
        if not args.lexicon:
            raise TalentGraphError("--lexicon is required when computing stats on a corpus")
        lexicon = load_skill_lexicon(args.lexicon)
        records = []
        for seed, file in enumerate(sorted(path.glob("*.txt"))):
            text = file.read_text(encoding="utf-8")
            if text.strip():
                records.append(parse_resume(text, lexicon, seed)[0])
        stats = compute_stats(records, lexicon)
    else:
        stats = compute_graph_stats(KnowledgeGraph.load(path))
    if args.json:
        _emit_json({"schema_version": 1, "stats": stats.to_dict()})
        return 0
    print(f"resumes                  {stats.resume_count}")
    print(f"distinct skills          {stats.distinct_skills}")
    print(f"avg skills per resume    {stats.avg_skills_per_resume:.2f}")
    print(f"avg projects per resume  {stats.avg_projects_per_resume:.2f}")
    for category, count in sorted(stats.skills_by_category.items()):
        print(f"  {category:<22} {count}")
    return 0


def _cmd_eval(args: argparse.Namespace) -> int:
    graph = KnowledgeGraph.load(args.graph)
    gold = load_gold(args.gold)
    lexicon = _lexicon_for_graph(args.lexicon, graph)
    report = evaluate_graph(graph, gold, lexicon, mode=args.topk_mode)
    if args.json:
        _emit_json({"schema_version": 1, "metrics": report.to_dict()})
    else:
        print(report.format_table())
    return 0


def build_arg_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="talentgraph",
        description="Parse resumes, build a sentiment-weighted skill graph, run ranking queries.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("ingest", help="parse a resume directory and persist the graph")
    p.add_argument("corpus", help="directory of UTF-8 .txt resumes, one per file")
    p.add_argument("--lexicon", required=True, help="skill lexicon JSON file")
    p.add_argument("--gazetteer", required=True, help="sentiment gazetteer JSON file")
    p.add_argument("--out", required=True, help="graph file to write")
    p.add_argument("--intermediate", help="also write the exchange document here")
    p.add_argument("--duration-bonus-factor", type=float, default=0.5)
    p.add_argument("--duration-cap-months", type=int, default=120)
    p.add_argument("-v", "--verbose", action="store_true", help="print parse diagnostics")
    p.set_defaults(func=_cmd_ingest)

    p = sub.add_parser("query", help="rank jobseekers for a query")
    p.add_argument("graph", help="graph file from ingest")
    p.add_argument("dsl", help='query, e.g. "C++ 8-10, Java 6-8, Python 2-3"')
    p.add_argument("--lexicon", help="lexicon for alias-aware skill resolution")
    p.add_argument("--json", action="store_true", help="machine-readable output")
    p.add_argument("--out", help="write JSON output to this file")
    p.set_defaults(func=_cmd_query)

    p = sub.add_parser("explain", help="decompose one jobseeker's score for a query")
    p.add_argument("graph")
    p.add_argument("jobseeker", help="jobseeker id")
    p.add_argument("dsl")
    p.add_argument("--lexicon")
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=_cmd_explain)

    p = sub.add_parser("export", help="re-serialize a graph file")
    p.add_argument("graph")
    p.add_argument("--format", choices=("json", "dot"), default="json")
    p.add_argument("--out")
    p.set_defaults(func=_cmd_export)

    p = sub.add_parser("stats", help="corpus or graph statistics")
    p.add_argument("path", help="resume directory or graph file")
    p.add_argument("--lexicon", help="required for directory input")
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=_cmd_stats)

    p = sub.add_parser("eval", help="score the graph against a gold fixture")
    p.add_argument("graph")
    p.add_argument("gold", help="gold labels JSON file")
    p.add_argument("--lexicon")
    p.add_argument("--topk-mode", choices=("hit", "precision"), default="hit")
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=_cmd_eval)
    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_arg_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except TalentGraphError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
