"""Skill lexicon and skill-sentiment gazetteer.

Both are curated UTF-8 JSON documents loaded once and treated as immutable
afterwards, so they are safe for unrestricted concurrent reads.

Lexicon document::

    {
      "schema_version": 1,
      "skills": [
        {"canonical": "c++",
         "category": "programming languages",
         "aliases": ["c++", "cpp"]}
      ]
    }

Gazetteer document::

    {
      "schema_version": 1,
      "entries": [
        {"keyword": "scalability", "class": "strong-technical", "weight": 0.9},
        {"keyword": "debugging", "class": "strong-technical", "weight": 0.8,
         "skill": "c++"}
      ]
    }

All strings are lowercase-folded and whitespace-trimmed at load time; lookups
fold the same way, so matching is case-insensitive throughout. A gazetteer
entry with a "skill" field applies only to that canonical skill and takes
precedence over a scope-free entry for the same keyword.
"""
from __future__ import annotations

import json
import re
from dataclasses import dataclass
from pathlib import Path
from typing import Iterable

from .errors import (
    AliasConflictError,
    GazetteerFormatError,
    LexiconFormatError,
    WeightRangeError,
)
from .tokenization import EMPTY_STOP_WORDS, tokenize

_WS_RE = re.compile(r"\s+")


def _fold(text: str) -> str:
    """Lowercase, trim and collapse internal whitespace."""
    return _WS_RE.sub(" ", text.strip().lower())


@dataclass(frozen=True)
class SkillEntry:
    canonical: str
    category: str
    aliases: frozenset[str]


@dataclass(frozen=True)
class SentimentEntry:
    keyword: str
    keyword_class: str
    weight: float
    skill_scope: str | None = None


class SkillLexicon:
    """Canonical skills with an alias->canonical index.

    The alias index is injective into canonicals: loading rejects any alias
    claimed by two different skills.
    """

    def __init__(self, entries: Iterable[SkillEntry]):
        self.entries: list[SkillEntry] = list(entries)
        self.alias_index: dict[str, str] = {}
        for entry in self.entries:
            for alias in entry.aliases:
                owner = self.alias_index.get(alias)
                if owner is not None and owner != entry.canonical:
                    raise AliasConflictError(alias, owner, entry.canonical)
                self.alias_index[alias] = entry.canonical
        self._by_canonical = {e.canonical: e for e in self.entries}

    def __len__(self) -> int:
        return len(self.entries)

    def canonicals(self) -> set[str]:
        return set(self._by_canonical)

    def category_of(self, canonical: str) -> str | None:
        entry = self._by_canonical.get(canonical)
        return entry.category if entry else None

    def token_chars(self) -> str:
        """Non-alphanumeric, non-space characters occurring inside aliases.

        The tokenizer must preserve these so aliases like "c++" survive as
        single tokens.
        """
        chars = {
            ch
            for alias in self.alias_index
            for ch in alias
            if not ch.isalnum() and not ch.isspace()
        }
        return "".join(sorted(chars))


class SentimentGazetteer:
    """<skill-scope, keyword, class, weight> entries indexed by keyword."""

    def __init__(self, entries: Iterable[SentimentEntry]):
        self.entries: list[SentimentEntry] = list(entries)
        self.index: dict[str, list[SentimentEntry]] = {}
        for entry in self.entries:
            self.index.setdefault(entry.keyword, []).append(entry)

    def __len__(self) -> int:
        return len(self.entries)


def _read_json(source: str | Path, kind: str, error_cls: type) -> dict:
    path = Path(source)
    try:
        raw = path.read_text(encoding="utf-8")
    except OSError as exc:
        raise error_cls(f"cannot read {kind} file {path}: {exc}") from exc
    try:
        doc = json.loads(raw)
    except json.JSONDecodeError as exc:
        raise error_cls(f"{path}: not valid JSON ({exc})") from exc
    if not isinstance(doc, dict):
        raise error_cls(f"{path}: top level must be a JSON object")
    return doc


def parse_skill_records(records: Iterable[dict], locator: str = "skills") -> SkillLexicon:
    """Build a lexicon from decoded records, enforcing all invariants."""
    entries = []
    for i, rec in enumerate(records):
        where = f"{locator}[{i}]"
        if not isinstance(rec, dict):
            raise LexiconFormatError(f"{where}: record must be an object")
        canonical = rec.get("canonical")
        category = rec.get("category")
        if not isinstance(canonical, str) or not canonical.strip():
            raise LexiconFormatError(f"{where}: 'canonical' must be a non-empty string")
        if not isinstance(category, str) or not category.strip():
            raise LexiconFormatError(f"{where}: 'category' must be a non-empty string")
        raw_aliases = rec.get("aliases", [])
        if not isinstance(raw_aliases, list) or any(
            not isinstance(a, str) for a in raw_aliases
        ):
            raise LexiconFormatError(f"{where}: 'aliases' must be a list of strings")
        canonical = _fold(canonical)
        aliases = {_fold(a) for a in raw_aliases if _fold(a)}
        aliases.add(canonical)  # canonical is always its own alias
        entries.append(
            SkillEntry(canonical=canonical, category=_fold(category), aliases=frozenset(aliases))
        )
    return SkillLexicon(entries)


def load_skill_lexicon(source: str | Path) -> SkillLexicon:
    """Load the skills dictionary from a JSON document."""
    doc = _read_json(source, "lexicon", LexiconFormatError)
    records = doc.get("skills")
    if not isinstance(records, list):
        raise LexiconFormatError(f"{source}: missing 'skills' array")
    return parse_skill_records(records)


def dump_skill_lexicon(lexicon: SkillLexicon) -> str:
    """Serialize a lexicon back to its document format (stable ordering)."""
    records = [
        {
            "canonical": e.canonical,
            "category": e.category,
            "aliases": sorted(e.aliases),
        }
        for e in sorted(lexicon.entries, key=lambda e: e.canonical)
    ]
    return json.dumps({"schema_version": 1, "skills": records}, indent=2, sort_keys=True) + "\n"


def normalize_skill(token_or_phrase: str, lexicon: SkillLexicon) -> str | None:
    """Resolve a token or phrase to its canonical skill, or None."""
    return lexicon.alias_index.get(_fold(token_or_phrase))


def parse_sentiment_records(
    records: Iterable[dict], locator: str = "entries"
) -> SentimentGazetteer:
    entries = []
    for i, rec in enumerate(records):
        where = f"{locator}[{i}]"
        if not isinstance(rec, dict):
            raise GazetteerFormatError(f"{where}: record must be an object")
        keyword = rec.get("keyword")
        kw_class = rec.get("class")
        weight = rec.get("weight")
        if not isinstance(keyword, str) or not keyword.strip():
            raise GazetteerFormatError(f"{where}: 'keyword' must be a non-empty string")
        if not isinstance(kw_class, str) or not kw_class.strip():
            raise GazetteerFormatError(f"{where}: 'class' must be a non-empty string")
        if isinstance(weight, bool) or not isinstance(weight, (int, float)):
            raise GazetteerFormatError(f"{where}: 'weight' must be a number")
        if not 0.0 <= float(weight) <= 1.0:
            raise WeightRangeError(f"{where}: weight {weight} outside [0, 1]")
        keyword = _fold(keyword)
        if tokenize(keyword, stop_words=EMPTY_STOP_WORDS) != [keyword]:
            raise GazetteerFormatError(f"{where}: keyword {keyword!r} must be a single token")
        scope = rec.get("skill")
        if scope is not None:
            if not isinstance(scope, str) or not scope.strip():
                raise GazetteerFormatError(f"{where}: 'skill' must be a non-empty string")
            scope = _fold(scope)
        entries.append(
            SentimentEntry(
                keyword=keyword,
                keyword_class=_fold(kw_class),
                weight=float(weight),
                skill_scope=scope,
            )
        )
    return SentimentGazetteer(entries)


def load_sentiment_gazetteer(source: str | Path) -> SentimentGazetteer:
    """Load the skill-sentiment gazetteer from a JSON document."""
    doc = _read_json(source, "gazetteer", GazetteerFormatError)
    records = doc.get("entries")
    if not isinstance(records, list):
        raise GazetteerFormatError(f"{source}: missing 'entries' array")
    return parse_sentiment_records(records)


def dump_sentiment_gazetteer(gazetteer: SentimentGazetteer) -> str:
    records = []
    for e in sorted(
        gazetteer.entries, key=lambda e: (e.keyword, e.skill_scope or "", e.keyword_class)
    ):
        rec: dict = {"keyword": e.keyword, "class": e.keyword_class, "weight": e.weight}
        if e.skill_scope is not None:
            rec["skill"] = e.skill_scope
        records.append(rec)
    return json.dumps({"schema_version": 1, "entries": records}, indent=2, sort_keys=True) + "\n"


def lookup_sentiment(
    keyword: str, skill: str | None, gazetteer: SentimentGazetteer
) -> float | None:
    """Weight for a keyword, preferring an entry scoped to the given skill.

    Falls back to a scope-free entry; returns None when neither exists.
    Callers pass keywords already lowercased by the tokenizer.
    """
    candidates = gazetteer.index.get(keyword)
    if not candidates:
        return None
    if skill is not None:
        for entry in candidates:
            if entry.skill_scope == skill:
                return entry.weight
    for entry in candidates:
        if entry.skill_scope is None:
            return entry.weight
    return None
