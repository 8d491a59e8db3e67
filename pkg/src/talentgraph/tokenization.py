"""Lowercase word tokenization shared by skill matching and scoring."""
from __future__ import annotations

import re
from functools import lru_cache

# Characters kept inside tokens by default so aliases like "c++", "c#" and
# hyphenated keywords like "client-server" survive as single tokens.
DEFAULT_KEEP_CHARS = "+#-"

DEFAULT_STOP_WORDS = frozenset(
    "a an and are as at by for in is of on or the to was were with".split()
)

EMPTY_STOP_WORDS: frozenset[str] = frozenset()


@lru_cache(maxsize=None)
def _token_re(keep_chars: str) -> re.Pattern[str]:
    cls = "a-z0-9" + re.escape(keep_chars)
    return re.compile(f"[{cls}]+")


def tokenize(
    text: str,
    keep_chars: str = DEFAULT_KEEP_CHARS,
    stop_words: frozenset[str] = DEFAULT_STOP_WORDS,
) -> list[str]:
    """Split on non-alphanumeric boundaries, except ``keep_chars``.

    Tokens are lowercased; hyphens act as joiners only (stripped at token
    edges), and trailing dots are treated as sentence punctuation. Stop
    words are dropped after stripping.
    """
    out = []
    for match in _token_re(keep_chars).finditer(text.lower()):
        token = match.group(0).lstrip("-").rstrip(".-")
        if not token or token in stop_words:
            continue
        out.append(token)
    return out
