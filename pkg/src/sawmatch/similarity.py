"""Text similarity for concept and element names.

Concept IRIs are unfolded to their local names, identifiers are split on
the usual programming-name conventions (CamelCase, snake_case, digits),
and two measures are provided: Jaro for short undelimited strings and a
token-level Monge-Elkan whose inner comparison is exact token equality.
"""

from __future__ import annotations

import enum
import re
from dataclasses import dataclass

__all__ = [
    "SimKind",
    "SimAlgorithm",
    "unfold",
    "tokenize",
    "jaro",
    "monge_elkan",
    "is_match",
]


class SimKind(enum.Enum):
    MONGE_ELKAN = "monge-elkan"
    JARO = "jaro"


DEFAULT_THRESHOLDS = {
    SimKind.MONGE_ELKAN: 1.0,
    SimKind.JARO: 0.7,
}


@dataclass(frozen=True)
class SimAlgorithm:
    """A similarity measure plus the score at which a pair counts as a match."""

    kind: SimKind = SimKind.MONGE_ELKAN
    match_threshold: float = 1.0

    def __post_init__(self):
        if not 0.0 <= self.match_threshold <= 1.0:
            raise ValueError(
                f"match_threshold must be in [0, 1], got {self.match_threshold}"
            )

    @classmethod
    def of(cls, kind: SimKind | str, match_threshold: float | None = None) -> "SimAlgorithm":
        """Build an algorithm with its conventional threshold unless overridden."""
        if isinstance(kind, str):
            kind = SimKind(kind.strip().lower())
        if match_threshold is None:
            match_threshold = DEFAULT_THRESHOLDS[kind]
        return cls(kind=kind, match_threshold=match_threshold)

    def score(self, a: str, b: str) -> float:
        if self.kind is SimKind.JARO:
            return jaro(a, b)
        return monge_elkan(a, b)


def unfold(iri: str) -> str:
    """Trim an IRI to its local name.

    Takes the part after the last '#'; failing that, after the last '/';
    otherwise the input is returned unchanged.
    """
    if "#" in iri:
        return iri.rsplit("#", 1)[1]
    if "/" in iri:
        return iri.rsplit("/", 1)[1]
    return iri


_WORD_RE = re.compile(r"[A-Z]+(?![a-z])|[A-Z][a-z]+|[a-z]+|[0-9]+")


def tokenize(identifier: str) -> list[str]:
    """Split an identifier into lowercase word tokens.

    Splits on non-alphanumeric separators (underscore, hyphen, whitespace,
    punctuation), on digit/letter boundaries and on lower-to-upper case
    transitions. A run of capitals stays together until a lowercase letter
    starts a new word, so "HTTPServer" becomes ["http", "server"].
    """
    tokens: list[str] = []
    for run in re.split(r"[^0-9A-Za-z]+", identifier):
        tokens.extend(m.lower() for m in _WORD_RE.findall(run))
    return tokens


def jaro(a: str, b: str) -> float:
    """Jaro similarity in [0, 1], case-insensitive."""
    a = a.lower()
    b = b.lower()
    if a == b:
        return 1.0 if a else 0.0
    if not a or not b:
        return 0.0

    window = max(max(len(a), len(b)) // 2 - 1, 0)
    matched_a = [False] * len(a)
    matched_b = [False] * len(b)
    m = 0
    for i, ch in enumerate(a):
        lo = max(0, i - window)
        hi = min(len(b), i + window + 1)
        for j in range(lo, hi):
            if not matched_b[j] and b[j] == ch:
                matched_a[i] = True
                matched_b[j] = True
                m += 1
                break
    if m == 0:
        return 0.0

    seq_a = [ch for ch, hit in zip(a, matched_a) if hit]
    seq_b = [ch for ch, hit in zip(b, matched_b) if hit]
    t = sum(x != y for x, y in zip(seq_a, seq_b))
    return (m / len(a) + m / len(b) + (m - t / 2) / m) / 3


def monge_elkan(a: str, b: str) -> float:
    """Token-level Monge-Elkan with exact-equality inner comparison.

    Mean over tokens of `a` of the best match among tokens of `b`; the inner
    score is 1.0 on equal lowercased tokens and 0.0 otherwise. Not symmetric.
    Returns 0.0 when either side yields no tokens.
    """
    tokens_a = tokenize(a)
    tokens_b = tokenize(b)
    if not tokens_a or not tokens_b:
        return 0.0
    set_b = set(tokens_b)
    return sum(1.0 for t in tokens_a if t in set_b) / len(tokens_a)


def is_match(a: str, b: str, alg: SimAlgorithm) -> tuple[bool, float]:
    """Score a pair and decide whether it clears the algorithm's threshold."""
    score = alg.score(a, b)
    return score >= alg.match_threshold, score
