"""Rating and ranking of offered operations against concept queries.

Five strategies share one skeleton: every requested concept is rated
against every offered item of the corresponding side, the best item wins,
per-side ratings are the averages of those maxima, and the overall rating
is the input/output weighted sum. They differ only in how a single
(offered item, requested concept) pair is rated:

* logic: subsumption lookup mapped onto 1 / upper / lower / 0
* syn-on-sem: raw text similarity of unfolded annotation vs. concept names
* syn-on-syn: raw text similarity of element names vs. concept names
* hybrid: cascade of exact/equivalent, thresholded text matches rated 1,
  then the directional subsumption rates
* name-first: hybrid ratings, with operations whose service or operation
  name matches the query name promoted to a higher tier
"""

from __future__ import annotations

import enum
import warnings as _warnings
from dataclasses import dataclass, field, replace

from .documents import IoItem, OperationIndexEntry
from .errors import InvalidQueryError
from .ontology import ClassGraph, ClassRelation, relate
from .similarity import SimAlgorithm, is_match, unfold

__all__ = [
    "Strategy",
    "MatchCase",
    "Tier",
    "Query",
    "MatchConfig",
    "Justification",
    "MatchResult",
    "logic_rate_pair",
    "hybrid_rate_pair",
    "rate_operation",
    "match",
    "match_name_first",
]


class Strategy(enum.Enum):
    LOGIC = "logic"
    SYN_ON_SEM = "syn-on-sem"
    SYN_ON_SYN = "syn-on-syn"
    HYBRID = "hybrid"
    NAME_FIRST = "name-first"


class MatchCase(enum.Enum):
    EXACT = "Exact"
    SYN_SEM_MATCH = "SynSemMatch"
    SYN_SYN_MATCH = "SynSynMatch"
    DESIRED = "Desired"
    LESS_DESIRED = "LessDesired"
    FAIL = "Fail"


class Tier(enum.Enum):
    # lower value sorts first
    NAME_MATCH = 0
    NORMAL = 1

    @property
    def label(self) -> str:
        return "NameMatch" if self is Tier.NAME_MATCH else "Normal"


@dataclass(frozen=True)
class Query:
    """Requested input/output concept IRIs, plus an optional query name
    used only by the name-first strategy."""

    inputs: tuple[str, ...] = ()
    outputs: tuple[str, ...] = ()
    query_name: str | None = None

    def __post_init__(self):
        object.__setattr__(self, "inputs", tuple(self.inputs))
        object.__setattr__(self, "outputs", tuple(self.outputs))
        if not self.inputs and not self.outputs:
            raise InvalidQueryError("query requests neither inputs nor outputs")


@dataclass(frozen=True)
class MatchConfig:
    strategy: Strategy = Strategy.HYBRID
    sim: SimAlgorithm = field(default_factory=SimAlgorithm)
    weight: float = 0.5
    rating_threshold: float = 0.0
    upper_rate: float = 0.75
    lower_rate: float = 0.25

    def __post_init__(self):
        if not 0.0 < self.weight < 1.0:
            raise ValueError(f"weight must lie strictly inside (0, 1), got {self.weight}")
        if not 0.0 <= self.rating_threshold <= 1.0:
            raise ValueError(f"rating_threshold must be in [0, 1], got {self.rating_threshold}")
        if not 0.0 <= self.lower_rate < self.upper_rate <= 1.0:
            raise ValueError(
                f"rates must satisfy 0 <= lower < upper <= 1, "
                f"got lower={self.lower_rate} upper={self.upper_rate}"
            )


@dataclass(frozen=True)
class Justification:
    """Why one requested concept got its pair rating: the best offered
    element for it, under the active strategy."""

    requested_concept: str
    side: str
    matched_element_name: str
    matched_element_kind: str
    matched_annotation: str | None
    pair_rating: float
    match_case: MatchCase


@dataclass(frozen=True)
class MatchResult:
    service_id: str
    service_name: str
    interface_name: str
    operation_name: str
    rating: float
    tier: Tier
    justifications: tuple[Justification, ...]


def _logic_case(rel: ClassRelation, side: str, cfg: MatchConfig) -> tuple[float, MatchCase]:
    if rel is ClassRelation.EQUIVALENT:
        return 1.0, MatchCase.EXACT
    if rel is ClassRelation.OFFERED_IS_SUPER:
        if side == "input":
            return cfg.upper_rate, MatchCase.DESIRED
        return cfg.lower_rate, MatchCase.LESS_DESIRED
    if rel is ClassRelation.OFFERED_IS_SUB:
        if side == "output":
            return cfg.upper_rate, MatchCase.DESIRED
        return cfg.lower_rate, MatchCase.LESS_DESIRED
    return 0.0, MatchCase.FAIL


def logic_rate_pair(
    offered: str, requested: str, side: str, graph: ClassGraph, cfg: MatchConfig
) -> float:
    """Rate one offered/requested concept pair by subsumption alone.

    Equivalent 1; the desired direction (more general input, more specific
    output) rates upper_rate, the opposite lower_rate; unrelated 0.
    """
    rating, _ = _logic_case(relate(offered, requested, graph), side, cfg)
    return rating


def hybrid_rate_pair(
    offered_annotation: str | None,
    offered_name: str,
    requested: str,
    side: str,
    graph: ClassGraph,
    cfg: MatchConfig,
) -> tuple[float, MatchCase]:
    """The hybrid cascade; the first step that hits decides the rating.

    Equivalence and thresholded text matches (on unfolded annotations, then
    on element names) all rate 1; only then do the directional subsumption
    rates apply.
    """
    rel = None
    if offered_annotation is not None:
        rel = relate(offered_annotation, requested, graph)
        if rel is ClassRelation.EQUIVALENT:
            return 1.0, MatchCase.EXACT
        if is_match(unfold(offered_annotation), unfold(requested), cfg.sim)[0]:
            return 1.0, MatchCase.SYN_SEM_MATCH
    if is_match(offered_name, unfold(requested), cfg.sim)[0]:
        return 1.0, MatchCase.SYN_SYN_MATCH
    if rel is not None:
        rating, case = _logic_case(rel, side, cfg)
        if case in (MatchCase.DESIRED, MatchCase.LESS_DESIRED):
            return rating, case
    return 0.0, MatchCase.FAIL


def _pair_rate(
    item: IoItem, requested: str, side: str, graph: ClassGraph, cfg: MatchConfig
) -> tuple[float, MatchCase]:
    strategy = cfg.strategy
    if strategy is Strategy.LOGIC:
        if item.annotation is None:
            return 0.0, MatchCase.FAIL
        return _logic_case(relate(item.annotation, requested, graph), side, cfg)
    if strategy is Strategy.SYN_ON_SEM:
        if item.annotation is None:
            return 0.0, MatchCase.FAIL
        matched, score = is_match(unfold(item.annotation), unfold(requested), cfg.sim)
        return score, MatchCase.SYN_SEM_MATCH if matched else MatchCase.FAIL
    if strategy is Strategy.SYN_ON_SYN:
        matched, score = is_match(item.name, unfold(requested), cfg.sim)
        return score, MatchCase.SYN_SYN_MATCH if matched else MatchCase.FAIL
    # HYBRID; NAME_FIRST re-enters with a hybrid config
    return hybrid_rate_pair(item.annotation, item.name, requested, side, graph, cfg)


def _rate_side(
    items: tuple[IoItem, ...],
    requested: tuple[str, ...],
    side: str,
    graph: ClassGraph,
    cfg: MatchConfig,
) -> tuple[float | None, list[Justification]]:
    """Average over requested concepts of the best per-item rating.

    Returns (None, []) when the side is not requested. A requested concept
    with no offered items keeps its zero in the average.
    """
    if not requested:
        return None, []
    justifications = []
    total = 0.0
    for concept in requested:
        best_item = items[0] if items else None
        best_rating, best_case = 0.0, MatchCase.FAIL
        for item in items:
            rating, case = _pair_rate(item, concept, side, graph, cfg)
            if rating > best_rating:
                best_item, best_rating, best_case = item, rating, case
        total += best_rating
        justifications.append(
            Justification(
                requested_concept=concept,
                side=side,
                matched_element_name=best_item.name if best_item else "",
                matched_element_kind=best_item.kind if best_item else "",
                matched_annotation=best_item.annotation if best_item else None,
                pair_rating=best_rating,
                match_case=best_case,
            )
        )
    return total / len(requested), justifications


def rate_operation(
    entry: OperationIndexEntry, query: Query, graph: ClassGraph, cfg: MatchConfig
) -> MatchResult:
    """Rate one operation: per-side averages of per-concept maxima, then
    the weighted input/output sum. A requested side with nothing offered
    drags the rating down instead of being skipped."""
    if not query.inputs and not query.outputs:
        raise InvalidQueryError("query requests neither inputs nor outputs")
    in_rating, in_justs = _rate_side(entry.input_items, query.inputs, "input", graph, cfg)
    out_rating, out_justs = _rate_side(entry.output_items, query.outputs, "output", graph, cfg)
    if in_rating is None:
        rating = out_rating
    elif out_rating is None:
        rating = in_rating
    else:
        rating = cfg.weight * in_rating + (1.0 - cfg.weight) * out_rating
    return MatchResult(
        service_id=entry.service_id,
        service_name=entry.service_name,
        interface_name=entry.interface_name,
        operation_name=entry.operation_name,
        rating=rating,
        tier=Tier.NORMAL,
        justifications=tuple(in_justs + out_justs),
    )


def _sort_key(result: MatchResult):
    return (
        result.tier.value,
        -result.rating,
        result.service_id,
        result.operation_name,
        result.interface_name,
    )


def match(
    query: Query,
    collection_index: list[OperationIndexEntry],
    graph: ClassGraph,
    cfg: MatchConfig,
) -> list[MatchResult]:
    """Rate every operation in the collection, filter by the rating
    threshold and sort descending with a deterministic tie-break."""
    if cfg.strategy is Strategy.NAME_FIRST:
        return match_name_first(query, collection_index, graph, cfg)
    results = [rate_operation(entry, query, graph, cfg) for entry in collection_index]
    results = [r for r in results if r.rating >= cfg.rating_threshold]
    results.sort(key=_sort_key)
    return results


def match_name_first(
    query: Query,
    collection_index: list[OperationIndexEntry],
    graph: ClassGraph,
    cfg: MatchConfig,
) -> list[MatchResult]:
    """Hybrid matching with a name pre-pass: operations whose service or
    operation name matches the query name rank above everything else,
    whatever their hybrid rating. Without a query name this falls back to
    plain hybrid matching (with a warning)."""
    hybrid_cfg = replace(cfg, strategy=Strategy.HYBRID)
    if not query.query_name:
        _warnings.warn(
            "name-first matching without a query name, falling back to hybrid",
            RuntimeWarning,
            stacklevel=2,
        )
        return match(query, collection_index, graph, hybrid_cfg)
    results = []
    for entry in collection_index:
        result = rate_operation(entry, query, graph, hybrid_cfg)
        named = (
            is_match(query.query_name, entry.service_name, cfg.sim)[0]
            or is_match(query.query_name, entry.operation_name, cfg.sim)[0]
        )
        if named:
            result = replace(result, tier=Tier.NAME_MATCH)
        results.append(result)
    results = [r for r in results if r.rating >= cfg.rating_threshold]
    results.sort(key=_sort_key)
    return results
