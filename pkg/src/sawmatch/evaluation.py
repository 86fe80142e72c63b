"""Ranking evaluation against graded relevance judgments.

Metrics: average precision, nDCG (log2 discount, graded gains, ideal over
the full judged set), Q-measure, interpolated precision macro-averaged at
20 recall levels, and F1 at 20 ranking-fraction cutoffs. Judgments are
service-level; rankings of operations are collapsed to the first (best)
occurrence of each service before scoring.
"""

from __future__ import annotations

import csv
import math
import time
from dataclasses import dataclass, field
from pathlib import Path

from . import documents, ontology
from .engine import MatchConfig, MatchResult, Query, Strategy, match
from .errors import MissingJudgmentsError, ParseError

__all__ = [
    "RelevanceJudgments",
    "ConfigResult",
    "EvaluationReport",
    "ranking_from_results",
    "average_precision",
    "ndcg",
    "q_measure",
    "macro_precision_at_recall",
    "f1_at_lambda",
    "load_queries",
    "run_evaluation",
    "write_report_csvs",
]

LEVELS = 20


@dataclass
class RelevanceJudgments:
    """Graded query-to-service relevance; grade 0 means judged irrelevant.
    The binary view treats grade >= binary_cutoff as relevant."""

    grades: dict[str, dict[str, int]] = field(default_factory=dict)
    binary_cutoff: int = 1

    @classmethod
    def from_tsv(cls, path, binary_cutoff: int = 1) -> "RelevanceJudgments":
        """Load `query_id<TAB>service_id<TAB>grade` lines; blank lines and
        `#` comments are skipped."""
        grades: dict[str, dict[str, int]] = {}
        for lineno, line in enumerate(Path(path).read_text().splitlines(), 1):
            line = line.strip()
            if not line or line.startswith("#"):
                continue
            fields = line.split("\t")
            if len(fields) != 3:
                raise ValueError(f"{path}:{lineno}: expected 3 tab-separated fields")
            query_id, service_id, grade = fields
            grades.setdefault(query_id, {})[service_id] = int(grade)
        return cls(grades=grades, binary_cutoff=binary_cutoff)

    def queries(self) -> list[str]:
        return sorted(self.grades)

    def grade(self, query_id: str, service_id: str) -> int:
        return self.grades.get(query_id, {}).get(service_id, 0)

    def relevant(self, query_id: str) -> set[str]:
        judged = self.grades.get(query_id, {})
        return {s for s, g in judged.items() if g >= self.binary_cutoff}

    def _require(self, query_id: str) -> set[str]:
        if query_id not in self.grades:
            raise MissingJudgmentsError(f"no judgments for query '{query_id}'")
        relevant = self.relevant(query_id)
        if not relevant:
            raise MissingJudgmentsError(f"no relevant services judged for query '{query_id}'")
        return relevant


def ranking_from_results(results: list[MatchResult]) -> list[str]:
    """Service ids in rank order, first occurrence per service kept."""
    return list(dict.fromkeys(r.service_id for r in results))


def average_precision(ranking: list[str], judged: RelevanceJudgments, query_id: str) -> float:
    relevant = judged._require(query_id)
    hits = 0
    total = 0.0
    for rank, service_id in enumerate(ranking, 1):
        if service_id in relevant:
            hits += 1
            total += hits / rank
    return total / len(relevant)


def ndcg(ranking: list[str], judged: RelevanceJudgments, query_id: str) -> float:
    judged._require(query_id)
    dcg = 0.0
    for rank, service_id in enumerate(ranking, 1):
        gain = judged.grade(query_id, service_id)
        if gain:
            dcg += gain / math.log2(rank + 1)
    ideal_gains = sorted(judged.grades[query_id].values(), reverse=True)
    idcg = sum(g / math.log2(r + 1) for r, g in enumerate(ideal_gains, 1) if g)
    return dcg / idcg if idcg else 0.0


def q_measure(ranking: list[str], judged: RelevanceJudgments, query_id: str) -> float:
    """Blended cumulative-gain / precision measure: at each rank holding a
    relevant item, (cg + relevant-count) / (ideal cg + rank), averaged over
    the total number of relevant items."""
    relevant = judged._require(query_id)
    ideal_gains = sorted(judged.grades[query_id].values(), reverse=True)
    total = 0.0
    cg = 0.0
    count = 0
    for rank, service_id in enumerate(ranking, 1):
        cg += judged.grade(query_id, service_id)
        if service_id in relevant:
            count += 1
            cig = sum(ideal_gains[: min(rank, len(ideal_gains))])
            total += (cg + count) / (cig + rank)
    return total / len(relevant)


def _levels(levels: int) -> list[float]:
    return [(i + 1) / levels for i in range(levels)]


def macro_precision_at_recall(
    rankings: dict[str, list[str]], judged: RelevanceJudgments, levels: int = LEVELS
) -> list[float]:
    """Interpolated precision at evenly spaced recall levels, macro-averaged
    across queries. Interpolation takes the max precision at any rank whose
    recall reaches the level, which makes each per-query curve non-increasing."""
    if not rankings:
        raise MissingJudgmentsError("no queries to evaluate")
    level_points = _levels(levels)
    sums = [0.0] * levels
    for query_id, ranking in rankings.items():
        relevant = judged._require(query_id)
        total_relevant = len(relevant)
        # (recall, precision) after each rank
        points = []
        hits = 0
        for rank, service_id in enumerate(ranking, 1):
            if service_id in relevant:
                hits += 1
            points.append((hits / total_relevant, hits / rank))
        for i, level in enumerate(level_points):
            best = 0.0
            for recall, precision in points:
                if recall >= level - 1e-12 and precision > best:
                    best = precision
            sums[i] += best
    return [s / len(rankings) for s in sums]


def f1_at_lambda(
    rankings: dict[str, list[str]], judged: RelevanceJudgments, levels: int = LEVELS
) -> list[float]:
    """F1 when cutting each ranking at a fraction lambda of its length,
    macro-averaged across queries."""
    if not rankings:
        raise MissingJudgmentsError("no queries to evaluate")
    level_points = _levels(levels)
    sums = [0.0] * levels
    for query_id, ranking in rankings.items():
        relevant = judged._require(query_id)
        total_relevant = len(relevant)
        for i, lam in enumerate(level_points):
            k = math.ceil(lam * len(ranking))
            if k == 0:
                continue
            hits = sum(1 for s in ranking[:k] if s in relevant)
            precision = hits / k
            recall = hits / total_relevant
            if precision + recall > 0:
                sums[i] += 2 * precision * recall / (precision + recall)
    return [s / len(rankings) for s in sums]


@dataclass
class ConfigResult:
    name: str
    config: MatchConfig
    ap: float
    ndcg: float
    q: float
    precision_at_recall: list[float]
    f1_at_lambda: list[float]
    init_s: float
    extraction_s: float
    queries_s: float
    per_query_s: float


@dataclass
class EvaluationReport:
    results: list[ConfigResult]
    init_s: float
    extraction_s: float
    query_count: int
    skipped_queries: list[str] = field(default_factory=list)


def config_label(cfg: MatchConfig) -> str:
    if cfg.strategy is Strategy.LOGIC:
        return cfg.strategy.value
    return f"{cfg.strategy.value}+{cfg.sim.kind.value}"


def load_queries(path) -> list[tuple[str, Query]]:
    """Load queries either from a directory of SAWSDL documents (requested
    concepts are the query document's own input/output annotations, the
    query name its service name) or from a TSV file whose fields after the
    query id are `I:<iri...>`, `O:<iri...>` and optionally `N:<name>`."""
    path = Path(path)
    queries: list[tuple[str, Query]] = []
    if path.is_dir():
        descriptions, failures = documents.load_directory(path)
        if failures:
            raise ParseError("; ".join(f"{name}: {msg}" for name, msg in failures))
        for desc in descriptions:
            inputs: set[str] = set()
            outputs: set[str] = set()
            for itf in desc.interfaces:
                for op in itf.operations:
                    in_ann, out_ann, _, _ = documents.extract_io(op)
                    inputs |= in_ann
                    outputs |= out_ann
            queries.append(
                (
                    desc.source_id,
                    Query(
                        inputs=tuple(sorted(inputs)),
                        outputs=tuple(sorted(outputs)),
                        query_name=desc.service_name,
                    ),
                )
            )
        return queries
    for lineno, line in enumerate(path.read_text().splitlines(), 1):
        line = line.strip()
        if not line or line.startswith("#"):
            continue
        fields = line.split("\t")
        query_id = fields[0]
        inputs: list[str] = []
        outputs: list[str] = []
        name = None
        for raw in fields[1:]:
            if raw.startswith("I:"):
                inputs.extend(raw[2:].split())
            elif raw.startswith("O:"):
                outputs.extend(raw[2:].split())
            elif raw.startswith("N:"):
                name = raw[2:]
            elif raw:
                raise ValueError(f"{path}:{lineno}: unknown query field '{raw[:20]}'")
        queries.append((query_id, Query(tuple(inputs), tuple(outputs), query_name=name)))
    return queries


def run_evaluation(
    collection_dir,
    ontologies_dir,
    queries: list[tuple[str, Query]],
    judged: RelevanceJudgments,
    configs: list[MatchConfig],
    allow_missing: bool = False,
) -> EvaluationReport:
    """Index the collection once, run every config over every judged query
    and aggregate the metric suite, timing graph init, extraction and the
    query loops separately."""
    t0 = time.perf_counter()
    graph = ontology.ClassGraph.empty()
    if ontologies_dir is not None:
        for entry in sorted(Path(ontologies_dir).iterdir()):
            if entry.suffix.lower() in (".owl", ".rdf", ".xml") and entry.is_file():
                graph = ontology.merge(graph, ontology.load_ontology(entry.read_bytes()))
    init_s = time.perf_counter() - t0

    t0 = time.perf_counter()
    descriptions, failures = documents.load_directory(collection_dir)
    index = [e for d in descriptions for e in documents.build_index_entries(d)]
    index.sort(key=lambda e: (e.service_id, e.interface_name, e.operation_name))
    extraction_s = time.perf_counter() - t0

    usable: list[tuple[str, Query]] = []
    skipped: list[str] = []
    for query_id, query in queries:
        if query_id in judged.grades and judged.relevant(query_id):
            usable.append((query_id, query))
        elif allow_missing:
            skipped.append(query_id)
        else:
            judged._require(query_id)  # raises with a precise message

    results = []
    for cfg in configs:
        uses_graph = cfg.strategy in (Strategy.LOGIC, Strategy.HYBRID, Strategy.NAME_FIRST)
        t0 = time.perf_counter()
        rankings = {
            query_id: ranking_from_results(match(query, index, graph, cfg))
            for query_id, query in usable
        }
        queries_s = time.perf_counter() - t0
        ap_values = [average_precision(r, judged, q) for q, r in rankings.items()]
        ndcg_values = [ndcg(r, judged, q) for q, r in rankings.items()]
        q_values = [q_measure(r, judged, q) for q, r in rankings.items()]
        n = len(usable)
        results.append(
            ConfigResult(
                name=config_label(cfg),
                config=cfg,
                ap=sum(ap_values) / n if n else 0.0,
                ndcg=sum(ndcg_values) / n if n else 0.0,
                q=sum(q_values) / n if n else 0.0,
                precision_at_recall=macro_precision_at_recall(rankings, judged) if n else [0.0] * LEVELS,
                f1_at_lambda=f1_at_lambda(rankings, judged) if n else [0.0] * LEVELS,
                init_s=init_s if uses_graph else 0.0,
                extraction_s=extraction_s,
                queries_s=queries_s,
                per_query_s=queries_s / n if n else 0.0,
            )
        )
    return EvaluationReport(
        results=results,
        init_s=init_s,
        extraction_s=extraction_s,
        query_count=len(usable),
        skipped_queries=skipped,
    )


def write_report_csvs(report: EvaluationReport, out_dir) -> list[Path]:
    """Emit metrics, both 20-level curves and the timing table as CSV."""
    out_dir = Path(out_dir)
    out_dir.mkdir(parents=True, exist_ok=True)
    written = []

    def emit(name, header, rows):
        path = out_dir / name
        with path.open("w", newline="") as handle:
            writer = csv.writer(handle)
            writer.writerow(header)
            writer.writerows(rows)
        written.append(path)

    emit(
        "metrics.csv",
        ["config", "ap", "ndcg", "q"],
        [[r.name, f"{r.ap:.4f}", f"{r.ndcg:.4f}", f"{r.q:.4f}"] for r in report.results],
    )
    names = [r.name for r in report.results]
    emit(
        "precision_at_recall.csv",
        ["recall"] + names,
        [
            [f"{(i + 1) / LEVELS:.2f}"] + [f"{r.precision_at_recall[i]:.4f}" for r in report.results]
            for i in range(LEVELS)
        ],
    )
    emit(
        "f1_at_lambda.csv",
        ["lambda"] + names,
        [
            [f"{(i + 1) / LEVELS:.2f}"] + [f"{r.f1_at_lambda[i]:.4f}" for r in report.results]
            for i in range(LEVELS)
        ],
    )
    emit(
        "timings.csv",
        ["config", "init_s", "extraction_s", "queries_s", "per_query_s", "total_s"],
        [
            [
                r.name,
                f"{r.init_s:.4f}",
                f"{r.extraction_s:.4f}",
                f"{r.queries_s:.4f}",
                f"{r.per_query_s:.4f}",
                f"{r.init_s + r.extraction_s + r.queries_s:.4f}",
            ]
            for r in report.results
        ],
    )
    return written
