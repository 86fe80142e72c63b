"""SAWSDL service matchmaking: parsing, rating strategies, evaluation and registry."""

from .documents import (
    ElementNode,
    ElementTree,
    Interface,
    IoItem,
    Operation,
    OperationIndexEntry,
    ServiceDescription,
    build_index_entries,
    extract_io,
    parse_document,
)
from .engine import (
    Justification,
    MatchCase,
    MatchConfig,
    MatchResult,
    Query,
    Strategy,
    Tier,
    hybrid_rate_pair,
    logic_rate_pair,
    match,
    match_name_first,
    rate_operation,
)
from .errors import (
    EmptyOntologyError,
    EmptyServiceError,
    InvalidQueryError,
    MissingJudgmentsError,
    ParseError,
    SawmatchError,
)
from .ontology import ClassGraph, ClassRelation, load_ontology, merge, relate
from .similarity import SimAlgorithm, SimKind, is_match, jaro, monge_elkan, tokenize, unfold

__version__ = "0.1.0"
