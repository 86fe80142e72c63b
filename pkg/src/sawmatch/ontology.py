"""Class hierarchies loaded from RDF/XML and subsumption queries over them.

Only asserted taxonomy axioms are considered: class declarations,
rdfs:subClassOf with named-class objects and owl:equivalentClass with
named-class objects. Equivalent classes are collapsed onto one
representative and a transitive reachability closure is precomputed, so
each relation query is a couple of set lookups.
"""

from __future__ import annotations

import enum
import io
import xml.etree.ElementTree as ET
from dataclasses import dataclass, field
from urllib.parse import urljoin

from .errors import EmptyOntologyError, ParseError

__all__ = [
    "Axiom",
    "ClassRelation",
    "ClassGraph",
    "load_ontology",
    "merge",
    "relate",
]

RDF_NS = "http://www.w3.org/1999/02/22-rdf-syntax-ns#"
RDFS_NS = "http://www.w3.org/2000/01/rdf-schema#"
OWL_NS = "http://www.w3.org/2002/07/owl#"
XML_NS = "http://www.w3.org/XML/1998/namespace"

_CLASS_TAGS = {f"{{{OWL_NS}}}Class", f"{{{RDFS_NS}}}Class"}
_SUBCLASS_TAG = f"{{{RDFS_NS}}}subClassOf"
_EQUIV_TAG = f"{{{OWL_NS}}}equivalentClass"

# Axiom kinds: ("class", iri), ("sub", child, parent), ("equiv", a, b)
Axiom = tuple


class ClassRelation(enum.Enum):
    """How an offered class relates to a requested class."""

    EQUIVALENT = "equivalent"
    OFFERED_IS_SUPER = "offered-is-super"
    OFFERED_IS_SUB = "offered-is-sub"
    UNRELATED = "unrelated"


def _resolve(ref: str, base: str) -> str:
    ref = ref.strip()
    if not ref:
        return base
    if ref.startswith("#"):
        return base.split("#", 1)[0] + ref
    if ":" in ref:
        return ref
    return urljoin(base, ref)


def _about(elem: ET.Element, base: str) -> str | None:
    about = elem.get(f"{{{RDF_NS}}}about")
    if about is not None:
        return _resolve(about, base)
    node_id = elem.get(f"{{{RDF_NS}}}ID")
    if node_id is not None:
        return _resolve("#" + node_id, base)
    return None


def _object_iri(elem: ET.Element, base: str) -> str | None:
    """Named class object of a subClassOf/equivalentClass element, if any."""
    resource = elem.get(f"{{{RDF_NS}}}resource")
    if resource is not None:
        return _resolve(resource, base)
    # nested named class; restrictions and other anonymous nodes are skipped
    for child in elem:
        if child.tag in _CLASS_TAGS:
            iri = _about(child, base)
            if iri is not None:
                return iri
    return None


def load_ontology(data: bytes) -> set[Axiom]:
    """Extract taxonomy axioms from an RDF/XML ontology document."""
    try:
        root = ET.parse(io.BytesIO(data)).getroot()
    except ET.ParseError as exc:
        raise ParseError(f"malformed RDF/XML: {exc}") from exc

    base = root.get(f"{{{XML_NS}}}base", "")
    axioms: set[Axiom] = set()

    def walk(elem: ET.Element):
        if elem.tag in _CLASS_TAGS:
            subject = _about(elem, base)
            if subject is not None:
                axioms.add(("class", subject))
                for child in elem:
                    if child.tag == _SUBCLASS_TAG:
                        parent = _object_iri(child, base)
                        if parent is not None and parent != subject:
                            axioms.add(("sub", subject, parent))
                            axioms.add(("class", parent))
                    elif child.tag == _EQUIV_TAG:
                        other = _object_iri(child, base)
                        if other is not None and other != subject:
                            axioms.add(("equiv", subject, other))
                            axioms.add(("class", other))
        for child in elem:
            walk(child)

    walk(root)
    if not any(kind == "class" for kind, *_ in axioms):
        raise EmptyOntologyError("ontology declares no classes")
    return axioms


class _UnionFind:
    def __init__(self):
        self.parent: dict[str, str] = {}

    def find(self, x: str) -> str:
        self.parent.setdefault(x, x)
        root = x
        while self.parent[root] != root:
            root = self.parent[root]
        while self.parent[x] != root:
            self.parent[x], x = root, self.parent[x]
        return root

    def union(self, a: str, b: str):
        ra, rb = self.find(a), self.find(b)
        if ra == rb:
            return
        # deterministic representative: lexicographically smallest IRI
        if rb < ra:
            ra, rb = rb, ra
        self.parent[rb] = ra


@dataclass(frozen=True)
class ClassGraph:
    """Merged class hierarchy with equivalence collapse and strict-ancestor closure.

    Immutable once built; `merge` produces a new graph. Mutual-subsumption
    cycles are treated as equivalences, which keeps the closure free of
    self-loops.
    """

    axioms: frozenset = frozenset()
    classes: frozenset = frozenset()
    direct_super: dict = field(default_factory=dict)
    rep: dict = field(default_factory=dict)
    members: dict = field(default_factory=dict)
    ancestors: dict = field(default_factory=dict)

    @classmethod
    def empty(cls) -> "ClassGraph":
        return cls()

    @classmethod
    def from_axioms(cls, axioms) -> "ClassGraph":
        axioms = frozenset(axioms)
        classes = {a[1] for a in axioms if a[0] == "class"}
        for kind, *args in axioms:
            if kind in ("sub", "equiv"):
                classes.update(args)

        uf = _UnionFind()
        for iri in sorted(classes):
            uf.find(iri)
        for kind, *args in sorted(axioms):
            if kind == "equiv":
                uf.union(args[0], args[1])

        def collapsed_edges():
            edges: dict[str, set[str]] = {}
            for kind, *args in axioms:
                if kind == "sub":
                    child, parent = uf.find(args[0]), uf.find(args[1])
                    if child != parent:
                        edges.setdefault(child, set()).add(parent)
            return edges

        # subclass cycles imply mutual subsumption, i.e. equivalence
        edges = collapsed_edges()
        for scc in _sccs(edges):
            if len(scc) > 1:
                first = min(scc)
                for node in scc:
                    uf.union(first, node)
        edges = collapsed_edges()

        rep = {iri: uf.find(iri) for iri in classes}
        members: dict[str, frozenset] = {}
        for iri, r in rep.items():
            members.setdefault(r, set()).add(iri)  # type: ignore[arg-type]
        members = {r: frozenset(v) for r, v in members.items()}

        ancestors: dict[str, frozenset] = {}
        for node in sorted({rep[c] for c in classes}):
            seen: set[str] = set()
            stack = sorted(edges.get(node, ()))
            while stack:
                cur = stack.pop()
                if cur in seen or cur == node:
                    continue
                seen.add(cur)
                stack.extend(edges.get(cur, ()))
            ancestors[node] = frozenset(seen)

        direct_super: dict[str, frozenset] = {}
        for kind, *args in axioms:
            if kind == "sub":
                direct_super.setdefault(args[0], set()).add(args[1])  # type: ignore[arg-type]
        direct_super = {k: frozenset(v) for k, v in direct_super.items()}

        return cls(
            axioms=axioms,
            classes=frozenset(classes),
            direct_super=direct_super,
            rep=rep,
            members=members,
            ancestors=ancestors,
        )

    def equivalence_set(self, iri: str) -> frozenset:
        r = self.rep.get(iri)
        if r is None:
            return frozenset((iri,))
        return self.members[r]

    def is_strict_sub(self, sub: str, sup: str) -> bool:
        rs, rp = self.rep.get(sub), self.rep.get(sup)
        if rs is None or rp is None or rs == rp:
            return False
        return rp in self.ancestors.get(rs, frozenset())


def _sccs(edges: dict[str, set[str]]):
    """Strongly connected components, iterative Tarjan."""
    index: dict[str, int] = {}
    low: dict[str, int] = {}
    on_stack: set[str] = set()
    stack: list[str] = []
    counter = [0]
    result: list[frozenset] = []
    nodes = set(edges)
    for targets in edges.values():
        nodes.update(targets)

    for start in sorted(nodes):
        if start in index:
            continue
        work = [(start, iter(sorted(edges.get(start, ()))))]
        index[start] = low[start] = counter[0]
        counter[0] += 1
        stack.append(start)
        on_stack.add(start)
        while work:
            node, it = work[-1]
            advanced = False
            for nxt in it:
                if nxt not in index:
                    index[nxt] = low[nxt] = counter[0]
                    counter[0] += 1
                    stack.append(nxt)
                    on_stack.add(nxt)
                    work.append((nxt, iter(sorted(edges.get(nxt, ())))))
                    advanced = True
                    break
                if nxt in on_stack:
                    low[node] = min(low[node], index[nxt])
            if advanced:
                continue
            work.pop()
            if work:
                parent = work[-1][0]
                low[parent] = min(low[parent], low[node])
            if low[node] == index[node]:
                comp = set()
                while True:
                    other = stack.pop()
                    on_stack.discard(other)
                    comp.add(other)
                    if other == node:
                        break
                result.append(frozenset(comp))
    return result


def merge(graph: ClassGraph, axioms) -> ClassGraph:
    """Union new axioms into a graph. Idempotent and order-independent."""
    return ClassGraph.from_axioms(graph.axioms | frozenset(axioms))


def relate(offered: str, requested: str, graph: ClassGraph) -> ClassRelation:
    """Classify the offered/requested pair; unknown IRIs degrade to UNRELATED."""
    offered = offered.strip()
    requested = requested.strip()
    if offered == requested:
        return ClassRelation.EQUIVALENT
    ro = graph.rep.get(offered)
    rr = graph.rep.get(requested)
    if ro is None or rr is None:
        return ClassRelation.UNRELATED
    if ro == rr:
        return ClassRelation.EQUIVALENT
    if graph.is_strict_sub(requested, offered):
        return ClassRelation.OFFERED_IS_SUPER
    if graph.is_strict_sub(offered, requested):
        return ClassRelation.OFFERED_IS_SUB
    return ClassRelation.UNRELATED
