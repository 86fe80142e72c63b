"""WSDL/SAWSDL parsing and DFS extraction of annotations and element names.

Both WSDL 1.1 (portType/message/part) and WSDL 2.0 (interface) vocabularies
are normalized into one interface/operation model. Each operation carries
its input and output trees in DFS pre-order, every node holding the
`modelReference` annotation IRIs found on it. Space-separated multi-IRI
attribute values are split and all IRIs kept. Only schemas embedded in the
document's `types` section are resolved; dangling references produce a
warning and an empty subtree instead of aborting the parse.
"""

from __future__ import annotations

import io
import xml.etree.ElementTree as ET
from dataclasses import dataclass
from pathlib import Path

from .errors import EmptyServiceError, ParseError

__all__ = [
    "ElementNode",
    "ElementTree",
    "Operation",
    "Interface",
    "ServiceDescription",
    "IoItem",
    "OperationIndexEntry",
    "parse_document",
    "extract_io",
    "build_index_entries",
    "load_directory",
]

XSD_NS = "http://www.w3.org/2001/XMLSchema"
SAWSDL_NS = "http://www.w3.org/ns/sawsdl"

NODE_KINDS = ("part", "element", "simpleType", "complexType", "message", "input", "output")

# attributes whose values are QNames referring to other components
_REF_ATTRS = ("message", "element", "type", "base", "ref")


@dataclass(frozen=True)
class ElementNode:
    local_name: str
    node_kind: str
    annotations: tuple[str, ...]
    depth: int


@dataclass(frozen=True)
class ElementTree:
    """Nodes of one operation side in deterministic DFS pre-order."""

    nodes: tuple[ElementNode, ...] = ()


@dataclass(frozen=True)
class Operation:
    name: str
    input_tree: ElementTree
    output_tree: ElementTree


@dataclass(frozen=True)
class Interface:
    name: str
    operations: tuple[Operation, ...]


@dataclass(frozen=True)
class ServiceDescription:
    source_id: str
    service_name: str
    interfaces: tuple[Interface, ...]
    warnings: tuple[str, ...] = ()


@dataclass(frozen=True)
class IoItem:
    """One comparable offered item: an optional annotation IRI plus the name
    and kind of the node that carried it."""

    annotation: str | None
    name: str
    kind: str


@dataclass(frozen=True)
class OperationIndexEntry:
    """The search unit: one operation with its flattened input/output items."""

    service_id: str
    service_name: str
    interface_name: str
    operation_name: str
    input_items: tuple[IoItem, ...]
    output_items: tuple[IoItem, ...]


def _local(tag: str) -> str:
    return tag.rsplit("}", 1)[-1]


def _ns_lookup(stack, prefix):
    for p, uri in reversed(stack):
        if p == prefix:
            return uri
    return None


def _read_xml(data: bytes) -> ET.Element:
    """Parse bytes, rewriting QName-valued reference attributes to
    `{namespace}local` form using the in-scope prefix declarations."""
    ns_stack: list[tuple[str, str]] = []
    root = None
    try:
        for event, obj in ET.iterparse(
            io.BytesIO(data), events=("start", "end", "start-ns", "end-ns")
        ):
            if event == "start-ns":
                ns_stack.append(obj)
            elif event == "end-ns":
                ns_stack.pop()
            elif event == "start":
                if root is None:
                    root = obj
                for attr in _REF_ATTRS:
                    value = obj.get(attr)
                    if not value or any(c in value for c in "{}#/"):
                        continue
                    prefix, sep, localpart = value.rpartition(":")
                    uri = _ns_lookup(ns_stack, prefix if sep else "")
                    if uri:
                        obj.set(attr, "{%s}%s" % (uri, localpart))
    except ET.ParseError as exc:
        raise ParseError(f"malformed XML: {exc}") from exc
    if root is None:
        raise ParseError("empty document")
    return root


def _split_ref(ref: str) -> tuple[str | None, str]:
    if ref.startswith("{"):
        ns, localpart = ref[1:].split("}", 1)
        return ns, localpart
    return None, ref


class _DocumentParser:
    def __init__(self, root: ET.Element, source_id: str):
        self.root = root
        self.source_id = source_id
        self.warnings: list[str] = []
        self.target_ns = root.get("targetNamespace", "")
        self.global_elements: dict[tuple[str, str], ET.Element] = {}
        self.global_types: dict[tuple[str, str], ET.Element] = {}
        self.messages: dict[tuple[str, str], ET.Element] = {}
        self._index_globals()

    def warn(self, message: str):
        if message not in self.warnings:
            self.warnings.append(message)

    def _index_globals(self):
        for types in (c for c in self.root if _local(c.tag) == "types"):
            for schema in types.iter(f"{{{XSD_NS}}}schema"):
                tns = schema.get("targetNamespace", "")
                for child in schema:
                    name = child.get("name")
                    if not name or not child.tag.startswith(f"{{{XSD_NS}}}"):
                        continue
                    kind = _local(child.tag)
                    if kind == "element":
                        self.global_elements[(tns, name)] = child
                    elif kind in ("simpleType", "complexType"):
                        self.global_types[(tns, name)] = child
        for msg in (c for c in self.root if _local(c.tag) == "message"):
            name = msg.get("name")
            if name:
                self.messages[(self.target_ns, name)] = msg

    def resolve(self, table, ref: str, label: str):
        ns, localpart = _split_ref(ref)
        if ns is not None:
            hit = table.get((ns, localpart))
            if hit is not None:
                return hit, localpart
        candidates = [v for (_, n), v in table.items() if n == localpart]
        if len(candidates) == 1:
            return candidates[0], localpart
        self.warn(f"unresolved {label} reference '{localpart}'")
        return None, localpart

    def annotations(self, elem: ET.Element | None) -> tuple[str, ...]:
        if elem is None:
            return ()
        raw = elem.get(f"{{{SAWSDL_NS}}}modelReference")
        if raw is None:
            return ()
        out = []
        for token in raw.split():
            if ":" in token:
                out.append(token)
            else:
                self.warn(f"ignored non-absolute annotation '{token}'")
        return tuple(out)

    def parse(self) -> ServiceDescription:
        root_kind = _local(self.root.tag)
        if root_kind not in ("definitions", "description"):
            raise ParseError(f"not a WSDL document (root element '{root_kind}')")

        interfaces = []
        for itf_elem in (
            c for c in self.root if _local(c.tag) in ("portType", "interface")
        ):
            interfaces.append(self._parse_interface(itf_elem))

        if not any(itf.operations for itf in interfaces):
            raise EmptyServiceError(
                f"{self.source_id}: no interface with at least one operation"
            )
        return ServiceDescription(
            source_id=self.source_id,
            service_name=self._service_name(),
            interfaces=tuple(interfaces),
            warnings=tuple(self.warnings),
        )

    def _service_name(self) -> str:
        for svc in (c for c in self.root if _local(c.tag) == "service"):
            name = svc.get("name")
            if name:
                return name
        return self.root.get("name") or Path(self.source_id).stem

    def _parse_interface(self, itf_elem: ET.Element) -> Interface:
        itf_name = itf_elem.get("name") or ""
        operations = []
        seen = set()
        for op_elem in (c for c in itf_elem if _local(c.tag) == "operation"):
            op_name = op_elem.get("name")
            if not op_name:
                self.warn(f"interface '{itf_name}': skipped unnamed operation")
                continue
            if op_name in seen:
                self.warn(
                    f"interface '{itf_name}': duplicate operation '{op_name}' ignored"
                )
                continue
            seen.add(op_name)
            operations.append(
                Operation(
                    name=op_name,
                    input_tree=self._parse_side(op_elem, "input"),
                    output_tree=self._parse_side(op_elem, "output"),
                )
            )
        return Interface(name=itf_name, operations=tuple(operations))

    def _parse_side(self, op_elem: ET.Element, side: str) -> ElementTree:
        builder = _TreeBuilder(self)
        for side_elem in (c for c in op_elem if _local(c.tag) == side):
            builder.add(side, side_elem.get("name") or "", side_elem, 0)
            msg_ref = side_elem.get("message")
            el_ref = side_elem.get("element")
            if msg_ref:
                msg, _ = self.resolve(self.messages, msg_ref, "message")
                if msg is not None:
                    builder.visit_message(msg, 1, frozenset((id(msg),)))
            elif el_ref and not el_ref.startswith("#"):
                target, _ = self.resolve(self.global_elements, el_ref, "element")
                if target is not None:
                    builder.visit_element(target, 1, frozenset())
        return ElementTree(nodes=tuple(builder.nodes))


class _TreeBuilder:
    def __init__(self, parser: _DocumentParser):
        self.parser = parser
        self.nodes: list[ElementNode] = []

    def add(self, kind, name, elem, depth, extra_annotations=()):
        annotations = tuple(
            dict.fromkeys(tuple(extra_annotations) + self.parser.annotations(elem))
        )
        self.nodes.append(
            ElementNode(
                local_name=name or "",
                node_kind=kind,
                annotations=annotations,
                depth=depth,
            )
        )

    def visit_message(self, msg_elem, depth, path):
        self.add("message", msg_elem.get("name") or "", msg_elem, depth)
        for part in (c for c in msg_elem if _local(c.tag) == "part"):
            self.visit_part(part, depth + 1, path)

    def visit_part(self, part, depth, path):
        self.add("part", part.get("name") or "", part, depth)
        el_ref = part.get("element")
        ty_ref = part.get("type")
        if el_ref:
            target, _ = self.parser.resolve(
                self.parser.global_elements, el_ref, "element"
            )
            if target is not None:
                self.visit_element(target, depth + 1, path)
        elif ty_ref:
            self.visit_type_ref(ty_ref, depth + 1, path)

    def visit_type_ref(self, ref, depth, path):
        if ref.startswith(f"{{{XSD_NS}}}"):
            return  # built-in XSD type, leaf
        target, _ = self.parser.resolve(self.parser.global_types, ref, "type")
        if target is not None:
            self.visit_type(target, depth, path)

    def visit_type(self, t_elem, depth, path):
        kind = _local(t_elem.tag)
        if kind not in ("simpleType", "complexType"):
            return
        self.add(kind, t_elem.get("name") or "", t_elem, depth)
        if id(t_elem) in path:
            return  # recursive type, stop descending
        self._visit_content(t_elem, depth, path | {id(t_elem)})

    def _visit_content(self, elem, depth, path):
        for child in elem:
            kind = _local(child.tag)
            if child.tag == f"{{{XSD_NS}}}element":
                self.visit_element(child, depth + 1, path)
            elif kind in ("sequence", "all", "choice", "complexContent", "simpleContent"):
                self._visit_content(child, depth, path)
            elif kind in ("extension", "restriction"):
                base = child.get("base")
                if base:
                    self.visit_type_ref(base, depth + 1, path)
                self._visit_content(child, depth, path)

    def visit_element(self, el, depth, path):
        ref = el.get("ref")
        if ref:
            target, localpart = self.parser.resolve(
                self.parser.global_elements, ref, "element"
            )
            if target is None:
                self.add("element", localpart, el, depth)
                return
            self.add(
                "element",
                target.get("name") or localpart,
                target,
                depth,
                extra_annotations=self.parser.annotations(el),
            )
            if id(target) in path:
                return
            self._descend_element(target, depth, path | {id(target)})
            return
        self.add("element", el.get("name") or "", el, depth)
        if id(el) in path:
            return
        self._descend_element(el, depth, path | {id(el)})

    def _descend_element(self, el, depth, path):
        ty_ref = el.get("type")
        if ty_ref:
            self.visit_type_ref(ty_ref, depth + 1, path)
            return
        for child in el:
            if _local(child.tag) in ("simpleType", "complexType"):
                self.visit_type(child, depth + 1, path)


def parse_document(data: bytes, source_id: str = "document") -> ServiceDescription:
    """Parse a WSDL/SAWSDL document into the structural model.

    Raises ParseError for malformed or non-WSDL XML and EmptyServiceError
    when no interface contains an operation. Dangling references are kept
    as warnings on the returned description.
    """
    root = _read_xml(data)
    return _DocumentParser(root, source_id).parse()


def extract_io(op: Operation):
    """Flatten an operation into (input annotations, output annotations,
    input names, output names) as sets.

    Depth is discarded: annotations anywhere in a tree count the same. The
    operation's own name joins both name sets; annotations on the operation
    element itself are not collected on either side.
    """
    input_annotations = {a for n in op.input_tree.nodes for a in n.annotations}
    output_annotations = {a for n in op.output_tree.nodes for a in n.annotations}
    input_names = {n.local_name for n in op.input_tree.nodes if n.local_name}
    output_names = {n.local_name for n in op.output_tree.nodes if n.local_name}
    if op.name:
        input_names.add(op.name)
        output_names.add(op.name)
    return input_annotations, output_annotations, input_names, output_names


def _items_for_tree(tree: ElementTree, op_name: str) -> tuple[IoItem, ...]:
    items: list[IoItem] = []
    if op_name:
        items.append(IoItem(annotation=None, name=op_name, kind="operation"))
    for node in tree.nodes:
        if node.annotations:
            items.extend(
                IoItem(annotation=a, name=node.local_name, kind=node.node_kind)
                for a in node.annotations
            )
        elif node.local_name:
            items.append(
                IoItem(annotation=None, name=node.local_name, kind=node.node_kind)
            )
    return tuple(items)


def build_index_entries(desc: ServiceDescription) -> list[OperationIndexEntry]:
    """One index entry per operation, items in DFS order."""
    entries = []
    for itf in desc.interfaces:
        for op in itf.operations:
            entries.append(
                OperationIndexEntry(
                    service_id=desc.source_id,
                    service_name=desc.service_name,
                    interface_name=itf.name,
                    operation_name=op.name,
                    input_items=_items_for_tree(op.input_tree, op.name),
                    output_items=_items_for_tree(op.output_tree, op.name),
                )
            )
    return entries


def load_directory(path) -> tuple[list[ServiceDescription], list[tuple[str, str]]]:
    """Parse every service file in a directory, sorted by file name.

    Returns (descriptions, failures); a failing file is reported, not fatal.
    """
    path = Path(path)
    descriptions = []
    failures = []
    for entry in sorted(path.iterdir()):
        if not entry.is_file() or entry.suffix.lower() not in (".wsdl", ".xml", ".sawsdl"):
            continue
        try:
            descriptions.append(parse_document(entry.read_bytes(), source_id=entry.name))
        except ParseError as exc:
            failures.append((entry.name, str(exc)))
    return descriptions, failures
