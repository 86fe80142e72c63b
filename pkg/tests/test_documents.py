import pytest

import fixtures
from sawmatch.documents import (
    build_index_entries,
    extract_io,
    load_directory,
    parse_document,
)
from sawmatch.errors import EmptyServiceError, ParseError

BOOKS = fixtures.BOOKS
TRAVEL = fixtures.TRAVEL


def single_operation(desc):
    ops = [op for itf in desc.interfaces for op in itf.operations]
    assert len(ops) == 1
    return ops[0]


class TestParseWsdl11:
    def test_structure(self):
        desc = parse_document(fixtures.NOVEL_WSDL, source_id="novel.wsdl")
        assert desc.source_id == "novel.wsdl"
        assert desc.service_name == "novel_authorgenre_service"
        assert [i.name for i in desc.interfaces] == ["NovelAuthorGenreSoap"]
        op = single_operation(desc)
        assert op.name == "get_AUTHOR_GENRE"

    def test_annotations_attached_to_nodes(self):
        desc = parse_document(fixtures.NOVEL_WSDL)
        op = single_operation(desc)
        by_name = {n.local_name: n for n in op.output_tree.nodes}
        assert by_name["_GENRE"].node_kind == "part"
        assert by_name["_GENRE"].annotations == (f"{BOOKS}#Genre",)
        assert by_name["GenreInfo"].node_kind == "complexType"
        assert by_name["GenreName"].annotations == (f"{BOOKS}#Genre",)
        in_by_name = {n.local_name: n for n in op.input_tree.nodes}
        assert in_by_name["AuthorName"].node_kind == "element"
        assert in_by_name["AuthorName"].annotations == (f"{BOOKS}#Author",)

    def test_dfs_preorder_with_depths(self):
        desc = parse_document(fixtures.NOVEL_WSDL)
        op = single_operation(desc)
        kinds = [n.node_kind for n in op.output_tree.nodes]
        assert kinds == ["output", "message", "part", "complexType", "element"]
        depths = [n.depth for n in op.output_tree.nodes]
        assert depths == sorted(depths)

    def test_plain_wsdl_has_no_annotations(self):
        desc = parse_document(fixtures.PLAIN_WSDL)
        op = single_operation(desc)
        in_ann, out_ann, in_names, out_names = extract_io(op)
        assert in_ann == set() and out_ann == set()
        assert "BookTitle" in in_names
        assert "GetBookPrice" in in_names and "GetBookPrice" in out_names

    def test_multi_iri_attribute_split(self):
        desc = parse_document(fixtures.TWO_IRI_WSDL)
        op = single_operation(desc)
        part = next(n for n in op.input_tree.nodes if n.node_kind == "part")
        assert part.annotations == ("http://a.example/onto#X", "http://b.example/onto#Y")

    def test_dangling_reference_warns_keeps_node(self):
        desc = parse_document(fixtures.DANGLING_WSDL)
        assert desc.warnings
        op = single_operation(desc)
        part = next(n for n in op.input_tree.nodes if n.node_kind == "part")
        assert part.local_name == "payload"
        # unresolved element: the part stays a leaf
        assert [n.node_kind for n in op.input_tree.nodes] == ["input", "message", "part"]
        # unresolved message: only the output node itself remains
        assert [n.node_kind for n in op.output_tree.nodes] == ["output"]


class TestParseWsdl20:
    def test_interface_and_element_refs(self):
        desc = parse_document(fixtures.WSDL20, source_id="travel.wsdl")
        assert desc.service_name == "travel_hotel_service"
        assert [i.name for i in desc.interfaces] == ["TravelInterface"]
        op = single_operation(desc)
        assert op.name == "findHotels"
        in_ann, out_ann, _, out_names = extract_io(op)
        assert in_ann == {f"{TRAVEL}#City"}
        assert out_ann == {f"{TRAVEL}#Hotel"}
        assert "HotelList" in out_names and "Hotel" in out_names


class TestParseErrors:
    def test_malformed_xml(self):
        with pytest.raises(ParseError):
            parse_document(fixtures.MALFORMED_XML)

    def test_not_wsdl(self):
        with pytest.raises(ParseError):
            parse_document(fixtures.NOT_WSDL)

    def test_no_operations(self):
        with pytest.raises(EmptyServiceError):
            parse_document(fixtures.NO_OPERATIONS_WSDL)


class TestExtractIo:
    def test_depth_does_not_matter(self):
        shallow = parse_document(fixtures.wsdl_with_annotation_at_depth(False))
        deep = parse_document(fixtures.wsdl_with_annotation_at_depth(True))
        shallow_ann = extract_io(single_operation(shallow))[0]
        deep_ann = extract_io(single_operation(deep))[0]
        assert shallow_ann == deep_ann == {f"{BOOKS}#Genre"}

    def test_duplicate_annotation_collapses(self):
        desc = parse_document(fixtures.DUPLICATE_ANNOTATION_WSDL)
        op = single_operation(desc)
        annotated = [n for n in op.input_tree.nodes if n.annotations]
        assert len(annotated) == 2
        assert extract_io(op)[0] == {f"{BOOKS}#Genre"}

    def test_empty_trees_give_empty_sets(self):
        desc = parse_document(fixtures.DANGLING_WSDL)
        op = single_operation(desc)
        in_ann, out_ann, _, _ = extract_io(op)
        assert in_ann == set() and out_ann == set()

    def test_annotation_union_across_kinds(self):
        desc = parse_document(fixtures.NOVEL_WSDL)
        op = single_operation(desc)
        in_ann, out_ann, in_names, out_names = extract_io(op)
        assert in_ann == {f"{BOOKS}#Author"}
        assert out_ann == {f"{BOOKS}#Genre"}
        assert {"author", "AuthorName", "get_AUTHOR_GENRE"} <= in_names
        assert {"_GENRE", "GenreInfo", "GenreName", "get_AUTHOR_GENRE"} <= out_names


class TestDeterminism:
    @pytest.mark.parametrize(
        "data",
        [fixtures.NOVEL_WSDL, fixtures.PLAIN_WSDL, fixtures.WSDL20, fixtures.TWO_IRI_WSDL],
        ids=["novel", "plain", "wsdl20", "two-iri"],
    )
    def test_same_bytes_same_model(self, data):
        assert parse_document(data, source_id="x") == parse_document(data, source_id="x")

    @pytest.mark.parametrize(
        "data",
        [fixtures.NOVEL_WSDL, fixtures.TWO_IRI_WSDL, fixtures.WSDL20],
        ids=["novel", "two-iri", "wsdl20"],
    )
    def test_annotations_roundtrip_to_source(self, data):
        text = data.decode()
        desc = parse_document(data)
        for itf in desc.interfaces:
            for op in itf.operations:
                for tree in (op.input_tree, op.output_tree):
                    for node in tree.nodes:
                        for annotation in node.annotations:
                            assert annotation in text

    def test_extract_io_invariant_under_reparse(self):
        op1 = single_operation(parse_document(fixtures.NOVEL_WSDL))
        op2 = single_operation(parse_document(fixtures.NOVEL_WSDL))
        assert extract_io(op1) == extract_io(op2)


class TestIndexEntries:
    def test_operation_item_first_then_dfs(self):
        desc = parse_document(fixtures.NOVEL_WSDL, source_id="novel.wsdl")
        (entry,) = build_index_entries(desc)
        assert entry.service_id == "novel.wsdl"
        assert entry.operation_name == "get_AUTHOR_GENRE"
        first = entry.input_items[0]
        assert first.kind == "operation" and first.name == "get_AUTHOR_GENRE"
        assert first.annotation is None
        annotated = [i for i in entry.output_items if i.annotation]
        assert {i.annotation for i in annotated} == {f"{BOOKS}#Genre"}

    def test_multi_annotation_node_yields_item_per_iri(self):
        desc = parse_document(fixtures.TWO_IRI_WSDL)
        (entry,) = build_index_entries(desc)
        pair_items = [i for i in entry.input_items if i.name == "pair"]
        assert [i.annotation for i in pair_items] == [
            "http://a.example/onto#X",
            "http://b.example/onto#Y",
        ]


class TestLoadDirectory:
    def test_sorted_and_failures_reported(self, tmp_path):
        (tmp_path / "b_plain.wsdl").write_bytes(fixtures.PLAIN_WSDL)
        (tmp_path / "a_novel.wsdl").write_bytes(fixtures.NOVEL_WSDL)
        (tmp_path / "broken.wsdl").write_bytes(fixtures.MALFORMED_XML)
        (tmp_path / "notes.txt").write_text("ignored")
        descriptions, failures = load_directory(tmp_path)
        assert [d.source_id for d in descriptions] == ["a_novel.wsdl", "b_plain.wsdl"]
        assert [name for name, _ in failures] == ["broken.wsdl"]
