import json
import os

import pytest

from smellgraph import fixture_path
from smellgraph import codemodel as cm
from smellgraph.errors import (
    EmptyCorpusError,
    OverlappingEditsError,
    RewriteBreaksParseError,
)


def project_of(source, path="A.java", name="t"):
    return cm.parse_sources({path: source}, name)


class TestParseProject:
    def test_minimal_class(self):
        p = project_of("class A { void f(){} }")
        assert list(p.classes) == ["A"]
        cls = p.classes["A"]
        assert len(cls.methods) == 1
        assert cls.methods[0].body == []

    def test_insertion_sort_statement_count(self):
        p = cm.parse_project(fixture_path("figures"), include_globs=("InsertionSort.java",))
        cls = p.classes["InsertionSort"]
        sort = cls.method_named("sort")
        # hand count: i decl, outer while, j decl, inner while,
        # tmp decl, two array writes, j step, i step
        assert len(sort.statements) == 9

    def test_unparseable_file_is_skipped(self, tmp_path):
        (tmp_path / "Good.java").write_text("class Good { int x; }")
        (tmp_path / "Bad.java").write_text("class Bad { enum E { A } }")
        p = cm.parse_project(str(tmp_path))
        assert list(p.classes) == ["Good"]
        assert len(p.skipped) == 1
        assert p.skipped[0][0].endswith("Bad.java")

    def test_empty_corpus_raises(self, tmp_path):
        with pytest.raises(EmptyCorpusError):
            cm.parse_project(str(tmp_path))

    def test_missing_root_raises(self):
        with pytest.raises(IOError):
            cm.parse_project("/nonexistent/nowhere")

    def test_nested_class_registered_qualified(self):
        p = project_of("class Outer { int x; class Inner { int y; } }")
        assert set(p.classes) == {"Outer", "Outer.Inner"}
        assert p.classes["Outer"].nested == ["Outer.Inner"]


class TestStatementKinds:
    SOURCE = """
class K {
    int fld;
    void f(int p) {
        int a = 1;
        a = a + p;
        g();
        if (a > 0) {
            a = 2;
        } else {
            a = 3;
        }
        switch (p) {
            case 1:
                a = 4;
                break;
            default:
                a = 5;
        }
        for (int i = 0; i < p; i++) {
            a = a + i;
        }
        while (a > 0) {
            a--;
        }
        do {
            a++;
        } while (a < -3);
        try {
            a = 6;
        } catch (Exception e) {
            a = 7;
        }
        return;
    }
    void g() {}
}
"""

    def test_kind_classification(self):
        p = project_of(self.SOURCE)
        f = p.classes["K"].method_named("f")
        kinds = [(s.syntax, s.kind) for s in f.body]
        assert kinds == [
            ("decl", "declaration"),
            ("expr", "assign"),
            ("expr", "call"),
            ("if", "branch"),
            ("switch", "branch"),
            ("for", "loop"),
            ("while", "loop"),
            ("dowhile", "loop"),
            ("expr", "assign"),  # try body spliced
            ("expr", "assign"),  # catch body spliced
            ("return", "return"),
        ]

    def test_break_is_other(self):
        p = project_of(self.SOURCE)
        f = p.classes["K"].method_named("f")
        switch = f.body[4]
        assert [s.kind for s in switch.arms[0]] == ["assign", "other"]

    def test_nesting_depth_matches_tree_walk(self):
        p = project_of(self.SOURCE)
        for _, m in p.iter_methods():
            def check(stmts, depth):
                for s in stmts:
                    assert s.nesting_depth == depth
                    for arm in s.arms:
                        check(arm, depth + 1)
            check(m.body, 0)

    def test_spliced_try_keeps_depth(self):
        p = project_of(self.SOURCE)
        f = p.classes["K"].method_named("f")
        assert f.body[8].nesting_depth == 0
        assert f.body[9].nesting_depth == 0


class TestResolution:
    def test_internal_field_type_resolves(self):
        p = cm.parse_project(fixture_path("figures", "pricing"))
        book = p.classes["Book"]
        assert book.field_named("price").type_id == "Price"

    def test_external_call_tagged(self):
        p = cm.parse_project(fixture_path("figures"), include_globs=("SortDemo.java",))
        printer = p.classes["SortDemo"].method_named("print_ary")
        assert "println" in printer.external_calls
        assert printer.called_methods == set()

    def test_sibling_call_resolved(self):
        p = cm.parse_project(fixture_path("figures"), include_globs=("SortDemo.java",))
        run = p.classes["SortDemo"].method_named("run")
        assert "SortDemo.print_ary" in run.called_methods

    def test_foreign_accessor_counts_as_data(self):
        p = cm.parse_project(fixture_path("figures", "pricing"))
        discount = p.classes["Campaign"].method_named("discount")
        assert len(discount.foreign_data) == 3
        assert {c for c, _ in discount.foreign_data} == {"Book"}

    def test_superclass_link(self):
        p = cm.parse_project(fixture_path("figures", "shop"))
        assert p.classes["Novel"].superclass_id == "Product"
        assert p.classes["Product"].superclass_id is None

    def test_inherited_field_access(self):
        src = """
class Base { int shared; }
class Derived extends Base {
    int bump() { shared = shared + 1; return shared; }
}
"""
        p = project_of(src)
        m = p.classes["Derived"].method_named("bump")
        assert m.own_fields_used == {"Base.shared"}

    def test_internal_external_partition(self):
        p = cm.parse_project(fixture_path("figures", "pricing"))
        for _, m in p.iter_methods():
            internal = set(m.called_methods)
            for mid in internal:
                cls_id = mid.rsplit(".", 1)[0]
                assert cls_id in p.classes
            # external names never collide with resolved internal ids
            assert not internal & set(m.external_calls)

    def test_defs_uses_are_in_scope_names(self):
        p = cm.parse_project(fixture_path("figures", "pricing"))
        for cls, m in p.iter_methods():
            visible = set(m.param_names)
            visible.update(f.name for f in cls.fields)
            for anc in p.ancestors(cls):
                visible.update(f.name for f in anc.fields)
            for s in m.statements:
                visible.update(s.defs)
                assert s.uses <= visible

    def test_resolution_idempotent(self):
        p = cm.parse_project(fixture_path("figures", "pricing"))
        before = {m.id: (set(m.accessed_fields), set(m.called_methods), len(m.foreign_data))
                  for _, m in p.iter_methods()}
        cm.resolve_references(p)
        after = {m.id: (set(m.accessed_fields), set(m.called_methods), len(m.foreign_data))
                 for _, m in p.iter_methods()}
        assert before == after


class TestRoundTrip:
    def all_fixture_projects(self):
        roots = [
            fixture_path("figures"),
            fixture_path("figures", "pricing"),
            fixture_path("figures", "shop"),
        ]
        for root in roots:
            yield cm.parse_project(root, include_globs=("*.java",))

    def test_reparse_of_printed_sources_matches(self):
        for p in self.all_fixture_projects():
            q = cm.parse_sources(cm.print_project(p), p.name)
            assert set(p.classes) == set(q.classes)
            for cid in p.classes:
                mp = {m.id: m for m in p.classes[cid].methods}
                mq = {m.id: m for m in q.classes[cid].methods}
                assert set(mp) == set(mq)
                for mid in mp:
                    sig_p = [s.signature() for s in mp[mid].body]
                    sig_q = [s.signature() for s in mq[mid].body]
                    assert sig_p == sig_q


class TestSourceHelpers:
    def test_count_loc_skips_blanks_and_comments(self):
        src = "class A {\n\n// note\n/* block\n   still block */\nint x;\n}"
        assert cm.count_loc(src, (1, 7)) == 3  # class line, field, closing brace

    def test_empty_body_method_spans_two_lines(self):
        src = "class A {\n    void f(int a, int b) {\n    }\n}"
        p = project_of(src)
        m = p.classes["A"].method_named("f")
        assert cm.count_loc(src, m.span) == 2

    def test_string_literal_is_code(self):
        src = 'class A {\n    String s = "// not a comment";\n}'
        assert cm.count_loc(src, (1, 3)) == 3


class TestRewriteSource:
    SRC = "class A {\n    void f() {\n        int x = 1;\n        int y = 2;\n    }\n}"

    def test_zero_edits_identity(self):
        assert cm.rewrite_source(self.SRC, []) == self.SRC

    def test_single_span_replacement(self):
        out = cm.rewrite_source(self.SRC, [((3, 3), "        int x = 9;")])
        assert out.split("\n")[2] == "        int x = 9;"
        assert out.split("\n")[3] == "        int y = 2;"

    def test_deletion(self):
        out = cm.rewrite_source(self.SRC, [((3, 4), "")])
        assert "int x" not in out and "int y" not in out

    def test_overlap_rejected(self):
        with pytest.raises(OverlappingEditsError):
            cm.rewrite_source(self.SRC, [((3, 4), "a"), ((4, 5), "b")], verify=False)

    def test_outside_entity_span_rejected(self):
        with pytest.raises(OverlappingEditsError):
            cm.rewrite_source(self.SRC, [((1, 1), "x")], entity_span=(2, 5), verify=False)

    def test_breaking_edit_rejected(self):
        with pytest.raises(RewriteBreaksParseError):
            cm.rewrite_source(self.SRC, [((3, 3), "int x = ;")])


class TestDumpModel:
    def test_json_round_trip_and_id_keys(self):
        p = cm.parse_project(fixture_path("figures", "pricing"))
        doc = json.loads(json.dumps(cm.dump_model(p), sort_keys=True))
        assert set(doc["classes"]) == set(p.classes)
        book = doc["classes"]["Book"]
        assert set(book["fields"]) == {"Book.price", "Book.sold", "Book.weight"}
        getter = book["methods"]["Book.getPrice"]
        assert getter["called_methods"] == ["Price.getAmount"]
