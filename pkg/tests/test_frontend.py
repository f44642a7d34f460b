from __future__ import annotations

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from dbsplit.corpus import fuzz_workload, source
from dbsplit.corpus.fuzz import fuzz_program
from dbsplit.frontend import DeclarationError, SyntaxErr, ast as A, dump_ast, format_program, load, normalize, parse
from dbsplit.interp import run_reference


def kinds(p: A.Program, func: str) -> list[str]:
    return [s.kind for s in A.walk(p.func(func).body)]


def test_minimal_program():
    p = parse("fn main() { print(1); }")
    assert [f.name for f in p.functions] == ["main"]
    stmts = list(A.walk(p.func("main").body))
    assert len(stmts) == 1 and stmts[0].expr.func == "print"
    n = list(A.walk(load("fn main() { print(1); }").func("main").body))
    assert [s.kind for s in n] == ["print", "return"]


def test_neworder_shape():
    p = parse(source("neworder"))
    order = p.cls("Order")
    assert order.field_names() == ("id", "realCosts", "totalCost")
    assert [f.kind for f in order.fields] == ["int", "array", "float"]
    assert any(isinstance(s, A.ForEach) for s in A.walk(p.func("computeTotalCost").body))
    assert p.entry_points == frozenset({"newOrder"})


def test_unmatched_brace_points_at_opening_line():
    with pytest.raises(SyntaxErr) as e:
        parse("fn f() {\n    print(1);\n\n")
    assert e.value.loc.line == 1
    assert "never closed" in str(e.value)


def test_syntax_error_location():
    with pytest.raises(SyntaxErr) as e:
        parse("fn f() {\n  print(1)\n}\n")
    assert (e.value.loc.line, e.value.loc.column) == (3, 1)


@pytest.mark.parametrize("src, needle", [
    ("fn f() {} fn f() {}", "duplicate declaration of function 'f'"),
    ("class A { int x; int x; }", "duplicate field 'x'"),
    ("fn f() { var x; var x; }", "duplicate declaration of 'x'"),
    ("fn f() { return y; }", "unknown identifier 'y'"),
    ("fn f() { h(); }", "unknown function 'h'"),
    ("fn f() { var o = new B(); }", "unknown class 'B'"),
])
def test_declaration_errors(src, needle):
    with pytest.raises(DeclarationError) as e:
        parse(src)
    assert needle in str(e.value)


def test_normalize_splits_heap_access_and_call():
    p = load("class A { int f; } fn g(b) { return b; } "
             "entry fn main(a, b) { var x = a.f + g(b); return x; }")
    body = [s for s in A.walk(p.func("main").body)]
    assert [s.kind for s in body[:3]] == ["field-read", "call", "assign"]
    assert (body[0].target, body[0].obj, body[0].field) == ("$t1", "a", "f")
    assert (body[1].target, body[1].func) == ("$t2", "g")
    assert body[2].target == "x"
    assert body[2].expr == A.Binary("+", A.Var("$t1"), A.Var("$t2"))


def test_normalize_post_increment_index():
    p = load("entry fn f(n) { var r = new int[n]; var i = 0; var c = 1; r[i++] = c; return i; }")
    text = format_program(p)
    assert "    r[i] = c;\n    i = i + 1;\n" in text


def test_foreach_becomes_counted_loop():
    p = load(source("neworder"))
    ks = kinds(p, "computeTotalCost")
    assert "loop-head" in ks and "array-len" in ks
    assert not any(isinstance(s, A.ForEach) for _, s in p.statements())


def test_statement_ids_are_preorder_and_unique():
    p = load(source("neworder"))
    sids = [s.sid for _, s in p.statements()]
    assert sids == list(range(1, len(sids) + 1))


def test_normal_form_one_heap_access():
    p = load(source("neworder"))
    for _, s in p.statements():
        assert s.kind in A.NORMAL_KINDS


def test_normalize_idempotent_on_corpus():
    for name in ("neworder", "micro2", "linkedlist"):
        p = load(source(name))
        assert normalize(p) == p


def test_printed_normal_form_reparses_to_same_program():
    p = load(source("neworder"))
    assert load(format_program(p)) == p


def test_dump_ast_lists_ids_kinds_and_locations():
    text = dump_ast(load("fn main() { print(1); }"))
    assert "[1] print" in text and "@1:13" in text


@settings(max_examples=25, deadline=None)
@given(st.integers(min_value=0, max_value=10_000))
def test_normalize_idempotent_on_generated_programs(seed):
    p = load(fuzz_program(seed))
    assert normalize(p) == p


@settings(max_examples=15, deadline=None)
@given(st.integers(min_value=0, max_value=10_000))
def test_normal_form_text_preserves_semantics(seed):
    p = load(fuzz_program(seed))
    w = fuzz_workload(seed)
    a = run_reference(p, w)
    b = run_reference(load(format_program(p)), w)
    assert (a.lines, a.db) == (b.lines, b.db)
