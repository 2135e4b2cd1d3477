import pytest
from hypothesis import given, settings, strategies as st

from sctestgen.expr import (Binary, BoolLit, IntLit, Ref, SourceError, Unary, atoms, evaluate,
                            parse_expr, to_text, tokenize)

SCOPE = {"change": "int", "amount": "int", "total": "int", "x": "int", "y": "int",
         "p": "bool", "q": "bool"}


def test_guard_comparison():
    assert parse_expr("change < 0", SCOPE) == Binary("<", Ref("change"), IntLit(0))


def test_bool_literal():
    assert parse_expr("true", SCOPE) == BoolLit(True)


def test_or_of_comparisons():
    e = parse_expr("amount - total == 0 or change > 0", SCOPE)
    assert e == Binary(
        "or",
        Binary("==", Binary("-", Ref("amount"), Ref("total")), IntLit(0)),
        Binary(">", Ref("change"), IntLit(0)),
    )


@pytest.mark.parametrize("text, expected", [
    ("x + y * 2", Binary("+", Ref("x"), Binary("*", Ref("y"), IntLit(2)))),
    ("x - y - 1", Binary("-", Binary("-", Ref("x"), Ref("y")), IntLit(1))),
    ("p or q and p", Binary("or", Ref("p"), Binary("and", Ref("q"), Ref("p")))),
    ("not p and q", Binary("and", Unary("not", Ref("p")), Ref("q"))),
    ("-x * 3", Binary("*", Unary("-", Ref("x")), IntLit(3))),
    ("(x + 1) * 2", Binary("*", Binary("+", Ref("x"), IntLit(1)), IntLit(2))),
    ("p == (x < y)", Binary("==", Ref("p"), Binary("<", Ref("x"), Ref("y")))),
])
def test_precedence(text, expected):
    assert parse_expr(text, SCOPE) == expected


@pytest.mark.parametrize("text, kind, col", [
    ("x < y < 1", "parse", 7),
    ("x $ 1", "lex", 3),
    ("x +", "parse", 4),
    ("zz > 1", "resolve", 1),
    ("p + 1", "type", 3),
    ("x and p", "type", 3),
    ("not x", "type", 1),
    ("-p", "type", 1),
    ("p < q", "type", 3),
    ("x == p", "type", 3),
    ("(x", "parse", 3),
    ("x 1", "parse", 3),
])
def test_errors_are_located(text, kind, col):
    with pytest.raises(SourceError) as info:
        parse_expr(text, SCOPE)
    assert info.value.kind == kind
    assert (info.value.line, info.value.column) == (1, col)


def test_expected_type():
    with pytest.raises(SourceError) as info:
        parse_expr("x + 1", SCOPE, expected="bool")
    assert info.value.kind == "type"


def test_tokenize_comment_and_columns():
    toks = tokenize("a := b # note", line=4)
    assert [(t.value, t.col) for t in toks] == [("a", 1), (":=", 3), ("b", 6), ("", 14)]
    assert all(t.line == 4 for t in toks)


def test_evaluate():
    env = {"amount": 500, "total": 400, "change": 100, "p": False}
    assert evaluate(parse_expr("amount - total", SCOPE), env) == 100
    assert evaluate(parse_expr("change > 0 and not p", SCOPE), env) is True
    assert evaluate(parse_expr("-change * 2", SCOPE), env) == -200


def test_atoms():
    e = parse_expr("x < 1 or not (p and y == 2)", SCOPE)
    assert [to_text(a) for a in atoms(e)] == ["x < 1", "p", "y == 2"]


# -- fuzzing: random trees printed and re-parsed ------------------------------

INT_NAMES, BOOL_NAMES = ("x", "y"), ("p", "q")
BINOPS = ("+", "-", "*", "<", "<=", ">", ">=", "==", "!=", "and", "or")

leaves = st.one_of(
    st.integers(0, 50).map(IntLit),
    st.booleans().map(BoolLit),
    st.sampled_from(INT_NAMES + BOOL_NAMES).map(Ref),
)
trees = st.recursive(
    leaves,
    lambda sub: st.one_of(
        st.tuples(st.sampled_from(("not", "-")), sub).map(lambda t: Unary(*t)),
        st.tuples(st.sampled_from(BINOPS), sub, sub).map(lambda t: Binary(*t)),
    ),
    max_leaves=12,
)


def check(tree):
    """Independent type checker: the type of ``tree`` or None if ill-typed."""
    if isinstance(tree, IntLit):
        return "int"
    if isinstance(tree, BoolLit):
        return "bool"
    if isinstance(tree, Ref):
        return "int" if tree.name in INT_NAMES else "bool"
    if isinstance(tree, Unary):
        t = check(tree.operand)
        want = "bool" if tree.op == "not" else "int"
        return want if t == want else None
    a, b = check(tree.left), check(tree.right)
    if a is None or b is None:
        return None
    if tree.op in ("+", "-", "*"):
        return "int" if a == b == "int" else None
    if tree.op in ("<", "<=", ">", ">="):
        return "bool" if a == b == "int" else None
    if tree.op in ("==", "!="):
        return "bool" if a == b else None
    return "bool" if a == b == "bool" else None


@settings(max_examples=1000)
@given(trees)
def test_fuzz_roundtrip_and_rejection(tree):
    text = to_text(tree)
    if check(tree) is None:
        with pytest.raises(SourceError) as info:
            parse_expr(text, SCOPE)
        assert info.value.kind == "type"
    else:
        assert parse_expr(text, SCOPE) == tree
