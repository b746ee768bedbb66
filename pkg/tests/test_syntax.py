import pytest
from hypothesis import given

from corotype.core import (
    STAR,
    VOID,
    Concrete,
    Coroutine,
    Dec,
    Fresh,
    ListOf,
    Literal,
    LVar,
    Min,
    Ref,
    Seq,
    Tuple,
    Var,
    normalize,
)
from corotype.syntax import ParseError, ProgramError, parse_program, parse_type, print_type

from gen import type_exprs

Int, String, S, T, U = (Concrete(n) for n in ("Int", "String", "S", "T", "U"))
x, y = Var("x"), Var("y")


@pytest.mark.parametrize("text, expected", [
    ("<(Int,Int) ; Int^*>", Coroutine(Tuple((Int, Int)), ListOf(Int, STAR))),
    ("void", VOID),
    ("<[x^i, y^j] ; (x,y)^min(i,j)>",
     Coroutine(Seq((ListOf(x, LVar("i")), ListOf(y, LVar("j")))),
               ListOf(Tuple((x, y)), Min(LVar("i"), LVar("j"))))),
    ("(x, y^dec(i))", Tuple((x, ListOf(y, Dec(LVar("i")))))),
    ("@rec", Ref("rec")),
    ("[S, [T, U]]", Seq((S, T, U))),
    ("[void, S]", S),
    ("[S]", S),
    ("T^0", VOID),
    ("T^3^2", ListOf(ListOf(T, Literal(3)), Literal(2))),
    ("eq: <(x, x) ; T^*>", Coroutine(Tuple((x, x)), ListOf(T, STAR), "eq")),
    ("rec*: <S ; [U, @rec]>", Coroutine(S, Seq((U, Ref("rec"))), "rec", True)),
    ("<x#3 ; y#3^i#3>", Coroutine(Var("x#3"), ListOf(Var("y#3"), LVar("i#3")))),
    ("  <S;T>  ", Coroutine(S, T)),
])
def test_parse_type(text, expected):
    assert parse_type(text) == expected


@pytest.mark.parametrize("t, text", [
    (Coroutine(S, Seq((T, U))), "<S ; [T, U]>"),
    (ListOf(Tuple((String, String)), Min(Fresh(0), Fresh(1))), "(String, String)^min(α0, β0)"),
    (VOID, "void"),
    (Coroutine(VOID, VOID, "a", True), "a*: <void ; void>"),
    (ListOf(Coroutine(S, T, "a"), Literal(2)), "a: <S ; T>^2"),
])
def test_print_type(t, text):
    assert print_type(t) == text


@pytest.mark.parametrize("text, line, col", [
    ("<S ; T", 1, 7),
    ("()", 1, 2),
    ("(S)", 1, 1),
    ("[S, T]^3", 1, 1),
    ("<S ; T> extra", 1, 9),
    ("S^", 1, 3),
    ("a: S", 1, 4),
    ("$", 1, 1),
])
def test_parse_errors_report_positions(text, line, col):
    with pytest.raises(ParseError) as exc:
        parse_type(text)
    assert (exc.value.line, exc.value.col) == (line, col)


def test_fresh_symbols_reparse_as_length_variables():
    printed = print_type(ListOf(T, Fresh(0)))
    assert parse_type(printed) == ListOf(T, LVar("α0"))


@given(type_exprs)
def test_round_trip(t):
    t = normalize(t)
    assert parse_type(print_type(t)) == t


@given(type_exprs)
def test_parse_output_is_normalized(t):
    parsed = parse_type(print_type(t))
    assert normalize(parsed) == parsed


def test_program_of_three_coroutines():
    program = parse_program("a: <S;T>\nl: <void;S>\nb: <S;U>")
    assert program.types == [Coroutine(S, T, "a"), Coroutine(VOID, S, "l"), Coroutine(S, U, "b")]
    assert [d.label for d in program.decls] == ["a", "l", "b"]


def test_program_with_starred_labels():
    program = parse_program("a*: <void; <S;T>>\nb*: <<S;T>; void>")
    assert [d.starred for d in program.decls] == [True, True]
    assert program.types[0] == Coroutine(VOID, Coroutine(S, T), "a", True)


def test_empty_program():
    assert parse_program("").decls == ()
    assert parse_program("# only a comment\n\n").decls == ()


def test_program_comments_and_lines():
    program = parse_program("# header\n\na: <S ; T>  # trailing\n<void ; S>\n")
    assert [d.line for d in program.decls] == [3, 4]
    assert program.decls[1].label is None


def test_program_collects_nested_labels():
    program = parse_program("r: <S ; [eq: <(x, x) ; T>, @eq]>")
    assert set(program.labels) == {"r", "eq"}


def test_duplicate_label_is_rejected():
    with pytest.raises(ProgramError):
        parse_program("a: <S ; T>\na: <S ; U>")


def test_identical_redeclaration_is_allowed():
    program = parse_program("r1: <S ; eq: <x ; T>>\nr2: <S ; eq: <x ; T>>")
    assert "eq" in program.labels


def test_unresolved_reference():
    with pytest.raises(ProgramError):
        parse_program("a: <S ; @nowhere>")


def test_star_without_label():
    with pytest.raises(ParseError):
        parse_program("*: <S ; T>")


def test_program_error_positions():
    with pytest.raises(ParseError) as exc:
        parse_program("a: <S ; T>\nb: <S ; (T)>")
    assert exc.value.line == 2
