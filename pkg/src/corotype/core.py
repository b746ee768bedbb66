"""Type and length expressions for coroutine types.

Every node is an immutable dataclass.  ``normalize`` puts a type into the
canonical form the rest of the package assumes: flat sequences with no
``Void`` members, no singleton sequences, and empty lists collapsed to
``Void``.
"""

from __future__ import annotations

from dataclasses import dataclass, replace
from typing import Union


class CoroTypeError(Exception):
    """Base class for errors raised by this package."""


class LengthEvalError(CoroTypeError):
    """A length expression cannot be evaluated (``dec`` of zero)."""


class DecompositionError(CoroTypeError):
    """``hd`` or ``tl`` was applied to the empty type."""


# --- length expressions ----------------------------------------------------

_GREEK = "αβγδεζηθικλμνξοπρστυφχψω"


@dataclass(frozen=True)
class Literal:
    n: int


@dataclass(frozen=True)
class LVar:
    name: str


@dataclass(frozen=True)
class Fresh:
    """A length minted when an indefinite list is bound to a length variable."""

    id: int

    @property
    def name(self) -> str:
        return f"{_GREEK[self.id % len(_GREEK)]}{self.id // len(_GREEK)}"


@dataclass(frozen=True)
class Dec:
    inner: LengthExpr


@dataclass(frozen=True)
class Min:
    a: LengthExpr
    b: LengthExpr


@dataclass(frozen=True)
class Star:
    pass


LengthExpr = Union[Literal, LVar, Fresh, Dec, Min, Star]
STAR = Star()


# --- type expressions ------------------------------------------------------

@dataclass(frozen=True)
class Void:
    pass


@dataclass(frozen=True)
class Concrete:
    name: str


@dataclass(frozen=True)
class Var:
    name: str


@dataclass(frozen=True)
class Seq:
    items: tuple[TypeExpr, ...]


@dataclass(frozen=True)
class Tuple:
    items: tuple[TypeExpr, ...]


@dataclass(frozen=True)
class ListOf:
    elem: TypeExpr
    length: LengthExpr


@dataclass(frozen=True)
class Coroutine:
    recv: TypeExpr
    yld: TypeExpr
    label: str | None = None
    starred: bool = False

    def __post_init__(self):
        if self.starred and self.label is None:
            raise ValueError("a starred coroutine needs a label")

    def unlabeled(self) -> Coroutine:
        return Coroutine(self.recv, self.yld)


@dataclass(frozen=True)
class Ref:
    label: str


TypeExpr = Union[Void, Concrete, Var, Seq, Tuple, ListOf, Coroutine, Ref]
VOID = Void()


def seq(*items: TypeExpr) -> TypeExpr:
    """Build a normalized sequence from ``items``."""
    return normalize(Seq(tuple(items)))


# --- lengths ---------------------------------------------------------------

def eval_length(length: LengthExpr) -> LengthExpr:
    """Reduce ``dec`` and ``min`` over literals; symbolic parts stay as they are."""
    match length:
        case Dec(inner):
            inner = eval_length(inner)
            if isinstance(inner, Literal):
                if inner.n < 1:
                    raise LengthEvalError("dec(0) has no value")
                return Literal(inner.n - 1)
            return Dec(inner)
        case Min(a, b):
            a, b = eval_length(a), eval_length(b)
            if isinstance(a, Literal) and isinstance(b, Literal):
                return Literal(min(a.n, b.n))
            return Min(a, b)
        case _:
            return length


def _is_zero(length: LengthExpr) -> bool:
    try:
        return eval_length(length) == Literal(0)
    except LengthEvalError:
        return False


# --- normalization ---------------------------------------------------------

def normalize(t: TypeExpr) -> TypeExpr:
    match t:
        case Seq(items):
            flat: list[TypeExpr] = []
            for item in items:
                item = normalize(item)
                if isinstance(item, Seq):
                    flat.extend(item.items)
                elif not isinstance(item, Void):
                    flat.append(item)
            if not flat:
                return VOID
            if len(flat) == 1:
                return flat[0]
            return Seq(tuple(flat))
        case Tuple(items):
            return Tuple(tuple(normalize(i) for i in items))
        case ListOf(elem, length):
            elem = normalize(elem)
            if isinstance(elem, Void) or length == Literal(0):
                return VOID
            return ListOf(elem, length)
        case Coroutine(recv, yld):
            return replace(t, recv=normalize(recv), yld=normalize(yld))
        case _:
            return t


# --- head / tail -----------------------------------------------------------

def hd(t: TypeExpr) -> TypeExpr:
    """First atomic unit of a normalized type.  Lists and tuples are atomic."""
    if isinstance(t, Void):
        raise DecompositionError("the empty type has no head")
    if isinstance(t, Seq):
        return hd(t.items[0])
    return t


def tl(t: TypeExpr) -> TypeExpr:
    """Everything after ``hd(t)``."""
    if isinstance(t, Void):
        raise DecompositionError("the empty type has no tail")
    if isinstance(t, Seq):
        return normalize(Seq((tl(t.items[0]),) + t.items[1:]))
    return VOID


# --- complexity ------------------------------------------------------------

def complexity(t: TypeExpr) -> int:
    match t:
        case Void():
            return 0
        case Concrete() | Var() | Ref():
            return 1
        case Coroutine(recv, yld):
            return complexity(recv) + complexity(yld) + 1
        case Seq(items) | Tuple(items):
            return sum(complexity(i) for i in items)
        case ListOf(elem, length):
            # a list that denotes the empty type weighs the same as Void
            if _is_zero(length) or isinstance(normalize(elem), Void):
                return 0
            return complexity(elem) + 1
    raise TypeError(f"not a type expression: {t!r}")


# --- renaming --------------------------------------------------------------

def base_name(name: str) -> str:
    return name.split("#", 1)[0]


def _rename_length(length: LengthExpr, suffix: str) -> LengthExpr:
    match length:
        case LVar(name):
            return LVar(base_name(name) + suffix)
        case Dec(inner):
            return Dec(_rename_length(inner, suffix))
        case Min(a, b):
            return Min(_rename_length(a, suffix), _rename_length(b, suffix))
        case _:
            return length


def rename(t: TypeExpr, suffix: str) -> TypeExpr:
    """Replace the instance suffix of every type and length variable in ``t``.

    Any earlier suffix (the part after ``#``) is dropped first, so renaming
    twice with the same suffix is the same as renaming once, and
    ``rename(t, "")`` erases suffixes altogether.
    """
    match t:
        case Var(name):
            return Var(base_name(name) + suffix)
        case Seq(items):
            return Seq(tuple(rename(i, suffix) for i in items))
        case Tuple(items):
            return Tuple(tuple(rename(i, suffix) for i in items))
        case ListOf(elem, length):
            return ListOf(rename(elem, suffix), _rename_length(length, suffix))
        case Coroutine(recv, yld):
            return replace(t, recv=rename(recv, suffix), yld=rename(yld, suffix))
        case _:
            return t


def is_coroutine_like(t: TypeExpr) -> bool:
    return isinstance(t, (Coroutine, Ref))


def type_vars(t: TypeExpr) -> set[str]:
    """Names of all type and length variables occurring in ``t``."""
    out: set[str] = set()

    def length_vars(length: LengthExpr):
        match length:
            case LVar(name):
                out.add(name)
            case Dec(inner):
                length_vars(inner)
            case Min(a, b):
                length_vars(a)
                length_vars(b)

    def walk(t: TypeExpr):
        match t:
            case Var(name):
                out.add(name)
            case Seq(items) | Tuple(items):
                for i in items:
                    walk(i)
            case ListOf(elem, length):
                walk(elem)
                length_vars(length)
            case Coroutine(recv, yld):
                walk(recv)
                walk(yld)

    walk(t)
    return out
