"""Composition calculus for coroutine types."""

from .audit import AuditVerdict, audit_delta, audit_trace
from .core import (
    STAR,
    VOID,
    Concrete,
    Coroutine,
    CoroTypeError,
    Dec,
    Fresh,
    ListOf,
    Literal,
    LVar,
    Min,
    Ref,
    Seq,
    Star,
    Tuple,
    Var,
    Void,
    complexity,
    eval_length,
    hd,
    normalize,
    rename,
    tl,
)
from .engine import ComposeError, ComposeResult, ComposeState, Rule, compose, first, step
from .matcher import BOTTOM, EMPTY, Bindings, match, substitute, union, unify_length
from .syntax import ParseError, Program, ProgramError, parse_program, parse_type, print_type

__version__ = "0.1.0"

__all__ = [
    "AuditVerdict",
    "audit_delta",
    "audit_trace",
    "STAR",
    "VOID",
    "Concrete",
    "Coroutine",
    "CoroTypeError",
    "Dec",
    "Fresh",
    "ListOf",
    "Literal",
    "LVar",
    "Min",
    "Ref",
    "Seq",
    "Star",
    "Tuple",
    "Var",
    "Void",
    "complexity",
    "eval_length",
    "hd",
    "normalize",
    "rename",
    "tl",
    "ComposeError",
    "ComposeResult",
    "ComposeState",
    "Rule",
    "compose",
    "first",
    "step",
    "BOTTOM",
    "EMPTY",
    "Bindings",
    "match",
    "substitute",
    "union",
    "unify_length",
    "ParseError",
    "Program",
    "ProgramError",
    "parse_program",
    "parse_type",
    "print_type",
]
