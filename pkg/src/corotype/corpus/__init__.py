"""Bundled example programs with their expected composition results."""

from __future__ import annotations

from dataclasses import dataclass
from importlib import resources
from typing import Callable

from ..core import Coroutine, Seq, TypeExpr, Void, hd
from ..engine import ComposeResult, compose
from ..syntax import Program, parse_program, print_type


def leading(result: ComposeResult) -> TypeExpr | None:
    """First externally visible type of a result.

    For a residual that is its first element; for a composed coroutine it is
    the head of the yielding part.
    """
    t = result.type
    if result.kind == "composed" and isinstance(t, Coroutine):
        t = t.yld
    if t is None or isinstance(t, Void):
        return None
    return hd(t)


def residual_items(result: ComposeResult) -> list[TypeExpr]:
    t = result.type
    if t is None or isinstance(t, Void):
        return []
    return list(t.items) if isinstance(t, Seq) else [t]


def _labeled(items, label):
    return [t for t in items if isinstance(t, Coroutine) and t.label == label]


def _exact(kind: str, text: str) -> Callable[[ComposeResult], bool]:
    def check(result: ComposeResult) -> bool:
        return result.kind == kind and print_type(result.type) == text
    return check


def _leads_with(text: str) -> Callable[[ComposeResult], bool]:
    def check(result: ComposeResult) -> bool:
        head = leading(result)
        return result.kind != "step-limit" and head is not None and print_type(head) == text
    return check


def _not_leads_with(text: str) -> Callable[[ComposeResult], bool]:
    def check(result: ComposeResult) -> bool:
        head = leading(result)
        return result.kind != "step-limit" and (head is None or print_type(head) != text)
    return check


def _mem_nonmember(result: ComposeResult) -> bool:
    items = residual_items(result)
    return (result.kind == "residual" and bool(items) and print_type(items[0]) == "F^*"
            and any(t.starred for t in _labeled(items, "rec1"))
            and any(t.starred for t in _labeled(items, "rec2"))
            and len(_labeled(items, "eq")) >= 1)


def _step_limit(result: ComposeResult) -> bool:
    return result.kind == "step-limit" and not result.state.external


@dataclass(frozen=True)
class CorpusEntry:
    name: str
    filename: str
    expected: str
    check: Callable[[ComposeResult], bool]
    step_limit: int = 10_000

    def source(self) -> str:
        return resources.files(__name__).joinpath(self.filename).read_text(encoding="utf-8")

    def program(self) -> Program:
        return parse_program(self.source())

    def run(self) -> ComposeResult:
        program = self.program()
        return compose(program.types, self.step_limit, program.labels)


ENTRIES = [
    CorpusEntry("first-receiver", "first_receiver.cot", "<S ; [T, U]>",
                _exact("composed", "<S ; [T, U]>")),
    CorpusEntry("unique-receiver", "unique_receiver.cot", "<void ; U>",
                _exact("composed", "<void ; U>")),
    CorpusEntry("star-cycle", "star_cycle.cot",
                "step limit reached with E empty", _step_limit, step_limit=50),
    CorpusEntry("zip-files", "zip_files.cot", "<void ; (String, String)^min(α0, β0)>",
                _exact("composed", "<void ; (String, String)^min(α0, β0)>")),
    CorpusEntry("mem-member", "mem_member.cot", "first external yield is T^*",
                _leads_with("T^*")),
    CorpusEntry("mem-nonmember", "mem_nonmember.cot",
                "residual starts with F^*, keeps rec1*, rec2* and an unused eq",
                _mem_nonmember),
    CorpusEntry("prolog-sue", "prolog_sue.cot", "first result is Yes", _leads_with("Yes")),
    CorpusEntry("prolog-jane", "prolog_jane.cot", "first result is not Yes",
                _not_leads_with("Yes")),
    CorpusEntry("mapping-t", "mapping_t.cot", "[a: <T ; Int>, out: <Int ; Shown>]",
                _exact("residual", "[a: <T ; Int>, out: <Int ; Shown>]")),
    CorpusEntry("mapping-other", "mapping_other.cot", "[a: <T ; Int>, out: <Int ; Shown>]",
                _exact("residual", "[a: <T ; Int>, out: <Int ; Shown>]")),
]


def get(name: str) -> CorpusEntry:
    for entry in ENTRIES:
        if entry.name == name:
            return entry
    raise KeyError(name)
