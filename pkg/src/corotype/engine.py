"""Composition of an ordered list of coroutine types.

The composer keeps a pending type, the external yields ``E`` and the live
coroutine instances ``theta`` in activation order.  Each call to ``step``
fires exactly one rule.  Precedence:

1. with a pending type: resume the first instance that can receive it
   (R6), otherwise append it to ``E`` (R7);
2. otherwise: clean up an exhausted instance (R1, or restore it when it is
   starred), finish when one instance or none is left (R2), let an instance
   consume another coroutine (R8), release a yielded coroutine into
   ``theta`` (R4), yield a plain type (R3), and finally report deadlock (R5).
"""

from __future__ import annotations

import enum
from dataclasses import dataclass, field, replace
from typing import Callable, Mapping, Sequence

from .core import (
    VOID,
    CoroTypeError,
    Coroutine,
    Fresh,
    LengthEvalError,
    Ref,
    TypeExpr,
    Void,
    complexity,
    hd,
    is_coroutine_like,
    rename,
    seq,
    tl,
)
from .matcher import Bindings, match, substitute

DEFAULT_STEP_LIMIT = 10_000


class ComposeError(CoroTypeError):
    """Composition cannot start or had to abort."""


class Rule(str, enum.Enum):
    CLEANUP = "R1-cleanup"
    TERMINAL_SINGLE = "R2-terminal-single"
    YIELD = "R3-yield"
    YIELD_COROUTINE = "R4-yield-coroutine"
    TERMINAL_DEADLOCK = "R5-terminal-deadlock"
    RESUME = "R6-resume"
    EXTERNAL = "R7-external"
    CONSUME_COROUTINE = "R8-consume-coroutine"
    STAR_RESTORE = "STAR-restore"
    TERMINAL_EMPTY = "EMPTY-terminal"

    def __str__(self) -> str:
        return self.value


@dataclass(frozen=True)
class CoroutineInstance:
    current: Coroutine
    instance_id: int
    original: Coroutine | None = None

    @property
    def label(self) -> str | None:
        return self.current.label

    @property
    def starred(self) -> bool:
        return self.current.starred

    @property
    def exhausted(self) -> bool:
        return isinstance(self.current.recv, Void) and isinstance(self.current.yld, Void)


@dataclass(frozen=True)
class ComposeState:
    pending: TypeExpr = VOID
    external: tuple[TypeExpr, ...] = ()
    theta: tuple[CoroutineInstance, ...] = ()
    steps_taken: int = 0
    fresh_counter: int = 0
    next_id: int = 1
    labels: Mapping[str, Coroutine] = field(default_factory=dict, compare=False)

    def measure(self) -> int:
        """C(E) + C(theta); the pending type is not counted."""
        return (sum(complexity(t) for t in self.external)
                + sum(complexity(i.current) for i in self.theta))


@dataclass(frozen=True)
class TraceEvent:
    """One fired rule.

    ``actor`` is the instance that gives (yielder, consumed coroutine, the
    instance cleaned up) and ``receiver`` the one that gets (resumed
    instance, consuming instance, the instance inserted by R4 or the
    replacement created by a restore).  Indices are positions in ``theta``
    before the step.
    """

    step: int
    rule: Rule
    complexity_before: int
    complexity_after: int
    actor_index: int | None = None
    actor_id: int | None = None
    receiver_index: int | None = None
    receiver_id: int | None = None
    bindings: Bindings | None = None
    payload: TypeExpr | None = None
    payload_complexity: int | None = None
    expanded_ref: bool = False

    @property
    def ground_step(self) -> bool:
        return (self.bindings is None or self.bindings.empty) and not self.expanded_ref


@dataclass(frozen=True)
class Terminal:
    kind: str  # "composed" | "residual"
    type: TypeExpr


@dataclass
class ComposeResult:
    kind: str  # "composed" | "residual" | "step-limit"
    type: TypeExpr | None
    state: ComposeState
    trace: list[TraceEvent]
    audit: list = field(default_factory=list)

    @property
    def steps(self) -> int:
        return len(self.trace)


class _Minter:
    """Fresh-symbol source that only commits when a match succeeds."""

    def __init__(self, start: int):
        self.next = start

    def __call__(self) -> Fresh:
        f = Fresh(self.next)
        self.next += 1
        return f


def first(theta: Sequence, predicate: Callable) -> tuple:
    """Leftmost element satisfying ``predicate`` with the elements around it.

    Returns ``(found, before, after)``; when nothing matches, ``found`` is
    ``None``, ``before`` is the whole list and ``after`` is empty.
    """
    for i, item in enumerate(theta):
        if predicate(item):
            return item, tuple(theta[:i]), tuple(theta[i + 1:])
    return None, tuple(theta), ()


def _expand(t: TypeExpr, labels: Mapping[str, Coroutine], suffix: str) -> Coroutine:
    if isinstance(t, Ref):
        try:
            return rename(labels[t.label], suffix)
        except KeyError:
            raise ComposeError(f"reference @{t.label} does not name a labeled coroutine") from None
    return t


def _instance(current: Coroutine, iid: int, labels: Mapping[str, Coroutine]) -> CoroutineInstance:
    original = labels.get(current.label, current) if current.starred else None
    return CoroutineInstance(current, iid, original)


def _substitute(t: TypeExpr, d: Bindings, step_no: int, rule: Rule) -> Coroutine:
    try:
        return substitute(t, d)
    except LengthEvalError as e:
        raise ComposeError(f"step {step_no} ({rule}): {e}") from None


def step(state: ComposeState) -> tuple[ComposeState, TraceEvent, Terminal | None]:
    """Fire one rule.  The third element is set when composition is finished."""
    theta = state.theta
    labels = state.labels
    p = state.measure()
    n = state.steps_taken + 1

    def advance(rule: Rule, new: ComposeState, **info) -> tuple:
        new = replace(new, steps_taken=n)
        return new, TraceEvent(n, rule, p, new.measure(), **info), None

    if not isinstance(state.pending, Void):
        pending = state.pending
        for i, inst in enumerate(theta):
            recv = inst.current.recv
            if isinstance(recv, Void):
                continue
            pattern = _expand(hd(recv), labels, f"#{inst.instance_id}")
            minter = _Minter(state.fresh_counter)
            d = match(pending, pattern, fresh=minter)
            if d.bottom:
                continue
            resumed = _substitute(replace(inst.current, recv=tl(recv)), d, n, Rule.RESUME)
            new_theta = theta[:i] + (replace(inst, current=resumed),) + theta[i + 1:]
            return advance(
                Rule.RESUME,
                replace(state, pending=VOID, theta=new_theta, fresh_counter=minter.next),
                receiver_index=i, receiver_id=inst.instance_id, bindings=d,
                payload=pending, payload_complexity=complexity(pending))
        return advance(
            Rule.EXTERNAL,
            replace(state, pending=VOID, external=state.external + (pending,)),
            payload=pending, payload_complexity=complexity(pending))

    # R1: exhausted instances leave; starred ones come back as declared
    for i, inst in enumerate(theta):
        if not inst.exhausted:
            continue
        if inst.starred:
            iid = state.next_id
            restored = rename(inst.original, f"#{iid}")
            new_theta = theta[:i] + (CoroutineInstance(restored, iid, inst.original),) + theta[i + 1:]
            return advance(
                Rule.STAR_RESTORE,
                replace(state, theta=new_theta, next_id=iid + 1),
                actor_index=i, actor_id=inst.instance_id, receiver_index=i, receiver_id=iid)
        return advance(Rule.CLEANUP, replace(state, theta=theta[:i] + theta[i + 1:]),
                       actor_index=i, actor_id=inst.instance_id)

    # R2 and the empty-theta terminal
    if len(theta) <= 1:
        if theta:
            only = theta[0].current
            result = Coroutine(only.recv, seq(*state.external, only.yld))
            rule = Rule.TERMINAL_SINGLE
        else:
            result = Coroutine(VOID, seq(*state.external))
            rule = Rule.TERMINAL_EMPTY
        new = replace(state, steps_taken=n)
        event = TraceEvent(n, rule, p, complexity(result),
                           actor_index=0 if theta else None,
                           actor_id=theta[0].instance_id if theta else None)
        return new, event, Terminal("composed", result)

    # R8: an instance whose demand is a coroutine consumes another instance
    for i, inst in enumerate(theta):
        recv = inst.current.recv
        if isinstance(recv, Void) or not is_coroutine_like(hd(recv)):
            continue
        pattern = _expand(hd(recv), labels, f"#{inst.instance_id}")
        for j, other in enumerate(theta):
            if j == i:
                continue
            minter = _Minter(state.fresh_counter)
            d = match(other.current, pattern, fresh=minter)
            if d.bottom:
                continue
            consumer = _substitute(replace(inst.current, recv=tl(recv)), d, n,
                                   Rule.CONSUME_COROUTINE)
            new_theta = list(theta)
            new_theta[i] = replace(inst, current=consumer)
            del new_theta[j]
            return advance(
                Rule.CONSUME_COROUTINE,
                replace(state, theta=tuple(new_theta), fresh_counter=minter.next),
                actor_index=j, actor_id=other.instance_id,
                receiver_index=i, receiver_id=inst.instance_id, bindings=d,
                payload=other.current, payload_complexity=complexity(other.current),
                expanded_ref=isinstance(hd(recv), Ref))

    # R4: a yielded coroutine joins theta right after its yielder
    for i, inst in enumerate(theta):
        cur = inst.current
        if not isinstance(cur.recv, Void) or isinstance(cur.yld, Void):
            continue
        head = hd(cur.yld)
        if not is_coroutine_like(head):
            continue
        iid = state.next_id
        released = _expand(head, labels, f"#{iid}")
        yielder = replace(inst, current=replace(cur, yld=tl(cur.yld)))
        new_theta = theta[:i] + (yielder, _instance(released, iid, labels)) + theta[i + 1:]
        return advance(
            Rule.YIELD_COROUTINE,
            replace(state, theta=new_theta, next_id=iid + 1),
            actor_index=i, actor_id=inst.instance_id, receiver_index=i + 1, receiver_id=iid,
            payload=released, payload_complexity=complexity(head),
            expanded_ref=isinstance(head, Ref))

    # R3: the first instance with nothing left to receive yields its head
    for i, inst in enumerate(theta):
        cur = inst.current
        if not isinstance(cur.recv, Void) or isinstance(cur.yld, Void):
            continue
        head = hd(cur.yld)
        yielder = replace(inst, current=replace(cur, yld=tl(cur.yld)))
        new_theta = theta[:i] + (yielder,) + theta[i + 1:]
        return advance(
            Rule.YIELD,
            replace(state, pending=head, theta=new_theta),
            actor_index=i, actor_id=inst.instance_id,
            payload=head, payload_complexity=complexity(head))

    # R5: deadlock; E followed by every remaining coroutine
    result = seq(*state.external, *(inst.current for inst in theta))
    new = replace(state, steps_taken=n)
    return new, TraceEvent(n, Rule.TERMINAL_DEADLOCK, p, complexity(result)), Terminal(
        "residual", result)


def initial_state(types: Sequence[TypeExpr],
                  labels: Mapping[str, Coroutine] | None = None) -> ComposeState:
    """Rename every declared coroutine apart and build the starting state."""
    if labels is None:
        from .syntax import collect_labels
        labels = collect_labels(types)
    theta = []
    for iid, t in enumerate(types, start=1):
        t = _expand(t, labels, f"#{iid}")
        if not isinstance(t, Coroutine):
            raise ComposeError(f"declaration {iid} is not a coroutine type")
        theta.append(_instance(rename(t, f"#{iid}"), iid, labels))
    return ComposeState(theta=tuple(theta), next_id=len(theta) + 1, labels=dict(labels))


def compose(types: Sequence[TypeExpr], step_limit: int = DEFAULT_STEP_LIMIT,
            labels: Mapping[str, Coroutine] | None = None) -> ComposeResult:
    from .audit import audit_trace

    if step_limit < 1:
        raise ValueError("step_limit must be at least 1")
    state = initial_state(types, labels)
    trace: list[TraceEvent] = []
    while state.steps_taken < step_limit:
        state, event, terminal = step(state)
        trace.append(event)
        if terminal is not None:
            return ComposeResult(terminal.kind, terminal.type, state, trace, audit_trace(trace))
    return ComposeResult("step-limit", None, state, trace, audit_trace(trace))


def state_types(state: ComposeState) -> list[TypeExpr]:
    return [inst.current for inst in state.theta]

