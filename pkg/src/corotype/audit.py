"""Checks each composition transition against the complexity bounds.

With ``p = C(E) + C(theta)`` before a transition and ``x`` the complexity
of the type that moves, the allowed value of ``C(E') + C(theta')`` after
it is:

=====================  ===========================
yield, then resume     ``[p - 2 - 2x, p - 2x]``
yield, then external   ``[p - 1, p]``
yield a coroutine      ``[p - 1, p]``
consume a coroutine    ``[p - 2x - 1, p - 2x]``
deadlock terminal      ``[p, p]``
lone cleanup           ``[p - 1, p - 1]``
=====================  ===========================

A paired transition includes the cleanups of the instances it touched.
Steps that bind variables, expand references, or restore starred
coroutines can legitimately grow the measure and are reported as skipped.
"""

from __future__ import annotations

from dataclasses import dataclass

from .engine import Rule, TraceEvent

OK = "ok"
OUT_OF_BOUNDS = "out-of-bounds"
SKIPPED = "skipped-nonground"


@dataclass(frozen=True)
class AuditVerdict:
    status: str
    rules: tuple[str, ...]
    steps: tuple[int, ...]
    p: int
    after: int
    low: int | None = None
    high: int | None = None
    x: int | None = None

    def describe(self) -> str:
        pair = "+".join(self.rules)
        where = ",".join(str(s) for s in self.steps)
        if self.status == SKIPPED:
            return f"{self.status}: {pair} at step {where}"
        return (f"{self.status}: {pair} at step {where}: p={self.p} x={self.x} "
                f"after={self.after} allowed=[{self.low}, {self.high}]")


def _interval(lead: TraceEvent, paired: TraceEvent | None) -> tuple[int, int] | None:
    p = lead.complexity_before
    x = lead.payload_complexity or 0
    match lead.rule, paired.rule if paired else None:
        case Rule.YIELD, Rule.RESUME:
            return p - 2 - 2 * x, p - 2 * x
        case Rule.YIELD, Rule.EXTERNAL:
            return p - 1, p
        case Rule.YIELD_COROUTINE, None:
            return p - 1, p
        case Rule.CONSUME_COROUTINE, None:
            return p - 2 * x - 1, p - 2 * x
        case Rule.TERMINAL_DEADLOCK, None:
            return p, p
        case Rule.CLEANUP, None:
            return p - 1, p - 1
    return None


def audit_delta(event: TraceEvent, paired_with: TraceEvent | None = None,
                after: int | None = None) -> AuditVerdict:
    """Verdict for one transition.

    ``paired_with`` is the step that consumed a yielded type; ``after``
    overrides the closing measure when trailing cleanups belong to the
    transition.
    """
    events = [event] if paired_with is None else [event, paired_with]
    last = events[-1]
    if after is None:
        after = last.complexity_after
    rules = tuple(str(e.rule) for e in events)
    steps = tuple(e.step for e in events)
    p = event.complexity_before
    if event.rule is Rule.STAR_RESTORE or not all(e.ground_step for e in events):
        return AuditVerdict(SKIPPED, rules, steps, p, after)
    bounds = _interval(event, paired_with)
    if bounds is None:
        raise ValueError(f"no complexity bound for {'+'.join(rules)}")
    low, high = bounds
    status = OK if low <= after <= high else OUT_OF_BOUNDS
    return AuditVerdict(status, rules, steps, p, after, low, high, event.payload_complexity)


def audit_trace(trace: list[TraceEvent]) -> list[AuditVerdict]:
    verdicts = []
    i = 0
    while i < len(trace):
        event = trace[i]
        paired = None
        touched: set[int] = set()
        j = i + 1
        if event.rule is Rule.YIELD:
            if j >= len(trace):
                break  # stopped with the yield still pending
            paired = trace[j]
            touched = {event.actor_id, paired.receiver_id}
            j += 1
        elif event.rule is Rule.YIELD_COROUTINE:
            touched = {event.actor_id}
        elif event.rule is Rule.CONSUME_COROUTINE:
            touched = {event.receiver_id}
        elif event.rule in (Rule.TERMINAL_SINGLE, Rule.TERMINAL_EMPTY):
            i += 1
            continue
        while (j < len(trace) and trace[j].rule is Rule.CLEANUP
               and trace[j].actor_id in touched):
            j += 1
        verdicts.append(audit_delta(event, paired, trace[j - 1].complexity_after))
        i = j
    return verdicts


def out_of_bounds(verdicts: list[AuditVerdict]) -> list[AuditVerdict]:
    return [v for v in verdicts if v.status == OUT_OF_BOUNDS]
