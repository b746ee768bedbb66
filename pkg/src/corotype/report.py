"""Text and JSON renderings of composition results and traces."""

from __future__ import annotations

import json

from .core import seq
from .engine import ComposeResult, ComposeState, TraceEvent
from .matcher import Bindings
from .syntax import print_length, print_type


def bindings_record(d: Bindings | None) -> dict | None:
    if d is None:
        return None
    if d.bottom:
        return {"bottom": True}
    out = {name: print_type(t) for name, t in sorted(d.types.items())}
    out.update((name, print_length(n)) for name, n in sorted(d.lengths.items()))
    return out


def event_record(event: TraceEvent) -> dict:
    return {
        "step": event.step,
        "ruleId": str(event.rule),
        "actorIndex": event.actor_index,
        "receiverIndex": event.receiver_index,
        "actorId": event.actor_id,
        "receiverId": event.receiver_id,
        "bindings": bindings_record(event.bindings),
        "payload": None if event.payload is None else print_type(event.payload),
        "complexityBefore": event.complexity_before,
        "complexityAfter": event.complexity_after,
        "groundStep": event.ground_step,
    }


def event_json(event: TraceEvent) -> str:
    return json.dumps(event_record(event), ensure_ascii=False)


def event_line(event: TraceEvent) -> str:
    parts = [f"{event.step:>5}", f"{event.rule!s:<22}",
             f"C {event.complexity_before}->{event.complexity_after}"]
    if event.actor_index is not None:
        parts.append(f"actor={event.actor_index}")
    if event.receiver_index is not None:
        parts.append(f"receiver={event.receiver_index}")
    if event.payload is not None:
        parts.append(f"type={print_type(event.payload)}")
    d = bindings_record(event.bindings)
    if d:
        parts.append("{" + ", ".join(f"{k}={v}" for k, v in d.items()) + "}")
    return "  ".join(parts)


def state_lines(state: ComposeState) -> list[str]:
    lines = [f"pending: {print_type(state.pending)}",
             f"external: {print_type(seq(*state.external))}",
             "theta:"]
    lines += [f"  {print_type(inst.current)}" for inst in state.theta]
    return lines


def result_lines(result: ComposeResult) -> list[str]:
    if result.kind == "step-limit":
        return [f"step limit reached after {result.steps} steps"] + state_lines(result.state)
    return [print_type(result.type)]


def result_record(result: ComposeResult) -> dict:
    record = {"result": result.kind, "steps": result.steps}
    if result.type is not None:
        record["type"] = print_type(result.type)
    else:
        record["state"] = state_lines(result.state)
    return record
