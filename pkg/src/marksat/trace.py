"""Replayable run traces: newline-delimited structured records."""

from __future__ import annotations

import hashlib
import json
from dataclasses import dataclass
from typing import Any, Optional

# Event kinds emitted by the algorithm engine.
RECALCULATE = "recalculate"
MARK_SET = "mark_set"
TYPE_CHANGED = "type_changed"
CONCEPT_ADDED = "concept_added"
CONCEPT_CONSIDERED = "concept_considered"
CHOICE = "choice"
RECURSE_ENTER = "recurse_enter"
RECURSE_EXIT = "recurse_exit"
FIXPOINT_REACHED = "fixpoint_reached"
UNDEFINED_HIT = "undefined_hit"
STATE_REVISIT = "state_revisit"

EVENT_KINDS = frozenset(
    {
        RECALCULATE,
        MARK_SET,
        TYPE_CHANGED,
        CONCEPT_ADDED,
        CONCEPT_CONSIDERED,
        CHOICE,
        RECURSE_ENTER,
        RECURSE_EXIT,
        FIXPOINT_REACHED,
        UNDEFINED_HIT,
        STATE_REVISIT,
    }
)


@dataclass(frozen=True)
class TraceEvent:
    step: int
    kind: str
    payload: dict[str, Any]

    def to_json_line(self) -> str:
        return json.dumps(
            {"step": self.step, "kind": self.kind, "payload": self.payload},
            sort_keys=True,
            separators=(",", ":"),
        )


class TraceLog:
    """In-memory single-producer event sink with stable serialization."""

    def __init__(self) -> None:
        self.events: list[TraceEvent] = []

    def append(self, event: TraceEvent) -> None:
        if self.events and event.step <= self.events[-1].step:
            raise ValueError("trace steps must be strictly increasing")
        self.events.append(event)

    def __len__(self) -> int:
        return len(self.events)

    def __iter__(self):
        return iter(self.events)

    def to_jsonl(self) -> str:
        return "".join(e.to_json_line() + "\n" for e in self.events)

    def digest(self) -> str:
        return hashlib.sha256(self.to_jsonl().encode("ascii")).hexdigest()

    def write(self, path: str) -> None:
        with open(path, "w", encoding="ascii") as fh:
            fh.write(self.to_jsonl())

    def find(self, kind: str, **payload_filter: Any) -> list[TraceEvent]:
        out = []
        for e in self.events:
            if e.kind != kind:
                continue
            if all(e.payload.get(k) == v for k, v in payload_filter.items()):
                out.append(e)
        return out


def parse_trace(text: str) -> list[TraceEvent]:
    events = []
    for line in text.splitlines():
        if not line.strip():
            continue
        obj = json.loads(line)
        events.append(TraceEvent(obj["step"], obj["kind"], obj["payload"]))
    return events


def first_of_kind(log: TraceLog, kind: str) -> Optional[TraceEvent]:
    for e in log:
        if e.kind == kind:
            return e
    return None
