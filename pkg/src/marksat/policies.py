"""Injectable resolution of every "take any" point, for exact replay.

Choice-point labels: ``compute.pop``, ``D.concept``, ``D.literal``, ``G.pair``,
``U.clause``, ``U.literal``. A policy is consulted only at points with more
than one option; single-option points are forced and recorded in the trace
without consuming policy state.
"""

from __future__ import annotations

import json
import random
from dataclasses import dataclass, field
from typing import Sequence

CHOICE_LABELS = frozenset(
    {"compute.pop", "D.concept", "D.literal", "G.pair", "U.clause", "U.literal"}
)


class ScriptExhaustedError(Exception):
    """A strict scripted replay ran out of entries or hit a label mismatch."""


class ChoicePolicy:
    """Resolves one choice point; stateful, one instance per run."""

    kind = "abstract"

    def choose(self, label: str, n_options: int) -> int:
        raise NotImplementedError

    def describe(self) -> str:
        return self.kind


class FifoPolicy(ChoicePolicy):
    """Always take the first pending option (deterministic default)."""

    kind = "fifo"

    def choose(self, label: str, n_options: int) -> int:
        return 0


class SeededRandomPolicy(ChoicePolicy):
    """Deterministic pseudo-random choices from a 64-bit seed."""

    kind = "seeded_random"

    def __init__(self, seed: int):
        self.seed = seed
        self._rng = random.Random(seed)

    def choose(self, label: str, n_options: int) -> int:
        return self._rng.randrange(n_options)

    def describe(self) -> str:
        return f"seeded_random({self.seed})"


@dataclass
class ChoiceScript:
    """Ordered (label, index) entries addressing consulted choice points.

    ``on_exhausted`` controls what happens at a consulted point whose label
    does not match the next pending entry (or once entries run out):
    ``error`` aborts the run, ``fifo`` falls back to the first option.
    """

    entries: list[tuple[str, int]] = field(default_factory=list)
    on_exhausted: str = "error"

    def __post_init__(self) -> None:
        if self.on_exhausted not in ("error", "fifo"):
            raise ValueError("on_exhausted must be 'error' or 'fifo'")
        for label, idx in self.entries:
            if label not in CHOICE_LABELS:
                raise ValueError(f"unknown choice-point label {label!r}")
            if idx < 0:
                raise ValueError("script indices must be non-negative")

    def to_json(self) -> str:
        return json.dumps(
            {"entries": [[l, i] for l, i in self.entries], "on_exhausted": self.on_exhausted},
            indent=2,
        )

    @classmethod
    def from_json(cls, text: str) -> "ChoiceScript":
        obj = json.loads(text)
        entries = [(str(l), int(i)) for l, i in obj["entries"]]
        return cls(entries=entries, on_exhausted=obj.get("on_exhausted", "error"))

    def save(self, path: str) -> None:
        with open(path, "w", encoding="ascii") as fh:
            fh.write(self.to_json() + "\n")

    @classmethod
    def load(cls, path: str) -> "ChoiceScript":
        with open(path, "r", encoding="ascii") as fh:
            return cls.from_json(fh.read())


class ScriptedPolicy(ChoicePolicy):
    """Replays a ChoiceScript; consumption is strictly in entry order."""

    kind = "scripted"

    def __init__(self, script: ChoiceScript):
        self.script = script
        self._cursor = 0

    def choose(self, label: str, n_options: int) -> int:
        entries = self.script.entries
        if self._cursor < len(entries) and entries[self._cursor][0] == label:
            idx = entries[self._cursor][1]
            self._cursor += 1
            if idx >= n_options:
                raise ScriptExhaustedError(
                    f"script entry {self._cursor - 1} selects index {idx} at {label!r} "
                    f"but only {n_options} options exist"
                )
            return idx
        if self.script.on_exhausted == "fifo":
            return 0
        if self._cursor >= len(entries):
            raise ScriptExhaustedError(
                f"script exhausted at choice point {label!r} ({n_options} options)"
            )
        raise ScriptExhaustedError(
            f"script entry {self._cursor} is for {entries[self._cursor][0]!r} "
            f"but the run reached {label!r}"
        )

    def entries_remaining(self) -> int:
        return len(self.script.entries) - self._cursor

    def describe(self) -> str:
        return f"scripted({len(self.script.entries)} entries, {self.script.on_exhausted})"


class TrailPolicy(ChoicePolicy):
    """A fixed index prefix with FIFO tail; used by the script search."""

    kind = "trail"

    def __init__(self, prefix: Sequence[int]):
        self.prefix = list(prefix)
        self._cursor = 0

    def choose(self, label: str, n_options: int) -> int:
        if self._cursor < len(self.prefix):
            idx = self.prefix[self._cursor]
            self._cursor += 1
            if idx >= n_options:
                raise ScriptExhaustedError(
                    f"trail index {idx} out of range at {label!r} ({n_options} options)"
                )
            return idx
        return 0


def make_policy(kind: str, seed: int = 0, script: ChoiceScript | None = None) -> ChoicePolicy:
    if kind == "fifo":
        return FifoPolicy()
    if kind in ("seeded_random", "random"):
        return SeededRandomPolicy(seed)
    if kind == "scripted":
        if script is None:
            raise ValueError("scripted policy needs a script")
        return ScriptedPolicy(script)
    raise ValueError(f"unknown policy kind {kind!r}")
