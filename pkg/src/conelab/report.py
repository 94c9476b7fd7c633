"""Pass/fail reports produced by the law checkers."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Any


@dataclass
class Report:
    """Outcome of a batch of checks.

    ``witnesses`` holds one entry per failed check, ``{"law": ..., "witness":
    {...}}``, where the witness carries the library objects needed to replay
    the failure.  ``stats`` holds counts; ``result`` is an optional payload
    (a computed barycenter, a list of verdicts, ...).
    """

    verb: str
    witnesses: list[dict[str, Any]] = field(default_factory=list)
    stats: dict[str, Any] = field(default_factory=dict)
    result: Any = None
    checked: int = 0

    @property
    def ok(self) -> bool:
        return not self.witnesses

    @property
    def status(self) -> str:
        return "pass" if self.ok else "fail"

    def fail(self, law: str, **witness: Any) -> None:
        self.witnesses.append({"law": law, "witness": witness})

    def require(self, condition: bool, law: str, **witness: Any) -> bool:
        self.checked += 1
        if not condition:
            self.fail(law, **witness)
        return condition

    def absorb(self, other: Report) -> Report:
        self.witnesses.extend(other.witnesses)
        self.checked += other.checked
        return self

    def laws_failed(self) -> set[str]:
        return {w["law"] for w in self.witnesses}

    def __bool__(self) -> bool:
        return self.ok
