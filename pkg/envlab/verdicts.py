"""Check verdicts and reports shared by the checkers and the workbench."""

from __future__ import annotations

from dataclasses import dataclass, field
from enum import Enum
from typing import TYPE_CHECKING, Any

if TYPE_CHECKING:
    from collections.abc import Iterable


class Verdict(Enum):
    """Outcome of a check or one of its instances."""

    PASS = "pass"
    FAIL = "fail"
    INCONCLUSIVE = "inconclusive"
    ERROR = "error"


def combine(verdicts: Iterable[Verdict]) -> Verdict:
    """Worst verdict: error, then fail, then inconclusive, then pass."""
    seen = set(verdicts)
    for verdict in (Verdict.ERROR, Verdict.FAIL, Verdict.INCONCLUSIVE):
        if verdict in seen:
            return verdict
    return Verdict.PASS


@dataclass(frozen=True)
class CheckInstance:
    """One checked instance with the data needed to replay it."""

    name: str
    verdict: Verdict
    witness: dict[str, Any] = field(default_factory=dict)

    def to_dict(self) -> dict[str, Any]:
        """Serialization."""
        return {"name": self.name, "verdict": self.verdict.value, "witness": self.witness}


@dataclass(frozen=True)
class CheckReport:
    """Named check with an overall verdict and its instances."""

    name: str
    verdict: Verdict
    instances: tuple[CheckInstance, ...] = ()
    depth: int | None = None
    elapsed: float = field(default=0.0, compare=False)
    summary: dict[str, Any] = field(default_factory=dict)

    @classmethod
    def from_instances(
        cls,
        name: str,
        instances: Iterable[CheckInstance],
        depth: int | None = None,
        elapsed: float = 0.0,
        summary: dict[str, Any] | None = None,
    ) -> CheckReport:
        """Report whose verdict combines the instance verdicts."""
        items = tuple(instances)
        return cls(name, combine(i.verdict for i in items), items, depth, elapsed, summary or {})

    @classmethod
    def error(cls, name: str, code: str, message: str) -> CheckReport:
        """Report for a check that raised."""
        instance = CheckInstance(name, Verdict.ERROR, {"code": code, "message": message})
        return cls(name, Verdict.ERROR, (instance,))

    @property
    def counterexamples(self) -> list[CheckInstance]:
        """Failed instances."""
        return [i for i in self.instances if i.verdict is Verdict.FAIL]

    def with_elapsed(self, elapsed: float) -> CheckReport:
        """Copy with a measured run time."""
        return CheckReport(self.name, self.verdict, self.instances, self.depth, elapsed, self.summary)

    def fraction(self) -> str:
        """Passed instances over all instances, as ``k/n``."""
        passed = sum(1 for i in self.instances if i.verdict is Verdict.PASS)
        return f"{passed}/{len(self.instances)}"

    def to_dict(self) -> dict[str, Any]:
        """Serialization without the timing, which is reported separately."""
        data: dict[str, Any] = {
            "name": self.name,
            "verdict": self.verdict.value,
            "instances": [i.to_dict() for i in sorted(self.instances, key=lambda i: i.name)],
        }
        if self.depth is not None:
            data["depth"] = self.depth
        if self.summary:
            data["summary"] = self.summary
        return data
