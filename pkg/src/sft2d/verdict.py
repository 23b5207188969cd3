from __future__ import annotations

from dataclasses import dataclass, field
from enum import Enum
from typing import Any


class Answer(str, Enum):
    YES = "yes"
    NO = "no"
    UNKNOWN = "unknown"


@dataclass(frozen=True)
class Verdict:
    """A yes/no/unknown answer with an optional machine-checkable certificate.

    ``certificate`` is a JSON-ready mapping (index pairs, vertex sets, exponents,
    bounds).  ``reason`` is a short human-readable explanation, mostly used for
    ``unknown`` answers.
    """

    answer: Answer
    reason: str = ""
    certificate: dict[str, Any] = field(default_factory=dict)

    @classmethod
    def yes(cls, reason: str = "", **certificate: Any) -> Verdict:
        return cls(Answer.YES, reason, certificate)

    @classmethod
    def no(cls, reason: str = "", **certificate: Any) -> Verdict:
        return cls(Answer.NO, reason, certificate)

    @classmethod
    def unknown(cls, reason: str, **certificate: Any) -> Verdict:
        return cls(Answer.UNKNOWN, reason, certificate)

    @property
    def is_yes(self) -> bool:
        return self.answer is Answer.YES

    @property
    def is_no(self) -> bool:
        return self.answer is Answer.NO

    @property
    def is_unknown(self) -> bool:
        return self.answer is Answer.UNKNOWN

    def to_dict(self) -> dict[str, Any]:
        out: dict[str, Any] = {"verdict": self.answer.value}
        if self.reason:
            out["reason"] = self.reason
        out["certificate"] = self.certificate
        return out
