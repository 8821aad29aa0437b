"""Line-oriented check reports shared by the verification routines."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Any


@dataclass
class CheckReport:
    name: str
    passed: bool
    cases: int
    witness: Any = None
    detail: dict = field(default_factory=dict)

    def line(self) -> str:
        text = f"CHECK {self.name} {'pass' if self.passed else 'fail'} cases={self.cases}"
        if self.witness is not None:
            text += f" witness={_compact(self.witness)}"
        return text

    def __bool__(self) -> bool:
        return self.passed


def _compact(obj: Any) -> str:
    return str(obj).replace(" ", "")
