"""Structured verdicts emitted by checkers and the sweep harness."""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from typing import Any

from .finposet import FinPoset, MonotoneMap, poset_to_json, to_jsonable


@dataclass
class Report:
    claim: str
    ref: str
    instance: Any
    verdict: bool
    witness: Any = None
    details: dict = field(default_factory=dict)

    def __bool__(self):
        return self.verdict

    def to_json(self) -> dict:
        out = {
            "claim": self.claim,
            "ref": self.ref,
            "instance": _plain(self.instance),
            "verdict": "pass" if self.verdict else "fail",
        }
        if self.witness is not None:
            out["witness"] = _plain(self.witness)
        if self.details:
            out["details"] = _plain(self.details)
        return out

    def to_line(self) -> str:
        return json.dumps(self.to_json(), sort_keys=True)


def _plain(x):
    if isinstance(x, dict):
        return {str(k): _plain(v) for k, v in x.items()}
    if isinstance(x, list):
        return [_plain(v) for v in x]
    if isinstance(x, (str, int, float, bool)) or x is None:
        return x
    if isinstance(x, FinPoset):
        return poset_to_json(x)
    if isinstance(x, (tuple, frozenset, MonotoneMap)):
        return to_jsonable(x)
    return str(x)
