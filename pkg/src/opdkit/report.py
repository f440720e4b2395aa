"""Outcome of a decision procedure."""

import json
import os
from dataclasses import dataclass, field

from .errors import EnumerationLimitError

DEFAULT_MAX_ENUM = 10 ** 6


def max_enum():
    """Cap on the size of any single enumeration (``OPDKIT_MAX_ENUM``)."""
    raw = os.environ.get("OPDKIT_MAX_ENUM")
    if raw is None:
        return DEFAULT_MAX_ENUM
    try:
        return int(raw)
    except ValueError:
        raise EnumerationLimitError(f"OPDKIT_MAX_ENUM is not an integer: {raw!r}")


def check_enum_size(n, what="enumeration"):
    limit = max_enum()
    if n > limit:
        raise EnumerationLimitError(f"{what} has {n} elements, above the cap of {limit}")


@dataclass
class CheckReport:
    check: str
    verdict: bool
    bound: int = 0
    checked: int = 0
    skipped: int = 0
    witness: object = None
    details: dict = field(default_factory=dict)

    def __bool__(self):
        return self.verdict

    def as_dict(self):
        return {
            "check": self.check,
            "verdict": self.verdict,
            "bound": self.bound,
            "coverage": {"checked": self.checked, "skipped": self.skipped},
            "witness": jsonable(self.witness),
        }

    def to_json(self, **kw):
        return json.dumps(self.as_dict(), **kw)

    def summary(self):
        status = "PASS" if self.verdict else "FAIL"
        line = (f"{self.check}: {status} (verified up to bound {self.bound}; "
                f"{self.checked} checked, {self.skipped} skipped)")
        if self.witness is not None and not self.verdict:
            line += f"\n  witness: {json.dumps(jsonable(self.witness))}"
        return line


def jsonable(value):
    """Convert tuples, sets and other containers to JSON-friendly values."""
    if value is None or isinstance(value, (bool, int, float, str)):
        return value
    if isinstance(value, dict):
        return {str(k): jsonable(v) for k, v in value.items()}
    if hasattr(value, "as_dict"):
        return jsonable(value.as_dict())
    if isinstance(value, (list, tuple)):
        return [jsonable(v) for v in value]
    if isinstance(value, (set, frozenset)):
        return sorted((jsonable(v) for v in value), key=repr)
    if hasattr(value, "images"):
        return list(value.images)
    return str(value)
