"""Verification reports: exact polynomial comparisons with machine-readable
JSON output."""

from __future__ import annotations

import hashlib
import json
from dataclasses import dataclass, field

from .exactmath import MPoly


def _poly_hash(p: MPoly) -> str:
    return hashlib.sha256(p.dumps().encode()).hexdigest()


def first_diff(lhs: MPoly, rhs: MPoly) -> dict | None:
    """The smallest (dx, dy) where the two polynomials differ, or None."""
    keys = sorted(set(lhs.terms) | set(rhs.terms))
    for key in keys:
        a, b = lhs.coeff(*key), rhs.coeff(*key)
        if a != b:
            return {
                "dx": key[0],
                "dy": key[1],
                "lhs": [str(c) for c in a.coeffs],
                "rhs": [str(c) for c in b.coeffs],
            }
    return None


@dataclass
class VerificationReport:
    """Outcome of one exact identity check between two polynomials."""

    name: str
    type: str
    mode: str
    m: int | None
    lhs: MPoly
    rhs: MPoly
    equal: bool = field(init=False)
    note: str = ""

    def __post_init__(self):
        self.equal = self.lhs == self.rhs

    @property
    def diff(self) -> dict | None:
        return None if self.equal else first_diff(self.lhs, self.rhs)

    def to_json_obj(self) -> dict:
        return {
            "check": self.name,
            "type": self.type,
            "mode": self.mode,
            "m": self.m,
            "equal": self.equal,
            "lhs_hash": _poly_hash(self.lhs),
            "rhs_hash": _poly_hash(self.rhs),
            "first_diff": self.diff,
            "note": self.note,
        }

    def dumps(self) -> str:
        return json.dumps(self.to_json_obj(), sort_keys=True, separators=(",", ":"))

    def summary_line(self) -> str:
        status = "PASS" if self.equal else "FAIL"
        mpart = "m=*" if self.m is None else f"m={self.m}"
        return f"[{status}] {self.name} {self.type} {self.mode} {mpart}"
