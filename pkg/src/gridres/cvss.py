"""CVSS v3.1 base-metric scoring.

Parses vector strings, evaluates the base-score equations, and maps scores
to the qualitative severity bands. Only the base metric group is covered;
temporal and environmental metrics are out of scope.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum

from .errors import VectorError

PREFIX = "CVSS:3.1"

METRIC_ORDER = ("AV", "AC", "PR", "UI", "S", "C", "I", "A")

ALLOWED = {
    "AV": ("N", "A", "L", "P"),
    "AC": ("L", "H"),
    "PR": ("N", "L", "H"),
    "UI": ("N", "R"),
    "S": ("U", "C"),
    "C": ("H", "L", "N"),
    "I": ("H", "L", "N"),
    "A": ("H", "L", "N"),
}

WEIGHTS = {
    "AV": {"N": 0.85, "A": 0.62, "L": 0.55, "P": 0.2},
    "AC": {"L": 0.77, "H": 0.44},
    "UI": {"N": 0.85, "R": 0.62},
    "C": {"H": 0.56, "L": 0.22, "N": 0.0},
    "I": {"H": 0.56, "L": 0.22, "N": 0.0},
    "A": {"H": 0.56, "L": 0.22, "N": 0.0},
}

# PR weight depends on scope: L and H are worth more when scope changes.
PR_WEIGHTS = {
    "U": {"N": 0.85, "L": 0.62, "H": 0.27},
    "C": {"N": 0.85, "L": 0.68, "H": 0.5},
}


class Severity(str, Enum):
    NONE = "None"
    LOW = "Low"
    MEDIUM = "Medium"
    HIGH = "High"
    CRITICAL = "Critical"

    def __str__(self):
        return self.value


@dataclass(frozen=True)
class CvssVector:
    """One value per base metric, single-letter codes as in the grammar."""

    av: str
    ac: str
    pr: str
    ui: str
    s: str
    c: str
    i: str
    a: str

    def canonical(self) -> str:
        """Canonical string form, always prefixed, metrics in fixed order."""
        return (
            f"{PREFIX}/AV:{self.av}/AC:{self.ac}/PR:{self.pr}/UI:{self.ui}"
            f"/S:{self.s}/C:{self.c}/I:{self.i}/A:{self.a}"
        )

    def __str__(self):
        return self.canonical()


@dataclass(frozen=True)
class CvssScore:
    iss: float
    impact: float
    exploitability: float
    base: float
    severity: Severity


def parse_vector(text: str) -> CvssVector:
    """Parse a v3.1 vector string.

    The CVSS:3.1/ prefix is optional, metric order is free, and keys and
    values are matched case-insensitively. Rejects unknown keys, illegal
    values, duplicates, and missing metrics, naming the offending token.
    """
    if not isinstance(text, str) or not text.strip():
        raise VectorError("empty vector string")
    parts = text.strip().split("/")
    if parts and parts[0].upper().startswith("CVSS:"):
        if parts[0].upper() != PREFIX:
            raise VectorError(f"unsupported prefix {parts[0]!r}; expected {PREFIX}")
        parts = parts[1:]
    seen: dict[str, str] = {}
    for part in parts:
        if not part or ":" not in part:
            raise VectorError(f"malformed metric segment {part!r}")
        key, _, value = part.partition(":")
        key = key.strip().upper()
        value = value.strip().upper()
        if key not in ALLOWED:
            raise VectorError(f"unknown metric key {key!r}")
        if key in seen:
            raise VectorError(f"duplicate metric {key!r}")
        if value not in ALLOWED[key]:
            raise VectorError(f"illegal value {value!r} for metric {key}")
        seen[key] = value
    missing = [m for m in METRIC_ORDER if m not in seen]
    if missing:
        raise VectorError("missing metric(s): " + ", ".join(missing))
    return CvssVector(
        av=seen["AV"], ac=seen["AC"], pr=seen["PR"], ui=seen["UI"],
        s=seen["S"], c=seen["C"], i=seen["I"], a=seen["A"],
    )


def roundup(x: float) -> float:
    """Smallest one-decimal value >= x, via the v3.1 integer technique.

    Works on an integer view of the fifth decimal so accumulated float error
    below 1e-5 cannot flip the result (e.g. 8.6 stays 8.6 even when computed
    as 8.6000000000000003).
    """
    v = int(math.floor(x * 100000 + 0.5))
    if v % 10000 == 0:
        return v / 100000.0
    return (v // 10000 + 1) / 10.0


def _pow15(x: float) -> float:
    # x**15 by squaring (15 = 8+4+2+1): libm-free, bit-stable across platforms.
    x2 = x * x
    x4 = x2 * x2
    x8 = x4 * x4
    return x8 * x4 * x2 * x


def severity(base: float) -> Severity:
    """Qualitative band for a base score in [0, 10]."""
    if not 0.0 <= base <= 10.0:
        raise VectorError(f"base score {base!r} outside [0, 10]")
    tenths = int(round(base * 10))
    if tenths == 0:
        return Severity.NONE
    if tenths <= 39:
        return Severity.LOW
    if tenths <= 69:
        return Severity.MEDIUM
    if tenths <= 89:
        return Severity.HIGH
    return Severity.CRITICAL


def base_score(vector: CvssVector) -> CvssScore:
    """Evaluate the base-score equations for a parsed vector."""
    iss = 1.0 - (
        (1.0 - WEIGHTS["C"][vector.c])
        * (1.0 - WEIGHTS["I"][vector.i])
        * (1.0 - WEIGHTS["A"][vector.a])
    )
    if vector.s == "U":
        impact = 6.42 * iss
    else:
        impact = 7.52 * (iss - 0.029) - 3.25 * _pow15(iss - 0.02)
    exploitability = (
        8.22
        * WEIGHTS["AV"][vector.av]
        * WEIGHTS["AC"][vector.ac]
        * PR_WEIGHTS[vector.s][vector.pr]
        * WEIGHTS["UI"][vector.ui]
    )
    if impact <= 0.0:
        base = 0.0
    elif vector.s == "U":
        base = roundup(min(impact + exploitability, 10.0))
    else:
        base = roundup(min(1.08 * (impact + exploitability), 10.0))
    return CvssScore(
        iss=iss,
        impact=impact,
        exploitability=exploitability,
        base=base,
        severity=severity(base),
    )


def all_vectors():
    """Yield every legal base vector (2592 combinations)."""
    for av in ALLOWED["AV"]:
        for ac in ALLOWED["AC"]:
            for pr in ALLOWED["PR"]:
                for ui in ALLOWED["UI"]:
                    for s in ALLOWED["S"]:
                        for c in ALLOWED["C"]:
                            for i in ALLOWED["I"]:
                                for a in ALLOWED["A"]:
                                    yield CvssVector(av, ac, pr, ui, s, c, i, a)
