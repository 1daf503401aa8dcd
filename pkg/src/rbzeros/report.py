from __future__ import annotations

import json
from dataclasses import dataclass, field
from fractions import Fraction


def rational_str(q: Fraction | int) -> str:
    q = Fraction(q)
    return f"{q.numerator}/{q.denominator}"


@dataclass(frozen=True)
class Row:
    j: int
    expected: Fraction | None
    computed: Fraction | None
    label: str = ""

    @property
    def passed(self) -> bool:
        return self.expected is not None and self.expected == self.computed

    def to_dict(self) -> dict:
        d = {
            "j": self.j,
            "expected": None if self.expected is None else rational_str(self.expected),
            "computed": None if self.computed is None else rational_str(self.computed),
            "pass": self.passed,
        }
        if self.label:
            d["label"] = self.label
        return d


@dataclass(frozen=True)
class VerificationReport:
    theorem: str
    params: dict
    rows: tuple[Row, ...]
    extra: dict = field(default_factory=dict)

    @property
    def passed(self) -> bool:
        return bool(self.rows) and all(row.passed for row in self.rows)

    def summary(self) -> str:
        params = " ".join(f"{k}={v}" for k, v in self.params.items())
        bad = sum(not row.passed for row in self.rows)
        status = "PASS" if self.passed else f"FAIL ({bad} of {len(self.rows)} rows differ)"
        return f"{self.theorem} [{params}]: {status}"

    def to_dict(self) -> dict:
        d = {
            "theorem": self.theorem,
            "params": dict(self.params),
            "rows": [row.to_dict() for row in self.rows],
            "pass": self.passed,
        }
        if self.extra:
            d["extra"] = self.extra
        return d

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=2)

    def to_table(self) -> str:
        rows = [row.to_dict() for row in self.rows]
        width = max([len("expected")] + [len(str(r["expected"])) for r in rows])
        lines = [self.summary(), f"{'j':>4}  {'expected':<{width}}  {'computed':<{width}}  ok"]
        for r, row in zip(rows, self.rows):
            tag = f"  {row.label}" if row.label else ""
            ok = "yes" if r["pass"] else "NO"
            lines.append(f"{r['j']:>4}  {r['expected']!s:<{width}}  {r['computed']!s:<{width}}  {ok}{tag}")
        return "\n".join(lines)


def coefficient_rows(expected, computed, label: str = "") -> list[Row]:
    """One row per exponent comparing two IntPolynomials coefficientwise."""
    size = max(len(expected.coeffs), len(computed.coeffs), 1)
    return [
        Row(e, Fraction(expected.coeff(e)), Fraction(computed.coeff(e)), label)
        for e in range(size)
    ]
