from __future__ import annotations

from dataclasses import dataclass, field


@dataclass(frozen=True)
class Violation:
    check: str
    cell: str
    detail: str

    def to_json(self) -> dict:
        return {"check": self.check, "cell": self.cell, "detail": self.detail}


@dataclass
class ValidationReport:
    """Collects every violated condition instead of stopping at the first one."""

    violations: list[Violation] = field(default_factory=list)

    def add(self, check: str, cell: str, detail: str) -> None:
        self.violations.append(Violation(check, str(cell), detail))

    def extend(self, other: "ValidationReport") -> None:
        self.violations.extend(other.violations)

    @property
    def ok(self) -> bool:
        return not self.violations

    def __bool__(self) -> bool:
        return self.ok

    def __len__(self) -> int:
        return len(self.violations)

    def __iter__(self):
        return iter(self.violations)

    def checks(self) -> set[str]:
        return {v.check for v in self.violations}

    def cells(self, check: str | None = None) -> set[str]:
        return {v.cell for v in self.violations if check is None or v.check == check}

    def to_json(self) -> list[dict]:
        return [v.to_json() for v in self.violations]

    def __str__(self) -> str:
        if self.ok:
            return "valid"
        return "\n".join(f"{v.check} [{v.cell}]: {v.detail}" for v in self.violations)
