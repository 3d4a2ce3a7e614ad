"""Verification reports shared by the checking routines and the CLI."""
from __future__ import annotations

import json
from dataclasses import dataclass, field
from typing import Any


@dataclass
class Report:
    name: str
    checked: int = 0
    failures: list[str] = field(default_factory=list)
    sizes: dict[str, Any] = field(default_factory=dict)
    entries: list[tuple[str, bool]] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return not self.failures and all(ok for _, ok in self.entries)

    def record(self, label: str, ok: bool, detail: str | None = None):
        """Count one check; failures keep ``detail`` (or ``label``) for the report."""
        self.checked += 1
        self.entries.append((label, bool(ok)))
        if not ok:
            self.failures.append(detail or label)

    def fail(self, detail: str):
        self.checked += 1
        self.failures.append(detail)

    def tick(self, n: int = 1):
        self.checked += n

    def to_dict(self) -> dict:
        return {
            "name": self.name,
            "passed": self.passed,
            "checked": self.checked,
            "failures": list(self.failures),
            "sizes": dict(self.sizes),
            "entries": [{"check": label, "passed": ok} for label, ok in self.entries],
        }

    def to_json(self, **kw) -> str:
        return json.dumps(self.to_dict(), sort_keys=True, **kw)

    def __str__(self):
        status = "PASS" if self.passed else "FAIL"
        lines = [f"{self.name}: {status} ({self.checked} checks)"]
        lines += [f"  {'ok  ' if ok else 'FAIL'} {label}" for label, ok in self.entries]
        if self.sizes:
            lines += [f"  {k} = {v}" for k, v in self.sizes.items()]
        unlisted = [f for f in self.failures if f not in {label for label, _ in self.entries}]
        lines += [f"  failure: {f}" for f in unlisted[:20]]
        return "\n".join(lines)
