from collections import Counter
from dataclasses import dataclass, field


@dataclass
class Report:
    """Outcome of a property suite: per-law check counts plus violating witnesses."""

    name: str
    params: dict = field(default_factory=dict)
    checks: Counter = field(default_factory=Counter)
    violations: list = field(default_factory=list)

    @property
    def ok(self):
        return not self.violations

    def check(self, law, holds, witness=None):
        self.checks[law] += 1
        if not holds:
            self.violations.append((law, witness))
        return holds

    def merge(self, other, prefix=""):
        for law, n in other.checks.items():
            self.checks[prefix + law] += n
        self.violations.extend((prefix + law, w) for law, w in other.violations)

    def failed_laws(self):
        return sorted({law for law, _ in self.violations})

    def render(self, max_witnesses=5):
        head = " ".join(f"{k}={v}" for k, v in self.params.items())
        lines = [f"# {self.name} {head}".rstrip()]
        for law in sorted(self.checks):
            bad = sum(1 for l, _ in self.violations if l == law)
            status = "ok" if bad == 0 else f"FAIL ({bad} violations)"
            lines.append(f"{law:<40} {self.checks[law]:>6} checks  {status}")
        for law, witness in self.violations[:max_witnesses]:
            lines.append(f"witness {law}: {witness}")
        lines.append("PASS" if self.ok else "FAIL")
        return "\n".join(lines)
