"""Deterministic pass/fail reports used by validators and the CLI."""

from dataclasses import dataclass, field


@dataclass
class ReportLine:
    name: str
    ok: bool
    detail: str = ""
    advisory: bool = False


@dataclass
class Report:
    title: str = ""
    lines: list = field(default_factory=list)

    def add(self, name, ok, detail="", advisory=False):
        self.lines.append(ReportLine(name, bool(ok), detail, advisory))
        return ok

    @property
    def ok(self):
        return all(line.ok for line in self.lines if not line.advisory)

    def failures(self):
        return [line for line in self.lines if not line.ok and not line.advisory]

    def render(self):
        out = []
        if self.title:
            out.append(self.title)
        for line in self.lines:
            status = "PASS" if line.ok else ("NOTE" if line.advisory else "FAIL")
            text = f"  [{status}] {line.name}"
            if line.detail:
                text += f": {line.detail}"
            out.append(text)
        out.append(f"result: {'PASS' if self.ok else 'FAIL'}")
        return "\n".join(out)
