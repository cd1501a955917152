"""Plain-text reports: a table plus ``KEY<TAB>VALUE`` summary lines."""

from __future__ import annotations

from dataclasses import dataclass, field


@dataclass
class Report:
    title: str
    header: tuple = ()
    rows: list = field(default_factory=list)
    summary: list = field(default_factory=list)
    failures: list = field(default_factory=list)

    def add(self, *row):
        self.rows.append(tuple(str(c) for c in row))

    def put(self, key, value):
        self.summary.append((key, str(value)))

    def fail(self, message):
        self.failures.append(message)

    @property
    def ok(self):
        return not self.failures

    def extend(self, other, prefix=""):
        """Merge another report's summary and failures, keys prefixed."""
        for k, v in other.summary:
            self.summary.append((prefix + k, v))
        self.failures.extend(other.failures)

    def table(self):
        if not self.rows:
            return ""
        cols = [self.header] if self.header else []
        cols += self.rows
        widths = [max(len(r[i]) for r in cols if i < len(r)) for i in range(max(map(len, cols)))]

        def fmt(r):
            return "  ".join(c.ljust(w) for c, w in zip(r, widths)).rstrip()

        lines = []
        if self.header:
            lines.append(fmt(self.header))
            lines.append("  ".join("-" * w for w in widths))
        lines += [fmt(r) for r in self.rows]
        return "\n".join(lines)

    def summary_text(self):
        lines = [f"{k}\t{v}" for k, v in self.summary]
        lines += [f"FAILURE\t{m}" for m in self.failures]
        lines.append(f"STATUS\t{'ok' if self.ok else 'fail'}")
        return "\n".join(lines) + "\n"

    def render(self):
        parts = [f"# {self.title}"]
        table = self.table()
        if table:
            parts.append(table)
        parts.append("")
        return "\n".join(parts) + "\n" + self.summary_text()


def parse_summary(text):
    """The KEY/VALUE lines of a rendered report, in order."""
    out = []
    for line in text.splitlines():
        if "\t" in line and not line.startswith("#"):
            k, v = line.split("\t", 1)
            out.append((k, v))
    return out
