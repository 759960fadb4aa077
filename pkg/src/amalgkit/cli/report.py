"""Reports: the verdict records a command produced, rendered as a text
table or as JSON.  Both renderings carry the same verdict data and the
exit code is computed from that data alone."""
import json
from dataclasses import asdict, dataclass, field

EXIT_OK, EXIT_COUNTEREXAMPLE, EXIT_INPUT = 0, 1, 2


@dataclass
class Record:
    id: str
    instance: str
    verdict: bool
    witness: dict = None
    counts: dict = field(default_factory=dict)
    label: str = ""
    counterexamples: list = field(default_factory=list)


@dataclass
class Report:
    command: str
    records: list = field(default_factory=list)
    info: dict = field(default_factory=dict)
    timing: dict = None

    def add(self, *args, **kw):
        self.records.append(Record(*args, **kw))

    def exit_code(self):
        return EXIT_COUNTEREXAMPLE if any(not r.verdict for r in self.records) else EXIT_OK

    def verdict_data(self):
        return [(r.id, r.instance, r.verdict, r.witness) for r in self.records]

    def to_dict(self):
        d = {"command": self.command, "info": self.info,
             "records": [asdict(r) for r in self.records], "exit_code": self.exit_code()}
        if self.timing is not None:
            d["timing"] = self.timing
        return d

    def to_json(self):
        return json.dumps(self.to_dict(), sort_keys=True, indent=2) + "\n"

    @classmethod
    def from_json(cls, text):
        d = json.loads(text)
        return cls(d["command"], [Record(**r) for r in d["records"]], d.get("info", {}),
                   d.get("timing"))

    def to_text(self):
        lines = [f"# {self.command}"]
        for key, value in self.info.items():
            if isinstance(value, list) and any(" " in str(v) for v in value):
                lines.append(f"{key}:")
                lines.extend(f"  {_fmt(v)}" for v in value)
            else:
                lines.append(f"{key}: {_fmt(value)}")
        if self.records:
            width = max(len(r.label or r.id) for r in self.records)
            for r in self.records:
                head = r.label if r.label.endswith(":") else (r.label or r.id).ljust(width)
                sep = " " if head.endswith(":") else "  "
                line = f"{head}{sep}{'YES' if r.verdict else 'NO'}"
                if r.witness:
                    line += ", witness " + " ".join(f"{k}={v}" for k, v in r.witness.items())
                if r.counts:
                    line += "  " + " ".join(f"{k}={v}" for k, v in r.counts.items())
                lines.append(line)
                for cex in r.counterexamples[:5]:
                    lines.append(f"    counterexample {cex.get('digest', '')} {json.dumps(cex.get('case'))}")
                if len(r.counterexamples) > 5:
                    lines.append(f"    ... {len(r.counterexamples) - 5} more")
        if self.timing is not None:
            lines.append("timing: " + " ".join(f"{k}={v}" for k, v in self.timing.items()))
        return "\n".join(lines) + "\n"

    def render(self, fmt):
        return self.to_json() if fmt == "json" else self.to_text()


def _fmt(v):
    if isinstance(v, dict):
        return " ".join(f"{k}={_fmt(x)}" for k, x in v.items())
    if isinstance(v, (list, tuple)):
        return "{" + ", ".join(str(x) for x in v) + "}"
    return str(v)
