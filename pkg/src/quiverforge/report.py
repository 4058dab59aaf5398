"""
Small report objects shared by the verification routines and the CLI.
"""

from dataclasses import dataclass, field

PASS = "pass"
FAIL = "fail"
UNRESOLVED = "unresolved"


@dataclass
class Check:
    name: str
    status: str
    detail: str = ""

    @property
    def ok(self):
        return self.status == PASS


@dataclass
class Report:
    title: str
    checks: list = field(default_factory=list)

    def add(self, name, status, detail=""):
        if status is True:
            status = PASS
        elif status is False:
            status = UNRESOLVED
        self.checks.append(Check(name, status, detail))
        return status == PASS

    def extend(self, other, prefix=""):
        for c in other.checks:
            self.checks.append(Check(prefix + c.name, c.status, c.detail))

    @property
    def ok(self):
        return all(c.ok for c in self.checks)

    @property
    def status(self):
        if any(c.status == FAIL for c in self.checks):
            return FAIL
        if any(c.status == UNRESOLVED for c in self.checks):
            return UNRESOLVED
        return PASS

    def failures(self):
        return [c for c in self.checks if not c.ok]

    def find(self, name):
        for c in self.checks:
            if c.name == name:
                return c
        raise KeyError(name)

    def summary(self):
        n = len(self.checks)
        bad = len(self.failures())
        return "%s: %d/%d checks passed" % (self.title, n - bad, n)

    def render(self, verbose=False):
        lines = [self.summary()]
        for c in self.checks:
            if verbose or not c.ok:
                line = "  [%s] %s" % (c.status, c.name)
                if c.detail:
                    line += ": " + c.detail
                lines.append(line)
        return "\n".join(lines)

    def to_dict(self):
        return {"title": self.title, "status": self.status,
                "checks": [{"name": c.name, "status": c.status, "detail": c.detail}
                           for c in self.checks]}
