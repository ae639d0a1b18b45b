"""Pass/fail report objects shared by the checking routines.

A report is a list of named checks.  Failures carry witnesses (basis
labels and the offending values) instead of raising: a broken axiom is
report content, not an error.  Witness lists are truncated but the total
failure count is always kept.
"""

MAX_WITNESSES = 5


class Check:
    __slots__ = ("name", "status", "witnesses", "failures", "detail")

    def __init__(self, name, status, witnesses=(), failures=0, detail=""):
        self.name = name
        self.status = status  # "pass" | "fail" | "na"
        self.witnesses = tuple(witnesses)
        self.failures = failures
        self.detail = detail

    def to_dict(self):
        d = {"name": self.name, "status": self.status}
        if self.detail:
            d["detail"] = self.detail
        if self.status == "fail":
            d["failures"] = self.failures
            d["witnesses"] = [list(w) for w in self.witnesses]
        return d

    def __repr__(self):
        return f"Check({self.name}: {self.status})"


class Report:
    def __init__(self, title, checks=()):
        self.title = title
        self.checks = list(checks)

    def add(self, name, failures, detail="", applicable=True):
        """Record a check from a list of failure witnesses."""
        if not applicable:
            self.checks.append(Check(name, "na", detail=detail))
        elif failures:
            self.checks.append(Check(name, "fail", failures[:MAX_WITNESSES],
                                     len(failures), detail))
        else:
            self.checks.append(Check(name, "pass", detail=detail))
        return self

    @property
    def ok(self):
        return all(c.status != "fail" for c in self.checks)

    def failed_checks(self):
        return [c for c in self.checks if c.status == "fail"]

    def first_failure(self):
        for c in self.checks:
            if c.status == "fail":
                return c
        return None

    def __getitem__(self, name):
        for c in self.checks:
            if c.name == name:
                return c
        raise KeyError(name)

    def to_dict(self):
        return {"title": self.title, "ok": self.ok,
                "checks": [c.to_dict() for c in self.checks]}

    def summary(self):
        lines = [f"{self.title}: {'ok' if self.ok else 'FAILED'}"]
        for c in self.checks:
            line = f"  [{c.status:>4}] {c.name}"
            if c.detail:
                line += f" ({c.detail})"
            if c.status == "fail" and c.witnesses:
                line += f" first witness: {c.witnesses[0]}"
            lines.append(line)
        return "\n".join(lines)

    def __repr__(self):
        return f"Report({self.title}, ok={self.ok})"
