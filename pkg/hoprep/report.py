"""
Per-technique statistics and their text and JSON renderings.
"""

import json
from typing import Dict, List, Optional

from .core import clauses_of


def count_literals(clauses) -> int:
    return sum(len(c) for c in clauses_of(clauses))


class TechniqueStats:
    """
    Counters of one technique, accumulated over all pipeline rounds.
    """

    def __init__(self, name, clauses=None):
        self.name = name
        self.clauses_before = 0
        self.clauses_after = 0
        self.literals_before = 0
        self.literals_after = 0
        self.predicates_eliminated: List[str] = []
        self.branches: List[str] = []
        self.rounds = 0
        self.certificates: List[object] = []
        self.derived_units: List[object] = []
        self._started = False

        if clauses is not None:
            self.start(clauses)

    def start(self, clauses):
        """
        Record the input size; only the first call counts.
        """
        if not self._started:
            self.clauses_before = len(clauses_of(clauses))
            self.literals_before = count_literals(clauses)
            self.clauses_after = self.clauses_before
            self.literals_after = self.literals_before
            self._started = True

    def finish(self, clauses):
        self.clauses_after = len(clauses_of(clauses))
        self.literals_after = count_literals(clauses)

    def merge(self, other: "TechniqueStats"):
        """
        Fold the stats of a later run of the same technique into this one.
        """
        if not self._started:
            self.clauses_before = other.clauses_before
            self.literals_before = other.literals_before
            self._started = True
        self.clauses_after = other.clauses_after
        self.literals_after = other.literals_after
        self.predicates_eliminated.extend(other.predicates_eliminated)
        self.branches.extend(other.branches)
        self.rounds += other.rounds
        self.certificates.extend(other.certificates)
        self.derived_units.extend(other.derived_units)

    @property
    def clauses_removed(self) -> int:
        return self.clauses_before - self.clauses_after

    @property
    def literals_removed(self) -> int:
        return self.literals_before - self.literals_after

    def __str__(self):
        line = "%s removed %d clauses in %d rounds" % (
            self.name,
            self.clauses_removed,
            self.rounds,
        )
        if self.literals_removed:
            line += ", %d literals" % self.literals_removed
        if self.predicates_eliminated:
            line += ", eliminated %s" % ", ".join(
                "%s (%s)" % pair for pair in zip(self.predicates_eliminated, self.branches)
            )
        if self.derived_units:
            line += ", %d derived units" % len(self.derived_units)
        return line

    def to_dict(self) -> Dict[str, object]:
        return {
            "name": self.name,
            "clauses_before": self.clauses_before,
            "clauses_after": self.clauses_after,
            "clauses_removed": self.clauses_removed,
            "literals_before": self.literals_before,
            "literals_after": self.literals_after,
            "literals_removed": self.literals_removed,
            "predicates_eliminated": [
                {"symbol": symbol, "branch": branch}
                for symbol, branch in zip(self.predicates_eliminated, self.branches)
            ],
            "rounds": self.rounds,
            "certificates": [str(c) for c in self.certificates],
            "derived_units": [str(u) for u in self.derived_units],
        }


class Report:
    """
    What a pipeline run did: technique stats in first-run order, pipeline
    rounds and wall time.
    """

    def __init__(self):
        self.techniques: Dict[str, TechniqueStats] = {}
        self.rounds = 0
        self.wall_time = 0.0
        self.oracle: Optional[str] = None

    def add(self, stats: TechniqueStats):
        if stats.name not in self.techniques:
            self.techniques[stats.name] = TechniqueStats(stats.name)
        self.techniques[stats.name].merge(stats)

    def __getitem__(self, name) -> TechniqueStats:
        return self.techniques[name]

    def to_dict(self) -> Dict[str, object]:
        return {
            "rounds": self.rounds,
            "wall_time": round(self.wall_time, 6),
            "oracle": self.oracle,
            "techniques": [stats.to_dict() for stats in self.techniques.values()],
        }


def emit_report(report: Report, format="text") -> bytes:
    """
    Render a report.

    :param report: the report
    :param format: ``text`` (one line per technique) or ``json``
    :return: UTF-8 encoded rendering ending in a newline
    """
    if format == "json":
        return (json.dumps(report.to_dict(), indent=2) + "\n").encode("utf-8")
    if format != "text":
        raise ValueError("Unknown report format %s" % format)
    lines = [str(stats) for stats in report.techniques.values()]
    lines.append("%d pipeline rounds in %.3f s" % (report.rounds, report.wall_time))
    if report.oracle is not None:
        lines.append("oracle: %s" % report.oracle)
    return ("\n".join(lines) + "\n").encode("utf-8")
