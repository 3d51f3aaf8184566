"""
A small deterministic DPLL solver for propositional CNF.

Variables are the integers ``1..num_vars``; a literal is ``v`` or ``-v``.
"""

import itertools
import logging
from dataclasses import dataclass
from typing import Dict, Iterable, List, Optional, Tuple

from .core import InvariantViolation, UsageError

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class SatProblem:
    num_vars: int
    clauses: Tuple[Tuple[int, ...], ...]

    def __init__(self, num_vars: int, clauses: Iterable[Iterable[int]]):
        object.__setattr__(self, "num_vars", num_vars)
        object.__setattr__(self, "clauses", tuple(tuple(c) for c in clauses))
        if num_vars < 0:
            raise UsageError("negative variable count %d" % num_vars)
        for clause in self.clauses:
            for lit in clause:
                if not isinstance(lit, int) or lit == 0 or abs(lit) > num_vars:
                    raise UsageError(
                        "literal %r outside of 1..%d in clause %r" % (lit, num_vars, clause)
                    )

    def to_dimacs(self) -> str:
        lines = ["p cnf %d %d" % (self.num_vars, len(self.clauses))]
        lines += [" ".join(str(lit) for lit in clause + (0,)) for clause in self.clauses]
        return "\n".join(lines) + "\n"

    @classmethod
    def from_dimacs(cls, text: str) -> "SatProblem":
        num_vars = None
        literals: List[int] = []
        for line in text.splitlines():
            line = line.strip()
            if not line or line.startswith("c"):
                continue
            if line.startswith("p"):
                parts = line.split()
                if len(parts) != 4 or parts[1] != "cnf":
                    raise UsageError("malformed DIMACS header %r" % line)
                num_vars = int(parts[2])
                continue
            literals.extend(int(tok) for tok in line.split())
        if num_vars is None:
            raise UsageError("DIMACS text has no 'p cnf' header")
        clauses, current = [], []
        for lit in literals:
            if lit == 0:
                clauses.append(current)
                current = []
            else:
                current.append(lit)
        if current:
            raise UsageError("last DIMACS clause is not terminated by 0")
        return cls(num_vars, clauses)


@dataclass(frozen=True)
class SatAssignment:
    """A total assignment; ``values[v - 1]`` is the value of variable ``v``."""

    values: Tuple[bool, ...]

    def __getitem__(self, var: int) -> bool:
        return self.values[var - 1]

    def satisfies(self, clause: Iterable[int]) -> bool:
        return any(self.values[abs(lit) - 1] == (lit > 0) for lit in clause)


def _assign(clauses: List[Tuple[int, ...]], lit: int) -> Optional[List[Tuple[int, ...]]]:
    result = []
    for clause in clauses:
        if lit in clause:
            continue
        if -lit in clause:
            clause = tuple(x for x in clause if x != -lit)
            if not clause:
                return None
        result.append(clause)
    return result


def _simplify(clauses, values: Dict[int, bool]):
    """Unit propagation and the pure literal rule until neither applies."""
    while True:
        unit = next((c[0] for c in clauses if len(c) == 1), None)
        if unit is not None:
            values[abs(unit)] = unit > 0
            clauses = _assign(clauses, unit)
            if clauses is None:
                return None
            continue
        occurring = {lit for clause in clauses for lit in clause}
        pure = sorted((lit for lit in occurring if -lit not in occurring), key=abs)
        if not pure:
            return clauses
        for lit in pure:
            values[abs(lit)] = lit > 0
            clauses = _assign(clauses, lit)


def _dpll(clauses, values: Dict[int, bool]) -> Optional[Dict[int, bool]]:
    clauses = _simplify(clauses, values)
    if clauses is None:
        return None
    if not clauses:
        return values
    var = min(abs(lit) for clause in clauses for lit in clause)
    for lit in (-var, var):
        reduced = _assign(clauses, lit)
        if reduced is None:
            continue
        result = _dpll(reduced, {**values, var: lit > 0})
        if result is not None:
            return result
    return None


def _checked(problem: SatProblem, values: Dict[int, bool]) -> SatAssignment:
    assignment = SatAssignment(
        tuple(values.get(v, False) for v in range(1, problem.num_vars + 1))
    )
    for clause in problem.clauses:
        if not assignment.satisfies(clause):
            raise InvariantViolation("solver model falsifies clause %r" % (clause,))
    return assignment


def solve(problem: SatProblem) -> Optional[SatAssignment]:
    """
    Decide a CNF problem.

    Branching picks the lowest-numbered variable still occurring, false first;
    variables that never need a value are set to false.

    :param problem: the CNF
    :return: a verified model, or None when the problem is unsatisfiable
    """
    if any(not clause for clause in problem.clauses):
        logger.debug("cnf with %d clauses contains the empty clause", len(problem.clauses))
        return None
    values = _dpll(list(problem.clauses), {})
    if values is None:
        logger.debug("cnf with %d vars, %d clauses: unsat", problem.num_vars, len(problem.clauses))
        return None
    logger.debug("cnf with %d vars, %d clauses: sat", problem.num_vars, len(problem.clauses))
    return _checked(problem, values)


def brute_force(problem: SatProblem) -> Optional[SatAssignment]:
    """
    Exhaustive search over all assignments, in lexicographic order.
    """
    for values in itertools.product((False, True), repeat=problem.num_vars):
        assignment = SatAssignment(values)
        if all(assignment.satisfies(clause) for clause in problem.clauses):
            return assignment
    return None
