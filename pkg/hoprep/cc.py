"""
Congruence closure over curried application graphs.

Lambda-abstractions are opaque: each distinct abstraction (alpha-equivalent
ones are structurally equal, hence shared) is one atom. Free variables are
treated as constants.
"""

import logging
from collections import defaultdict
from typing import Dict, Iterable, List, Tuple

from .core import FALSE, TRUE, App, Clause, Const, Lam, Term, UsageError, Var, clauses_of
from .sat import SatProblem, solve

logger = logging.getLogger(__name__)


class CongruenceClosure:
    """
    Union-find over term nodes with a signature table for congruence.

    Node ids are small integers; :meth:`node` interns a term and its subterms.
    """

    def __init__(self):
        self._atoms: Dict[object, int] = {}
        self._apps: List[Tuple[int, int]] = []
        self._app_of: Dict[int, Tuple[int, int]] = {}
        self._parent: List[int] = []
        self._size: List[int] = []
        self._uses: Dict[int, List[int]] = defaultdict(list)
        self._lookup: Dict[Tuple[int, int], int] = {}

    def _new_node(self) -> int:
        node = len(self._parent)
        self._parent.append(node)
        self._size.append(1)
        return node

    def find(self, node: int) -> int:
        while self._parent[node] != node:
            self._parent[node] = self._parent[self._parent[node]]
            node = self._parent[node]
        return node

    def node(self, t: Term) -> int:
        if isinstance(t, App):
            fun, arg = self.node(t.fun), self.node(t.arg)
            key = ("app", fun, arg)
            if key in self._atoms:
                return self._atoms[key]
            node = self._new_node()
            self._atoms[key] = node
            self._app_of[node] = (fun, arg)
            self._uses[self.find(fun)].append(node)
            self._uses[self.find(arg)].append(node)
            signature = (self.find(fun), self.find(arg))
            if signature in self._lookup:
                self.merge(node, self._lookup[signature])
            else:
                self._lookup[signature] = node
            return node
        if isinstance(t, Var):
            key = ("var", t.name, t.ty)
        elif isinstance(t, Const):
            key = ("const", t.name, t.type_args)
        elif isinstance(t, Lam):
            key = ("lam", t)
        else:
            raise UsageError("loose bound variable in congruence closure input")
        if key not in self._atoms:
            self._atoms[key] = self._new_node()
        return self._atoms[key]

    def merge(self, a: int, b: int) -> None:
        pending = [(a, b)]
        while pending:
            a, b = pending.pop()
            ra, rb = self.find(a), self.find(b)
            if ra == rb:
                continue
            if self._size[ra] < self._size[rb]:
                ra, rb = rb, ra
            self._parent[rb] = ra
            self._size[ra] += self._size[rb]
            moved = self._uses.pop(rb, [])
            for app in moved:
                fun, arg = self._app_of[app]
                signature = (self.find(fun), self.find(arg))
                other = self._lookup.get(signature)
                if other is None:
                    self._lookup[signature] = app
                elif self.find(other) != self.find(app):
                    pending.append((app, other))
            self._uses[ra].extend(moved)

    def equal(self, a: int, b: int) -> bool:
        return self.find(a) == self.find(b)


def cc_valid(clause: Clause) -> bool:
    """
    Sound tautology check: assert the complement of every literal plus
    ``true != false`` and look for a conflict.

    :param clause: the clause to check
    :return: True only if the clause is valid
    """
    cc = CongruenceClosure()
    disequal = [(cc.node(TRUE), cc.node(FALSE))]
    for lit in clause:
        left, right = cc.node(lit.left), cc.node(lit.right)
        if lit.positive:
            disequal.append((left, right))
        else:
            cc.merge(left, right)
    valid = any(cc.equal(a, b) for a, b in disequal)
    if valid:
        logger.debug("cc-valid: %s", clause)
    return valid


def cc_ground_unsat(clauses: Iterable[Clause]) -> bool:
    """
    Sound unsatisfiability check for ground clauses through a propositional
    abstraction: each distinct (unordered) equation becomes one variable.

    :param clauses: ground clauses
    :return: True only if the clauses are unsatisfiable
    :raises UsageError: if a clause is not ground
    """
    atoms: Dict[frozenset, int] = {}
    cnf = []
    for clause in clauses_of(clauses):
        if not clause.is_ground():
            raise UsageError("clause %s is not ground" % clause)
        sat_clause = []
        trivially_true = False
        for lit in clause:
            if lit.left == lit.right:
                if lit.positive:
                    trivially_true = True
                    break
                continue
            key = frozenset((lit.left, lit.right))
            var = atoms.setdefault(key, len(atoms) + 1)
            sat_clause.append(var if lit.positive else -var)
        if not trivially_true:
            cnf.append(sat_clause)
    return solve(SatProblem(len(atoms), cnf)) is None
