"""
Pure and quasipure literal elimination.

A set of predicate symbols P with a polarity per symbol is quasipure when every
clause mentioning a symbol of P also holds a literal of some q in P with q's
polarity. Such clauses can all be made true by interpreting the symbols of P,
so they are deleted.
"""

import logging
import random
from dataclasses import dataclass
from typing import Dict, FrozenSet, List, Optional, Tuple

from .core import ClauseSet, InvariantViolation, occurs_deep, predicate_literal_view
from .report import TechniqueStats
from .sat import SatProblem, solve

logger = logging.getLogger(__name__)

PolarityMap = Dict[str, bool]


@dataclass(frozen=True)
class QuasipureResult:
    """A quasipure symbol set and a polarity for every predicate symbol (True is +)."""

    symbols: FrozenSet[str]
    polarity: PolarityMap

    def __str__(self):
        return "{%s}" % ", ".join(
            "%s:%s" % (p, "+" if self.polarity[p] else "-") for p in sorted(self.symbols)
        )


@dataclass(frozen=True)
class QleEncoding:
    problem: SatProblem
    legend: Dict[str, Tuple[int, int]]


def _literal_polarities(clause) -> List[Tuple[str, bool]]:
    result = []
    for lit in clause:
        view = predicate_literal_view(lit)
        if view is not None:
            result.append((view.symbol, view.positive))
    return result


def _satisfied(clause, symbols, polarity) -> bool:
    return any(q in symbols and polarity[q] == s for q, s in _literal_polarities(clause))


def is_quasipure(symbols, polarity: PolarityMap, clauses) -> bool:
    """
    Check the quasipure condition directly.

    :param symbols: the candidate set P
    :param polarity: polarity of each symbol of P, True for +
    :param clauses: the clause set
    """
    symbols = set(symbols)
    for clause in clauses:
        if symbols & set(clause.symbols()) and not _satisfied(clause, symbols, polarity):
            return False
    return True


def _occurring_predicates(clauses: ClauseSet) -> List[str]:
    present = set()
    for clause in clauses:
        present.update(clause.symbols())
    return [p for p in clauses.signature.predicate_symbols() if p in present]


def encode_qle(clauses: ClauseSet, order: Optional[List[str]] = None) -> QleEncoding:
    """
    SAT encoding of quasipure set existence.

    Symbol number i gets the variables ``2i+1`` (quasipure with +) and ``2i+2``
    (quasipure with -).

    :param clauses: the clause set
    :param order: symbol numbering; defaults to declaration order
    :return: the problem and the legend symbol -> (plus, minus)
    """
    symbols = order if order is not None else _occurring_predicates(clauses)
    legend = {p: (2 * i + 1, 2 * i + 2) for i, p in enumerate(symbols)}

    def var(symbol, positive):
        plus, minus = legend[symbol]
        return plus if positive else minus

    families: List[List[Tuple[int, ...]]] = [[], [], [], []]
    for clause in clauses:
        literals = [(q, s) for q, s in _literal_polarities(clause) if q in legend]
        for j in range(len(literals)):
            families[0].append(
                tuple(-var(q, not s) if i == j else var(q, s) for i, (q, s) in enumerate(literals))
            )
        correct = [var(q, s) for q, s in literals]
        for p in symbols:
            if occurs_deep(p, clause):
                families[1].append(tuple([-var(p, True)] + correct))
                families[1].append(tuple([-var(p, False)] + correct))
    for p in symbols:
        families[2].append((-var(p, True), -var(p, False)))
    families[3].append(tuple(v for p in symbols for v in legend[p]))

    cnf, seen = [], set()
    for family in families:
        for sat_clause in family:
            if sat_clause not in seen:
                seen.add(sat_clause)
                cnf.append(sat_clause)
    return QleEncoding(SatProblem(2 * len(symbols), cnf), legend)


def find_quasipure_set(clauses: ClauseSet, order: Optional[List[str]] = None) -> Optional[QuasipureResult]:
    """
    Solve the encoding and grow the solution until no further symbol can join.

    :param clauses: the clause set
    :param order: symbol numbering for the encoding
    :return: a maximal quasipure set with its polarity map, or None
    """
    encoding = encode_qle(clauses, order)
    assignment = solve(encoding.problem)
    if assignment is None:
        return None

    chosen: Dict[str, bool] = {}
    while assignment is not None:
        for p, (plus, minus) in encoding.legend.items():
            if assignment[plus] or assignment[minus]:
                chosen[p] = assignment[plus]
        fixed = [(encoding.legend[p][0] if s else encoding.legend[p][1],) for p, s in chosen.items()]
        more = tuple(
            v for p, pair in encoding.legend.items() if p not in chosen for v in pair
        )
        if not more:
            break
        assignment = solve(
            SatProblem(encoding.problem.num_vars, encoding.problem.clauses + tuple(fixed) + (more,))
        )

    polarity = {p: chosen.get(p, True) for p in clauses.signature.predicate_symbols()}
    result = QuasipureResult(frozenset(chosen), polarity)
    if not is_quasipure(result.symbols, polarity, clauses):
        raise InvariantViolation("solver returned a set that is not quasipure: %s" % result)
    logger.debug("quasipure set %s", result)
    return result


def _delete(clauses: ClauseSet, symbols, polarity) -> Tuple[ClauseSet, int]:
    kept = [c for c in clauses if not _satisfied(c, symbols, polarity)]
    return clauses.replace(kept), len(clauses) - len(kept)


def run_qle(clauses: ClauseSet, seed=None) -> Tuple[ClauseSet, TechniqueStats]:
    """
    Delete the clauses covered by quasipure sets until none exists.

    :param clauses: the clause set
    :param seed: when given, the symbol numbering is shuffled each round
    :return: the remaining clauses and statistics
    """
    stats = TechniqueStats("qle", clauses)
    rng = random.Random(seed) if seed is not None else None
    original = clauses
    union_symbols, union_polarity = set(), {}

    while True:
        stats.rounds += 1
        order = None
        if rng is not None:
            order = _occurring_predicates(clauses)
            rng.shuffle(order)
        result = find_quasipure_set(clauses, order)
        if result is None:
            break
        clauses, removed = _delete(clauses, result.symbols, result.polarity)
        logger.debug("quasipure set %s removed %d clauses", result, removed)
        union_symbols |= result.symbols
        union_polarity.update({p: result.polarity[p] for p in result.symbols})

    if union_symbols:
        if not is_quasipure(union_symbols, union_polarity, original):
            raise InvariantViolation("union of the quasipure sets is not quasipure")
        expected, _ = _delete(original, union_symbols, union_polarity)
        if list(expected.clauses) != list(clauses.clauses):
            raise InvariantViolation("deleting the union of the quasipure sets differs")

    stats.finish(clauses)
    logger.info("%s", stats)
    return clauses, stats


def run_ple(clauses: ClauseSet, seed=None) -> Tuple[ClauseSet, TechniqueStats]:
    """
    Delete the clauses of predicate symbols that occur with one polarity only
    and never deep, until no such symbol is left.

    :param clauses: the clause set
    :param seed: when given, symbols are visited in a shuffled order
    :return: the remaining clauses and statistics
    """
    stats = TechniqueStats("ple", clauses)
    rng = random.Random(seed) if seed is not None else None
    changed = True
    while changed:
        stats.rounds += 1
        changed = False
        symbols = _occurring_predicates(clauses)
        if rng is not None:
            rng.shuffle(symbols)
        for p in symbols:
            if any(occurs_deep(p, c) for c in clauses):
                continue
            polarities = {s for c in clauses for q, s in _literal_polarities(c) if q == p}
            if len(polarities) != 1:
                continue
            clauses, removed = _delete(clauses, {p}, {p: polarities.pop()})
            logger.debug("pure symbol %s removed %d clauses", p, removed)
            changed = True

    stats.finish(clauses)
    logger.info("%s", stats)
    return clauses, stats
