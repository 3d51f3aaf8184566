"""
Blocked clause elimination.

A clause is blocked by one of its predicate literals when every binary flat
resolvent on that literal with the rest of the set is a tautology. Removing
blocked clauses preserves satisfiability and unsatisfiability, and removing
one never unblocks another, so the fixpoint does not depend on the order.
"""

import logging
import random
from dataclasses import dataclass
from typing import List, Optional, Tuple

from .cc import cc_valid
from .core import (
    Clause,
    ClauseSet,
    Literal,
    UsageError,
    clauses_of,
    map_types,
    neq,
    occurs_deep,
    predicate_literal_view,
    rename_apart_from,
    type_vars,
    unify_types,
)
from .report import TechniqueStats

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class BlockednessCertificate:
    """Why a clause was removed: the blocking literal and the checked resolvents."""

    clause_index: int
    clause: Clause
    literal: Literal
    resolvents: Tuple[Tuple[int, Clause, bool], ...]

    def __str__(self):
        return "%s blocked by %s (%d resolvents)" % (self.clause, self.literal, len(self.resolvents))


def binary_flat_l_resolvent(
    c: Clause, c_literal: Literal, d: Clause, d_literal: Literal
) -> Optional[Clause]:
    """
    The binary flat resolvent of ``c`` on ``c_literal`` with ``d`` on ``d_literal``.

    :param c: clause holding ``c_literal``
    :param d: clause holding ``d_literal``, sharing no variables with ``c``
    :return: ``(s1 ≉ t1 ∨ ... ∨ sn ≉ tn ∨ C' ∨ D')σ``, or None if the literals are
        not of the same predicate with opposite polarities or their type
        arguments do not unify
    """
    cv, dv = predicate_literal_view(c_literal), predicate_literal_view(d_literal)
    if cv is None or dv is None or cv.symbol != dv.symbol or cv.positive == dv.positive:
        return None
    if len(cv.args) != len(dv.args) or len(cv.type_args) != len(dv.type_args):
        return None
    sigma = unify_types(cv.type_args, dv.type_args)
    if sigma is None:
        return None
    rest_c = c.without(c.literals.index(c_literal))
    rest_d = d.without(d.literals.index(d_literal))
    literals = [
        neq(map_types(s, sigma.types), map_types(t, sigma.types))
        for s, t in zip(cv.args, dv.args)
    ]
    literals += [lit.map_terms(lambda t: map_types(t, sigma.types)) for lit in rest_c]
    literals += [lit.map_terms(lambda t: map_types(t, sigma.types)) for lit in rest_d]
    return Clause(literals)


def is_blocked(
    clause: Clause, literal: Literal, clauses, clause_index: Optional[int] = None
) -> Tuple[bool, Optional[BlockednessCertificate]]:
    """
    Decide whether ``literal`` blocks ``clause`` in ``clauses``.

    :param clause: the candidate clause
    :param literal: a predicate literal of ``clause``
    :param clauses: the clause set; the candidate is skipped by position when
        ``clause_index`` is given, otherwise its first occurrence is skipped
    :return: the verdict and, when blocked, its certificate
    :raises UsageError: if ``literal`` is not a predicate literal
    """
    view = predicate_literal_view(literal)
    if view is None:
        raise UsageError("%s is not a predicate literal" % literal)
    clauses = clauses_of(clauses)
    if clause_index is None:
        clause_index = next((i for i, c in enumerate(clauses) if c == clause), -1)

    listed = []
    for arg in view.type_args:
        type_vars(arg, listed)
    if not set(clause.type_vars()) <= set(listed):
        return False, None
    if any(occurs_deep(view.symbol, c) for c in clauses):
        return False, None
    rest = clause.without(clause.literals.index(literal))
    for lit in rest:
        other = predicate_literal_view(lit)
        if other is not None and other.symbol == view.symbol and other.positive == view.positive:
            return False, None

    checked = []
    for index, partner in enumerate(clauses):
        if index == clause_index:
            continue
        partner = rename_apart_from(partner, clause)
        for lit in partner:
            resolvent = binary_flat_l_resolvent(clause, literal, partner, lit)
            if resolvent is None:
                continue
            if not cc_valid(resolvent):
                return False, None
            checked.append((index, resolvent, True))
    return True, BlockednessCertificate(clause_index, clause, literal, tuple(checked))


def _symbols(clause: Clause) -> List[str]:
    result = []
    for lit in clause:
        view = predicate_literal_view(lit)
        if view is not None and view.symbol not in result:
            result.append(view.symbol)
    return result


def run_bce(clauses: ClauseSet, seed=None) -> Tuple[ClauseSet, TechniqueStats]:
    """
    Remove blocked clauses until none is left.

    :param clauses: the clause set
    :param seed: when given, candidates are visited in a shuffled order
    :return: the remaining clauses, in their original order, and statistics
        with one certificate per removed clause
    """
    stats = TechniqueStats("bce", clauses)
    working = list(clauses.clauses)
    alive = [True] * len(working)
    order = list(range(len(working)))
    if seed is not None:
        random.Random(seed).shuffle(order)
    pending = order

    while pending:
        stats.rounds += 1
        requeued = set()
        for i in pending:
            if not alive[i]:
                continue
            current = [c for j, c in enumerate(working) if alive[j]]
            clause = working[i]
            for lit in clause:
                if predicate_literal_view(lit) is None:
                    continue
                blocked, certificate = is_blocked(clause, lit, current, sum(alive[:i]))
                if not blocked:
                    continue
                logger.debug("blocked clause removed: %s", certificate)
                alive[i] = False
                stats.certificates.append(certificate)
                # removing a clause can only unblock clauses on its own symbols
                touched = set(clause.symbols())
                requeued.update(
                    j for j in order if alive[j] and touched & set(_symbols(working[j]))
                )
                break
        pending = [j for j in order if j in requeued and alive[j]]

    result = clauses.replace([c for j, c in enumerate(working) if alive[j]])
    stats.finish(result)
    logger.info("%s", stats)
    return result, stats
