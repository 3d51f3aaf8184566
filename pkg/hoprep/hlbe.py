"""
Hidden literals and the simplifications built on them.

A binary clause ``l1 ∨ l2`` is the implication ``¬l1 → l2``: whenever ``l2``
matches a literal ``L'`` that is already known to imply ``L``, the complement
of ``l1`` implies ``L`` as well, so it is a hidden literal of ``L``. Chains are
explored breadth first for a bounded number of steps.
"""

import logging
from collections import defaultdict
from typing import Dict, List, Optional, Tuple

from .cc import cc_valid
from .core import (
    Bound,
    Clause,
    ClauseSet,
    Const,
    Lam,
    Literal,
    Substitution,
    Term,
    TypeApp,
    TypeExpr,
    TypeVar,
    Var,
    clauses_of,
    has_loose,
    predicate_literal_view,
    rename_apart,
    strip_app,
    substitute,
    term_type_vars,
    free_vars,
)
from .report import TechniqueStats

logger = logging.getLogger(__name__)

DEFAULT_DEPTH = 8
DEFAULT_MAX_ROUNDS = 10


class _Matcher:
    def __init__(self):
        self.types: Dict[str, TypeExpr] = {}
        self.terms: Dict[str, Term] = {}

    def match_type(self, pattern: TypeExpr, target: TypeExpr) -> bool:
        if isinstance(pattern, TypeVar):
            bound = self.types.get(pattern.name)
            if bound is None:
                self.types[pattern.name] = target
                return True
            return bound == target
        if not isinstance(target, TypeApp):
            return False
        return (
            pattern.constructor == target.constructor
            and len(pattern.args) == len(target.args)
            and all(self.match_type(p, t) for p, t in zip(pattern.args, target.args))
        )

    def bind(self, var: Var, target: Term) -> bool:
        if not self.match_type(var.ty, target.ty):
            return False
        bound = self.terms.get(var.name)
        if bound is None:
            self.terms[var.name] = target
            return True
        return bound == target

    def match(self, pattern: Term, target: Term) -> bool:
        if not self.match_type(pattern.ty, target.ty):
            return False
        if isinstance(pattern, Var):
            return not has_loose(target) and self.bind(pattern, target)
        if isinstance(pattern, Bound):
            return isinstance(target, Bound) and pattern.index == target.index
        if isinstance(pattern, Const):
            return (
                isinstance(target, Const)
                and pattern.name == target.name
                and len(pattern.type_args) == len(target.type_args)
                and all(self.match_type(p, t) for p, t in zip(pattern.type_args, target.type_args))
            )
        if isinstance(pattern, Lam):
            return (
                isinstance(target, Lam)
                and self.match_type(pattern.var_ty, target.var_ty)
                and self.match(pattern.body, target.body)
            )
        head, args = strip_app(pattern)
        target_head, target_args = strip_app(target)
        if len(args) != len(target_args):
            return False
        if isinstance(head, Var):
            # an applied variable only matches the very same variable
            if not (isinstance(target_head, Var) and target_head.name == head.name):
                return False
            if not self.bind(head, target_head):
                return False
        elif not self.match(head, target_head):
            return False
        return all(self.match(p, t) for p, t in zip(args, target_args))

    def result(self) -> Substitution:
        return Substitution(dict(self.types), dict(self.terms))


def _verified(matcher: _Matcher, pairs) -> Optional[Substitution]:
    sigma = matcher.result()
    for pattern, target in pairs:
        if substitute(pattern, sigma) != target:
            return None
    return sigma


def approx_match(pattern: Term, target: Term) -> Optional[Substitution]:
    """
    Find ``σ`` with ``pattern σ = target`` by structural descent.

    Variables are bound only where they head no application; an applied
    variable matches only itself. The returned substitution is always a real
    matcher, but some matchers are missed.
    """
    matcher = _Matcher()
    if not matcher.match(pattern, target):
        return None
    return _verified(matcher, [(pattern, target)])


def match_literal(pattern: Literal, target: Literal) -> Optional[Substitution]:
    """
    Match two literals of equal polarity, trying both side orientations.
    """
    if pattern.positive != target.positive:
        return None
    for left, right in ((pattern.left, pattern.right), (pattern.right, pattern.left)):
        matcher = _Matcher()
        if matcher.match(left, target.left) and matcher.match(right, target.right):
            sigma = _verified(matcher, [(left, target.left), (right, target.right)])
            if sigma is not None:
                return sigma
    return None


def _literal_names(lit: Literal):
    names = {v.name for v in free_vars(lit.left) + free_vars(lit.right)}
    tvars = set(term_type_vars(lit.left) + term_type_vars(lit.right))
    return names, tvars


class HiddenLiteralIndex:
    """
    Binary clauses of a clause set, usable as implications, keyed by the
    symbol and polarity of the implied literal.
    """

    def __init__(self, clauses):
        self.clauses = clauses_of(clauses)
        self._entries: Dict[Tuple[Optional[str], bool], List[Tuple[int, Clause]]] = defaultdict(
            list
        )
        for index, clause in enumerate(self.clauses):
            if len(clause) != 2:
                continue
            first, second = clause.literals
            self._add(index, Clause((first, second)))
            self._add(index, Clause((second, first)))

    def _add(self, index: int, implication: Clause):
        view = predicate_literal_view(implication[1])
        key = (view.symbol if view is not None else None, implication[1].positive)
        self._entries[key].append((index, implication))

    def _candidates(self, target: Literal):
        view = predicate_literal_view(target)
        if view is not None:
            yield from self._entries.get((view.symbol, target.positive), ())
        yield from self._entries.get((None, target.positive), ())

    def hidden_literals(
        self, literal: Literal, depth: int = DEFAULT_DEPTH, exclude: Optional[int] = None
    ) -> List[Literal]:
        """
        Hidden literals of ``literal``, in discovery order.

        :param literal: the literal L
        :param depth: number of chain steps
        :param exclude: index of a clause that must not be used
        :return: literals l with ``N ⊨ l → L``, without L itself
        """
        if depth < 1:
            raise ValueError("depth must be at least 1, got %d" % depth)
        names, tvars = _literal_names(literal)
        found: List[Literal] = []
        seen = {literal}
        frontier = [literal]
        for _ in range(depth):
            next_frontier = []
            for target in frontier:
                for index, implication in self._candidates(target):
                    if index == exclude:
                        continue
                    renamed = rename_apart(implication, names, tvars)
                    sigma = match_literal(renamed[1], target)
                    if sigma is None:
                        continue
                    hidden = renamed[0].substitute(sigma).complement()
                    if hidden in seen:
                        continue
                    seen.add(hidden)
                    found.append(hidden)
                    next_frontier.append(hidden)
                    more_names, more_tvars = _literal_names(hidden)
                    names |= more_names | {v.name for v in renamed.free_vars()}
                    tvars |= more_tvars | set(renamed.type_vars())
            if not next_frontier:
                break
            frontier = next_frontier
        return found


def hidden_literals(literal: Literal, clauses, depth: int = DEFAULT_DEPTH) -> List[Literal]:
    """
    Hidden literals of ``literal`` with respect to ``clauses``.

    :param literal: the literal L
    :param clauses: a clause set or iterable of clauses
    :param depth: number of chain steps
    :return: the hidden literals in discovery order
    """
    return HiddenLiteralIndex(clauses).hidden_literals(literal, depth)


def _has_complementary_pair(literals) -> bool:
    present = set(literals)
    return any(lit.complement() in present for lit in present)


def _failed_literal(literal: Literal, hidden: List[Literal]) -> bool:
    present = set(hidden)
    return literal.complement() in present or any(h.complement() in present for h in hidden)


def _apply_unit(clauses: List[Clause], unit: Literal) -> Tuple[List[Clause], bool]:
    unit_clause = Clause((unit,))
    result = []
    changed = False
    complement = unit.complement()
    has_unit = False
    for clause in clauses:
        if clause == unit_clause:
            if has_unit:
                changed = True
                continue
            has_unit = True
            result.append(clause)
        elif unit in clause.literals:
            changed = True
        elif complement in clause.literals:
            result.append(Clause(lit for lit in clause if lit != complement))
            changed = True
        else:
            result.append(clause)
    if not has_unit:
        result.append(unit_clause)
        changed = True
    return result, changed


def hlbe_simplify(
    clauses: ClauseSet, depth: int = DEFAULT_DEPTH, max_rounds: int = DEFAULT_MAX_ROUNDS
) -> Tuple[ClauseSet, TechniqueStats]:
    """
    Hidden literal elimination, hidden tautology elimination and failed
    literal elimination, repeated until nothing changes or ``max_rounds``.

    For each clause C, with hidden literals computed against the other
    clauses: when the hidden literals of some L in C contain the complement of
    L or a complementary pair, the other clauses entail L; the unit L is
    added, clauses containing L go and the complement of L is cut from the
    rest. Otherwise C is dropped when C plus its hidden literals is a
    tautology, and otherwise every literal that is hidden for another
    remaining literal of C is removed.

    :param clauses: the clause set
    :param depth: chain depth for hidden literals
    :param max_rounds: upper bound on passes over the set
    :return: the simplified set and its statistics
    """
    stats = TechniqueStats("hlbe", clauses)
    working = list(clauses.clauses)
    derived = set()

    for _ in range(max_rounds):
        stats.rounds += 1
        changed = False
        index = None
        i = 0
        while i < len(working):
            clause = working[i]
            if clause in derived:
                i += 1
                continue
            if index is None:
                index = HiddenLiteralIndex(working)
            hidden = [index.hidden_literals(lit, depth, exclude=i) for lit in clause]

            unit = next(
                (lit for lit, hs in zip(clause, hidden) if _failed_literal(lit, hs)), None
            )
            if unit is not None:
                working, unit_changed = _apply_unit(working, unit)
                if unit_changed:
                    logger.debug("failed literal: unit %s derived from %s", unit, clause)
                    derived.add(Clause((unit,)))
                    stats.derived_units.append(unit)
                    changed = True
                    index = None
                    i = 0
                    continue

            extended = list(clause) + [h for hs in hidden for h in hs]
            if _has_complementary_pair(extended) or cc_valid(Clause(extended)):
                logger.debug("hidden tautology removed: %s", clause)
                del working[i]
                changed = True
                index = None
                continue

            kept = list(range(len(clause)))
            for position in range(len(clause)):
                lit = clause[position]
                if any(lit in hidden[other] for other in kept if other != position):
                    kept.remove(position)
            if len(kept) < len(clause):
                reduced = Clause(clause[k] for k in kept)
                logger.debug("hidden literals removed: %s becomes %s", clause, reduced)
                working[i] = reduced
                changed = True
                index = None
            i += 1
        if not changed:
            break

    result = clauses.replace(working)
    stats.finish(result)
    logger.info("%s", stats)
    return result, stats
