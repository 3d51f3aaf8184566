"""
Predicate elimination by flat resolution (singular predicate elimination),
by recognized definitions (defined predicate elimination), and the portfolio
that tries the latter first.
"""

import logging
import math
from collections import deque
from dataclasses import dataclass
from typing import List, Optional, Sequence, Tuple

from .cc import cc_ground_unsat, cc_valid
from .core import (
    Clause,
    ClauseSet,
    Const,
    InvariantViolation,
    Literal,
    NotApplicableError,
    Substitution,
    Term,
    TypeApp,
    TypeExpr,
    TypeVar,
    UsageError,
    Var,
    clause_to_formula,
    clauses_of,
    count_symbol,
    disjunction,
    fresh_name,
    iff,
    is_polymorphism_safe,
    is_singular,
    lambda_abstract,
    map_types,
    negation,
    neq,
    predicate_literal_view,
    predicate_literals,
    rename_apart,
    rename_apart_from,
    replace_instances,
    strip_app,
    subst_type,
    unify_types,
)
from .report import TechniqueStats

logger = logging.getLogger(__name__)

DEFAULT_KTOL = 10
DEFAULT_MAX_PASSES = 10
BRANCHES = ("dpe", "spe")


@dataclass(frozen=True)
class GrowthMetrics:
    """Literal count, sum of squared variable counts, clause count."""

    literals: int
    variables: int
    clauses: int

    @classmethod
    def of(cls, clauses) -> "GrowthMetrics":
        clauses = clauses_of(clauses)
        return cls(
            sum(len(c) for c in clauses),
            sum(len({v.name for v in c.free_vars()}) ** 2 for c in clauses),
            len(clauses),
        )


def growth_check(before: GrowthMetrics, after: GrowthMetrics, ktol=DEFAULT_KTOL) -> bool:
    """
    Accept an elimination that does not grow the set too much.

    :param ktol: tolerance; ``math.inf`` accepts everything
    :return: True iff the literal count stays below ``before + ktol``, the
        variable measure shrinks, or the clause count stays below ``before + ktol``
    """
    if math.isinf(ktol):
        return True
    return (
        after.literals < before.literals + ktol
        or after.variables < before.variables
        or after.clauses < before.clauses + ktol
    )


def _p_literal(clause: Clause, symbol: str, position: Optional[int] = None):
    found = predicate_literals(clause, symbol)
    if position is None:
        return found[0] if found else (None, None)
    for index, view in found:
        if index == position:
            return index, view
    raise UsageError("literal %d of %s is not a %s-literal" % (position, clause, symbol))


def flat_resolvent(c: Clause, c_literal: Literal, d: Clause, d_literal: Literal) -> Optional[Clause]:
    """
    The flat resolvent of a positive p-literal in ``c`` and a negative one in ``d``.

    Arguments are not unified; their equalities become disequation literals.
    Only the type arguments are unified.

    :param c: clause holding ``c_literal`` (``p<τ> s1 ... sn``)
    :param d: clause holding ``d_literal`` (``¬p<υ> t1 ... tn``), renamed apart from ``c``
    :return: ``(s1 ≉ t1 ∨ ... ∨ sn ≉ tn ∨ C' ∨ D')σ``, or None when the type
        arguments do not unify
    """
    cv, dv = predicate_literal_view(c_literal), predicate_literal_view(d_literal)
    if cv is None or dv is None or cv.symbol != dv.symbol:
        raise UsageError("flat resolution needs two literals of the same predicate")
    if not cv.positive or dv.positive:
        raise UsageError("flat resolution needs a positive and a negative literal")
    if len(cv.args) != len(dv.args) or len(cv.type_args) != len(dv.type_args):
        logger.debug("no flat resolvent of %s and %s: argument counts differ", c, d)
        return None
    sigma = unify_types(cv.type_args, dv.type_args)
    if sigma is None:
        return None
    ci, di = c.literals.index(c_literal), d.literals.index(d_literal)

    def typed(t: Term) -> Term:
        return map_types(t, sigma.types)

    literals = [neq(typed(s), typed(t)) for s, t in zip(cv.args, dv.args)]
    literals += [lit.map_terms(typed) for lit in c.without(ci)]
    literals += [lit.map_terms(typed) for lit in d.without(di)]
    return Clause(literals)


@dataclass(frozen=True)
class ResolvedSet:
    clauses: Tuple[Clause, ...]
    steps: int


def resolved_set(m, n, symbol: str) -> ResolvedSet:
    """
    Resolve the ``symbol``-literals of the clauses of ``n`` away against ``m``.

    Each clause of ``n`` carrying a ``symbol``-literal is replaced by all flat
    resolvents with clauses of ``m`` of opposite polarity; resolvents still
    carrying one are processed again.

    :param m: clauses for which ``symbol`` is singular
    :param n: clauses to resolve
    :return: the ``symbol``-free clauses and the number of replacement steps
    :raises UsageError: if ``symbol`` is not singular for ``m``
    """
    m = clauses_of(m)
    if not is_singular(symbol, m):
        raise UsageError("%s is not singular for the resolution partners" % symbol)
    partners = []
    for clause in m:
        index, view = _p_literal(clause, symbol)
        if view is not None:
            partners.append((clause, index, view.positive))

    work = deque(clauses_of(n))
    result: List[Clause] = []
    steps = 0
    while work:
        d = work.popleft()
        di, dview = _p_literal(d, symbol)
        if dview is None:
            result.append(d)
            continue
        steps += 1
        seen = set()
        for c, ci, positive in partners:
            if positive == dview.positive:
                continue
            renamed = rename_apart_from(c, d)
            if positive:
                resolvent = flat_resolvent(renamed, renamed[ci], d, d[di])
            else:
                resolvent = flat_resolvent(d, d[di], renamed, renamed[ci])
            if resolvent is None:
                continue
            key = resolvent.canonical()
            if key not in seen:
                seen.add(key)
                work.append(resolvent)
    logger.debug("resolved set of %s: %d clauses after %d steps", symbol, len(result), steps)
    return ResolvedSet(tuple(result), steps)


def _partition(clauses: Sequence[Clause], symbol: str):
    positive, negative, rest = [], [], []
    for clause in clauses:
        _, view = _p_literal(clause, symbol)
        if view is None:
            rest.append(clause)
        elif view.positive:
            positive.append(clause)
        else:
            negative.append(clause)
    return positive, negative, rest


def _check_eliminated(clauses, symbol: str):
    for clause in clauses:
        for lit in clause:
            if count_symbol(lit.left, symbol) or count_symbol(lit.right, symbol):
                raise InvariantViolation("%s survives elimination in %s" % (symbol, clause))


def spe(clauses: ClauseSet, symbol: str) -> ClauseSet:
    """
    Singular predicate elimination: replace the ``symbol``-clauses by the
    resolved set of the positive against the negative ones.

    :raises NotApplicableError: if ``symbol`` is not singular or some clause is
        not polymorphism-safe for it
    """
    if not is_singular(symbol, clauses):
        raise NotApplicableError("%s is not singular" % symbol)
    if not all(is_polymorphism_safe(c, symbol) for c in clauses):
        raise NotApplicableError("a clause is not polymorphism-safe for %s" % symbol)
    positive, negative, rest = _partition(clauses.clauses, symbol)
    resolved = resolved_set(positive, negative, symbol)
    result = rest + list(resolved.clauses)
    _check_eliminated(result, symbol)
    return clauses.replace(result, clauses.signature.without_symbol(symbol))


@dataclass(frozen=True)
class DefinitionSet:
    """
    Clauses that together define ``symbol``: ``atom <-> body`` where ``atom`` is
    ``symbol<type_vars> variables``.
    """

    symbol: str
    clauses: Tuple[Clause, ...]
    type_vars: Tuple[str, ...]
    variables: Tuple[Var, ...]
    atom: Term
    body: Term

    def instance(self, type_args: Tuple[TypeExpr, ...]) -> Term:
        """
        ``λ variables. body`` with the defining type variables instantiated.
        """
        tsub = dict(zip(self.type_vars, type_args))
        variables = [Var(v.name, subst_type(v.ty, tsub)) for v in self.variables]
        return lambda_abstract(variables, map_types(self.body, tsub))


def _canonical_names(count: int, prefix: str, taken) -> List[str]:
    names = []
    for i in range(count):
        name = fresh_name("%s%d" % (prefix, i), taken)
        names.append(name)
    return names


def find_definition_set(clauses: ClauseSet, symbol: str) -> Optional[DefinitionSet]:
    """
    Look for a subset of ``clauses`` that defines ``symbol``.

    The candidate is every clause that is singular for ``symbol`` and whose
    ``symbol``-atom applies the symbol to distinct type variables and distinct
    term variables. Clauses with further ``symbol``-literals or deep
    occurrences stay outside the candidate. It is accepted when every clause
    is polymorphism-safe, the rest of each clause mentions only the atom's
    variables, the resolved set of the candidate with itself is
    congruence-valid, and the environment built from the clause rests with
    fresh constants is unsatisfiable.

    :return: the definition set, or None
    """
    candidates = []
    for clause in clauses:
        index, view = _p_literal(clause, symbol)
        if view is None or not is_singular(symbol, [clause]):
            continue
        if not all(isinstance(t, TypeVar) for t in view.type_args):
            continue
        if len({t.name for t in view.type_args}) != len(view.type_args):
            continue
        if not all(isinstance(a, Var) for a in view.args):
            continue
        if len({a.name for a in view.args}) != len(view.args):
            continue
        candidates.append(clause)
    if not candidates:
        return None

    taken_types, taken_vars = set(), set()
    for clause in candidates:
        taken_types |= set(clause.type_vars())
        taken_vars |= {v.name for v in clause.free_vars()}
    _, first_view = _p_literal(candidates[0], symbol)
    alphas = _canonical_names(len(first_view.type_args), "A", taken_types)
    xs = _canonical_names(len(first_view.args), "X", taken_vars)

    canonical: List[Tuple[Clause, int, bool]] = []
    atom = None
    for clause in candidates:
        if not is_polymorphism_safe(clause, symbol):
            return None
        clause = rename_apart(clause, set(xs), set(alphas))
        index, view = _p_literal(clause, symbol)
        if len(view.args) != len(xs) or len(view.type_args) != len(alphas):
            return None
        tsub = {t.name: TypeVar(a) for t, a in zip(view.type_args, alphas)}
        terms = {
            v.name: Var(x, subst_type(v.ty, tsub)) for v, x in zip(view.args, xs)
        }
        clause = clause.substitute(Substitution(tsub, terms))
        index, view = _p_literal(clause, symbol)
        if atom is None:
            atom = view.atom
        elif view.atom != atom:
            return None
        rest = clause.without(index)
        if not set(rest.type_vars()) <= set(alphas):
            return None
        if not {v.name for v in rest.free_vars()} <= set(xs):
            return None
        canonical.append((clause, index, view.positive))

    positive = [c for c, _, pos in canonical if pos]
    negative = [c for c, _, pos in canonical if not pos]
    resolvents = resolved_set(positive, negative, symbol).clauses
    if not all(cc_valid(r) for r in resolvents):
        logger.debug("candidate definition of %s has a non-valid resolvent", symbol)
        return None

    fresh_types = {a: TypeApp("#%s" % a) for a in alphas}
    fresh_consts = {}
    variables = []
    for x, arg in zip(xs, strip_app(atom)[1]):
        variables.append(arg)
        fresh_consts[x] = Const("#%s" % x, (), subst_type(arg.ty, fresh_types))
    grounding = Substitution(fresh_types, fresh_consts)
    environment = [clause.without(index).substitute(grounding) for clause, index, _ in canonical]
    if not cc_ground_unsat(environment):
        logger.debug("environment of the candidate definition of %s is satisfiable", symbol)
        return None

    body = disjunction(
        negation(clause_to_formula(clause.without(index)))
        for clause, index, pos in canonical
        if pos
    )
    return DefinitionSet(
        symbol,
        tuple(clauses_of(candidates)),
        tuple(alphas),
        tuple(variables),
        atom,
        body,
    )


def associated_definition(definition: DefinitionSet) -> Term:
    """
    The formula ``p<α> x <-> φ`` equivalent to the definition set.
    """
    return iff(definition.atom, definition.body)


def _remove_once(clauses: Sequence[Clause], removed: Sequence[Clause]) -> List[Clause]:
    remaining = list(clauses)
    for clause in removed:
        try:
            remaining.remove(clause)
        except ValueError:
            raise UsageError("definition clause %s is not in the set" % clause)
    return remaining


def dpe(clauses: ClauseSet, symbol: str, definition: DefinitionSet) -> ClauseSet:
    """
    Defined predicate elimination: resolve the other ``symbol``-literals
    against the definition and replace the remaining occurrences of the
    symbol by the defining lambda-term.

    :raises UsageError: if ``definition`` is not part of ``clauses``
    """
    if definition.symbol != symbol:
        raise UsageError("definition is for %s, not %s" % (definition.symbol, symbol))
    others = _remove_once(clauses.clauses, definition.clauses)
    with_literal = [c for c in others if _p_literal(c, symbol)[1] is not None]
    rest = [c for c in others if _p_literal(c, symbol)[1] is None]
    resolved = resolved_set(definition.clauses, with_literal, symbol)

    def replace(t: Term) -> Term:
        return replace_instances(t, symbol, definition.instance)

    result = [c.map_terms(replace) for c in rest + list(resolved.clauses)]
    _check_eliminated(result, symbol)
    return clauses.replace(result, clauses.signature.without_symbol(symbol))


@dataclass(frozen=True)
class PPEOutcome:
    branch: str
    clauses: ClauseSet


def ppe(clauses: ClauseSet, symbol: str, ktol=DEFAULT_KTOL, branches=BRANCHES) -> Optional[PPEOutcome]:
    """
    Portfolio predicate elimination: defined elimination when a definition
    set exists, otherwise singular elimination if it passes the growth check.

    :param ktol: growth tolerance for the singular branch
    :param branches: the branches allowed to fire
    :return: the branch taken and the new set, or None when ``symbol`` stays
    """
    if "dpe" in branches:
        definition = find_definition_set(clauses, symbol)
        if definition is not None:
            logger.debug("definition of %s: %s", symbol, associated_definition(definition))
            return PPEOutcome("dpe", dpe(clauses, symbol, definition))
    if "spe" in branches:
        try:
            result = spe(clauses, symbol)
        except NotApplicableError as e:
            logger.debug("singular elimination of %s not applicable: %s", symbol, e)
            return None
        if growth_check(GrowthMetrics.of(clauses), GrowthMetrics.of(result), ktol):
            return PPEOutcome("spe", result)
        logger.debug("singular elimination of %s refused by the growth check", symbol)
    return None


def _candidates(clauses: ClauseSet) -> List[str]:
    present = set()
    for clause in clauses:
        for lit in clause:
            view = predicate_literal_view(lit)
            if view is not None:
                present.add(view.symbol)
    return [p for p in clauses.signature.predicate_symbols() if p in present]


def run_pe(
    clauses: ClauseSet,
    ktol=DEFAULT_KTOL,
    max_passes: int = DEFAULT_MAX_PASSES,
    branches=BRANCHES,
    name: str = "ppe",
) -> Tuple[ClauseSet, TechniqueStats]:
    """
    Eliminate predicate symbols in declaration order until none is eliminable
    or ``max_passes`` eliminations happened.

    :param branches: ``("dpe", "spe")`` for the portfolio, or a single branch
    :param name: name the statistics are reported under
    :return: the new set and its statistics
    """
    stats = TechniqueStats(name, clauses)
    for _ in range(max_passes):
        outcome = None
        for symbol in _candidates(clauses):
            outcome = ppe(clauses, symbol, ktol, branches)
            if outcome is not None:
                logger.debug("eliminated %s by %s", symbol, outcome.branch)
                stats.predicates_eliminated.append(symbol)
                stats.branches.append(outcome.branch)
                clauses = outcome.clauses
                break
        stats.rounds += 1
        if outcome is None:
            break
    stats.finish(clauses)
    logger.info("%s", stats)
    return clauses, stats
