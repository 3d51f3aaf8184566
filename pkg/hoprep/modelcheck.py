"""
Brute-force satisfiability oracles for small ground fragments.

``ground_prop_sat`` handles ground sets whose literals are all predicate
literals without equality; ``finite_model_sat`` handles ground first-order
sets with equality over few constants and unary functions by enumerating
finite interpretations.
"""

import itertools
import logging
from dataclasses import dataclass, field
from typing import Dict, Iterator, List, Optional, Tuple

from .core import (
    BOOL,
    LOGICAL_SCHEMES,
    Clause,
    Const,
    Lam,
    Term,
    TypeApp,
    TypeExpr,
    clauses_of,
    predicate_literal_view,
    split_arrow,
    strip_app,
)
from .sat import SatProblem, solve

logger = logging.getLogger(__name__)

MAX_ATOMS = 24
MAX_DOMAIN = 3
MAX_CONSTANTS = 3
MAX_FUNCTIONS = 2


class FragmentUnsupported(ValueError):
    """The clause set lies outside of what an oracle can decide."""


def _is_predicate_typed(ty: TypeExpr) -> bool:
    return split_arrow(ty)[1] == BOOL


def _check_prop_term(t: Term, top: bool) -> None:
    head, args = strip_app(t)
    if not isinstance(head, Const):
        raise FragmentUnsupported("atom %s has no symbol head" % t)
    if not top and _is_predicate_typed(t.ty):
        raise FragmentUnsupported("Boolean subterm %s inside an atom" % t)
    for arg in args:
        if isinstance(arg, Lam):
            raise FragmentUnsupported("lambda-abstraction %s inside an atom" % arg)
        _check_prop_term(arg, False)


def ground_prop_sat(clauses) -> bool:
    """
    Exact satisfiability of a ground set of predicate literals.

    :param clauses: a clause set or iterable of clauses
    :return: True iff satisfiable
    :raises FragmentUnsupported: for variables, equations between non-``true``
        terms, logical symbols, lambdas, or more than ``MAX_ATOMS`` atoms
    """
    atoms: Dict[Term, int] = {}
    cnf = []
    for clause in clauses_of(clauses):
        if not clause.is_ground():
            raise FragmentUnsupported("clause %s is not ground" % clause)
        sat_clause = []
        for lit in clause:
            view = predicate_literal_view(lit)
            if view is None:
                raise FragmentUnsupported("literal %s is not a predicate literal" % lit)
            _check_prop_term(view.atom, True)
            var = atoms.setdefault(view.atom, len(atoms) + 1)
            sat_clause.append(var if view.positive else -var)
        cnf.append(sat_clause)
    if len(atoms) > MAX_ATOMS:
        raise FragmentUnsupported("%d atoms exceed the limit of %d" % (len(atoms), MAX_ATOMS))
    return solve(SatProblem(len(atoms), cnf)) is not None


@dataclass
class FiniteInterpretation:
    """
    A model over the domain ``range(size)`` for every base type.
    """

    size: int
    constants: Dict[str, int] = field(default_factory=dict)
    functions: Dict[str, Tuple[int, ...]] = field(default_factory=dict)
    predicates: Dict[Tuple[str, Tuple[int, ...]], bool] = field(default_factory=dict)


@dataclass(frozen=True)
class FiniteModelResult:
    size: Optional[int]
    max_domain: int
    model: Optional[FiniteInterpretation] = None

    @property
    def satisfiable(self) -> bool:
        return self.size is not None

    def __str__(self):
        if self.size is None:
            return "no-model-up-to(%d)" % self.max_domain
        return "sat-at-size(%d)" % self.size


def _symbol_key(const: Const) -> str:
    if not const.type_args:
        return const.name
    return "%s<%s>" % (const.name, ",".join(str(a) for a in const.type_args))


class _Fragment:
    """Symbols of a ground first-order clause set, grouped by sort."""

    def __init__(self, clauses: List[Clause]):
        self.clauses = clauses
        self.constants: Dict[TypeExpr, List[str]] = {}
        self.functions: Dict[str, Tuple[TypeExpr, TypeExpr]] = {}
        for clause in clauses:
            if not clause.is_ground():
                raise FragmentUnsupported("clause %s is not ground" % clause)
            for lit in clause:
                view = predicate_literal_view(lit)
                if view is not None:
                    head, _ = strip_app(view.atom)
                    for arg in view.args:
                        self._term(arg)
                    if not all(self._is_sort(a.ty) for a in view.args):
                        raise FragmentUnsupported("predicate %s takes non-individual arguments" % head.name)
                elif self._is_sort(lit.left.ty):
                    self._term(lit.left)
                    self._term(lit.right)
                else:
                    raise FragmentUnsupported("literal %s is not first-order" % lit)
        per_sort: Dict[TypeExpr, int] = {}
        for _, cod in self.functions.values():
            per_sort[cod] = per_sort.get(cod, 0) + 1
        for sort, names in self.constants.items():
            if len(names) > MAX_CONSTANTS:
                raise FragmentUnsupported("more than %d constants of sort %s" % (MAX_CONSTANTS, sort))
        if any(n > MAX_FUNCTIONS for n in per_sort.values()):
            raise FragmentUnsupported("more than %d unary functions per sort" % MAX_FUNCTIONS)

    @staticmethod
    def _is_sort(ty: TypeExpr) -> bool:
        return isinstance(ty, TypeApp) and ty.constructor not in ("o", "->")

    def _term(self, t: Term) -> None:
        head, args = strip_app(t)
        if not isinstance(head, Const) or not self._is_sort(t.ty):
            raise FragmentUnsupported("term %s is not a first-order individual" % t)
        if head.name in LOGICAL_SCHEMES:
            raise FragmentUnsupported("logical symbol %s inside a term" % head.name)
        key = _symbol_key(head)
        if not args:
            names = self.constants.setdefault(t.ty, [])
            if key not in names:
                names.append(key)
        elif len(args) == 1 and self._is_sort(args[0].ty):
            self.functions[key] = (args[0].ty, t.ty)
            self._term(args[0])
        else:
            raise FragmentUnsupported("function %s is not unary" % head.name)


def _restricted_growth(n: int, k: int) -> Iterator[Tuple[int, ...]]:
    """Value sequences for ``n`` interchangeable constants, one per partition into <= k blocks."""
    if n == 0:
        yield ()
        return
    for prefix in _restricted_growth(n - 1, k):
        for value in range(min(k, max(prefix, default=-1) + 2)):
            yield prefix + (value,)


def _model_at_size(fragment: _Fragment, k: int) -> Optional[FiniteInterpretation]:
    sorts = list(fragment.constants)
    constant_choices = [list(_restricted_growth(len(fragment.constants[s]), k)) for s in sorts]
    function_names = list(fragment.functions)
    table_choices = [list(itertools.product(range(k), repeat=k)) for _ in function_names]

    for consts in itertools.product(*constant_choices):
        constants = {}
        for sort, values in zip(sorts, consts):
            constants.update(zip(fragment.constants[sort], values))
        for tables in itertools.product(*table_choices):
            functions = dict(zip(function_names, tables))
            model = _try_interpretation(fragment, k, constants, functions)
            if model is not None:
                return model
    return None


def _try_interpretation(fragment, k, constants, functions) -> Optional[FiniteInterpretation]:
    def value(t: Term) -> int:
        head, args = strip_app(t)
        key = _symbol_key(head)
        if not args:
            return constants[key]
        return functions[key][value(args[0])]

    atoms: Dict[Tuple[str, Tuple[int, ...]], int] = {}
    cnf = []
    for clause in fragment.clauses:
        sat_clause = []
        satisfied = False
        for lit in clause:
            view = predicate_literal_view(lit)
            if view is not None:
                key = (_symbol_key(strip_app(view.atom)[0]), tuple(value(a) for a in view.args))
                var = atoms.setdefault(key, len(atoms) + 1)
                sat_clause.append(var if view.positive else -var)
            elif (value(lit.left) == value(lit.right)) == lit.positive:
                satisfied = True
                break
        if not satisfied:
            if not sat_clause:
                return None
            cnf.append(sat_clause)
    assignment = solve(SatProblem(len(atoms), cnf))
    if assignment is None:
        return None
    predicates = {key: assignment[var] for key, var in atoms.items()}
    return FiniteInterpretation(k, dict(constants), dict(functions), predicates)


def satisfiable_at_size(clauses, k: int) -> bool:
    """
    Whether the set has a model in which every sort has exactly ``k`` elements.

    :raises FragmentUnsupported: outside the ground first-order fragment
    """
    return _model_at_size(_Fragment(clauses_of(clauses)), k) is not None


def finite_model_sat(clauses, max_domain: int = MAX_DOMAIN) -> FiniteModelResult:
    """
    Search models of size ``1..max_domain``.

    :param clauses: ground first-order clauses with at most three constants and
        two unary functions per sort
    :param max_domain: largest domain size to try
    :return: the least size with a model, or ``no-model-up-to(max_domain)``
    """
    if not 1 <= max_domain <= MAX_DOMAIN:
        raise FragmentUnsupported("domain sizes are limited to 1..%d" % MAX_DOMAIN)
    fragment = _Fragment(clauses_of(clauses))
    for k in range(1, max_domain + 1):
        model = _model_at_size(fragment, k)
        if model is not None:
            logger.debug("model of size %d found", k)
            return FiniteModelResult(k, max_domain, model)
    return FiniteModelResult(None, max_domain)


def check_equisatisfiable(before, after, max_domain: int = MAX_DOMAIN) -> bool:
    """
    Compare oracle verdicts of two clause sets.

    The propositional oracle is used when both sets lie in its fragment,
    otherwise the finite-model oracle at every size ``1..max_domain``.

    :return: True iff the verdicts agree
    :raises FragmentUnsupported: when neither oracle supports both sets
    """
    before, after = clauses_of(before), clauses_of(after)
    try:
        return ground_prop_sat(before) == ground_prop_sat(after)
    except FragmentUnsupported as e:
        logger.debug("propositional oracle unavailable: %s", e)
    first, second = _Fragment(before), _Fragment(after)
    for k in range(1, max_domain + 1):
        if (_model_at_size(first, k) is None) != (_model_at_size(second, k) is None):
            logger.info("verdicts differ at domain size %d", k)
            return False
    return True
