"""
Types, signatures, lambda-terms, literals and clauses of clausal higher-order logic.

Terms are kept in eta-short beta-normal form at all times: the smart constructors
:func:`apply` and :func:`lam` normalize while building, so every term handed out by
this module is normal. Bound variables are nameless (de Bruijn indices), which makes
alpha-equivalent terms structurally equal.
"""

import logging
from collections import Counter
from dataclasses import dataclass, field
from typing import Callable, Dict, Iterable, List, Mapping, Optional, Tuple, Union

logger = logging.getLogger(__name__)


class HolTypeError(ValueError):
    """A term, literal or substitution is not well-typed."""


class UsageError(ValueError):
    """A library function was called outside of its precondition."""


class NotApplicableError(ValueError):
    """An elimination technique does not apply to the given symbol."""


class InvariantViolation(RuntimeError):
    """An internal consistency check failed."""


# Types ----------------------------------------------------------------------


@dataclass(frozen=True)
class TypeVar:
    name: str

    def __str__(self):
        return self.name


@dataclass(frozen=True)
class TypeApp:
    constructor: str
    args: Tuple["TypeExpr", ...] = ()

    def __str__(self):
        if self.constructor == "->":
            dom, cod = self.args
            left = "(%s)" % dom if is_arrow(dom) else str(dom)
            return "%s -> %s" % (left, cod)
        if not self.args:
            return self.constructor
        return "%s(%s)" % (self.constructor, ", ".join(str(a) for a in self.args))


TypeExpr = Union[TypeVar, TypeApp]

BOOL = TypeApp("o")


def arrow(*types: TypeExpr) -> TypeExpr:
    """
    Build the right-associated function type ``t1 -> ... -> tn``.

    :param types: at least one type; the last one is the result type
    :return: the arrow type
    """
    if not types:
        raise UsageError("arrow needs at least one type")
    result = types[-1]
    for ty in reversed(types[:-1]):
        result = TypeApp("->", (ty, result))
    return result


def is_arrow(ty: TypeExpr) -> bool:
    return isinstance(ty, TypeApp) and ty.constructor == "->"


def split_arrow(ty: TypeExpr) -> Tuple[List[TypeExpr], TypeExpr]:
    """
    Split ``t1 -> ... -> tn -> r`` into ``([t1, ..., tn], r)`` with ``r`` not an arrow.
    """
    args = []
    while is_arrow(ty):
        args.append(ty.args[0])
        ty = ty.args[1]
    return args, ty


def type_vars(ty: TypeExpr, acc: Optional[List[str]] = None) -> List[str]:
    """
    Type variable names of a type, in first-occurrence order.
    """
    if acc is None:
        acc = []
    if isinstance(ty, TypeVar):
        if ty.name not in acc:
            acc.append(ty.name)
    else:
        for arg in ty.args:
            type_vars(arg, acc)
    return acc


def subst_type(ty: TypeExpr, tsub: Mapping[str, TypeExpr]) -> TypeExpr:
    if not tsub:
        return ty
    if isinstance(ty, TypeVar):
        return tsub.get(ty.name, ty)
    if not ty.args:
        return ty
    return TypeApp(ty.constructor, tuple(subst_type(a, tsub) for a in ty.args))


@dataclass(frozen=True)
class TypeScheme:
    """
    A rank-1 polymorphic type declaration ``Pi vars. body``.
    """

    vars: Tuple[str, ...]
    body: TypeExpr

    def __post_init__(self):
        if len(set(self.vars)) != len(self.vars):
            raise HolTypeError("type scheme binds a variable twice: %s" % (self.vars,))
        free = [v for v in type_vars(self.body) if v not in self.vars]
        if free:
            raise HolTypeError("type scheme leaves %s unbound" % ", ".join(free))

    def instantiate(self, type_args: Tuple[TypeExpr, ...]) -> TypeExpr:
        if len(type_args) != len(self.vars):
            raise HolTypeError(
                "expected %d type arguments, got %d" % (len(self.vars), len(type_args))
            )
        return subst_type(self.body, dict(zip(self.vars, type_args)))

    def __str__(self):
        if not self.vars:
            return str(self.body)
        return "Pi %s. %s" % (" ".join(self.vars), self.body)


_A = TypeVar("A")

LOGICAL_SCHEMES = {
    "true": TypeScheme((), BOOL),
    "false": TypeScheme((), BOOL),
    "not": TypeScheme((), arrow(BOOL, BOOL)),
    "and": TypeScheme((), arrow(BOOL, BOOL, BOOL)),
    "or": TypeScheme((), arrow(BOOL, BOOL, BOOL)),
    "imp": TypeScheme((), arrow(BOOL, BOOL, BOOL)),
    "all": TypeScheme(("A",), arrow(arrow(_A, BOOL), BOOL)),
    "ex": TypeScheme(("A",), arrow(arrow(_A, BOOL), BOOL)),
    "eqb": TypeScheme(("A",), arrow(_A, _A, BOOL)),
    "neqb": TypeScheme(("A",), arrow(_A, _A, BOOL)),
    "choice": TypeScheme(("A",), arrow(arrow(_A, BOOL), _A)),
}

BUILTIN_TYPES = {"o": 0, "->": 2}


class Signature:
    """
    Type constructors with their arities and symbols with their type schemes.

    A signature is never modified in place; ``add_type``, ``add_symbol`` and
    ``without_symbol`` return new signatures. Declaration order is preserved.
    """

    def __init__(self, types=None, symbols=None):
        self._types = dict(BUILTIN_TYPES)
        self._symbols = dict(LOGICAL_SCHEMES)
        for name, arity in (types or {}).items():
            if name in self._types:
                raise UsageError("duplicate declaration of type %s" % name)
            self._types[name] = arity
        for name, scheme in (symbols or {}).items():
            if name in self._symbols:
                raise UsageError("duplicate declaration of symbol %s" % name)
            self._check_type(scheme.body, scheme.vars)
            self._symbols[name] = scheme

    def _check_type(self, ty, allowed_vars):
        if isinstance(ty, TypeVar):
            if ty.name not in allowed_vars:
                raise HolTypeError("unbound type variable %s" % ty.name)
            return
        if ty.constructor not in self._types:
            raise HolTypeError("unknown type constructor %s" % ty.constructor)
        if self._types[ty.constructor] != len(ty.args):
            raise HolTypeError(
                "type constructor %s expects %d arguments, got %d"
                % (ty.constructor, self._types[ty.constructor], len(ty.args))
            )
        for arg in ty.args:
            self._check_type(arg, allowed_vars)

    def check_type(self, ty: TypeExpr, allowed_vars=()) -> None:
        """
        Check constructor arities of a type.

        :param ty: type to check
        :param allowed_vars: names of type variables in scope
        :raises HolTypeError: on unknown constructors, arity mismatches or unbound variables
        """
        self._check_type(ty, allowed_vars)

    def add_type(self, name: str, arity: int) -> "Signature":
        if name in self._types:
            self._dup(name)
        return Signature({**self.user_types(), name: arity}, self.user_symbols())

    def add_symbol(self, name: str, scheme: TypeScheme) -> "Signature":
        if name in self._symbols:
            self._dup(name)
        return Signature(self.user_types(), {**self.user_symbols(), name: scheme})

    @staticmethod
    def _dup(name):
        raise UsageError("duplicate declaration of %s" % name)

    def without_symbol(self, name: str) -> "Signature":
        symbols = self.user_symbols()
        symbols.pop(name, None)
        return Signature(self.user_types(), symbols)

    def user_types(self) -> Dict[str, int]:
        return {n: a for n, a in self._types.items() if n not in BUILTIN_TYPES}

    def user_symbols(self) -> Dict[str, TypeScheme]:
        return {n: s for n, s in self._symbols.items() if n not in LOGICAL_SCHEMES}

    def has_type(self, name: str) -> bool:
        return name in self._types

    def type_arity(self, name: str) -> int:
        return self._types[name]

    def has_symbol(self, name: str) -> bool:
        return name in self._symbols

    def scheme(self, name: str) -> TypeScheme:
        try:
            return self._symbols[name]
        except KeyError:
            raise HolTypeError("unknown symbol %s" % name)

    def is_predicate_symbol(self, name: str) -> bool:
        """
        A non-logical symbol is a predicate symbol if some instance of its type
        has the shape ``u1 -> ... -> un -> o``.
        """
        if name in LOGICAL_SCHEMES or name not in self._symbols:
            return False
        scheme = self._symbols[name]
        _, result = split_arrow(scheme.body)
        return result == BOOL or (
            isinstance(result, TypeVar) and result.name in scheme.vars
        )

    def predicate_symbols(self) -> List[str]:
        return [n for n in self._symbols if self.is_predicate_symbol(n)]

    def const(self, name: str, *type_args: TypeExpr) -> "Const":
        """
        Symbol instance ``name<type_args>`` with its instantiated type.
        """
        return Const(name, tuple(type_args), self.scheme(name).instantiate(tuple(type_args)))

    def __eq__(self, other):
        return (
            isinstance(other, Signature)
            and self._types == other._types
            and self._symbols == other._symbols
        )

    def __hash__(self):
        return hash((frozenset(self._types.items()), frozenset(self._symbols.items())))

    def __repr__(self):
        return "Signature(%s, %s)" % (self.user_types(), list(self.user_symbols()))


def logical(name: str, *type_args: TypeExpr) -> "Const":
    return Const(name, tuple(type_args), LOGICAL_SCHEMES[name].instantiate(tuple(type_args)))


# Terms ----------------------------------------------------------------------


@dataclass(frozen=True)
class Var:
    """A free term variable."""

    name: str
    ty: TypeExpr

    def __str__(self):
        return format_term(self)


@dataclass(frozen=True)
class Bound:
    """A bound variable, as a de Bruijn index."""

    index: int
    ty: TypeExpr


@dataclass(frozen=True)
class Const:
    """A symbol instance ``name<type_args>``."""

    name: str
    type_args: Tuple[TypeExpr, ...]
    ty: TypeExpr

    def __str__(self):
        return format_term(self)


@dataclass(frozen=True)
class App:
    fun: "Term"
    arg: "Term"
    ty: TypeExpr

    def __str__(self):
        return format_term(self)


@dataclass(frozen=True)
class Lam:
    var_ty: TypeExpr
    body: "Term"
    ty: TypeExpr

    def __str__(self):
        return format_term(self)


Term = Union[Var, Bound, Const, App, Lam]

TRUE = logical("true")
FALSE = logical("false")


def shift(t: Term, d: int, cutoff: int = 0) -> Term:
    """
    Add ``d`` to every bound index of ``t`` that points above ``cutoff`` binders.
    """
    if isinstance(t, Bound):
        return Bound(t.index + d, t.ty) if t.index >= cutoff else t
    if isinstance(t, App):
        return App(shift(t.fun, d, cutoff), shift(t.arg, d, cutoff), t.ty)
    if isinstance(t, Lam):
        return Lam(t.var_ty, shift(t.body, d, cutoff + 1), t.ty)
    return t


def has_loose(t: Term, index: int = 0) -> bool:
    """
    True if ``t`` contains a bound variable with index ``>= index`` not bound inside ``t``.
    """
    if isinstance(t, Bound):
        return t.index >= index
    if isinstance(t, App):
        return has_loose(t.fun, index) or has_loose(t.arg, index)
    if isinstance(t, Lam):
        return has_loose(t.body, index + 1)
    return False


def _instantiate(t: Term, depth: int, arg: Term) -> Term:
    if isinstance(t, Bound):
        if t.index == depth:
            return shift(arg, depth)
        if t.index > depth:
            return Bound(t.index - 1, t.ty)
        return t
    if isinstance(t, App):
        return _app(_instantiate(t.fun, depth, arg), _instantiate(t.arg, depth, arg))
    if isinstance(t, Lam):
        return _lam(t.var_ty, _instantiate(t.body, depth + 1, arg))
    return t


def _app(fun: Term, arg: Term) -> Term:
    if not is_arrow(fun.ty):
        raise HolTypeError("cannot apply %s of type %s" % (format_term(fun), fun.ty))
    dom, cod = fun.ty.args
    if dom != arg.ty:
        raise HolTypeError(
            "argument %s has type %s, expected %s" % (format_term(arg), arg.ty, dom)
        )
    if isinstance(fun, Lam):
        return _instantiate(fun.body, 0, arg)
    return App(fun, arg, cod)


def _lam(var_ty: TypeExpr, body: Term) -> Term:
    if (
        isinstance(body, App)
        and isinstance(body.arg, Bound)
        and body.arg.index == 0
        and not has_loose(body.fun, 0)
    ):
        return shift(body.fun, -1)
    return Lam(var_ty, body, arrow(var_ty, body.ty))


def apply(fun: Term, *args: Term) -> Term:
    """
    Apply ``fun`` to ``args`` and normalize.

    :raises HolTypeError: if an argument does not fit the function type
    """
    for arg in args:
        fun = _app(fun, arg)
    return fun


def lam(var_ty: TypeExpr, body: Term) -> Term:
    """
    Abstract over de Bruijn index 0 of ``body`` and normalize.
    """
    return _lam(var_ty, body)


def abstract(var: Var, body: Term) -> Term:
    """
    The normalized abstraction ``lambda var. body`` over the free variable ``var``.
    """

    def go(t, depth):
        if isinstance(t, Var):
            return Bound(depth, t.ty) if t == var else t
        if isinstance(t, Bound):
            return Bound(t.index + 1, t.ty) if t.index >= depth else t
        if isinstance(t, App):
            return App(go(t.fun, depth), go(t.arg, depth), t.ty)
        if isinstance(t, Lam):
            return Lam(t.var_ty, go(t.body, depth + 1), t.ty)
        return t

    return _lam(var.ty, go(body, 0))


def lambda_abstract(variables: Iterable[Var], body: Term) -> Term:
    """
    ``lambda x1 ... xn. body`` for free variables ``x1 ... xn``.
    """
    for var in reversed(list(variables)):
        body = abstract(var, body)
    return body


def beta_eta_normalize(t: Term) -> Term:
    """
    Rebuild ``t`` bottom-up through the normalizing constructors.

    Terms produced by this module are already normal, so this is the identity on
    them; it matters for trees assembled directly from the dataclasses.
    """
    if isinstance(t, App):
        return _app(beta_eta_normalize(t.fun), beta_eta_normalize(t.arg))
    if isinstance(t, Lam):
        return _lam(t.var_ty, beta_eta_normalize(t.body))
    return t


def strip_app(t: Term) -> Tuple[Term, List[Term]]:
    """
    Split ``h t1 ... tn`` into its head and argument list.
    """
    args = []
    while isinstance(t, App):
        args.append(t.arg)
        t = t.fun
    args.reverse()
    return t, args


def map_types(t: Term, tsub: Mapping[str, TypeExpr]) -> Term:
    """
    Apply a type substitution to every type annotation of ``t``.
    """
    if not tsub:
        return t
    if isinstance(t, Var):
        return Var(t.name, subst_type(t.ty, tsub))
    if isinstance(t, Bound):
        return Bound(t.index, subst_type(t.ty, tsub))
    if isinstance(t, Const):
        return Const(
            t.name,
            tuple(subst_type(a, tsub) for a in t.type_args),
            subst_type(t.ty, tsub),
        )
    if isinstance(t, App):
        return App(map_types(t.fun, tsub), map_types(t.arg, tsub), subst_type(t.ty, tsub))
    return Lam(
        subst_type(t.var_ty, tsub), map_types(t.body, tsub), subst_type(t.ty, tsub)
    )


@dataclass(frozen=True)
class Substitution:
    """
    Simultaneous substitution of type variables and term variables (by name).
    """

    types: Mapping[str, TypeExpr] = field(default_factory=dict)
    terms: Mapping[str, Term] = field(default_factory=dict)

    def __bool__(self):
        return bool(self.types) or bool(self.terms)


def _replace_vars(t: Term, terms: Mapping[str, Term]) -> Term:
    if isinstance(t, Var):
        image = terms.get(t.name)
        if image is None:
            return t
        if image.ty != t.ty:
            raise HolTypeError(
                "cannot substitute %s : %s for %s : %s"
                % (format_term(image), image.ty, t.name, t.ty)
            )
        return image
    if isinstance(t, App):
        return _app(_replace_vars(t.fun, terms), _replace_vars(t.arg, terms))
    if isinstance(t, Lam):
        return _lam(t.var_ty, _replace_vars(t.body, terms))
    return t


def substitute(t: Term, sigma: Substitution) -> Term:
    """
    Capture-avoiding substitution followed by renormalization.

    Type variables are substituted first, then term variables; images must have
    the instantiated type of the variable they replace.

    :raises HolTypeError: on a type mismatch between a variable and its image
    """
    for image in sigma.terms.values():
        if has_loose(image):
            raise UsageError("substitution image %s is not closed" % format_term(image))
    t = map_types(t, sigma.types)
    if not sigma.terms:
        return t
    return _replace_vars(t, sigma.terms)


def replace_instances(
    t: Term, name: str, make: Callable[[Tuple[TypeExpr, ...]], Optional[Term]]
) -> Term:
    """
    Replace every instance ``name<ts>`` for which ``make(ts)`` returns a term.
    """
    if isinstance(t, Const):
        if t.name != name:
            return t
        image = make(t.type_args)
        if image is None:
            return t
        if image.ty != t.ty:
            raise HolTypeError(
                "cannot replace %s : %s by a term of type %s" % (name, t.ty, image.ty)
            )
        return image
    if isinstance(t, App):
        return _app(replace_instances(t.fun, name, make), replace_instances(t.arg, name, make))
    if isinstance(t, Lam):
        return _lam(t.var_ty, replace_instances(t.body, name, make))
    return t


def replace_symbol(
    t: Term, name: str, type_args: Tuple[TypeExpr, ...], replacement: Term
) -> Term:
    """
    ``t[f<type_args> |-> replacement]``, renormalized.
    """
    type_args = tuple(type_args)
    return replace_instances(
        t, name, lambda args: replacement if args == type_args else None
    )


def free_vars(t: Term, acc: Optional[List[Var]] = None) -> List[Var]:
    if acc is None:
        acc = []
    if isinstance(t, Var):
        if t not in acc:
            acc.append(t)
    elif isinstance(t, App):
        free_vars(t.fun, acc)
        free_vars(t.arg, acc)
    elif isinstance(t, Lam):
        free_vars(t.body, acc)
    return acc


def term_type_vars(t: Term, acc: Optional[List[str]] = None) -> List[str]:
    if acc is None:
        acc = []
    type_vars(t.ty, acc)
    if isinstance(t, Const):
        for arg in t.type_args:
            type_vars(arg, acc)
    elif isinstance(t, App):
        term_type_vars(t.fun, acc)
        term_type_vars(t.arg, acc)
    elif isinstance(t, Lam):
        type_vars(t.var_ty, acc)
        term_type_vars(t.body, acc)
    return acc


def count_symbol(t: Term, name: str) -> int:
    if isinstance(t, Const):
        return 1 if t.name == name else 0
    if isinstance(t, App):
        return count_symbol(t.fun, name) + count_symbol(t.arg, name)
    if isinstance(t, Lam):
        return count_symbol(t.body, name)
    return 0


def symbols_of(t: Term, acc: Optional[List[str]] = None) -> List[str]:
    """
    Names of the symbols occurring in ``t`` in first-occurrence order.
    """
    if acc is None:
        acc = []
    if isinstance(t, Const):
        if t.name not in acc:
            acc.append(t.name)
    elif isinstance(t, App):
        symbols_of(t.fun, acc)
        symbols_of(t.arg, acc)
    elif isinstance(t, Lam):
        symbols_of(t.body, acc)
    return acc


def contains_lambda(t: Term) -> bool:
    if isinstance(t, Lam):
        return True
    if isinstance(t, App):
        return contains_lambda(t.fun) or contains_lambda(t.arg)
    return False


def format_term(t: Term, names: Optional[List[str]] = None) -> str:
    """
    Human-readable rendering used by logs and ``str()``; not the file format.
    """
    if names is None:
        names = []
    if isinstance(t, Var):
        return t.name
    if isinstance(t, Bound):
        pos = len(names) - 1 - t.index
        return names[pos] if 0 <= pos < len(names) else "#%d" % t.index
    if isinstance(t, Const):
        if t.type_args:
            return "%s<%s>" % (t.name, ", ".join(str(a) for a in t.type_args))
        return t.name
    if isinstance(t, Lam):
        name = "x%d" % len(names)
        return "(λ%s. %s)" % (name, format_term(t.body, names + [name]))
    head, args = strip_app(t)
    parts = [format_term(head, names)]
    for arg in args:
        text = format_term(arg, names)
        parts.append("(%s)" % text if isinstance(arg, App) else text)
    return " ".join(parts)


# Literals and clauses -------------------------------------------------------


@dataclass(frozen=True, eq=False)
class Literal:
    """
    An equation ``left = right`` (``positive``) or a disequation.

    Sides form an unordered pair for equality and hashing; the stored orientation
    is kept for printing. A Boolean side ``false`` is rewritten to ``true`` with the
    polarity flipped, so predicate literals always read ``atom (=|!=) true``.
    """

    positive: bool
    left: Term
    right: Term

    def __post_init__(self):
        if self.left.ty != self.right.ty:
            raise HolTypeError(
                "literal sides %s : %s and %s : %s differ in type"
                % (format_term(self.left), self.left.ty, format_term(self.right), self.right.ty)
            )
        positive, left, right = self.positive, self.left, self.right
        while left == FALSE or right == FALSE:
            if right == FALSE:
                right = TRUE
            else:
                left = TRUE
            positive = not positive
        object.__setattr__(self, "positive", positive)
        object.__setattr__(self, "left", left)
        object.__setattr__(self, "right", right)

    def _key(self):
        return (self.positive, frozenset((self.left, self.right)))

    def __eq__(self, other):
        return isinstance(other, Literal) and self._key() == other._key()

    def __hash__(self):
        return hash(self._key())

    @property
    def sides(self) -> Tuple[Term, Term]:
        return self.left, self.right

    def complement(self) -> "Literal":
        return Literal(not self.positive, self.left, self.right)

    def map_terms(self, fn: Callable[[Term], Term]) -> "Literal":
        return Literal(self.positive, fn(self.left), fn(self.right))

    def substitute(self, sigma: Substitution) -> "Literal":
        return self.map_terms(lambda t: substitute(t, sigma))

    def __str__(self):
        if self.right == TRUE and self.left.ty == BOOL:
            return ("" if self.positive else "¬") + format_term(self.left)
        if self.left == TRUE and self.right.ty == BOOL:
            return ("" if self.positive else "¬") + format_term(self.right)
        return "%s %s %s" % (
            format_term(self.left),
            "≈" if self.positive else "≉",
            format_term(self.right),
        )

    __repr__ = __str__


def pos(atom: Term) -> Literal:
    return Literal(True, atom, TRUE)


def neg(atom: Term) -> Literal:
    return Literal(False, atom, TRUE)


def eq(left: Term, right: Term) -> Literal:
    return Literal(True, left, right)


def neq(left: Term, right: Term) -> Literal:
    return Literal(False, left, right)


@dataclass(frozen=True)
class PredicateView:
    """Decomposition of a p-literal ``(¬) p<type_args> args``."""

    symbol: str
    positive: bool
    type_args: Tuple[TypeExpr, ...]
    args: Tuple[Term, ...]
    atom: Term


def predicate_literal_view(literal: Literal) -> Optional[PredicateView]:
    """
    Decompose a predicate literal, or return None for equations and
    variable-headed or lambda-headed literals.
    """
    for atom, other in ((literal.left, literal.right), (literal.right, literal.left)):
        if other != TRUE:
            continue
        head, args = strip_app(atom)
        if isinstance(head, Const) and head.name not in LOGICAL_SCHEMES:
            return PredicateView(head.name, literal.positive, head.type_args, tuple(args), atom)
    return None


class Clause:
    """
    A finite multiset of literals. Literal order is kept for output; equality
    is multiset equality.
    """

    __slots__ = ("literals",)

    def __init__(self, literals: Iterable[Literal] = ()):
        object.__setattr__(self, "literals", tuple(literals))

    def __setattr__(self, name, value):
        raise AttributeError("Clause is immutable")

    def __iter__(self):
        return iter(self.literals)

    def __len__(self):
        return len(self.literals)

    def __getitem__(self, index):
        return self.literals[index]

    def __eq__(self, other):
        return isinstance(other, Clause) and Counter(self.literals) == Counter(other.literals)

    def __hash__(self):
        return hash(frozenset(Counter(self.literals).items()))

    def __str__(self):
        if not self.literals:
            return "⊥"
        return " ∨ ".join(str(lit) for lit in self.literals)

    def __repr__(self):
        return "Clause(%s)" % self

    def free_vars(self) -> List[Var]:
        acc = []
        for lit in self.literals:
            free_vars(lit.left, acc)
            free_vars(lit.right, acc)
        return acc

    def type_vars(self) -> List[str]:
        acc = []
        for lit in self.literals:
            term_type_vars(lit.left, acc)
            term_type_vars(lit.right, acc)
        for var in self.free_vars():
            type_vars(var.ty, acc)
        return acc

    def is_ground(self) -> bool:
        return not self.free_vars() and not self.type_vars()

    def map_terms(self, fn: Callable[[Term], Term]) -> "Clause":
        return Clause(lit.map_terms(fn) for lit in self.literals)

    def substitute(self, sigma: Substitution) -> "Clause":
        return Clause(lit.substitute(sigma) for lit in self.literals)

    def without(self, index: int) -> "Clause":
        return Clause(self.literals[:index] + self.literals[index + 1:])

    def symbols(self) -> List[str]:
        acc = []
        for lit in self.literals:
            symbols_of(lit.left, acc)
            symbols_of(lit.right, acc)
        return acc

    def canonical(self) -> "Clause":
        """
        Rename variables to ``X0, X1, ...`` and type variables to ``A0, A1, ...``
        in first-occurrence order.
        """
        tsub = {name: TypeVar("A%d" % i) for i, name in enumerate(self.type_vars())}
        terms = {
            var.name: Var("X%d" % i, subst_type(var.ty, tsub))
            for i, var in enumerate(self.free_vars())
        }
        return self.substitute(Substitution(tsub, terms))


@dataclass(frozen=True)
class ClauseSet:
    """
    An ordered collection of clauses over a shared signature.
    """

    signature: Signature
    clauses: Tuple[Clause, ...] = ()

    def __iter__(self):
        return iter(self.clauses)

    def __len__(self):
        return len(self.clauses)

    def replace(self, clauses=None, signature=None) -> "ClauseSet":
        return ClauseSet(
            self.signature if signature is None else signature,
            self.clauses if clauses is None else tuple(clauses),
        )


def clauses_of(clauses) -> List[Clause]:
    if isinstance(clauses, ClauseSet):
        return list(clauses.clauses)
    return list(clauses)


def fresh_name(base: str, taken) -> str:
    if base not in taken:
        return base
    k = 1
    while "%s_%d" % (base, k) in taken:
        k += 1
    return "%s_%d" % (base, k)


def rename_apart(clause: Clause, avoid_vars=(), avoid_type_vars=()) -> Clause:
    """
    Rename the variables of ``clause`` that clash with the given names.

    Literal order is preserved, so literal positions stay valid.
    """
    avoid_vars = set(avoid_vars)
    avoid_type_vars = set(avoid_type_vars)
    own_types = clause.type_vars()
    taken_types = avoid_type_vars | set(own_types)
    tsub = {}
    for name in own_types:
        if name in avoid_type_vars:
            new = fresh_name(name, taken_types)
            taken_types.add(new)
            tsub[name] = TypeVar(new)
    own_vars = clause.free_vars()
    taken = avoid_vars | {v.name for v in own_vars}
    terms = {}
    for var in own_vars:
        if var.name in avoid_vars:
            new = fresh_name(var.name, taken)
            taken.add(new)
            terms[var.name] = Var(new, subst_type(var.ty, tsub))
    if not tsub and not terms:
        return clause
    return clause.substitute(Substitution(tsub, terms))


def rename_apart_from(clause: Clause, other: Clause) -> Clause:
    return rename_apart(
        clause, {v.name for v in other.free_vars()}, set(other.type_vars())
    )


# Syntactic predicates -------------------------------------------------------


def unify_types(
    left: Iterable[TypeExpr], right: Iterable[TypeExpr]
) -> Optional[Substitution]:
    """
    Most general unifier of two type lists, or None.

    :raises UsageError: if the lists differ in length
    """
    left, right = list(left), list(right)
    if len(left) != len(right):
        raise UsageError("cannot unify %d types with %d types" % (len(left), len(right)))
    tsub: Dict[str, TypeExpr] = {}
    work = list(zip(left, right))
    while work:
        a, b = work.pop()
        a, b = subst_type(a, tsub), subst_type(b, tsub)
        if a == b:
            continue
        if not isinstance(a, TypeVar):
            a, b = b, a
        if isinstance(a, TypeVar):
            if a.name in type_vars(b):
                return None
            tsub = {k: subst_type(v, {a.name: b}) for k, v in tsub.items()}
            tsub[a.name] = b
        elif a.constructor != b.constructor or len(a.args) != len(b.args):
            return None
        else:
            work.extend(zip(a.args, b.args))
    return Substitution(types=tsub)


def predicate_literals(clause: Clause, symbol: str) -> List[Tuple[int, PredicateView]]:
    result = []
    for i, lit in enumerate(clause.literals):
        view = predicate_literal_view(lit)
        if view is not None and view.symbol == symbol:
            result.append((i, view))
    return result


def occurs_deep(symbol: str, clause: Clause) -> bool:
    """
    True if ``symbol`` occurs in ``clause`` other than as the head of the atom of
    one of its own predicate literals.
    """
    for lit in clause.literals:
        view = predicate_literal_view(lit)
        if view is not None and view.symbol == symbol:
            if any(count_symbol(arg, symbol) for arg in view.args):
                return True
        elif count_symbol(lit.left, symbol) or count_symbol(lit.right, symbol):
            return True
    return False


def is_singular(symbol: str, clauses) -> bool:
    return all(
        len(predicate_literals(c, symbol)) <= 1 and not occurs_deep(symbol, c)
        for c in clauses_of(clauses)
    )


def is_polymorphism_safe(clause: Clause, symbol: str) -> bool:
    """
    True if every type variable of ``clause`` occurs among the type arguments of
    each of its ``symbol``-literals.
    """
    literals = predicate_literals(clause, symbol)
    if not literals:
        return True
    clause_vars = set(clause.type_vars())
    for _, view in literals:
        listed = []
        for arg in view.type_args:
            type_vars(arg, listed)
        if not clause_vars <= set(listed):
            return False
    return True


def negation(formula: Term) -> Term:
    return apply(logical("not"), formula)


def disjunction(formulas: Iterable[Term]) -> Term:
    """
    Right-nested ``or`` of the formulas; the empty disjunction is ``false``.
    """
    formulas = list(formulas)
    if not formulas:
        return FALSE
    result = formulas[-1]
    for formula in reversed(formulas[:-1]):
        result = apply(logical("or"), formula, result)
    return result


def iff(left: Term, right: Term) -> Term:
    return apply(logical("eqb", BOOL), left, right)


def literal_to_formula(literal: Literal) -> Term:
    name = "eqb" if literal.positive else "neqb"
    return apply(logical(name, literal.left.ty), literal.left, literal.right)


def clause_to_formula(clause: Clause) -> Term:
    """
    The formula ``[C]``: bold (dis)equations joined by bold disjunction in clause
    order; the empty clause maps to ``false``.
    """
    return disjunction(literal_to_formula(lit) for lit in clause.literals)
