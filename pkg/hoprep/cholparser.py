"""
Reader and printer for the ``.chol`` clausal higher-order problem format.

A problem is a sequence of s-expression items::

    (type list 1)
    (sym cons (pi (A) (-> A (list A) (list A))))
    (clause (vars (A type) (X A) (Y (list A))) (neq (app cons X Y) Y))

Variables are scoped per clause by the ``vars`` block; every other identifier
must be a declared symbol.
"""

import logging
import re
from dataclasses import dataclass
from typing import Dict, List, Optional, Tuple, Union

from .core import (
    BOOL,
    LOGICAL_SCHEMES,
    TRUE,
    App,
    Bound,
    Clause,
    ClauseSet,
    Const,
    HolTypeError,
    Lam,
    Literal,
    Signature,
    Substitution,
    Term,
    TypeApp,
    TypeExpr,
    TypeScheme,
    TypeVar,
    UsageError,
    Var,
    apply,
    arrow,
    fresh_name,
    is_arrow,
    lam,
    strip_app,
    subst_type,
)

logger = logging.getLogger(__name__)

KEYWORDS = {
    "type",
    "sym",
    "clause",
    "vars",
    "pi",
    "inst",
    "app",
    "lam",
    "eq",
    "neq",
    "pos",
    "neg",
    "->",
}

_TOKEN = re.compile(rb"(\s+)|(;[^\n]*)|(\()|(\))|(->)|([A-Za-z0-9_'\-]+)")
_NAT = re.compile(r"[0-9]+\Z")


@dataclass(frozen=True)
class SourceSpan:
    """Byte offsets ``[start, end)`` plus the 1-based line and column of ``start``."""

    start: int
    end: int
    line: int
    column: int


class ParseError(ValueError):
    """
    Problem text that cannot be read. ``kind`` is one of ``lexical``, ``syntax``,
    ``arity``, ``unknown identifier``, ``ill-typed``, ``duplicate declaration``
    or ``missing type arguments``.
    """

    def __init__(self, message: str, span: SourceSpan, kind: str = "syntax"):
        super().__init__("line %d, column %d: %s" % (span.line, span.column, message))
        self.span = span
        self.kind = kind
        self.detail = message


@dataclass
class SExpr:
    """A raw parse tree node: an atom (``text``) or a list (``items``)."""

    span: SourceSpan
    text: Optional[str] = None
    items: Optional[List["SExpr"]] = None

    @property
    def is_atom(self) -> bool:
        return self.items is None

    def head(self) -> Optional[str]:
        if self.items and self.items[0].is_atom:
            return self.items[0].text
        return None


class _Positions:
    def __init__(self, data: bytes):
        self.line_starts = [0] + [m.end() for m in re.finditer(rb"\n", data)]

    def span(self, start: int, end: int) -> SourceSpan:
        lo, hi = 0, len(self.line_starts) - 1
        while lo < hi:
            mid = (lo + hi + 1) // 2
            if self.line_starts[mid] <= start:
                lo = mid
            else:
                hi = mid - 1
        return SourceSpan(start, end, lo + 1, start - self.line_starts[lo] + 1)


def read_sexprs(text: Union[bytes, str]) -> List[SExpr]:
    """
    Tokenize and read the top-level s-expressions of ``text``.

    :param text: UTF-8 encoded bytes or a string
    :return: list of raw parse trees
    """
    data = text.encode("utf-8") if isinstance(text, str) else bytes(text)
    positions = _Positions(data)
    try:
        data.decode("utf-8")
    except UnicodeDecodeError as e:
        raise ParseError("input is not valid UTF-8", positions.span(e.start, e.end), "lexical")

    stack: List[Tuple[int, List[SExpr]]] = []
    top: List[SExpr] = []
    offset = 0
    while offset < len(data):
        m = _TOKEN.match(data, offset)
        if m is None:
            raise ParseError(
                "unexpected character %r" % data[offset:offset + 1].decode("utf-8", "replace"),
                positions.span(offset, offset + 1),
                "lexical",
            )
        start, end = m.span()
        offset = end
        if m.group(1) or m.group(2):
            continue
        if m.group(3):
            stack.append((start, []))
        elif m.group(4):
            if not stack:
                raise ParseError("unbalanced ')'", positions.span(start, end))
            open_at, items = stack.pop()
            node = SExpr(positions.span(open_at, end), items=items)
            (stack[-1][1] if stack else top).append(node)
        else:
            node = SExpr(positions.span(start, end), text=m.group(0).decode("ascii"))
            (stack[-1][1] if stack else top).append(node)
    if stack:
        open_at, _ = stack[-1]
        raise ParseError("unbalanced '('", positions.span(open_at, open_at + 1))
    return top


def _expect_list(node: SExpr, what: str) -> List[SExpr]:
    if node.is_atom:
        raise ParseError("expected %s, got %s" % (what, node.text), node.span)
    return node.items


def _expect_name(node: SExpr, what: str = "a name") -> str:
    if not node.is_atom or node.text in KEYWORDS:
        raise ParseError("expected %s" % what, node.span)
    return node.text


class _Scope:
    """Names visible inside one clause."""

    def __init__(self, type_vars=(), variables=None):
        self.type_vars = list(type_vars)
        self.variables: Dict[str, Var] = dict(variables or {})
        self.binders: List[Tuple[str, TypeExpr]] = []


def parse_type(sig: Signature, node: SExpr, type_vars=()) -> TypeExpr:
    """
    Read a type, checking constructor arities against ``sig``.

    :param type_vars: names of the type variables in scope
    """
    if node.is_atom:
        name = _expect_name(node, "a type")
        if name in type_vars:
            return TypeVar(name)
        if not sig.has_type(name):
            raise ParseError("unknown type %s" % name, node.span, "unknown identifier")
        if sig.type_arity(name) != 0:
            raise ParseError(
                "type constructor %s expects %d arguments, got 0" % (name, sig.type_arity(name)),
                node.span,
                "arity",
            )
        return TypeApp(name)
    items = node.items
    if not items or not items[0].is_atom:
        raise ParseError("expected a type", node.span)
    head = items[0].text
    args = [parse_type(sig, item, type_vars) for item in items[1:]]
    if head == "->":
        if len(args) < 2:
            raise ParseError("'->' needs at least two types", node.span, "arity")
        return arrow(*args)
    name = _expect_name(items[0], "a type constructor")
    if not sig.has_type(name):
        raise ParseError("unknown type %s" % name, items[0].span, "unknown identifier")
    if sig.type_arity(name) != len(args):
        raise ParseError(
            "type constructor %s expects %d arguments, got %d"
            % (name, sig.type_arity(name), len(args)),
            node.span,
            "arity",
        )
    return TypeApp(name, tuple(args))


def _parse_scheme(sig: Signature, node: SExpr) -> TypeScheme:
    if node.head() == "pi":
        items = node.items
        if len(items) != 3:
            raise ParseError("expected (pi (NAME*) type)", node.span)
        names = [_expect_name(n, "a type variable") for n in _expect_list(items[1], "(NAME*)")]
        if len(set(names)) != len(names):
            raise ParseError("type variable bound twice", items[1].span, "duplicate declaration")
        return TypeScheme(tuple(names), parse_type(sig, items[2], names))
    return TypeScheme((), parse_type(sig, node))


def typecheck_term(sig: Signature, node: SExpr, variables=None, type_vars=()) -> Term:
    """
    Turn a raw term into a typed, normalized :class:`~hoprep.core.Term`.

    :param sig: signature that resolves symbol names
    :param node: raw parse tree of the term
    :param variables: clause variables in scope, name -> :class:`~hoprep.core.Var`
    :param type_vars: clause type variables in scope
    :return: the term
    """
    return _term(sig, node, _Scope(type_vars, variables))


def _term(sig: Signature, node: SExpr, scope: _Scope) -> Term:
    if node.is_atom:
        name = _expect_name(node, "a term")
        for depth, (bound_name, ty) in enumerate(reversed(scope.binders)):
            if bound_name == name:
                return Bound(depth, ty)
        if name in scope.variables:
            return scope.variables[name]
        if not sig.has_symbol(name):
            raise ParseError("unknown identifier %s" % name, node.span, "unknown identifier")
        scheme = sig.scheme(name)
        if scheme.vars:
            raise ParseError(
                "missing type arguments for %s" % name, node.span, "missing type arguments"
            )
        return Const(name, (), scheme.body)

    head = node.head()
    items = node.items
    if head == "inst":
        if len(items) < 2:
            raise ParseError("expected (inst NAME type+)", node.span)
        name = _expect_name(items[1], "a symbol")
        if not sig.has_symbol(name):
            raise ParseError("unknown identifier %s" % name, items[1].span, "unknown identifier")
        scheme = sig.scheme(name)
        type_args = tuple(parse_type(sig, item, scope.type_vars) for item in items[2:])
        if not type_args:
            raise ParseError(
                "missing type arguments for %s" % name, node.span, "missing type arguments"
            )
        if len(type_args) != len(scheme.vars):
            raise ParseError(
                "%s expects %d type arguments, got %d" % (name, len(scheme.vars), len(type_args)),
                node.span,
                "arity",
            )
        return Const(name, type_args, scheme.instantiate(type_args))
    if head == "app":
        if len(items) < 3:
            raise ParseError("expected (app term term+)", node.span)
        fun = _term(sig, items[1], scope)
        args = [_term(sig, item, scope) for item in items[2:]]
        try:
            return apply(fun, *args)
        except HolTypeError as e:
            raise ParseError(str(e), node.span, "ill-typed")
    if head == "lam":
        if len(items) != 3:
            raise ParseError("expected (lam (NAME type) term)", node.span)
        binder = _expect_list(items[1], "(NAME type)")
        if len(binder) != 2:
            raise ParseError("expected (NAME type)", items[1].span)
        name = _expect_name(binder[0], "a variable")
        ty = parse_type(sig, binder[1], scope.type_vars)
        scope.binders.append((name, ty))
        try:
            body = _term(sig, items[2], scope)
        finally:
            scope.binders.pop()
        return lam(ty, body)
    raise ParseError("expected a term", node.span)


def _literal(sig: Signature, node: SExpr, scope: _Scope) -> Literal:
    head = node.head()
    items = _expect_list(node, "a literal")
    if head in ("eq", "neq"):
        if len(items) != 3:
            raise ParseError("expected (%s term term)" % head, node.span)
        left, right = _term(sig, items[1], scope), _term(sig, items[2], scope)
    elif head in ("pos", "neg"):
        if len(items) != 2:
            raise ParseError("expected (%s term)" % head, node.span)
        left, right = _term(sig, items[1], scope), TRUE
        if left.ty != BOOL:
            raise ParseError("(%s t) needs t of type o, got %s" % (head, left.ty), node.span, "ill-typed")
    else:
        raise ParseError("expected a literal", node.span)
    try:
        return Literal(head in ("eq", "pos"), left, right)
    except HolTypeError as e:
        raise ParseError(str(e), node.span, "ill-typed")


def _clause(sig: Signature, node: SExpr) -> Clause:
    items = node.items
    if len(items) < 2 or items[1].head() != "vars":
        raise ParseError("expected (clause (vars ...) lit*)", node.span)
    scope = _Scope()
    for entry in items[1].items[1:]:
        parts = _expect_list(entry, "(NAME type)")
        if len(parts) != 2:
            raise ParseError("expected (NAME type)", entry.span)
        name = _expect_name(parts[0], "a variable")
        if name in scope.variables or name in scope.type_vars:
            raise ParseError(
                "variable %s declared twice" % name, parts[0].span, "duplicate declaration"
            )
        if parts[1].is_atom and parts[1].text == "type":
            scope.type_vars.append(name)
        else:
            scope.variables[name] = Var(name, parse_type(sig, parts[1], scope.type_vars))
    return Clause(_literal(sig, lit, scope) for lit in items[2:])


def parse_problem(text: Union[bytes, str]) -> Tuple[Signature, ClauseSet]:
    """
    Read a problem.

    :param text: the problem in the ``.chol`` format, UTF-8
    :return: the signature and the clause set, in declaration order
    :raises ParseError: with the span of the offending item
    """
    sig = Signature()
    clauses = []
    for node in read_sexprs(text):
        head = node.head()
        items = _expect_list(node, "an item")
        if head == "type":
            if len(items) != 3 or not items[2].is_atom or not _NAT.match(items[2].text):
                raise ParseError("expected (type NAME NAT)", node.span)
            name = _expect_name(items[1], "a type name")
            try:
                sig = sig.add_type(name, int(items[2].text))
            except UsageError:
                raise ParseError(
                    "type %s declared twice" % name, items[1].span, "duplicate declaration"
                )
        elif head == "sym":
            if len(items) != 3:
                raise ParseError("expected (sym NAME scheme)", node.span)
            name = _expect_name(items[1], "a symbol name")
            scheme = _parse_scheme(sig, items[2])
            try:
                sig = sig.add_symbol(name, scheme)
            except UsageError:
                raise ParseError(
                    "symbol %s declared twice" % name, items[1].span, "duplicate declaration"
                )
        elif head == "clause":
            clauses.append(_clause(sig, node))
        else:
            raise ParseError("expected type, sym or clause", node.span)
    logger.debug("read %d clauses over %d symbols", len(clauses), len(sig.user_symbols()))
    return sig, ClauseSet(sig, tuple(clauses))


# Printing -------------------------------------------------------------------


def format_type(ty: TypeExpr) -> str:
    if isinstance(ty, TypeVar):
        return ty.name
    if is_arrow(ty):
        parts = []
        while is_arrow(ty):
            parts.append(format_type(ty.args[0]))
            ty = ty.args[1]
        parts.append(format_type(ty))
        return "(-> %s)" % " ".join(parts)
    if not ty.args:
        return ty.constructor
    return "(%s %s)" % (ty.constructor, " ".join(format_type(a) for a in ty.args))


def format_scheme(scheme: TypeScheme) -> str:
    if not scheme.vars:
        return format_type(scheme.body)
    return "(pi (%s) %s)" % (" ".join(scheme.vars), format_type(scheme.body))


class _Printer:
    def __init__(self, taken):
        self.taken = set(taken)

    def binder_name(self, depth: int) -> str:
        name = "x%d" % depth
        while name in self.taken:
            name += "_"
        return name

    def term(self, t: Term, names: List[str]) -> str:
        if isinstance(t, Var):
            return t.name
        if isinstance(t, Bound):
            return names[len(names) - 1 - t.index]
        if isinstance(t, Const):
            if t.type_args:
                return "(inst %s %s)" % (t.name, " ".join(format_type(a) for a in t.type_args))
            return t.name
        if isinstance(t, Lam):
            name = self.binder_name(len(names))
            return "(lam (%s %s) %s)" % (
                name,
                format_type(t.var_ty),
                self.term(t.body, names + [name]),
            )
        head, args = strip_app(t)
        return "(app %s %s)" % (
            self.term(head, names),
            " ".join(self.term(a, names) for a in args),
        )

    def literal(self, lit: Literal) -> str:
        if lit.right == TRUE and lit.left.ty == BOOL:
            return "(%s %s)" % ("pos" if lit.positive else "neg", self.term(lit.left, []))
        if lit.left == TRUE and lit.right.ty == BOOL:
            return "(%s %s)" % ("pos" if lit.positive else "neg", self.term(lit.right, []))
        return "(%s %s %s)" % (
            "eq" if lit.positive else "neq",
            self.term(lit.left, []),
            self.term(lit.right, []),
        )


def _avoid_declared(clause: Clause, sig: Signature) -> Clause:
    """
    Rename canonical variables that clash with declared names. A clause
    variable shadows a symbol and a clause type variable shadows a type.
    """
    declared_types = set(sig.user_types())
    taken = declared_types | set(clause.type_vars())
    tsub = {}
    for name in clause.type_vars():
        if name in declared_types:
            tsub[name] = TypeVar(fresh_name(name, taken))
            taken.add(tsub[name].name)
    declared = set(sig.user_symbols()) | set(LOGICAL_SCHEMES)
    taken = declared | {v.name for v in clause.free_vars()}
    terms = {}
    for var in clause.free_vars():
        if var.name in declared:
            new = fresh_name(var.name, taken)
            taken.add(new)
            terms[var.name] = Var(new, subst_type(var.ty, tsub))
    if not tsub and not terms:
        return clause
    return clause.substitute(Substitution(tsub, terms))


def format_clause(clause: Clause, sig: Optional[Signature] = None) -> str:
    """
    One ``(clause ...)`` item with canonical variable names.

    With ``sig``, a canonical name that is also a declared symbol or type gets
    a ``_1`` suffix so the printed clause reads back the same.
    """
    canon = clause.canonical()
    if sig is not None:
        canon = _avoid_declared(canon, sig)
    entries = ["(%s type)" % name for name in canon.type_vars()]
    entries += ["(%s %s)" % (v.name, format_type(v.ty)) for v in canon.free_vars()]
    taken = set(LOGICAL_SCHEMES) | {v.name for v in canon.free_vars()}
    if sig is not None:
        taken |= set(sig.user_symbols())
    printer = _Printer(taken)
    parts = ["(vars%s)" % "".join(" " + e for e in entries)]
    parts += [printer.literal(lit) for lit in canon.literals]
    return "(clause %s)" % " ".join(parts)


def _type_names(ty: TypeExpr, acc: List[str]) -> List[str]:
    if isinstance(ty, TypeApp):
        if ty.constructor not in acc:
            acc.append(ty.constructor)
        for arg in ty.args:
            _type_names(arg, acc)
    return acc


def _term_type_names(t: Term, acc: List[str]) -> List[str]:
    if isinstance(t, Const):
        for arg in t.type_args:
            _type_names(arg, acc)
    elif isinstance(t, App):
        _term_type_names(t.fun, acc)
        _term_type_names(t.arg, acc)
    elif isinstance(t, Lam):
        _type_names(t.var_ty, acc)
        _term_type_names(t.body, acc)
    return acc


def _declaration_order(sig: Signature, clauses: List[Clause]) -> Tuple[List[str], List[str]]:
    """
    Types and symbols in first-use order: symbols by first occurrence in the
    clauses, types by first occurrence in the symbol declarations and then in
    the clauses. Unused declarations follow in declaration order.
    """
    declared = sig.user_symbols()
    symbols = []
    for clause in clauses:
        for name in clause.symbols():
            if name in declared and name not in symbols:
                symbols.append(name)
    symbols += [name for name in declared if name not in symbols]

    used = []
    for name in symbols:
        _type_names(declared[name].body, used)
    for clause in clauses:
        for var in clause.free_vars():
            _type_names(var.ty, used)
        for lit in clause.literals:
            _term_type_names(lit.left, used)
            _term_type_names(lit.right, used)
    user_types = sig.user_types()
    types = [name for name in used if name in user_types]
    types += [name for name in user_types if name not in types]
    return types, symbols


def print_problem(sig: Signature, clauses) -> bytes:
    """
    Render a problem in the ``.chol`` format, one item per line.

    :param sig: signature whose declarations are printed in first-use order
    :param clauses: a :class:`~hoprep.core.ClauseSet` or iterable of clauses
    :return: UTF-8 encoded text
    """
    clauses = list(clauses)
    types, symbols = _declaration_order(sig, clauses)
    arities, schemes = sig.user_types(), sig.user_symbols()
    lines = ["(type %s %d)" % (name, arities[name]) for name in types]
    lines += ["(sym %s %s)" % (name, format_scheme(schemes[name])) for name in symbols]
    lines += [format_clause(clause, sig) for clause in clauses]
    return ("\n".join(lines) + "\n").encode("utf-8") if lines else b""
