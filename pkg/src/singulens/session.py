"""Session files: named semigroups, rings, germs and ideals.

One statement per line, ``#`` starts a comment::

    semigroup S = [(1,0), (1,1), (1,2)]
    ring R = toric(S) vars x, y, z
    germ f = x^2 + y^3 + z^2
    ideal I = <x^2 - y^2, x*y - z^2>

``ring R = affine(n) vars ...`` declares C^n. Germs and ideals use the most
recent ring above them; before any ring they live on C^n whose variables are
all identifiers used in those statements (sorted), minus bound germ names.
Expressions take ``+ - * / ^``, parentheses, integer literals and names of
ring variables or earlier germs.
"""

import re
from dataclasses import dataclass, field
from fractions import Fraction

from .errors import DimensionMismatch, ParseError, UnknownBinding
from .germ import Germ
from .ideals import Ideal
from .semigroup import Semigroup

NAME_RE = re.compile(r"[A-Za-z][A-Za-z0-9_]*")
_TOKEN_RE = re.compile(
    r"\s*(?:(?P<int>\d+)|(?P<name>[A-Za-z][A-Za-z0-9_]*)|(?P<op>[-+*/^(),<>=\[\]]))"
)


@dataclass(frozen=True)
class Token:
    kind: str  # "int", "name", "op" or "end"
    text: str
    line: int
    col: int


def tokenize(text, line):
    """Tokens of one statement; columns are 1-based."""
    pos, out = 0, []
    while True:
        while pos < len(text) and text[pos].isspace():
            pos += 1
        if pos >= len(text):
            out.append(Token("end", "", line, pos + 1))
            return out
        m = _TOKEN_RE.match(text, pos)
        if not m or m.end() == pos:
            raise ParseError(line, pos + 1, "a number, a name or an operator")
        kind = m.lastgroup
        start = m.start(kind)
        out.append(Token(kind, m.group(kind), line, start + 1))
        pos = m.end()


@dataclass(frozen=True)
class Ring:
    name: str
    kind: str  # "affine" or "toric"
    names: tuple
    semigroup: object = None  # name of the semigroup for toric rings

    @property
    def vars(self):
        return len(self.names)


@dataclass
class Session:
    """Ordered bindings plus the ring each germ or ideal was read in."""

    bindings: dict = field(default_factory=dict)
    rings: dict = field(default_factory=dict)
    ring_of: dict = field(default_factory=dict)
    source: str = "<inline>"

    def __getitem__(self, name):
        try:
            return self.bindings[name]
        except KeyError:
            raise UnknownBinding(f"nothing is bound to {name!r}") from None

    def names_for(self, name):
        ring = self.ring_of.get(name)
        return list(ring.names) if ring else None


# -- statement parsing ------------------------------------------------------------


class _Cursor:
    def __init__(self, tokens):
        self.tokens = tokens
        self.i = 0

    @property
    def peek(self):
        return self.tokens[self.i]

    def next(self):
        tok = self.tokens[self.i]
        if tok.kind != "end":
            self.i += 1
        return tok

    def accept(self, text):
        if self.peek.kind == "op" and self.peek.text == text:
            return self.next()
        return None

    def expect(self, text, what=None):
        tok = self.peek
        if tok.kind == "op" and tok.text == text:
            return self.next()
        raise ParseError(tok.line, tok.col, what or f"'{text}'")

    def expect_keyword(self, word):
        tok = self.peek
        if tok.kind == "name" and tok.text == word:
            return self.next()
        raise ParseError(tok.line, tok.col, f"'{word}'")

    def expect_name(self, what="a name"):
        tok = self.peek
        if tok.kind == "name":
            return self.next()
        raise ParseError(tok.line, tok.col, what)

    def expect_int(self, what="an integer"):
        tok = self.peek
        if tok.kind == "int":
            return self.next()
        raise ParseError(tok.line, tok.col, what)

    def expect_end(self):
        tok = self.peek
        if tok.kind != "end":
            raise ParseError(tok.line, tok.col, "end of line")


# Expressions become small trees evaluated once the ring is known:
# ("num", Fraction), ("name", Token), ("neg", e), ("+"|"-"|"*"|"/", a, b), ("^", e, int, tok)


def _parse_expr(cur):
    node = _parse_term(cur)
    while cur.peek.kind == "op" and cur.peek.text in "+-":
        op = cur.next().text
        node = (op, node, _parse_term(cur))
    return node


def _parse_term(cur):
    node = _parse_unary(cur)
    while cur.peek.kind == "op" and cur.peek.text in "*/":
        tok = cur.next()
        rhs = _parse_unary(cur)
        node = (tok.text, node, rhs, tok) if tok.text == "/" else ("*", node, rhs)
    return node


def _parse_unary(cur):
    if cur.accept("-"):
        return ("neg", _parse_unary(cur))
    if cur.accept("+"):
        return _parse_unary(cur)
    return _parse_power(cur)


def _parse_power(cur):
    base = _parse_atom(cur)
    if cur.peek.kind == "op" and cur.peek.text == "^":
        caret = cur.next()
        if cur.peek.kind != "int":
            raise ParseError(caret.line, caret.col, "an integer exponent after '^'")
        tok = cur.next()
        return ("^", base, int(tok.text), tok)
    return base


def _parse_atom(cur):
    tok = cur.peek
    if tok.kind == "int":
        cur.next()
        return ("num", Fraction(int(tok.text)))
    if tok.kind == "name":
        cur.next()
        return ("name", tok)
    if cur.accept("("):
        node = _parse_expr(cur)
        cur.expect(")")
        return node
    raise ParseError(tok.line, tok.col, "a number, a name or '('")


def _names_in(node, out):
    tag = node[0]
    if tag == "name":
        out.append(node[1].text)
    elif tag == "neg":
        _names_in(node[1], out)
    elif tag == "^":
        _names_in(node[1], out)
    elif tag in "+-*/":
        _names_in(node[1], out)
        _names_in(node[2], out)


def _parse_tuple(cur):
    cur.expect("(", "'('")
    vals = []
    while True:
        neg = bool(cur.accept("-"))
        v = int(cur.expect_int().text)
        vals.append(-v if neg else v)
        if cur.accept(")"):
            return tuple(vals)
        cur.expect(",", "',' or ')'")


def _parse_statement(tokens):
    cur = _Cursor(tokens)
    head = cur.expect_name("'semigroup', 'ring', 'germ' or 'ideal'")
    kind = head.text
    if kind not in ("semigroup", "ring", "germ", "ideal"):
        raise ParseError(head.line, head.col, "'semigroup', 'ring', 'germ' or 'ideal'")
    name = cur.expect_name()
    cur.expect("=", "'='")
    if kind == "semigroup":
        cur.expect("[", "'['")
        gens = [_parse_tuple(cur)]
        while cur.accept(","):
            gens.append(_parse_tuple(cur))
        cur.expect("]", "',' or ']'")
        cur.expect_end()
        return kind, name, gens
    if kind == "ring":
        which = cur.expect_name("'toric' or 'affine'")
        if which.text not in ("toric", "affine"):
            raise ParseError(which.line, which.col, "'toric' or 'affine'")
        cur.expect("(", "'('")
        arg = cur.expect_name("a semigroup name") if which.text == "toric" else cur.expect_int()
        cur.expect(")", "')'")
        cur.expect_keyword("vars")
        names = [cur.expect_name("a variable name")]
        while cur.accept(","):
            names.append(cur.expect_name("a variable name"))
        cur.expect_end()
        return kind, name, (which.text, arg, names)
    if kind == "germ":
        expr = _parse_expr(cur)
        cur.expect_end()
        return kind, name, expr
    cur.expect("<", "'<'")
    exprs = [_parse_expr(cur)]
    while cur.accept(","):
        exprs.append(_parse_expr(cur))
    cur.expect(">", "',' or '>'")
    cur.expect_end()
    return kind, name, exprs


# -- evaluation --------------------------------------------------------------------


def _evaluate(node, env, ring, context):
    tag = node[0]
    if tag == "num":
        return Germ.constant(node[1], ring.vars, context)
    if tag == "name":
        tok = node[1]
        if tok.text in env:
            return env[tok.text]
        raise UnknownBinding(f"line {tok.line}, column {tok.col}: unknown name {tok.text!r}")
    if tag == "neg":
        return -_evaluate(node[1], env, ring, context)
    if tag == "^":
        return _evaluate(node[1], env, ring, context) ** node[2]
    a = _evaluate(node[1], env, ring, context)
    b = _evaluate(node[2], env, ring, context)
    if tag == "+":
        return a + b
    if tag == "-":
        return a - b
    if tag == "*":
        return a * b
    tok = node[3]
    if len(b) != 1 or any(next(iter(b.terms))):
        raise ParseError(tok.line, tok.col + 1, "a nonzero constant divisor")
    return a * (1 / next(iter(b.terms.values())))


def parse_session(text, source="<inline>"):
    """Parse session text; raises :class:`ParseError` with line and column."""
    statements = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0]
        if not line.strip():
            continue
        statements.append((lineno, _parse_statement(tokenize(line, lineno))))

    # the implicit C^n covers every statement above the first ring
    default_names = set()
    germ_names = set()
    for _, (kind, name, body) in statements:
        if kind == "ring":
            break
        if kind in ("germ", "ideal"):
            found = []
            for expr in ([body] if kind == "germ" else body):
                _names_in(expr, found)
            default_names.update(n for n in found if n not in germ_names)
        if kind == "germ":
            germ_names.add(name.text)
    default_ring = Ring(None, "affine", tuple(sorted(default_names)))

    session = Session(source=source)
    ring = default_ring
    seen = set()
    for lineno, (kind, name, body) in statements:
        if name.text in seen:
            raise ParseError(name.line, name.col, "a name not bound earlier")
        seen.add(name.text)
        if kind == "semigroup":
            session.bindings[name.text] = Semigroup(body)
        elif kind == "ring":
            which, arg, names = body
            vnames = tuple(t.text for t in names)
            if len(set(vnames)) != len(vnames):
                raise ParseError(names[0].line, names[0].col, "distinct variable names")
            if which == "toric":
                S = session.bindings.get(arg.text)
                if not isinstance(S, Semigroup):
                    raise UnknownBinding(f"line {arg.line}: {arg.text!r} is not a semigroup")
                if S.r != len(vnames):
                    raise DimensionMismatch(
                        f"line {lineno}: semigroup has {S.r} generators, ring lists {len(vnames)} variables"
                    )
                ring = Ring(name.text, "toric", vnames, arg.text)
            else:
                if int(arg.text) != len(vnames):
                    raise DimensionMismatch(f"line {lineno}: affine({arg.text}) lists {len(vnames)} variables")
                ring = Ring(name.text, "affine", vnames)
            session.rings[name.text] = ring
        else:
            if ring.vars == 0:
                raise ParseError(lineno, 1, "at least one variable")
            context = session.bindings[ring.semigroup] if ring.kind == "toric" else None
            env = {v: Germ.variable(i, ring.vars, context) for i, v in enumerate(ring.names)}
            for other, value in session.bindings.items():
                if isinstance(value, Germ) and session.ring_of.get(other) == ring:
                    env.setdefault(other, value)
            if kind == "germ":
                value = _evaluate(body, env, ring, context)
            else:
                value = Ideal([_evaluate(e, env, ring, context) for e in body], context)
            session.bindings[name.text] = value
            session.ring_of[name.text] = ring
    return session


# -- printing ------------------------------------------------------------------------


def format_semigroup(S):
    return "[" + ", ".join("(" + ",".join(str(x) for x in g) + ")" for g in S.generators) + "]"


def format_session(session):
    """Session text that parses back to the same bindings."""
    lines = []
    emitted = None
    used = set(session.bindings) | set(session.rings)
    for name, value in session.bindings.items():
        if isinstance(value, Semigroup):
            lines.append(f"semigroup {name} = {format_semigroup(value)}")
            continue
        ring = session.ring_of[name]
        if ring != emitted:
            rname = ring.name
            if rname is None:
                rname = "default"
                while rname in used:
                    rname += "_"
                used.add(rname)
            arg = ring.semigroup if ring.kind == "toric" else str(ring.vars)
            lines.append(f"ring {rname} = {ring.kind}({arg}) vars {', '.join(ring.names)}")
            emitted = ring
        names = list(ring.names)
        if isinstance(value, Germ):
            lines.append(f"germ {name} = {value.format(names)}")
        else:
            body = ", ".join(g.format(names) for g in value.generators)
            lines.append(f"ideal {name} = <{body}>")
    return "\n".join(lines) + "\n"
