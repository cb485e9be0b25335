"""Text input: rational-function expressions, expansion literals and recurrence files.

Expression grammar (standard precedence, ``^`` binds tightest and is right
associative, unary minus allowed)::

    expr   := term (('+' | '-') term)*
    term   := unary (('*' | '/') unary)*
    unary  := '-' unary | '+' unary | power
    power  := atom ('^' unary)?
    atom   := INTEGER | NAME | NAME '(' expr ')' | '(' expr ')'

Implicit multiplication is not supported; write ``2*n``.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction
from pathlib import Path
from typing import Optional, Union

from .asymptotics import Expansion, ExpansionError
from .ratfunc import RationalFunction
from .recurrence import Recurrence, RecurrenceError

__all__ = [
    "ParseError",
    "parse_expression",
    "parse_rational",
    "parse_expansion",
    "parse_recurrence",
    "load_recurrence",
    "format_recurrence",
]


class ParseError(ValueError):
    def __init__(self, message: str, position: Optional[int] = None, text: str = ""):
        self.message = message
        self.position = position
        self.text = text
        where = f" at position {position}" if position is not None else ""
        super().__init__(f"{message}{where}")

    def pretty(self) -> str:
        if self.position is None or not self.text:
            return str(self)
        return f"{self}\n  {self.text}\n  {' ' * self.position}^"


# tokenizer and AST ----------------------------------------------------------

_TOKEN = re.compile(r"\s*(?:(\d+)|([A-Za-z_][A-Za-z_0-9]*)|(.))")


@dataclass(frozen=True)
class _Tok:
    kind: str  # "int", "name", "op", "end"
    value: str
    pos: int


def _tokenize(text: str) -> list[_Tok]:
    out = []
    pos = 0
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if m is None:  # only trailing whitespace left
            break
        start = m.start(m.lastindex) if m.lastindex else m.end()
        if m.group(1):
            out.append(_Tok("int", m.group(1), start))
        elif m.group(2):
            out.append(_Tok("name", m.group(2), start))
        elif m.group(3):
            ch = m.group(3)
            if ch not in "+-*/^()":
                raise ParseError(f"unexpected character {ch!r}", start, text)
            out.append(_Tok("op", ch, start))
        pos = m.end()
    out.append(_Tok("end", "", len(text)))
    return out


# AST nodes are tuples: (kind, pos, *children)

# ^ is handled in prefix(): it binds tighter than unary minus and its
# exponent may carry a sign, as in n^-4
_BINARY = {"+": (10, "left"), "-": (10, "left"), "*": (20, "left"), "/": (20, "left")}
_PREFIX_BP = 30


class _Parser:
    def __init__(self, text: str):
        self.text = text
        self.toks = _tokenize(text)
        self.i = 0

    def peek(self) -> _Tok:
        return self.toks[self.i]

    def take(self) -> _Tok:
        t = self.toks[self.i]
        self.i += 1
        return t

    def error(self, msg: str, tok: Optional[_Tok] = None):
        tok = tok or self.peek()
        raise ParseError(msg, tok.pos, self.text)

    def expr(self, min_bp: int):
        left = self.prefix()
        while True:
            t = self.peek()
            if t.kind != "op" or t.value not in _BINARY:
                break
            bp, assoc = _BINARY[t.value]
            if bp < min_bp or (bp == min_bp and assoc == "left"):
                break
            self.take()
            left = (t.value, t.pos, left, self.expr(bp))
        return left

    def prefix(self):
        t = self.take()
        if t.kind == "int":
            node = ("int", t.pos, int(t.value))
        elif t.kind == "name":
            if self.peek().kind == "op" and self.peek().value == "(":
                self.take()
                arg = self.expr(0)
                self.expect(")")
                node = ("call", t.pos, t.value, arg)
            else:
                node = ("name", t.pos, t.value)
        elif t.kind == "op" and t.value in "+-":
            operand = self.expr(_PREFIX_BP)
            return operand if t.value == "+" else ("neg", t.pos, operand)
        elif t.kind == "op" and t.value == "(":
            node = self.expr(0)
            self.expect(")")
        elif t.kind == "end":
            self.error("unexpected end of input", t)
        else:
            self.error(f"unexpected {t.value!r}", t)
        # ^ binds tighter than prefix minus: -n^2 is -(n^2)
        if self.peek().kind == "op" and self.peek().value == "^":
            op = self.take()
            node = ("^", op.pos, node, self._exponent())
        return node

    def _exponent(self):
        t = self.peek()
        if t.kind == "op" and t.value in "+-":
            self.take()
            inner = self._exponent()
            return inner if t.value == "+" else ("neg", t.pos, inner)
        return self.prefix()

    def expect(self, ch: str):
        t = self.peek()
        if t.kind != "op" or t.value != ch:
            self.error(f"expected {ch!r}")
        self.take()


def _parse_ast(text: str):
    p = _Parser(text)
    if p.peek().kind == "end":
        p.error("empty expression")
    node = p.expr(0)
    if p.peek().kind != "end":
        p.error(f"unexpected {p.peek().value!r}")
    return node


def _const_value(node, text: str) -> Fraction:
    """Evaluate a constant subexpression (used for exponents)."""
    kind, pos = node[0], node[1]
    if kind == "int":
        return Fraction(node[2])
    if kind == "neg":
        return -_const_value(node[2], text)
    if kind in ("+", "-", "*", "/"):
        a, b = _const_value(node[2], text), _const_value(node[3], text)
        if kind == "/":
            if b == 0:
                raise ParseError("division by zero", pos, text)
            return a / b
        return a + b if kind == "+" else a - b if kind == "-" else a * b
    if kind == "^":
        a, b = _const_value(node[2], text), _const_value(node[3], text)
        if b.denominator != 1:
            raise ParseError("constant exponents must be integers", pos, text)
        if a == 0 and b < 0:
            raise ParseError("division by zero", pos, text)
        return a ** int(b)
    raise ParseError("exponent must be a constant", pos, text)


# rational functions ---------------------------------------------------------


def _eval_rf(node, text: str, var: str) -> RationalFunction:
    kind, pos = node[0], node[1]
    if kind == "int":
        return RationalFunction.const(node[2])
    if kind == "name":
        if node[2] != var:
            raise ParseError(f"unknown name {node[2]!r} (expected {var!r})", pos, text)
        return RationalFunction.n()
    if kind == "call":
        raise ParseError(f"function calls are not allowed here ({node[2]})", pos, text)
    if kind == "neg":
        return -_eval_rf(node[2], text, var)
    if kind == "^":
        base = _eval_rf(node[2], text, var)
        e = _const_value(node[3], text)
        if e.denominator != 1:
            raise ParseError("exponents must be integers", pos, text)
        if e < 0 and base.is_zero():
            raise ParseError("division by the zero polynomial", pos, text)
        return base ** int(e)
    a, b = _eval_rf(node[2], text, var), _eval_rf(node[3], text, var)
    if kind == "+":
        return a + b
    if kind == "-":
        return a - b
    if kind == "*":
        return a * b
    if b.is_zero():
        raise ParseError("division by the zero polynomial", pos, text)
    return a / b


def parse_expression(text: str, var: str = "n") -> RationalFunction:
    """Parse a rational function of one variable, e.g. ``"(2*n+3)/(n+2)"``."""
    return _eval_rf(_parse_ast(text), text, var)


def parse_rational(text: str) -> Fraction:
    """Parse an exact constant such as ``"3"``, ``"-7/2"`` or ``"1/(2^3)"``."""
    text = text.strip()
    if not text:
        raise ParseError("empty value", 0, text)
    return _const_value(_parse_ast(text), text)


# expansions -----------------------------------------------------------------

# A series value is {alpha: coefficient in L}; alpha is the exponent of 1/n.
_Series = dict


def _s_const(c: RationalFunction) -> _Series:
    return {Fraction(0): c}


def _s_add(a: _Series, b: _Series, sign: int = 1) -> _Series:
    out = dict(a)
    for k, v in b.items():
        out[k] = out[k] + v * sign if k in out else v * sign
    return out


def _s_mul(a: _Series, b: _Series) -> _Series:
    out: _Series = {}
    for ka, va in a.items():
        for kb, vb in b.items():
            k = ka + kb
            out[k] = out[k] + va * vb if k in out else va * vb
    return out


class _ExpansionBuilder:
    def __init__(self, text: str):
        self.text = text
        self.beta: Optional[Fraction] = None

    def err(self, msg, pos):
        raise ParseError(msg, pos, self.text)

    def eval(self, node) -> _Series:
        kind, pos = node[0], node[1]
        if kind == "int":
            return _s_const(RationalFunction.const(node[2]))
        if kind == "name":
            if node[2] == "L":
                return _s_const(RationalFunction.n())
            if node[2] == "n":
                return {Fraction(-1): RationalFunction.const(1)}
            self.err(f"unknown name {node[2]!r} (use n and L = log n)", pos)
        if kind == "call":
            if node[2] != "O":
                self.err(f"unknown function {node[2]!r}", pos)
            self.err("O(...) must be a top-level summand", pos)
        if kind == "neg":
            return {k: -v for k, v in self.eval(node[2]).items()}
        if kind == "^":
            base = self.eval(node[2])
            e = _const_value(node[3], self.text)
            if len(base) != 1:
                self.err("only single terms can be raised to a power", pos)
            (k, v), = base.items()
            if e.denominator != 1:
                if v != RationalFunction.const(1):
                    self.err("fractional powers are allowed for n only", pos)
                return {k * e: v}
            if e < 0 and v.is_zero():
                self.err("division by zero", pos)
            return {k * e: v ** int(e)}
        a, b = self.eval(node[2]), self.eval(node[3])
        if kind == "+":
            return _s_add(a, b)
        if kind == "-":
            return _s_add(a, b, -1)
        if kind == "*":
            return _s_mul(a, b)
        # division: only by a single term c(L) n^k
        if len(b) != 1:
            self.err("can only divide by a single term such as (2*L)*n^3", pos)
        (k, v), = b.items()
        if v.is_zero():
            self.err("division by zero", pos)
        return _s_mul(a, {-k: 1 / v})

    def summands(self, node, sign=1):
        kind = node[0]
        if kind in ("+", "-"):
            yield from self.summands(node[2], sign)
            yield from self.summands(node[3], sign if kind == "+" else -sign)
        else:
            yield node, sign

    def o_term(self, node) -> Fraction:
        arg = node[3]
        s = self.eval(arg)
        if len(s) != 1:
            self.err("O(...) must contain a single power of n", node[1])
        (k, v), = s.items()
        if v != RationalFunction.const(1) or k <= 0:
            self.err("O(...) must be O(n^-beta) with beta > 0", node[1])
        return k


def parse_expansion(text: str) -> Expansion:
    """Parse ``1 + (2)/n^2 - (L)/n^3 + O(n^-4)`` into an :class:`Expansion`.

    ``L`` stands for ``log n``.  Terms written with a zero coefficient (for
    example ``0/n^3``) are kept as padding.  Without an ``O(...)`` summand the
    remainder exponent defaults to the last exponent plus one.
    """
    b = _ExpansionBuilder(text)
    root = _parse_ast(text)
    total: _Series = {}
    for node, sign in b.summands(root):
        if node[0] == "call" and node[2] == "O":
            if b.beta is not None:
                b.err("more than one O(...) term", node[1])
            b.beta = b.o_term(node)
            continue
        total = _s_add(total, b.eval(node), sign)
    for k in total:
        if k < 0:
            raise ParseError(f"positive power n^{-k} is not allowed", None, text)
    const = total.pop(Fraction(0), RationalFunction.const(0))
    if const != RationalFunction.const(1):
        raise ParseError(f"expansion must start with 1, got {const.to_str('L')}", None, text)
    if not total:
        raise ParseError("expansion has no terms besides 1", None, text)
    terms = sorted(total.items())
    beta = b.beta if b.beta is not None else terms[-1][0] + 1
    try:
        return Expansion(tuple(terms), beta)
    except ExpansionError as exc:
        raise ParseError(str(exc), None, text) from None


# recurrence files -----------------------------------------------------------

_KEY = re.compile(r"^(name|order|lhs|coeff\[(\d+)\]|initial|offset|scale)$")


def parse_recurrence(text: str, source: str = "<string>") -> Recurrence:
    """Parse a line-oriented ``key: value`` recurrence description.

    Keys: ``name``, ``order``, ``coeff[i]`` for ``i = 1..order``, ``initial``
    (comma-separated exact rationals), optional ``offset`` (default 0),
    ``lhs`` (a common factor to divide every coefficient by) and ``scale``.
    The recurrence read is ``lhs(n) a_{n+d} = sum_i coeff[i](n) a_{n+d-i}``.
    """
    fields: dict[str, tuple[str, int]] = {}
    coeffs: dict[int, tuple[str, int]] = {}
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if ":" not in line:
            raise ParseError(f"{source}:{lineno}: expected 'key: value'")
        key, value = (s.strip() for s in line.split(":", 1))
        m = _KEY.match(key)
        if m is None:
            raise ParseError(f"{source}:{lineno}: unknown key {key!r}")
        if m.group(2) is not None:
            i = int(m.group(2))
            if i in coeffs:
                raise ParseError(f"{source}:{lineno}: duplicate key {key!r}")
            coeffs[i] = (value, lineno)
        else:
            if key in fields:
                raise ParseError(f"{source}:{lineno}: duplicate key {key!r}")
            fields[key] = (value, lineno)

    def expr(value: str, lineno: int, what: str) -> RationalFunction:
        try:
            return parse_expression(value)
        except ParseError as exc:
            raise ParseError(f"{source}:{lineno}: {what}: {exc.message}", exc.position, value) from None

    def integer(key: str, default: Optional[int] = None) -> int:
        if key not in fields:
            if default is None:
                raise ParseError(f"{source}: missing key {key!r}")
            return default
        value, lineno = fields[key]
        try:
            return int(value)
        except ValueError:
            raise ParseError(f"{source}:{lineno}: {key} must be an integer") from None

    order = integer("order")
    if order < 1:
        raise ParseError(f"{source}: order must be positive")
    expected = set(range(1, order + 1))
    if set(coeffs) != expected:
        missing = sorted(expected - set(coeffs))
        extra = sorted(set(coeffs) - expected)
        raise ParseError(f"{source}: coefficients must be coeff[1]..coeff[{order}] (missing {missing}, unexpected {extra})")
    rs = [expr(*coeffs[i], f"coeff[{i}]") for i in range(1, order + 1)]
    if "lhs" in fields:
        lhs = expr(*fields["lhs"], "lhs")
        if lhs.is_zero():
            raise ParseError(f"{source}:{fields['lhs'][1]}: lhs is the zero polynomial")
        rs = [r / lhs for r in rs]
    if "initial" not in fields:
        raise ParseError(f"{source}: missing key 'initial'")
    value, lineno = fields["initial"]
    try:
        initials = tuple(parse_rational(v) for v in value.split(","))
    except ParseError as exc:
        raise ParseError(f"{source}:{lineno}: initial: {exc.message}") from None
    offset = integer("offset", 0)
    name = fields["name"][0] if "name" in fields else Path(source).stem
    try:
        scale = expr(*fields["scale"], "scale") if "scale" in fields else None
        rec = Recurrence(tuple(rs), initials, offset=offset, scale=scale, name=name)
        rec.resolved()  # rejects zeros and poles of the scale
    except RecurrenceError as exc:
        raise ParseError(f"{source}: {exc}") from None
    return rec


def load_recurrence(path: Union[str, Path]) -> Recurrence:
    path = Path(path)
    return parse_recurrence(path.read_text(encoding="utf-8"), str(path))


def format_recurrence(rec: Recurrence) -> str:
    """Inverse of :func:`parse_recurrence`."""
    lines = [f"name: {rec.name}", f"order: {rec.order}"]
    for i, r in enumerate(rec.coeffs, start=1):
        lines.append(f"coeff[{i}]: {r.to_str('n')}")
    lines.append("initial: " + ", ".join(str(v) for v in rec.initials))
    lines.append(f"offset: {rec.offset}")
    if rec.scale is not None:
        lines.append(f"scale: {rec.scale.to_str('n')}")
    return "\n".join(lines) + "\n"
