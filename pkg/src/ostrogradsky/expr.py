"""Integer sequence expressions such as ``3^k``, ``2^(2^(k-1))`` or ``2m-1``.

Grammar (one free variable, ``k`` or ``m``)::

    expr    := term (('+' | '-') term)*
    term    := unary (('*' | '·')? unary)*        # juxtaposition multiplies: 2m
    unary   := '-' unary | power
    power   := atom ('^' unary)?                  # right associative
    atom    := INTEGER | VAR | '(' expr ')'

Besides exact evaluation, the tree supports a few structural bounds used
to turn finitely many checked terms into statements about the whole
sequence (see :func:`exp_upper_bound` and friends).  They are sufficient
conditions only; ``None`` means "no structural guarantee".
"""

from __future__ import annotations

from dataclasses import dataclass

from .errors import ParseError, ValidityError

VARIABLES = ("k", "m")


class Expr:
    def evaluate(self, n: int) -> int:
        raise NotImplementedError

    def __call__(self, n: int) -> int:
        return self.evaluate(n)

    def has_var(self) -> bool:
        raise NotImplementedError


@dataclass(frozen=True)
class Num(Expr):
    value: int

    def evaluate(self, n):
        return self.value

    def has_var(self):
        return False

    def __str__(self):
        return str(self.value)


@dataclass(frozen=True)
class Var(Expr):
    name: str

    def evaluate(self, n):
        return n

    def has_var(self):
        return True

    def __str__(self):
        return self.name


@dataclass(frozen=True)
class Neg(Expr):
    operand: Expr

    def evaluate(self, n):
        return -self.operand.evaluate(n)

    def has_var(self):
        return self.operand.has_var()

    def __str__(self):
        return f"-({self.operand})"


@dataclass(frozen=True)
class BinOp(Expr):
    op: str
    left: Expr
    right: Expr

    def evaluate(self, n):
        a = self.left.evaluate(n)
        b = self.right.evaluate(n)
        if self.op == "+":
            return a + b
        if self.op == "-":
            return a - b
        if self.op == "*":
            return a * b
        if b < 0:
            raise ValidityError(f"negative exponent in {self} at index {n}")
        if b.bit_length() > 40 and abs(a) > 1:
            raise ValidityError(f"exponent too large in {self} at index {n}")
        return a**b

    def has_var(self):
        return self.left.has_var() or self.right.has_var()

    def __str__(self):
        return f"({self.left}{self.op}{self.right})"


class FunctionSequence:
    """Wrap a Python callable as a sequence with no structural information."""

    def __init__(self, fn, name="f"):
        self.fn = fn
        self.name = name

    def evaluate(self, n):
        return int(self.fn(n))

    __call__ = evaluate

    def __str__(self):
        return self.name


# --------------------------------------------------------------------------- parsing


def _tokenize(text):
    tokens = []
    i = 0
    while i < len(text):
        ch = text[i]
        if ch.isspace():
            i += 1
        elif ch.isdigit():
            j = i
            while j < len(text) and text[j].isdigit():
                j += 1
            tokens.append(("int", int(text[i:j]), i))
            i = j
        elif ch in "+-*^()":
            tokens.append((ch, ch, i))
            i += 1
        elif ch == "·":
            tokens.append(("*", "*", i))
            i += 1
        elif ch.isalpha():
            tokens.append(("var", ch, i))
            i += 1
        else:
            raise ParseError(f"unexpected character {ch!r}", i)
    tokens.append(("end", None, len(text)))
    return tokens


class _Parser:
    def __init__(self, text, variable):
        self.tokens = _tokenize(text)
        self.pos = 0
        self.variable = variable

    def peek(self):
        return self.tokens[self.pos]

    def take(self, kind=None):
        tok = self.tokens[self.pos]
        if kind is not None and tok[0] != kind:
            expected = "end of expression" if kind == "end" else repr(kind)
            raise ParseError(f"expected {expected}, found {tok[1]!r}", tok[2])
        self.pos += 1
        return tok

    def parse(self):
        node = self.expr()
        self.take("end")
        return node

    def expr(self):
        node = self.term()
        while self.peek()[0] in ("+", "-"):
            op = self.take()[0]
            node = BinOp(op, node, self.term())
        return node

    def term(self):
        node = self.unary()
        while True:
            kind = self.peek()[0]
            if kind == "*":
                self.take()
                node = BinOp("*", node, self.unary())
            elif kind in ("int", "var", "("):
                node = BinOp("*", node, self.power())
            else:
                return node

    def unary(self):
        if self.peek()[0] == "-":
            self.take()
            return Neg(self.unary())
        return self.power()

    def power(self):
        base = self.atom()
        if self.peek()[0] == "^":
            self.take()
            return BinOp("^", base, self.unary())
        return base

    def atom(self):
        kind, value, where = self.take()
        if kind == "int":
            return Num(value)
        if kind == "var":
            if value != self.variable:
                raise ParseError(f"unknown variable {value!r}; this expression is in {self.variable!r}", where)
            return Var(value)
        if kind == "(":
            node = self.expr()
            self.take(")")
            return node
        raise ParseError(f"unexpected {value!r}" if value is not None else "unexpected end of expression", where)


def parse_expr(text: str, variable: str = "k") -> Expr:
    if variable not in VARIABLES:
        raise ValueError(f"variable must be one of {VARIABLES}")
    if not text or not text.strip():
        raise ParseError("empty expression", 0)
    return _Parser(text, variable).parse()


# --------------------------------------------------------------------------- structure


def const_value(e) -> int | None:
    if isinstance(e, Expr) and not e.has_var():
        return e.evaluate(1)
    return None


def polynomial(e) -> list[int] | None:
    """Integer coefficients (lowest degree first) when ``e`` is a polynomial."""
    if not isinstance(e, Expr):
        return None
    if isinstance(e, Num):
        return [e.value]
    if isinstance(e, Var):
        return [0, 1]
    if isinstance(e, Neg):
        p = polynomial(e.operand)
        return None if p is None else [-c for c in p]
    if isinstance(e, BinOp):
        if e.op == "^":
            exponent = const_value(e.right)
            base = polynomial(e.left)
            if exponent is None or base is None or exponent < 0 or exponent > 64:
                return None
            out = [1]
            for _ in range(exponent):
                out = _poly_mul(out, base)
            return out
        a, b = polynomial(e.left), polynomial(e.right)
        if a is None or b is None:
            return None
        if e.op == "*":
            return _poly_mul(a, b)
        size = max(len(a), len(b))
        a = a + [0] * (size - len(a))
        b = b + [0] * (size - len(b))
        sign = 1 if e.op == "+" else -1
        return [x + sign * y for x, y in zip(a, b)]
    return None


def _poly_mul(a, b):
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        for j, y in enumerate(b):
            out[i + j] += x * y
    return out


def poly_shift(p: list[int], t: int = 1) -> list[int]:
    """Coefficients of ``p(x + t)`` (Taylor shift)."""
    out = [0]
    for c in reversed(p):
        out = _poly_mul(out, [t, 1])
        out[0] += c
    while len(out) > 1 and out[-1] == 0:
        out.pop()
    return out


def dominates_on_positive(p: list[int], q: list[int]) -> bool:
    """Sufficient check that ``p(n) >= q(n)`` for every integer ``n >= 1``.

    Shifts ``p - q`` to ``n = 1 + t`` and asks for non-negative coefficients.
    """
    size = max(len(p), len(q))
    diff = [(p[i] if i < len(p) else 0) - (q[i] if i < len(q) else 0) for i in range(size)]
    return all(c >= 0 for c in poly_shift(diff, 1))


def affine_upper(e) -> tuple[int, int] | None:
    """``(s, r)`` with ``e(n) <= s n + r`` for all ``n >= 1``, ``s >= 0``."""
    p = polynomial(e)
    if p is None or len(p) > 2:
        return None
    r = p[0]
    s = p[1] if len(p) > 1 else 0
    if s < 0:
        # decreasing: bounded above by its value at n = 1
        return 0, s + r
    return s, r


def exp_upper_bound(e) -> tuple[int, int] | None:
    """``(C, A)`` with ``|e(n)| <= C * A**n`` for every ``n >= 1``.

    Covers polynomials, ``a^(affine)`` and sums/products of such terms.
    """
    if not isinstance(e, Expr):
        return None
    if isinstance(e, Num):
        return max(abs(e.value), 1), 1
    if isinstance(e, Var):
        return 1, 2  # n <= 2**n
    if isinstance(e, Neg):
        return exp_upper_bound(e.operand)
    if isinstance(e, BinOp):
        if e.op == "^":
            exponent = const_value(e.right)
            if exponent is not None:
                inner = exp_upper_bound(e.left)
                if inner is None or exponent < 0:
                    return None
                return inner[0] ** exponent, inner[1] ** exponent
            base = const_value(e.left)
            aff = affine_upper(e.right)
            if base is None or aff is None:
                return None
            base = abs(base)
            if base <= 1:
                return 1, 1
            s, r = aff
            return base ** max(r, 0), base**s
        a, b = exp_upper_bound(e.left), exp_upper_bound(e.right)
        if a is None or b is None:
            return None
        if e.op == "*":
            return a[0] * b[0], a[1] * b[1]
        return a[0] + b[0], max(a[1], b[1])
    return None


def exp_lower_base(e) -> int | None:
    """Largest certified ``A`` with ``e(n) >= A**n`` (up to a constant), or ``None``.

    Recognises ``a^(s n + r)`` (base ``a**s``), positive multiples of such terms
    and sums of non-negative terms.  Returns ``0`` for "positive but no
    exponential lower bound".  Doubly exponential patterns such as
    ``a^(b^n)`` return ``-1`` meaning "eventually exceeds every A**n".
    """
    if isinstance(e, Num):
        return 0 if e.value > 0 else None
    if isinstance(e, Var):
        return 0
    if isinstance(e, BinOp):
        if e.op == "^":
            base = const_value(e.left)
            if base is None or base < 2:
                return None
            poly = polynomial(e.right)
            if poly is not None:
                if len(poly) == 1:
                    return 0
                if len(poly) == 2 and poly[1] > 0:
                    return base ** poly[1]
                if len(poly) > 2 and poly[-1] > 0 and dominates_on_positive(poly, [0, 1]):
                    return -1
                return None
            inner = exp_lower_base(e.right)
            if inner is not None and (inner == -1 or inner >= 2):
                return -1
            return None
        if e.op in ("*", "+"):
            a, b = exp_lower_base(e.left), exp_lower_base(e.right)
            if a is None or b is None:
                return None
            if -1 in (a, b):
                return -1
            if e.op == "*":
                return a * b if a and b else max(a, b)
            return max(a, b)
    return None


def geometric_exponent(e) -> tuple[int, int] | None:
    """Detect ``a^(s * b^(p n + r))``; returns ``(a, b**p)`` with ``b**p >= 2``.

    Such a sequence satisfies ``e(n+1) = e(n) ** (b**p)`` exactly.
    """
    if not (isinstance(e, BinOp) and e.op == "^"):
        return None
    base = const_value(e.left)
    if base is None or base < 2:
        return None
    inner = e.right
    scale = 1
    if isinstance(inner, BinOp) and inner.op == "*":
        left_c, right_c = const_value(inner.left), const_value(inner.right)
        if left_c is not None:
            scale, inner = left_c, inner.right
        elif right_c is not None:
            scale, inner = right_c, inner.left
    if scale < 1 or not (isinstance(inner, BinOp) and inner.op == "^"):
        return None
    b = const_value(inner.left)
    poly = polynomial(inner.right)
    if b is None or b < 2 or poly is None or len(poly) != 2 or poly[1] < 1:
        return None
    return base, b ** poly[1]
