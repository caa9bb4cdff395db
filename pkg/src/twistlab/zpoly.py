"""Exact arithmetic on dense integer polynomials.

A polynomial is a tuple of arbitrary-precision integer coefficients, constant
term first, with trailing zeros stripped; the zero polynomial is the empty
tuple.  Everything in this module is integer- or Fraction-exact: no floating
point appears anywhere.
"""
from __future__ import annotations

import dataclasses
import itertools
import math
import re
from fractions import Fraction
from typing import Iterable, Union

from .errors import PolyParseError

Rational = Union[int, Fraction]


@dataclasses.dataclass(init=False, frozen=True)
class IntPoly:
    """Dense integer polynomial a_0 + a_1 T + ... + a_N T^N.

    >>> IntPoly(1, 0, 0, 0, 1)
    IntPoly('T^4+1')
    >>> IntPoly(1, 0, 0, 0, 1)(2)
    17
    """

    coeffs: tuple[int, ...]

    def __init__(self, *coeffs: int):
        end = len(coeffs)
        while end > 0 and coeffs[end - 1] == 0:
            end -= 1
        object.__setattr__(self, "coeffs", tuple(int(c) for c in coeffs[:end]))

    @classmethod
    def from_coeffs(cls, coeffs: Iterable[int]) -> "IntPoly":
        return cls(*coeffs)

    @property
    def degree(self) -> int:
        """Degree; -1 for the zero polynomial."""
        return len(self.coeffs) - 1

    @property
    def lc(self) -> int:
        """Leading coefficient (0 for the zero polynomial)."""
        return self.coeffs[-1] if self.coeffs else 0

    def is_zero(self) -> bool:
        return not self.coeffs

    def __bool__(self) -> bool:
        return bool(self.coeffs)

    def __call__(self, t: Rational) -> Rational:
        """Exact Horner evaluation; accepts ints and Fractions."""
        acc: Rational = 0
        for c in reversed(self.coeffs):
            acc = acc * t + c
        return acc

    def __add__(self, other: "IntPoly | int") -> "IntPoly":
        o = other.coeffs if isinstance(other, IntPoly) else (other,)
        return IntPoly(*(a + b for a, b in itertools.zip_longest(self.coeffs, o, fillvalue=0)))

    def __sub__(self, other: "IntPoly | int") -> "IntPoly":
        o = other.coeffs if isinstance(other, IntPoly) else (other,)
        return IntPoly(*(a - b for a, b in itertools.zip_longest(self.coeffs, o, fillvalue=0)))

    def __neg__(self) -> "IntPoly":
        return IntPoly(*(-c for c in self.coeffs))

    def __mul__(self, other: "IntPoly | int") -> "IntPoly":
        if isinstance(other, int):
            return IntPoly(*(c * other for c in self.coeffs))
        if self.is_zero() or other.is_zero():
            return IntPoly()
        out = [0] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            if a:
                for j, b in enumerate(other.coeffs):
                    out[i + j] += a * b
        return IntPoly(*out)

    __radd__ = __add__
    __rmul__ = __mul__

    def __pow__(self, k: int) -> "IntPoly":
        if k < 0:
            raise ValueError("negative power of a polynomial")
        result = IntPoly(1)
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def derivative(self) -> "IntPoly":
        return IntPoly(*(i * c for i, c in enumerate(self.coeffs) if i > 0))

    def compose(self, inner: "IntPoly") -> "IntPoly":
        """Self evaluated at another polynomial (Horner on coefficients)."""
        acc = IntPoly()
        for c in reversed(self.coeffs):
            acc = acc * inner + c
        return acc

    def shift(self, c: int) -> "IntPoly":
        """Taylor shift: the polynomial P(T + c)."""
        return self.compose(IntPoly(c, 1))

    def __str__(self) -> str:
        if not self.coeffs:
            return "0"
        parts = []
        for i, c in reversed(list(enumerate(self.coeffs))):
            if c == 0:
                continue
            sign = "-" if c < 0 else ("+" if parts else "")
            mag = abs(c)
            if i == 0:
                body = str(mag)
            else:
                var = "T" if i == 1 else f"T^{i}"
                body = var if mag == 1 else f"{mag}*{var}"
            parts.append(sign + body)
        return "".join(parts)

    def __repr__(self) -> str:
        return f"IntPoly('{self}')"


@dataclasses.dataclass(frozen=True)
class HomForm:
    """Homogenization P(T,Z) = a_0 Z^N + a_1 Z^(N-1) T + ... + a_N T^N."""

    coeffs: tuple[int, ...]
    weight_degree: int

    def __call__(self, a: int, b: int) -> int:
        return hom_eval(self, a, b)


@dataclasses.dataclass(frozen=True)
class SqfDecomp:
    """Squarefree decomposition content * prod A_i^i with A_i squarefree,
    pairwise coprime, primitive with positive leading coefficient."""

    content: int
    parts: tuple[tuple[IntPoly, int], ...]

    def reconstruct(self) -> IntPoly:
        acc = IntPoly(self.content)
        for part, mult in self.parts:
            acc = acc * part**mult
        return acc

    def multiplicities(self) -> tuple[int, ...]:
        return tuple(m for _, m in self.parts)


def homogenize(poly: IntPoly) -> HomForm:
    if poly.is_zero():
        raise ValueError("cannot homogenize the zero polynomial")
    return HomForm(poly.coeffs, poly.degree)


def hom_eval(form: HomForm, a: int, b: int) -> int:
    """Exact value of the weighted form at integer (a, b) != (0, 0)."""
    if a == 0 and b == 0:
        raise ValueError("(0, 0) is not a point of the weighted projective line")
    n = form.weight_degree
    acc = 0
    # Horner in a, with the matching power of b folded in at each step.
    for i in range(n, -1, -1):
        acc = acc * a + form.coeffs[i] * b ** (n - i)
    return acc


def content_and_primitive(poly: IntPoly) -> tuple[int, IntPoly]:
    """Positive gcd of the coefficients and the primitive part.

    The sign stays on the primitive part: -3T+3 -> (3, -T+1).
    """
    if poly.is_zero():
        raise ValueError("the zero polynomial has no content decomposition")
    content = 0
    for c in poly.coeffs:
        content = math.gcd(content, c)
    return content, IntPoly(*(c // content for c in poly.coeffs))


def height(poly: IntPoly) -> int:
    """Maximum absolute value of the coefficients (0 for the zero poly)."""
    return max((abs(c) for c in poly.coeffs), default=0)


def reverse(poly: IntPoly) -> IntPoly:
    """Coefficients reversed relative to the degree: a_i -> a_(N-i)."""
    if poly.is_zero():
        raise ValueError("cannot reverse the zero polynomial")
    return IntPoly(*reversed(poly.coeffs))


def compose_power(poly: IntPoly, k: int) -> IntPoly:
    """The polynomial P(T^k)."""
    if k < 1:
        raise ValueError("k must be >= 1")
    out = [0] * (poly.degree * k + 1) if not poly.is_zero() else []
    for i, c in enumerate(poly.coeffs):
        out[i * k] = c
    return IntPoly(*out)


# ---------------------------------------------------------------------------
# gcd machinery (fraction-free primitive pseudo-remainder sequence)


def primitive_gcd(f: IntPoly, g: IntPoly) -> IntPoly:
    """Gcd in Q[T], returned primitive with positive leading coefficient."""
    if f.is_zero() and g.is_zero():
        raise ValueError("gcd(0, 0) undefined")
    if f.is_zero():
        return _positive_primitive(g)
    if g.is_zero():
        return _positive_primitive(f)
    a = _positive_primitive(f)
    b = _positive_primitive(g)
    if a.degree < b.degree:
        a, b = b, a
    while not b.is_zero():
        r = _prem(a, b)
        a, b = b, (_positive_primitive(r) if not r.is_zero() else IntPoly())
    return _positive_primitive(a)


def _positive_primitive(poly: IntPoly) -> IntPoly:
    _, prim = content_and_primitive(poly)
    return -prim if prim.lc < 0 else prim


def _prem(f: IntPoly, g: IntPoly) -> IntPoly:
    """Pseudo-remainder: remainder of lc(g)^(deg f - deg g + 1) * f by g."""
    r = list(f.coeffs)
    gl = g.lc
    dg = g.degree
    steps = f.degree - dg + 1
    for _ in range(steps):
        deg_r = len(r) - 1
        while deg_r >= 0 and r[deg_r] == 0:
            deg_r -= 1
        if deg_r < dg:
            # degree already dropped: still owe the remaining lc multiplications
            r = [c * gl for c in r]
            continue
        top = r[deg_r]
        r = [c * gl for c in r]
        shift = deg_r - dg
        for j, gc in enumerate(g.coeffs):
            r[shift + j] -= top * gc
        r = r[: deg_r]  # leading term cancelled exactly
    return IntPoly(*r)


def exact_div(f: IntPoly, g: IntPoly) -> IntPoly:
    """Quotient f/g when g divides f in Z[T]; raises if the division fails."""
    if g.is_zero():
        raise ZeroDivisionError("polynomial division by zero")
    if f.is_zero():
        return IntPoly()
    r = list(f.coeffs)
    q = [0] * (f.degree - g.degree + 1)
    for i in range(f.degree - g.degree, -1, -1):
        top = r[g.degree + i]
        if top % g.lc != 0:
            raise ValueError(f"{f} is not divisible by {g}")
        c = top // g.lc
        q[i] = c
        if c:
            for j, gc in enumerate(g.coeffs):
                r[i + j] -= c * gc
    if any(r[: g.degree]):
        raise ValueError(f"{f} is not divisible by {g}")
    return IntPoly(*q)


# ---------------------------------------------------------------------------
# squarefree structure


def squarefree_decomposition(poly: IntPoly) -> SqfDecomp:
    """Yun decomposition over Q, rescaled so every part is a primitive
    integer polynomial with positive leading coefficient.

    content * prod A_i^i reconstructs the input exactly.
    """
    if poly.degree < 1:
        raise ValueError("squarefree decomposition needs a nonconstant polynomial")
    content, f = content_and_primitive(poly)
    if f.lc < 0:
        content, f = -content, -f
    parts: list[tuple[IntPoly, int]] = []
    df = f.derivative()
    a = primitive_gcd(f, df)
    b = exact_div(f, a)
    c = exact_div(df, a)
    w = c - b.derivative()
    i = 1
    while b.degree > 0:
        g = primitive_gcd(b, w)
        if g.degree > 0:
            parts.append((g, i))
        b = exact_div(b, g)
        c = exact_div(w, g)
        w = c - b.derivative()
        i += 1
    return SqfDecomp(content=content, parts=tuple(parts))


def multiplicity_bound_ok(poly: IntPoly, n: int) -> bool:
    """True iff every root multiplicity is at most n - 1."""
    if n < 2:
        raise ValueError("n must be >= 2")
    return all(m <= n - 1 for m in squarefree_decomposition(poly).multiplicities())


def radical(poly: IntPoly) -> IntPoly:
    """Product of the distinct squarefree parts: separable, same root set."""
    acc = IntPoly(1)
    for part, _ in squarefree_decomposition(poly).parts:
        acc = acc * part
    return acc


# ---------------------------------------------------------------------------
# resultant / discriminant (Bareiss fraction-free elimination)


def resultant(f: IntPoly, g: IntPoly) -> int:
    """Sylvester resultant of f and g, exact."""
    if f.is_zero() or g.is_zero():
        return 0
    m, n = f.degree, g.degree
    if m == 0:
        return f.coeffs[0] ** n
    if n == 0:
        return g.coeffs[0] ** m
    size = m + n
    rows: list[list[int]] = []
    frow = list(reversed(f.coeffs))
    grow = list(reversed(g.coeffs))
    for i in range(n):
        rows.append([0] * i + frow + [0] * (size - m - 1 - i))
    for i in range(m):
        rows.append([0] * i + grow + [0] * (size - n - 1 - i))
    return _bareiss_det(rows)


def _bareiss_det(a: list[list[int]]) -> int:
    n = len(a)
    sign = 1
    prev = 1
    for k in range(n - 1):
        if a[k][k] == 0:
            for r in range(k + 1, n):
                if a[r][k] != 0:
                    a[k], a[r] = a[r], a[k]
                    sign = -sign
                    break
            else:
                return 0
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) // prev
            a[i][k] = 0
        prev = a[k][k]
    return sign * a[n - 1][n - 1]


def discriminant(poly: IntPoly) -> int:
    """(-1)^(N(N-1)/2) * Res(P, P') / lc(P); zero iff P is not separable."""
    n = poly.degree
    if n < 1:
        raise ValueError("discriminant needs degree >= 1")
    res = resultant(poly, poly.derivative())
    sign = -1 if (n * (n - 1) // 2) % 2 else 1
    q, r = divmod(sign * res, poly.lc)
    if r:
        raise ArithmeticError("resultant not divisible by the leading coefficient")
    return q


def is_separable(poly: IntPoly) -> bool:
    return primitive_gcd(poly, poly.derivative()).degree == 0


# ---------------------------------------------------------------------------
# text format: "1,0,0,0,1" (low-to-high) or "T^4+1" / "(T^2+1)^2*(T^2-2)^2"

_TOKEN_RE = re.compile(r"\s*(?:(\d+)|([Tt])|([+\-*^()]))")


def parse_polynomial(text: str) -> IntPoly:
    """Parse the repo-wide polynomial text format.

    Accepts a comma-separated coefficient list, constant term first, or a
    human-readable expression in T with integer coefficients, '+', '-', '*',
    '^' and parentheses.  Raises PolyParseError with the offending position.
    """
    text = text.replace("−", "-")  # unicode minus
    if "," in text:
        coeffs = []
        for idx, chunk in enumerate(text.split(",")):
            chunk = chunk.strip()
            try:
                coeffs.append(int(chunk))
            except ValueError:
                raise PolyParseError(f"bad coefficient {chunk!r}", idx) from None
        return IntPoly(*coeffs)
    return _Parser(text).parse()


class _Parser:
    def __init__(self, text: str):
        self.text = text
        self.tokens: list[tuple[str, str, int]] = []
        pos = 0
        while pos < len(text):
            m = _TOKEN_RE.match(text, pos)
            if m is None:
                stripped = text[pos:].lstrip()
                at = len(text) - len(stripped)
                raise PolyParseError(f"unexpected character {text[at]!r}", at)
            if m.group(1) is not None:
                self.tokens.append(("num", m.group(1), m.start(1)))
            elif m.group(2) is not None:
                self.tokens.append(("var", "T", m.start(2)))
            else:
                self.tokens.append(("op", m.group(3), m.start(3)))
            pos = m.end()
        self.tokens.append(("end", "", len(text)))
        self.i = 0

    def peek(self) -> tuple[str, str, int]:
        return self.tokens[self.i]

    def advance(self) -> tuple[str, str, int]:
        tok = self.tokens[self.i]
        self.i += 1
        return tok

    def parse(self) -> IntPoly:
        poly = self.expr()
        kind, value, pos = self.peek()
        if kind != "end":
            raise PolyParseError(f"unexpected {value!r}", pos)
        return poly

    def expr(self) -> IntPoly:
        sign = 1
        kind, value, _ = self.peek()
        if kind == "op" and value in "+-":
            self.advance()
            sign = -1 if value == "-" else 1
        acc = self.term() * sign
        while True:
            kind, value, _ = self.peek()
            if kind == "op" and value in "+-":
                self.advance()
                nxt = self.term()
                acc = acc + nxt if value == "+" else acc - nxt
            else:
                return acc

    def term(self) -> IntPoly:
        acc = self.factor()
        while True:
            kind, value, _ = self.peek()
            if kind == "op" and value == "*":
                self.advance()
                acc = acc * self.factor()
            elif kind in ("num", "var") or (kind == "op" and value == "("):
                acc = acc * self.factor()  # juxtaposition: "3T^2", "2(T+1)"
            else:
                return acc

    def factor(self) -> IntPoly:
        base = self.base()
        kind, value, pos = self.peek()
        if kind == "op" and value == "^":
            self.advance()
            kind, value, pos = self.advance()
            if kind != "num":
                raise PolyParseError(f"expected integer exponent, got {value or 'end of input'!r}", pos)
            return base ** int(value)
        return base

    def base(self) -> IntPoly:
        kind, value, pos = self.advance()
        if kind == "num":
            return IntPoly(int(value))
        if kind == "var":
            return IntPoly(0, 1)
        if kind == "op" and value == "(":
            inner = self.expr()
            kind, value, pos = self.advance()
            if not (kind == "op" and value == ")"):
                raise PolyParseError("expected ')'", pos)
            return inner
        if kind == "op" and value == "-":
            return -self.base()
        raise PolyParseError(f"unexpected {value or 'end of input'!r}", pos)


def format_coeffs(poly: IntPoly) -> str:
    """Canonical comma-separated coefficient list, constant term first."""
    return ",".join(str(c) for c in poly.coeffs) if poly.coeffs else "0"
