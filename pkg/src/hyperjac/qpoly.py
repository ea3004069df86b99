"""Exact sparse multivariate polynomials over the rationals.

A :class:`Poly` maps exponent tuples to nonzero :class:`fractions.Fraction`
coefficients.  The same class doubles as the ring of differential operators:
an operator is a ``Poly`` whose variable ``x_i`` is read as ``d/dx_i`` by
:func:`apply_op`.

Monomials are ordered graded-lexicographically with ``x0 > x1 > ...``; every
listing of monomials or terms produced here is in *descending* order, so
``x0^d`` always comes first in degree ``d``.
"""

from __future__ import annotations

import re
from fractions import Fraction
from functools import lru_cache
from math import comb
from typing import Iterable, Mapping, Sequence

Exponent = tuple[int, ...]

MAX_DEGREE = 64


class DegreeOverflowError(ValueError):
    pass


class InhomogeneousError(ValueError):
    pass


class ParseError(ValueError):
    """Malformed polynomial text; ``position`` is the 0-based offset."""

    def __init__(self, message: str, position: int):
        super().__init__(f"{message} at position {position}")
        self.position = position


def _grlex_key(e: Exponent):
    return (sum(e), e)


def _as_fraction(c) -> Fraction:
    if isinstance(c, Fraction):
        return c
    if isinstance(c, int):
        return Fraction(c)
    if isinstance(c, str):
        return Fraction(c)
    raise TypeError(f"unsupported coefficient {c!r}")


class Poly:
    """Immutable sparse polynomial in ``nvars`` variables with rational coefficients."""

    __slots__ = ("nvars", "_terms", "_hash")

    def __init__(self, nvars: int, terms: Mapping[Exponent, object] | None = None):
        self.nvars = nvars
        clean: dict[Exponent, Fraction] = {}
        if terms:
            for e, c in terms.items():
                c = _as_fraction(c)
                if c == 0:
                    continue
                if len(e) != nvars:
                    raise ValueError(f"exponent {e} does not have length {nvars}")
                if sum(e) > MAX_DEGREE or min(e) < 0:
                    raise DegreeOverflowError(f"monomial {e} outside degree range 0..{MAX_DEGREE}")
                clean[tuple(e)] = c
        self._terms = clean
        self._hash = None

    @classmethod
    def _raw(cls, nvars: int, terms: dict[Exponent, Fraction]) -> "Poly":
        # trusted constructor: terms already canonical
        p = cls.__new__(cls)
        p.nvars = nvars
        p._terms = terms
        p._hash = None
        return p

    @classmethod
    def zero(cls, nvars: int) -> "Poly":
        return cls._raw(nvars, {})

    @classmethod
    def const(cls, nvars: int, c) -> "Poly":
        return cls(nvars, {(0,) * nvars: c})

    @classmethod
    def var(cls, nvars: int, i: int) -> "Poly":
        if not 0 <= i < nvars:
            raise IndexError(f"variable index {i} out of range for {nvars} variables")
        e = [0] * nvars
        e[i] = 1
        return cls._raw(nvars, {tuple(e): Fraction(1)})

    @classmethod
    def monomial(cls, exps: Sequence[int], c=1) -> "Poly":
        return cls(len(exps), {tuple(exps): c})

    # -- inspection -------------------------------------------------------

    @property
    def terms(self) -> list[tuple[Exponent, Fraction]]:
        """Terms in descending graded-lex order."""
        return sorted(self._terms.items(), key=lambda t: _grlex_key(t[0]), reverse=True)

    def as_dict(self) -> dict[Exponent, Fraction]:
        return dict(self._terms)

    def coeff(self, e: Exponent) -> Fraction:
        return self._terms.get(tuple(e), Fraction(0))

    def is_zero(self) -> bool:
        return not self._terms

    def __bool__(self) -> bool:
        return bool(self._terms)

    def __len__(self) -> int:
        return len(self._terms)

    def degree(self) -> int:
        if not self._terms:
            return -1
        return max(sum(e) for e in self._terms)

    def min_degree(self) -> int:
        if not self._terms:
            return -1
        return min(sum(e) for e in self._terms)

    def is_homogeneous(self) -> bool:
        return len({sum(e) for e in self._terms}) <= 1

    def constant_value(self) -> Fraction:
        """Value of a constant polynomial; raises if not constant."""
        if not self._terms:
            return Fraction(0)
        if self.degree() != 0:
            raise ValueError("polynomial is not constant")
        return self._terms[(0,) * self.nvars]

    # -- arithmetic -------------------------------------------------------

    def _coerce(self, other) -> "Poly":
        if isinstance(other, Poly):
            if other.nvars != self.nvars:
                raise ValueError(f"variable count mismatch: {self.nvars} vs {other.nvars}")
            return other
        if isinstance(other, (int, Fraction)):
            return Poly.const(self.nvars, other)
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        out = dict(self._terms)
        for e, c in other._terms.items():
            s = out.get(e, 0) + c
            if s:
                out[e] = s
            else:
                out.pop(e, None)
        return Poly._raw(self.nvars, out)

    __radd__ = __add__

    def __neg__(self):
        return Poly._raw(self.nvars, {e: -c for e, c in self._terms.items()})

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def scale(self, c) -> "Poly":
        c = _as_fraction(c)
        if c == 0:
            return Poly.zero(self.nvars)
        return Poly._raw(self.nvars, {e: v * c for e, v in self._terms.items()})

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return self.scale(other)
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        out: dict[Exponent, Fraction] = {}
        for ea, ca in self._terms.items():
            for eb, cb in other._terms.items():
                e = tuple(a + b for a, b in zip(ea, eb))
                out[e] = out.get(e, 0) + ca * cb
        if out and max(sum(e) for e in out) > MAX_DEGREE:
            raise DegreeOverflowError(f"product exceeds degree {MAX_DEGREE}")
        return Poly._raw(self.nvars, {e: c for e, c in out.items() if c})

    __rmul__ = __mul__

    def __truediv__(self, other):
        if isinstance(other, (int, Fraction)):
            return self.scale(Fraction(1) / _as_fraction(other))
        return NotImplemented

    def __pow__(self, k: int):
        if not isinstance(k, int) or k < 0:
            raise ValueError("exponent must be a nonnegative integer")
        result = Poly.const(self.nvars, 1)
        base = self
        while k:
            if k & 1:
                result = result * base
            k >>= 1
            if k:
                base = base * base
        return result

    def __eq__(self, other):
        if isinstance(other, Poly):
            return self.nvars == other.nvars and self._terms == other._terms
        if isinstance(other, (int, Fraction)):
            return self == Poly.const(self.nvars, other)
        return NotImplemented

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.nvars, frozenset(self._terms.items())))
        return self._hash

    # -- calculus / evaluation -------------------------------------------

    def diff(self, i: int) -> "Poly":
        return diff(self, i)

    def __call__(self, *point):
        return evaluate(self, point)

    def __str__(self):
        return format_poly(self)

    def __repr__(self):
        return f"Poly({self.nvars}, {format_poly(self)!r})"


# ---------------------------------------------------------------------------
# monomial bases


@lru_cache(maxsize=None)
def monomials_of_degree(nvars: int, deg: int) -> tuple[Exponent, ...]:
    """All exponent vectors of total degree ``deg``, descending lex order."""
    if deg < 0:
        raise ValueError("degree must be nonnegative")
    if nvars == 0:
        return ((),) if deg == 0 else ()
    if nvars == 1:
        return ((deg,),)
    out = []
    for a in range(deg, -1, -1):
        for rest in monomials_of_degree(nvars - 1, deg - a):
            out.append((a,) + rest)
    return tuple(out)


@lru_cache(maxsize=None)
def monomial_index(nvars: int, deg: int) -> dict[Exponent, int]:
    return {e: i for i, e in enumerate(monomials_of_degree(nvars, deg))}


def dim_forms(nvars: int, deg: int) -> int:
    """dim R_deg = C(nvars-1+deg, deg); zero for negative degree."""
    if deg < 0:
        return 0
    return comb(nvars - 1 + deg, deg)


def coefficient_vector(p: Poly, deg: int) -> list[Fraction]:
    """Coordinates of a homogeneous ``p`` in the monomial basis of degree ``deg``."""
    idx = monomial_index(p.nvars, deg)
    vec = [Fraction(0)] * len(idx)
    for e, c in p._terms.items():
        try:
            vec[idx[e]] = c
        except KeyError:
            raise InhomogeneousError(f"term {e} is not of degree {deg}") from None
    return vec


def from_vector(nvars: int, deg: int, vec: Sequence) -> Poly:
    mons = monomials_of_degree(nvars, deg)
    return Poly(nvars, {m: c for m, c in zip(mons, vec) if c})


# ---------------------------------------------------------------------------
# operations


def homogeneous_degree(p: Poly) -> int:
    if p.is_zero():
        raise InhomogeneousError("zero polynomial has no degree")
    degs = {sum(e) for e in p._terms}
    if len(degs) != 1:
        raise InhomogeneousError(f"polynomial is not homogeneous (degrees {sorted(degs)})")
    return degs.pop()


def diff(p: Poly, i: int) -> Poly:
    """Partial derivative with respect to ``x_i``."""
    if not 0 <= i < p.nvars:
        raise IndexError(f"variable index {i} out of range")
    out = {}
    for e, c in p._terms.items():
        a = e[i]
        if a:
            out[e[:i] + (a - 1,) + e[i + 1:]] = c * a
    return Poly._raw(p.nvars, out)


def _falling(a: int, k: int) -> int:
    r = 1
    for t in range(k):
        r *= a - t
    return r


def apply_op(alpha: Poly, f: Poly) -> Poly:
    """Apply the differential operator ``alpha`` (in X_i = d/dx_i) to ``f``."""
    if alpha.nvars != f.nvars:
        raise ValueError("operator and form live in different rings")
    if not alpha.is_homogeneous() or not f.is_homogeneous():
        raise InhomogeneousError("apply_op expects homogeneous operator and form")
    out: dict[Exponent, Fraction] = {}
    for ea, ca in alpha._terms.items():
        for ef, cf in f._terms.items():
            mult = 1
            for a, b in zip(ea, ef):
                if a > b:
                    mult = 0
                    break
                if a:
                    mult *= _falling(b, a)
            if mult:
                e = tuple(b - a for a, b in zip(ea, ef))
                out[e] = out.get(e, 0) + ca * cf * mult
    return Poly._raw(f.nvars, {e: c for e, c in out.items() if c})


def evaluate(p: Poly, point: Sequence) -> Fraction:
    if len(point) != p.nvars:
        raise ValueError(f"point has {len(point)} coordinates, expected {p.nvars}")
    pt = [_as_fraction(v) for v in point]
    total = Fraction(0)
    for e, c in p._terms.items():
        v = c
        for x, a in zip(pt, e):
            if a:
                v *= x ** a
        total += v
    return total


def substitute(p: Poly, images: Sequence[Poly]) -> Poly:
    """Compose ``p`` with ``x_i -> images[i]``; images share a common ring."""
    if len(images) != p.nvars:
        raise ValueError("need one image per variable")
    nv = images[0].nvars
    powers: list[dict[int, Poly]] = [{0: Poly.const(nv, 1)} for _ in images]

    def power(i, a):
        cache = powers[i]
        if a not in cache:
            cache[a] = power(i, a - 1) * images[i]
        return cache[a]

    total = Poly.zero(nv)
    for e, c in p._terms.items():
        term = Poly.const(nv, c)
        for i, a in enumerate(e):
            if a:
                term = term * power(i, a)
        total = total + term
    return total


def linear_form(coeffs: Sequence) -> Poly:
    n = len(coeffs)
    return Poly(n, {tuple(1 if j == i else 0 for j in range(n)): c for i, c in enumerate(coeffs)})


def random_form(nvars: int, deg: int, rng, lo: int = -10, hi: int = 10, density: float = 1.0) -> Poly:
    """Random homogeneous form with integer coefficients in ``[lo, hi]``."""
    terms = {}
    for m in monomials_of_degree(nvars, deg):
        if density < 1.0 and rng.random() > density:
            continue
        terms[m] = rng.randint(lo, hi)
    return Poly(nvars, terms)


# ---------------------------------------------------------------------------
# printer


def _format_coeff(c: Fraction) -> str:
    if c.denominator == 1:
        return str(c.numerator)
    return f"{c.numerator}/{c.denominator}"


def format_monomial(e: Exponent, var: str = "x") -> str:
    parts = []
    for i, a in enumerate(e):
        if a == 1:
            parts.append(f"{var}{i}")
        elif a > 1:
            parts.append(f"{var}{i}^{a}")
    return "*".join(parts)


def format_poly(p: Poly, var: str = "x") -> str:
    """Canonical text: descending graded-lex, explicit ``*`` and ``^``."""
    if p.is_zero():
        return "0"
    out = []
    for e, c in p.terms:
        sign = "-" if c < 0 else "+"
        a = abs(c)
        mono = format_monomial(e, var)
        if not mono:
            body = _format_coeff(a)
        elif a == 1:
            body = mono
        else:
            body = f"{_format_coeff(a)}*{mono}"
        if not out:
            out.append(body if sign == "+" else "-" + body)
        else:
            out.append(sign + body)
    return "".join(out)


# ---------------------------------------------------------------------------
# parser

_TOKEN = re.compile(r"\s*(?:(\d+)|([A-Za-z]\w*)|(.))")


def _tokenize(text: str):
    tokens = []
    pos = 0
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if m.end() == pos:
            break
        start = m.start(m.lastindex) if m.lastindex else m.end()
        if m.group(1) is not None:
            tokens.append(("int", m.group(1), start))
        elif m.group(2) is not None:
            tokens.append(("name", m.group(2), start))
        elif m.group(3) is not None:
            ch = m.group(3)
            if ch not in "+-*/^()":
                raise ParseError(f"unexpected character {ch!r}", start)
            tokens.append(("op", ch, start))
        pos = m.end()
    tokens.append(("end", "", len(text)))
    return tokens


class _Parser:
    def __init__(self, text: str, nvars: int):
        self.tokens = _tokenize(text)
        self.i = 0
        self.nvars = nvars

    def peek(self):
        return self.tokens[self.i]

    def take(self):
        tok = self.tokens[self.i]
        self.i += 1
        return tok

    def expect(self, value):
        tok = self.take()
        if tok[1] != value or tok[0] != "op":
            raise ParseError(f"expected {value!r}", tok[2])

    def parse(self) -> Poly:
        p = self.expr()
        tok = self.peek()
        if tok[0] != "end":
            raise ParseError(f"unexpected {tok[1]!r} (implicit multiplication is not allowed)", tok[2])
        return p

    def expr(self) -> Poly:
        p = self.term()
        while self.peek()[0] == "op" and self.peek()[1] in "+-":
            op = self.take()[1]
            q = self.term()
            p = p + q if op == "+" else p - q
        return p

    def term(self) -> Poly:
        p = self.unary()
        while self.peek()[0] == "op" and self.peek()[1] in "*/":
            op = self.take()[1]
            pos = self.peek()[2]
            q = self.unary()
            if op == "*":
                p = p * q
            else:
                if q.is_zero():
                    raise ParseError("division by zero", pos)
                if q.degree() != 0:
                    raise ParseError("division only by nonzero constants", pos)
                p = p / q.constant_value()
        return p

    def unary(self) -> Poly:
        tok = self.peek()
        if tok[0] == "op" and tok[1] in "+-":
            self.take()
            p = self.unary()
            return -p if tok[1] == "-" else p
        return self.power()

    def power(self) -> Poly:
        base = self.atom()
        if self.peek()[0] == "op" and self.peek()[1] == "^":
            self.take()
            tok = self.take()
            if tok[0] != "int":
                raise ParseError("exponent must be a nonnegative integer literal", tok[2])
            try:
                return base ** int(tok[1])
            except DegreeOverflowError as exc:
                raise ParseError(str(exc), tok[2]) from None
        return base

    def atom(self) -> Poly:
        tok = self.take()
        kind, value, pos = tok
        if kind == "int":
            return Poly.const(self.nvars, int(value))
        if kind == "name":
            m = re.fullmatch(r"x(\d+)", value)
            if not m:
                raise ParseError(f"unknown symbol {value!r}; variables are x0..x{self.nvars - 1}", pos)
            i = int(m.group(1))
            if i >= self.nvars:
                raise ParseError(f"variable x{i} out of range for {self.nvars} variables", pos)
            return Poly.var(self.nvars, i)
        if kind == "op" and value == "(":
            p = self.expr()
            self.expect(")")
            return p
        if kind == "end":
            raise ParseError("unexpected end of input", pos)
        raise ParseError(f"unexpected {value!r}", pos)


def parse_poly(text: str, nvars: int) -> Poly:
    """Parse ``text`` in variables ``x0..x{nvars-1}`` into canonical form.

    Accepts integers, ``+ - * ^``, parentheses, and division by a nonzero
    constant (so that printed rational coefficients round-trip).
    """
    if nvars < 1:
        raise ValueError("nvars must be positive")
    return _Parser(text, nvars).parse()


def operator_str(alpha: Poly) -> str:
    """Print an operator with capital ``X`` for the dual variables."""
    return format_poly(alpha, var="X")


def ops_from_exponents(exps: Iterable[Exponent]) -> list[Poly]:
    return [Poly.monomial(e) for e in exps]
