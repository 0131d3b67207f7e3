"""Exact fields, monomials, monomial orders and sparse multivariate polynomials.

Scalars are stored as native numbers: ``gmpy2.mpq`` for QQ and plain ``int``
in ``[0, p)`` for GF(p).  The field travels with the polynomial ring, so two
polynomials can only be combined when their rings agree.

Monomials are exponent tuples of fixed length ``nvars``.  Every monomial
order exposes ``key(exps)`` returning a flat tuple of ints; comparing keys
compares monomials, and negating a key elementwise reverses the order (the
reduction loop relies on that for its heap).
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Iterable, Sequence

import gmpy2

from .errors import (
    DimensionError,
    EmptyPolynomialError,
    FieldMismatchError,
    ParseError,
)

Monomial = tuple  # tuple[int, ...]

LESS, EQUAL, GREATER = -1, 0, 1


# --------------------------------------------------------------------------
# fields


def _is_prime(p: int) -> bool:
    if p < 2:
        return False
    if p % 2 == 0:
        return p == 2
    f = 3
    while f * f <= p:
        if p % f == 0:
            return False
        f += 2
    return True


class Field:
    """QQ (``p == 0``) or the prime field GF(p)."""

    __slots__ = ("p",)

    def __init__(self, p: int = 0):
        if p != 0 and not (_is_prime(p) and p < 2**31):
            raise ValueError(f"field characteristic must be 0 or a prime < 2^31, got {p}")
        self.p = p

    @classmethod
    def parse(cls, text: str) -> "Field":
        text = text.strip()
        if text == "QQ":
            return QQ
        m = re.fullmatch(r"Fp:(\d+)", text)
        if m:
            return GF(int(m.group(1)))
        raise ValueError(f"unknown field {text!r}; expected QQ or Fp:<p>")

    @property
    def name(self) -> str:
        return "QQ" if self.p == 0 else f"Fp:{self.p}"

    @property
    def characteristic(self) -> int:
        return self.p

    @property
    def is_finite(self) -> bool:
        return self.p != 0

    def __call__(self, x):
        """Convert an int, Fraction, mpq or ``"a/b"`` string into this field."""
        if isinstance(x, str):
            num, _, den = x.strip().partition("/")
            x = Fraction(int(num), int(den) if den else 1)
        if self.p:
            if isinstance(x, int):
                return x % self.p
            num, den = int(x.numerator), int(x.denominator)
            if den % self.p == 0:
                raise ZeroDivisionError(f"denominator {den} vanishes in GF({self.p})")
            return num * pow(den, -1, self.p) % self.p
        if isinstance(x, (int, Fraction)) or type(x) is type(gmpy2.mpq()):
            return gmpy2.mpq(x)
        raise TypeError(f"cannot convert {type(x).__name__} into {self.name}")

    def inv(self, x):
        if x == 0:
            raise ZeroDivisionError("inverse of zero")
        if self.p:
            return pow(int(x), -1, self.p)
        return 1 / x

    def neg(self, x):
        return (-x) % self.p if self.p else -x

    def elements(self):
        if not self.p:
            raise ValueError("QQ has no finite element list")
        return range(self.p)

    def signed(self, x) -> Fraction:
        """Canonical rational value of ``x``; GF(p) elements use the range (-p/2, p/2]."""
        if self.p:
            x = int(x)
            return Fraction(x - self.p if x > self.p // 2 else x)
        return Fraction(int(x.numerator), int(x.denominator))

    def format(self, x) -> str:
        if self.p:
            return str(int(x))
        num, den = int(x.numerator), int(x.denominator)
        return str(num) if den == 1 else f"{num}/{den}"

    def __eq__(self, other):
        return isinstance(other, Field) and other.p == self.p

    def __hash__(self):
        return hash(("Field", self.p))

    def __repr__(self):
        return "QQ" if self.p == 0 else f"GF({self.p})"


QQ = Field(0)


@lru_cache(maxsize=None)
def GF(p: int) -> Field:
    return Field(p)


# --------------------------------------------------------------------------
# monomials


def degree(m: Monomial) -> int:
    return sum(m)


def divides(a: Monomial, b: Monomial) -> bool:
    return all(x <= y for x, y in zip(a, b))


def mono_mul(a: Monomial, b: Monomial) -> Monomial:
    return tuple(x + y for x, y in zip(a, b))


def mono_div(a: Monomial, b: Monomial) -> Monomial:
    """``a / b``; assumes ``b | a``."""
    return tuple(x - y for x, y in zip(a, b))


def mono_lcm(a: Monomial, b: Monomial) -> Monomial:
    return tuple(max(x, y) for x, y in zip(a, b))


def mono_gcd(a: Monomial, b: Monomial) -> Monomial:
    return tuple(min(x, y) for x, y in zip(a, b))


def is_squarefree_monomial(m: Monomial) -> bool:
    return all(e <= 1 for e in m)


def monomial_support(m: Monomial) -> frozenset:
    return frozenset(i for i, e in enumerate(m) if e)


def unit_monomial(nvars: int, i: int, e: int = 1) -> Monomial:
    return tuple(e if k == i else 0 for k in range(nvars))


def squarefree_monomial(nvars: int, vertices: Iterable[int]) -> Monomial:
    vs = set(vertices)
    return tuple(1 if k in vs else 0 for k in range(nvars))


def monomials_of_degree(nvars: int, d: int):
    """All exponent tuples of total degree ``d``, in lex-descending order."""
    if nvars == 0:
        if d == 0:
            yield ()
        return
    if nvars == 1:
        yield (d,)
        return
    for e in range(d, -1, -1):
        for rest in monomials_of_degree(nvars - 1, d - e):
            yield (e,) + rest


def format_monomial(m: Monomial) -> str:
    parts = []
    for i, e in enumerate(m):
        if e == 1:
            parts.append(f"X{i}")
        elif e > 1:
            parts.append(f"X{i}^{e}")
    return "*".join(parts) if parts else "1"


# --------------------------------------------------------------------------
# monomial orders


class MonomialOrder:
    """A monomial order with X0 > X1 > ... > Xn.

    ``kind`` is one of ``lex``, ``degrevlex``, ``weighted`` (weights, ties
    broken by degrevlex) or ``block`` (lex on the first ``block`` variables,
    then ``rest`` on the remaining ones; used for elimination).
    """

    __slots__ = ("kind", "weights", "block", "rest", "key")

    def __init__(self, kind: str, weights: Sequence[int] | None = None,
                 block: int = 0, rest: "MonomialOrder | None" = None):
        self.kind = kind
        self.weights = tuple(weights) if weights is not None else None
        self.block = block
        self.rest = rest
        if kind == "lex":
            self.key = _lex_key
        elif kind == "degrevlex":
            self.key = _degrevlex_key
        elif kind == "weighted":
            w = self.weights
            if not w or any(x <= 0 for x in w):
                raise ValueError("weights must be positive")
            if any(w[i] < w[i + 1] for i in range(len(w) - 1)):
                raise ValueError("weights must be non-increasing so that X0 > X1 > ... > Xn")

            def key(m, w=w):
                if len(m) != len(w):
                    raise DimensionError(f"weight vector has length {len(w)}, monomial {len(m)}")
                return (sum(a * b for a, b in zip(w, m)),) + _degrevlex_key(m)

            self.key = key
        elif kind == "block":
            if rest is None:
                raise ValueError("block order needs a rest order")
            k, rkey = block, rest.key

            def key(m, k=k, rkey=rkey):
                return tuple(m[:k]) + rkey(m[k:])

            self.key = key
        else:
            raise ValueError(f"unknown order kind {kind!r}")

    @classmethod
    def parse(cls, name: str) -> "MonomialOrder":
        if name == "lex":
            return LEX
        if name == "degrevlex":
            return DEGREVLEX
        raise ValueError(f"unknown order {name!r}; expected lex or degrevlex")

    @property
    def name(self) -> str:
        if self.kind == "weighted":
            return "weighted(" + ",".join(map(str, self.weights)) + ")"
        if self.kind == "block":
            return f"block({self.block},{self.rest.name})"
        return self.kind

    def __eq__(self, other):
        return (isinstance(other, MonomialOrder) and self.kind == other.kind
                and self.weights == other.weights and self.block == other.block
                and self.rest == other.rest)

    def __hash__(self):
        return hash((self.kind, self.weights, self.block, self.rest))

    def __repr__(self):
        return f"MonomialOrder({self.name})"


def _lex_key(m):
    return m


def _degrevlex_key(m):
    return (sum(m),) + tuple(-e for e in reversed(m))


LEX = MonomialOrder("lex")
DEGREVLEX = MonomialOrder("degrevlex")


def weighted(weights: Sequence[int]) -> MonomialOrder:
    return MonomialOrder("weighted", weights=weights)


def elimination_order(k: int, rest: MonomialOrder) -> MonomialOrder:
    """Block order eliminating X0..X{k-1}."""
    return MonomialOrder("block", block=k, rest=rest)


def compare(a: Monomial, b: Monomial, order: MonomialOrder) -> int:
    """Return LESS, EQUAL or GREATER."""
    if len(a) != len(b):
        raise DimensionError(f"monomials have {len(a)} and {len(b)} variables")
    ka, kb = order.key(a), order.key(b)
    return (ka > kb) - (ka < kb)


# --------------------------------------------------------------------------
# polynomials


@dataclass(frozen=True)
class PolyRing:
    """K[X0, ..., X{nvars-1}]."""

    nvars: int
    field: Field = QQ

    def __post_init__(self):
        if self.nvars < 1:
            raise DimensionError("a polynomial ring needs at least one variable")

    @property
    def n(self) -> int:
        """Projective dimension of the ambient space, i.e. nvars - 1."""
        return self.nvars - 1

    @property
    def zero(self) -> "Polynomial":
        return Polynomial(self, {})

    @property
    def one(self) -> "Polynomial":
        return self.constant(1)

    def constant(self, c) -> "Polynomial":
        c = self.field(c)
        return Polynomial(self, {(0,) * self.nvars: c} if c != 0 else {})

    def var(self, i: int) -> "Polynomial":
        if not 0 <= i < self.nvars:
            raise DimensionError(f"X{i} is not a variable of a ring with {self.nvars} variables")
        return Polynomial(self, {unit_monomial(self.nvars, i): self.field(1)})

    @property
    def gens(self) -> list:
        return [self.var(i) for i in range(self.nvars)]

    def monomial(self, m: Monomial, c=1) -> "Polynomial":
        if len(m) != self.nvars:
            raise DimensionError(f"monomial has {len(m)} exponents, ring has {self.nvars} variables")
        c = self.field(c)
        return Polynomial(self, {tuple(m): c} if c != 0 else {})

    def from_dict(self, terms: dict) -> "Polynomial":
        f = self.field
        out = {}
        for m, c in terms.items():
            if len(m) != self.nvars:
                raise DimensionError(f"monomial has {len(m)} exponents, ring has {self.nvars} variables")
            c = f(c)
            if c != 0:
                out[tuple(m)] = c
        return Polynomial(self, out)

    def parse(self, text: str, source: str = "<string>", line: int = 1) -> "Polynomial":
        return parse_polynomial(text, self, source=source, line=line)

    def with_field(self, field: Field) -> "PolyRing":
        return PolyRing(self.nvars, field)

    def __repr__(self):
        return f"PolyRing({self.nvars}, {self.field!r})"


class Polynomial:
    """Immutable sparse polynomial: a dict from exponent tuples to nonzero scalars."""

    __slots__ = ("ring", "terms", "_hash")

    def __init__(self, ring: PolyRing, terms: dict):
        self.ring = ring
        self.terms = terms
        self._hash = None

    # -- basic queries -----------------------------------------------------

    def is_zero(self) -> bool:
        return not self.terms

    def __bool__(self):
        return bool(self.terms)

    def __len__(self):
        return len(self.terms)

    def support(self) -> frozenset:
        return frozenset(self.terms)

    def coefficient(self, m: Monomial):
        return self.terms.get(tuple(m), 0)

    def total_degree(self) -> int:
        if not self.terms:
            return -1
        return max(sum(m) for m in self.terms)

    def is_homogeneous(self) -> bool:
        degs = {sum(m) for m in self.terms}
        return len(degs) <= 1

    def variables(self) -> frozenset:
        out = set()
        for m in self.terms:
            out.update(i for i, e in enumerate(m) if e)
        return frozenset(out)

    def sorted_terms(self, order: MonomialOrder) -> list:
        """Terms in descending order (computed on demand, per order)."""
        key = order.key
        return sorted(self.terms.items(), key=lambda t: key(t[0]), reverse=True)

    def leading_term(self, order: MonomialOrder):
        if not self.terms:
            raise EmptyPolynomialError("the zero polynomial has no leading term")
        m = max(self.terms, key=order.key)
        return m, self.terms[m]

    def leading_monomial(self, order: MonomialOrder) -> Monomial:
        return self.leading_term(order)[0]

    def leading_coefficient(self, order: MonomialOrder):
        return self.leading_term(order)[1]

    def monic(self, order: MonomialOrder) -> "Polynomial":
        _, c = self.leading_term(order)
        return self.scale(self.ring.field.inv(c))

    # -- arithmetic --------------------------------------------------------

    def _check(self, other: "Polynomial"):
        if self.ring != other.ring:
            if self.ring.field != other.ring.field:
                raise FieldMismatchError(
                    f"cannot combine polynomials over {self.ring.field.name} and {other.ring.field.name}")
            raise DimensionError(
                f"cannot combine polynomials in {self.ring.nvars} and {other.ring.nvars} variables")

    def _coerce(self, other):
        if isinstance(other, Polynomial):
            self._check(other)
            return other
        return self.ring.constant(other)

    def __add__(self, other):
        other = self._coerce(other)
        p = self.ring.field.p
        out = dict(self.terms)
        for m, c in other.terms.items():
            s = out.get(m, 0) + c
            if p:
                s %= p
            if s:
                out[m] = s
            else:
                out.pop(m, None)
        return Polynomial(self.ring, out)

    __radd__ = __add__

    def __neg__(self):
        p = self.ring.field.p
        if p:
            return Polynomial(self.ring, {m: p - c for m, c in self.terms.items()})
        return Polynomial(self.ring, {m: -c for m, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-self._coerce(other))

    def __rsub__(self, other):
        return self._coerce(other) - self

    def scale(self, c) -> "Polynomial":
        f = self.ring.field
        c = f(c) if not isinstance(c, int) or f.p == 0 else c % f.p
        if c == 0:
            return self.ring.zero
        p = f.p
        if p:
            return Polynomial(self.ring, {m: a * c % p for m, a in self.terms.items()})
        return Polynomial(self.ring, {m: a * c for m, a in self.terms.items()})

    def mul_term(self, mono: Monomial, c) -> "Polynomial":
        """Multiply by the single term ``c * mono`` (``c`` already in the field)."""
        p = self.ring.field.p
        out = {}
        for m, a in self.terms.items():
            v = a * c
            if p:
                v %= p
            if v:
                out[tuple(x + y for x, y in zip(m, mono))] = v
        return Polynomial(self.ring, out)

    def __mul__(self, other):
        if not isinstance(other, Polynomial):
            return self.scale(other)
        self._check(other)
        p = self.ring.field.p
        out = {}
        for m1, c1 in self.terms.items():
            for m2, c2 in other.terms.items():
                m = tuple(x + y for x, y in zip(m1, m2))
                out[m] = out.get(m, 0) + c1 * c2
        if p:
            out = {m: c % p for m, c in out.items() if c % p}
        else:
            out = {m: c for m, c in out.items() if c}
        return Polynomial(self.ring, out)

    def __rmul__(self, other):
        return self.scale(other)

    def __pow__(self, e: int):
        if e < 0:
            raise ValueError("negative exponents are not supported")
        result, base = self.ring.one, self
        while e:
            if e & 1:
                result = result * base
            base = base * base
            e >>= 1
        return result

    def derivative(self, k: int) -> "Polynomial":
        """Formal partial derivative with respect to X_k."""
        if not 0 <= k < self.ring.nvars:
            raise DimensionError(f"X{k} is not a variable of this ring")
        p = self.ring.field.p
        out = {}
        for m, c in self.terms.items():
            e = m[k]
            if e:
                v = c * e
                if p:
                    v %= p
                if v:
                    out[m[:k] + (e - 1,) + m[k + 1:]] = v
        return Polynomial(self.ring, out)

    def evaluate(self, point: Sequence):
        """Evaluate at a coordinate tuple of field elements."""
        if len(point) != self.ring.nvars:
            raise DimensionError(f"point has {len(point)} coordinates, ring has {self.ring.nvars} variables")
        f = self.ring.field
        pt = [f(x) for x in point]
        p = f.p
        total = 0
        for m, c in self.terms.items():
            v = c
            for x, e in zip(pt, m):
                if e:
                    v = v * x ** e
                    if not v:
                        break
            total += v
        return total % p if p else total

    def substitute(self, k: int, g: "Polynomial") -> "Polynomial":
        """Replace X_k by ``g``."""
        self._check(g)
        ring = self.ring
        out = ring.zero
        powers = {0: ring.one}
        for m, c in self.terms.items():
            e = m[k]
            if e not in powers:
                powers[e] = g ** e
            rest = m[:k] + (0,) + m[k + 1:]
            out = out + powers[e].mul_term(rest, c)
        return out

    def to_ring(self, ring: PolyRing, var_map: Sequence[int]) -> "Polynomial":
        """Rewrite in ``ring`` sending X_i to X_{var_map[i]}.

        Variables mapped to ``-1`` must not occur.
        """
        if ring.field != self.ring.field:
            raise FieldMismatchError(f"cannot move {self.ring.field.name} polynomial to {ring.field.name}")
        out = {}
        for m, c in self.terms.items():
            new = [0] * ring.nvars
            for i, e in enumerate(m):
                if e:
                    j = var_map[i]
                    if j < 0:
                        raise DimensionError(f"X{i} occurs but has no image")
                    new[j] += e
            out[tuple(new)] = c
        return Polynomial(ring, out)

    # -- comparison / display ----------------------------------------------

    def __eq__(self, other):
        if isinstance(other, Polynomial):
            return self.ring == other.ring and self.terms == other.terms
        if isinstance(other, (int, Fraction)):
            return self == self.ring.constant(other)
        return NotImplemented

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.ring, frozenset(self.terms.items())))
        return self._hash

    def to_str(self, order: MonomialOrder | None = None) -> str:
        """Render in the text grammar, terms in descending ``order`` (lex by default)."""
        if not self.terms:
            return "0"
        f = self.ring.field
        parts = []
        for m, c in self.sorted_terms(order or LEX):
            v = Fraction(int(c)) if f.p else f.signed(c)
            neg = v < 0
            a = -v if neg else v
            mono = format_monomial(m)
            coeff = str(a.numerator) if a.denominator == 1 else f"{a.numerator}/{a.denominator}"
            if mono == "1":
                body = coeff
            elif a == 1:
                body = mono
            else:
                body = f"{coeff}*{mono}"
            if not parts:
                parts.append(("-" if neg else "") + body)
            else:
                parts.append(("- " if neg else "+ ") + body)
        return " ".join(parts)

    def __str__(self):
        return self.to_str()

    def __repr__(self):
        return f"Polynomial({self.to_str()!r}, {self.ring.field!r})"


# --------------------------------------------------------------------------
# text grammar

_TOKEN = re.compile(r"\s*(?:(?P<num>\d+(?:/\d+)?)|(?P<var>X(?P<idx>\d+))|(?P<op>[-+*^])|(?P<bad>\S))")


def parse_polynomial(text: str, ring: PolyRing, source: str = "<string>", line: int = 1) -> Polynomial:
    """Parse ``coeff*X<i>^<e>*...`` terms joined by ``+``/``-``.

    Errors carry the source name, line and 1-based column.
    """
    tokens = []
    pos = 0
    stripped = text.rstrip()
    while pos < len(stripped):
        mt = _TOKEN.match(stripped, pos)
        if mt.group("bad") is not None:
            raise ParseError(f"unexpected character {mt.group('bad')!r}", source, line, mt.start("bad") + 1)
        for kind in ("num", "var", "op"):
            if mt.group(kind) is not None:
                tokens.append((kind, mt.group(kind), mt.start(kind) + 1))
                break
        pos = mt.end()
    if not tokens:
        raise ParseError("empty polynomial", source, line, 1)

    field = ring.field
    i = 0
    result = {}

    def err(msg, col):
        raise ParseError(msg, source, line, col)

    def add_term(mono, c):
        s = result.get(mono, 0) + c
        if field.p:
            s %= field.p
        if s:
            result[mono] = s
        else:
            result.pop(mono, None)

    def at(k):
        return tokens[k] if k < len(tokens) else ("end", "end of input", len(stripped) + 1)

    sign = 1
    if at(0)[1] in "+-" and at(0)[0] == "op":
        sign = -1 if at(0)[1] == "-" else 1
        i = 1
    while True:
        # term := factor ('*' factor)*,  factor := number | X<i> ['^' <e>]
        coeff = Fraction(sign)
        exps = [0] * ring.nvars
        term_col = at(i)[2]
        while True:
            kind, val, col = at(i)
            if kind == "num":
                num, _, den = val.partition("/")
                if den and int(den) == 0:
                    err("zero denominator", col)
                coeff *= Fraction(int(num), int(den) if den else 1)
                i += 1
            elif kind == "var":
                idx = int(val[1:])
                if idx >= ring.nvars:
                    err(f"variable {val} out of range for {ring.nvars} variables", col)
                e = 1
                i += 1
                if at(i)[1] == "^":
                    k2, v2, c2 = at(i + 1)
                    if k2 != "num" or "/" in v2:
                        err("expected a non-negative integer exponent after '^'", c2)
                    e = int(v2)
                    i += 2
                exps[idx] += e
            else:
                err(f"expected a coefficient or variable, found {val!r}", col)
            if at(i)[1] == "*" and at(i)[0] == "op":
                i += 1
                continue
            break
        try:
            c = field(coeff)
        except ZeroDivisionError as exc:
            err(str(exc), term_col)
        if c:
            add_term(tuple(exps), c)
        kind, val, col = at(i)
        if kind == "end":
            break
        if kind != "op" or val not in "+-":
            err(f"expected '+' or '-', found {val!r}", col)
        sign = -1 if val == "-" else 1
        i += 1
    return Polynomial(ring, result)
