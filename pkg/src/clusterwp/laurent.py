"""Exact sparse multivariate Laurent polynomials and rational functions.

Polynomials are stored as a mapping from exponent tuples (one signed entry per
ambient variable) to nonzero Python integers.  Rational functions are kept in
a canonical reduced form so that equality is a structural comparison:

* the denominator is an ordinary polynomial with no monomial factor,
* numerator and denominator share no polynomial factor,
* the joint integer content is 1,
* the lexicographically leading coefficient of the denominator is positive.

A rational function whose denominator is a monomial is therefore stored with
denominator 1 and a Laurent numerator.
"""

from __future__ import annotations

import heapq
import json
from fractions import Fraction
from math import gcd
from typing import Iterable, Mapping, Sequence

import flint

__all__ = [
    "LaurentPolynomial",
    "RationalFunction",
    "LaurentnessError",
    "lp_ring_ops",
    "rf_make",
    "rf_field_ops",
    "rf_partial",
    "rf_eval",
    "denominator_exponent",
    "poly_gcd",
    "variables",
]


class LaurentnessError(ValueError):
    """Raised when a value expected to be a Laurent polynomial is not."""


# products with more term pairs than this go through FLINT
_FLINT_MUL_THRESHOLD = 400


def _flint_ctx(n: int):
    return flint.fmpz_mpoly_ctx.get(names=("x", n), ordering="lex")


def _to_flint(p: "LaurentPolynomial"):
    """Split ``p`` as ``x**shift * poly`` with poly a FLINT polynomial."""
    shift = p.min_exponents()
    ctx = _flint_ctx(p.arity)
    poly = ctx.from_dict({tuple([x - y for x, y in zip(e, shift)]): c for e, c in p.items()})
    return poly, shift


def _from_flint(poly, shift: Sequence[int], arity: int) -> "LaurentPolynomial":
    return LaurentPolynomial._raw(
        {tuple([int(x) + y for x, y in zip(e, shift)]): int(c) for e, c in poly.to_dict().items()},
        arity,
    )


def _check_arity(a: "LaurentPolynomial", b: "LaurentPolynomial") -> None:
    if a.arity != b.arity:
        raise ValueError(f"arity mismatch: {a.arity} != {b.arity}")


class LaurentPolynomial:
    """Sparse Laurent polynomial with integer coefficients in ``arity`` variables."""

    __slots__ = ("_terms", "_arity", "_hash")

    def __init__(self, terms: Mapping[Sequence[int], int] | None = None, arity: int = 0):
        self._arity = int(arity)
        clean: dict[tuple[int, ...], int] = {}
        for exp, coef in (terms or {}).items():
            exp = tuple(int(e) for e in exp)
            if len(exp) != self._arity:
                raise ValueError(f"exponent {exp} has wrong length for arity {self._arity}")
            coef = int(coef)
            if coef:
                clean[exp] = clean.get(exp, 0) + coef
                if not clean[exp]:
                    del clean[exp]
        self._terms = clean
        self._hash = None

    @classmethod
    def _raw(cls, terms: dict, arity: int) -> "LaurentPolynomial":
        # trusted constructor: terms already canonical
        obj = cls.__new__(cls)
        obj._terms = terms
        obj._arity = arity
        obj._hash = None
        return obj

    # constructors -------------------------------------------------------

    @classmethod
    def zero(cls, arity: int) -> "LaurentPolynomial":
        return cls._raw({}, arity)

    @classmethod
    def constant(cls, c: int, arity: int) -> "LaurentPolynomial":
        c = int(c)
        return cls._raw({(0,) * arity: c} if c else {}, arity)

    @classmethod
    def one(cls, arity: int) -> "LaurentPolynomial":
        return cls.constant(1, arity)

    @classmethod
    def monomial(cls, exp: Sequence[int], coef: int = 1) -> "LaurentPolynomial":
        exp = tuple(int(e) for e in exp)
        coef = int(coef)
        return cls._raw({exp: coef} if coef else {}, len(exp))

    @classmethod
    def variable(cls, i: int, arity: int) -> "LaurentPolynomial":
        if not 0 <= i < arity:
            raise IndexError(f"variable index {i} out of range for arity {arity}")
        exp = [0] * arity
        exp[i] = 1
        return cls._raw({tuple(exp): 1}, arity)

    # basic properties ---------------------------------------------------

    @property
    def arity(self) -> int:
        return self._arity

    @property
    def terms(self) -> dict[tuple[int, ...], int]:
        """Copy of the term map, in lexicographic order of exponents."""
        return {e: self._terms[e] for e in sorted(self._terms)}

    def items(self):
        return self._terms.items()

    def __len__(self) -> int:
        return len(self._terms)

    def is_zero(self) -> bool:
        return not self._terms

    def is_constant(self) -> bool:
        return not self._terms or (len(self._terms) == 1 and not any(next(iter(self._terms))))

    def is_monomial(self) -> bool:
        return len(self._terms) == 1

    def constant_value(self) -> int:
        if not self.is_constant():
            raise ValueError("not a constant")
        return self._terms.get((0,) * self._arity, 0)

    def leading_term(self) -> tuple[tuple[int, ...], int]:
        if not self._terms:
            raise ValueError("zero polynomial has no leading term")
        e = max(self._terms)
        return e, self._terms[e]

    def min_exponent(self, i: int) -> int:
        return min(e[i] for e in self._terms)

    def max_exponent(self, i: int) -> int:
        return max(e[i] for e in self._terms)

    def min_exponents(self) -> tuple[int, ...]:
        if not self._terms:
            return (0,) * self._arity
        return tuple(min(col) for col in zip(*self._terms))

    def max_exponents(self) -> tuple[int, ...]:
        if not self._terms:
            return (0,) * self._arity
        return tuple(max(col) for col in zip(*self._terms))

    def is_polynomial(self) -> bool:
        return all(x >= 0 for x in self.min_exponents())

    def content(self) -> int:
        g = 0
        for c in self._terms.values():
            g = gcd(g, c)
            if g == 1:
                break
        return g

    def support(self) -> tuple[int, ...]:
        """Indices of variables that occur with a nonzero exponent."""
        occurring = set()
        for e in self._terms:
            occurring.update(i for i, x in enumerate(e) if x)
        return tuple(sorted(occurring))

    # arithmetic ---------------------------------------------------------

    def _coerce(self, other) -> "LaurentPolynomial":
        if isinstance(other, LaurentPolynomial):
            _check_arity(self, other)
            return other
        if isinstance(other, int):
            return LaurentPolynomial.constant(other, self._arity)
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        if len(self._terms) < len(other._terms):
            small, big = self._terms, other._terms
        else:
            small, big = other._terms, self._terms
        out = dict(big)
        for e, c in small.items():
            v = out.get(e, 0) + c
            if v:
                out[e] = v
            else:
                out.pop(e, None)
        return LaurentPolynomial._raw(out, self._arity)

    __radd__ = __add__

    def __neg__(self):
        return LaurentPolynomial._raw({e: -c for e, c in self._terms.items()}, self._arity)

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return other + (-self)

    def __mul__(self, other):
        if isinstance(other, int):
            if not other:
                return LaurentPolynomial.zero(self._arity)
            return LaurentPolynomial._raw({e: c * other for e, c in self._terms.items()}, self._arity)
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        a, b = self._terms, other._terms
        if len(a) * len(b) > _FLINT_MUL_THRESHOLD and self._arity:
            fa, sa = _to_flint(self)
            fb, sb = _to_flint(other)
            return _from_flint(fa * fb, [x + y for x, y in zip(sa, sb)], self._arity)
        if len(a) > len(b):
            a, b = b, a
        out: dict[tuple[int, ...], int] = {}
        get = out.get
        b_items = list(b.items())
        for ea, ca in a.items():
            for eb, cb in b_items:
                e = tuple([x + y for x, y in zip(ea, eb)])
                out[e] = get(e, 0) + ca * cb
        return LaurentPolynomial._raw({e: c for e, c in out.items() if c}, self._arity)

    __rmul__ = __mul__

    def __pow__(self, k: int):
        k = int(k)
        if k < 0:
            if not self.is_monomial():
                raise ValueError("negative powers are only defined for monomials")
            (e, c), = self._terms.items()
            if c not in (1, -1):
                raise ValueError("negative power of a monomial with non-unit coefficient")
            return LaurentPolynomial.monomial([k * x for x in e], c ** (-k))
        result = LaurentPolynomial.one(self._arity)
        base = self
        while k:
            if k & 1:
                result = result * base
            k >>= 1
            if k:
                base = base * base
        return result

    def shift(self, exp: Sequence[int]) -> "LaurentPolynomial":
        """Multiply by the monomial ``x**exp``."""
        exp = tuple(exp)
        return LaurentPolynomial._raw(
            {tuple([x + y for x, y in zip(e, exp)]): c for e, c in self._terms.items()}, self._arity
        )

    def scale_down(self, d: int) -> "LaurentPolynomial":
        """Exact division of every coefficient by the integer ``d``."""
        out = {}
        for e, c in self._terms.items():
            q, r = divmod(c, d)
            if r:
                raise ArithmeticError(f"coefficient {c} not divisible by {d}")
            out[e] = q
        return LaurentPolynomial._raw(out, self._arity)

    def exact_divide(self, other: "LaurentPolynomial") -> "LaurentPolynomial | None":
        """Quotient ``self / other`` in the Laurent ring, or None if inexact."""
        _check_arity(self, other)
        if other.is_zero():
            raise ZeroDivisionError("division by the zero polynomial")
        if self.is_zero():
            return self
        if other.is_monomial():
            (eb, cb), = other._terms.items()
            out = {}
            for e, c in self._terms.items():
                q, r = divmod(c, cb)
                if r:
                    return None
                out[tuple([x - y for x, y in zip(e, eb)])] = q
            return LaurentPolynomial._raw(out, self._arity)
        fa, sa = _to_flint(self)
        fb, sb = _to_flint(other)
        q, r = divmod(fa, fb)
        if r != 0:
            return None
        return _from_flint(q, [x - y for x, y in zip(sa, sb)], self._arity)

    def _exact_divide_python(self, other: "LaurentPolynomial") -> "LaurentPolynomial | None":
        """Pure-Python lexicographic division, kept as a cross-check."""
        _check_arity(self, other)
        if other.is_zero():
            raise ZeroDivisionError("division by the zero polynomial")
        if self.is_zero():
            return self
        # quotient exponents are confined to a box fixed by the Newton polytopes
        lo = [x - y for x, y in zip(self.min_exponents(), other.min_exponents())]
        hi = [x - y for x, y in zip(self.max_exponents(), other.max_exponents())]
        if any(l > h for l, h in zip(lo, hi)):
            return None
        lead_e, lead_c = other.leading_term()
        b_rest = [(e, c) for e, c in other._terms.items() if e != lead_e]
        rem = dict(self._terms)
        heap = [tuple(-x for x in e) for e in rem]
        heapq.heapify(heap)
        quot: dict[tuple[int, ...], int] = {}
        while rem:
            while True:
                neg = heapq.heappop(heap)
                e = tuple(-x for x in neg)
                if e in rem:
                    break
            c = rem.pop(e)
            t = tuple([x - y for x, y in zip(e, lead_e)])
            if any(x < l or x > h for x, l, h in zip(t, lo, hi)):
                return None
            q, r = divmod(c, lead_c)
            if r:
                return None
            quot[t] = q
            for eb, cb in b_rest:
                key = tuple([x + y for x, y in zip(t, eb)])
                v = rem.get(key, 0) - q * cb
                if v:
                    if key not in rem:
                        heapq.heappush(heap, tuple(-x for x in key))
                    rem[key] = v
                else:
                    rem.pop(key, None)
        return LaurentPolynomial._raw(quot, self._arity)

    # calculus and evaluation --------------------------------------------

    def partial(self, i: int) -> "LaurentPolynomial":
        if not 0 <= i < self._arity:
            raise IndexError(f"variable index {i} out of range for arity {self._arity}")
        out = {}
        for e, c in self._terms.items():
            if e[i]:
                ne = list(e)
                ne[i] -= 1
                out[tuple(ne)] = c * e[i]
        return LaurentPolynomial._raw(out, self._arity)

    def evaluate(self, point: Sequence) -> Fraction:
        """Exact value at a rational point.

        Each x_i = p_i/q_i is cleared of denominators so the sum runs over
        integers; the single division happens at the end.
        """
        if len(point) != self._arity:
            raise ValueError(f"point has length {len(point)}, expected {self._arity}")
        if not self._terms:
            return Fraction(0)
        pt = [Fraction(x) for x in point]
        lo = [min(0, k) for k in self.min_exponents()]
        hi = [max(0, k) for k in self.max_exponents()]
        active = [i for i in range(self._arity) if lo[i] or hi[i]]
        for i in active:
            if not pt[i] and lo[i] < 0:
                raise ZeroDivisionError("negative power of a variable evaluated at 0")
        num_pows = {i: _power_table(pt[i].numerator, hi[i] - lo[i]) for i in active}
        den_pows = {i: _power_table(pt[i].denominator, hi[i] - lo[i]) for i in active}
        total = 0
        for e, c in self._terms.items():
            term = c
            for i in active:
                term *= num_pows[i][e[i] - lo[i]] * den_pows[i][hi[i] - e[i]]
            total += term
        scale = 1
        for i in active:
            scale *= num_pows[i][-lo[i]] * den_pows[i][hi[i]]
        return Fraction(total, scale)

    def substitute_variable(self, i: int, value: int) -> "LaurentPolynomial":
        """Set variable ``i`` to an integer value (used for recursive gcd)."""
        out: dict = {}
        for e, c in self._terms.items():
            ne = list(e)
            k = ne[i]
            ne[i] = 0
            key = tuple(ne)
            out[key] = out.get(key, 0) + c * value ** k
        return LaurentPolynomial(out, self._arity)

    # comparison, hashing, display ---------------------------------------

    def __eq__(self, other):
        if isinstance(other, int):
            return self.is_constant() and self.constant_value() == other
        if not isinstance(other, LaurentPolynomial):
            return NotImplemented
        return self._arity == other._arity and self._terms == other._terms

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self._arity, frozenset(self._terms.items())))
        return self._hash

    def format(self, names: Sequence[str] | None = None) -> str:
        if names is None:
            names = [f"f{i + 1}" for i in range(self._arity)]
        if not self._terms:
            return "0"
        pieces = []
        for e in sorted(self._terms, reverse=True):
            c = self._terms[e]
            factors = []
            for name, k in zip(names, e):
                if k == 1:
                    factors.append(name)
                elif k:
                    factors.append(f"{name}^{k}")
            mono = "*".join(factors)
            mag = abs(c)
            if not mono:
                body = str(mag)
            elif mag == 1:
                body = mono
            else:
                body = f"{mag}*{mono}"
            sign = "-" if c < 0 else "+"
            pieces.append((sign, body))
        first_sign, first = pieces[0]
        out = ("-" if first_sign == "-" else "") + first
        for sign, body in pieces[1:]:
            out += f" {sign} {body}"
        return out

    def __repr__(self):
        return f"LaurentPolynomial({self.format()!r}, arity={self._arity})"

    def __str__(self):
        return self.format()

    def to_dict(self) -> dict:
        return {
            "arity": self._arity,
            "terms": [{"exp": list(e), "coef": str(self._terms[e])} for e in sorted(self._terms)],
        }

    @classmethod
    def from_dict(cls, data: Mapping) -> "LaurentPolynomial":
        arity = int(data["arity"])
        return cls({tuple(t["exp"]): int(t["coef"]) for t in data["terms"]}, arity)

    def to_json(self) -> str:
        return json.dumps(self.to_dict())

    @classmethod
    def from_json(cls, text: str) -> "LaurentPolynomial":
        return cls.from_dict(json.loads(text))


def variables(arity: int) -> tuple[LaurentPolynomial, ...]:
    """The ``arity`` coordinate functions as Laurent polynomials."""
    return tuple(LaurentPolynomial.variable(i, arity) for i in range(arity))


def lp_ring_ops(kind: str, a: LaurentPolynomial, b: LaurentPolynomial | None = None) -> LaurentPolynomial:
    """Dispatch ``add``, ``sub``, ``mul`` or ``neg`` by name."""
    if kind == "neg":
        return -a
    if b is None:
        raise TypeError(f"{kind} needs two operands")
    _check_arity(a, b)
    if kind == "add":
        return a + b
    if kind == "sub":
        return a - b
    if kind == "mul":
        return a * b
    raise ValueError(f"unknown ring operation {kind!r}")


def _power_table(b: int, k: int) -> list[int]:
    out = [1]
    for _ in range(k):
        out.append(out[-1] * b)
    return out


# polynomial gcd over the integers ---------------------------------------


def _coefficients_in(p: LaurentPolynomial, v: int) -> dict[int, LaurentPolynomial]:
    """View ``p`` as a polynomial in variable ``v``: degree -> coefficient."""
    buckets: dict[int, dict] = {}
    for e, c in p.items():
        k = e[v]
        ne = e[:v] + (0,) + e[v + 1:]
        buckets.setdefault(k, {})[ne] = c
    return {k: LaurentPolynomial._raw(t, p.arity) for k, t in buckets.items()}


def _content_in(p: LaurentPolynomial, v: int) -> LaurentPolynomial:
    g = None
    for coef in _coefficients_in(p, v).values():
        g = coef if g is None else poly_gcd(g, coef)
        if g.is_constant() and abs(g.content()) == 1:
            break
    return g


def _normalize_sign(p: LaurentPolynomial) -> LaurentPolynomial:
    return -p if p.leading_term()[1] < 0 else p


def poly_gcd(a: LaurentPolynomial, b: LaurentPolynomial) -> LaurentPolynomial:
    """Greatest common divisor of two polynomials (nonnegative exponents).

    Recursive primitive polynomial remainder sequence over the integers.
    The result has positive leading coefficient; the zero pair gives 0.
    """
    _check_arity(a, b)
    if a.is_zero():
        return _normalize_sign(b) if not b.is_zero() else b
    if b.is_zero():
        return _normalize_sign(a)
    if a.is_constant() or b.is_constant():
        return LaurentPolynomial.constant(gcd(a.content(), b.content()), a.arity)
    shared = set(a.support()) & set(b.support())
    if not shared:
        # a common factor can only involve variables present in both
        return LaurentPolynomial.constant(gcd(a.content(), b.content()), a.arity)
    v = max(shared)
    ca, cb = _content_in(a, v), _content_in(b, v)
    cont = poly_gcd(ca, cb)
    pa = a.exact_divide(ca)
    pb = b.exact_divide(cb)
    deg = lambda p: p.max_exponent(v)
    if deg(pa) < deg(pb):
        pa, pb = pb, pa
    while not pb.is_zero() and deg(pb) > 0:
        r = _pseudo_remainder(pa, pb, v)
        if r.is_zero():
            break
        pa, pb = pb, r.exact_divide(_content_in(r, v))
    if pb.is_zero():
        g = pa
    elif deg(pb) == 0:
        g = LaurentPolynomial.one(a.arity)
    else:
        g = pb
    g = g.exact_divide(_content_in(g, v)) if not g.is_constant() else LaurentPolynomial.one(a.arity)
    return _normalize_sign(cont * g)


def _pseudo_remainder(a: LaurentPolynomial, b: LaurentPolynomial, v: int) -> LaurentPolynomial:
    db = b.max_exponent(v)
    lb = _coefficients_in(b, v)[db]
    unit = [0] * a.arity
    while not a.is_zero() and a.max_exponent(v) >= db:
        da = a.max_exponent(v)
        la = _coefficients_in(a, v)[da]
        unit[v] = da - db
        a = a * lb - (la * b).shift(unit)
    return a


# rational functions ------------------------------------------------------


class RationalFunction:
    """Quotient of two Laurent polynomials, kept in canonical reduced form."""

    __slots__ = ("_num", "_den", "_hash")

    def __init__(self, num: LaurentPolynomial | int, den: LaurentPolynomial | int | None = None,
                 arity: int | None = None):
        if isinstance(num, int):
            if arity is None:
                arity = den.arity if isinstance(den, LaurentPolynomial) else 0
            num = LaurentPolynomial.constant(num, arity)
        if den is None:
            den = LaurentPolynomial.one(num.arity)
        elif isinstance(den, int):
            den = LaurentPolynomial.constant(den, num.arity)
        _check_arity(num, den)
        self._num, self._den = _reduce(num, den)
        self._hash = None

    @classmethod
    def _raw(cls, num, den) -> "RationalFunction":
        obj = cls.__new__(cls)
        obj._num, obj._den, obj._hash = num, den, None
        return obj

    @classmethod
    def variable(cls, i: int, arity: int) -> "RationalFunction":
        return cls._raw(LaurentPolynomial.variable(i, arity), LaurentPolynomial.one(arity))

    @classmethod
    def constant(cls, c, arity: int) -> "RationalFunction":
        c = Fraction(c)
        return cls(LaurentPolynomial.constant(c.numerator, arity),
                   LaurentPolynomial.constant(c.denominator, arity))

    @property
    def numerator(self) -> LaurentPolynomial:
        return self._num

    @property
    def denominator(self) -> LaurentPolynomial:
        return self._den

    @property
    def arity(self) -> int:
        return self._num.arity

    def is_zero(self) -> bool:
        return self._num.is_zero()

    def is_laurent(self) -> bool:
        """True when the reduced denominator is a (unit) monomial."""
        return self._den == 1

    def as_laurent(self) -> LaurentPolynomial:
        if not self.is_laurent():
            raise LaurentnessError(f"denominator {self._den} is not a monomial")
        return self._num

    def is_constant(self) -> bool:
        return self._num.is_constant() and self._den.is_constant()

    def constant_value(self) -> Fraction:
        return Fraction(self._num.constant_value(), self._den.constant_value())

    def _coerce(self, other) -> "RationalFunction":
        if isinstance(other, RationalFunction):
            if other.arity != self.arity:
                raise ValueError(f"arity mismatch: {self.arity} != {other.arity}")
            return other
        if isinstance(other, LaurentPolynomial):
            return RationalFunction(other)
        if isinstance(other, (int, Fraction)):
            return RationalFunction.constant(other, self.arity)
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        if self._den == other._den:
            return RationalFunction(self._num + other._num, self._den)
        return RationalFunction(self._num * other._den + other._num * self._den, self._den * other._den)

    __radd__ = __add__

    def __neg__(self):
        return RationalFunction._raw(-self._num, self._den)

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return other + (-self)

    def __mul__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        if self.is_laurent() and other.is_laurent():
            return RationalFunction._raw(self._num * other._num, self._den)
        return RationalFunction(self._num * other._num, self._den * other._den)

    __rmul__ = __mul__

    def inverse(self) -> "RationalFunction":
        if self.is_zero():
            raise ZeroDivisionError("inverse of zero")
        return RationalFunction(self._den, self._num)

    def __truediv__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        if other.is_zero():
            raise ZeroDivisionError("division by zero rational function")
        return RationalFunction(self._num * other._den, self._den * other._num)

    def __rtruediv__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return other / self

    def __pow__(self, k: int):
        k = int(k)
        if k < 0:
            return self.inverse() ** (-k)
        return RationalFunction._raw(self._num ** k, self._den ** k)

    def partial(self, i: int) -> "RationalFunction":
        dn = self._num.partial(i)
        if self.is_laurent():
            return RationalFunction._raw(dn, self._den)
        dd = self._den.partial(i)
        return RationalFunction(dn * self._den - self._num * dd, self._den * self._den)

    def evaluate(self, point: Sequence) -> Fraction:
        den = self._den.evaluate(point)
        if not den:
            raise ZeroDivisionError("rational function has a pole at the point")
        return self._num.evaluate(point) / den

    def denominator_exponent(self, i: int) -> int:
        if not 0 <= i < self.arity:
            raise IndexError(f"variable index {i} out of range for arity {self.arity}")
        if not self.is_laurent():
            raise LaurentnessError(f"denominator {self._den} is not a monomial")
        if self._num.is_zero():
            raise ValueError("denominator exponent of zero is undefined")
        return -self._num.min_exponent(i)

    def __eq__(self, other):
        if isinstance(other, (int, Fraction, LaurentPolynomial)):
            other = self._coerce(other)
        if not isinstance(other, RationalFunction):
            return NotImplemented
        return self._num == other._num and self._den == other._den

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self._num, self._den))
        return self._hash

    def format(self, names: Sequence[str] | None = None) -> str:
        if self.is_laurent():
            lo = self._num.min_exponents()
            if all(x >= 0 for x in lo):
                return self._num.format(names)
            # print with an explicit monomial denominator
            den_exp = [max(0, -x) for x in lo]
            num = self._num.shift(den_exp)
            den = LaurentPolynomial.monomial(den_exp)
        else:
            num, den = self._num, self._den
        ns, ds = num.format(names), den.format(names)
        if len(num) > 1:
            ns = f"({ns})"
        if len(den) > 1 or (den.is_monomial() and "*" in ds):
            ds = f"({ds})"
        return f"{ns}/{ds}"

    def __repr__(self):
        return f"RationalFunction({self.format()!r})"

    def __str__(self):
        return self.format()

    def to_dict(self) -> dict:
        return {"numerator": self._num.to_dict(), "denominator": self._den.to_dict()}

    @classmethod
    def from_dict(cls, data: Mapping) -> "RationalFunction":
        return cls(LaurentPolynomial.from_dict(data["numerator"]),
                   LaurentPolynomial.from_dict(data["denominator"]))


def _reduce(num: LaurentPolynomial, den: LaurentPolynomial) -> tuple[LaurentPolynomial, LaurentPolynomial]:
    n = num.arity
    if den.is_zero():
        raise ZeroDivisionError("zero denominator")
    if num.is_zero():
        return num, LaurentPolynomial.one(n)
    # move the monomial content of the denominator to the numerator
    lo = den.min_exponents()
    if any(lo):
        neg = [-x for x in lo]
        den = den.shift(neg)
        num = num.shift(neg)
    if not den.is_constant():
        q = num.exact_divide(den)
        if q is not None:
            num, den = q, LaurentPolynomial.one(n)
        else:
            fn, sn = _to_flint(num)
            fd, sd = _to_flint(den)
            g = fn.gcd(fd)
            if g.total_degree() > 0:
                num = _from_flint(fn / g, sn, n)
                den = _from_flint(fd / g, sd, n)
    c = gcd(num.content(), den.content())
    if c > 1:
        num, den = num.scale_down(c), den.scale_down(c)
    if den.leading_term()[1] < 0:
        num, den = -num, -den
    return num, den


def rf_make(num: LaurentPolynomial, den: LaurentPolynomial) -> RationalFunction:
    return RationalFunction(num, den)


def rf_field_ops(kind: str, a: RationalFunction, b: RationalFunction | None = None) -> RationalFunction:
    """Dispatch ``add``, ``mul``, ``div`` or ``inv`` by name."""
    if kind == "inv":
        return a.inverse()
    if b is None:
        raise TypeError(f"{kind} needs two operands")
    if kind == "add":
        return a + b
    if kind == "mul":
        return a * b
    if kind == "div":
        return a / b
    raise ValueError(f"unknown field operation {kind!r}")


def rf_partial(a: RationalFunction, var_index: int) -> RationalFunction:
    return a.partial(var_index)


def rf_eval(a: RationalFunction, point: Iterable) -> Fraction:
    return a.evaluate(list(point))


def denominator_exponent(a: RationalFunction | LaurentPolynomial, var_index: int) -> int:
    """Exponent of a variable in the monomial denominator of a Laurent polynomial.

    Equal to minus the smallest exponent of the variable, so that a bare
    variable has exponent -1 in its own denominator.
    """
    if isinstance(a, LaurentPolynomial):
        a = RationalFunction(a)
    return a.denominator_exponent(var_index)
