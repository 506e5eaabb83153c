from __future__ import annotations

import json
import random
from fractions import Fraction

import pytest
import sympy as sp

from clusterwp.laurent import (
    LaurentPolynomial as LP,
    LaurentnessError,
    RationalFunction as RF,
    denominator_exponent,
    lp_ring_ops,
    poly_gcd,
    rf_eval,
    rf_field_ops,
    rf_make,
    rf_partial,
)

from oracles import symmetric_difference_quotient, to_sympy

f1, f2, f3 = (LP.variable(i, 3) for i in range(3))
F1, F2, F3 = (RF.variable(i, 3) for i in range(3))


def random_lp(rng, arity=3, terms=4, lo=-2, hi=3, coef=5):
    d = {}
    for _ in range(terms):
        e = tuple(rng.randint(lo, hi) for _ in range(arity))
        d[e] = rng.randint(-coef, coef)
    return LP(d, arity)


def random_poly(rng, arity=3, terms=4, deg=3, coef=5):
    return random_lp(rng, arity, terms, 0, deg, coef)


class TestRingOps:
    def test_add_gives_exchange_numerator(self):
        assert lp_ring_ops("add", f2, f3).format() == "f2 + f3"

    def test_inverse_monomials(self):
        assert lp_ring_ops("mul", f1, f1 ** -1) == 1

    def test_sub_self_is_empty(self):
        p = f1 * f2 + 3 * f3
        z = lp_ring_ops("sub", p, p)
        assert z.is_zero() and z.terms == {}

    def test_neg(self):
        assert lp_ring_ops("neg", f1) == -f1

    def test_arity_mismatch(self):
        with pytest.raises(ValueError):
            lp_ring_ops("add", f1, LP.variable(0, 2))

    def test_unknown_kind(self):
        with pytest.raises(ValueError):
            lp_ring_ops("div", f1, f2)

    def test_no_zero_terms_stored(self):
        p = LP({(1, 0, 0): 2, (0, 1, 0): 0}, 3)
        assert p.terms == {(1, 0, 0): 2}

    def test_terms_sorted_lex(self):
        p = f3 + f1 + f2 * f2
        assert list(p.terms) == sorted(p.terms)

    def test_big_coefficients(self):
        p = (f1 + f2) ** 80
        assert p.terms[(40, 40, 0)] == sp.binomial(80, 40)
        assert max(abs(c) for c in p.terms.values()) > 2 ** 63

    def test_flint_and_python_products_agree(self):
        rng = random.Random(3)
        a, b = random_lp(rng, terms=30), random_lp(rng, terms=30)
        python = {}
        for ea, ca in a.items():
            for eb, cb in b.items():
                e = tuple(x + y for x, y in zip(ea, eb))
                python[e] = python.get(e, 0) + ca * cb
        assert len(a) * len(b) > 400
        assert a * b == LP(python, 3)


class TestDivision:
    def test_exact_laurent_division(self):
        num = (f2 + f3) * (f1 + f2 * f3) * f1 ** -2
        assert num.exact_divide(f1 + f2 * f3) == (f2 + f3) * f1 ** -2

    def test_inexact_returns_none(self):
        assert (f1 + f2).exact_divide(f1 + f3) is None
        assert (2 * f1 + f2).exact_divide(LP.constant(2, 3)) is None

    @pytest.mark.parametrize("seed", range(8))
    def test_python_division_matches_flint(self, seed):
        rng = random.Random(seed)
        a, b = random_lp(rng, terms=5), random_lp(rng, terms=3)
        if b.is_zero() or a.is_zero():
            return
        prod = a * b
        assert prod.exact_divide(b) == a
        assert prod._exact_divide_python(b) == a
        off = prod + f1 ** 7
        assert (off.exact_divide(b) is None) == (off._exact_divide_python(b) is None)

    def test_division_by_zero(self):
        with pytest.raises(ZeroDivisionError):
            f1.exact_divide(LP.zero(3))


class TestGcd:
    @pytest.mark.parametrize("seed", range(10))
    def test_gcd_matches_sympy(self, seed):
        rng = random.Random(seed)
        g = random_poly(rng, arity=2, terms=3, deg=2)
        a = g * random_poly(rng, arity=2, terms=3, deg=2)
        b = g * random_poly(rng, arity=2, terms=2, deg=2)
        if a.is_zero() or b.is_zero():
            return
        x = sp.symbols("f1:3")
        got = poly_gcd(a, b)
        want = sp.Poly(sp.gcd(to_sympy(RF(a), x), to_sympy(RF(b), x)), *x)
        got_p = sp.Poly(to_sympy(RF(got), x), *x)
        assert got_p == want or got_p == -want

    @pytest.mark.parametrize("seed", range(6))
    def test_gcd_matches_flint(self, seed):
        from clusterwp.laurent import _from_flint, _to_flint

        rng = random.Random(100 + seed)
        g = random_poly(rng, terms=3, deg=2) + 1
        a = g * (random_poly(rng, terms=3, deg=2) + 2)
        b = g * (random_poly(rng, terms=3, deg=2) - 1)
        fa, sa = _to_flint(a)
        fb, sb = _to_flint(b)
        assert tuple(sa) == tuple(sb) == (0, 0, 0)
        want = _from_flint(fa.gcd(fb), [0, 0, 0], 3)
        got = poly_gcd(a, b)
        assert got == want or got == -want

    def test_gcd_of_coprime_variables(self):
        assert poly_gcd(2 * f1, 4 * f2) == 2


class TestRationalFunctions:
    def test_rf_make_example(self):
        assert rf_make(f2 + f3, f1).format() == "(f2 + f3)/f1"

    def test_content_cancelled(self):
        p, q = f1 + f2 + 1, f3 + 1
        r = rf_make(2 * p, 2 * q)
        assert r.numerator == p and r.denominator == q

    def test_sign_normalized(self):
        p, q = f1 + f2 + 1, f3 + 1
        r = rf_make(-p, -q)
        assert r.numerator == p and r.denominator == q

    def test_common_factor_cancelled(self):
        r = rf_make((f1 + f2) ** 2 * (f3 + 1), (f1 + f2) * (f3 + 2))
        assert r == rf_make((f1 + f2) * (f3 + 1), f3 + 2)

    def test_zero_denominator(self):
        with pytest.raises(ZeroDivisionError):
            rf_make(f1, LP.zero(3))

    def test_idempotent(self):
        r = rf_make((f1 + f2) * 6, (f1 + f2) * 4 * f3)
        again = rf_make(r.numerator, r.denominator)
        assert again == r and again.numerator == r.numerator

    def test_field_ops(self):
        x = rf_field_ops("div", RF(f2 * f2 + f3 * f3), RF(f1))
        assert x.format() == "(f2^2 + f3^2)/f1"
        a = rf_make(f1 + 1, f2 + 3)
        assert rf_field_ops("mul", a, rf_field_ops("inv", a)) == 1
        assert rf_field_ops("add", a, RF.constant(0, 3)) == a
        with pytest.raises(ZeroDivisionError):
            rf_field_ops("div", a, RF.constant(0, 3))
        with pytest.raises(ZeroDivisionError):
            rf_field_ops("inv", RF.constant(0, 3))

    def test_partial_examples(self):
        r = (F2 + F3) / F1
        assert rf_partial(r, 0) == -(F2 + F3) / (F1 * F1)
        assert rf_partial(r, 1) == 1 / F1
        assert rf_partial(RF.constant(5, 3), 0) == 0

    def test_partial_out_of_range(self):
        with pytest.raises(IndexError):
            rf_partial(F1, 3)

    def test_eval_examples(self):
        assert rf_eval((F2 + F3) / F1, [1, 1, 1]) == 2
        assert rf_eval(F2 / F3, [5, 6, 3]) == 2
        assert rf_eval((F2 * F2 + F3 * F3) / F1, [1, 2, 3]) == 13

    def test_eval_pole(self):
        with pytest.raises(ZeroDivisionError):
            rf_eval(F2 / (F1 - F3), [1, 1, 1])
        with pytest.raises(ZeroDivisionError):
            rf_eval(F2 / F1, [0, 1, 1])

    def test_json_roundtrip(self):
        r = rf_make((f1 + 3 * f2) ** 3, f1 * f3 + 7)
        data = json.loads(json.dumps(r.to_dict()))
        assert RF.from_dict(data) == r
        lp = (f1 + f2 ** -1) ** 5
        assert LP.from_json(lp.to_json()) == lp
        assert lp.to_dict()["terms"][0]["coef"] == "1"

    def test_matches_sympy_arithmetic(self):
        rng = random.Random(11)
        x = sp.symbols("f1:4")
        for _ in range(10):
            a = rf_make(random_poly(rng) + 1, random_poly(rng, terms=2) + 2)
            b = rf_make(random_poly(rng) + 3, random_poly(rng, terms=2) + 1)
            if a.is_zero() or b.is_zero():
                continue
            for got, want in ((a + b, to_sympy(a, x) + to_sympy(b, x)),
                              (a * b, to_sympy(a, x) * to_sympy(b, x)),
                              (a / b, to_sympy(a, x) / to_sympy(b, x))):
                assert sp.simplify(to_sympy(got, x) - want) == 0


class TestDenominatorExponent:
    def test_two_flip_first_label(self):
        a, b, c, d = (RF.variable(i, 4) for i in range(4))
        assert denominator_exponent((a * c + b * b) / d, 3) == 1

    def test_two_flip_second_label(self):
        a, b, c, d = (RF.variable(i, 4) for i in range(4))
        bb = (a * c * d * d + (a * c + b * b) ** 2) / (b * d * d)
        assert denominator_exponent(bb, 1) == 1
        assert denominator_exponent(bb, 3) == 2

    def test_variable_convention(self):
        assert denominator_exponent(F1, 0) == -1
        assert denominator_exponent(f1, 0) == -1
        assert denominator_exponent(F1, 1) == 0

    def test_non_monomial_denominator(self):
        with pytest.raises(LaurentnessError):
            denominator_exponent(F1 / (F2 + F3), 0)

    def test_index_range(self):
        with pytest.raises(IndexError):
            denominator_exponent(F1, 5)


def _derivative_by_interpolation(p: RF, point, i):
    """d/dx_i of a polynomial exactly from symmetric differences.

    The symmetric quotient is a polynomial in h^2 whose value at h = 0 is the
    derivative; Lagrange-interpolate it in u = h^2.
    """
    deg = p.numerator.max_exponent(i)
    m = max(1, (deg + 1) // 2)
    hs = [Fraction(k) for k in range(1, m + 1)]
    us = [h * h for h in hs]
    vals = [symmetric_difference_quotient(p, point, i, h) for h in hs]
    total = Fraction(0)
    for j, (uj, vj) in enumerate(zip(us, vals)):
        w = Fraction(1)
        for k, uk in enumerate(us):
            if k != j:
                w *= (0 - uk) / (uj - uk)
        total += w * vj
    return total


def test_partial_matches_exact_finite_differences():
    rng = random.Random(5)
    p = RF(random_poly(rng, terms=6, deg=4) + f1 * f2 * f3)
    for _ in range(20):
        pt = [Fraction(rng.randint(-9, 9), rng.randint(1, 5)) for _ in range(3)]
        for i in range(3):
            assert rf_partial(p, i).evaluate(pt) == _derivative_by_interpolation(p, pt, i)


def test_partial_of_quadratic_is_exact_difference():
    p = RF((f1 + 2 * f2) ** 2 + f3)
    pt = [Fraction(1, 3), Fraction(2), Fraction(-1)]
    assert symmetric_difference_quotient(p, pt, 0, Fraction(1, 7)) == rf_partial(p, 0).evaluate(pt)


def test_evaluate_matches_termwise_fractions():
    rng = random.Random(8)
    for _ in range(300):
        p = random_lp(rng, terms=5, lo=-3, hi=3, coef=9)
        pt = [Fraction(rng.randint(-5, 5), rng.randint(1, 4)) for _ in range(3)]
        try:
            want = sum((Fraction(c) * Fraction(pt[0]) ** e[0] * Fraction(pt[1]) ** e[1] * Fraction(pt[2]) ** e[2]
                        for e, c in p.items()), Fraction(0))
        except ZeroDivisionError:
            with pytest.raises(ZeroDivisionError):
                p.evaluate(pt)
            continue
        assert p.evaluate(pt) == want
