"""Rational functions with Hasse derivatives: normalization, gcd, quotient rule."""

import random

import pytest

from hsprolong import (
    BaseElem,
    FieldDescriptor,
    ParamPoly,
    comp_coeff,
    hasse_derive,
    index_add,
    poly_divexact,
    poly_gcd,
    splittings,
    twist_expand,
    trunc_inverse,
)
from hsprolong.basefield import _monic
from hsprolong.sampling import (
    random_base_elem,
    random_multiindex,
    random_nonzero_base_elem,
    random_param_poly,
)

Q_s = FieldDescriptor(0, ("s",), 1)
Q_su = FieldDescriptor(0, ("s", "u"), 2)
F5_s = FieldDescriptor(5, ("s",), 1)

FIELDS = [Q_s, Q_su, F5_s, FieldDescriptor(2, ("s", "u"), 2), FieldDescriptor(0, ("a", "b", "c"), 3)]


def s_elem(field=Q_s):
    return BaseElem.param(field, "s")


class TestNormalization:
    def test_cancellation(self):
        s = s_elem()
        assert (s**2 - 1) / (s - 1) == s + 1
        assert (s**2 - 1) / (s + 1) == s - 1

    def test_denominator_is_monic(self):
        s = s_elem()
        e = 1 / (1 - s)
        assert e.den.leading()[1] == 1
        assert e.render() == "-1/(s - 1)"

    def test_zero_normal_form(self):
        s = s_elem()
        z = (s - s) / (s**2 + 1)
        assert not z
        assert z.den == ParamPoly.const(Q_s, 1)

    def test_equality_is_structural(self):
        s = s_elem()
        a = (s**2 + 2 * s + 1) / (s + 1)
        assert a == s + 1

    def test_zero_denominator_rejected(self):
        s = s_elem()
        with pytest.raises(ZeroDivisionError):
            BaseElem(s.num, ParamPoly.zero(Q_s))


class TestGcd:
    def test_gcd_common_factor(self):
        rng = random.Random(11)
        for t in range(200):
            field = FIELDS[t % len(FIELDS)]
            a = random_param_poly(rng, field, 2, 3, nonzero=True)
            b = random_param_poly(rng, field, 2, 3, nonzero=True)
            c = random_param_poly(rng, field, 2, 2, nonzero=True)
            g = poly_gcd(a, b)
            qa, qb = poly_divexact(a, g), poly_divexact(b, g)
            assert poly_gcd(qa, qb).is_const()
            assert poly_gcd(a * c, b * c) == _monic(g * c)

    def test_divexact_roundtrip(self):
        rng = random.Random(12)
        for t in range(100):
            field = FIELDS[t % len(FIELDS)]
            a = random_param_poly(rng, field, 2, 3, nonzero=True)
            b = random_param_poly(rng, field, 2, 3, nonzero=True)
            assert poly_divexact(a * b, b) == a

    def test_divexact_rejects_inexact(self):
        s, u = ParamPoly.var(Q_su, 0), ParamPoly.var(Q_su, 1)
        with pytest.raises(ValueError):
            poly_divexact(s * s + ParamPoly.const(Q_su, 1), u)


class TestHasseDerive:
    def test_spec_examples(self):
        s = s_elem()
        assert hasse_derive((1,), s**2) == 2 * s
        assert hasse_derive((2,), s**2) == BaseElem.one(Q_s)
        assert hasse_derive((2,), 1 / s) == 1 / s**3
        t = s_elem(F5_s)
        assert not hasse_derive((1,), t**5)

    def test_derived_example_reads_off_series(self):
        # D_(2)(1/s) equals the t^2 coefficient of the series inverse of e(s)
        s = s_elem()
        series = trunc_inverse(twist_expand(s, 2))
        assert hasse_derive((2,), 1 / s) == series.coeff_or((2,), None)

    def test_identity_at_zero(self):
        rng = random.Random(3)
        for field in FIELDS:
            a = random_base_elem(rng, field)
            n = field.derivation_count
            assert hasse_derive((0,) * n, a) == a

    def test_iterativity(self):
        rng = random.Random(5)
        for t in range(150):
            field = FIELDS[t % len(FIELDS)]
            n = field.derivation_count
            a = random_base_elem(rng, field)
            alpha = random_multiindex(rng, n, 2)
            beta = random_multiindex(rng, n, 2)
            lhs = hasse_derive(alpha, hasse_derive(beta, a))
            rhs = hasse_derive(index_add(alpha, beta), a) * comp_coeff(alpha, beta, field)
            assert lhs == rhs

    def test_commutativity_of_families(self):
        rng = random.Random(7)
        for _ in range(60):
            a = random_base_elem(rng, Q_su)
            d1 = lambda x: hasse_derive((1, 0), x)
            d2 = lambda x: hasse_derive((0, 1), x)
            assert d1(d2(a)) == d2(d1(a))

    def test_generalized_leibniz(self):
        rng = random.Random(9)
        for t in range(120):
            field = FIELDS[t % len(FIELDS)]
            n = field.derivation_count
            a = random_base_elem(rng, field)
            b = random_base_elem(rng, field)
            alpha = random_multiindex(rng, n, 3)
            total = BaseElem.zero(field)
            for be, ga in splittings(alpha):
                total = total + hasse_derive(be, a) * hasse_derive(ga, b)
            assert hasse_derive(alpha, a * b) == total

    def test_quotient_rule_matches_series_inversion(self):
        rng = random.Random(13)
        for t in range(80):
            field = FIELDS[t % 3]
            n = field.derivation_count
            b = random_nonzero_base_elem(rng, field)
            inv_series = trunc_inverse(twist_expand(b, 3))
            alpha = random_multiindex(rng, n, 3)
            got = hasse_derive(alpha, 1 / b)
            want = inv_series.coeff_or(alpha, BaseElem.zero(field))
            assert got == want

    def test_inverse_derivative_convolution_vanishes(self):
        # sum_{i<=n} D_i(b) D_{n-i}(1/b) = 0 for n >= 1, the relation the
        # quotient rule solves
        rng = random.Random(17)
        for _ in range(40):
            b = random_nonzero_base_elem(rng, Q_s)
            for n in range(1, 4):
                total = BaseElem.zero(Q_s)
                for i in range(n + 1):
                    total = total + hasse_derive((i,), b) * hasse_derive((n - i,), 1 / b)
                assert not total

    def test_char_p_frobenius_kernel(self):
        rng = random.Random(19)
        for p in (2, 3, 5):
            field = FieldDescriptor(p, ("s",), 1)
            for _ in range(30):
                a = random_base_elem(rng, field)
                assert not hasse_derive((1,), a**p)

    def test_extra_parameters_are_constants(self):
        # derivation count below the parameter count: the tail is inert
        field = FieldDescriptor(0, ("s", "u"), 1)
        s, u = BaseElem.param(field, "s"), BaseElem.param(field, "u")
        assert not hasse_derive((1,), u)
        assert hasse_derive((1,), u * s**2) == 2 * s * u
        assert hasse_derive((2,), u / s) == u / s**3
        rng = random.Random(21)
        for _ in range(30):
            a = random_base_elem(rng, field)
            b = random_base_elem(rng, field)
            total = BaseElem.zero(field)
            for k in range(3):
                total = total + hasse_derive((k,), a) * hasse_derive((2 - k,), b)
            assert hasse_derive((2,), a * b) == total


class TestRendering:
    def test_polynomial_prints_without_slash(self):
        s = s_elem()
        assert (s**2 - s).render() == "s^2 - s"

    def test_quotient_prints_with_slash(self):
        s = s_elem()
        assert (1 / s**2).render() == "1/s^2"
        assert ((s + 2) / s).render() == "(s + 2)/s"
