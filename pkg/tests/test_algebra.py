"""Tests for the free algebra of differentials."""

import unittest

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from ndc2.algebra import (
    Expr,
    Generator,
    Kind,
    constant_expr,
    degree,
    deta,
    dxi,
    eta,
    expr_add,
    expr_mul,
    generator_expr,
    max_level,
    scalar_scale,
    split_by_degree,
    word_expr,
    word_text,
    xi,
)
from ndc2.const import DEFAULT_LEVEL_BOUND
from ndc2.exceptions import DomainError
from ndc2.helpers import all_words, commutative_image, differential_alphabet
from ndc2.scalars import ScalarContext

CTX = ScalarContext()
ONE = CTX.one

letters = st.builds(
    Generator, st.sampled_from([Kind.XI, Kind.ETA]), st.integers(min_value=0, max_value=3)
)
words = st.lists(letters, min_size=1, max_size=3).map(tuple)
exprs = st.lists(
    st.tuples(words, st.integers(min_value=-3, max_value=3)), max_size=3
).map(lambda items: Expr((w, CTX.from_int(c)) for w, c in items))


class TestGenerator(unittest.TestCase):
    """Test generator construction and naming."""

    def test_levels_are_validated(self):
        """Test that levels must be non-negative integers within the bound."""
        with self.assertRaises(DomainError):
            xi(-1)
        with self.assertRaises(DomainError):
            eta(DEFAULT_LEVEL_BOUND + 1)
        with self.assertRaises(DomainError):
            Generator(Kind.XI, 1.5)
        self.assertEqual(xi(DEFAULT_LEVEL_BOUND).level, DEFAULT_LEVEL_BOUND)

    def test_text(self):
        """Test the textual names of generators."""
        self.assertEqual(str(xi(0)), "xi[0]")
        self.assertEqual(str(deta(12)), "deta[12]")
        self.assertEqual(word_text((xi(1), eta(0))), "xi[1]*eta[0]")
        self.assertEqual(word_text(()), "1")

    def test_derivative_pairing(self):
        """Test moving between differentials and their derivatives."""
        self.assertEqual(xi(2).derivative(), dxi(2))
        self.assertEqual(deta(1).differential(), eta(1))
        self.assertTrue(dxi(0).is_derivative)
        self.assertFalse(eta(0).is_derivative)
        with self.assertRaises(DomainError):
            dxi(0).derivative()
        with self.assertRaises(DomainError):
            xi(0).differential()

    def test_kind_labels(self):
        """Test looking kinds up by label."""
        self.assertIs(Kind.from_label("deta"), Kind.DETA)
        self.assertEqual(Kind.ETA.label, "eta")
        with self.assertRaises(DomainError):
            Kind.from_label("zeta")

    def test_raised(self):
        """Test raising a generator one level."""
        self.assertEqual(eta(3).raised(), eta(4))


class TestExpr(unittest.TestCase):
    """Test sums and products of words."""

    def setUp(self):
        """Set up test variables."""
        self.p = CTX["p"]
        self.q = CTX["q"]
        self.x0 = generator_expr(xi(0), ONE)
        self.y0 = generator_expr(eta(0), ONE)
        self.x1 = generator_expr(xi(1), ONE)

    def test_product_concatenates(self):
        """Test that products concatenate words without rewriting."""
        self.assertEqual(expr_mul(self.x0, self.y0), word_expr((xi(0), eta(0)), ONE))
        self.assertEqual(
            expr_mul(expr_add(self.x0, self.y0), self.x1),
            Expr([((xi(0), xi(1)), ONE), ((eta(0), xi(1)), ONE)]),
        )
        self.assertNotEqual(expr_mul(self.x0, self.y0), expr_mul(self.y0, self.x0))

    def test_coefficients_accumulate(self):
        """Test that equal words are merged."""
        word = (xi(1), eta(0))
        total = expr_add(word_expr(word, self.p * self.q - ONE), word_expr(word, ONE))
        self.assertEqual(total, word_expr(word, self.p * self.q))

    def test_zero_pruning(self):
        """Test that cancelling terms leave no zero coefficients."""
        e = self.x0 + self.y0
        self.assertEqual(e - e, Expr())
        self.assertEqual(e - e, 0)
        self.assertFalse(e - e)
        self.assertEqual(len(self.x0 - self.x0 + self.y0), 1)

    def test_constant_and_scaling(self):
        """Test scalar embeddings."""
        two = CTX.from_int(2)
        self.assertEqual(constant_expr(two).scalar_part(), two)
        self.assertTrue(constant_expr(two).is_scalar())
        self.assertEqual(scalar_scale(self.q, self.x0), word_expr((xi(0),), self.q))
        self.assertEqual(scalar_scale(CTX.zero, self.x0), 0)
        self.assertEqual(2 * self.x0, self.x0 + self.x0)

    def test_power(self):
        """Test repeated concatenation."""
        self.assertEqual(self.x0**3, word_expr((xi(0), xi(0), xi(0)), ONE))
        with self.assertRaises(DomainError):
            self.x0**0

    def test_derivative_letters(self):
        """Test detection of derivative letters."""
        e = word_expr((dxi(0), xi(0)), ONE)
        self.assertFalse(e.is_derivative_free())
        self.assertTrue(self.x0.is_derivative_free())
        with self.assertRaises(DomainError):
            e.require_derivative_free("normalize")


def test_degree():
    """Test the grading by total level."""
    assert degree((xi(2), eta(1), xi(0))) == 3
    assert degree(()) == 0
    with pytest.raises(DomainError):
        degree((xi(0), deta(1)))


def test_max_level():
    """Test the largest level of an expression."""
    e = word_expr((xi(0), eta(3)), ONE) + word_expr((xi(1),), ONE)
    assert max_level(e) == 3
    assert max_level(Expr()) == 0


def test_split_by_degree():
    """Test grouping of terms by degree."""
    e = word_expr((xi(0), eta(1)), ONE) + word_expr((xi(1), eta(0)), ONE) + word_expr(
        (xi(2),), ONE
    )
    groups = split_by_degree(e)
    assert set(groups) == {1, 2}
    assert len(groups[1]) == 2


def test_all_words_count():
    """Test enumeration of words by length and level."""
    assert len(differential_alphabet(1)) == 4
    assert len(list(all_words(2, 1))) == 4 + 16
    assert len(list(all_words(2, 0, min_len=2))) == 4


def test_commutative_image():
    """Test that the commutative image forgets letter order."""
    e = word_expr((eta(0), xi(0)), ONE) - word_expr((xi(0), eta(0)), ONE)
    assert commutative_image(e) == 0


@settings(max_examples=60, deadline=None)
@given(exprs, exprs, exprs)
def test_product_is_associative(a, b, c):
    """Test associativity and distributivity of the free product."""
    assert (a * b) * c == a * (b * c)
    assert a * (b + c) == a * b + a * c


@settings(max_examples=60, deadline=None)
@given(words, words)
def test_degree_is_additive(u, v):
    """Test that degree adds under concatenation."""
    assert degree(u + v) == degree(u) + degree(v)
