"""Tests for rewriting to normal form."""

import unittest

import pytest

from ndc2.algebra import Expr, deta, dxi, eta, word_expr, xi
from ndc2.const import GAP_RELATIONS, PLANE_RELATIONS
from ndc2.exceptions import ContractError, DomainError, ResourceBudgetError
from ndc2.helpers import all_words
from ndc2.normal_form import (
    Strategy,
    canonical_pair_order,
    check_confluence,
    generalized_relation,
    noncanonical_pairs,
    plane_relation,
    plane_system,
)
from ndc2.scalars import NumericContext, ScalarContext


def termination_key(word):
    """Position-wise (level, kind) key that every rewrite increases."""
    return tuple((g.level, int(g.kind)) for g in word)


class TestPairOrder(unittest.TestCase):
    """Test the canonical order on adjacent pairs."""

    def test_levels_decrease(self):
        """Test that higher levels stand to the left."""
        self.assertTrue(canonical_pair_order(xi(1), xi(0)))
        self.assertTrue(canonical_pair_order(xi(2), eta(1)))
        self.assertFalse(canonical_pair_order(xi(0), xi(1)))
        self.assertFalse(canonical_pair_order(eta(0), eta(3)))

    def test_equal_levels(self):
        """Test that eta stands before xi at equal level."""
        self.assertTrue(canonical_pair_order(eta(0), xi(0)))
        self.assertTrue(canonical_pair_order(xi(0), xi(0)))
        self.assertTrue(canonical_pair_order(eta(2), eta(2)))
        self.assertFalse(canonical_pair_order(xi(0), eta(0)))

    def test_derivatives_rejected(self):
        """Test that the order is defined on differentials only."""
        with self.assertRaises(DomainError):
            canonical_pair_order(dxi(0), xi(0))


class TestPlaneRules(unittest.TestCase):
    """Test single rewrite steps of the plane system."""

    def setUp(self):
        """Set up test variables."""
        self.ctx = ScalarContext()
        self.system = plane_system(self.ctx)
        self.p = self.ctx["p"]
        self.q = self.ctx["q"]
        self.one = self.ctx.one
        self.correction = self.p * self.q - self.one

    def word(self, *letters, coeff=None):
        """Build a single-word expression."""
        return word_expr(letters, self.one if coeff is None else coeff)

    def test_same_level(self):
        """Test the exchange of xi and eta at one level."""
        self.assertEqual(
            self.system.rewrite_pair(xi(0), eta(0)), self.word(eta(0), xi(0), coeff=self.q)
        )

    def test_adjacent_levels(self):
        """Test the relations between neighbouring levels."""
        pq = self.p * self.q
        self.assertEqual(
            self.system.rewrite_pair(xi(0), xi(1)), self.word(xi(1), xi(0), coeff=pq)
        )
        self.assertEqual(
            self.system.rewrite_pair(eta(0), eta(1)), self.word(eta(1), eta(0), coeff=pq)
        )
        self.assertEqual(
            self.system.rewrite_pair(eta(0), xi(1)), self.word(xi(1), eta(0), coeff=self.p)
        )
        self.assertEqual(
            self.system.rewrite_pair(xi(0), eta(1)),
            self.word(eta(1), xi(0), coeff=self.q)
            + self.word(xi(1), eta(0), coeff=self.correction),
        )

    def test_level_gap(self):
        """Test a relation across a gap of two levels."""
        self.assertEqual(
            self.system.rewrite_pair(xi(0), xi(2)),
            self.word(xi(2), xi(0), coeff=self.p * self.q)
            + self.word(xi(1), xi(1), coeff=self.correction),
        )

    def test_rule_sources(self):
        """Test that rules carry the id of the relation they come from."""
        self.assertEqual(self.system.rule_for(xi(0), eta(0)).source, "13")
        self.assertEqual(self.system.rule_for(xi(0), xi(1)).source, "14")
        self.assertEqual(self.system.rule_for(xi(0), eta(1)).source, "17")
        self.assertEqual(self.system.rule_for(xi(0), xi(2)).source, "19")
        self.assertEqual(self.system.rule_for(xi(1), eta(4)).source, "22")
        self.assertIsNone(self.system.rule_for(eta(0), xi(0)))

    def test_canonical_pair_contract(self):
        """Test that rewriting a canonical pair violates the contract."""
        with self.assertRaises(ContractError):
            self.system.rewrite_pair(eta(0), xi(0))
        with self.assertRaises(ContractError):
            self.system.rewrite_pair(xi(3), xi(1))

    def test_rules_increase_termination_order(self):
        """Test that every rule preserves length and degree and moves up the order."""
        for a, b in noncanonical_pairs(5, 5):
            lhs = (a, b)
            for word, _ in self.system.rewrite_pair(a, b):
                self.assertEqual(len(word), 2)
                self.assertEqual(word[0].level + word[1].level, a.level + b.level)
                self.assertGreater(termination_key(word), termination_key(lhs))


def test_normalize_examples(ctx, plane, expr):
    """Test normal forms of small expressions."""
    # Verify the same-level exchange
    assert plane.normalize(expr("xi[0]*eta[0]")) == expr("q*eta[0]*xi[0]")
    assert plane.normalize(expr("xi[0]*eta[0]*xi[0]")) == expr("q*eta[0]*xi[0]*xi[0]")
    assert plane.normalize(expr("xi[0]*xi[1]")) == expr("p*q*xi[1]*xi[0]")
    assert plane.normalize(Expr()) == 0
    assert plane.normalize(expr("3")) == expr("3")


def test_normalize_is_idempotent(plane):
    """Test that normal forms are fixed points."""
    for word in all_words(3, 1):
        nf = plane.normalize(word_expr(word, plane.ctx.one))
        assert plane.is_normal(nf)
        assert plane.normalize(nf) == nf


def test_normalize_rejects_derivatives(plane):
    """Test that derivative letters are outside the plane system."""
    with pytest.raises(DomainError):
        plane.normalize(word_expr((dxi(0), xi(0)), plane.ctx.one))
    with pytest.raises(DomainError):
        plane.normalize(word_expr((deta(1),), plane.ctx.one))


def test_strategies_agree(plane):
    """Test that leftmost, rightmost and random rewriting agree."""
    one = plane.ctx.one
    for word in [
        (xi(0), xi(1), xi(2)),
        (xi(0), eta(1), xi(2), eta(0)),
        (eta(0), eta(0), xi(2), xi(1)),
    ]:
        e = word_expr(word, one)
        leftmost = plane.normalize(e, Strategy.LEFTMOST)
        assert plane.normalize(e, Strategy.RIGHTMOST) == leftmost
        for seed in range(3):
            assert plane.normalize(e, Strategy.RANDOM, seed=seed) == leftmost


def test_step_budget_exhausted(ctx, expr):
    """Test that rewriting stops once its budget is spent."""
    system = plane_system(ctx, step_budget=2)
    with pytest.raises(ResourceBudgetError) as caught:
        system.normalize(expr("xi[0]*xi[1]*xi[2]"))
    assert caught.value.budget == 2


def test_step_budget_random_strategy(ctx, expr):
    """Test that the random strategy honours the budget too."""
    system = plane_system(ctx, step_budget=1)
    with pytest.raises(ResourceBudgetError):
        system.normalize(expr("xi[0]*xi[1]*xi[2]"), Strategy.RANDOM, seed=0)


def test_plane_relations_are_fixpoints(ctx, plane):
    """Test that every exchange relation normalizes to zero."""
    for eq_id in PLANE_RELATIONS:
        for n in range(4):
            assert plane.normalize(plane_relation(ctx, eq_id, n)) == 0, (eq_id, n)


def test_generalized_relations_are_fixpoints(ctx, plane):
    """Test the relations across larger level gaps."""
    for eq_id in GAP_RELATIONS:
        for n in range(4):
            for m in range(n + 1, n + 4):
                assert plane.normalize(generalized_relation(ctx, eq_id, n, m)) == 0, (eq_id, n, m)


def test_relation_arguments(ctx):
    """Test that relation builders reject bad arguments."""
    with pytest.raises(DomainError):
        generalized_relation(ctx, "19", 2, 2)
    with pytest.raises(DomainError):
        plane_relation(ctx, "99", 0)


def test_small_confluence(ctx):
    """Test confluence over a small exhaustive set and random samples."""
    report = check_confluence(plane_system(ctx), max_level=2, word_len=3, samples=25, seed=1)
    assert report.passed
    assert report.words_checked == 6**3 + 25


def test_memo_released_past_cache_size(ctx, plane, expr):
    """Test that normalize forgets its memo once it outgrows the cache size."""
    system = plane_system(ctx, cache_size=1)
    e = expr("xi[0]*xi[1]*xi[2]")

    assert system.normalize(e) == plane.normalize(e)

    # Verify
    assert system.cache_entries() == 0
    system.normalize(expr("xi[1]"))
    assert system.cache_entries() == 1
    system.clear_cache()
    assert system.cache_entries() == 0


def test_foreign_coefficients_rejected(ctx, general_ctx, plane):
    """Test that coefficients from another scalar context are domain errors."""
    ours = Expr.monomial((xi(0),), ctx["p"])
    theirs = Expr.monomial((xi(0),), general_ctx["p"])
    with pytest.raises(DomainError):
        ours + theirs
    with pytest.raises(DomainError):
        ours * theirs
    with pytest.raises(DomainError):
        plane.normalize(theirs)
    with pytest.raises(DomainError):
        plane_system(NumericContext({"p": 2, "q": 3})).normalize(ours)
    # Integer coefficients mix with any context
    assert ours + Expr.monomial((xi(0),), 1) == Expr.monomial((xi(0),), ctx["p"] + 1)
