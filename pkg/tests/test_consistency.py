"""Tests for the relations with free coefficients."""

import unittest

import pytest

from ndc2.algebra import Expr, eta, word_expr, xi
from ndc2.consistency import (
    GeneralRelationSet,
    check_condition10,
    compute_obstructions,
    condition10_assignment,
    derive_eq9,
    general_context,
    plane_assignment,
    substitute_expr,
)
from ndc2.exceptions import DomainError
from ndc2.scalars import ScalarContext


def find(report, probe):
    """Return the obstruction of a named probe, None if it vanished."""
    for obstruction in report.obstructions:
        if obstruction.probe == probe:
            return obstruction
    return None


class TestGeneralRelations(unittest.TestCase):
    """Test the relation set with free C1..C4."""

    @classmethod
    def setUpClass(cls):
        """Set up shared test variables."""
        cls.ctx = general_context()
        cls.c1, cls.c2, cls.c3, cls.c4 = (cls.ctx[name] for name in ("C1", "C2", "C3", "C4"))
        cls.one = cls.ctx.one
        cls.k = cls.c1 * cls.c4 - cls.one
        cls.free = GeneralRelationSet(cls.ctx)
        cls.report = compute_obstructions(cls.free)

    def test_window(self):
        """Test the generators and relations of the level window."""
        self.assertEqual(self.free.window, (0, 1))
        self.assertEqual(self.free.generators(), [xi(0), eta(0), xi(1), eta(1)])
        ids = [(eq_id, level) for eq_id, level, _ in self.free.instances()]
        self.assertEqual(ids, [("5", 0), ("5", 1), ("6", 0), ("7", 0), ("8", 0), ("9", 0)])

    def test_relation_text(self):
        """Test LHS - RHS of the derived relation."""
        self.assertEqual(
            self.free.relation("9"),
            word_expr((xi(0), eta(1)), self.one)
            - word_expr((eta(1), xi(0)), self.c1)
            - word_expr((xi(1), eta(0)), self.k),
        )
        with self.assertRaises(DomainError):
            self.free.relation("5", level=2)
        with self.assertRaises(DomainError):
            self.free.relation("42")

    def test_derive_eq9(self):
        """Test that d of the same-level relation yields the xi eta+1 relation."""
        identity = derive_eq9(self.ctx)
        self.assertEqual(identity.lhs, (xi(0), eta(1)))
        self.assertEqual(
            identity.rhs,
            word_expr((eta(1), xi(0)), self.c1) + word_expr((xi(1), eta(0)), self.k),
        )
        self.assertEqual(identity.as_relation(self.one), self.free.relation("9"))

    def test_derive_eq9_higher_window(self):
        """Test the derivation on the window of levels 2 and 3."""
        identity = derive_eq9(self.ctx, base_level=2)
        self.assertEqual(
            identity.rhs,
            word_expr((eta(3), xi(2)), self.c1) + word_expr((xi(3), eta(2)), self.k),
        )

    def test_free_coefficients_are_obstructed(self):
        """Test the two residuals of the free relation set."""
        self.assertFalse(self.report.consistent)
        right = find(self.report, "(5 at level 0) * eta[1]")
        self.assertIsNotNone(right)
        self.assertEqual(
            right.residual,
            word_expr((xi(1), eta(0), eta(0)), self.k * (self.c3 - self.c1 * self.c4)),
        )
        left = find(self.report, "xi[0] * (5 at level 1)")
        self.assertIsNotNone(left)
        self.assertEqual(
            left.residual,
            word_expr((xi(1), xi(1), eta(0)), self.k * (self.c2 - self.c1 * self.c4)),
        )
        self.assertIsNone(find(self.report, "d(5 at level 0)"))

    def test_factored_residual(self):
        """Test factored rendering of a residual."""
        right = find(self.report, "(5 at level 0) * eta[1]")
        ((word, text),) = right.factored()
        self.assertEqual(word, (xi(1), eta(0), eta(0)))
        self.assertIn("C1*C4 - 1", text)

    def test_condition10(self):
        """Test that C2 = C3 = C1 C4 removes every residual."""
        result = check_condition10(self.report, self.ctx)
        self.assertTrue(result.verified)
        self.assertEqual(len(result.witness), len(self.report.obstructions))
        self.assertEqual(result.remaining, [])

    def test_one_sided_substitution_leaves_residuals(self):
        """Test that substituting only C2 or only C3 is not enough."""
        product = self.c1 * self.c4
        self.assertFalse(check_condition10(self.report, self.ctx, {"C2": product}).verified)
        self.assertFalse(check_condition10(self.report, self.ctx, {"C3": product}).verified)

    def test_specialized_set_is_consistent(self):
        """Test the relation set with C2 and C3 fixed to C1 C4."""
        specialized = GeneralRelationSet(self.ctx, condition10_assignment(self.ctx))
        self.assertTrue(compute_obstructions(specialized).consistent)


def test_plane_values_are_consistent(general_ctx):
    """Test that the two-parameter plane satisfies the conditions."""
    relations = GeneralRelationSet(general_ctx, plane_assignment(general_ctx))
    assert compute_obstructions(relations).consistent


def test_violated_condition(general_ctx):
    """Test that C2 = 2pq breaks consistency."""
    assignment = plane_assignment(general_ctx)
    assignment["C2"] = 2 * general_ctx["p"] * general_ctx["q"]
    report = compute_obstructions(GeneralRelationSet(general_ctx, assignment))
    assert not report.consistent


def test_d_probe_without_derived_relation(general_ctx):
    """Test that without the xi eta+1 relation, d leaves exactly that relation behind."""
    partial = GeneralRelationSet(general_ctx, include_xi_eta=False)
    report = compute_obstructions(partial)
    d_probe = find(report, "d(5 at level 0)")
    assert d_probe is not None
    assert d_probe.residual == GeneralRelationSet(general_ctx).relation("9")
    with pytest.raises(DomainError):
        partial.relation("9")


def test_substitute_expr(general_ctx):
    """Test substitution in every coefficient."""
    c1 = general_ctx["C1"]
    e = word_expr((xi(0),), c1) + word_expr((eta(0),), c1 * c1)
    q = general_ctx["q"]
    assert substitute_expr(general_ctx, e, {"C1": q}) == word_expr((xi(0),), q) + word_expr(
        (eta(0),), q * q
    )
    assert substitute_expr(general_ctx, Expr(), {"C1": q}) == 0


def test_context_needs_free_coefficients():
    """Test that the relation set needs C1..C4 in its context."""
    with pytest.raises(DomainError):
        GeneralRelationSet(ScalarContext())
