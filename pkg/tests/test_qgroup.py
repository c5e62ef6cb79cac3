"""Tests for the quantum matrix group and covariance."""

import unittest

import pytest

from ndc2.algebra import Expr, eta, word_expr, xi
from ndc2.exceptions import DomainError
from ndc2.normal_form import plane_relation
from ndc2.parser import parse
from ndc2.qgroup import (
    QExpr,
    QLetter,
    TensorExpr,
    check_covariance,
    check_qconfluence,
    q_pair_canonical,
    qnormalize,
    quantum_matrix_system,
    tensor_normalize,
    transform,
)
from ndc2.scalars import NumericContext, ScalarContext

A, B, C, D = QLetter


class TestQuantumMatrixRules(unittest.TestCase):
    """Test the commutation relations of the matrix entries."""

    def setUp(self):
        """Set up test variables."""
        self.ctx = ScalarContext()
        self.system = quantum_matrix_system(self.ctx)
        self.p = self.ctx["p"]
        self.q = self.ctx["q"]
        self.one = self.ctx.one

    def test_pair_order(self):
        """Test that alphabetical pairs are canonical."""
        self.assertTrue(q_pair_canonical(A, D))
        self.assertTrue(q_pair_canonical(B, B))
        self.assertFalse(q_pair_canonical(D, A))

    def test_single_rules(self):
        """Test each rewrite of a pair of entries."""
        self.assertEqual(self.system.rewrite_pair(B, A), QExpr.monomial((A, B), self.one / self.p))
        self.assertEqual(
            self.system.rewrite_pair(C, B), QExpr.monomial((B, C), self.p / self.q)
        )
        self.assertEqual(
            self.system.rewrite_pair(D, A),
            QExpr([((A, D), self.one), ((B, C), -(self.p - self.one / self.q))]),
        )
        self.assertEqual(self.system.rule_for(D, A).source, "GL_qp(2)")

    def test_three_letter_word(self):
        """Test the normal form of D B A."""
        result = qnormalize(self.system, parse("D*B*A", self.ctx, mode="qgroup"))
        expected = QExpr(
            [
                ((A, B, D), self.one / (self.p * self.q)),
                ((B, B, C), -(self.p * self.q - self.one) / self.q**2),
            ]
        )
        self.assertEqual(result, expected)

    def test_rejects_differentials(self):
        """Test that the matrix system only accepts matrix entries."""
        with self.assertRaises(DomainError):
            self.system.normalize(QExpr.monomial((xi(0),), self.one))
        with self.assertRaises(DomainError):
            self.system.normalize(word_expr((xi(0),), self.one))


def test_commuting_limit():
    """Test that D and A commute when p = q = 1."""
    numeric = quantum_matrix_system(NumericContext({"p": 1, "q": 1}))
    assert numeric.normalize(QExpr.monomial((D, A), 1)) == QExpr.monomial((A, D), 1)


def test_qconfluence(ctx):
    """Test that the matrix rules resolve every overlap."""
    report = check_qconfluence(quantum_matrix_system(ctx), max_len=4)
    assert report.passed
    assert report.words_checked == 4 + 16 + 64 + 256


def test_transform_letters(ctx):
    """Test the coaction on single differentials."""
    one = ctx.one
    assert transform(word_expr((xi(0),), one), one) == TensorExpr(
        [(((A,), (xi(0),)), one), (((B,), (eta(0),)), one)]
    )
    assert transform(word_expr((eta(2),), one), one) == TensorExpr(
        [(((C,), (xi(2),)), one), (((D,), (eta(2),)), one)]
    )
    assert len(transform(word_expr((xi(0), eta(0)), one), one)) == 4


def test_transform_rejects_derivatives(ctx, expr):
    """Test that only differentials transform."""
    with pytest.raises(DomainError):
        transform(expr("dxi[0]"), ctx.one)


def test_tensor_product(ctx):
    """Test factorwise multiplication."""
    one = ctx.one
    left = TensorExpr([(((A,), (xi(0),)), one)])
    right = TensorExpr([(((B,), (eta(0),)), ctx["q"])])
    assert left * right == TensorExpr([(((A, B), (xi(0), eta(0))), ctx["q"])])
    with pytest.raises(DomainError):
        left * word_expr((xi(0),), one)


def test_relations_are_covariant(ctx, plane):
    """Test covariance of the exchange relations at low levels."""
    report = check_covariance(plane, quantum_matrix_system(ctx), max_level=1)
    assert report.passed
    assert report.relations_checked == 10


def test_wrong_relation_is_not_covariant(ctx, plane):
    """Test that a relation with the wrong coefficient leaves a residual."""
    one = ctx.one
    wrong = word_expr((xi(0), eta(0)), one) - word_expr((eta(0), xi(0)), ctx["p"])
    qsystem = quantum_matrix_system(ctx)
    assert tensor_normalize(transform(wrong, one), plane, qsystem)
    right = plane_relation(ctx, "13", 0)
    assert not tensor_normalize(transform(right, one), plane, qsystem)
    assert isinstance(transform(Expr(), one), TensorExpr)
