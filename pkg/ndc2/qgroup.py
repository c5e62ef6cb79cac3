"""The quantum matrix group GL_qp(2) and covariance of the exchange relations.

The matrix entries A, B, C, D act on the differentials at every level by
xi -> A xi + B eta, eta -> C xi + D eta. Entries commute with differentials,
so the transformed relations live in a tensor product and vanish once both
factors are normal ordered.
"""

from __future__ import annotations

import itertools
import logging
from dataclasses import dataclass, field
try:
    from enum import StrEnum
except ImportError:  # Python < 3.11
    from enum import Enum

    class StrEnum(str, Enum):
        """Backport of enum.StrEnum for Python < 3.11."""

        __str__ = str.__str__
        __format__ = str.__format__
from typing import Any

from .algebra import Combination, Expr, Kind, Word, eta, word_sort_key, word_text, xi
from .const import DEFAULT_COVARIANCE_MAX_LEVEL, DEFAULT_QCONFLUENCE_LEN, PLANE_RELATIONS
from .exceptions import DomainError
from .normal_form import (
    ConfluenceReport,
    Discrepancy,
    RewriteSystem,
    Rule,
    Strategy,
    plane_relation,
)

_LOGGER = logging.getLogger(__name__)


class QLetter(StrEnum):
    """Entries of the quantum matrix, in normal order."""

    A = "A"
    B = "B"
    C = "C"
    D = "D"


QWord = tuple[QLetter, ...]


class QExpr(Combination):
    """Formal sum of words in the matrix entries."""

    __slots__ = ()


class TensorExpr(Combination):
    """Formal sum of (matrix word, differential word) pairs."""

    __slots__ = ()

    @staticmethod
    def sort_key(key: tuple[Any, ...]) -> Any:
        """Sort by the differential word, then by the matrix word."""
        qword, word = key
        return word_sort_key(word), len(qword), qword

    def __repr__(self) -> str:
        """Return a debugging representation."""
        inner = ", ".join(
            f"{word_text(q)} (x) {word_text(w)}: {c}" for (q, w), c in self.sorted_items()
        )
        return f"TensorExpr({{{inner}}})"

    def __mul__(self, other: Any) -> TensorExpr:
        """Multiply factorwise, or scale by a scalar."""
        if isinstance(other, TensorExpr):
            return TensorExpr(
                ((q1 + q2, w1 + w2), c1 * c2)
                for (q1, w1), c1 in self.terms.items()
                for (q2, w2), c2 in other.terms.items()
            )
        if isinstance(other, Combination):
            raise DomainError(f"cannot multiply TensorExpr by {type(other).__name__}")
        return self.scale(other)


def q_pair_canonical(a: QLetter, b: QLetter) -> bool:
    """Return whether a pair of matrix entries is in alphabetical order."""
    return a <= b


class QuantumMatrixRules:
    """Rule source for the commutation relations of GL_qp(2)."""

    def __init__(self, ctx: Any) -> None:
        """Initialize from a scalar context providing ``p`` and ``q``."""
        p, q, one = ctx["p"], ctx["q"], ctx.one
        A, B, C, D = QLetter
        self._table: dict[tuple[QLetter, QLetter], list[tuple[QWord, Any]]] = {
            (B, A): [((A, B), one / p)],
            (C, A): [((A, C), one / q)],
            (C, B): [((B, C), p / q)],
            (D, C): [((C, D), one / p)],
            (D, B): [((B, D), one / q)],
            (D, A): [((A, D), one), ((B, C), -(p - one / q))],
        }

    def __call__(self, a: QLetter, b: QLetter) -> Rule | None:
        """Return the rule for a pair, None when it is in order."""
        terms = self._table.get((a, b))
        if terms is None:
            return None
        return Rule((a, b), QExpr(terms), "GL_qp(2)")


def _require_qletters(e: Combination) -> None:
    for word, _ in e:
        for letter in word:
            if not isinstance(letter, QLetter):
                raise DomainError(f"{letter!r} is not a quantum matrix entry")


def quantum_matrix_system(ctx: Any, **kwargs: Any) -> RewriteSystem:
    """Return the rewrite system of the quantum matrix entries."""
    kwargs.setdefault("name", "quantum matrices")
    kwargs.setdefault("validate", _require_qletters)
    return RewriteSystem(
        ctx, QuantumMatrixRules(ctx), q_pair_canonical, expr_type=QExpr, **kwargs
    )


def qnormalize(system: RewriteSystem, e: QExpr) -> QExpr:
    """Return the normal form of a matrix-entry expression."""
    return system.normalize(e)


def transform(e: Expr, one: Any) -> TensorExpr:
    """Apply the coaction xi -> A xi + B eta, eta -> C xi + D eta to every letter."""
    e.require_derivative_free("transform")
    A, B, C, D = QLetter
    result = TensorExpr()
    for word, coeff in e:
        image = TensorExpr([(((), ()), coeff)])
        for g in word:
            first, second = (A, B) if g.kind is Kind.XI else (C, D)
            image = image * TensorExpr(
                [(((first,), (xi(g.level),)), one), (((second,), (eta(g.level),)), one)]
            )
        result = result + image
    return result


def tensor_normalize(t: TensorExpr, plane: RewriteSystem, qsystem: RewriteSystem) -> TensorExpr:
    """Normal-order the differential factor, then the matrix factor."""
    staged: list[tuple[tuple[QWord, Word], Any]] = []
    for (qword, word), coeff in t:
        for normal_word, value in plane.normalize(Expr.monomial(word, coeff)):
            staged.append(((qword, normal_word), value))
    result: list[tuple[tuple[QWord, Word], Any]] = []
    for (qword, word), coeff in TensorExpr(staged):
        for normal_qword, value in qsystem.normalize(QExpr.monomial(qword, coeff)):
            result.append(((normal_qword, word), value))
    return TensorExpr(result)


@dataclass
class CovarianceResidual:
    """A relation whose transform does not vanish."""

    relation: str
    level: int
    residual: TensorExpr


@dataclass
class CovarianceReport:
    """Outcome of the covariance check."""

    relations_checked: int = 0
    residuals: list[CovarianceResidual] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        """Whether every transformed relation vanished."""
        return not self.residuals


def check_covariance(
    plane: RewriteSystem,
    qsystem: RewriteSystem,
    max_level: int = DEFAULT_COVARIANCE_MAX_LEVEL,
) -> CovarianceReport:
    """Transform every exchange relation up to ``max_level`` and normalize the result."""
    report = CovarianceReport()
    ctx = plane.ctx
    for level in range(max_level + 1):
        for relation in PLANE_RELATIONS:
            image = transform(plane_relation(ctx, relation, level), ctx.one)
            residual = tensor_normalize(image, plane, qsystem)
            report.relations_checked += 1
            if residual:
                _LOGGER.warning("Relation %s at level %d is not covariant", relation, level)
                report.residuals.append(CovarianceResidual(relation, level, residual))
    _LOGGER.info(
        "Covariance: %d relations checked, %d residuals",
        report.relations_checked,
        len(report.residuals),
    )
    return report


def check_qconfluence(
    qsystem: RewriteSystem, max_len: int = DEFAULT_QCONFLUENCE_LEN
) -> ConfluenceReport:
    """Normalize every matrix word up to ``max_len`` under both deterministic strategies."""
    report = ConfluenceReport()
    one = qsystem.ctx.one
    for length in range(1, max_len + 1):
        for qword in itertools.product(QLetter, repeat=length):
            e = QExpr.monomial(qword, one)
            leftmost = qsystem.normalize(e, Strategy.LEFTMOST)
            rightmost = qsystem.normalize(e, Strategy.RIGHTMOST)
            report.words_checked += 1
            if leftmost != rightmost:
                report.discrepancies.append(Discrepancy(qword, leftmost, rightmost))
    return report
