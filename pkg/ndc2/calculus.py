"""Partial derivatives and the exterior differential on the quantum plane.

A derivative d/dxi^m or d/deta^m is moved rightward through a word letter by
letter with the exchange rules below (m is the derivative level, n the level of
the letter it passes, Q = pq, c = pq - 1). Upper branches carry infinite sums;
terms whose derivative level exceeds the largest level still to the right can
never meet a matching letter again and are dropped.
"""

from __future__ import annotations

import logging
from collections.abc import Iterable, Iterator
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

from .algebra import Expr, Generator, Kind, Word, deta, dxi, eta, max_level, word_text, xi
from .const import (
    DEFAULT_EQUIVALENCE_MAX_LEN,
    DEFAULT_EQUIVALENCE_MAX_LEVEL,
    DEFAULT_LEVEL_BOUND,
    READING_PRINTED,
    READING_SYMMETRIC,
)
from .exceptions import DomainError
from .helpers import all_words
from .normal_form import RewriteSystem

_LOGGER = logging.getLogger(__name__)


class SeriesReading(StrEnum):
    """Readings of the eta term of the upper branch of d/deta^m past eta^n."""

    SYMMETRIC = READING_SYMMETRIC  # c eta^{n+k} d/deta^{m+k}
    PRINTED = READING_PRINTED  # c eta^{m+k} d/deta^{m+k}


@dataclass(frozen=True)
class RuleSchema:
    """One branch of the derivative exchange table."""

    equation: str
    derivative: Kind
    differential: Kind
    condition: str
    schema: str


RULE_SCHEMAS = (
    RuleSchema(
        "27", Kind.DXI, Kind.XI, "m <= n-2",
        "1/Q xi^n dxi^m - c/Q sum_{k=1..m} xi^{n-k} dxi^{m-k}",
    ),
    RuleSchema("28", Kind.DXI, Kind.XI, "m = n-1", "xi^n dxi^m"),
    RuleSchema(
        "29", Kind.DXI, Kind.XI, "m > n-1",
        "delta + Q xi^n dxi^m"
        " + c sum_{k>=1} (xi^{n+k} dxi^{m+k} + eta^{n+k-1} deta^{m+k-1})",
    ),
    RuleSchema(
        "30", Kind.DETA, Kind.XI, "m <= n-2",
        "1/p xi^n deta^m - c/p sum_{k=1..m} xi^{n-k} deta^{m-k}",
    ),
    RuleSchema("31", Kind.DETA, Kind.XI, "m > n-2", "q xi^n deta^m"),
    RuleSchema(
        "32", Kind.DETA, Kind.ETA, "m <= n-2",
        "1/Q eta^n deta^m - c/Q sum_{k=1..m} eta^{n-k} deta^{m-k}",
    ),
    RuleSchema("33", Kind.DETA, Kind.ETA, "m = n-1", "eta^n deta^m"),
    RuleSchema(
        "34", Kind.DETA, Kind.ETA, "m > n-1",
        "delta + Q eta^n deta^m"
        " + c sum_{k>=1} (xi^{n+k} dxi^{m+k} + eta^{n+k} deta^{m+k})",
    ),
    RuleSchema(
        "35", Kind.DXI, Kind.ETA, "m <= n-1",
        "1/q eta^n dxi^m - c/q sum_{k=1..m} eta^{n-k} dxi^{m-k}",
    ),
    RuleSchema(
        "36", Kind.DXI, Kind.ETA, "m = n-1",
        "1/q eta^n dxi^m - c/q sum_{k=1..m} eta^{n-k} dxi^{m-k}",
    ),
    RuleSchema("37", Kind.DXI, Kind.ETA, "m > n-1", "p eta^n dxi^m"),
)

PRINTED_SCHEMA_34 = (
    "delta + Q eta^n deta^m + c sum_{k>=1} (xi^{n+k} dxi^{m+k} + eta^{m+k} deta^{m+k})"
)


class DerivativeRuleSet:
    """Exchange rules moving a derivative past one differential."""

    def __init__(self, ctx: Any, reading: SeriesReading | str = SeriesReading.SYMMETRIC) -> None:
        """Initialize from a scalar context providing ``p`` and ``q``."""
        self.ctx = ctx
        self.reading = SeriesReading(reading)
        p, q, one = ctx["p"], ctx["q"], ctx.one
        self.one = one
        self.p = p
        self.q = q
        self.pq = p * q
        self.correction = self.pq - one
        self._lower = {
            (Kind.DXI, Kind.XI): (one / self.pq, self.correction / self.pq),
            (Kind.DETA, Kind.XI): (one / p, self.correction / p),
            (Kind.DETA, Kind.ETA): (one / self.pq, self.correction / self.pq),
            (Kind.DXI, Kind.ETA): (one / q, self.correction / q),
        }

    def equation_for(self, d: Generator, g: Generator) -> str:
        """Return the id of the rule used for ``d`` passing ``g``."""
        self._check(d, g)
        m, n = d.level, g.level
        if (d.kind, g.kind) == (Kind.DXI, Kind.XI):
            return "27" if m <= n - 2 else "28" if m == n - 1 else "29"
        if (d.kind, g.kind) == (Kind.DETA, Kind.XI):
            return "30" if m <= n - 2 else "31"
        if (d.kind, g.kind) == (Kind.DETA, Kind.ETA):
            return "32" if m <= n - 2 else "33" if m == n - 1 else "34"
        return "35" if m <= n - 1 else "37"

    @staticmethod
    def _check(d: Generator, g: Generator) -> None:
        if not d.is_derivative:
            raise DomainError(f"{d} is not a derivative")
        if g.is_derivative:
            raise DomainError(f"{g} is not a differential")

    def _lower_branch(self, d: Generator, g: Generator) -> list[tuple[Word, Any]]:
        lead, tail = self._lower[(d.kind, g.kind)]
        m, n = d.level, g.level
        terms = [((g, d), lead)]
        terms += [((g.with_level(n - k), d.with_level(m - k)), -tail) for k in range(1, m + 1)]
        return terms

    def _upper_sums(
        self, d: Generator, g: Generator, truncation_level: int
    ) -> Iterator[tuple[Word, Any]]:
        m, n = d.level, g.level
        c = self.correction
        for k in range(1, truncation_level - m + 1):
            yield (xi(n + k), dxi(m + k)), c
        if d.kind is Kind.DXI:
            for k in range(1, truncation_level - m + 2):
                yield (eta(n + k - 1), deta(m + k - 1)), c
        else:
            base = n if self.reading is SeriesReading.SYMMETRIC else m
            for k in range(1, truncation_level - m + 1):
                yield (eta(base + k), deta(m + k)), c

    def commute(self, d: Generator, g: Generator, truncation_level: int) -> Expr:
        """Return ``d g`` rewritten with the derivative moved to the right.

        Args:
            d: Derivative letter
            g: Differential letter it passes
            truncation_level: Sum terms with a derivative above this level are dropped

        Returns:
            Combination of the empty word (Kronecker term) and words ``g' d'``
        """
        equation = self.equation_for(d, g)
        m, n = d.level, g.level
        if equation in ("27", "30", "32", "35"):
            terms = self._lower_branch(d, g)
        elif equation in ("28", "33"):
            terms = [((g, d), self.one)]
        elif equation == "31":
            terms = [((g, d), self.q)]
        elif equation == "37":
            terms = [((g, d), self.p)]
        else:
            terms = [((g, d), self.pq)]
            if m == n:
                terms.append(((), self.one))
            terms += self._upper_sums(d, g, truncation_level)
        return Expr(terms)


def commute_derivative(
    rules: DerivativeRuleSet, d: Generator, g: Generator, truncation_level: int
) -> Expr:
    """Return ``d g`` rewritten with the derivative moved to the right."""
    return rules.commute(d, g, truncation_level)


def leibnitz_raise(f: Expr, level_bound: int = DEFAULT_LEVEL_BOUND) -> Expr:
    """Apply d by the Leibnitz rule, raising each letter in turn, without rewriting."""
    f.require_derivative_free("d")
    terms = []
    for word, coeff in f:
        for i, g in enumerate(word):
            if g.level + 1 > level_bound:
                raise DomainError(f"raising {g} exceeds the level bound {level_bound}")
            terms.append((word[:i] + (g.raised(),) + word[i + 1:], coeff))
    return Expr(terms)


def q_integer(ctx: Any, k: int) -> Any:
    """Return 1 + pq + ... + (pq)^(k-1)."""
    if k < 0:
        raise DomainError(f"q-integer needs k >= 0, got {k}")
    pq = ctx["p"] * ctx["q"]
    return sum((pq**i for i in range(k)), ctx.zero)


class Calculus:
    """Derivatives and the exterior differential over a rewrite system."""

    def __init__(
        self,
        system: RewriteSystem,
        rules: DerivativeRuleSet,
        level_bound: int = DEFAULT_LEVEL_BOUND,
    ) -> None:
        """Initialize the calculus."""
        self.system = system
        self.rules = rules
        self.ctx = system.ctx
        self.level_bound = level_bound

    def _require_within_bound(self, f: Expr, *extra: Generator, headroom: int = 0) -> None:
        levels = [g.level for g in extra]
        if f:
            levels.append(max_level(f) + headroom)
        top = max(levels, default=0)
        if top > self.level_bound:
            raise DomainError(f"level {top} exceeds the level bound {self.level_bound}")

    def diff(self, wrt: Generator, f: Expr, truncation_slack: int = 0) -> Expr:
        """Return the partial derivative of ``f`` with respect to ``wrt``.

        The derivative is pushed rightward through every word; the Kronecker
        terms survive, words that still end in a derivative vanish.
        """
        if wrt.is_derivative:
            raise DomainError(f"cannot differentiate with respect to {wrt}")
        f.require_derivative_free("diff")
        self._require_within_bound(f, wrt)
        start = wrt.derivative()
        result: dict[Word, Any] = {}
        for word, coeff in f:
            suffix_levels = [
                max((g.level for g in word[i + 1:]), default=0) for i in range(len(word))
            ]
            states: dict[tuple[Word, Generator], Any] = {((), start): coeff}
            for i, g in enumerate(word):
                following: dict[tuple[Word, Generator], Any] = {}
                truncation = suffix_levels[i] + truncation_slack
                for (prefix, d), value in states.items():
                    for image, factor in self.rules.commute(d, g, truncation):
                        term = value * factor
                        if not image:
                            target = prefix + word[i + 1:]
                            result[target] = result[target] + term if target in result else term
                        else:
                            key = (prefix + image[:1], image[1])
                            following[key] = following[key] + term if key in following else term
                states = {key: value for key, value in following.items() if value}
        return self.system.normalize(Expr(result))

    def diff_sequence(self, wrts: Iterable[Generator], f: Expr) -> Expr:
        """Differentiate with respect to each generator in turn."""
        for wrt in wrts:
            f = self.diff(wrt, f)
        return f

    def leibnitz_d(self, f: Expr) -> Expr:
        """Return d f by the Leibnitz rule, normalized."""
        return self.system.normalize(leibnitz_raise(f, self.level_bound))

    def operator_d(self, f: Expr) -> Expr:
        """Return d f as the sum over levels of xi^n d/dxi^(n-1) + eta^n d/deta^(n-1)."""
        f.require_derivative_free("d")
        self._require_within_bound(f, headroom=1)
        total = Expr()
        for n in range(1, max_level(f) + 2):
            for make in (xi, eta):
                part = self.diff(make(n - 1), f)
                if part:
                    total = total + Expr.monomial((make(n),), self.ctx.one) * part
        return self.system.normalize(total)

    def d_power(self, f: Expr, k: int) -> Expr:
        """Apply d ``k`` times."""
        if k < 0:
            raise DomainError(f"d power needs k >= 0, got {k}")
        for _ in range(k):
            f = self.leibnitz_d(f)
        return f


@dataclass
class EquivalenceFailure:
    """A word on which the two forms of d disagree."""

    word: Word
    leibnitz: Expr
    operator: Expr


@dataclass
class EquivalenceReport:
    """Outcome of comparing the Leibnitz and operator forms of d."""

    reading: SeriesReading
    words_checked: int = 0
    failures: list[EquivalenceFailure] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        """Whether both forms agreed on every word."""
        return not self.failures


def check_leibnitz_operator(
    calculus: Calculus,
    max_len: int = DEFAULT_EQUIVALENCE_MAX_LEN,
    max_level: int = DEFAULT_EQUIVALENCE_MAX_LEVEL,
    stop_at_first: bool = False,
) -> EquivalenceReport:
    """Compare leibnitz_d and operator_d on every word within the bounds."""
    report = EquivalenceReport(calculus.rules.reading)
    one = calculus.ctx.one
    for word in all_words(max_len, max_level):
        f = Expr.monomial(word, one)
        leibnitz = calculus.leibnitz_d(f)
        operator = calculus.operator_d(f)
        report.words_checked += 1
        if leibnitz != operator:
            _LOGGER.debug(
                "Forms of d disagree on %s under the %s reading",
                word_text(word),
                report.reading.value,
            )
            report.failures.append(EquivalenceFailure(word, leibnitz, operator))
            if stop_at_first:
                break
    _LOGGER.info(
        "Leibnitz/operator equivalence (%s): %d words, %d failures",
        report.reading.value,
        report.words_checked,
        len(report.failures),
    )
    return report


@dataclass
class ConformanceRecord:
    """How one derivative rule is implemented."""

    equation: str
    condition: str
    schema: str
    status: str
    note: str = ""


@dataclass
class ConformanceReport:
    """Per-rule implementation record plus the eta-series adjudication."""

    records: list[ConformanceRecord]
    adjudicated: SeriesReading | None
    shipped: SeriesReading
    equivalence: dict[SeriesReading, EquivalenceReport]

    @property
    def passed(self) -> bool:
        """Whether the shipped reading is the one that passes the equivalence suite."""
        return self.adjudicated is self.shipped and self.equivalence[self.shipped].passed


def conformance_report(
    system: RewriteSystem,
    shipped: SeriesReading | str = SeriesReading.SYMMETRIC,
    max_len: int = DEFAULT_EQUIVALENCE_MAX_LEN,
    max_level: int = DEFAULT_EQUIVALENCE_MAX_LEVEL,
) -> ConformanceReport:
    """Run the equivalence suite under both readings and record every rule."""
    shipped = SeriesReading(shipped)
    equivalence = {}
    for reading in SeriesReading:
        calculus = Calculus(system, DerivativeRuleSet(system.ctx, reading))
        equivalence[reading] = check_leibnitz_operator(
            calculus, max_len, max_level, stop_at_first=reading is not shipped
        )
    passing = [reading for reading, report in equivalence.items() if report.passed]
    adjudicated = passing[0] if len(passing) == 1 else None
    if adjudicated is not shipped:
        _LOGGER.warning(
            "Shipped %s reading does not match the adjudicated one (%s)",
            shipped.value,
            adjudicated.value if adjudicated else "none",
        )

    records = []
    for schema in RULE_SCHEMAS:
        status, note, text = "match", "", schema.schema
        if schema.equation == "29":
            note = "eta sum taken as printed; its k = 1 term is eta^n deta^m"
        elif schema.equation == "34":
            printed = equivalence[SeriesReading.PRINTED]
            witness = word_text(printed.failures[0].word) if printed.failures else "none"
            if shipped is SeriesReading.SYMMETRIC:
                status = "deviation"
            else:
                text = PRINTED_SCHEMA_34
            note = (
                f"printed form {PRINTED_SCHEMA_34!r}: "
                f"{'passes' if printed.passed else 'fails, first on ' + witness}; "
                f"symmetric form: "
                f"{'passes' if equivalence[SeriesReading.SYMMETRIC].passed else 'fails'}"
            )
        elif schema.equation == "36":
            note = "coincides with 35 at m = n-1; the schema of 35 is used"
        records.append(ConformanceRecord(schema.equation, schema.condition, text, status, note))
    return ConformanceReport(records, adjudicated, shipped, equivalence)
