"""Rewriting of differential words to their normal form.

A word is in normal form when every adjacent pair is canonical: levels strictly
decrease from left to right, and at equal level eta stands before xi. The plane
rules rewrite any other pair into a combination of pairs that is strictly larger
in the lexicographic order on (level, kind) positions; since the words of a
given length and degree are finitely many, every rewrite sequence terminates.
"""

from __future__ import annotations

import itertools
import logging
import random
from collections.abc import Callable, Iterator
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

from .algebra import Combination, Expr, Generator, Kind, Word, eta, word_text, xi
from .const import (
    DEFAULT_CACHE_SIZE,
    DEFAULT_CONFLUENCE_MAX_LEVEL,
    DEFAULT_CONFLUENCE_SAMPLE_LEN,
    DEFAULT_CONFLUENCE_SAMPLES,
    DEFAULT_CONFLUENCE_WORD_LEN,
    DEFAULT_SEED,
    DEFAULT_STEP_BUDGET,
    EQ_ETA_ETA,
    EQ_ETA_XI,
    EQ_GAP_ETA_ETA,
    EQ_GAP_ETA_XI,
    EQ_GAP_XI_ETA,
    EQ_GAP_XI_XI,
    EQ_SAME_LEVEL,
    EQ_XI_ETA,
    EQ_XI_XI,
    STRATEGY_LEFTMOST,
    STRATEGY_RANDOM,
    STRATEGY_RIGHTMOST,
)
from .exceptions import ContractError, DomainError, ResourceBudgetError
from .helpers import differential_alphabet, random_word

_LOGGER = logging.getLogger(__name__)


class Strategy(StrEnum):
    """Order in which redexes are picked."""

    LEFTMOST = STRATEGY_LEFTMOST
    RIGHTMOST = STRATEGY_RIGHTMOST
    RANDOM = STRATEGY_RANDOM


@dataclass(frozen=True)
class Rule:
    """Oriented rewrite of a non-canonical pair."""

    lhs: tuple[Any, Any]
    rhs: Combination
    source: str

    def __str__(self) -> str:
        """Render as ``lhs -> rhs``."""
        return f"({self.source}) {word_text(self.lhs)} -> {self.rhs!r}"


RuleSource = Callable[[Any, Any], "Rule | None"]
PairOrder = Callable[[Any, Any], bool]


def canonical_pair_order(g1: Generator, g2: Generator) -> bool:
    """Return whether the adjacent pair ``g1 g2`` is canonical."""
    if g1.is_derivative or g2.is_derivative:
        raise DomainError(f"pair order is defined on differentials only, got {g1} {g2}")
    if g1.level != g2.level:
        return g1.level > g2.level
    return g1.kind >= g2.kind


def _make(kind: Kind, level: int) -> Generator:
    return Generator(kind, level)


class PlaneRules:
    """Rule source for the exchange relations of the quantum plane at all levels."""

    def __init__(self, ctx: Any) -> None:
        """Initialize from a scalar context providing ``p`` and ``q``."""
        self.p = ctx["p"]
        self.q = ctx["q"]
        self.pq = self.p * self.q
        self.correction = self.pq - ctx.one

    def __call__(self, g1: Generator, g2: Generator) -> Rule | None:
        """Return the rule for the pair, None when it is canonical."""
        if canonical_pair_order(g1, g2):
            return None
        n, m = g1.level, g2.level
        if n == m:
            return Rule((g1, g2), Expr.monomial((eta(n), xi(n)), self.q), EQ_SAME_LEVEL)

        gap = m - n
        kinds = (g1.kind, g2.kind)
        terms: list[tuple[Word, Any]]
        if kinds[0] is kinds[1]:
            kind = kinds[0]
            terms = [((_make(kind, m), _make(kind, n)), self.pq)]
            terms += [
                ((_make(kind, n + r), _make(kind, m - r)), self.correction)
                for r in range(1, gap)
            ]
            if kind is Kind.XI:
                source = EQ_XI_XI if gap == 1 else EQ_GAP_XI_XI
            else:
                source = EQ_ETA_ETA if gap == 1 else EQ_GAP_ETA_ETA
        elif kinds == (Kind.ETA, Kind.XI):
            terms = [((xi(m), eta(n)), self.p)]
            terms += [((eta(m - r), xi(n + r)), self.correction) for r in range(1, gap)]
            source = EQ_ETA_XI if gap == 1 else EQ_GAP_ETA_XI
        else:
            terms = [((eta(m), xi(n)), self.q)]
            terms += [((xi(m - r), eta(n + r)), self.correction) for r in range(gap)]
            source = EQ_XI_ETA if gap == 1 else EQ_GAP_XI_ETA
        return Rule((g1, g2), Expr(terms), source)


class _StepCounter:
    def __init__(self, budget: int, system: str) -> None:
        self.budget = budget
        self.system = system
        self.steps = 0

    def tick(self) -> None:
        self.steps += 1
        if self.steps > self.budget:
            _LOGGER.error(
                "Rewriting in %s exhausted its budget of %d steps", self.system, self.budget
            )
            raise ResourceBudgetError(self.budget, self.steps)


class RewriteSystem:
    """Confluent, terminating rewriting over pairs of adjacent letters.

    Rules are produced lazily by ``rules`` and memoized per pair. A pair that is
    not canonical but has no rule is left alone (partial systems). Normal forms
    of single words are memoized per deterministic strategy.
    """

    def __init__(
        self,
        ctx: Any,
        rules: RuleSource,
        is_canonical: PairOrder = canonical_pair_order,
        *,
        name: str = "plane",
        expr_type: type[Combination] = Expr,
        step_budget: int = DEFAULT_STEP_BUDGET,
        strategy: Strategy | str = Strategy.LEFTMOST,
        cache_size: int = DEFAULT_CACHE_SIZE,
        validate: Callable[[Combination], None] | None = None,
    ) -> None:
        """Initialize the system."""
        self.ctx = ctx
        self.name = name
        self.expr_type = expr_type
        self.step_budget = step_budget
        self.strategy = Strategy(strategy)
        self.cache_size = cache_size
        self._rules = rules
        self._is_canonical = is_canonical
        self._validate = validate
        self._rule_cache: dict[tuple[Any, Any], Rule | None] = {}
        self._nf_cache: dict[Strategy, dict[tuple[Any, ...], dict[tuple[Any, ...], Any]]] = {
            Strategy.LEFTMOST: {},
            Strategy.RIGHTMOST: {},
        }

    def __repr__(self) -> str:
        """Return a short description."""
        return f"RewriteSystem({self.name}, strategy={self.strategy.value})"

    def clear_cache(self) -> None:
        """Forget memoized rules and normal forms.

        Called by ``normalize`` once the memo grows past ``cache_size`` entries.
        """
        self._rule_cache.clear()
        for cache in self._nf_cache.values():
            cache.clear()

    def cache_entries(self) -> int:
        """Return the number of memoized rules and word normal forms."""
        return len(self._rule_cache) + sum(len(cache) for cache in self._nf_cache.values())

    def is_canonical(self, a: Any, b: Any) -> bool:
        """Return whether the pair is canonical."""
        return self._is_canonical(a, b)

    def rule_for(self, a: Any, b: Any) -> Rule | None:
        """Return the rule rewriting the pair, None if it is irreducible."""
        key = (a, b)
        if key not in self._rule_cache:
            rule = None if self._is_canonical(a, b) else self._rules(a, b)
            if rule is not None:
                _LOGGER.debug("Instantiated rule %s", rule)
            self._rule_cache[key] = rule
        return self._rule_cache[key]

    def rewrite_pair(self, a: Any, b: Any) -> Combination:
        """Rewrite a single non-canonical pair one step."""
        if self._is_canonical(a, b):
            raise ContractError(f"pair {a} {b} is already canonical")
        rule = self.rule_for(a, b)
        if rule is None:
            raise ContractError(f"{self.name} has no rule for the pair {a} {b}")
        return rule.rhs

    def redexes(self, word: tuple[Any, ...]) -> list[int]:
        """Return every position where a rule applies."""
        return [
            i for i in range(len(word) - 1) if self.rule_for(word[i], word[i + 1]) is not None
        ]

    def find_redex(self, word: tuple[Any, ...], strategy: Strategy) -> int | None:
        """Return the redex position picked by a deterministic strategy."""
        positions = range(len(word) - 1)
        if strategy is Strategy.RIGHTMOST:
            positions = reversed(positions)
        for i in positions:
            if self.rule_for(word[i], word[i + 1]) is not None:
                return i
        return None

    def _expand(self, word: tuple[Any, ...], position: int) -> list[tuple[tuple[Any, ...], Any]]:
        rule = self.rule_for(word[position], word[position + 1])
        prefix, suffix = word[:position], word[position + 2:]
        return [(prefix + rhs_word + suffix, coeff) for rhs_word, coeff in rule.rhs]

    def _word_normal_form(
        self, word: tuple[Any, ...], strategy: Strategy, counter: _StepCounter
    ) -> dict[tuple[Any, ...], Any]:
        cache = self._nf_cache[strategy]
        if word in cache:
            return cache[word]
        children_of: dict[tuple[Any, ...], list[tuple[tuple[Any, ...], Any]]] = {}
        stack = [word]
        while stack:
            current = stack[-1]
            if current in cache:
                stack.pop()
                continue
            children = children_of.get(current)
            if children is None:
                position = self.find_redex(current, strategy)
                if position is None:
                    cache[current] = {current: self.ctx.one}
                    stack.pop()
                    continue
                counter.tick()
                children = children_of[current] = self._expand(current, position)
            missing = [child for child, _ in children if child not in cache]
            if missing:
                stack.extend(missing)
                continue
            combined: dict[tuple[Any, ...], Any] = {}
            for child, coeff in children:
                for target, value in cache[child].items():
                    term = coeff * value
                    combined[target] = combined[target] + term if target in combined else term
            cache[current] = {target: value for target, value in combined.items() if value}
            del children_of[current]
            stack.pop()
        return cache[word]

    def _normalize_random(
        self, e: Combination, rng: random.Random, counter: _StepCounter
    ) -> dict[tuple[Any, ...], Any]:
        pending = dict(e.terms)
        result: dict[tuple[Any, ...], Any] = {}
        while pending:
            word, coeff = pending.popitem()
            positions = self.redexes(word)
            if not positions:
                result[word] = result[word] + coeff if word in result else coeff
                continue
            counter.tick()
            for child, value in self._expand(word, rng.choice(positions)):
                term = coeff * value
                total = pending[child] + term if child in pending else term
                if total:
                    pending[child] = total
                else:
                    pending.pop(child, None)
        return result

    def normalize(
        self,
        e: Combination,
        strategy: Strategy | str | None = None,
        seed: int | None = None,
    ) -> Combination:
        """Return the normal form of ``e``.

        Args:
            e: Expression over this system's alphabet
            strategy: Redex choice, defaults to the system's strategy
            seed: Seed for the random strategy

        Returns:
            An expression whose words are all canonical
        """
        if not isinstance(e, self.expr_type):
            raise DomainError(f"{self.name} normalizes {self.expr_type.__name__}, got {e!r}")
        for _, coeff in e:
            if hasattr(coeff, "field") and not self.ctx.owns(coeff):
                raise DomainError(f"coefficient {coeff} does not belong to {self.ctx!r}")
        if self._validate is not None:
            self._validate(e)
        strategy = Strategy(strategy or self.strategy)
        counter = _StepCounter(self.step_budget, self.name)
        if strategy is Strategy.RANDOM:
            result = self._normalize_random(e, random.Random(seed), counter)
        else:
            result = {}
            for word, coeff in e:
                for target, value in self._word_normal_form(word, strategy, counter).items():
                    term = coeff * value
                    result[target] = result[target] + term if target in result else term
        _LOGGER.debug(
            "Normalized %d terms in %s with %s strategy, %d rewrites",
            len(e),
            self.name,
            strategy.value,
            counter.steps,
        )
        if self.cache_entries() > self.cache_size:
            _LOGGER.debug("Releasing %d memoized entries of %s", self.cache_entries(), self.name)
            self.clear_cache()
        return self.expr_type(result)

    def is_normal(self, e: Combination) -> bool:
        """Return whether no rule applies anywhere in ``e``."""
        return all(self.find_redex(word, Strategy.LEFTMOST) is None for word, _ in e)


def _require_differential_free(e: Combination) -> None:
    e.require_derivative_free("normalize")


def plane_system(ctx: Any, **kwargs: Any) -> RewriteSystem:
    """Return the rewrite system of the exchange relations of the quantum plane."""
    kwargs.setdefault("validate", _require_differential_free)
    return RewriteSystem(ctx, PlaneRules(ctx), canonical_pair_order, **kwargs)


def generalized_relation(ctx: Any, eq_id: str, n: int, m: int) -> Expr:
    """Return LHS - RHS of a generalized exchange relation between levels n < m."""
    if not 0 <= n < m:
        raise DomainError(f"generalized relations need 0 <= n < m, got n={n}, m={m}")
    p, q = ctx["p"], ctx["q"]
    correction = p * q - ctx.one
    if eq_id == EQ_GAP_XI_XI:
        terms = [((xi(n), xi(m)), ctx.one), ((xi(m), xi(n)), -p * q)]
        terms += [((xi(n + r), xi(m - r)), -correction) for r in range(1, m - n)]
    elif eq_id == EQ_GAP_ETA_ETA:
        terms = [((eta(n), eta(m)), ctx.one), ((eta(m), eta(n)), -p * q)]
        terms += [((eta(n + r), eta(m - r)), -correction) for r in range(1, m - n)]
    elif eq_id == EQ_GAP_ETA_XI:
        terms = [((eta(n), xi(m)), ctx.one), ((xi(m), eta(n)), -p)]
        terms += [((eta(m - r), xi(n + r)), -correction) for r in range(1, m - n)]
    elif eq_id == EQ_GAP_XI_ETA:
        terms = [((xi(n), eta(m)), ctx.one), ((eta(m), xi(n)), -q)]
        terms += [((xi(m - r), eta(n + r)), -correction) for r in range(m - n)]
    else:
        raise DomainError(f"unknown generalized relation {eq_id!r}")
    return Expr(terms)


def plane_relation(ctx: Any, eq_id: str, n: int) -> Expr:
    """Return LHS - RHS of an exchange relation at level ``n``."""
    p, q, one = ctx["p"], ctx["q"], ctx.one
    if eq_id == EQ_SAME_LEVEL:
        terms = [((xi(n), eta(n)), one), ((eta(n), xi(n)), -q)]
    elif eq_id == EQ_XI_XI:
        terms = [((xi(n), xi(n + 1)), one), ((xi(n + 1), xi(n)), -p * q)]
    elif eq_id == EQ_ETA_ETA:
        terms = [((eta(n), eta(n + 1)), one), ((eta(n + 1), eta(n)), -p * q)]
    elif eq_id == EQ_ETA_XI:
        terms = [((eta(n), xi(n + 1)), one), ((xi(n + 1), eta(n)), -p)]
    elif eq_id == EQ_XI_ETA:
        terms = [
            ((xi(n), eta(n + 1)), one),
            ((eta(n + 1), xi(n)), -q),
            ((xi(n + 1), eta(n)), one - p * q),
        ]
    else:
        raise DomainError(f"unknown relation {eq_id!r}")
    return Expr(terms)


def noncanonical_pairs(max_level: int, max_gap: int) -> Iterator[tuple[Generator, Generator]]:
    """Yield every rewritable pair with levels up to ``max_level`` and gap up to ``max_gap``."""
    for n in range(max_level + 1):
        yield xi(n), eta(n)
        for m in range(n + 1, min(n + max_gap, max_level) + 1):
            for a, b in itertools.product((Kind.XI, Kind.ETA), repeat=2):
                yield Generator(a, n), Generator(b, m)


@dataclass
class Discrepancy:
    """A word whose normal form depends on the strategy."""

    word: Word
    leftmost: Expr
    rightmost: Expr


@dataclass
class ConfluenceReport:
    """Outcome of a confluence run."""

    words_checked: int = 0
    discrepancies: list[Discrepancy] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        """Whether every word had a strategy-independent normal form."""
        return not self.discrepancies


def check_confluence(
    system: RewriteSystem,
    max_level: int = DEFAULT_CONFLUENCE_MAX_LEVEL,
    word_len: int = DEFAULT_CONFLUENCE_WORD_LEN,
    samples: int = DEFAULT_CONFLUENCE_SAMPLES,
    seed: int = DEFAULT_SEED,
    sample_len: int = DEFAULT_CONFLUENCE_SAMPLE_LEN,
) -> ConfluenceReport:
    """Normalize words under the leftmost and rightmost strategies and compare.

    Every word of length ``word_len`` over levels up to ``max_level`` is checked,
    followed by ``samples`` random words of length up to ``sample_len``.
    """
    rng = random.Random(seed)
    exhaustive = itertools.product(differential_alphabet(max_level), repeat=word_len)
    sampled = (random_word(rng, sample_len, max_level) for _ in range(samples))
    report = ConfluenceReport()
    one = system.ctx.one
    for word in itertools.chain(exhaustive, sampled):
        e = Expr.monomial(word, one)
        leftmost = system.normalize(e, Strategy.LEFTMOST)
        rightmost = system.normalize(e, Strategy.RIGHTMOST)
        report.words_checked += 1
        if leftmost != rightmost:
            _LOGGER.warning("Normal form of %s depends on the strategy", word_text(word))
            report.discrepancies.append(Discrepancy(tuple(word), leftmost, rightmost))
    _LOGGER.info(
        "Confluence: %d words checked, %d discrepancies",
        report.words_checked,
        len(report.discrepancies),
    )
    return report
