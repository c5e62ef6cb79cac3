"""Consistency of the exchange relations with free coefficients C1..C4.

Within a window of two adjacent levels n, n+1 the relations read

    xi^k eta^k     = C1 eta^k xi^k              (k = n, n+1)
    xi^n xi^n+1    = C2 xi^n+1 xi^n
    eta^n eta^n+1  = C3 eta^n+1 eta^n
    eta^n xi^n+1   = C4 xi^n+1 eta^n
    xi^n eta^n+1   = C1 eta^n+1 xi^n + (C1 C4 - 1) xi^n+1 eta^n

where the last one follows from applying d to the first. Reducing products of
a relation with a window generator in two directions exposes the conditions
the coefficients must satisfy.
"""

from __future__ import annotations

import logging
from collections.abc import Mapping
from dataclasses import dataclass, field
from typing import Any

from .algebra import Expr, Generator, Kind, Word, eta, word_text, xi
from .calculus import leibnitz_raise
from .const import (
    DEFAULT_STEP_BUDGET,
    EQ_GENERAL_ETA_ETA,
    EQ_GENERAL_ETA_XI,
    EQ_GENERAL_SAME_LEVEL,
    EQ_GENERAL_XI_ETA,
    EQ_GENERAL_XI_XI,
    GENERAL_INDETERMINATES,
)
from .exceptions import DomainError
from .normal_form import RewriteSystem, Rule, Strategy, canonical_pair_order
from .scalars import ScalarContext, scalar_factored

_LOGGER = logging.getLogger(__name__)


def general_context() -> ScalarContext:
    """Return the scalar context over p, q and C1..C4."""
    return ScalarContext(GENERAL_INDETERMINATES)


def plane_assignment(ctx: ScalarContext) -> dict[str, Any]:
    """Return the values of C1..C4 for the two-parameter plane."""
    p, q = ctx["p"], ctx["q"]
    return {"C1": q, "C2": p * q, "C3": p * q, "C4": p}


def condition10_assignment(ctx: ScalarContext) -> dict[str, Any]:
    """Return the substitution C2 -> C1 C4, C3 -> C1 C4."""
    product = ctx["C1"] * ctx["C4"]
    return {"C2": product, "C3": product}


class GeneralRelationSet:
    """Relations with free coefficients on the levels ``base_level`` and ``base_level + 1``."""

    def __init__(
        self,
        ctx: ScalarContext,
        assignment: Mapping[str, Any] | None = None,
        include_xi_eta: bool = True,
        base_level: int = 0,
        step_budget: int = DEFAULT_STEP_BUDGET,
    ) -> None:
        """Initialize the relation set.

        Args:
            ctx: Context containing p, q and C1..C4
            assignment: Values replacing some of C1..C4
            include_xi_eta: Whether the xi^n eta^n+1 relation takes part
            base_level: Lower level of the window
            step_budget: Rule applications allowed per normalize call
        """
        self.ctx = ctx
        self.assignment = dict(assignment or {})
        coefficients = {
            name: self.assignment.get(name, ctx[name]) for name in ("C1", "C2", "C3", "C4")
        }
        self.c1 = ctx.check(coefficients["C1"])
        self.c2 = ctx.check(coefficients["C2"])
        self.c3 = ctx.check(coefficients["C3"])
        self.c4 = ctx.check(coefficients["C4"])
        self.correction = self.c1 * self.c4 - ctx.one
        self.include_xi_eta = include_xi_eta
        self.base_level = base_level
        self.system = RewriteSystem(
            ctx,
            self._rule,
            canonical_pair_order,
            name="general relations",
            step_budget=step_budget,
        )

    @property
    def window(self) -> tuple[int, int]:
        """The two levels the relations act on."""
        return self.base_level, self.base_level + 1

    def generators(self) -> list[Generator]:
        """Return the differentials of the window."""
        return [g for level in self.window for g in (xi(level), eta(level))]

    def _rule(self, g1: Generator, g2: Generator) -> Rule | None:
        n, m = g1.level, g2.level
        if n not in self.window or m not in self.window:
            return None
        if n == m:
            return Rule((g1, g2), Expr.monomial((eta(n), xi(n)), self.c1), EQ_GENERAL_SAME_LEVEL)
        kinds = (g1.kind, g2.kind)
        if kinds == (Kind.XI, Kind.XI):
            return Rule((g1, g2), Expr.monomial((xi(m), xi(n)), self.c2), EQ_GENERAL_XI_XI)
        if kinds == (Kind.ETA, Kind.ETA):
            return Rule((g1, g2), Expr.monomial((eta(m), eta(n)), self.c3), EQ_GENERAL_ETA_ETA)
        if kinds == (Kind.ETA, Kind.XI):
            return Rule((g1, g2), Expr.monomial((xi(m), eta(n)), self.c4), EQ_GENERAL_ETA_XI)
        if not self.include_xi_eta:
            return None
        rhs = Expr([((eta(m), xi(n)), self.c1), ((xi(m), eta(n)), self.correction)])
        return Rule((g1, g2), rhs, EQ_GENERAL_XI_ETA)

    def relation(self, eq_id: str, level: int | None = None) -> Expr:
        """Return LHS - RHS of a relation; ``level`` only matters for the same-level one."""
        n, m = self.window
        if eq_id == EQ_GENERAL_SAME_LEVEL:
            level = n if level is None else level
            if level not in self.window:
                raise DomainError(f"level {level} lies outside the window {self.window}")
            lhs: Word = (xi(level), eta(level))
        elif eq_id == EQ_GENERAL_XI_XI:
            lhs = (xi(n), xi(m))
        elif eq_id == EQ_GENERAL_ETA_ETA:
            lhs = (eta(n), eta(m))
        elif eq_id == EQ_GENERAL_ETA_XI:
            lhs = (eta(n), xi(m))
        elif eq_id == EQ_GENERAL_XI_ETA:
            lhs = (xi(n), eta(m))
        else:
            raise DomainError(f"unknown relation {eq_id!r}")
        rule = self._rule(*lhs)
        if rule is None:
            raise DomainError(f"relation {eq_id} is excluded from this set")
        return Expr.monomial(lhs, self.ctx.one) - rule.rhs

    def instances(self) -> list[tuple[str, int, Expr]]:
        """Return every relation of the window as (id, level, LHS - RHS)."""
        n, m = self.window
        found = [
            (EQ_GENERAL_SAME_LEVEL, n, self.relation(EQ_GENERAL_SAME_LEVEL, n)),
            (EQ_GENERAL_SAME_LEVEL, m, self.relation(EQ_GENERAL_SAME_LEVEL, m)),
        ]
        for eq_id in (EQ_GENERAL_XI_XI, EQ_GENERAL_ETA_ETA, EQ_GENERAL_ETA_XI):
            found.append((eq_id, n, self.relation(eq_id)))
        if self.include_xi_eta:
            found.append((EQ_GENERAL_XI_ETA, n, self.relation(EQ_GENERAL_XI_ETA)))
        return found


@dataclass
class Obstruction:
    """A probe that does not reduce to zero."""

    probe: str
    residual: Expr

    def factored(self) -> list[tuple[Word, str]]:
        """Return the residual's words with factored coefficients."""
        return [(word, scalar_factored(coeff)) for word, coeff in self.residual.sorted_items()]


@dataclass
class ObstructionReport:
    """Every nonzero probe of a relation set."""

    probes_run: int = 0
    obstructions: list[Obstruction] = field(default_factory=list)

    @property
    def consistent(self) -> bool:
        """Whether every probe reduced to zero."""
        return not self.obstructions


@dataclass
class Eq9Identity:
    """The xi^n eta^n+1 relation recovered from d applied to the same-level relation."""

    lhs: Word
    rhs: Expr

    def as_relation(self, one: Any) -> Expr:
        """Return LHS - RHS."""
        return Expr.monomial(self.lhs, one) - self.rhs


def derive_eq9(ctx: ScalarContext, base_level: int = 0) -> Eq9Identity:
    """Apply d to xi^n eta^n = C1 eta^n xi^n and solve for xi^n eta^n+1.

    Normalization runs without the xi^n eta^n+1 relation.
    """
    relations = GeneralRelationSet(ctx, include_xi_eta=False, base_level=base_level)
    n, m = relations.window
    same_level = relations.relation(EQ_GENERAL_SAME_LEVEL, n)
    image = relations.system.normalize(leibnitz_raise(same_level))
    lhs = (xi(n), eta(m))
    lead = image.coefficient(lhs, None)
    if not lead:
        raise DomainError("d of the same-level relation does not involve xi^n eta^n+1")
    rhs = (Expr.monomial(lhs, lead) - image).scale(ctx.one / lead)
    _LOGGER.debug("Derived %s = %r", word_text(lhs), rhs)
    return Eq9Identity(lhs, rhs)


def compute_obstructions(relations: GeneralRelationSet) -> ObstructionReport:
    """Probe every relation with every window generator from both sides, and with d.

    Left products are reduced leftmost-first, right products rightmost-first, so
    the generator is commuted in from its own side.
    """
    report = ObstructionReport()
    system = relations.system
    one = relations.ctx.one
    for eq_id, level, relation in relations.instances():
        for g in relations.generators():
            letter = Expr.monomial((g,), one)
            probes = (
                (f"{g} * ({eq_id} at level {level})", letter * relation, Strategy.LEFTMOST),
                (f"({eq_id} at level {level}) * {g}", relation * letter, Strategy.RIGHTMOST),
            )
            for name, product, strategy in probes:
                residual = system.normalize(product, strategy)
                report.probes_run += 1
                if residual:
                    report.obstructions.append(Obstruction(name, residual))

    n = relations.window[0]
    residual = system.normalize(leibnitz_raise(relations.relation(EQ_GENERAL_SAME_LEVEL, n)))
    report.probes_run += 1
    if residual:
        probe = f"d({EQ_GENERAL_SAME_LEVEL} at level {n})"
        report.obstructions.append(Obstruction(probe, residual))
    _LOGGER.info(
        "Obstructions: %d probes, %d nonzero", report.probes_run, len(report.obstructions)
    )
    return report


@dataclass
class Condition10Result:
    """Whether the residuals vanish once C2 = C3 = C1 C4."""

    verified: bool
    witness: list[Obstruction]
    remaining: list[Obstruction]


def substitute_expr(ctx: ScalarContext, e: Expr, mapping: Mapping[str, Any]) -> Expr:
    """Substitute indeterminates in every coefficient."""
    return e.map_coefficients(lambda coeff: ctx.substitute(coeff, mapping))


def check_condition10(
    report: ObstructionReport,
    ctx: ScalarContext,
    mapping: Mapping[str, Any] | None = None,
) -> Condition10Result:
    """Substitute C2 -> C1 C4, C3 -> C1 C4 into every residual and test for zero."""
    mapping = condition10_assignment(ctx) if mapping is None else mapping
    remaining = []
    for obstruction in report.obstructions:
        residual = substitute_expr(ctx, obstruction.residual, mapping)
        if residual:
            remaining.append(Obstruction(obstruction.probe, residual))
    verified = not remaining
    _LOGGER.info(
        "Condition C2 = C3 = C1 C4: %d residuals before substitution, %d after",
        len(report.obstructions),
        len(remaining),
    )
    return Condition10Result(verified, list(report.obstructions), remaining)
