"""Verification checks runnable from the command line."""

from __future__ import annotations

import logging
import random
from collections.abc import Callable
from dataclasses import asdict, dataclass, field
from fractions import Fraction
from typing import Any

from .algebra import Expr, Generator, Kind, xi
from .calculus import Calculus, DerivativeRuleSet, conformance_report
from .const import (
    CHECK_CLASSICAL_LIMIT,
    CHECK_CONDITION10,
    CHECK_CONFLUENCE,
    CHECK_COVARIANCE,
    CHECK_DERIVATIVE_RULES,
    CHECK_NUMERIC,
    CHECK_RELATIONS,
    DEFAULT_CLASSICAL_SAMPLES,
    DEFAULT_CONFLUENCE_MAX_LEVEL,
    DEFAULT_CONFLUENCE_SAMPLE_LEN,
    DEFAULT_CONFLUENCE_SAMPLES,
    DEFAULT_CONFLUENCE_WORD_LEN,
    DEFAULT_COVARIANCE_MAX_LEVEL,
    DEFAULT_EQUIVALENCE_MAX_LEN,
    DEFAULT_EQUIVALENCE_MAX_LEVEL,
    DEFAULT_GAP_MAX_LEVEL,
    DEFAULT_GAP_WIDTH,
    DEFAULT_NUMERIC_SAMPLES,
    DEFAULT_QCONFLUENCE_LEN,
    DEFAULT_RELATIONS_MAX_LEVEL,
    DEFAULT_SEED,
    GAP_RELATIONS,
    PLANE_RELATIONS,
)
from .consistency import (
    GeneralRelationSet,
    check_condition10,
    compute_obstructions,
    derive_eq9,
    general_context,
    plane_assignment,
)
from .engine import Engine
from .exceptions import DomainError
from .helpers import commutative_image, random_expr, random_point
from .normal_form import check_confluence, generalized_relation, plane_relation, plane_system
from .qgroup import check_covariance, check_qconfluence
from .render import to_text
from .scalars import NumericContext, scalar_eval

_LOGGER = logging.getLogger(__name__)


@dataclass
class CheckReport:
    """Outcome of one check."""

    name: str
    passed: bool
    summary: str
    details: list[str] = field(default_factory=list)
    data: dict[str, Any] = field(default_factory=dict)

    def as_dict(self) -> dict[str, Any]:
        """Return the report as JSON-ready data."""
        return asdict(self)


def run_relations(
    engine: Engine,
    max_level: int = DEFAULT_RELATIONS_MAX_LEVEL,
    gap_max_level: int = DEFAULT_GAP_MAX_LEVEL,
    gap: int = DEFAULT_GAP_WIDTH,
) -> CheckReport:
    """Check relation fixpoints, the generalized relations and their closure under d."""
    ctx, plane, calculus = engine.ctx, engine.plane, engine.calculus
    failures = []
    checked = 0
    for n in range(max_level + 1):
        for relation in PLANE_RELATIONS:
            checked += 1
            if plane.normalize(plane_relation(ctx, relation, n)):
                failures.append(f"relation {relation} at n={n} is not a fixpoint")
    for n in range(gap_max_level + 1):
        for m in range(n + 1, min(n + gap, gap_max_level) + 1):
            for relation in GAP_RELATIONS:
                instance = generalized_relation(ctx, relation, n, m)
                checked += 1
                if plane.normalize(instance):
                    failures.append(f"relation {relation} at n={n}, m={m} does not hold")
                checked += 1
                residual = calculus.leibnitz_d(instance)
                if residual:
                    failures.append(
                        f"d of relation {relation} at n={n}, m={m} leaves {to_text(residual)}"
                    )
    for n in range(max_level + 1):
        for relation in PLANE_RELATIONS:
            checked += 1
            residual = calculus.d_power(plane_relation(ctx, relation, n), 3)
            if residual:
                failures.append(f"d^3 of relation {relation} at n={n} leaves {to_text(residual)}")
    return CheckReport(
        CHECK_RELATIONS,
        not failures,
        f"{checked} identities checked, {len(failures)} failed",
        failures,
        {"checked": checked},
    )


def run_confluence(
    engine: Engine,
    max_level: int = DEFAULT_CONFLUENCE_MAX_LEVEL,
    word_len: int = DEFAULT_CONFLUENCE_WORD_LEN,
    samples: int = DEFAULT_CONFLUENCE_SAMPLES,
    seed: int = DEFAULT_SEED,
    sample_len: int = DEFAULT_CONFLUENCE_SAMPLE_LEN,
) -> CheckReport:
    """Check that normal forms do not depend on the rewriting strategy."""
    report = check_confluence(engine.plane, max_level, word_len, samples, seed, sample_len)
    details = [
        f"{to_text(Expr.monomial(d.word, engine.ctx.one))}: "
        f"leftmost {to_text(d.leftmost)}, rightmost {to_text(d.rightmost)}"
        for d in report.discrepancies
    ]
    return CheckReport(
        CHECK_CONFLUENCE,
        report.passed,
        f"{report.words_checked} words checked, {len(report.discrepancies)} discrepancies",
        details,
        {"words_checked": report.words_checked},
    )


def run_covariance(
    engine: Engine,
    max_level: int = DEFAULT_COVARIANCE_MAX_LEVEL,
    qword_len: int = DEFAULT_QCONFLUENCE_LEN,
) -> CheckReport:
    """Check GL_qp(2) covariance of the exchange relations."""
    qreport = check_qconfluence(engine.qsystem, qword_len)
    report = check_covariance(engine.plane, engine.qsystem, max_level)
    details = [
        f"relation {r.relation} at n={r.level}: {to_text(r.residual)}" for r in report.residuals
    ]
    details += [
        f"matrix word {' '.join(d.word)} has strategy-dependent normal forms"
        for d in qreport.discrepancies
    ]
    return CheckReport(
        CHECK_COVARIANCE,
        report.passed and qreport.passed,
        f"{report.relations_checked} relations transformed, {len(report.residuals)} residuals; "
        f"{qreport.words_checked} matrix words normalized",
        details,
    )


def run_condition10(engine: Engine, base_level: int = 0) -> CheckReport:
    """Derive the xi^n eta^n+1 relation and the condition C2 = C3 = C1 C4."""
    ctx = general_context()
    budget = engine.config.step_budget
    identity = derive_eq9(ctx, base_level)
    free = compute_obstructions(
        GeneralRelationSet(ctx, base_level=base_level, step_budget=budget)
    )
    result = check_condition10(free, ctx)
    specialized = compute_obstructions(
        GeneralRelationSet(ctx, plane_assignment(ctx), base_level=base_level, step_budget=budget)
    )
    lhs = to_text(Expr.monomial(identity.lhs, ctx.one))
    details = [f"derived: {lhs} = {to_text(identity.rhs)}"]
    for obstruction in result.witness:
        factored = " + ".join(
            f"({c})*{to_text(Expr.monomial(w, ctx.one))}" for w, c in obstruction.factored()
        )
        details.append(f"{obstruction.probe}: {factored}")
    for obstruction in result.remaining:
        details.append(
            f"remains after substitution: {obstruction.probe}: {to_text(obstruction.residual)}"
        )
    if not specialized.consistent:
        details.append(f"plane coefficients leave {len(specialized.obstructions)} obstructions")
    passed = result.verified and specialized.consistent
    summary = (
        f"condition (10) verified ({len(result.witness)} residuals before substitution)"
        if passed
        else f"condition (10) not verified ({len(result.remaining)} residuals remain)"
    )
    return CheckReport(
        CHECK_CONDITION10,
        passed,
        summary,
        details,
        {
            "residuals": len(result.witness),
            "remaining": len(result.remaining),
            "probes": free.probes_run,
            "factored": [
                [obstruction.probe, [[list(map(str, w)), c] for w, c in obstruction.factored()]]
                for obstruction in result.witness
            ],
        },
    )


def run_derivative_rules(
    engine: Engine,
    max_len: int = DEFAULT_EQUIVALENCE_MAX_LEN,
    max_level: int = DEFAULT_EQUIVALENCE_MAX_LEVEL,
) -> CheckReport:
    """Compare both forms of d under both eta-series readings and record every rule."""
    report = conformance_report(engine.plane, engine.config.series_reading, max_len, max_level)
    shipped = report.equivalence[report.shipped]
    details = [
        f"{to_text(Expr.monomial(failure.word, engine.ctx.one))}: "
        f"leibnitz {to_text(failure.leibnitz)}, operator {to_text(failure.operator)}"
        for failure in shipped.failures
    ]
    adjudicated = report.adjudicated.value if report.adjudicated else "none"
    return CheckReport(
        CHECK_DERIVATIVE_RULES,
        report.passed,
        f"{shipped.words_checked} words, {len(shipped.failures)} failures with the "
        f"{report.shipped.value} reading; adjudicated reading: {adjudicated}",
        details,
        {
            "adjudicated": adjudicated,
            "shipped": report.shipped.value,
            "records": [asdict(record) for record in report.records],
        },
    )


def _evaluate(e: Expr, point: dict[str, Fraction]) -> Expr:
    return e.map_coefficients(lambda coeff: scalar_eval(coeff, point))


def run_classical_limit(
    engine: Engine,
    samples: int = DEFAULT_CLASSICAL_SAMPLES,
    seed: int = DEFAULT_SEED,
    max_degree: int = 6,
) -> CheckReport:
    """Check that p = q = 1 makes normal ordering a commutative sort and diff ordinary."""
    rng = random.Random(seed)
    point = {name: Fraction(1) for name in engine.ctx.names}
    failures = []
    for _ in range(samples):
        e = random_expr(rng, engine.ctx)
        normal = _evaluate(engine.plane.normalize(e), point)
        if commutative_image(normal) != commutative_image(_evaluate(e, point)):
            failures.append(f"{to_text(e)} normalizes to {to_text(normal)} at p = q = 1")
    for k in range(1, max_degree + 1):
        power = Expr.monomial((xi(0),) * k, engine.ctx.one)
        derivative = _evaluate(engine.calculus.diff(xi(0), power), point)
        expected = Expr.monomial((xi(0),) * (k - 1), Fraction(k))
        if derivative != expected:
            failures.append(f"d/dxi[0] of xi[0]^{k} is {to_text(derivative)} at p = q = 1")
    return CheckReport(
        CHECK_CLASSICAL_LIMIT,
        not failures,
        f"{samples} expressions and {max_degree} powers checked, {len(failures)} failed",
        failures,
    )


def run_numeric(
    engine: Engine,
    samples: int = DEFAULT_NUMERIC_SAMPLES,
    seed: int = DEFAULT_SEED,
) -> CheckReport:
    """Compare the symbolic pipeline, evaluated afterwards, with rewriting over rationals."""
    rng = random.Random(seed)
    point = random_point(rng, engine.ctx.names)
    numeric = NumericContext(point)
    plane = plane_system(numeric, step_budget=engine.config.step_budget)
    calculus = Calculus(plane, DerivativeRuleSet(numeric, engine.config.series_reading))
    failures = []
    for _ in range(samples):
        e = random_expr(rng, engine.ctx, max_len=3, max_level=2)
        e_value = _evaluate(e, point)
        if _evaluate(engine.plane.normalize(e), point) != plane.normalize(e_value):
            failures.append(f"normalize {to_text(e)}")
        wrt = Generator(rng.choice((Kind.XI, Kind.ETA)), rng.randint(0, 2))
        if _evaluate(engine.calculus.diff(wrt, e), point) != calculus.diff(wrt, e_value):
            failures.append(f"diff {wrt} of {to_text(e)}")
    rendered = ", ".join(f"{name}={value}" for name, value in point.items())
    return CheckReport(
        CHECK_NUMERIC,
        not failures,
        f"{samples} expressions at ({rendered}), {len(failures)} mismatches",
        failures,
    )


CHECK_RUNNERS: dict[str, Callable[..., CheckReport]] = {
    CHECK_RELATIONS: run_relations,
    CHECK_CONFLUENCE: run_confluence,
    CHECK_COVARIANCE: run_covariance,
    CHECK_CONDITION10: run_condition10,
    CHECK_DERIVATIVE_RULES: run_derivative_rules,
    CHECK_CLASSICAL_LIMIT: run_classical_limit,
    CHECK_NUMERIC: run_numeric,
}


def run_check(name: str, engine: Engine, **options: Any) -> CheckReport:
    """Run the check called ``name``; options left as None take their defaults."""
    try:
        runner = CHECK_RUNNERS[name]
    except KeyError as err:
        raise DomainError(f"unknown check {name!r}") from err
    options = {key: value for key, value in options.items() if value is not None}
    report = runner(engine, **options)
    if report.passed:
        _LOGGER.info("Check %s passed: %s", name, report.summary)
    else:
        _LOGGER.warning("Check %s failed: %s", name, report.summary)
    return report

