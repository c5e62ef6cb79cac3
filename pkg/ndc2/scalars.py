"""Exact scalars for the engine.

Scalars are elements of the field of rational functions with integer
coefficients in a fixed, ordered set of commuting indeterminates. The field is
sympy's sparse fraction field over ``ZZ`` with graded-lex monomial order; its
elements are kept with numerator and denominator coprime and the leading
coefficient of the denominator positive, so field equality is structural
equality.
"""

from __future__ import annotations

import logging
from collections.abc import Mapping, Sequence
from fractions import Fraction
from typing import Any, Union

import sympy
from sympy.polys.domains import ZZ
from sympy.polys.fields import FracElement, field
from sympy.polys.orderings import grlex
from sympy.polys.rings import PolyElement

from .const import PLANE_INDETERMINATES
from .exceptions import DomainError, EvaluationError

_LOGGER = logging.getLogger(__name__)

Scalar = FracElement
Poly = PolyElement
Number = Union[int, Fraction]


class ScalarContext:
    """Fraction field over the integers in a declared list of indeterminates."""

    def __init__(self, names: Sequence[str] = PLANE_INDETERMINATES) -> None:
        """Initialize the context."""
        names = tuple(names)
        if not names or len(set(names)) != len(names):
            raise DomainError(f"invalid indeterminate list: {names!r}")
        self.names = names
        self.field, *gens = field(",".join(names), ZZ, grlex)
        self._gens: dict[str, Scalar] = dict(zip(names, gens))
        _LOGGER.debug("Created scalar context over %s", ", ".join(names))

    def __repr__(self) -> str:
        """Return a short description of the context."""
        return f"ScalarContext({', '.join(self.names)})"

    def __eq__(self, other: object) -> bool:
        """Contexts are equal when their fields are."""
        return isinstance(other, ScalarContext) and self.field == other.field

    def __hash__(self) -> int:
        """Hash on the indeterminate list."""
        return hash(self.names)

    def __getitem__(self, name: str) -> Scalar:
        """Return the indeterminate called ``name``."""
        try:
            return self._gens[name]
        except KeyError as err:
            raise DomainError(
                f"unknown indeterminate {name!r} (context has {', '.join(self.names)})"
            ) from err

    @property
    def one(self) -> Scalar:
        """Multiplicative unit."""
        return self.field.one

    @property
    def zero(self) -> Scalar:
        """Additive unit."""
        return self.field.zero

    def from_int(self, value: int) -> Scalar:
        """Embed an integer."""
        return self.field(value)

    def from_rational(self, value: Number) -> Scalar:
        """Embed an integer or a Fraction."""
        value = Fraction(value)
        return self.field(value.numerator) / self.field(value.denominator)

    def owns(self, value: Any) -> bool:
        """Return whether ``value`` is an element of this context's field."""
        return isinstance(value, FracElement) and value.field == self.field

    def check(self, value: Any) -> Scalar:
        """Return ``value`` if it belongs to this context, raise otherwise."""
        if not self.owns(value):
            raise DomainError(f"scalar {value!r} does not belong to {self!r}")
        return value

    def substitute(
        self,
        value: Scalar,
        mapping: Mapping[str, Scalar],
        target: ScalarContext | None = None,
    ) -> Scalar:
        """Replace indeterminates by scalars, landing in ``target``.

        Args:
            value: Scalar of this context
            mapping: Indeterminate name to replacement scalar
            target: Context of the result, defaults to this one

        Returns:
            The substituted scalar, an element of ``target``
        """
        self.check(value)
        target = target or self
        replacements = {}
        for name, replacement in mapping.items():
            if name not in self._gens:
                raise DomainError(f"cannot substitute unknown indeterminate {name!r}")
            replacements[sympy.Symbol(name)] = target.check(replacement).as_expr()
        expr = value.as_expr().subs(replacements, simultaneous=True)
        try:
            return target.field.from_expr(expr)
        except ValueError as err:
            raise DomainError(
                f"substitution leaves indeterminates outside {target!r}"
            ) from err


class NumericContext:
    """Scalars as exact rationals, with the indeterminates fixed at a point.

    Offers the element interface of :class:`ScalarContext`, so rewriting can run
    with numeric coefficients.
    """

    def __init__(self, point: Mapping[str, Number]) -> None:
        """Initialize the context."""
        self.names = tuple(point)
        self.point = {name: Fraction(value) for name, value in point.items()}

    def __repr__(self) -> str:
        """Return a short description of the context."""
        values = ", ".join(f"{name}={value}" for name, value in self.point.items())
        return f"NumericContext({values})"

    def __getitem__(self, name: str) -> Fraction:
        """Return the value of the indeterminate called ``name``."""
        try:
            return self.point[name]
        except KeyError as err:
            raise DomainError(f"unknown indeterminate {name!r}") from err

    @property
    def one(self) -> Fraction:
        """Multiplicative unit."""
        return Fraction(1)

    @property
    def zero(self) -> Fraction:
        """Additive unit."""
        return Fraction(0)

    def from_int(self, value: int) -> Fraction:
        """Embed an integer."""
        return Fraction(value)

    def from_rational(self, value: Number) -> Fraction:
        """Embed an integer or a Fraction."""
        return Fraction(value)

    def owns(self, value: Any) -> bool:
        """Return whether ``value`` is a rational number."""
        return isinstance(value, (int, Fraction))

    def check(self, value: Any) -> Fraction:
        """Return ``value`` as a Fraction, raise if it is not rational."""
        if not self.owns(value):
            raise DomainError(f"scalar {value!r} is not a rational number")
        return Fraction(value)


def _check_same_field(a: Scalar, b: Scalar) -> None:
    if a.field != b.field:
        raise DomainError(
            f"scalars over {a.field.symbols} and {b.field.symbols} cannot be combined"
        )


def scalar_add(a: Scalar, b: Scalar) -> Scalar:
    """Return the exact sum of two scalars of the same context."""
    _check_same_field(a, b)
    return a + b


def scalar_mul(a: Scalar, b: Scalar) -> Scalar:
    """Return the exact product of two scalars of the same context."""
    _check_same_field(a, b)
    return a * b


def _poly_value(poly: Poly, values: Sequence[Fraction]) -> Fraction:
    total = Fraction(0)
    for monom, coeff in poly.terms():
        term = Fraction(int(coeff))
        for value, exponent in zip(values, monom):
            if exponent:
                term *= value**exponent
        total += term
    return total


def scalar_eval(a: Scalar | Number, point: Mapping[str, Number]) -> Fraction:
    """Evaluate a scalar exactly at a rational point.

    Args:
        a: Scalar to evaluate, rationals pass through unchanged
        point: Value for every indeterminate of the scalar's context

    Returns:
        The exact value as a Fraction
    """
    if isinstance(a, (int, Fraction)):
        return Fraction(a)
    values = []
    for symbol in a.field.symbols:
        name = str(symbol)
        if name not in point:
            raise DomainError(f"evaluation point has no value for {name!r}")
        values.append(Fraction(point[name]))
    denominator = _poly_value(a.denom, values)
    if denominator == 0:
        raise EvaluationError(point)
    return _poly_value(a.numer, values) / denominator


def scalar_substitute(a: Scalar, mapping: Mapping[str, Scalar]) -> Scalar:
    """Replace indeterminates of ``a`` by scalars of the same context."""
    return ScalarContext([str(s) for s in a.field.symbols]).substitute(a, mapping)


def _names(poly: Poly) -> list[str]:
    return [str(symbol) for symbol in poly.ring.symbols]


def _monomial_factors(names: Sequence[str], monom: Sequence[int], latex: bool) -> list[str]:
    factors = []
    for name, exponent in zip(names, monom):
        if not exponent:
            continue
        if latex:
            factors.append(name if exponent == 1 else f"{name}^{{{exponent}}}")
        else:
            factors.append(name if exponent == 1 else f"{name}^{exponent}")
    return factors


def _poly_render(poly: Poly, latex: bool = False) -> str:
    if not poly:
        return "0"
    names = _names(poly)
    joiner = " " if latex else "*"
    rendered = ""
    for index, (monom, coeff) in enumerate(poly.terms()):
        coeff = int(coeff)
        factors = _monomial_factors(names, monom, latex)
        magnitude = abs(coeff)
        if magnitude != 1 or not factors:
            factors.insert(0, str(magnitude))
        body = joiner.join(factors)
        if index == 0:
            rendered = f"-{body}" if coeff < 0 else body
        else:
            rendered += f" - {body}" if coeff < 0 else f" + {body}"
    return rendered


def _is_atomic(poly: Poly) -> bool:
    """Return whether a polynomial renders as a single factor."""
    if len(poly.terms()) != 1:
        return False
    monom, coeff = poly.terms()[0]
    if not any(monom):
        return int(coeff) > 0
    return int(coeff) == 1 and sum(1 for exponent in monom if exponent) == 1


def scalar_text(a: Scalar | Number, as_factor: bool = False) -> str:
    """Render a scalar in the textual expression syntax.

    With ``as_factor`` the result is safe to place to the left of ``*``.
    """
    if isinstance(a, (int, Fraction)):
        return str(a)
    numerator = _poly_render(a.numer)
    multi_term = len(a.numer.terms()) > 1
    if a.denom == 1:
        return f"({numerator})" if multi_term and as_factor else numerator
    if multi_term:
        numerator = f"({numerator})"
    denominator = _poly_render(a.denom)
    if not _is_atomic(a.denom):
        denominator = f"({denominator})"
    return f"{numerator}/{denominator}"


def scalar_latex(a: Scalar | Number, as_factor: bool = False) -> str:
    """Render a scalar as LaTeX."""
    if isinstance(a, (int, Fraction)):
        a = Fraction(a)
        if a.denominator == 1:
            return str(a.numerator)
        sign = "-" if a < 0 else ""
        return rf"{sign}\frac{{{abs(a.numerator)}}}{{{a.denominator}}}"
    numerator = _poly_render(a.numer, latex=True)
    if a.denom == 1:
        if as_factor and len(a.numer.terms()) > 1:
            return f"({numerator})"
        return numerator
    return rf"\frac{{{numerator}}}{{{_poly_render(a.denom, latex=True)}}}"


def _poly_structured(poly: Poly) -> list[list[Any]]:
    return [[int(coeff), list(monom)] for monom, coeff in poly.terms()]


def scalar_structured(a: Scalar | Number) -> dict[str, Any]:
    """Render a scalar as numerator and denominator term lists.

    Each term is ``[integer coefficient, exponent vector]`` in graded-lex order.
    """
    if isinstance(a, (int, Fraction)):
        a = Fraction(a)
        return {
            "indeterminates": [],
            "num": [[a.numerator, []]] if a else [],
            "den": [[a.denominator, []]],
        }
    return {
        "indeterminates": _names(a.numer),
        "num": _poly_structured(a.numer),
        "den": _poly_structured(a.denom),
    }


def scalar_factored(a: Scalar | Number) -> str:
    """Render a scalar with numerator and denominator factored over the integers."""
    if isinstance(a, (int, Fraction)):
        return str(a)
    return str(sympy.factor(a.as_expr())).replace("**", "^")
