"""Free algebra of higher differentials and derivatives, before any rewriting."""

from __future__ import annotations

from collections.abc import Callable, Iterable, Iterator, Mapping
from dataclasses import dataclass
from enum import IntEnum
from typing import Any, TypeVar

from .const import DEFAULT_LEVEL_BOUND, KIND_DETA, KIND_DXI, KIND_ETA, KIND_XI
from .exceptions import DomainError

C = TypeVar("C", bound="Combination")


class Kind(IntEnum):
    """Generator kinds, in rendering order."""

    XI = 0
    ETA = 1
    DXI = 2
    DETA = 3

    @property
    def label(self) -> str:
        """Name used in the textual syntax."""
        return _KIND_LABELS[self]

    @property
    def is_derivative(self) -> bool:
        """Whether the kind is a partial derivative."""
        return self in (Kind.DXI, Kind.DETA)

    @classmethod
    def from_label(cls, label: str) -> Kind:
        """Look a kind up by its textual name."""
        for kind, name in _KIND_LABELS.items():
            if name == label:
                return kind
        raise DomainError(f"unknown generator kind {label!r}")


_KIND_LABELS = {
    Kind.XI: KIND_XI,
    Kind.ETA: KIND_ETA,
    Kind.DXI: KIND_DXI,
    Kind.DETA: KIND_DETA,
}


@dataclass(frozen=True, order=True)
class Generator:
    """A higher differential or a derivative with respect to one, at a level."""

    kind: Kind
    level: int

    def __post_init__(self) -> None:
        """Validate the level."""
        if not isinstance(self.level, int) or isinstance(self.level, bool):
            raise DomainError(f"generator level must be an integer, got {self.level!r}")
        if self.level < 0:
            raise DomainError(f"generator level must be non-negative, got {self.level}")
        if self.level > DEFAULT_LEVEL_BOUND:
            raise DomainError(
                f"generator level {self.level} exceeds the bound {DEFAULT_LEVEL_BOUND}"
            )

    def __str__(self) -> str:
        """Render as ``kind[level]``."""
        return f"{self.kind.label}[{self.level}]"

    @property
    def is_derivative(self) -> bool:
        """Whether this is a partial derivative."""
        return self.kind.is_derivative

    def with_level(self, level: int) -> Generator:
        """Return the generator of the same kind at ``level``."""
        return Generator(self.kind, level)

    def raised(self) -> Generator:
        """Return the same kind one level up."""
        return Generator(self.kind, self.level + 1)

    def derivative(self) -> Generator:
        """Return the partial derivative with respect to this differential."""
        if self.kind is Kind.XI:
            return Generator(Kind.DXI, self.level)
        if self.kind is Kind.ETA:
            return Generator(Kind.DETA, self.level)
        raise DomainError(f"{self} is already a derivative")

    def differential(self) -> Generator:
        """Return the differential this derivative is taken with respect to."""
        if self.kind is Kind.DXI:
            return Generator(Kind.XI, self.level)
        if self.kind is Kind.DETA:
            return Generator(Kind.ETA, self.level)
        raise DomainError(f"{self} is not a derivative")


def xi(level: int) -> Generator:
    """Return the differential of x of order ``level + 1``."""
    return Generator(Kind.XI, level)


def eta(level: int) -> Generator:
    """Return the differential of y of order ``level + 1``."""
    return Generator(Kind.ETA, level)


def dxi(level: int) -> Generator:
    """Return the derivative with respect to ``xi(level)``."""
    return Generator(Kind.DXI, level)


def deta(level: int) -> Generator:
    """Return the derivative with respect to ``eta(level)``."""
    return Generator(Kind.DETA, level)


Word = tuple[Generator, ...]


def word_text(word: Iterable[Any]) -> str:
    """Render a word as letters joined by ``*``, the empty word as ``1``."""
    letters = [str(letter) for letter in word]
    return "*".join(letters) if letters else "1"


def word_sort_key(word: Word) -> tuple[int, tuple[tuple[int, int], ...]]:
    """Sort words by length, then letter by letter on (kind, level)."""
    return len(word), tuple((int(g.kind), g.level) for g in word)


class Combination:
    """Finite formal sum of letter tuples with nonzero scalar coefficients.

    Products concatenate keys. Coefficients are whatever scalar type the
    caller works with; only ``+``, ``*``, negation and truthiness are used.
    """

    __slots__ = ("terms",)

    def __init__(self, terms: Mapping[Any, Any] | Iterable[tuple[Any, Any]] = ()) -> None:
        """Initialize from a mapping or an iterable of (key, coefficient)."""
        accumulated: dict[Any, Any] = {}
        items = terms.items() if isinstance(terms, Mapping) else terms
        for key, coeff in items:
            key = tuple(key)
            if key in accumulated:
                accumulated[key] = accumulated[key] + coeff
            else:
                accumulated[key] = coeff
        self.terms: dict[Any, Any] = {k: c for k, c in accumulated.items() if c}

    @classmethod
    def monomial(cls: type[C], key: Iterable[Any], coeff: Any) -> C:
        """Return ``coeff`` times a single key."""
        return cls([(tuple(key), coeff)])

    @classmethod
    def zero(cls: type[C]) -> C:
        """Return the empty sum."""
        return cls()

    @staticmethod
    def sort_key(key: tuple[Any, ...]) -> Any:
        """Deterministic key order used for rendering."""
        return len(key), key

    def __repr__(self) -> str:
        """Return a debugging representation."""
        inner = ", ".join(f"{word_text(k)}: {c}" for k, c in self.sorted_items())
        return f"{type(self).__name__}({{{inner}}})"

    def __bool__(self) -> bool:
        """A combination is falsy when it is zero."""
        return bool(self.terms)

    def __len__(self) -> int:
        """Number of terms."""
        return len(self.terms)

    def __iter__(self) -> Iterator[tuple[Any, Any]]:
        """Iterate over (key, coefficient) pairs."""
        return iter(self.terms.items())

    def __eq__(self, other: object) -> bool:
        """Compare term maps; ``0`` compares equal to the empty sum."""
        if isinstance(other, int) and other == 0:
            return not self.terms
        if not isinstance(other, Combination):
            return NotImplemented
        return type(self) is type(other) and self.terms == other.terms

    __hash__ = None  # type: ignore[assignment]

    def __add__(self: C, other: C) -> C:
        """Return the sum."""
        if not isinstance(other, Combination):
            return NotImplemented
        self._check_compatible(other)
        return type(self)(list(self.terms.items()) + list(other.terms.items()))

    def __neg__(self: C) -> C:
        """Return the negation."""
        return type(self)({k: -c for k, c in self.terms.items()})

    def __sub__(self: C, other: C) -> C:
        """Return the difference."""
        if not isinstance(other, Combination):
            return NotImplemented
        return self + (-other)

    def __mul__(self: C, other: Any) -> C:
        """Concatenate with another combination, or scale by a scalar."""
        if isinstance(other, Combination):
            self._check_compatible(other)
            return type(self)(
                (k1 + k2, c1 * c2)
                for k1, c1 in self.terms.items()
                for k2, c2 in other.terms.items()
            )
        return self.scale(other)

    def __rmul__(self: C, other: Any) -> C:
        """Scale by a scalar from the left."""
        return self.scale(other)

    def __pow__(self: C, exponent: int) -> C:
        """Concatenate ``exponent`` copies."""
        if not isinstance(exponent, int) or exponent < 1:
            raise DomainError(f"exponent must be a positive integer, got {exponent!r}")
        result = self
        for _ in range(exponent - 1):
            result = result * self
        return result

    def _check_compatible(self, other: Combination) -> None:
        if type(self) is not type(other):
            raise DomainError(
                f"cannot combine {type(self).__name__} with {type(other).__name__}"
            )
        mine, theirs = self.coefficient_field(), other.coefficient_field()
        if mine is not None and theirs is not None and mine != theirs:
            raise DomainError("cannot combine coefficients from different scalar contexts")

    def coefficient_field(self) -> Any:
        """Return the field of the symbolic coefficients, None if there are none."""
        return next((c.field for c in self.terms.values() if hasattr(c, "field")), None)

    def scale(self: C, coeff: Any) -> C:
        """Multiply every coefficient by ``coeff`` on the left."""
        if not coeff:
            return type(self)()
        return type(self)({k: coeff * c for k, c in self.terms.items()})

    def coefficient(self, key: Iterable[Any], default: Any = 0) -> Any:
        """Return the coefficient of ``key``, ``default`` if absent."""
        return self.terms.get(tuple(key), default)

    def map_coefficients(self: C, func: Callable[[Any], Any]) -> C:
        """Apply ``func`` to every coefficient."""
        return type(self)((k, func(c)) for k, c in self.terms.items())

    def sorted_items(self) -> list[tuple[Any, Any]]:
        """Return (key, coefficient) pairs in rendering order."""
        return sorted(self.terms.items(), key=lambda item: self.sort_key(item[0]))

    def is_scalar(self) -> bool:
        """Whether every term has the empty key."""
        return all(not key for key in self.terms)

    def scalar_part(self, zero: Any = 0) -> Any:
        """Coefficient of the empty key."""
        return self.terms.get((), zero)


class Expr(Combination):
    """Formal sum of words in the differentials and derivatives."""

    __slots__ = ()

    @staticmethod
    def sort_key(key: tuple[Any, ...]) -> Any:
        """Sort by word length, then (kind, level) letter by letter."""
        return word_sort_key(key)

    def letters(self) -> Iterator[Generator]:
        """Iterate over every letter of every word."""
        for word in self.terms:
            yield from word

    def is_derivative_free(self) -> bool:
        """Whether no word contains a derivative letter."""
        return not any(g.is_derivative for g in self.letters())

    def require_derivative_free(self, operation: str) -> None:
        """Raise DomainError if a derivative letter is present."""
        for g in self.letters():
            if g.is_derivative:
                raise DomainError(f"{operation} requires a derivative-free expression, found {g}")


def generator_expr(generator: Generator, one: Any) -> Expr:
    """Return a single generator as an expression."""
    return Expr.monomial((generator,), one)


def word_expr(word: Iterable[Generator], coeff: Any) -> Expr:
    """Return ``coeff`` times a word."""
    return Expr.monomial(tuple(word), coeff)


def constant_expr(coeff: Any) -> Expr:
    """Return a scalar as an expression on the empty word."""
    return Expr.monomial((), coeff)


def expr_mul(a: Expr, b: Expr) -> Expr:
    """Return the concatenation product, without rewriting."""
    return a * b


def expr_add(a: Expr, b: Expr) -> Expr:
    """Return the sum, with zero coefficients pruned."""
    return a + b


def scalar_scale(coeff: Any, a: Expr) -> Expr:
    """Return ``coeff`` times ``a``."""
    return a.scale(coeff)


def degree(word: Iterable[Generator]) -> int:
    """Return the grading of a derivative-free word, the sum of its levels."""
    total = 0
    for g in word:
        if g.is_derivative:
            raise DomainError(f"degree is undefined on derivative letter {g}")
        total += g.level
    return total


def max_level(e: Expr) -> int:
    """Return the largest level over all letters, 0 for the zero expression."""
    return max((g.level for g in e.letters()), default=0)


def split_by_degree(e: Expr) -> dict[int, Expr]:
    """Group the terms of a derivative-free expression by degree."""
    groups: dict[int, list[tuple[Word, Any]]] = {}
    for word, coeff in e:
        groups.setdefault(degree(word), []).append((word, coeff))
    return {d: Expr(items) for d, items in groups.items()}

