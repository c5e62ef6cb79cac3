"""Text, LaTeX and JSON rendering of expressions."""

from __future__ import annotations

import json
from typing import Any

from .algebra import Combination, Generator, Kind
from .const import FORMAT_JSON, FORMAT_LATEX, FORMAT_TEXT, FORMATS
from .exceptions import DomainError
from .qgroup import TensorExpr
from .scalars import scalar_latex, scalar_structured, scalar_text

_LATEX_SYMBOLS = {Kind.XI: r"\xi", Kind.ETA: r"\eta"}


def _letters(key: tuple[Any, ...], tensor: bool) -> tuple[Any, ...]:
    if tensor:
        qword, word = key
        return tuple(qword) + tuple(word)
    return key


def letter_text(letter: Any) -> str:
    """Render one letter in the textual syntax."""
    return str(letter)


def letter_latex(letter: Any) -> str:
    """Render one letter as LaTeX."""
    if isinstance(letter, Generator):
        if letter.is_derivative:
            base = _LATEX_SYMBOLS[letter.differential().kind]
            return rf"\partial_{{{base}^{{{letter.level}}}}}"
        return rf"{_LATEX_SYMBOLS[letter.kind]}^{{{letter.level}}}"
    return str(letter)


def letter_structured(letter: Any) -> Any:
    """Render one letter as JSON-ready data."""
    if isinstance(letter, Generator):
        return [letter.kind.label, letter.level]
    return str(letter)


def _join(terms: list[str]) -> str:
    if not terms:
        return "0"
    rendered = terms[0]
    for term in terms[1:]:
        rendered += f" - {term[1:]}" if term.startswith("-") else f" + {term}"
    return rendered


def to_text(e: Combination) -> str:
    """Render in the syntax accepted by the parser."""
    tensor = isinstance(e, TensorExpr)
    terms = []
    for key, coeff in e.sorted_items():
        letters = "*".join(letter_text(letter) for letter in _letters(key, tensor))
        if not letters:
            terms.append(scalar_text(coeff))
        elif coeff == 1:
            terms.append(letters)
        elif coeff == -1:
            terms.append(f"-{letters}")
        else:
            terms.append(f"{scalar_text(coeff, as_factor=True)}*{letters}")
    return _join(terms)


def to_latex(e: Combination) -> str:
    """Render as LaTeX."""
    tensor = isinstance(e, TensorExpr)
    terms = []
    for key, coeff in e.sorted_items():
        letters = "".join(letter_latex(letter) for letter in _letters(key, tensor))
        if not letters:
            terms.append(scalar_latex(coeff))
        elif coeff == 1:
            terms.append(letters)
        elif coeff == -1:
            terms.append(f"-{letters}")
        else:
            terms.append(rf"{scalar_latex(coeff, as_factor=True)}\,{letters}")
    return _join(terms)


def to_structured(e: Combination) -> dict[str, Any]:
    """Render as JSON-ready data."""
    tensor = isinstance(e, TensorExpr)
    indeterminates: list[str] = []
    terms = []
    for key, coeff in e.sorted_items():
        coefficient = scalar_structured(coeff)
        indeterminates = coefficient.pop("indeterminates") or indeterminates
        term: dict[str, Any] = {"coefficient": coefficient}
        if tensor:
            qword, word = key
            term["qword"] = [letter_structured(letter) for letter in qword]
            term["word"] = [letter_structured(letter) for letter in word]
        else:
            term["word"] = [letter_structured(letter) for letter in key]
        terms.append(term)
    return {"indeterminates": indeterminates, "terms": terms}


def to_json(e: Combination) -> str:
    """Render as a JSON document."""
    return json.dumps(to_structured(e))


def render(e: Combination, fmt: str = FORMAT_TEXT) -> str:
    """Render ``e`` as text, json or latex."""
    if fmt == FORMAT_TEXT:
        return to_text(e)
    if fmt == FORMAT_LATEX:
        return to_latex(e)
    if fmt == FORMAT_JSON:
        return to_json(e)
    raise DomainError(f"unknown format {fmt!r}, expected one of {', '.join(FORMATS)}")
