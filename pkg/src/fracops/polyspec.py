"""Text grammar for monomial series: ``poly:<c1>@<m1>[,<c2>@<m2>...]``.

Each ``c@m`` pair is one term c * (t - a)^m; numbers may use decimal or
scientific notation.  Parsing canonicalizes (sorts, merges) and formatting
uses shortest round-trip floats, so parse(format(s)) == s for any canonical
series.
"""

from __future__ import annotations

from .errors import DomainError, ParseError
from .monomial import MonomialSeries

__all__ = ["parse_spec", "format_spec"]

_PREFIX = "poly:"


def parse_spec(text: str, base: float = 0.0) -> MonomialSeries:
    """Parse spec text into a canonical series anchored at ``base``.

    Raises ParseError (with byte offset) on malformed text and DomainError
    for exponents <= -1.
    """
    # tolerate the typographic unicode minus
    text = text.replace("−", "-")
    if not text.startswith(_PREFIX):
        raise ParseError(f"expected {_PREFIX!r} prefix", 0)
    body = text[len(_PREFIX):]
    if not body:
        raise ParseError("expected at least one coeff@exponent term", len(_PREFIX))

    terms = []
    offset = len(_PREFIX)
    for chunk in body.split(","):
        if chunk.count("@") != 1:
            raise ParseError("expected exactly one '@' in term", offset)
        coeff_text, exp_text = chunk.split("@")
        try:
            coeff = float(coeff_text)
        except ValueError:
            raise ParseError(f"expected a number, got {coeff_text!r}", offset) from None
        try:
            exponent = float(exp_text)
        except ValueError:
            raise ParseError(
                f"expected a number, got {exp_text!r}", offset + len(coeff_text) + 1
            ) from None
        if exponent <= -1.0:
            raise DomainError(f"exponent must exceed -1, got {exponent}")
        terms.append((coeff, exponent))
        offset += len(chunk) + 1
    return MonomialSeries.make(base, terms)


def format_spec(series: MonomialSeries) -> str:
    """Canonical text form; the zero series renders as 'poly:0@0'."""
    if series.is_zero:
        return _PREFIX + "0@0"
    return _PREFIX + ",".join(f"{m.coeff!r}@{m.exponent!r}" for m in series.terms)
