"""Exact arithmetic in the ring Q[q^(1/2), q^(-1/2)].

Scalars are stored as a map from *doubled* exponents to rational
coefficients, so a key of 3 means q^(3/2) and a key of -2 means q^(-1).
Doubling keeps all exponent bookkeeping in integers; half powers of q
show up when open diagrams turn through an odd number of quarter-circles.

Values are immutable and in canonical form (no zero coefficients), so
equality is plain dict equality and instances can be shared freely
between threads.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Iterable, Iterator


class LaurentScalar:
    """A Laurent polynomial in q with half-integer exponents allowed."""

    __slots__ = ("_terms",)

    def __init__(self, terms: dict[int, Fraction] | None = None):
        clean = {}
        if terms:
            for exp, coef in terms.items():
                coef = Fraction(coef)
                if coef != 0:
                    clean[int(exp)] = coef
        self._terms = clean

    # -- constructors ------------------------------------------------

    @classmethod
    def zero(cls) -> "LaurentScalar":
        return cls()

    @classmethod
    def one(cls) -> "LaurentScalar":
        return cls({0: Fraction(1)})

    @classmethod
    def monomial(cls, sign: int, doubled_exponent: int) -> "LaurentScalar":
        """sign * q^(doubled_exponent / 2); sign must be +1 or -1."""
        if sign not in (1, -1):
            raise ValueError(f"sign must be +1 or -1, got {sign}")
        return cls({doubled_exponent: Fraction(sign)})

    @classmethod
    def q_power(cls, exponent: int) -> "LaurentScalar":
        """q^exponent for an integer exponent."""
        return cls({2 * exponent: Fraction(1)})

    # -- ring operations ---------------------------------------------

    def __add__(self, other: "LaurentScalar") -> "LaurentScalar":
        terms = dict(self._terms)
        for exp, coef in other._terms.items():
            terms[exp] = terms.get(exp, Fraction(0)) + coef
        return LaurentScalar(terms)

    def __neg__(self) -> "LaurentScalar":
        return LaurentScalar({e: -c for e, c in self._terms.items()})

    def __sub__(self, other: "LaurentScalar") -> "LaurentScalar":
        return self + (-other)

    def __mul__(self, other: "LaurentScalar") -> "LaurentScalar":
        terms: dict[int, Fraction] = {}
        for e1, c1 in self._terms.items():
            for e2, c2 in other._terms.items():
                e = e1 + e2
                terms[e] = terms.get(e, Fraction(0)) + c1 * c2
        return LaurentScalar(terms)

    def divide_by_unit(self, unit: "LaurentScalar") -> "LaurentScalar":
        """Divide by a one-term scalar (a unit of the ring)."""
        if len(unit._terms) != 1:
            raise ValueError("can only divide by a single-term scalar")
        ((exp, coef),) = unit._terms.items()
        return LaurentScalar({e - exp: c / coef for e, c in self._terms.items()})

    def bar(self) -> "LaurentScalar":
        """Substitute q -> q^(-1)."""
        return LaurentScalar({-e: c for e, c in self._terms.items()})

    # -- queries -----------------------------------------------------

    def is_zero(self) -> bool:
        return not self._terms

    def is_one(self) -> bool:
        return self._terms == {0: Fraction(1)}

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, LaurentScalar):
            return NotImplemented
        return self._terms == other._terms

    def __hash__(self) -> int:
        return hash(frozenset(self._terms.items()))

    def __bool__(self) -> bool:
        return bool(self._terms)

    def items(self) -> Iterator[tuple[int, Fraction]]:
        return iter(sorted(self._terms.items()))

    # -- serialization -----------------------------------------------

    def to_triples(self) -> list[tuple[int, int, int]]:
        """(doubled_exponent, numerator, denominator) triples, sorted by exponent."""
        return [
            (e, c.numerator, c.denominator) for e, c in sorted(self._terms.items())
        ]

    @classmethod
    def from_triples(cls, triples: Iterable[Iterable[int]]) -> "LaurentScalar":
        terms: dict[int, Fraction] = {}
        for entry in triples:
            e, num, den = entry
            terms[int(e)] = terms.get(int(e), Fraction(0)) + Fraction(int(num), int(den))
        return cls(terms)

    def __str__(self) -> str:
        if not self._terms:
            return "0"
        parts = []
        for e, c in sorted(self._terms.items()):
            if e == 0:
                body = str(c)
            else:
                if e % 2 == 0:
                    power = str(e // 2)
                else:
                    power = f"{e}/2"
                qpart = "q" if power == "1" else f"q^{{{power}}}"
                if c == 1:
                    body = qpart
                elif c == -1:
                    body = f"-{qpart}"
                else:
                    body = f"{c}*{qpart}"
            parts.append(body)
        out = parts[0]
        for p in parts[1:]:
            out += " - " + p[1:] if p.startswith("-") else " + " + p
        return out

    def __repr__(self) -> str:
        return f"LaurentScalar({self._terms!r})"


ZERO = LaurentScalar.zero()
ONE = LaurentScalar.one()


def quantum_integer(k: int) -> LaurentScalar:
    """[k] = q^(1-k) + q^(3-k) + ... + q^(k-1); [0] is the zero scalar."""
    if k < 0:
        raise ValueError(f"quantum integer needs k >= 0, got {k}")
    return LaurentScalar({2 * e: Fraction(1) for e in range(1 - k, k, 2)})


def q_sign(diff: int) -> LaurentScalar:
    """q^(sign(diff)) for nonzero diff."""
    if diff == 0:
        raise ValueError("sign of zero is undefined here")
    return LaurentScalar.q_power(1 if diff > 0 else -1)
