"""Finitely supported rational combinations of reduced words.

The product is convolution over the free group: coefficients multiply and
land on the reduced concatenation of the supporting words.  Supports can
multiply in size, so a cap guards against accidental blowups.  Scalars are
exact (int or Fraction); floats are rejected so that every identity in the
test suite can be checked with plain equality.
"""

from __future__ import annotations

from fractions import Fraction
from numbers import Rational
from typing import Iterable, Mapping, Union

from .words import (
    CapExceededError,
    RankMismatchError,
    ReducedWord,
    canonical_key,
    concat,
    enumerate_words,
    format_word,
    parse_word,
    word_count,
)

DEFAULT_PRODUCT_CAP = 10_000_000

Scalar = Union[int, Fraction]


def _check_scalar(c: object) -> None:
    if isinstance(c, bool) or not isinstance(c, Rational):
        raise TypeError(f"coefficients must be exact rationals, got {type(c).__name__}")


class AlgebraElement:
    """Finitely supported map ReducedWord -> rational, under convolution."""

    __slots__ = ("rank", "_terms")

    def __init__(
        self,
        rank: int,
        terms: Mapping[ReducedWord, Scalar] | Iterable[tuple[ReducedWord, Scalar]] = (),
    ) -> None:
        items = terms.items() if isinstance(terms, Mapping) else terms
        clean: dict[ReducedWord, Scalar] = {}
        for w, c in items:
            if not isinstance(w, ReducedWord):
                raise TypeError(f"support must consist of ReducedWord, got {type(w).__name__}")
            if w.rank != rank:
                raise RankMismatchError(f"word of rank {w.rank} in element of rank {rank}")
            _check_scalar(c)
            total = clean.get(w, 0) + c
            if total == 0:
                clean.pop(w, None)
            else:
                clean[w] = total
        ReducedWord(rank)  # validates the rank itself
        object.__setattr__(self, "rank", rank)
        object.__setattr__(self, "_terms", clean)

    @classmethod
    def _from_raw(cls, rank: int, terms: dict[ReducedWord, Scalar]) -> "AlgebraElement":
        el = object.__new__(cls)
        object.__setattr__(el, "rank", rank)
        object.__setattr__(el, "_terms", terms)
        return el

    @classmethod
    def zero(cls, rank: int) -> "AlgebraElement":
        return cls(rank)

    @classmethod
    def from_word(cls, w: ReducedWord, coeff: Scalar = 1) -> "AlgebraElement":
        return cls(w.rank, {w: coeff})

    # -- container-ish access ------------------------------------------------

    def coeff(self, w: ReducedWord) -> Scalar:
        return self._terms.get(w, 0)

    def items(self) -> Iterable[tuple[ReducedWord, Scalar]]:
        return self._terms.items()

    def support(self) -> list[ReducedWord]:
        """Supporting words in canonical order."""
        return sorted(self._terms, key=canonical_key)

    def support_size(self) -> int:
        return len(self._terms)

    def __bool__(self) -> bool:
        return bool(self._terms)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, AlgebraElement):
            return NotImplemented
        return self.rank == other.rank and self._terms == other._terms

    def __hash__(self) -> int:
        return hash((self.rank, frozenset(self._terms.items())))

    def __repr__(self) -> str:
        shown = sorted(self._terms, key=canonical_key)[:4]
        body = " + ".join(f"{self._terms[w]}*{format_word(w)}" for w in shown)
        if len(self._terms) > 4:
            body += f" + ... ({len(self._terms)} terms)"
        return f"AlgebraElement({self.rank}, {body or '0'})"

    # -- linear structure ----------------------------------------------------

    def __add__(self, other: "AlgebraElement") -> "AlgebraElement":
        if not isinstance(other, AlgebraElement):
            return NotImplemented
        if self.rank != other.rank:
            raise RankMismatchError(f"rank mismatch: {self.rank} vs {other.rank}")
        acc = dict(self._terms)
        for w, c in other._terms.items():
            total = acc.get(w, 0) + c
            if total == 0:
                acc.pop(w, None)
            else:
                acc[w] = total
        return AlgebraElement._from_raw(self.rank, acc)

    def __neg__(self) -> "AlgebraElement":
        return AlgebraElement._from_raw(self.rank, {w: -c for w, c in self._terms.items()})

    def __sub__(self, other: "AlgebraElement") -> "AlgebraElement":
        if not isinstance(other, AlgebraElement):
            return NotImplemented
        return self + (-other)

    def scalar_mul(self, c: Scalar) -> "AlgebraElement":
        _check_scalar(c)
        if c == 0:
            return AlgebraElement._from_raw(self.rank, {})
        return AlgebraElement._from_raw(self.rank, {w: c * x for w, x in self._terms.items()})

    def __mul__(self, other: object) -> "AlgebraElement":
        if isinstance(other, AlgebraElement):
            return mul(self, other)
        if isinstance(other, Rational) and not isinstance(other, bool):
            return self.scalar_mul(other)  # type: ignore[arg-type]
        return NotImplemented

    def __rmul__(self, other: object) -> "AlgebraElement":
        if isinstance(other, Rational) and not isinstance(other, bool):
            return self.scalar_mul(other)  # type: ignore[arg-type]
        return NotImplemented

    # -- *-algebra structure -------------------------------------------------

    def adjoint(self) -> "AlgebraElement":
        """Coefficient of v in the adjoint is the coefficient of v^-1."""
        return AlgebraElement._from_raw(
            self.rank, {w.inverse(): c for w, c in self._terms.items()}
        )

    def trace(self) -> Scalar:
        """Coefficient at the identity word."""
        return self._terms.get(ReducedWord(self.rank), 0)

    def l2_norm_sq(self) -> Scalar:
        """Sum of squared coefficients; equals trace(adjoint(a) * a)."""
        return sum(c * c for c in self._terms.values())


def mul(a: AlgebraElement, b: AlgebraElement, cap: int | None = None) -> AlgebraElement:
    """Convolution product, with a cap on the support of the result."""
    if a.rank != b.rank:
        raise RankMismatchError(f"rank mismatch: {a.rank} vs {b.rank}")
    limit = DEFAULT_PRODUCT_CAP if cap is None else cap
    acc: dict[ReducedWord, Scalar] = {}
    get = acc.get
    for u, cu in a._terms.items():
        for v, cv in b._terms.items():
            w, _ = concat(u, v)
            acc[w] = get(w, 0) + cu * cv
        if len(acc) > limit:
            raise CapExceededError(
                f"product support exceeds cap {limit} "
                f"(operands have {a.support_size()} and {b.support_size()} terms)"
            )
    return AlgebraElement._from_raw(a.rank, {w: c for w, c in acc.items() if c != 0})


def adjoint(a: AlgebraElement) -> AlgebraElement:
    return a.adjoint()


def trace(a: AlgebraElement) -> Scalar:
    return a.trace()


def l2_norm_sq(a: AlgebraElement) -> Scalar:
    return a.l2_norm_sq()


def inner(a: AlgebraElement, b: AlgebraElement) -> Scalar:
    """Trace inner product trace(adjoint(b) * a)."""
    if a.rank != b.rank:
        raise RankMismatchError(f"rank mismatch: {a.rank} vs {b.rank}")
    # Only matching words contribute, so skip the full convolution.
    small, large = (a, b) if a.support_size() <= b.support_size() else (b, a)
    return sum(c * large._terms.get(w, 0) for w, c in small._terms.items())


def w_n_explicit(k: int, n: int, cap: int | None = None) -> AlgebraElement:
    """The sum of all reduced words of length n, materialized term by term."""
    terms: dict[ReducedWord, Scalar] = {w: 1 for w in enumerate_words(k, n, cap=cap)}
    return AlgebraElement._from_raw(k, terms)


def format_element(a: AlgebraElement, letters: bool = False) -> str:
    """One '<rational> <word-text>' line per term, in canonical word order."""
    return "\n".join(
        f"{a.coeff(w)} {format_word(w, letters=letters)}" for w in a.support()
    )


def parse_element(text: str, k: int, letters: bool = False) -> AlgebraElement:
    """Parse the line format produced by format_element; blank lines ignored."""
    terms: list[tuple[ReducedWord, Scalar]] = []
    for lineno, line in enumerate(text.splitlines(), start=1):
        line = line.strip()
        if not line:
            continue
        parts = line.split(maxsplit=1)
        if len(parts) != 2:
            raise ValueError(f"line {lineno}: expected '<rational> <word-text>', got {line!r}")
        try:
            coeff = Fraction(parts[0])
        except ValueError as exc:
            raise ValueError(f"line {lineno}: bad rational {parts[0]!r}") from exc
        terms.append((parse_word(parts[1], k, letters=letters), coeff))
    return AlgebraElement(k, terms)
