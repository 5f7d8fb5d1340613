"""Reduced words in the free group on k generators.

A letter is a nonzero integer: ``+i`` stands for the generator ``g_i`` and
``-i`` for its inverse, so inversion is negation and a pair of adjacent
letters cancels exactly when they sum to zero.  A word is reduced when no
such pair occurs.  The canonical letter order ``g1 < g1^-1 < g2 < g2^-1 <
...`` fixes a deterministic enumeration order for the sphere of radius n
in the Cayley graph, which is what makes table output reproducible byte
for byte.
"""

from __future__ import annotations

import itertools
import re
from dataclasses import dataclass
from typing import Iterable, Iterator, Sequence

DEFAULT_ENUMERATION_CAP = 10_000_000

_ATOM_RE = re.compile(r"^(?:g(?P<index>[1-9][0-9]*)|(?P<letter>[a-z]))(?:\^(?P<exp>-?[0-9]+))?$")


class RankMismatchError(ValueError):
    """Words or elements over different ranks were combined."""


class CapExceededError(RuntimeError):
    """An enumeration or product would exceed the configured size cap."""


class WordParseError(ValueError):
    """Input text does not conform to the word grammar."""


def all_letters(k: int) -> tuple[int, ...]:
    """The 2k letters in canonical order g1, g1^-1, g2, g2^-1, ..."""
    _check_rank(k)
    out: list[int] = []
    for i in range(1, k + 1):
        out.append(i)
        out.append(-i)
    return tuple(out)


def letter_key(x: int) -> tuple[int, int]:
    """Sort key realizing the canonical order (index first, inverse after)."""
    return (abs(x), 0 if x > 0 else 1)


def _check_rank(k: int) -> None:
    if not isinstance(k, int) or isinstance(k, bool) or k < 2:
        raise ValueError(f"rank must be an integer >= 2, got {k!r}")


def _check_letter(x: int, k: int) -> None:
    if not isinstance(x, int) or isinstance(x, bool) or x == 0 or abs(x) > k:
        raise ValueError(f"invalid letter {x!r} for rank {k}")


@dataclass(frozen=True, slots=True)
class ReducedWord:
    """A freely reduced word; the empty tuple is the identity e."""

    rank: int
    letters: tuple[int, ...] = ()

    def __post_init__(self) -> None:
        _check_rank(self.rank)
        prev = 0
        for x in self.letters:
            _check_letter(x, self.rank)
            if x == -prev:
                raise ValueError(f"letter sequence {self.letters!r} is not freely reduced")
            prev = x

    def __len__(self) -> int:
        return len(self.letters)

    def __str__(self) -> str:
        return format_word(self)

    def __repr__(self) -> str:
        return f"ReducedWord({self.rank}, {format_word(self)!r})"

    @property
    def is_identity(self) -> bool:
        return not self.letters

    def inverse(self) -> "ReducedWord":
        return _raw_word(self.rank, tuple(-x for x in reversed(self.letters)))

    def __mul__(self, other: "ReducedWord") -> "ReducedWord":
        return concat(self, other)[0]


def _raw_word(rank: int, letters: tuple[int, ...]) -> ReducedWord:
    # Trusted constructor: callers guarantee reducedness, skipping validation.
    w = object.__new__(ReducedWord)
    object.__setattr__(w, "rank", rank)
    object.__setattr__(w, "letters", letters)
    return w


def reduce(seq: Sequence[int] | Iterable[int], k: int) -> ReducedWord:
    """Freely reduce a letter sequence to its unique reduced form."""
    _check_rank(k)
    stack: list[int] = []
    for x in seq:
        _check_letter(x, k)
        if stack and stack[-1] == -x:
            stack.pop()
        else:
            stack.append(x)
    return _raw_word(k, tuple(stack))


def concat(u: ReducedWord, v: ReducedWord) -> tuple[ReducedWord, int]:
    """Product of reduced words, plus the number of cancelled pairs."""
    if u.rank != v.rank:
        raise RankMismatchError(f"rank mismatch: {u.rank} vs {v.rank}")
    a, b = u.letters, v.letters
    la, t = len(a), 0
    limit = min(la, len(b))
    while t < limit and a[la - 1 - t] == -b[t]:
        t += 1
    return _raw_word(u.rank, a[: la - t] + b[t:]), t


def inverse(u: ReducedWord) -> ReducedWord:
    """Inverse word: reversed sequence with all signs flipped."""
    return u.inverse()


def word_count(k: int, n: int) -> int:
    """Number of reduced words of length n: 1 for n=0, else 2k(2k-1)^(n-1)."""
    _check_rank(k)
    if not isinstance(n, int) or n < 0:
        raise ValueError(f"length must be a nonnegative integer, got {n!r}")
    if n == 0:
        return 1
    return 2 * k * (2 * k - 1) ** (n - 1)


def enumerate_words(k: int, n: int, cap: int | None = None) -> Iterator[ReducedWord]:
    """Yield every reduced word of length n once, in canonical order.

    The order is lexicographic position by position under the canonical
    letter order, so repeated runs produce identical streams.  Raises
    CapExceededError up front when the sphere size exceeds the cap.
    """
    limit = DEFAULT_ENUMERATION_CAP if cap is None else cap
    total = word_count(k, n)
    if total > limit:
        raise CapExceededError(
            f"enumerating {total} words of length {n} (rank {k}) exceeds cap {limit}"
        )
    if n == 0:
        yield _raw_word(k, ())
        return
    order = all_letters(k)
    if n == 1:
        for x in order:
            yield _raw_word(k, (x,))
        return
    # Positions after the first choose among the 2k-1 letters that do not
    # cancel the previous one; indexing into precomputed successor tuples
    # keeps the inner loop at C speed via itertools.product.
    successors = {p: tuple(x for x in order if x != -p) for p in order}
    for first in order:
        for digits in itertools.product(range(2 * k - 1), repeat=n - 1):
            letters = [first]
            prev = first
            for d in digits:
                prev = successors[prev][d]
                letters.append(prev)
            yield _raw_word(k, tuple(letters))


def canonical_key(w: ReducedWord) -> tuple[int, tuple[tuple[int, int], ...]]:
    """Total order on words: by length, then canonical letter order."""
    return (len(w.letters), tuple(letter_key(x) for x in w.letters))


def _letter_name(index: int, letters: bool) -> str:
    # 'e' always means the identity, so generator 5 keeps its gI spelling
    # even in shorthand mode.
    if letters and index <= 26 and index != 5:
        return chr(ord("a") + index - 1)
    return f"g{index}"


def format_word(w: ReducedWord, letters: bool = False) -> str:
    """Render a word in the grammar accepted by parse_word."""
    if not w.letters:
        return "e"
    parts: list[str] = []
    for letter, run in itertools.groupby(w.letters):
        count = sum(1 for _ in run)
        exp = count if letter > 0 else -count
        name = _letter_name(abs(letter), letters)
        parts.append(name if exp == 1 else f"{name}^{exp}")
    return " ".join(parts)


def parse_word(text: str, k: int, letters: bool = False) -> ReducedWord:
    """Parse whitespace-separated atoms gI, gI^E, or e; reduces the result.

    With letters=True the shorthand a, b, c, ... maps to g1, g2, g3, ...
    ('e' stays the identity).  Exponents are nonzero integers; negative
    exponents denote inverses.
    """
    _check_rank(k)
    tokens = text.split()
    if not tokens:
        raise WordParseError("empty word text (use 'e' for the identity)")
    seq: list[int] = []
    for tok in tokens:
        if tok == "e":
            continue
        m = _ATOM_RE.match(tok)
        if m is None:
            raise WordParseError(f"bad atom {tok!r}")
        if m.group("index") is not None:
            index = int(m.group("index"))
        else:
            if not letters:
                raise WordParseError(
                    f"letter shorthand {tok!r} requires the letters flag"
                )
            index = ord(m.group("letter")) - ord("a") + 1
        if index > k:
            raise WordParseError(f"generator g{index} out of range for rank {k}")
        exp = int(m.group("exp")) if m.group("exp") is not None else 1
        if exp == 0:
            raise WordParseError(f"zero exponent in {tok!r}")
        seq.extend([index if exp > 0 else -index] * abs(exp))
    return reduce(seq, k)
