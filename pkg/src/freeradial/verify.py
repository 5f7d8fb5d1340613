"""Brute-force oracles and the cross-check suite.

The oracles work by enumeration and explicit convolution only; none of
them touches the recurrence or counting shortcuts whose outputs they
certify, so agreement between the two routes is meaningful evidence.
Every check compares exact values -- there are no tolerances anywhere.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Any, Callable, Iterable, Sequence

from . import counting, radial
from .algebra import AlgebraElement, mul, w_n_explicit
from .radial import RadialElement
from .words import (
    ReducedWord,
    all_letters,
    concat,
    enumerate_words,
    format_word,
    word_count,
)

# Explicit level sums are reused heavily by the oracle grids; memoize the
# small ones (large ones are cheaper to rebuild than to hold in memory).
_WN_MEMO_LIMIT = 100_000
_WN_MEMO: dict[tuple[int, int], AlgebraElement] = {}


def _wn(k: int, n: int, cap: int | None = None) -> AlgebraElement:
    el = _WN_MEMO.get((k, n))
    if el is None:
        el = w_n_explicit(k, n, cap=cap)
        if word_count(k, n) <= _WN_MEMO_LIMIT:
            _WN_MEMO[(k, n)] = el
    return el


@dataclass
class VerificationReport:
    """One cross-check outcome; passes exactly when expected == actual."""

    check: str
    params: tuple
    expected: Any
    actual: Any

    @property
    def passed(self) -> bool:
        return self.expected == self.actual

    def to_dict(self) -> dict[str, Any]:
        return {
            "check": self.check,
            "params": [str(p) for p in self.params],
            "expected": str(self.expected),
            "actual": str(self.actual),
            "passed": self.passed,
        }

    def __str__(self) -> str:
        tag = "ok " if self.passed else "FAIL"
        detail = " ".join(str(p) for p in self.params)
        if self.passed:
            return f"{tag} {self.check} [{detail}]"
        return f"{tag} {self.check} [{detail}] expected={self.expected} actual={self.actual}"


# -- oracles ------------------------------------------------------------------


def oracle_expect(
    x: ReducedWord, y: ReducedWord, n: int, cap: int | None = None
) -> RadialElement:
    """Expectation of x * w_n * y the slow way: materialize and convolve."""
    if x.rank != y.rank:
        raise ValueError(f"rank mismatch: {x.rank} vs {y.rank}")
    wn = _wn(x.rank, n, cap=cap)
    sandwich = mul(mul(AlgebraElement.from_word(x), wn, cap=cap), AlgebraElement.from_word(y), cap=cap)
    return radial.expect(sandwich)


def oracle_nu(k: int, x: int, y: int, n: int, cap: int | None = None) -> int:
    """Count length-n words starting with x and ending with y by enumeration."""
    if n < 1:
        raise ValueError(f"oracle_nu needs n >= 1, got {n}")
    return sum(1 for w in enumerate_words(k, n, cap=cap) if w.letters[0] == x and w.letters[-1] == y)


def oracle_nu_sets(
    k: int, sigma: frozenset[int] | set[int], tau: frozenset[int] | set[int], n: int,
    cap: int | None = None,
) -> int:
    """Set version of oracle_nu, again by direct filtering."""
    return sum(
        1 for w in enumerate_words(k, n, cap=cap) if w.letters[0] in sigma and w.letters[-1] in tau
    )


def oracle_abc(k: int, n: int, cap: int | None = None) -> tuple[int, int, int]:
    """(alpha, beta, gamma) at length n in one enumeration pass."""
    a = b = g = 0
    for w in enumerate_words(k, n, cap=cap):
        if w.letters[0] != 1:
            continue
        last = w.letters[-1]
        if last == 2:
            a += 1
        elif last == 1:
            b += 1
        elif last == -1:
            g += 1
    return a, b, g


def oracle_mu_table(
    x: ReducedWord, y: ReducedWord, n: int, cap: int | None = None
) -> dict[tuple[int, int], int]:
    """Histogram of exact (left, right) cancellation counts of x * u * y
    over all words u of length n.

    The two boundary counts are read off the actual products x*u and u*y;
    they describe the sandwich faithfully whenever n >= |x| + |y|, which
    keeps the two cancellation zones from touching.
    """
    table: dict[tuple[int, int], int] = {}
    for u in enumerate_words(x.rank, n, cap=cap):
        _, r = concat(x, u)
        _, s = concat(u, y)
        key = (r, s)
        table[key] = table.get(key, 0) + 1
    return table


def oracle_mu(
    r: int, s: int, n: int, x: ReducedWord, y: ReducedWord, cap: int | None = None
) -> int:
    return oracle_mu_table(x, y, n, cap=cap).get((r, s), 0)


# -- individual checks --------------------------------------------------------


def check_word_counts(k: int, n_max: int) -> list[VerificationReport]:
    """Sphere sizes: enumeration count and distinctness against the formula."""
    out = []
    for n in range(n_max + 1):
        seen = set(enumerate_words(k, n))
        out.append(VerificationReport("word_count", (k, n), word_count(k, n), len(seen)))
    return out


def check_radial_recurrence(k: int, n_max: int) -> list[VerificationReport]:
    """Degree-one products of level sums, by explicit convolution."""
    out = []
    w1 = _wn(k, 1)
    for n in range(1, n_max + 1):
        lhs = mul(w1, _wn(k, n))
        if n == 1:
            rhs = _wn(k, 2) + _wn(k, 0).scalar_mul(2 * k)
            label = f"w1*w1 = w2 + {2 * k}*w0"
        else:
            rhs = _wn(k, n + 1) + _wn(k, n - 1).scalar_mul(2 * k - 1)
            label = f"w1*w{n} = w{n + 1} + {2 * k - 1}*w{n - 1}"
        same = lhs == rhs and lhs == mul(_wn(k, n), w1)
        out.append(VerificationReport("radial_recurrence", (k, n, label), True, same))
    return out


def check_norms(k: int, n_max: int) -> list[VerificationReport]:
    """Squared trace norm of w_n equals the sphere size, via explicit supports."""
    out = []
    for n in range(n_max + 1):
        out.append(
            VerificationReport("norm_sq", (k, n), word_count(k, n), _wn(k, n).l2_norm_sq())
        )
    return out


def check_counts_vs_enumeration(
    k: int, n_max: int, table: counting.CountTable | None = None
) -> list[VerificationReport]:
    """alpha/beta/gamma from the recurrence against the enumeration oracle.

    Reports are ordered by n, so the first failing report names the first
    length at which an (injected or genuine) table went wrong.
    """
    if table is None:
        table = counting.count_table(k, max(n_max, 2))
    out = []
    for n in range(2, n_max + 1):
        out.append(
            VerificationReport("abc_vs_enumeration", (k, n), oracle_abc(k, n), table.triple(n))
        )
    return out


def check_closed_form(k: int, n_max: int = 30) -> list[VerificationReport]:
    table = counting.count_table(k, n_max)
    out = []
    for n in range(2, n_max + 1):
        out.append(
            VerificationReport(
                "closed_form_vs_recurrence", (k, n), table.triple(n), counting.abc_closed_form(k, n)
            )
        )
    return out


def check_count_identities(k: int, n_max: int = 30) -> list[VerificationReport]:
    """The linear identities and uniform bounds carried by the count table."""
    table = counting.count_table(k, n_max)
    ck = counting.constant_C(k)
    out = []
    for n in range(2, n_max + 1):
        a, b, g = table.triple(n)
        checks = {
            "beta_minus_gamma": b - g == 1,
            "alpha_parity": a - g == (1 + (-1) ** n) // 2,
            "pair_gaps": abs(a - g) <= 1 and abs(a - b) <= 2,
            "level_total": (2 * k - 2) * a + b + g == (2 * k - 1) ** (n - 1),
            "alpha_drift": abs(2 * k * a - (2 * k - 1) ** (n - 1)) <= 3,
            "uniform_C": max(
                abs(Fraction(v) - Fraction((2 * k - 1) ** (n - 1), 2 * k)) for v in (a, b, g)
            )
            <= ck,
        }
        for name, good in checks.items():
            out.append(VerificationReport(f"count_identity_{name}", (k, n), True, good))
    return out


def check_sphere_splitting(k: int, n_max: int) -> list[VerificationReport]:
    """Peeling the first letter off a sphere: the words of length n+1 that
    start with g1 and end with b are exactly g1 * (length-n words that do
    not start with g1^-1 and end with b)."""
    g1 = ReducedWord(k, (1,))
    out = []
    for n in range(2, n_max + 1):
        level_n = list(enumerate_words(k, n))
        level_up = list(enumerate_words(k, n + 1))
        for b in (2, 1, -1):
            direct = {w for w in level_up if w.letters[0] == 1 and w.letters[-1] == b}
            built = {
                (g1 * w)
                for w in level_n
                if w.letters[0] != -1 and w.letters[-1] == b
            }
            out.append(
                VerificationReport(
                    "sphere_splitting", (k, n, f"last={b}"), True, direct == built
                )
            )
    return out


def check_nu_uniformity(k: int, n_max: int) -> list[VerificationReport]:
    """Spread of nu over size-matched set pairs stays within D_k."""
    letters = all_letters(k)
    dk = counting.constant_D(k)
    subsets: dict[int, list[frozenset[int]]] = {}
    for mask in range(1, 1 << (2 * k)):
        s = frozenset(letters[i] for i in range(2 * k) if mask >> i & 1)
        subsets.setdefault(len(s), []).append(s)
    out = []
    for n in range(2, n_max + 1):
        worst = Fraction(0)
        for size_s, sigmas in subsets.items():
            for size_t, taus in subsets.items():
                values = [counting.nu_sets(k, s, t, n) for s in sigmas for t in taus]
                worst = max(worst, Fraction(max(values) - min(values)))
        out.append(VerificationReport("nu_uniformity", (k, n, f"max_spread={worst}"), True, worst <= dk))
    return out


def _word_pairs(k: int, len_max: int) -> list[tuple[ReducedWord, ReducedWord]]:
    words: list[ReducedWord] = []
    for length in range(1, len_max + 1):
        words.extend(enumerate_words(k, length))
    return [(x, y) for x in words for y in words]


def check_mu_vs_oracle(k: int, n_max: int, len_max: int = 2) -> list[VerificationReport]:
    """Cancellation-split counting formula against the tracking oracle."""
    out = []
    for x, y in _word_pairs(k, len_max):
        ell, m = len(x), len(y)
        for n in range(ell + m + 2, n_max + 1):
            observed = oracle_mu_table(x, y, n)
            predicted = {
                (r, s): counting.mu(r, s, n, x, y)
                for r in range(ell + 1)
                for s in range(m + 1)
            }
            predicted = {key: v for key, v in predicted.items() if v != 0}
            out.append(
                VerificationReport(
                    "mu_vs_oracle", (k, n, format_word(x), format_word(y)), observed, predicted
                )
            )
    return out


def check_expectation_vs_oracle(k: int, n_max: int, len_max: int = 2) -> list[VerificationReport]:
    """Counting-path expectation of the sandwich against the convolution oracle."""
    out = []
    for x, y in _word_pairs(k, len_max):
        for n in range(len(x) + len(y) + 2, n_max + 1):
            out.append(
                VerificationReport(
                    "expectation_vs_oracle",
                    (k, n, format_word(x), format_word(y)),
                    oracle_expect(x, y, n),
                    radial.expect_xwny(x, y, n),
                )
            )
    return out


def check_deviation_bound(k: int, n_max: int, len_max: int = 2) -> list[VerificationReport]:
    """Squared deviation times sphere size stays under the level-free bound."""
    out = []
    for x, y in _word_pairs(k, len_max):
        ell, m = len(x), len(y)
        bound = radial.deviation_bound(ell, m, k)
        for n in range(ell + m + 2, n_max + 1):
            value = radial.deviation(x, y, n) * word_count(k, n)
            out.append(
                VerificationReport(
                    "deviation_bound",
                    (k, n, format_word(x), format_word(y), f"value={value}"),
                    True,
                    value <= bound,
                )
            )
    return out


def check_radial_products(k: int, deg_max: int = 5) -> list[VerificationReport]:
    """Recurrence-based products against embed-then-convolve."""
    out = []
    for m in range(deg_max + 1):
        for n in range(m, deg_max + 1):
            product = radial.radial_mul(RadialElement.basis(k, m), RadialElement.basis(k, n))
            out.append(
                VerificationReport(
                    "radial_product_vs_convolution",
                    (k, m, n),
                    mul(_wn(k, m), _wn(k, n)),
                    product.embed(),
                )
            )
    return out


def check_expectation_properties(k: int, n_max: int) -> list[VerificationReport]:
    """Projection, trace preservation, modularity, and sphere averaging."""
    out = []
    sample_words = [
        ReducedWord(k, ()),
        ReducedWord(k, (1,)),
        ReducedWord(k, (1, 2)),
        ReducedWord(k, (-2, 1, 1)),
        ReducedWord(k, (2, -1, 2, 2)),
    ]
    sample = AlgebraElement(k, {w: c for c, w in enumerate(sample_words, start=1)})
    projected = radial.expect(sample)
    out.append(
        VerificationReport(
            "expect_projection", (k,), projected, radial.expect(projected.embed())
        )
    )
    out.append(
        VerificationReport(
            "expect_trace_preserving", (k,), Fraction(sample.trace()), Fraction(projected.coeff(0))
        )
    )
    b = RadialElement(k, (1, -2, 0, 3))
    out.append(
        VerificationReport(
            "expect_modularity",
            (k,),
            radial.radial_mul(b, radial.expect(sample)),
            radial.expect(mul(b.embed(), sample)),
        )
    )
    # Averaging the sandwich expectation over the whole sphere of radius
    # ell reproduces the expectation of w_ell * w_n * y.
    y = ReducedWord(k, (1,))
    for ell in (1, 2):
        for n in range(ell + len(y) + 2, n_max + 1):
            total = RadialElement.zero(k)
            for z in enumerate_words(k, ell):
                total = total + radial.expect_xwny(z, y, n)
            direct = radial.expect(mul(mul(_wn(k, ell), _wn(k, n)), AlgebraElement.from_word(y)))
            out.append(VerificationReport("expect_sphere_average", (k, ell, n), direct, total))
    return out


# -- suite --------------------------------------------------------------------

CHECKS: dict[str, Callable[..., list[VerificationReport]]] = {
    "word_counts": lambda k, n_max, table: check_word_counts(k, n_max),
    "radial_recurrence": lambda k, n_max, table: check_radial_recurrence(k, min(n_max, 6)),
    "norms": lambda k, n_max, table: check_norms(k, n_max),
    "counts_vs_enumeration": lambda k, n_max, table: check_counts_vs_enumeration(k, n_max, table),
    "closed_form": lambda k, n_max, table: check_closed_form(k),
    "count_identities": lambda k, n_max, table: check_count_identities(k),
    "sphere_splitting": lambda k, n_max, table: check_sphere_splitting(k, min(n_max, 7)),
    "nu_uniformity": lambda k, n_max, table: check_nu_uniformity(k, n_max),
    "mu_vs_oracle": lambda k, n_max, table: check_mu_vs_oracle(k, n_max),
    "expectation_vs_oracle": lambda k, n_max, table: check_expectation_vs_oracle(k, n_max),
    "deviation_bound": lambda k, n_max, table: check_deviation_bound(k, n_max),
    "radial_products": lambda k, n_max, table: check_radial_products(k),
    "expectation_properties": lambda k, n_max, table: check_expectation_properties(k, min(n_max, 7)),
}


def run_suite(
    k: int = 2,
    n_max: int = 8,
    checks: Iterable[str] | None = None,
    count_table: counting.CountTable | None = None,
) -> list[VerificationReport]:
    """Run the cross-check suite and return its reports in a fixed order.

    ``checks`` selects a subset by name (empty selection gives an empty
    report); ``count_table`` substitutes the table used by the
    counts_vs_enumeration check, which is how the corrupted-recurrence
    negative control is driven.
    """
    if checks is None:
        selected: Sequence[str] = tuple(CHECKS)
    else:
        selected = tuple(checks)
        unknown = [name for name in selected if name not in CHECKS]
        if unknown:
            raise ValueError(f"unknown checks: {', '.join(unknown)} (known: {', '.join(CHECKS)})")
    reports: list[VerificationReport] = []
    for name in selected:
        reports.extend(CHECKS[name](k, n_max, count_table))
    return reports
