"""The radial subalgebra: the span of the level sums w_n.

w_n is the sum of all reduced words of length n, and the w_n are pairwise
orthogonal under the trace inner product, so an element of the subalgebra
is just a coefficient vector.  Multiplication is generated by the
degree-one rule w_1 w_n = w_{n+1} + (2k-1) w_{n-1} (with w_1^2 = w_2 +
2k w_0 at the bottom); higher products follow by the recursion that this
rule forces.  Conditional expectation onto the subalgebra averages an
element over each sphere.  The deviation machinery measures how far that
expectation is from being multiplicative across a sandwich x * w_n * y,
entirely in exact rationals: every quantity here is kept squared so that
no square roots ever enter.
"""

from __future__ import annotations

from fractions import Fraction
from functools import lru_cache
from numbers import Rational
from typing import Iterable, Union

from . import counting
from .algebra import AlgebraElement, mul, w_n_explicit
from .words import RankMismatchError, ReducedWord, word_count, _check_rank

Scalar = Union[int, Fraction]


def _check_scalar(c: object) -> None:
    if isinstance(c, bool) or not isinstance(c, Rational):
        raise TypeError(f"coefficients must be exact rationals, got {type(c).__name__}")


class RadialElement:
    """Coefficient vector over the orthogonal basis {w_n}, zeros trimmed."""

    __slots__ = ("rank", "coeffs")

    def __init__(self, rank: int, coeffs: Iterable[Scalar] = ()) -> None:
        _check_rank(rank)
        vec = list(coeffs)
        for c in vec:
            _check_scalar(c)
        while vec and vec[-1] == 0:
            vec.pop()
        object.__setattr__(self, "rank", rank)
        object.__setattr__(self, "coeffs", tuple(vec))

    def __setattr__(self, name: str, value: object) -> None:
        raise AttributeError("RadialElement is immutable")

    @classmethod
    def zero(cls, rank: int) -> "RadialElement":
        return cls(rank)

    @classmethod
    def basis(cls, rank: int, n: int) -> "RadialElement":
        """The basis vector w_n."""
        if n < 0:
            raise ValueError(f"degree must be nonnegative, got {n}")
        return cls(rank, (0,) * n + (1,))

    @property
    def degree(self) -> int:
        """Largest n with a nonzero coefficient; -1 for the zero element."""
        return len(self.coeffs) - 1

    def coeff(self, n: int) -> Scalar:
        if n < 0:
            raise ValueError(f"degree must be nonnegative, got {n}")
        return self.coeffs[n] if n < len(self.coeffs) else 0

    def __bool__(self) -> bool:
        return bool(self.coeffs)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, RadialElement):
            return NotImplemented
        return self.rank == other.rank and self.coeffs == other.coeffs

    def __hash__(self) -> int:
        return hash((self.rank, self.coeffs))

    def __repr__(self) -> str:
        return f"RadialElement({self.rank}, {list(self.coeffs)})"

    def _binary_check(self, other: "RadialElement") -> None:
        if self.rank != other.rank:
            raise RankMismatchError(f"rank mismatch: {self.rank} vs {other.rank}")

    def __add__(self, other: "RadialElement") -> "RadialElement":
        if not isinstance(other, RadialElement):
            return NotImplemented
        self._binary_check(other)
        n = max(len(self.coeffs), len(other.coeffs))
        return RadialElement(self.rank, (self.coeff(i) + other.coeff(i) for i in range(n)))

    def __neg__(self) -> "RadialElement":
        return RadialElement(self.rank, (-c for c in self.coeffs))

    def __sub__(self, other: "RadialElement") -> "RadialElement":
        if not isinstance(other, RadialElement):
            return NotImplemented
        return self + (-other)

    def scalar_mul(self, c: Scalar) -> "RadialElement":
        _check_scalar(c)
        return RadialElement(self.rank, (c * x for x in self.coeffs))

    def __mul__(self, other: object) -> "RadialElement":
        if isinstance(other, RadialElement):
            return radial_mul(self, other)
        if isinstance(other, Rational) and not isinstance(other, bool):
            return self.scalar_mul(other)  # type: ignore[arg-type]
        return NotImplemented

    def __rmul__(self, other: object) -> "RadialElement":
        if isinstance(other, Rational) and not isinstance(other, bool):
            return self.scalar_mul(other)  # type: ignore[arg-type]
        return NotImplemented

    def norm_sq(self) -> Scalar:
        """Squared trace norm: sum of c_n^2 times the sphere size."""
        return sum(c * c * word_count(self.rank, n) for n, c in enumerate(self.coeffs) if c)

    def embed(self, cap: int | None = None) -> AlgebraElement:
        """Materialize as a full group-algebra element (cap-guarded)."""
        out = AlgebraElement.zero(self.rank)
        for n, c in enumerate(self.coeffs):
            if c:
                out = out + w_n_explicit(self.rank, n, cap=cap).scalar_mul(c)
        return out


@lru_cache(maxsize=None)
def _basis_product(k: int, m: int, n: int) -> tuple[tuple[int, int], ...]:
    """Structure constants of w_m * w_n as ((degree, coeff), ...).

    Base cases: w_0 acts as identity; w_1 w_n = w_{n+1} + (2k-1) w_{n-1}
    for n >= 2 and w_1^2 = w_2 + 2k w_0.  Higher left degrees reduce via
    w_m w_n = w_1 (w_{m-1} w_n) - c_m (w_{m-2} w_n) where c_m is the
    w_{m-2}-coefficient of w_1 w_{m-1}, namely 2k for m = 2 and 2k-1
    beyond (the convolution oracle pins these down).
    """
    if m > n:
        m, n = n, m
    if m == 0:
        return ((n, 1),)
    if m == 1:
        if n == 1:
            return ((0, 2 * k), (2, 1))
        return ((n - 1, 2 * k - 1), (n + 1, 1))
    acc: dict[int, int] = {}
    for d, c in _basis_product(k, m - 1, n):
        for d2, c2 in _basis_product(k, 1, d):
            acc[d2] = acc.get(d2, 0) + c * c2
    drop = 2 * k if m == 2 else 2 * k - 1
    for d, c in _basis_product(k, m - 2, n):
        acc[d] = acc.get(d, 0) - drop * c
    return tuple(sorted((d, c) for d, c in acc.items() if c != 0))


def radial_mul(a: RadialElement, b: RadialElement) -> RadialElement:
    """Product in the radial subalgebra (bilinear over basis products)."""
    a._binary_check(b)
    k = a.rank
    acc: dict[int, Scalar] = {}
    for i, ci in enumerate(a.coeffs):
        if not ci:
            continue
        for j, cj in enumerate(b.coeffs):
            if not cj:
                continue
            scale = ci * cj
            for d, c in _basis_product(k, i, j):
                acc[d] = acc.get(d, 0) + scale * c
    if not acc:
        return RadialElement.zero(k)
    top = max(acc)
    return RadialElement(k, (acc.get(i, 0) for i in range(top + 1)))


def radial_norm_sq(a: RadialElement) -> Scalar:
    return a.norm_sq()


def expect(x: AlgebraElement) -> RadialElement:
    """Conditional expectation: average the coefficients over each sphere."""
    sums: dict[int, Scalar] = {}
    for w, c in x.items():
        n = len(w)
        sums[n] = sums.get(n, 0) + c
    if not sums:
        return RadialElement.zero(x.rank)
    top = max(sums)
    return RadialElement(
        x.rank,
        (Fraction(sums.get(n, 0), word_count(x.rank, n)) for n in range(top + 1)),
    )


def expect_word(w: ReducedWord) -> RadialElement:
    """Expectation of a single word of length p: w_p scaled by 1/|sphere_p|."""
    p = len(w)
    return RadialElement.basis(w.rank, p).scalar_mul(Fraction(1, word_count(w.rank, p)))


def expect_xwny(x: ReducedWord, y: ReducedWord, n: int) -> RadialElement:
    """Expectation of x * w_n * y from cancellation counts alone.

    Valid for n >= |x| + |y| + 2, where every middle word splits by its
    exact numbers (r, s) of boundary cancellations; the (r, s) cell
    contributes nu_{n-r-s}(sigma_r, tau_s) words of reduced length
    n + |x| + |y| - 2(r+s), each expecting to w_p / |sphere_p|.  Smaller n
    must go through the explicit enumeration path instead.
    """
    if x.rank != y.rank:
        raise RankMismatchError(f"rank mismatch: {x.rank} vs {y.rank}")
    k = x.rank
    ell, m = len(x), len(y)
    if ell < 1 or m < 1:
        raise ValueError("outer words must be nonempty (expectation is modular otherwise)")
    if n < ell + m + 2:
        raise ValueError(
            f"counting formula needs n >= {ell + m + 2}, got n={n}; "
            "use expect_xwny_explicit for small n"
        )
    acc: dict[int, Fraction] = {}
    for r in range(ell + 1):
        sig = counting.sigma_r(x, r)
        for s in range(m + 1):
            count = counting.nu_sets(k, sig, counting.tau_s(y, s), n - r - s)
            degree = n + ell + m - 2 * (r + s)
            acc[degree] = acc.get(degree, 0) + Fraction(count, word_count(k, degree))
    top = max(acc)
    return RadialElement(k, (acc.get(i, 0) for i in range(top + 1)))


def expect_xwny_explicit(
    x: ReducedWord, y: ReducedWord, n: int, cap: int | None = None
) -> RadialElement:
    """Expectation of x * w_n * y by materializing w_n and convolving."""
    if x.rank != y.rank:
        raise RankMismatchError(f"rank mismatch: {x.rank} vs {y.rank}")
    sandwich = mul(
        mul(AlgebraElement.from_word(x), w_n_explicit(x.rank, n, cap=cap), cap=cap),
        AlgebraElement.from_word(y),
        cap=cap,
    )
    return expect(sandwich)


def deviation(x: ReducedWord, y: ReducedWord, n: int, cap: int | None = None) -> Scalar:
    """Squared deviation from multiplicativity at level n.

    Returns ||E(x w_n y) - E(x) E(y) w_n||^2 as an exact rational.  The
    counting path covers n >= |x| + |y| + 2; below that threshold the
    explicit enumeration path is used automatically.  An identity on
    either side short-circuits to zero by modularity.
    """
    if x.rank != y.rank:
        raise RankMismatchError(f"rank mismatch: {x.rank} vs {y.rank}")
    ell, m = len(x), len(y)
    if ell == 0 or m == 0:
        return 0
    if n >= ell + m + 2:
        left = expect_xwny(x, y, n)
    else:
        left = expect_xwny_explicit(x, y, n, cap=cap)
    right = radial_mul(
        expect_word(x), radial_mul(expect_word(y), RadialElement.basis(x.rank, n))
    )
    return (left - right).norm_sq()


def deviation_bound(ell: int, m: int, k: int) -> Fraction:
    """Squared level-independent bound H^2 with H = (l+1)(m+1) D_k (2k-1)^((l+m)/2).

    Returned squared so the value stays rational when l+m is odd.  The
    bound certifies deviation * sphere_size <= H^2 for n >= l + m + 2
    (for l = 0 or m = 0 the deviation vanishes and any bound holds).
    """
    _check_rank(k)
    if ell < 0 or m < 0:
        raise ValueError("word lengths must be nonnegative")
    d = counting.constant_D(k)
    return ((ell + 1) * (m + 1) * d) ** 2 * (2 * k - 1) ** (ell + m)


def partial_sum_criterion(
    x: ReducedWord, y: ReducedWord, n_max: int, cap: int | None = None
) -> list[Fraction]:
    """Partial sums S_0..S_N of the normalized squared deviations.

    Term n is deviation(x, y, n) / |sphere_n|, i.e. the squared deviation
    along the unit vector w_n / ||w_n||.  Summability of the full series
    is what makes the expectation asymptotically multiplicative; here the
    finite partial sums are produced exactly.
    """
    if n_max < 0:
        raise ValueError(f"n_max must be nonnegative, got {n_max}")
    sums: list[Fraction] = []
    total = Fraction(0)
    for n in range(n_max + 1):
        total += Fraction(deviation(x, y, n, cap=cap), word_count(x.rank, n))
        sums.append(total)
    return sums
