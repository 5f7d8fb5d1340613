"""First/last-letter statistics for spheres in the free group.

For n >= 2 the counts of length-n words split into three classes by the
relation between first and last letter: distinct non-inverse (alpha),
equal (beta), mutually inverse (gamma).  A linear three-term recurrence
generates the whole table; the closed form comes from the integer
eigenvalues 2k-1, 1, -1 of the transfer matrix.  On top of these sit the
set counts nu, the boundary-letter sets sigma_r/tau_s describing how many
cancellations a middle segment survives against fixed outer words, and the
uniform-deviation constants C_k and D_k.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .words import ReducedWord, all_letters, _check_letter, _check_rank


@dataclass(frozen=True)
class CountTable:
    """alpha/beta/gamma values for 2 <= n <= n_max (index 0 holds n=2)."""

    rank: int
    alphas: tuple[int, ...]
    betas: tuple[int, ...]
    gammas: tuple[int, ...]

    @property
    def n_max(self) -> int:
        return len(self.alphas) + 1

    def _index(self, n: int) -> int:
        if not 2 <= n <= self.n_max:
            raise ValueError(f"n={n} outside table range 2..{self.n_max}")
        return n - 2

    def alpha(self, n: int) -> int:
        return self.alphas[self._index(n)]

    def beta(self, n: int) -> int:
        return self.betas[self._index(n)]

    def gamma(self, n: int) -> int:
        return self.gammas[self._index(n)]

    def triple(self, n: int) -> tuple[int, int, int]:
        i = self._index(n)
        return self.alphas[i], self.betas[i], self.gammas[i]


def abc_recurrence(k: int, n_max: int) -> CountTable:
    """Build the count table from the base case (1, 1, 0) at n=2."""
    _check_rank(k)
    if n_max < 2:
        raise ValueError(f"n_max must be >= 2, got {n_max}")
    a, b, g = 1, 1, 0
    alphas, betas, gammas = [a], [b], [g]
    for _ in range(2, n_max):
        a, b, g = (2 * k - 3) * a + b + g, b + (2 * k - 2) * a, g + (2 * k - 2) * a
        alphas.append(a)
        betas.append(b)
        gammas.append(g)
    return CountTable(k, tuple(alphas), tuple(betas), tuple(gammas))


_TABLE_CACHE: dict[int, CountTable] = {}


def count_table(k: int, n_max: int) -> CountTable:
    """Cached table per rank, grown on demand; reads are cheap after that."""
    cached = _TABLE_CACHE.get(k)
    if cached is None or cached.n_max < n_max:
        cached = abc_recurrence(k, max(n_max, 2))
        _TABLE_CACHE[k] = cached
    return cached


def _solve3(columns: tuple[tuple[int, int, int], ...], rhs: tuple[int, int, int]) -> list[Fraction]:
    """Exact 3x3 solve of (columns as matrix columns) @ x = rhs."""
    m = [[Fraction(columns[j][i]) for j in range(3)] + [Fraction(rhs[i])] for i in range(3)]
    for col in range(3):
        pivot = next(r for r in range(col, 3) if m[r][col] != 0)
        m[col], m[pivot] = m[pivot], m[col]
        inv = 1 / m[col][col]
        m[col] = [v * inv for v in m[col]]
        for r in range(3):
            if r != col and m[r][col] != 0:
                factor = m[r][col]
                m[r] = [v - factor * w for v, w in zip(m[r], m[col])]
    return [m[i][3] for i in range(3)]


def abc_closed_form(k: int, n: int) -> tuple[int, int, int]:
    """Exact alpha/beta/gamma at n from the eigen-expansion of the recurrence.

    The transfer matrix [[2k-3, 1, 1], [2k-2, 1, 0], [2k-2, 0, 1]] has
    eigenvalues 2k-1, 1, -1 with eigenvectors (1,1,1), (0,1,-1) and
    (-1, k-1, k-1); expanding the n=2 state in that basis gives integer
    values for every n.
    """
    _check_rank(k)
    if n < 2:
        raise ValueError(f"closed form defined for n >= 2, got {n}")
    eigenvalues = (2 * k - 1, 1, -1)
    eigenvectors = ((1, 1, 1), (0, 1, -1), (-1, k - 1, k - 1))
    weights = _solve3(eigenvectors, (1, 1, 0))
    out = []
    for row in range(3):
        value = sum(
            weights[i] * Fraction(eigenvalues[i]) ** (n - 2) * eigenvectors[i][row]
            for i in range(3)
        )
        if value.denominator != 1:
            raise AssertionError(f"non-integer closed-form value {value} at n={n}")
        out.append(int(value))
    return out[0], out[1], out[2]


def nu_single(k: int, x: int, y: int, n: int) -> int:
    """Count of length-n words starting with letter x and ending with y."""
    _check_letter(x, k)
    _check_letter(y, k)
    if n < 2:
        raise ValueError(f"nu is defined for n >= 2, got n={n}")
    table = count_table(k, n)
    if y == x:
        return table.beta(n)
    if y == -x:
        return table.gamma(n)
    return table.alpha(n)


def _check_letter_set(s: frozenset[int] | set[int], k: int, name: str) -> frozenset[int]:
    out = frozenset(s)
    if not out:
        raise ValueError(f"{name} must be a nonempty subset of the 2k letters")
    for x in out:
        _check_letter(x, k)
    return out


def nu_sets(k: int, sigma: frozenset[int] | set[int], tau: frozenset[int] | set[int], n: int) -> int:
    """Count of length-n words with first letter in sigma and last in tau."""
    sigma = _check_letter_set(sigma, k, "sigma")
    tau = _check_letter_set(tau, k, "tau")
    return sum(nu_single(k, x, y, n) for x in sigma for y in tau)


def full_letter_set(k: int) -> frozenset[int]:
    return frozenset(all_letters(k))


def sigma_r(x: ReducedWord, r: int) -> frozenset[int]:
    """Letters allowed to start the middle segment after exactly r left
    cancellations against x.

    Writing x = x_l ... x_1 (so x_1 is the letter adjacent to the middle),
    the boundary constraints remove x_{r+1}^-1 (no further cancellation)
    and x_r (reducedness of the original word); each constraint disappears
    at its end of the range.
    """
    letters = x.letters
    ell = len(letters)
    if ell < 1:
        raise ValueError("sigma_r requires a nonempty word")
    if not 0 <= r <= ell:
        raise ValueError(f"r={r} outside 0..{ell}")
    full = full_letter_set(x.rank)
    if r == 0:
        return full - {-letters[ell - 1]}
    if r == ell:
        return full - {letters[0]}
    # index from the inner end: x_i = letters[ell - i]
    return full - {-letters[ell - r - 1], letters[ell - r]}


def tau_s(y: ReducedWord, s: int) -> frozenset[int]:
    """Letters allowed to end the middle segment after exactly s right
    cancellations against y = y_1 ... y_m (y_1 adjacent to the middle)."""
    letters = y.letters
    m = len(letters)
    if m < 1:
        raise ValueError("tau_s requires a nonempty word")
    if not 0 <= s <= m:
        raise ValueError(f"s={s} outside 0..{m}")
    full = full_letter_set(y.rank)
    if s == 0:
        return full - {-letters[0]}
    if s == m:
        return full - {letters[m - 1]}
    return full - {-letters[s], letters[s - 1]}


def mu(r: int, s: int, n: int, x: ReducedWord, y: ReducedWord) -> int:
    """Words of length n producing exactly r left and s right cancellations
    in the sandwich x * (word) * y; valid for n >= |x| + |y| + 2."""
    if x.rank != y.rank:
        raise ValueError(f"rank mismatch: {x.rank} vs {y.rank}")
    ell, m = len(x), len(y)
    if ell < 1 or m < 1:
        raise ValueError("mu requires nonempty outer words")
    if n < ell + m + 2:
        raise ValueError(f"mu requires n >= {ell + m + 2}, got n={n}")
    if not 0 <= r <= ell or not 0 <= s <= m:
        raise ValueError(f"(r, s)=({r}, {s}) outside 0..{ell} x 0..{m}")
    return nu_sets(x.rank, sigma_r(x, r), tau_s(y, s), n - r - s)


def constant_C(k: int) -> Fraction:
    """Uniform bound on |alpha_n - (2k-1)^(n-1)/2k| (and beta, gamma)."""
    _check_rank(k)
    return Fraction(2) + Fraction(3, 2 * k)


def constant_D(k: int) -> Fraction:
    """Uniform bound on |nu(s1,t1) - nu(s2,t2)| over size-matched set pairs."""
    return 8 * k * k * constant_C(k)
