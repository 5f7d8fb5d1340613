"""Free products of finitely generated abelian groups.

Each factor is Z^r x Z_{m_1} x ... x Z_{m_t} in additive normal form, so
questions like "is this element an exact power of that one?" reduce to
integer divisibility.  Words in the free product are alternating-syllable
normal forms.  A configuration designates one infinite-order element in
each of k distinct factors; those generate a free group of rank k inside
the product, and the radial machinery runs on sandwiches x * w_n * y even
when x and y live outside the embedded free group.  The only enumeration
ever performed is over the free-group sphere of radius n.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Optional

from .radial import RadialElement
from .words import CapExceededError, ReducedWord, enumerate_words, word_count

Syllable = tuple[int, "AbelianElement"]


@dataclass(frozen=True)
class AbelianElement:
    """Normal form (free part vector, torsion residues); build via the spec."""

    free: tuple[int, ...]
    torsion: tuple[int, ...]

    @property
    def is_identity(self) -> bool:
        return not any(self.free) and not any(self.torsion)


@dataclass(frozen=True)
class AbelianGroupSpec:
    """Z^free_rank x prod Z_m for the listed torsion moduli."""

    free_rank: int
    torsion_moduli: tuple[int, ...] = ()

    def __post_init__(self) -> None:
        if self.free_rank < 0:
            raise ValueError(f"free rank must be nonnegative, got {self.free_rank}")
        object.__setattr__(self, "torsion_moduli", tuple(self.torsion_moduli))
        for m in self.torsion_moduli:
            if not isinstance(m, int) or m < 2:
                raise ValueError(f"torsion moduli must be integers >= 2, got {m!r}")

    def element(self, free: Iterable[int] = (), torsion: Iterable[int] = ()) -> AbelianElement:
        """Normalize coordinates into an element (short vectors are padded)."""
        f = tuple(free)
        t = tuple(torsion)
        if len(f) > self.free_rank or len(t) > len(self.torsion_moduli):
            raise ValueError(
                f"coordinates ({len(f)} free, {len(t)} torsion) exceed group shape "
                f"({self.free_rank} free, {len(self.torsion_moduli)} torsion)"
            )
        f = f + (0,) * (self.free_rank - len(f))
        t = t + (0,) * (len(self.torsion_moduli) - len(t))
        return AbelianElement(f, tuple(v % m for v, m in zip(t, self.torsion_moduli)))

    def identity(self) -> AbelianElement:
        return self.element()

    def contains(self, a: AbelianElement) -> bool:
        return (
            len(a.free) == self.free_rank
            and len(a.torsion) == len(self.torsion_moduli)
            and all(0 <= v < m for v, m in zip(a.torsion, self.torsion_moduli))
        )

    def _require(self, a: AbelianElement) -> None:
        if not self.contains(a):
            raise ValueError(f"element {a} does not match group shape {self}")

    def mul(self, a: AbelianElement, b: AbelianElement) -> AbelianElement:
        self._require(a)
        self._require(b)
        return AbelianElement(
            tuple(x + y for x, y in zip(a.free, b.free)),
            tuple((x + y) % m for x, y, m in zip(a.torsion, b.torsion, self.torsion_moduli)),
        )

    def inv(self, a: AbelianElement) -> AbelianElement:
        self._require(a)
        return AbelianElement(
            tuple(-x for x in a.free),
            tuple((-x) % m for x, m in zip(a.torsion, self.torsion_moduli)),
        )

    def pow(self, a: AbelianElement, e: int) -> AbelianElement:
        self._require(a)
        return AbelianElement(
            tuple(e * x for x in a.free),
            tuple((e * x) % m for x, m in zip(a.torsion, self.torsion_moduli)),
        )

    def exact_power(self, a: AbelianElement, base: AbelianElement) -> Optional[int]:
        """The nonzero integer q with a = base^q, if one exists.

        Requires base of infinite order (nonzero free part); the free part
        pins q by divisibility and the torsion part is then checked.
        """
        self._require(a)
        self._require(base)
        pivot = next((i for i, v in enumerate(base.free) if v != 0), None)
        if pivot is None:
            raise ValueError("base element must have infinite order")
        num, den = a.free[pivot], base.free[pivot]
        if num % den != 0:
            return None
        q = num // den
        if q == 0:
            return None
        if any(x != q * y for x, y in zip(a.free, base.free)):
            return None
        if any((q * y - x) % m for x, y, m in zip(a.torsion, base.torsion, self.torsion_moduli)):
            return None
        return q


@dataclass(frozen=True)
class FPWord:
    """Alternating-syllable normal form in the free product."""

    syllables: tuple[Syllable, ...] = ()

    def __post_init__(self) -> None:
        object.__setattr__(self, "syllables", tuple(self.syllables))
        prev = None
        for factor, el in self.syllables:
            if not isinstance(factor, int) or factor < 0:
                raise ValueError(f"bad factor index {factor!r}")
            if el.is_identity:
                raise ValueError("identity syllable in normal form")
            if factor == prev:
                raise ValueError("adjacent syllables share a factor; word is not normal")
            prev = factor

    def __len__(self) -> int:
        return len(self.syllables)

    @property
    def is_identity(self) -> bool:
        return not self.syllables


@dataclass(frozen=True)
class Designated:
    """One chosen infinite-order element; the embedding uses element^power."""

    factor: int
    element: AbelianElement
    power: int = 1


@dataclass(frozen=True)
class FPConfig:
    """Factors of the free product plus the designated free-group generators."""

    factors: tuple[AbelianGroupSpec, ...]
    designated: tuple[Designated, ...]

    def __post_init__(self) -> None:
        object.__setattr__(self, "factors", tuple(self.factors))
        object.__setattr__(self, "designated", tuple(self.designated))
        if len(self.factors) < 2:
            raise ValueError("a free product needs at least 2 factors")
        if len(self.designated) < 2:
            raise ValueError("need at least 2 designated generators (free group of rank >= 2)")
        if len(self.designated) > len(self.factors):
            raise ValueError("cannot designate more generators than factors")
        seen: set[int] = set()
        for d in self.designated:
            if not 0 <= d.factor < len(self.factors):
                raise ValueError(f"designated factor {d.factor} out of range")
            if d.factor in seen:
                raise ValueError(f"factor {d.factor} designated twice")
            seen.add(d.factor)
            spec = self.factors[d.factor]
            if not spec.contains(d.element):
                raise ValueError(f"designated element {d.element} not in factor {d.factor}")
            if not any(d.element.free):
                raise ValueError(f"designated element in factor {d.factor} has finite order")
            if d.power == 0:
                raise ValueError("designated power must be nonzero")

    @property
    def rank(self) -> int:
        return len(self.designated)

    def generator_syllable(self, index: int, exponent: int) -> Syllable:
        """Syllable for (designated generator index)^exponent, both 1-based
        generator index and arbitrary nonzero exponent."""
        d = self.designated[index - 1]
        spec = self.factors[d.factor]
        return (d.factor, spec.pow(d.element, d.power * exponent))


def config_from_dict(data: dict) -> FPConfig:
    """Build a configuration from the JSON layout (factor indices 0-based)."""
    factors = tuple(
        AbelianGroupSpec(f.get("free_rank", 0), tuple(f.get("torsion", ())))
        for f in data["factors"]
    )
    designated = []
    for d in data["designated"]:
        spec = factors[d["factor"]]
        el = d.get("element", {})
        designated.append(
            Designated(
                d["factor"],
                spec.element(tuple(el.get("free", ())), tuple(el.get("torsion", ()))),
                d.get("power", 1),
            )
        )
    return FPConfig(factors, tuple(designated))


def load_config(path: str) -> FPConfig:
    with open(path, "r", encoding="utf-8") as fh:
        return config_from_dict(json.load(fh))


def parse_fp_word(data: str | list, cfg: FPConfig) -> FPWord:
    """Parse a word given as JSON: a list of [factor, {free, torsion}] pairs."""
    if isinstance(data, str):
        data = json.loads(data)
    if not isinstance(data, list):
        raise ValueError("free-product word must be a JSON list of syllables")
    syllables = []
    for item in data:
        factor, el = item
        if not 0 <= factor < len(cfg.factors):
            raise ValueError(f"factor index {factor} out of range")
        spec = cfg.factors[factor]
        syllables.append(
            (factor, spec.element(tuple(el.get("free", ())), tuple(el.get("torsion", ()))))
        )
    return fp_reduce(syllables, cfg)


def fp_reduce(syllables: Iterable[Syllable], cfg: FPConfig) -> FPWord:
    """Normal form: merge adjacent same-factor syllables, drop identities."""
    stack: list[Syllable] = []
    for factor, el in syllables:
        if not 0 <= factor < len(cfg.factors):
            raise ValueError(f"factor index {factor} out of range")
        spec = cfg.factors[factor]
        spec._require(el)
        if el.is_identity:
            continue
        if stack and stack[-1][0] == factor:
            merged = spec.mul(stack[-1][1], el)
            stack.pop()
            if not merged.is_identity:
                stack.append((factor, merged))
        else:
            stack.append((factor, el))
    return FPWord(tuple(stack))


def fp_inverse(w: FPWord, cfg: FPConfig) -> FPWord:
    return FPWord(
        tuple((f, cfg.factors[f].inv(el)) for f, el in reversed(w.syllables))
    )


def fp_concat(a: FPWord, b: FPWord, cfg: FPConfig) -> FPWord:
    return fp_reduce(a.syllables + b.syllables, cfg)


def embed_fk_word(u: ReducedWord, cfg: FPConfig) -> FPWord:
    """Image of a free-group word under the designated-generator embedding."""
    if u.rank != cfg.rank:
        raise ValueError(f"word rank {u.rank} does not match configuration rank {cfg.rank}")
    syllables = [
        cfg.generator_syllable(abs(x), 1 if x > 0 else -1) for x in u.letters
    ]
    return fp_reduce(syllables, cfg)


def is_in_fk(w: FPWord, cfg: FPConfig) -> Optional[ReducedWord]:
    """The free-group word embedding to w, or None.

    Every syllable must live in a designated factor and be an exact power
    of (designated element)^power; adjacent syllables sit in distinct
    factors, so the recovered letter sequence is automatically reduced.
    """
    factor_to_gen = {d.factor: i + 1 for i, d in enumerate(cfg.designated)}
    letters: list[int] = []
    for factor, el in w.syllables:
        gen = factor_to_gen.get(factor)
        if gen is None:
            return None
        d = cfg.designated[gen - 1]
        q = cfg.factors[factor].exact_power(el, d.element)
        if q is None or q % d.power != 0:
            return None
        p = q // d.power
        letters.extend([gen if p > 0 else -gen] * abs(p))
    return ReducedWord(cfg.rank, tuple(letters))


def chi_n(
    x: FPWord, y: FPWord, n: int, cfg: FPConfig, cap: int | None = None
) -> list[ReducedWord]:
    """All length-n free-group words u with x * u * y back in the embedded
    free group, in canonical enumeration order."""
    members = []
    for u in enumerate_words(cfg.rank, n, cap=cap):
        z = fp_reduce(x.syllables + embed_fk_word(u, cfg).syllables + y.syllables, cfg)
        if is_in_fk(z, cfg) is not None:
            members.append(u)
    return members


def expect_fp(
    x: FPWord, y: FPWord, n: int, cfg: FPConfig, cap: int | None = None
) -> tuple[RadialElement, int]:
    """Expectation of x * w_n * y onto the radial subalgebra of the embedded
    free group, plus the number of contributing middle words.

    Each contributing u adds w_p / |sphere_p| where p is the free-group
    length of the reduced product; everything else expects to zero.
    """
    k = cfg.rank
    acc: dict[int, Fraction] = {}
    count = 0
    for u in enumerate_words(k, n, cap=cap):
        z = fp_reduce(x.syllables + embed_fk_word(u, cfg).syllables + y.syllables, cfg)
        g = is_in_fk(z, cfg)
        if g is None:
            continue
        count += 1
        p = len(g)
        acc[p] = acc.get(p, 0) + Fraction(1, word_count(k, p))
    if not acc:
        return RadialElement.zero(k), count
    top = max(acc)
    return RadialElement(k, (acc.get(i, 0) for i in range(top + 1))), count


def case_classify(
    u: ReducedWord, x: FPWord, y: FPWord, cfg: FPConfig
) -> tuple[int, int]:
    """Which structural case a chi_n member falls into, and its split index.

    Writing the embedded u as syllables u_1 ... u_r, case (1, p) means the
    first p syllables invert the trailing p syllables of x and the rest
    invert the leading r-p syllables of y; case (2, p) means the same with
    u_p surviving as a merge partner.  Raises for words whose product does
    not return to the embedded free group, or whose cancellation pattern
    fits neither shape.
    """
    emb = embed_fk_word(u, cfg)
    z = fp_reduce(x.syllables + emb.syllables + y.syllables, cfg)
    if is_in_fk(z, cfg) is None:
        raise ValueError("word is not a chi_n member for these x, y")
    syl_u = emb.syllables
    syl_x = x.syllables
    syl_y = y.syllables
    r = len(syl_u)
    a = 0
    while a < min(r, len(syl_x)):
        factor, el = syl_x[len(syl_x) - 1 - a]
        fu, eu = syl_u[a]
        if fu == factor and eu == cfg.factors[factor].inv(el):
            a += 1
        else:
            break
    b = 0
    while b < min(r, len(syl_y)):
        factor, el = syl_y[b]
        fu, eu = syl_u[r - 1 - b]
        if fu == factor and eu == cfg.factors[factor].inv(el):
            b += 1
        else:
            break
    if a + b >= r:
        return (1, a)
    if a + b == r - 1:
        return (2, a + 1)
    raise ValueError(
        f"cancellation pattern (left={a}, right={b}, syllables={r}) fits neither case"
    )
