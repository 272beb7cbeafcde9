"""The Kepler worked example: SO(4) split, exact spectra, degeneracy audits.

The hidden-symmetry algebra is treated structurally: commutators are expanded
by bilinearity over the stated angular-momentum/Runge-Lenz tables, with no
operator construction behind them.  Degeneracies come in two flavors that are
both first-class: the closed-form counts as printed, and a direct enumeration
of basis kets; they disagree away from j=1/2 at Z=1 and the divergence is
reported, not reconciled.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from enum import Enum
from fractions import Fraction
from typing import Mapping, Sequence, Union

from .numerics import DomainError, GaussianRational, HalfInt

_EPSILON = {
    (1, 2, 3): 1,
    (2, 3, 1): 1,
    (3, 1, 2): 1,
    (1, 3, 2): -1,
    (3, 2, 1): -1,
    (2, 1, 3): -1,
}


def epsilon(i: int, j: int, k: int) -> int:
    return _EPSILON.get((i, j, k), 0)


@dataclass(frozen=True, order=True)
class LieBasisElement:
    """L or rescaled Runge-Lenz component: family, particle index, spatial axis."""

    family: str
    particle: int
    axis: int

    def __post_init__(self) -> None:
        if self.family not in ("L", "M"):
            raise DomainError(f"family must be 'L' or 'M', got {self.family!r}")
        if self.particle < 1:
            raise DomainError("particle index starts at 1")
        if self.axis not in (1, 2, 3):
            raise DomainError("spatial axis must be 1, 2 or 3")

    def __str__(self) -> str:
        return f"{self.family}[{self.particle},{self.axis}]"


class LieExpression:
    """Finite Gaussian-rational combination of basis elements."""

    __slots__ = ("_terms",)

    def __init__(self, terms: Mapping[LieBasisElement, Union[GaussianRational, Fraction, int]] | None = None) -> None:
        clean: dict[LieBasisElement, GaussianRational] = {}
        for b, c in (terms or {}).items():
            c = GaussianRational.coerce(c)
            if not c.is_zero:
                clean[b] = c
        self._terms = clean

    @classmethod
    def zero(cls) -> LieExpression:
        return cls()

    @property
    def is_zero(self) -> bool:
        return not self._terms

    def items(self) -> tuple[tuple[LieBasisElement, GaussianRational], ...]:
        return tuple(sorted(self._terms.items()))

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, LieExpression):
            return NotImplemented
        return self._terms == other._terms

    def __add__(self, other: LieExpression) -> LieExpression:
        merged = dict(self._terms)
        for b, c in other._terms.items():
            s = merged.get(b)
            total = c if s is None else s + c
            if total.is_zero:
                merged.pop(b, None)
            else:
                merged[b] = total
        out = object.__new__(LieExpression)
        out._terms = merged
        return out

    def __neg__(self) -> LieExpression:
        out = object.__new__(LieExpression)
        out._terms = {b: -c for b, c in self._terms.items()}
        return out

    def __sub__(self, other: LieExpression) -> LieExpression:
        return self + (-other)

    def scaled(self, factor: Union[GaussianRational, Fraction, int]) -> LieExpression:
        factor = GaussianRational.coerce(factor)
        if factor.is_zero:
            return LieExpression.zero()
        out = object.__new__(LieExpression)
        out._terms = {b: c * factor for b, c in self._terms.items()}
        return out

    def __repr__(self) -> str:
        if not self._terms:
            return "LieExpression(0)"
        parts = [f"({c})*{b}" for b, c in self.items()]
        return "LieExpression(" + " + ".join(parts) + ")"


def basis_commutator(x: LieBasisElement, y: LieBasisElement) -> LieExpression:
    """[x, y] from the defining tables: LL -> iεL, MM -> iεL, ML and LM -> iεM."""
    if x.particle != y.particle:
        return LieExpression.zero()
    result_family = "L" if x.family == y.family else "M"
    terms: dict[LieBasisElement, GaussianRational] = {}
    for k in (1, 2, 3):
        eps = epsilon(x.axis, y.axis, k)
        if eps:
            element = LieBasisElement(result_family, x.particle, k)
            terms[element] = GaussianRational(Fraction(0), Fraction(eps))
    return LieExpression(terms)


def commutator(a: LieExpression, b: LieExpression) -> LieExpression:
    """Bilinear extension of the basis commutator."""
    acc = LieExpression.zero()
    for x, cx in a.items():
        for y, cy in b.items():
            acc = acc + basis_commutator(x, y).scaled(cx * cy)
    return acc


def j_operator(component: int, particle: int, axis: int) -> LieExpression:
    """J_(1) = (L + M')/2 and J_(2) = (L - M')/2 for one particle and axis."""
    if component not in (1, 2):
        raise DomainError("component must be 1 or 2")
    sign = 1 if component == 1 else -1
    return LieExpression(
        {
            LieBasisElement("L", particle, axis): Fraction(1, 2),
            LieBasisElement("M", particle, axis): Fraction(sign, 2),
        }
    )


@dataclass(frozen=True)
class CommutatorMismatch:
    alpha: int
    beta: int
    particle_i: int
    particle_j: int
    axis_i: int
    axis_j: int
    computed: LieExpression
    expected: LieExpression


@dataclass(frozen=True)
class SplitCheckReport:
    z: int
    checked: int
    mismatches: tuple[CommutatorMismatch, ...]

    @property
    def ok(self) -> bool:
        return not self.mismatches


def so4_split_check(z: int) -> SplitCheckReport:
    """Verify [J_(a)Ii, J_(b)Jj] = i d_ab d_IJ eps_ijk J_(a)Ik over all indices."""
    if z < 1:
        raise DomainError("need at least one particle")
    mismatches = []
    checked = 0
    for alpha, beta in itertools.product((1, 2), repeat=2):
        for pi, pj in itertools.product(range(1, z + 1), repeat=2):
            for ai, aj in itertools.product((1, 2, 3), repeat=2):
                lhs = commutator(j_operator(alpha, pi, ai), j_operator(beta, pj, aj))
                rhs = LieExpression.zero()
                if alpha == beta and pi == pj:
                    for k in (1, 2, 3):
                        eps = epsilon(ai, aj, k)
                        if eps:
                            rhs = rhs + j_operator(alpha, pi, k).scaled(
                                GaussianRational(Fraction(0), Fraction(eps))
                            )
                checked += 1
                if lhs != rhs:
                    mismatches.append(
                        CommutatorMismatch(alpha, beta, pi, pj, ai, aj, lhs, rhs)
                    )
    return SplitCheckReport(z, checked, tuple(mismatches))


# ---------------------------------------------------------------------------
# spectra and degeneracies


class Statistics(Enum):
    BOSON0 = "boson0"
    FERMION_HALF = "fermionHalf"


class KramersVerdict(Enum):
    GUARANTEED_DOUBLE = "guaranteed_double"
    NOT_INFERABLE = "not_inferable"


def energy_level(j: HalfInt) -> Fraction:
    """Single-particle bound energy -j^2 / (2j+1)^2, exactly as printed."""
    if j.twice < 0:
        raise DomainError(f"momentum must be nonnegative, got {j}")
    t = j.twice
    return Fraction(-t * t, 4 * (t + 1) ** 2)


def _check_js(js: Sequence[HalfInt]) -> None:
    if not js:
        raise DomainError("need at least one momentum")
    if any(j.twice < 0 for j in js):
        raise DomainError("momenta must be nonnegative")


def degeneracy_paper(js: Sequence[HalfInt], statistics: Statistics) -> int:
    """The closed-form count as printed: 2*prod(2j+1), plus 2Z for fermions."""
    _check_js(js)
    prod = 1
    for j in js:
        prod *= j.twice + 1
    if statistics is Statistics.FERMION_HALF:
        return 2 * len(js) + 2 * prod
    return 2 * prod


def degeneracy_enumerated(js: Sequence[HalfInt], statistics: Statistics) -> int:
    """Direct count of basis kets: both projection families free, spins free."""
    _check_js(js)
    count = 1
    for j in js:
        count *= (j.twice + 1) ** 2
    if statistics is Statistics.FERMION_HALF:
        count *= 2 ** len(js)
    return count


def kramers_applicability(z: int, statistics: Statistics) -> KramersVerdict:
    """Whether double time-reversal symmetry forces even degeneracy.

    Spin-0 bosons always square to +1 on the relevant kets; spin-1/2 fermions
    square to (-1)^Z, so only odd Z yields the guarantee.
    """
    if z < 1:
        raise DomainError("need at least one particle")
    if statistics is Statistics.FERMION_HALF and z % 2 == 1:
        return KramersVerdict.GUARANTEED_DOUBLE
    return KramersVerdict.NOT_INFERABLE


@dataclass(frozen=True)
class KeplerLevel:
    """One j-tuple with its exact energy and both degeneracy counts."""

    js: tuple[HalfInt, ...]
    energy: Fraction
    degeneracy_paper: int
    degeneracy_enumerated: int
    statistics: Statistics

    @property
    def diverges(self) -> bool:
        return self.degeneracy_paper != self.degeneracy_enumerated


@dataclass(frozen=True)
class MergedKeplerLevel:
    """Levels of equal energy pooled; a derived view over the per-tuple list."""

    energy: Fraction
    degeneracy_paper: int
    degeneracy_enumerated: int
    js_tuples: tuple[tuple[HalfInt, ...], ...]


def spectrum(z: int, j_cut: HalfInt, statistics: Statistics) -> list[KeplerLevel]:
    """One level per j-tuple with all j <= j_cut, in lexicographic tuple order."""
    if z < 1:
        raise DomainError("need at least one particle")
    if j_cut.twice < 0:
        raise DomainError(f"cutoff must be nonnegative, got {j_cut}")
    if z * (j_cut.twice + 1) > 10**6:
        raise DomainError("spectrum request exceeds the enumeration guard")
    values = [HalfInt(t) for t in range(0, j_cut.twice + 1)]
    levels = []
    for js in itertools.product(values, repeat=z):
        energy = sum((energy_level(j) for j in js), Fraction(0))
        levels.append(
            KeplerLevel(
                js,
                energy,
                degeneracy_paper(js, statistics),
                degeneracy_enumerated(js, statistics),
                statistics,
            )
        )
    return levels


def merge_spectrum(levels: Sequence[KeplerLevel]) -> list[MergedKeplerLevel]:
    """Pool equal energies, summing both counts; sorted by ascending energy."""
    groups: dict[Fraction, list[KeplerLevel]] = {}
    for level in levels:
        groups.setdefault(level.energy, []).append(level)
    merged = []
    for energy in sorted(groups):
        bunch = groups[energy]
        merged.append(
            MergedKeplerLevel(
                energy,
                sum(l.degeneracy_paper for l in bunch),
                sum(l.degeneracy_enumerated for l in bunch),
                tuple(l.js for l in bunch),
            )
        )
    return merged
