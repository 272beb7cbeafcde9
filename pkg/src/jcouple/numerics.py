"""Exact scalar arithmetic underlying the coupling kernels.

Four value families live here: half-integers stored as twice their value,
quadratic surds ``sign * sqrt(p/q)``, finite sums of surds with
Gaussian-rational coefficients, and prime-factorized factorials.  Everything
is immutable, exact, and safe to share across threads; floats appear only in
the explicitly approximate conversions.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum
from fractions import Fraction
from functools import lru_cache
from typing import Iterator, Mapping, Union


class DomainError(ValueError):
    """A quantum-number or representation constraint was violated."""


# ---------------------------------------------------------------------------
# half-integers


@dataclass(frozen=True, order=True)
class HalfInt:
    """Element of Z/2 stored losslessly as ``twice`` its value (j=3/2 <-> twice=3)."""

    twice: int

    def __post_init__(self) -> None:
        if not isinstance(self.twice, int) or isinstance(self.twice, bool):
            raise DomainError(f"twice must be an integer, got {self.twice!r}")

    @classmethod
    def from_int(cls, n: int) -> HalfInt:
        return cls(2 * n)

    @classmethod
    def from_fraction(cls, q: Fraction) -> HalfInt:
        if q.denominator not in (1, 2):
            raise DomainError(f"{q} is not a half-integer")
        return cls(int(q * 2))

    def as_fraction(self) -> Fraction:
        return Fraction(self.twice, 2)

    def as_int(self) -> int:
        """The integer value; rejects half-odd inputs."""
        if self.twice % 2:
            raise DomainError(f"{self} is not an integer")
        return self.twice // 2

    @property
    def is_integral(self) -> bool:
        return self.twice % 2 == 0

    @property
    def is_half_odd(self) -> bool:
        return self.twice % 2 != 0

    def __add__(self, other: HalfInt) -> HalfInt:
        return HalfInt(self.twice + other.twice)

    def __sub__(self, other: HalfInt) -> HalfInt:
        return HalfInt(self.twice - other.twice)

    def __neg__(self) -> HalfInt:
        return HalfInt(-self.twice)

    def __abs__(self) -> HalfInt:
        return HalfInt(abs(self.twice))

    def __str__(self) -> str:
        if self.twice % 2 == 0:
            return str(self.twice // 2)
        return f"{self.twice}/2"


def parse_halfint(text: str) -> HalfInt:
    """Parse "2", "3/2", "-1/2", "1.5" and friends into a HalfInt.

    Any rational notation is accepted as long as the value has denominator
    1 or 2 in lowest terms.
    """
    try:
        q = Fraction(text.strip())
    except (ValueError, ZeroDivisionError) as exc:
        raise DomainError(f"cannot parse half-integer from {text!r}") from exc
    if q.denominator not in (1, 2):
        raise DomainError(f"{text!r} is not in N/2 (denominator {q.denominator})")
    return HalfInt(int(q * 2))


class Parity(Enum):
    NATURAL = "natural"
    HALF_ODD = "half_odd"
    NEGATIVE_NATURAL = "negative_natural"
    NEGATIVE_HALF_ODD = "negative_half_odd"


def classify(h: HalfInt) -> Parity:
    """Classify a nonnegative half-integer as natural or half-odd."""
    if h.twice < 0:
        raise DomainError(f"classify expects a nonnegative value, got {h}")
    return Parity.NATURAL if h.is_integral else Parity.HALF_ODD


def classify_signed(h: HalfInt) -> Parity:
    """Total four-way classification over all of Z/2."""
    if h.twice >= 0:
        return Parity.NATURAL if h.is_integral else Parity.HALF_ODD
    return Parity.NEGATIVE_NATURAL if h.is_integral else Parity.NEGATIVE_HALF_ODD


def halfint_range(lo: HalfInt, hi: HalfInt) -> Iterator[HalfInt]:
    """Values lo, lo+1, ..., hi in unit steps (empty when hi < lo)."""
    if (hi.twice - lo.twice) % 2:
        raise DomainError(f"range {lo}..{hi} does not step in units")
    for t in range(lo.twice, hi.twice + 1, 2):
        yield HalfInt(t)


def projection_range(j: HalfInt) -> Iterator[HalfInt]:
    """Projections -j, -j+1, ..., +j of a momentum j >= 0."""
    if j.twice < 0:
        raise DomainError(f"momentum must be nonnegative, got {j}")
    for t in range(-j.twice, j.twice + 1, 2):
        yield HalfInt(t)


# ---------------------------------------------------------------------------
# quadratic surds


@dataclass(frozen=True)
class Surd:
    """Exact value ``sign * sqrt(radicand)`` with a nonnegative rational radicand."""

    sign: int
    radicand: Fraction

    def __post_init__(self) -> None:
        if self.sign not in (-1, 0, 1):
            raise DomainError(f"sign must be -1, 0 or +1, got {self.sign!r}")
        if not isinstance(self.radicand, Fraction) or self.radicand < 0:
            raise DomainError(f"radicand must be a nonnegative Fraction, got {self.radicand!r}")
        if (self.sign == 0) != (self.radicand == 0):
            raise DomainError("sign is zero exactly when the radicand is zero")

    @classmethod
    def zero(cls) -> Surd:
        return cls(0, Fraction(0))

    @classmethod
    def one(cls) -> Surd:
        return cls(1, Fraction(1))

    @classmethod
    def sqrt(cls, q: Union[Fraction, int]) -> Surd:
        """The nonnegative square root of q >= 0."""
        q = Fraction(q)
        if q < 0:
            raise DomainError(f"cannot take a real square root of {q}")
        return cls(1 if q else 0, q)

    @classmethod
    def from_rational(cls, q: Union[Fraction, int]) -> Surd:
        q = Fraction(q)
        if q == 0:
            return cls.zero()
        return cls(1 if q > 0 else -1, q * q)

    @classmethod
    def from_signed_square(cls, q: Union[Fraction, int]) -> Surd:
        """Build sign(q) * sqrt(|q|); the standard exact carrier for CG values."""
        q = Fraction(q)
        if q == 0:
            return cls.zero()
        return cls(1 if q > 0 else -1, abs(q))

    @property
    def is_zero(self) -> bool:
        return self.sign == 0

    def signed_square(self) -> Fraction:
        """sign * radicand; faithful one-number encoding of the value."""
        return self.sign * self.radicand

    def __mul__(self, other: Surd) -> Surd:
        if self.sign == 0 or other.sign == 0:
            return Surd.zero()
        return Surd(self.sign * other.sign, self.radicand * other.radicand)

    def __truediv__(self, other: Surd) -> Surd:
        if other.sign == 0:
            raise ZeroDivisionError("division by the zero surd")
        if self.sign == 0:
            return Surd.zero()
        return Surd(self.sign * other.sign, self.radicand / other.radicand)

    def __neg__(self) -> Surd:
        if self.sign == 0:
            return self
        return Surd(-self.sign, self.radicand)

    def approx(self) -> float:
        return self.sign * math.sqrt(self.radicand)

    def to_sum(self) -> PhasedSurdSum:
        """Rewrite sign*sqrt(p/q) as coefficient * sqrt(squarefree part)."""
        if self.sign == 0:
            return PhasedSurdSum.zero()
        p, q = self.radicand.numerator, self.radicand.denominator
        s, r = squarefree_decomposition(p * q)
        coeff = Fraction(self.sign * s, q)
        return PhasedSurdSum._raw({r: GaussianRational.from_rational(coeff)})

    def to_json_dict(self) -> dict:
        return {
            "sign": self.sign,
            "num": str(self.radicand.numerator),
            "den": str(self.radicand.denominator),
        }

    def __str__(self) -> str:
        if self.sign == 0:
            return "0"
        prefix = "-" if self.sign < 0 else ""
        return f"{prefix}sqrt({self.radicand})"


def squarefree_decomposition(n: int) -> tuple[int, int]:
    """Write n >= 1 as s*s*r with r squarefree; returns (s, r)."""
    if n < 1:
        raise DomainError(f"expected a positive integer, got {n}")
    s, r = 1, 1
    d = 2
    while d * d <= n:
        if n % d == 0:
            e = 0
            while n % d == 0:
                n //= d
                e += 1
            s *= d ** (e // 2)
            if e % 2:
                r *= d
        d += 1 if d == 2 else 2
    return s, r * n


# ---------------------------------------------------------------------------
# Gaussian rationals and phased surd sums


@dataclass(frozen=True)
class GaussianRational:
    """a + b*i with exact rational a, b."""

    re: Fraction
    im: Fraction

    @classmethod
    def from_rational(cls, q: Union[Fraction, int]) -> GaussianRational:
        return cls(Fraction(q), Fraction(0))

    @classmethod
    def zero(cls) -> GaussianRational:
        return cls(Fraction(0), Fraction(0))

    @classmethod
    def coerce(cls, value: Union[GaussianRational, Fraction, int]) -> GaussianRational:
        if isinstance(value, GaussianRational):
            return value
        return cls.from_rational(value)

    @property
    def is_zero(self) -> bool:
        return self.re == 0 and self.im == 0

    def __add__(self, other: GaussianRational) -> GaussianRational:
        return GaussianRational(self.re + other.re, self.im + other.im)

    def __neg__(self) -> GaussianRational:
        return GaussianRational(-self.re, -self.im)

    def __sub__(self, other: GaussianRational) -> GaussianRational:
        return self + (-other)

    def __mul__(self, other: GaussianRational) -> GaussianRational:
        return GaussianRational(
            self.re * other.re - self.im * other.im,
            self.re * other.im + self.im * other.re,
        )

    def conjugate(self) -> GaussianRational:
        return GaussianRational(self.re, -self.im)

    def times_i_pow(self, k: int) -> GaussianRational:
        k %= 4
        if k == 0:
            return self
        if k == 1:
            return GaussianRational(-self.im, self.re)
        if k == 2:
            return -self
        return GaussianRational(self.im, -self.re)

    def __str__(self) -> str:
        if self.im == 0:
            return str(self.re)
        if self.re == 0:
            return f"{self.im}*i"
        op = "+" if self.im > 0 else "-"
        return f"{self.re}{op}{abs(self.im)}*i"


def _is_squarefree(n: int) -> bool:
    return n >= 1 and squarefree_decomposition(n)[0] == 1


ScalarLike = Union["GaussianRational", Fraction, int]


class PhasedSurdSum:
    """Finite exact sum over squarefree r >= 1 of c_r * sqrt(r).

    Coefficients c_r are Gaussian rationals, so the ring is closed under
    products, sums, and multiplication by integer powers of i.  The empty
    sum is the canonical exact zero.
    """

    __slots__ = ("_terms",)

    def __init__(self, terms: Mapping[int, ScalarLike] | None = None) -> None:
        clean: dict[int, GaussianRational] = {}
        for r, c in (terms or {}).items():
            if not _is_squarefree(r):
                raise DomainError(f"key {r} is not a squarefree positive integer")
            c = GaussianRational.coerce(c)
            if not c.is_zero:
                clean[r] = c
        self._terms = clean

    @classmethod
    def _raw(cls, terms: dict[int, GaussianRational]) -> PhasedSurdSum:
        # trusted constructor: keys squarefree, no zero coefficients
        out = object.__new__(cls)
        out._terms = terms
        return out

    @classmethod
    def zero(cls) -> PhasedSurdSum:
        return cls._raw({})

    @classmethod
    def from_rational(cls, q: Union[Fraction, int]) -> PhasedSurdSum:
        return cls({1: Fraction(q)})

    @classmethod
    def from_surd(cls, s: Surd) -> PhasedSurdSum:
        return s.to_sum()

    @property
    def is_zero(self) -> bool:
        return not self._terms

    def items(self) -> tuple[tuple[int, GaussianRational], ...]:
        return tuple(sorted(self._terms.items()))

    def coefficient(self, r: int) -> GaussianRational:
        return self._terms.get(r, GaussianRational.zero())

    def __bool__(self) -> bool:
        return bool(self._terms)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, PhasedSurdSum):
            return NotImplemented
        return self._terms == other._terms

    def __hash__(self) -> int:
        return hash(self.items())

    def __add__(self, other: PhasedSurdSum) -> PhasedSurdSum:
        merged = dict(self._terms)
        for r, c in other._terms.items():
            s = merged.get(r)
            total = c if s is None else s + c
            if total.is_zero:
                merged.pop(r, None)
            else:
                merged[r] = total
        return PhasedSurdSum._raw(merged)

    def __neg__(self) -> PhasedSurdSum:
        return PhasedSurdSum._raw({r: -c for r, c in self._terms.items()})

    def __sub__(self, other: PhasedSurdSum) -> PhasedSurdSum:
        return self + (-other)

    def __mul__(self, other: Union[PhasedSurdSum, ScalarLike]) -> PhasedSurdSum:
        if not isinstance(other, PhasedSurdSum):
            scalar = GaussianRational.coerce(other)
            if scalar.is_zero:
                return PhasedSurdSum.zero()
            return PhasedSurdSum._raw({r: c * scalar for r, c in self._terms.items()})
        out: dict[int, GaussianRational] = {}
        for r1, c1 in self._terms.items():
            for r2, c2 in other._terms.items():
                g = math.gcd(r1, r2)
                key = (r1 // g) * (r2 // g)
                coeff = (c1 * c2) * GaussianRational.from_rational(g)
                s = out.get(key)
                total = coeff if s is None else s + coeff
                if total.is_zero:
                    out.pop(key, None)
                else:
                    out[key] = total
        return PhasedSurdSum._raw(out)

    __rmul__ = __mul__

    def times_i_pow(self, k: int) -> PhasedSurdSum:
        if k % 4 == 0:
            return self
        return PhasedSurdSum._raw({r: c.times_i_pow(k) for r, c in self._terms.items()})

    def conjugate(self) -> PhasedSurdSum:
        return PhasedSurdSum._raw({r: c.conjugate() for r, c in self._terms.items()})

    def approx(self) -> complex:
        total = complex(0)
        for r, c in self._terms.items():
            total += complex(c.re, c.im) * math.sqrt(r)
        return total

    def __repr__(self) -> str:
        if not self._terms:
            return "PhasedSurdSum(0)"
        parts = [f"({c})*sqrt({r})" for r, c in self.items()]
        return "PhasedSurdSum(" + " + ".join(parts) + ")"


# ---------------------------------------------------------------------------
# factorials in prime-factorized form


@dataclass(frozen=True)
class FactorizedFactorial:
    """n! as ascending (prime, exponent) pairs; exponents via Legendre's formula."""

    n: int
    exponents: tuple[tuple[int, int], ...]

    def exponent(self, p: int) -> int:
        for prime, e in self.exponents:
            if prime == p:
                return e
        return 0

    def as_dict(self) -> dict[int, int]:
        return dict(self.exponents)

    def value(self) -> int:
        out = 1
        for p, e in self.exponents:
            out *= p**e
        return out


def _primes_up_to(n: int) -> list[int]:
    if n < 2:
        return []
    sieve = bytearray([1]) * (n + 1)
    sieve[0] = sieve[1] = 0
    for p in range(2, math.isqrt(n) + 1):
        if sieve[p]:
            sieve[p * p :: p] = bytearray(len(sieve[p * p :: p]))
    return [p for p in range(2, n + 1) if sieve[p]]


@lru_cache(maxsize=None)
def factorial_factorized(n: int) -> FactorizedFactorial:
    """Prime factorization of n!; exponent of p is sum_k floor(n / p**k)."""
    if n < 0:
        raise DomainError(f"factorial of a negative integer: {n}")
    pairs = []
    for p in _primes_up_to(n):
        e, q = 0, n
        while q:
            q //= p
            e += q
        pairs.append((p, e))
    return FactorizedFactorial(n, tuple(pairs))
