"""Exact algebra of monodromy eigenvalue multisets.

Eigenvalues are roots of unity ``exp(2*pi*i*a/b)`` stored as reduced
fractions ``a/b`` in ``[0, 1)``.  Multiplying eigenvalues is adding angles
modulo 1, so the Sebastiani-Thom rule for ``f(z) + g(w)`` becomes a
convolution of angle multisets.  No floating point is used anywhere.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass, field
from functools import cached_property, reduce
from math import gcd, lcm, prod
from typing import Mapping, Union

from .cyclotomic import (
    Poly,
    cyclotomic,
    cyclotomic_at_one,
    euler_phi,
    poly_mul,
    poly_pow,
    poly_str,
    primitive_numerators,
)


class NotGaloisStable(ValueError):
    """The multiset has no integral characteristic polynomial."""


@dataclass(frozen=True, order=True)
class RationalAngle:
    """The root of unity exp(2*pi*i*numerator/denominator), normalized on construction."""

    numerator: int
    denominator: int

    def __post_init__(self):
        if self.denominator <= 0:
            raise ValueError(f"denominator must be positive, got {self.denominator}")
        a = self.numerator % self.denominator
        g = gcd(a, self.denominator)
        object.__setattr__(self, "numerator", a // g)
        object.__setattr__(self, "denominator", self.denominator // g)

    @property
    def order(self) -> int:
        return self.denominator

    def __add__(self, other: "RationalAngle") -> "RationalAngle":
        b = self.denominator * other.denominator
        return RationalAngle(
            self.numerator * other.denominator + other.numerator * self.denominator, b
        )

    def __neg__(self) -> "RationalAngle":
        return RationalAngle(-self.numerator, self.denominator)

    def __str__(self):
        return f"{self.numerator}/{self.denominator}"


ONE = RationalAngle(0, 1)


@dataclass(frozen=True)
class EigenMultiset:
    """A finite multiset of angles; ``ambient_dim`` is report metadata only.

    Equality compares the multiset and ignores ``ambient_dim``.
    """

    entries: tuple = ()  # sorted ((RationalAngle, multiplicity), ...)
    ambient_dim: int | None = field(default=None, compare=False)

    def __post_init__(self):
        merged: Counter = Counter()
        for angle, mult in self.entries:
            if not isinstance(angle, RationalAngle):
                angle = RationalAngle(*angle)
            if mult < 0:
                raise ValueError(f"negative multiplicity {mult} for {angle}")
            merged[angle] += mult
        object.__setattr__(
            self, "entries", tuple(sorted((a, m) for a, m in merged.items() if m > 0))
        )
        if self.ambient_dim is not None and self.ambient_dim < 1:
            raise ValueError(f"ambient_dim must be positive, got {self.ambient_dim}")

    @classmethod
    def from_counts(cls, counts: Mapping, ambient_dim: int | None = None) -> "EigenMultiset":
        return cls(tuple(counts.items()), ambient_dim)

    @classmethod
    def of(cls, *angles, ambient_dim: int | None = None) -> "EigenMultiset":
        """Build from angles given as RationalAngle, (num, den) pairs or "a/b" strings."""
        counts: Counter = Counter()
        for a in angles:
            counts[_coerce_angle(a)] += 1
        return cls.from_counts(counts, ambient_dim)

    @cached_property
    def _count_map(self) -> dict:
        return dict(self.entries)

    def counts(self) -> dict:
        return dict(self._count_map)

    def multiplicity(self, angle) -> int:
        return self._count_map.get(_coerce_angle(angle), 0)

    def __len__(self):
        return sum(m for _, m in self.entries)

    def __iter__(self):
        for angle, mult in self.entries:
            for _ in range(mult):
                yield angle

    def __bool__(self):
        return bool(self.entries)

    def support(self) -> frozenset:
        return frozenset(a for a, _ in self.entries)

    def orders(self) -> frozenset:
        return frozenset(a.order for a, _ in self.entries)

    def order_counts(self) -> dict:
        """Total multiplicity of eigenvalues of each order."""
        out: Counter = Counter()
        for angle, mult in self.entries:
            out[angle.order] += mult
        return dict(out)

    def with_ambient_dim(self, n: int | None) -> "EigenMultiset":
        return EigenMultiset(self.entries, n)

    def issubset(self, other: "EigenMultiset") -> bool:
        theirs = other._count_map
        return all(theirs.get(a, 0) >= m for a, m in self.entries)

    def union(self, other: "EigenMultiset") -> "EigenMultiset":
        """Multiset sum (direct sum of the underlying representations)."""
        return EigenMultiset(self.entries + other.entries)

    def __str__(self):
        if not self.entries:
            return "{}"
        parts = [str(a) if m == 1 else f"{a}^{m}" for a, m in self.entries]
        return "{" + ", ".join(parts) + "}"


def _coerce_angle(a) -> RationalAngle:
    if isinstance(a, RationalAngle):
        return a
    if isinstance(a, str):
        num, _, den = a.partition("/")
        return RationalAngle(int(num), int(den or 1))
    if isinstance(a, int):
        return RationalAngle(a, 1)
    return RationalAngle(*a)


@dataclass(frozen=True)
class CharPolyFactored:
    """Delta(t) = prod_d Phi_d(t)**factors[d]."""

    factors: tuple = ()  # sorted ((d, m_d), ...)

    def as_dict(self) -> dict:
        return dict(self.factors)

    @property
    def degree(self) -> int:
        return sum(m * euler_phi(d) for d, m in self.factors)

    def expand(self) -> Poly:
        p: Poly = (1,)
        for d, m in self.factors:
            p = poly_mul(p, poly_pow(cyclotomic(d), m))
        return p

    def at_one(self) -> int:
        return prod(cyclotomic_at_one(d) ** m for d, m in self.factors)

    def __str__(self):
        if not self.factors:
            return "1"
        return " * ".join(f"Phi_{d}" if m == 1 else f"Phi_{d}^{m}" for d, m in self.factors)

    def expanded_str(self) -> str:
        return poly_str(self.expand())


# ---------------------------------------------------------------------------
# descriptors


@dataclass(frozen=True)
class BrieskornPham:
    exponents: tuple

    def __post_init__(self):
        object.__setattr__(self, "exponents", tuple(int(a) for a in self.exponents))
        if not self.exponents:
            raise ValueError("Brieskorn-Pham exponent list must be nonempty")
        if any(a < 1 for a in self.exponents):
            raise ValueError(f"exponents must be >= 1, got {list(self.exponents)}")


@dataclass(frozen=True)
class Suspension:
    base: "SingularityDescriptor"
    j: int

    def __post_init__(self):
        if self.j < 2:
            raise ValueError(f"suspension order j must be >= 2, got {self.j}")


@dataclass(frozen=True)
class ExplicitSpectrum:
    spectrum: EigenMultiset


@dataclass(frozen=True)
class PointPower:
    alpha: int

    def __post_init__(self):
        if self.alpha < 1:
            raise ValueError(f"alpha must be >= 1, got {self.alpha}")


SingularityDescriptor = Union[BrieskornPham, Suspension, ExplicitSpectrum, PointPower]


def spectrum_of(desc: SingularityDescriptor) -> EigenMultiset:
    if isinstance(desc, BrieskornPham):
        return brieskorn_spectrum(desc.exponents)
    if isinstance(desc, PointPower):
        return point_power_spectrum(desc.alpha)
    if isinstance(desc, Suspension):
        return suspend(spectrum_of(desc.base), desc.j)
    if isinstance(desc, ExplicitSpectrum):
        return desc.spectrum
    raise TypeError(f"not a singularity descriptor: {desc!r}")


def order_bound_of(desc: SingularityDescriptor) -> int:
    """A multiple of every eigenvalue order the descriptor can produce."""
    if isinstance(desc, BrieskornPham):
        return lcm(*desc.exponents)
    if isinstance(desc, PointPower):
        return desc.alpha
    if isinstance(desc, Suspension):
        return lcm(order_bound_of(desc.base), desc.j)
    if isinstance(desc, ExplicitSpectrum):
        return lcm(1, *desc.spectrum.orders())
    raise TypeError(f"not a singularity descriptor: {desc!r}")


# ---------------------------------------------------------------------------
# operations


def point_power_spectrum(alpha: int) -> EigenMultiset:
    """Spectrum of z**alpha: an alpha-cycle acting on k^alpha modulo the diagonal."""
    if alpha < 1:
        raise ValueError(f"alpha must be >= 1, got {alpha}")
    return EigenMultiset.from_counts(
        {RationalAngle(m, alpha): 1 for m in range(1, alpha)}, ambient_dim=1
    )


def join(s1: EigenMultiset, s2: EigenMultiset) -> EigenMultiset:
    """Tensor product of monodromies: all pairwise angle sums, multiplicities multiplied."""
    out: Counter = Counter()
    for a, m in s1.entries:
        for b, k in s2.entries:
            out[a + b] += m * k
    n = None
    if s1.ambient_dim is not None and s2.ambient_dim is not None:
        n = s1.ambient_dim + s2.ambient_dim
    return EigenMultiset.from_counts(out, n)


def suspend(s: EigenMultiset, j: int) -> EigenMultiset:
    """Spectrum of f + w**j given the spectrum of f."""
    if j < 2:
        raise ValueError(f"suspension order j must be >= 2, got {j}")
    out = join(s, point_power_spectrum(j))
    n = None if s.ambient_dim is None else s.ambient_dim + 1
    return out.with_ambient_dim(n)


def brieskorn_spectrum(exponents) -> EigenMultiset:
    exponents = BrieskornPham(tuple(exponents)).exponents
    joined = reduce(join, (point_power_spectrum(a) for a in exponents))
    return joined.with_ambient_dim(len(exponents))


def galois_stable(s: EigenMultiset) -> bool:
    # Units mod b act transitively on the primitive angles of order b, so
    # stability means: all phi(b) of them occur, with one common multiplicity.
    by_order: dict = {}
    for angle, mult in s.entries:
        by_order.setdefault(angle.order, []).append(mult)
    return all(
        len(mults) == euler_phi(d) and len(set(mults)) == 1 for d, mults in by_order.items()
    )


def char_poly(s: EigenMultiset) -> CharPolyFactored:
    if not galois_stable(s):
        raise NotGaloisStable(f"{s} is not closed under Galois conjugation")
    factors = {d: c // euler_phi(d) for d, c in s.order_counts().items()}
    return CharPolyFactored(tuple(sorted(factors.items())))


def det_id_minus_monodromy(s: EigenMultiset) -> int:
    """det(id - T) = Delta(1), exact."""
    return char_poly(s).at_one()


def milnor_number(s: EigenMultiset) -> int:
    return len(s)


def spectrum_from_factors(factors: Mapping) -> EigenMultiset:
    """Inverse of char_poly: every primitive d-th root with multiplicity m_d."""
    counts = {}
    for d, m in factors.items():
        if m:
            for a in primitive_numerators(d):
                counts[RationalAngle(a, d)] = m
    return EigenMultiset.from_counts(counts)
