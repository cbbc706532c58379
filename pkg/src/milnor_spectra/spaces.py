"""IC-manifold status of composite spaces, and pointwise local checks.

Products are IC manifolds exactly when every factor is; open subsets
inherit the status of the parent; a disjoint union is one only if every
part is and all parts have the same pure dimension.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Mapping, Union

from .ic import (
    Q,
    FieldSpec,
    GenericConditionUnmet,
    ICVerdict,
    generic_multiplicity_check,
    is_ic_hypersurface,
)
from .spectrum import EigenMultiset


@dataclass(frozen=True)
class Smooth:
    n: int

    def __post_init__(self):
        if self.n < 0:
            raise ValueError(f"dimension must be >= 0, got {self.n}")


@dataclass(frozen=True)
class HypersurfaceGerm:
    """V(f) near a point, for f on C^ambient_dim with the given vanishing-cycle spectrum."""

    spectrum: EigenMultiset
    ambient_dim: int
    generic_ok: bool = True
    multiplicities: tuple | None = None

    def __post_init__(self):
        if self.ambient_dim < 1:
            raise ValueError(f"ambient_dim must be >= 1, got {self.ambient_dim}")


@dataclass(frozen=True)
class Product:
    factors: tuple

    def __post_init__(self):
        object.__setattr__(self, "factors", tuple(self.factors))
        if not self.factors:
            raise ValueError("a product needs at least one factor")


@dataclass(frozen=True)
class DisjointUnion:
    parts: tuple

    def __post_init__(self):
        object.__setattr__(self, "parts", tuple(self.parts))
        if not self.parts:
            raise ValueError("a disjoint union needs at least one part")


@dataclass(frozen=True)
class OpenSubsetOf:
    parent: "SpaceDescriptor"


SpaceDescriptor = Union[Smooth, HypersurfaceGerm, Product, DisjointUnion, OpenSubsetOf]


@dataclass(frozen=True)
class AllFactorsIC:
    count: int
    kind = "all_factors_ic"


@dataclass(frozen=True)
class FactorNotIC:
    index: int
    verdict: ICVerdict
    kind = "factor_not_ic"


@dataclass(frozen=True)
class PurityViolation:
    dimensions: tuple
    kind = "purity_violation"


@dataclass(frozen=True)
class SmoothSpace:
    kind = "smooth_space"


def dimension(space: SpaceDescriptor) -> int | None:
    """Complex dimension, or None if the space is not pure-dimensional."""
    if isinstance(space, Smooth):
        return space.n
    if isinstance(space, HypersurfaceGerm):
        return space.ambient_dim - 1
    if isinstance(space, Product):
        dims = [dimension(f) for f in space.factors]
        return None if None in dims else sum(dims)
    if isinstance(space, DisjointUnion):
        dims = {dimension(p) for p in space.parts}
        return dims.pop() if len(dims) == 1 else None
    if isinstance(space, OpenSubsetOf):
        return dimension(space.parent)
    raise TypeError(f"not a space descriptor: {space!r}")


def ic_status(space: SpaceDescriptor, field: FieldSpec = Q) -> ICVerdict:
    if isinstance(space, Smooth):
        return ICVerdict(True, SmoothSpace())
    if isinstance(space, HypersurfaceGerm):
        generic_ok = space.generic_ok
        if space.multiplicities is not None:
            generic_ok = generic_ok and generic_multiplicity_check(space.multiplicities, field)
        verdict = is_ic_hypersurface(
            space.spectrum, field, ambient_dim=space.ambient_dim, generic_ok=generic_ok
        )
        if isinstance(verdict.reason, GenericConditionUnmet) and space.multiplicities:
            verdict = ICVerdict(
                False, GenericConditionUnmet(tuple(space.multiplicities)), False
            )
        return verdict
    if isinstance(space, OpenSubsetOf):
        return ic_status(space.parent, field)
    if isinstance(space, Product):
        return _all_ic(space.factors, field)
    if isinstance(space, DisjointUnion):
        dims = [dimension(p) for p in space.parts]
        if None in dims or len(set(dims)) > 1:
            return ICVerdict(False, PurityViolation(tuple(dims)))
        return _all_ic(space.parts, field)
    raise TypeError(f"not a space descriptor: {space!r}")


def _all_ic(children, field) -> ICVerdict:
    flags_generic = True
    for i, child in enumerate(children):
        v = ic_status(child, field)
        flags_generic = flags_generic and v.generic_condition_assumed
        if not v.is_ic:
            return ICVerdict(False, FactorNotIC(i, v), v.generic_condition_assumed)
    return ICVerdict(True, AllFactorsIC(len(children)), flags_generic)


@dataclass(frozen=True)
class LocalCohomologyTable:
    """Ranks of H^i(X, X - {x}; k) at one point of a space of complex dimension n."""

    n: int
    ranks: Mapping = field(default_factory=dict)

    def __post_init__(self):
        if any(r < 0 for r in self.ranks.values()):
            raise ValueError("ranks must be non-negative")


def local_cohomology_manifold_check(table: LocalCohomologyTable) -> bool:
    """Rank 1 in degree 2n and zero in every other degree."""
    top = 2 * table.n
    return all(rank == (1 if deg == top else 0) for deg, rank in table.ranks.items()) and (
        table.ranks.get(top, 0) == 1
    )


def link_sphere_check(link_betti: Mapping, n: int, d: int) -> bool:
    """Whether the link of a d-dimensional stratum in an n-dimensional space is a
    cohomology sphere of dimension 2(n-d)-1.  Ranks are unreduced; the empty set
    counts as the (-1)-sphere."""
    m = 2 * (n - d) - 1
    nonzero = {deg: r for deg, r in link_betti.items() if r}
    if m < 0:
        return m == -1 and not nonzero
    if m == 0:
        return nonzero == {0: 2}
    return nonzero == {0: 1, m: 1}
