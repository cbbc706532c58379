"""Field-dependent decisions: is V(f) an intersection cohomology manifold?

A hypersurface germ is judged from the eigenvalue multiset of its
vanishing-cycle monodromy at a point.  Over a field of characteristic p,
``id - T`` fails to be invertible exactly when some eigenvalue has order 1
or a power of p, because ``Phi_{p^k}(1) = p`` and ``Phi_d(1) = 1`` for every
other ``d > 1``.  Two independent routes are computed and compared: the
eigenvalue-order test and the reduction of ``Delta(1)`` mod p.

Field dependence is always read off integral data reduced mod p.  That is
exact for the suspension-generated family, whose middle cohomology is
torsion free; explicit user spectra are treated the same way.
"""

from __future__ import annotations

import enum
import re
from dataclasses import asdict, dataclass
from typing import Callable, Union

from sympy import isprime

from .cyclotomic import prime_power_base
from .spectrum import (
    ONE,
    EigenMultiset,
    NotGaloisStable,
    det_id_minus_monodromy,
    galois_stable,
    suspend,
)

_FIELD_RE = re.compile(r"^(?:Q|F([0-9]+))$")


@dataclass(frozen=True)
class FieldSpec:
    """Coefficient field, known only through its characteristic."""

    characteristic: int = 0

    def __post_init__(self):
        c = self.characteristic
        if c != 0 and not (c > 1 and isprime(c)):
            raise ValueError(f"field characteristic must be 0 or a prime, got {c}")

    @classmethod
    def parse(cls, text: str) -> "FieldSpec":
        m = _FIELD_RE.match(text.strip())
        if not m:
            raise ValueError(f"bad field {text!r}: expected 'Q' or 'F<p>' such as 'F2'")
        return cls(int(m.group(1)) if m.group(1) else 0)

    def __str__(self):
        return "Q" if self.characteristic == 0 else f"F{self.characteristic}"


Q = FieldSpec(0)


def parse_fields(text: str) -> list:
    fields = [FieldSpec.parse(part) for part in text.split(",") if part.strip()]
    if not fields:
        raise ValueError("at least one field is required")
    return fields


def forbidden_orders(field: FieldSpec) -> Callable[[int], bool]:
    """Predicate on eigenvalue orders that make id - T singular over ``field``."""
    p = field.characteristic

    def forbidden(order: int) -> bool:
        if order == 1:
            return True
        return p != 0 and prime_power_base(order) == p

    return forbidden


def is_unit_in_field(value: int, field: FieldSpec) -> bool:
    if field.characteristic == 0:
        return value != 0
    return value % field.characteristic != 0


# ---------------------------------------------------------------------------
# verdicts


@dataclass(frozen=True)
class EigenvalueOneFound:
    multiplicity: int
    kind = "eigenvalue_one_found"


@dataclass(frozen=True)
class PrimePowerOrderFound:
    order: int
    characteristic: int
    kind = "prime_power_order_found"


@dataclass(frozen=True)
class DetUnitInField:
    value: int | None  # None when the multiset has no integral Delta
    kind = "det_unit_in_field"


@dataclass(frozen=True)
class SmoothNoVanishingCycles:
    kind = "smooth_no_vanishing_cycles"


@dataclass(frozen=True)
class ZeroDimensionalLocus:
    """f in one variable: V(f) is a finite set of points, trivially a manifold."""

    kind = "zero_dimensional_locus"


@dataclass(frozen=True)
class GenericConditionUnmet:
    """id - T is not invertible on a generic subset, so no IC certificate exists."""

    multiplicities: tuple = ()
    kind = "generic_condition_unmet"


@dataclass(frozen=True)
class ICVerdict:
    is_ic: bool
    reason: object
    generic_condition_assumed: bool = True
    ambient_ic_assumed: bool = True

    def to_dict(self) -> dict:
        return {
            "is_ic": self.is_ic,
            "reason": reason_to_dict(self.reason),
            "generic_condition_assumed": self.generic_condition_assumed,
            "ambient_ic_assumed": self.ambient_ic_assumed,
        }


def reason_to_dict(reason) -> dict:
    out = {"kind": reason.kind}
    for key, value in vars(reason).items():
        if isinstance(value, ICVerdict):
            value = value.to_dict()
        elif isinstance(value, tuple):
            value = list(value)
        out[key] = value
    return out


def _first_forbidden(s: EigenMultiset, field: FieldSpec):
    forbidden = forbidden_orders(field)
    bad = sorted(d for d in s.orders() if forbidden(d))
    return bad[0] if bad else None


def is_ic_hypersurface(
    s: EigenMultiset,
    field: FieldSpec = Q,
    *,
    ambient_dim: int | None = None,
    generic_ok: bool = True,
) -> ICVerdict:
    """IC-manifold verdict for V(f) at a point with vanishing-cycle spectrum ``s``.

    The ambient space is assumed to be an IC manifold on which f does not
    vanish identically on a component; the verdict records these flags.
    """
    n = ambient_dim if ambient_dim is not None else s.ambient_dim
    if not s:
        return ICVerdict(True, SmoothNoVanishingCycles(), generic_ok)
    if n == 1:
        return ICVerdict(True, ZeroDimensionalLocus(), generic_ok)
    if not generic_ok:
        return ICVerdict(False, GenericConditionUnmet(), False)

    bad = _first_forbidden(s, field)
    if bad == 1:
        verdict = ICVerdict(False, EigenvalueOneFound(s.multiplicity(ONE)))
    elif bad is not None:
        verdict = ICVerdict(False, PrimePowerOrderFound(bad, field.characteristic))
    else:
        value = det_id_minus_monodromy(s) if galois_stable(s) else None
        verdict = ICVerdict(True, DetUnitInField(value))

    if galois_stable(s):
        det_ok = is_unit_in_field(det_id_minus_monodromy(s), field)
        if det_ok != verdict.is_ic:
            raise AssertionError(
                f"order test and Delta(1) test disagree on {s} over {field}"
            )
    return verdict


def id_minus_monodromy_invertible(s: EigenMultiset, field: FieldSpec = Q) -> bool:
    """Whether id - T is an isomorphism on the stalk over ``field``."""
    return _first_forbidden(s, field) is None


def generic_multiplicity_check(multiplicities, field: FieldSpec = Q) -> bool:
    """For f = prod f_i**alpha_i: id - T is generically invertible iff char k divides no alpha_i."""
    multiplicities = list(multiplicities)
    if not multiplicities:
        raise ValueError("multiplicity list must be nonempty")
    if any(a < 1 for a in multiplicities):
        raise ValueError(f"multiplicities must be >= 1, got {multiplicities}")
    p = field.characteristic
    return p == 0 or all(a % p for a in multiplicities)


# ---------------------------------------------------------------------------
# integral and topological statements


@dataclass(frozen=True)
class HomologyManifoldVerdict:
    holds: bool
    det_value: int
    offending_order: int | None = None
    zero_dimensional: bool = False

    def to_dict(self) -> dict:
        return asdict(self)


def is_integral_homology_manifold(
    s: EigenMultiset, *, ambient_dim: int | None = None
) -> HomologyManifoldVerdict:
    """Integral homology manifold iff Delta(1) = +-1, i.e. no order 1 or prime-power eigenvalue."""
    if not galois_stable(s):
        raise NotGaloisStable(f"{s} has no integral characteristic polynomial")
    det = det_id_minus_monodromy(s)
    n = ambient_dim if ambient_dim is not None else s.ambient_dim
    if s and n == 1:
        return HomologyManifoldVerdict(True, det, None, zero_dimensional=True)
    bad = sorted(d for d in s.orders() if d == 1 or prime_power_base(d) is not None)
    holds = not bad
    if holds != (abs(det) == 1):
        raise AssertionError(f"order test and Delta(1) = {det} disagree on {s}")
    return HomologyManifoldVerdict(holds, det, bad[0] if bad else None)


class Topology(str, enum.Enum):
    TOPOLOGICAL_MANIFOLD = "TopologicalManifold"
    NOT_TOPOLOGICAL_MANIFOLD = "NotTopologicalManifold"
    INCONCLUSIVE = "Inconclusive"


def topological_manifold_check(n: int, s: int, ihm: bool) -> Topology:
    """Hypersurface in C^n with singular set of dimension s (-1 if empty).

    When n - 1 - s >= 3, being a topological manifold is equivalent to being
    an integral homology manifold; otherwise no conclusion is drawn.
    """
    if n < 1:
        raise ValueError(f"ambient dimension must be >= 1, got {n}")
    if s < -1 or s >= n - 1:
        raise ValueError(f"singular-set dimension must satisfy -1 <= s < n-1, got s={s}, n={n}")
    if n - 1 - s < 3:
        return Topology.INCONCLUSIVE
    return Topology.TOPOLOGICAL_MANIFOLD if ihm else Topology.NOT_TOPOLOGICAL_MANIFOLD


@dataclass(frozen=True)
class DoubleSuspensionReport:
    spectrum: EigenMultiset
    suspended: EigenMultiset
    identical: bool
    ihm_before: HomologyManifoldVerdict
    ihm_after: HomologyManifoldVerdict
    ambient_dim: int  # n + 2
    singular_dim: int
    topology: Topology
    manifold_criterion_applies: bool

    def to_dict(self) -> dict:
        return {
            "spectrum_identical": self.identical,
            "ihm_before": self.ihm_before.to_dict(),
            "ihm_after": self.ihm_after.to_dict(),
            "ambient_dim": self.ambient_dim,
            "singular_dim": self.singular_dim,
            "topology": self.topology.value,
            "manifold_criterion_applies": self.manifold_criterion_applies,
        }


def double_suspension_report(s: EigenMultiset, n: int, sing_dim: int) -> DoubleSuspensionReport:
    """V(f + w1^2 + w2^2) in C^(n+2) for reduced f on C^n with spectrum ``s``."""
    if n < 1:
        raise ValueError(f"ambient dimension must be >= 1, got {n}")
    if sing_dim < -1 or sing_dim > n - 2:
        raise ValueError(f"reduced f on C^{n} has singular set of dimension <= {n - 2}")
    base = s.with_ambient_dim(n)
    twice = suspend(suspend(base, 2), 2)
    before = is_integral_homology_manifold(base)
    after = is_integral_homology_manifold(twice)
    topology = topological_manifold_check(n + 2, sing_dim, after.holds)
    return DoubleSuspensionReport(
        spectrum=base,
        suspended=twice,
        identical=twice == base,
        ihm_before=before,
        ihm_after=after,
        ambient_dim=n + 2,
        singular_dim=sing_dim,
        topology=topology,
        manifold_criterion_applies=before.holds,
    )


# ---------------------------------------------------------------------------
# nearby cycles


@dataclass(frozen=True)
class Split:
    """psi_f decomposes as the constant sheaf plus the vanishing cycles, T = id + T~."""

    constant_part_rank: int
    vanishing: EigenMultiset
    kind = "split"


@dataclass(frozen=True)
class NonSplit:
    """No such decomposition; when T~ = id the nearby monodromy is id + N with N != 0, N^2 = 0."""

    has_unipotent_nilpotent_note: bool
    kind = "non_split"


NearbyStructure = Union[Split, NonSplit]


def nearby_decomposition(s: EigenMultiset, field: FieldSpec = Q, **kwargs) -> NearbyStructure:
    verdict = is_ic_hypersurface(s, field, **kwargs)
    if isinstance(verdict.reason, ZeroDimensionalLocus):
        # A point is a manifold, but the splitting still needs id - T invertible.
        split = id_minus_monodromy_invertible(s, field)
    else:
        split = verdict.is_ic
    if split:
        return Split(1, s)
    all_ones = bool(s) and s.orders() == {1}
    return NonSplit(all_ones)
