"""Which suspensions f + w**j give an IC manifold?

For a spectrum S, let E be the set of eigenvalue orders.  Two sufficient
conditions are known: j coprime to every element of E puts j in J, and j a
multiple of some element of E other than 1 (with S not unipotent) keeps j
out.  Both are recorded as advisory labels; the ground truth is always the
exact check, which suspends S and runs the IC test.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from math import gcd, lcm

import numpy as np

from .cyclotomic import cyclotomic_at_one, euler_phi
from .ic import Q, FieldSpec, forbidden_orders, is_ic_hypersurface
from .spectrum import EigenMultiset, galois_stable, suspend


class Label(str, enum.Enum):
    IN_BY_COPRIMALITY = "InByCoprimality"
    OUT_BY_MULTIPLE = "OutByMultiple"
    IN_BY_EXACT_CHECK = "InByExactCheck"
    OUT_BY_EXACT_CHECK = "OutByExactCheck"


def order_set(s: EigenMultiset) -> frozenset:
    return s.orders()


def totally_unipotent(s: EigenMultiset) -> bool:
    return order_set(s) <= {1}


def suspended_order_counts(s: EigenMultiset, j: int) -> dict:
    """Multiplicity of each eigenvalue order in suspend(s, j), without building the multiset."""
    if j < 2:
        raise ValueError(f"suspension order j must be >= 2, got {j}")
    by_order: dict = {}
    for angle, mult in s.entries:
        by_order.setdefault(angle.order, []).append((angle.numerator, mult))
    out: dict = {}
    for q, items in by_order.items():
        big = lcm(q, j)
        nums = np.array([a * (big // q) for a, _ in items], dtype=np.int64)
        mults = np.array([m for _, m in items], dtype=np.int64)
        shifts = np.arange(1, j, dtype=np.int64) * (big // j)
        sums = (nums[:, None] + shifts[None, :]) % big
        orders = big // np.gcd(sums, big)
        values, inverse = np.unique(orders, return_inverse=True)
        counts = np.zeros(values.size, dtype=np.int64)
        np.add.at(counts, inverse.reshape(orders.shape), mults[:, None])
        for d, c in zip(values.tolist(), counts.tolist()):
            out[d] = out.get(d, 0) + c
    return out


def exact_j_membership(s: EigenMultiset, j: int, field: FieldSpec = Q) -> bool:
    """Whether V(f + w**j) is an IC manifold: the IC test applied to suspend(s, j)."""
    forbidden = forbidden_orders(field)
    return not any(forbidden(d) for d in suspended_order_counts(s, j))


def exact_j_membership_direct(s: EigenMultiset, j: int, field: FieldSpec = Q) -> bool:
    """Same decision, by materializing the suspended multiset (slow reference path)."""
    return is_ic_hypersurface(suspend(s, j), field).is_ic


def theorem_label(s: EigenMultiset, j: int) -> Label | None:
    """The label implied by the two sufficient conditions, or None if both are silent."""
    orders = order_set(s)
    if all(gcd(j, q) == 1 for q in orders):
        return Label.IN_BY_COPRIMALITY
    if not totally_unipotent(s) and any(j % q == 0 for q in orders if q != 1):
        return Label.OUT_BY_MULTIPLE
    return None


@dataclass(frozen=True)
class PlanEntry:
    j: int
    label: Label
    exact: bool
    theorem_label: Label | None
    reason: str

    def to_dict(self) -> dict:
        return {
            "j": self.j,
            "label": self.label.value,
            "exact": self.exact,
            "theorem_label": self.theorem_label.value if self.theorem_label else None,
            "reason": self.reason,
        }


@dataclass(frozen=True)
class SuspensionPlan:
    field: FieldSpec
    orders: frozenset
    totally_unipotent: bool
    entries: tuple
    disagreement_with_theorem: tuple

    @property
    def members(self) -> list:
        return [e.j for e in self.entries if e.exact]

    @property
    def non_members(self) -> list:
        return [e.j for e in self.entries if not e.exact]

    def to_json(self) -> list:
        return [e.to_dict() for e in self.entries]


def _exact_reason(s: EigenMultiset, j: int, field: FieldSpec) -> tuple[bool, str]:
    if not s:
        return True, "no vanishing cycles"
    counts = suspended_order_counts(s, j)
    if 1 in counts:
        return False, f"suspension has eigenvalue 1 with multiplicity {counts[1]}"
    forbidden = forbidden_orders(field)
    bad = sorted(d for d in counts if forbidden(d))
    if bad:
        return False, f"suspension has eigenvalue of order {bad[0]}, a power of char {field}"
    if galois_stable(s):
        delta = 1
        for d, c in counts.items():
            delta *= cyclotomic_at_one(d) ** (c // euler_phi(d))
        return True, f"id - T invertible over {field} (Delta(1) = {delta})"
    return True, f"id - T invertible over {field}"


def plan(s: EigenMultiset, field: FieldSpec = Q, j_max: int = 12) -> SuspensionPlan:
    if j_max < 2:
        raise ValueError(f"j_max must be >= 2, got {j_max}")
    entries = []
    disagreements = []
    for j in range(2, j_max + 1):
        exact, reason = _exact_reason(s, j, field)
        advisory = theorem_label(s, j)
        implied = None if advisory is None else advisory is Label.IN_BY_COPRIMALITY
        if implied is not None and implied == exact:
            label = advisory
        else:
            label = Label.IN_BY_EXACT_CHECK if exact else Label.OUT_BY_EXACT_CHECK
            if implied is not None:
                disagreements.append(j)
                reason += f"; contradicts {advisory.value}"
        entries.append(PlanEntry(j, label, exact, advisory, reason))
    if field.characteristic == 0 and disagreements:
        raise AssertionError(f"sufficient conditions contradicted in characteristic 0 at {disagreements}")
    return SuspensionPlan(
        field=field,
        orders=order_set(s),
        totally_unipotent=totally_unipotent(s),
        entries=tuple(entries),
        disagreement_with_theorem=tuple(disagreements),
    )


@dataclass(frozen=True)
class InfinitudeWitnesses:
    """Arithmetic families: j in J when gcd(j, modulus) = 1; j not in J when out_step | j."""

    modulus: int
    out_step: int | None

    def in_family(self, j: int) -> bool:
        return j >= 2 and gcd(j, self.modulus) == 1

    def out_family(self, j: int) -> bool:
        return self.out_step is not None and j >= 2 and j % self.out_step == 0

    def residues(self) -> list:
        return [r for r in range(self.modulus) if gcd(r, self.modulus) == 1]

    def sample_in(self, count: int) -> list:
        # 1 + k*modulus is coprime to modulus for every k
        return [1 + k * self.modulus for k in range(1, count + 1)]

    def sample_out(self, count: int) -> list:
        if self.out_step is None:
            return []
        return [k * self.out_step for k in range(1, count + 1)]

    def describe(self) -> dict:
        if self.modulus == 1:
            in_text = "all j >= 2"
        elif self.modulus > 360:
            in_text = f"gcd(j, {self.modulus}) = 1"
        else:
            in_text = f"j mod {self.modulus} in {self.residues()}"
        out_text = "empty" if self.out_step is None else f"multiples of {self.out_step}"
        return {
            "in_family": in_text,
            "in_modulus": self.modulus,
            "out_family": out_text,
            "out_step": self.out_step,
        }


def infinitude_witnesses(s: EigenMultiset) -> InfinitudeWitnesses:
    orders = order_set(s)
    modulus = lcm(1, *orders)
    nontrivial = sorted(q for q in orders if q != 1)
    return InfinitudeWitnesses(modulus, nontrivial[0] if nontrivial else None)
