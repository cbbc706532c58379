"""Constraints on the Milnor fiber of a function with a one-dimensional critical locus.

Setup: f on C^n (n >= 3) with a curve of critical points through the origin,
sliced by hyperplanes z0 = t.  Each branch nu of the critical curve carries a
transversal singularity with generic Milnor number mu_nu, transversal
monodromy spectrum, and a vertical monodromy h_nu around the branch.  The
degree n-2 reduced cohomology of the Milnor fiber of f at 0 injects
monodromy-equivariantly into that of f_0 at 0 and into the direct sum of the
kernels of id - h_nu.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass

from .ic import Q, FieldSpec, is_ic_hypersurface
from .spectrum import ONE, EigenMultiset


class Status(str, enum.Enum):
    PASS = "pass"
    FAIL = "fail"
    INCONCLUSIVE = "inconclusive"


@dataclass(frozen=True)
class TransversalComponent:
    name: str
    mu_generic: int
    transversal_spectrum: EigenMultiset
    vertical_monodromy: EigenMultiset | None = None
    kernel_dim_override: int | None = None

    def __post_init__(self):
        if self.mu_generic < 1:
            raise ValueError(f"{self.name}: mu_generic must be positive")
        if len(self.transversal_spectrum) != self.mu_generic:
            raise ValueError(
                f"{self.name}: transversal spectrum has {len(self.transversal_spectrum)} "
                f"eigenvalues, expected mu_generic = {self.mu_generic}"
            )
        if self.vertical_monodromy is not None and len(self.vertical_monodromy) != self.mu_generic:
            raise ValueError(f"{self.name}: vertical monodromy must act on k^{self.mu_generic}")
        if self.kernel_dim_override is not None and not 0 <= self.kernel_dim_override <= self.mu_generic:
            raise ValueError(f"{self.name}: kernel dimension must lie in [0, {self.mu_generic}]")

    def kernel_dim(self) -> int:
        """dim ker(id - h); from a bare multiset, the multiplicity of eigenvalue 1."""
        if self.kernel_dim_override is not None:
            return self.kernel_dim_override
        if self.vertical_monodromy is None:
            raise ValueError(f"component {self.name!r} has neither h nor a kernel dimension")
        return self.vertical_monodromy.multiplicity(ONE)

    def h_is_identity(self) -> bool:
        return self.kernel_dim() == self.mu_generic


@dataclass(frozen=True)
class LineSingularityProblem:
    n: int
    components: tuple
    f0_spectrum: EigenMultiset
    claimed_dim: int | None = None
    claimed_spectrum: EigenMultiset | None = None
    euler_characteristic: int | None = None

    def __post_init__(self):
        object.__setattr__(self, "components", tuple(self.components))
        if self.n < 3:
            raise ValueError(f"ambient dimension must be >= 3, got {self.n}")
        if not self.components:
            raise ValueError("at least one critical-locus component is required")
        if self.claimed_dim is not None and self.claimed_dim < 0:
            raise ValueError("claimed_dim must be non-negative")
        if self.claimed_spectrum is not None:
            if self.claimed_dim is None:
                object.__setattr__(self, "claimed_dim", len(self.claimed_spectrum))
            elif self.claimed_dim != len(self.claimed_spectrum):
                raise ValueError("claimed_spectrum size differs from claimed_dim")

    @property
    def mu_sum(self) -> int:
        return sum(c.mu_generic for c in self.components)

    def transversal_sum(self) -> EigenMultiset:
        out = EigenMultiset()
        for c in self.components:
            out = out.union(c.transversal_spectrum)
        return out


@dataclass(frozen=True)
class CheckResult:
    name: str
    status: Status
    explanation: str
    derived_bound: int | None = None

    def to_dict(self) -> dict:
        out = {"name": self.name, "status": self.status.value, "explanation": self.explanation}
        if self.derived_bound is not None:
            out["derived_bound"] = self.derived_bound
        return out


@dataclass(frozen=True)
class ConstraintReport:
    beta_bound: int
    mu_sum: int
    checks: tuple
    upper_bound: int
    top_degree_rank: int | None = None

    def to_dict(self) -> dict:
        return {
            "beta_bound": self.beta_bound,
            "mu_sum": self.mu_sum,
            "upper_bound": self.upper_bound,
            "top_degree_rank": self.top_degree_rank,
            "checks": [c.to_dict() for c in self.checks],
        }

    @property
    def consistent(self) -> bool:
        return all(c.status is not Status.FAIL for c in self.checks)


def beta_upper_bound(components) -> int:
    return sum(c.kernel_dim() for c in components)


def injection_check(problem: LineSingularityProblem) -> CheckResult:
    name = "injection"
    d = problem.claimed_dim
    if d is None:
        return CheckResult(name, Status.INCONCLUSIVE, "no claimed dimension")
    beta = beta_upper_bound(problem.components)
    limits = [
        ("sum of dim ker(id - h_nu)", beta),
        ("dim of f_0 cohomology", len(problem.f0_spectrum)),
        ("sum of generic Milnor numbers", problem.mu_sum),
    ]
    for label, limit in limits:
        if d > limit:
            return CheckResult(name, Status.FAIL, f"claimed dim {d} exceeds {label} = {limit}")
    claimed = problem.claimed_spectrum
    if claimed is not None:
        # an invariant subspace's characteristic polynomial divides the ambient one
        if not claimed.issubset(problem.f0_spectrum):
            return CheckResult(
                name, Status.FAIL, f"char poly of {claimed} does not divide that of f_0 {problem.f0_spectrum}"
            )
        transversal = problem.transversal_sum()
        if not claimed.issubset(transversal):
            return CheckResult(
                name, Status.FAIL, f"char poly of {claimed} does not divide the transversal product {transversal}"
            )
    return CheckResult(name, Status.PASS, f"claimed dim {d} <= min({beta}, {len(problem.f0_spectrum)}, {problem.mu_sum})")


def equality_consequences(problem: LineSingularityProblem) -> CheckResult:
    name = "equality_case"
    if problem.claimed_dim is None or problem.claimed_dim != problem.mu_sum:
        return CheckResult(name, Status.INCONCLUSIVE, "claimed dim is not the sum of generic Milnor numbers")
    for c in problem.components:
        if not c.h_is_identity():
            return CheckResult(name, Status.FAIL, f"vertical monodromy of {c.name!r} is not the identity")
    transversal = problem.transversal_sum()
    for angle, mult in transversal.entries:
        have = problem.f0_spectrum.multiplicity(angle)
        if mult > have:
            return CheckResult(
                name,
                Status.FAIL,
                f"eigenvalue {angle} has multiplicity {mult} transversally but {have} for f_0",
            )
    return CheckResult(name, Status.PASS, "all h_nu are the identity and eigenspaces inject into f_0")


def strict_bound_check(problem: LineSingularityProblem, field: FieldSpec = Q) -> CheckResult:
    """If V(f_0) is an IC manifold and some transversal slice is not, the bound is strict."""
    name = "strict_bound"
    slice_dim = problem.n - 1
    f0 = is_ic_hypersurface(problem.f0_spectrum, field, ambient_dim=slice_dim)
    if not f0.is_ic:
        return CheckResult(name, Status.INCONCLUSIVE, f"V(f_0) is not an IC manifold over {field}")
    bad = [
        c.name
        for c in problem.components
        if not is_ic_hypersurface(c.transversal_spectrum, field, ambient_dim=slice_dim).is_ic
    ]
    if not bad:
        return CheckResult(name, Status.INCONCLUSIVE, f"every transversal slice is IC over {field}")
    bound = problem.mu_sum - 1
    why = f"V(f_0) is IC over {field} but transversal slices {bad} are not"
    d = problem.claimed_dim
    if d is None:
        return CheckResult(name, Status.PASS, f"{why}: dim <= {bound}", bound)
    if d <= bound:
        return CheckResult(name, Status.PASS, f"{why}: claimed dim {d} <= {bound}", bound)
    return CheckResult(name, Status.FAIL, f"{why}: claimed dim {d} must be < {problem.mu_sum}", bound)


def check_problem(problem: LineSingularityProblem, field: FieldSpec = Q) -> ConstraintReport:
    beta = beta_upper_bound(problem.components)
    checks = (
        injection_check(problem),
        equality_consequences(problem),
        strict_bound_check(problem, field),
    )
    upper = min(beta, len(problem.f0_spectrum), problem.mu_sum)
    for c in checks:
        if c.derived_bound is not None:
            upper = min(upper, c.derived_bound)
    top = None
    if problem.euler_characteristic is not None and problem.claimed_dim is not None:
        # chi(F) = 1 + (-1)^(n-2) b_(n-2) + (-1)^(n-1) b_(n-1)
        sign = (-1) ** (problem.n - 1)
        top = sign * (problem.euler_characteristic - 1) + problem.claimed_dim
        if top < 0:
            checks = checks + (
                CheckResult("euler_characteristic", Status.FAIL, f"implied rank in degree n-1 is {top} < 0"),
            )
    return ConstraintReport(beta, problem.mu_sum, checks, upper, top)
