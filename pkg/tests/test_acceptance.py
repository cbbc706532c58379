"""Acceptance criteria, one test each, with wall-clock limits.

Every test records a pass/fail line; the lines are printed in the pytest
terminal summary, or directly when this file is run as a script.
"""

import random
import time
from contextlib import contextmanager
from math import lcm

from generators import random_galois_stable, random_spectrum
from milnor_spectra.cyclotomic import cyclotomic, cyclotomic_at_one, poly_eval
from milnor_spectra.documents import bundled_document, parse_problem
from milnor_spectra.ic import (
    Q,
    FieldSpec,
    NonSplit,
    Split,
    Topology,
    double_suspension_report,
    generic_multiplicity_check,
    is_ic_hypersurface,
    is_integral_homology_manifold,
    nearby_decomposition,
)
from milnor_spectra.lines import Status, check_problem, strict_bound_check
from milnor_spectra.oracle import brieskorn_matrix, char_poly_exact, det_id_minus_matrix, spectrum_from_char_poly
from milnor_spectra.planner import Label, exact_j_membership, plan, theorem_label
from milnor_spectra.spectrum import (
    EigenMultiset,
    brieskorn_spectrum,
    char_poly,
    det_id_minus_monodromy,
    galois_stable,
    join,
    suspend,
)

RESULTS: dict = {}
PRIMES_TO_50 = [p for p in range(2, 51) if all(p % q for q in range(2, p))]
FIELDS = [Q] + [FieldSpec(p) for p in (2, 3, 5, 7)]


@contextmanager
def criterion(number: int, title: str, limit: float):
    start = time.perf_counter()
    try:
        yield
    except BaseException as exc:
        elapsed = time.perf_counter() - start
        RESULTS[number] = f"FAIL  criterion {number:>2}  {title}  ({elapsed:.2f}s): {type(exc).__name__}: {exc}"
        raise
    elapsed = time.perf_counter() - start
    ok = elapsed < limit
    RESULTS[number] = f"{'PASS' if ok else 'FAIL'}  criterion {number:>2}  {title}  ({elapsed:.2f}s, limit {limit:g}s)"
    assert ok, f"took {elapsed:.2f}s, limit {limit}s"


def test_quadric_table():
    with criterion(1, "quadrics z1^2+...+zn^2 over Q and F2, n = 1..8", 1.0):
        for n in range(1, 9):
            s = brieskorn_spectrum((2,) * n)
            assert is_ic_hypersurface(s, Q).is_ic == (n % 2 == 1), n
            assert is_ic_hypersurface(s, FieldSpec(2)).is_ic == (n == 1), n


def test_node_and_cusp():
    with criterion(2, "node and cusp verdicts over Q, F2, F3, F5, F7", 1.0):
        node = brieskorn_spectrum((2, 2))
        assert det_id_minus_monodromy(node) == 0
        assert not any(is_ic_hypersurface(node, f).is_ic for f in FIELDS)
        cusp = brieskorn_spectrum((2, 3))
        assert cusp.orders() == {6}
        assert det_id_minus_monodromy(cusp) == 1
        assert all(is_ic_hypersurface(cusp, f).is_ic for f in FIELDS)
        assert is_integral_homology_manifold(cusp).holds


def test_generic_multiplicity_sweep():
    with criterion(3, "generic multiplicity rule, alpha <= 50, p <= 50", 1.0):
        for alpha in range(1, 51):
            for p in PRIMES_TO_50:
                assert generic_multiplicity_check((alpha,), FieldSpec(p)) == (alpha % p != 0), (alpha, p)


def exponent_tuples(max_product=64, max_len=4, prefix=(), budget=None):
    """Ordered tuples of exponents >= 2 with prod(a_i - 1) <= max_product."""
    budget = max_product if budget is None else budget
    if prefix:
        yield prefix
    if len(prefix) == max_len:
        return
    for a in range(2, budget + 2):
        yield from exponent_tuples(max_product, max_len, prefix + (a,), budget // (a - 1))


def test_oracle_equivalence():
    with criterion(4, "closed forms equal matrix oracle for prod(a_i - 1) <= 64, length <= 4", 60.0):
        count = 0
        for exps in exponent_tuples():
            s = brieskorn_spectrum(exps)
            m = brieskorn_matrix(exps)
            poly = char_poly_exact(m)
            assert poly == char_poly(s).expand(), exps
            assert spectrum_from_char_poly(poly, lcm(*exps)) == s, exps
            assert det_id_minus_matrix(m) == det_id_minus_monodromy(s), exps
            count += 1
        assert count > 1000


def test_sufficient_conditions_char_zero():
    with criterion(5, "coprimality / multiple conditions vs exact membership, 500 spectra, j <= 120", 30.0):
        rng = random.Random(20261016)
        violations = []
        for _ in range(500):
            s = random_galois_stable(rng, max_size=40, max_order=60)
            assert galois_stable(s) and len(s) <= 40
            for j in range(2, 121):
                label = theorem_label(s, j)
                if label is None:
                    continue
                exact = exact_j_membership(s, j, Q)
                if exact != (label is Label.IN_BY_COPRIMALITY):
                    violations.append((s, j, label))
        assert violations == []


def test_totally_unipotent_clause():
    with criterion(6, "unipotent spectra: all j over Q, disagreement exactly at p | j over F_p", 5.0):
        for k in range(1, 5):
            s = EigenMultiset.of(*["0"] * k)
            p_q = plan(s, Q, 60)
            assert p_q.totally_unipotent and p_q.members == list(range(2, 61))
            assert p_q.disagreement_with_theorem == ()
        zero = EigenMultiset.of("0")
        for p in (2, 3, 5, 7, 11):
            assert list(plan(zero, FieldSpec(p), 60).disagreement_with_theorem) == [
                j for j in range(2, 61) if j % p == 0
            ]


def test_double_suspension():
    with criterion(7, "double suspension by 2 is the identity on spectra, cusp in C^4", 5.0):
        rng = random.Random(7)
        for _ in range(200):
            s = random_galois_stable(rng)
            twice = suspend(suspend(s, 2), 2)
            assert twice == s
            assert is_integral_homology_manifold(twice).holds == is_integral_homology_manifold(s).holds
        report = double_suspension_report(brieskorn_spectrum((2, 3)), 2, 0)
        assert report.ambient_dim == 4
        assert report.topology is Topology.TOPOLOGICAL_MANIFOLD


def test_whitney_umbrella():
    with criterion(8, "Whitney umbrella: strict bound gives dim <= 0", 1.0):
        problem = parse_problem(bundled_document("whitney_umbrella.json"))
        assert len(problem.components) == 1 and problem.mu_sum == 1
        assert problem.f0_spectrum == EigenMultiset.of("1/6", "5/6")
        strict = strict_bound_check(problem, Q)
        assert strict.status is Status.PASS and strict.derived_bound == 0
        report = check_problem(problem, Q)
        assert report.upper_bound == 0 and report.consistent


def test_split_iff_ic():
    with criterion(9, "nearby cycles split iff IC, 300 spectra x fields", 5.0):
        rng = random.Random(99)
        fields = [Q] + [FieldSpec(p) for p in (2, 3, 5, 7, 11, 13)]
        for i in range(300):
            s = random_galois_stable(rng, 30, 40) if i % 2 else random_spectrum(rng)
            s = s.with_ambient_dim(rng.randint(2, 8))
            for f in fields:
                nearby = nearby_decomposition(s, f)
                assert isinstance(nearby, Split) == is_ic_hypersurface(s, f).is_ic, (s, f)
        for k in range(1, 6):
            ones = EigenMultiset.of(*["0"] * k).with_ambient_dim(2)
            for f in fields:
                assert nearby_decomposition(ones, f) == NonSplit(True)


def test_algebra_properties():
    with criterion(10, "join laws, size multiplicativity, stability closure, Phi_d(1) for d <= 200", 10.0):
        rng = random.Random(10)
        for _ in range(300):
            a, b, c = (random_spectrum(rng, 6, 12) for _ in range(3))
            assert join(a, b) == join(b, a)
            assert join(join(a, b), c) == join(a, join(b, c))
            assert len(join(a, b)) == len(a) * len(b)
        for _ in range(300):
            a, b = random_galois_stable(rng, 12, 30), random_galois_stable(rng, 12, 30)
            assert galois_stable(join(a, b))
            assert galois_stable(suspend(a, rng.randint(2, 20)))
        for d in range(1, 201):
            assert poly_eval(cyclotomic(d), 1) == cyclotomic_at_one(d), d


if __name__ == "__main__":
    import sys

    tests = [v for k, v in sorted(globals().items()) if k.startswith("test_")]
    for test in tests:
        try:
            test()
        except AssertionError:
            pass
    for n in sorted(RESULTS):
        print(RESULTS[n])
    sys.exit(0 if all(line.startswith("PASS") for line in RESULTS.values()) else 1)
