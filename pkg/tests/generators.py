"""Random spectra shared by property tests and the acceptance suite."""

import random

from hypothesis import strategies as st

from milnor_spectra.cyclotomic import euler_phi
from milnor_spectra.ic import FieldSpec
from milnor_spectra.spectrum import EigenMultiset, RationalAngle, spectrum_from_factors


def random_galois_stable(rng: random.Random, max_size=40, max_order=60) -> EigenMultiset:
    factors = {}
    budget = rng.randint(0, max_size)
    for d in rng.sample(range(1, max_order + 1), rng.randint(1, 8)):
        phi = euler_phi(d)
        if phi <= budget:
            m = rng.randint(1, min(3, budget // phi))
            factors[d] = m
            budget -= m * phi
    return spectrum_from_factors(factors)


def random_spectrum(rng: random.Random, max_size=12, max_den=24) -> EigenMultiset:
    """Arbitrary multiset, usually not Galois-stable."""
    counts = {}
    for _ in range(rng.randint(0, max_size)):
        b = rng.randint(1, max_den)
        a = RationalAngle(rng.randrange(b), b)
        counts[a] = counts.get(a, 0) + 1
    return EigenMultiset.from_counts(counts)


@st.composite
def galois_stable_spectra(draw, max_size=40, max_order=60):
    orders = draw(st.lists(st.integers(1, max_order), unique=True, max_size=6))
    factors = {}
    budget = max_size
    for d in orders:
        phi = euler_phi(d)
        if phi <= budget:
            m = draw(st.integers(1, min(3, budget // phi)))
            factors[d] = m
            budget -= m * phi
    return spectrum_from_factors(factors)


angles = st.integers(1, 30).flatmap(lambda b: st.builds(RationalAngle, st.integers(0, b - 1), st.just(b)))

spectra = st.dictionaries(angles, st.integers(1, 3), max_size=8).map(EigenMultiset.from_counts)

exponent_tuples = st.lists(st.integers(1, 7), min_size=1, max_size=4).map(tuple)

fields = st.sampled_from([FieldSpec(p) for p in (0, 2, 3, 5, 7, 11)])
