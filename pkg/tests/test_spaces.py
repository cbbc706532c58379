import pytest

from milnor_spectra.ic import Q, FieldSpec
from milnor_spectra.spaces import (
    DisjointUnion,
    HypersurfaceGerm,
    LocalCohomologyTable,
    OpenSubsetOf,
    Product,
    Smooth,
    dimension,
    ic_status,
    link_sphere_check,
    local_cohomology_manifold_check,
)
from milnor_spectra.spectrum import brieskorn_spectrum

CUSP = HypersurfaceGerm(brieskorn_spectrum((2, 3)), 2)
NODE = HypersurfaceGerm(brieskorn_spectrum((2, 2)), 2)
QUADRIC3 = HypersurfaceGerm(brieskorn_spectrum((2, 2, 2)), 3)


def test_dimensions():
    assert dimension(CUSP) == 1
    assert dimension(Product((Smooth(2), QUADRIC3))) == 4
    assert dimension(DisjointUnion((Smooth(1), Smooth(2)))) is None
    assert dimension(OpenSubsetOf(Smooth(3))) == 3


def test_product_with_cusp():
    v = ic_status(Product((Smooth(1), CUSP)), Q)
    assert v.is_ic and v.reason.kind == "all_factors_ic"


@pytest.mark.parametrize("other", [Smooth(0), Smooth(3), CUSP, QUADRIC3])
def test_product_with_node_never_ic(other):
    for p in (0, 2, 3):
        v = ic_status(Product((other, NODE)), FieldSpec(p))
        assert not v.is_ic
        assert v.reason.kind == "factor_not_ic"
        assert v.reason.index == (0 if not ic_status(other, FieldSpec(p)).is_ic else 1)


def test_impure_union():
    v = ic_status(DisjointUnion((Smooth(1), Smooth(2))))
    assert not v.is_ic and v.reason.dimensions == (1, 2)
    assert ic_status(DisjointUnion((Smooth(1), CUSP))).is_ic


def test_field_dependence():
    assert ic_status(Product((QUADRIC3, Smooth(1))), FieldSpec(3)).is_ic
    assert not ic_status(Product((QUADRIC3, Smooth(1))), FieldSpec(2)).is_ic


def test_open_subset_inherits():
    assert ic_status(OpenSubsetOf(CUSP)) == ic_status(CUSP)


def test_generic_multiplicities():
    germ = HypersurfaceGerm(brieskorn_spectrum((2, 3)), 2, multiplicities=(2, 3))
    assert ic_status(germ, Q).is_ic
    v = ic_status(germ, FieldSpec(3))
    assert not v.is_ic and v.reason.multiplicities == (2, 3)
    assert not v.generic_condition_assumed


def test_invalid_spaces():
    with pytest.raises(ValueError):
        Smooth(-1)
    with pytest.raises(ValueError):
        Product(())
    with pytest.raises(ValueError):
        HypersurfaceGerm(brieskorn_spectrum((2, 3)), 0)


def test_local_cohomology():
    assert local_cohomology_manifold_check(LocalCohomologyTable(1, {2: 1}))
    # two local branches count the point twice
    assert not local_cohomology_manifold_check(LocalCohomologyTable(1, {2: 2}))
    assert not local_cohomology_manifold_check(LocalCohomologyTable(1, {1: 1, 2: 1}))
    assert not local_cohomology_manifold_check(LocalCohomologyTable(2, {}))
    with pytest.raises(ValueError):
        LocalCohomologyTable(1, {2: -1})


def test_link_spheres():
    assert link_sphere_check({}, 3, 3)
    assert not link_sphere_check({0: 1}, 3, 3)
    assert link_sphere_check({0: 1, 3: 1}, 3, 1)
    assert not link_sphere_check({0: 2, 1: 2}, 1, 0)
    assert link_sphere_check({0: 1, 1: 1}, 1, 0)
