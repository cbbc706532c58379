import pytest
from hypothesis import given, strategies as st

from generators import fields, galois_stable_spectra, spectra
from milnor_spectra.ic import (
    Q,
    DetUnitInField,
    EigenvalueOneFound,
    FieldSpec,
    GenericConditionUnmet,
    NonSplit,
    PrimePowerOrderFound,
    SmoothNoVanishingCycles,
    Split,
    Topology,
    ZeroDimensionalLocus,
    double_suspension_report,
    forbidden_orders,
    generic_multiplicity_check,
    id_minus_monodromy_invertible,
    is_ic_hypersurface,
    is_integral_homology_manifold,
    is_unit_in_field,
    nearby_decomposition,
    parse_fields,
    topological_manifold_check,
)
from milnor_spectra.spectrum import EigenMultiset, NotGaloisStable, brieskorn_spectrum, det_id_minus_monodromy, galois_stable

E = EigenMultiset.of
F2, F3, F5 = FieldSpec(2), FieldSpec(3), FieldSpec(5)
NODE, CUSP, QUADRIC3 = brieskorn_spectrum((2, 2)), brieskorn_spectrum((2, 3)), brieskorn_spectrum((2, 2, 2))


class TestFieldSpec:
    def test_parse(self):
        assert FieldSpec.parse("Q") == Q
        assert FieldSpec.parse("F7").characteristic == 7
        assert [str(f) for f in parse_fields("Q, F2,F5")] == ["Q", "F2", "F5"]

    @pytest.mark.parametrize("text", ["F4", "F1", "R", "F", "Fx", ""])
    def test_rejects(self, text):
        with pytest.raises(ValueError):
            FieldSpec.parse(text)


def test_forbidden_orders():
    assert forbidden_orders(Q)(1)
    assert not forbidden_orders(Q)(2)
    assert forbidden_orders(F2)(2) and forbidden_orders(F2)(8)
    assert forbidden_orders(F5)(25)
    assert not forbidden_orders(F5)(10)
    assert not forbidden_orders(F5)(3)


def test_unit_in_field():
    assert is_unit_in_field(4, Q) and not is_unit_in_field(0, Q)
    assert not is_unit_in_field(4, F2) and is_unit_in_field(-3, F2)


def test_node_is_never_ic():
    for field in (Q, F2, F3, F5):
        v = is_ic_hypersurface(NODE, field)
        assert not v.is_ic
        assert v.reason == EigenvalueOneFound(1)


def test_cusp_is_ic():
    v = is_ic_hypersurface(CUSP, Q)
    assert v.is_ic and v.reason == DetUnitInField(1)
    assert v.generic_condition_assumed and v.ambient_ic_assumed


def test_quadric_three_variables():
    assert is_ic_hypersurface(QUADRIC3, Q).is_ic
    assert is_ic_hypersurface(QUADRIC3, F3).is_ic
    v = is_ic_hypersurface(QUADRIC3, F2)
    assert v.reason == PrimePowerOrderFound(2, 2)


def test_special_reasons():
    assert is_ic_hypersurface(EigenMultiset(), F2).reason == SmoothNoVanishingCycles()
    point = brieskorn_spectrum((2,))
    assert is_ic_hypersurface(point, F2).reason == ZeroDimensionalLocus()
    v = is_ic_hypersurface(CUSP, Q, generic_ok=False)
    assert not v.is_ic and isinstance(v.reason, GenericConditionUnmet)
    assert not v.generic_condition_assumed


def test_non_stable_spectrum_uses_order_test_only():
    v = is_ic_hypersurface(E("1/3"), F2)
    assert v.is_ic and v.reason == DetUnitInField(None)
    assert not is_ic_hypersurface(E("1/3"), F3).is_ic


def test_verdict_serializes():
    d = is_ic_hypersurface(QUADRIC3, F2).to_dict()
    assert d["reason"] == {"kind": "prime_power_order_found", "order": 2, "characteristic": 2}


@pytest.mark.parametrize("mults, p, expected", [((2, 3), 3, False), ((4, 9), 5, True), ((6,), 0, True), ((1, 1), 2, True)])
def test_generic_multiplicity_check(mults, p, expected):
    assert generic_multiplicity_check(mults, FieldSpec(p)) is expected


def test_generic_multiplicity_rejects_bad_input():
    with pytest.raises(ValueError):
        generic_multiplicity_check([], Q)
    with pytest.raises(ValueError):
        generic_multiplicity_check([0], Q)


class TestIntegralHomologyManifold:
    def test_examples(self):
        assert is_integral_homology_manifold(CUSP).holds
        v = is_integral_homology_manifold(NODE)
        assert not v.holds and v.offending_order == 1 and v.det_value == 0
        v = is_integral_homology_manifold(QUADRIC3)
        assert not v.holds and v.offending_order == 2 and v.det_value == 2

    def test_e8_is_integral_homology_manifold(self):
        assert is_integral_homology_manifold(brieskorn_spectrum((2, 3, 5))).holds

    def test_requires_stability(self):
        with pytest.raises(NotGaloisStable):
            is_integral_homology_manifold(E("1/3"))

    @given(galois_stable_spectra())
    def test_matches_delta(self, s):
        s = s.with_ambient_dim(3)
        v = is_integral_homology_manifold(s)
        assert v.holds == (abs(det_id_minus_monodromy(s)) == 1)
        assert v.holds == all(is_ic_hypersurface(s, FieldSpec(p)).is_ic for p in (0, 2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47, 53, 59))


class TestTopology:
    def test_in_range(self):
        assert topological_manifold_check(5, 0, True) is Topology.TOPOLOGICAL_MANIFOLD
        assert topological_manifold_check(6, 1, False) is Topology.NOT_TOPOLOGICAL_MANIFOLD
        assert topological_manifold_check(4, -1, False) is Topology.NOT_TOPOLOGICAL_MANIFOLD

    def test_out_of_range(self):
        assert topological_manifold_check(3, 0, True) is Topology.INCONCLUSIVE
        assert topological_manifold_check(2, 0, True) is Topology.INCONCLUSIVE

    @pytest.mark.parametrize("n, s", [(3, 2), (3, -2), (0, -1)])
    def test_invalid(self, n, s):
        with pytest.raises(ValueError):
            topological_manifold_check(n, s, True)


def test_double_suspension_of_cusp():
    r = double_suspension_report(CUSP, 2, 0)
    assert r.identical and r.ambient_dim == 4
    assert r.topology is Topology.TOPOLOGICAL_MANIFOLD
    assert r.ihm_before.holds and r.ihm_after.holds
    with pytest.raises(ValueError):
        double_suspension_report(CUSP, 2, 1)


class TestNearby:
    def test_cusp_splits(self):
        assert nearby_decomposition(CUSP, Q) == Split(1, CUSP)

    def test_node_carries_nilpotent_note(self):
        for field in (Q, F2, F3):
            assert nearby_decomposition(NODE, field) == NonSplit(True)

    def test_quadric_over_f3_splits(self):
        assert isinstance(nearby_decomposition(QUADRIC3, F3), Split)
        assert nearby_decomposition(QUADRIC3, F2) == NonSplit(False)

    def test_point_in_char_two_does_not_split(self):
        point = brieskorn_spectrum((2,))
        assert is_ic_hypersurface(point, F2).is_ic
        assert nearby_decomposition(point, F2) == NonSplit(False)
        assert isinstance(nearby_decomposition(point, Q), Split)


@given(galois_stable_spectra(), fields)
def test_order_test_agrees_with_delta_mod_p(s, field):
    s = s.with_ambient_dim(4)
    expected = not s or is_unit_in_field(det_id_minus_monodromy(s), field)
    assert is_ic_hypersurface(s, field).is_ic == expected
    assert id_minus_monodromy_invertible(s, field) == expected


@given(spectra, fields, st.integers(2, 8))
def test_split_iff_ic(s, field, n):
    s = s.with_ambient_dim(n)
    nearby = nearby_decomposition(s, field)
    assert isinstance(nearby, Split) == is_ic_hypersurface(s, field).is_ic
    if isinstance(nearby, NonSplit):
        assert nearby.has_unipotent_nilpotent_note == (s.orders() == {1})


@given(spectra)
def test_stability_does_not_change_the_order_verdict(s):
    # a non-stable multiset still gets an order-based verdict
    v = is_ic_hypersurface(s.with_ambient_dim(3), F2)
    assert v.is_ic == (not s or all(d != 1 and d & (d - 1) for d in s.orders()))
    if galois_stable(s) and s:
        assert v.reason.kind != "det_unit_in_field" or v.reason.value is not None
