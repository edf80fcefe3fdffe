import math

import numpy as np
import pytest

from resistor_lattice import (
    Bond,
    BondEdit,
    EditSet,
    InvalidEdit,
    LatticeKind,
    SingularB,
    build_factorization,
    get_provider,
)
from resistor_lattice import fixtures
from resistor_lattice.topology import ComponentKind
from resistor_lattice.woodbury import bond_green_element, bond_green_matrix, site_bond_green

SQ, TRI = LatticeKind.SQUARE, LatticeKind.TRIANGULAR
PI = math.pi


@pytest.fixture(scope="module")
def sq():
    return get_provider(SQ)


@pytest.fixture(scope="module")
def tri():
    return get_provider(TRI)


def test_bond_edit_validation():
    b = Bond(SQ, (0, 0), (1, 0))
    assert BondEdit(b).g == 1.0 and BondEdit(b).removed
    assert BondEdit(b, 2.5).g == -1.5
    with pytest.raises(InvalidEdit):
        BondEdit(b, 1.0)
    with pytest.raises(InvalidEdit):
        BondEdit(b, -0.1)


def test_editset_rejects_duplicates_and_wrong_kind():
    with pytest.raises(InvalidEdit):
        EditSet.removal(SQ, [((0, 0), (1, 0)), ((1, 0), (0, 0))])
    with pytest.raises(InvalidEdit):
        EditSet(SQ, [BondEdit(Bond(TRI, (0, 0), (1, 0)))])


def test_editset_helpers():
    es = EditSet(SQ, [BondEdit(Bond(SQ, (0, 0), (1, 0))), BondEdit(Bond(SQ, (0, 0), (0, 1)), 0.5)])
    assert es.conductance(Bond(SQ, (1, 0), (0, 0))) == 0.0
    assert es.conductance(Bond(SQ, (0, 1), (0, 0))) == 0.5
    assert es.conductance(Bond(SQ, (5, 5), (5, 6))) == 1.0
    assert len(es.without([Bond(SQ, (1, 0), (0, 0))])) == 1
    assert es == EditSet(SQ, list(reversed(es.edits)))


def test_bond_green_examples(sq, tri):
    b1 = Bond(SQ, (0, 0), (1, 0))
    b2 = Bond(SQ, (1, 0), (1, 1))
    assert bond_green_element(sq, b1, b2) == pytest.approx((2 / PI - 1) / 2, abs=1e-15)
    assert bond_green_element(sq, b1, b1) == 0.5
    assert bond_green_element(tri, Bond(TRI, (0, 0), (1, -1)), Bond(TRI, (0, 0), (1, -1))) == pytest.approx(1 / 3)
    far = Bond(SQ, (5, 2), (5, 3))
    assert bond_green_element(sq, b1, far) == -bond_green_element(sq, b1, far.reversed())


def test_site_bond_examples(sq, tri):
    b = 1 - 4 / PI
    b3 = Bond(SQ, (1, 1), (0, 1))
    assert site_bond_green(sq, (1, 0), b3) == pytest.approx(b / 4, abs=1e-15)
    # sites on the perpendicular bisector of a bond see both ends alike
    assert site_bond_green(tri, (0, 1), Bond(TRI, (0, 0), (1, 0))) == 0.0
    assert site_bond_green(tri, (-1, 3), Bond(TRI, (0, 0), (1, 0))) == 0.0
    hexagon = fixtures.hexagon6().editset
    fact_sites = [site_bond_green(tri, (1, 0), e.bond) for e in hexagon]
    assert fact_sites[1] == pytest.approx(1 / 6, abs=1e-15)
    assert fact_sites[0] == pytest.approx(0.0, abs=1e-15)


def test_four_bond_b_matrix(sq):
    es = fixtures.four_bond().editset
    f = build_factorization(sq, es)
    a, b = 2 / PI - 1, 1 - 4 / PI
    ref = np.eye(4) - 0.5 * np.array([[1, a, b, a], [a, 1, a, b], [b, a, 1, a], [a, b, a, 1]])
    assert np.allclose(f.B, ref, atol=1e-15)
    assert np.abs(f.B_inverse @ f.B - np.eye(4)).max() <= 1e-12 * 4
    assert np.array_equal(f.B, f.B.T)


def test_four_bond_resistances(sq):
    f = build_factorization(sq, fixtures.four_bond().editset)
    r1 = -(12 - 6 * PI + PI**2) / (2 * (8 - 6 * PI + PI**2))
    r2 = 2 / (PI - 2)
    assert abs(f.perturbed_resistance((1, 0), (1, 1)) - r1) < 1e-12
    assert abs(f.perturbed_resistance((1, 0), (0, 1)) - r2) < 1e-12
    # the same value assembled from three Green elements
    g = f.perturbed_green_element
    assert abs(g((1, 0), (1, 0)) + g((1, 1), (1, 1)) - 2 * g((1, 0), (1, 1)) - r1) < 1e-12
    assert f.perturbed_resistance((3, 3), (3, 3)) == 0.0


def test_green_symmetry(sq):
    f = build_factorization(sq, fixtures.island8().editset.without([Bond(SQ, (1, 0), (1, 1))]))
    for i, j in [((0, 0), (3, 4)), ((1, 1), (-2, 5)), ((2, 2), (2, 1))]:
        assert abs(f.perturbed_green_element(i, j) - f.perturbed_green_element(j, i)) < 1e-12


def test_empty_editset(sq):
    f = build_factorization(sq, EditSet(SQ))
    assert f.size == 0
    assert f.perturbed_resistance((0, 0), (3, 3)) == pytest.approx(46 / (15 * PI), abs=1e-15)
    assert f.perturbed_green_element((0, 0), (3, 3)) == -0.5 * sq(3, 3)


def test_lake_is_singular(sq):
    with pytest.raises(SingularB) as exc:
        build_factorization(sq, fixtures.lake7().editset)
    report = exc.value.report
    assert [c.kind for c in report.defects] == [ComponentKind.ISOLATED_SITE] * 2
    assert exc.value.condition_estimate < 1e-10
    assert "isolated" in str(exc.value)


def test_replaced_bond_with_large_conductance(sq):
    # one bond made 3x stronger: series-parallel with the rest of the lattice
    b = Bond(SQ, (0, 0), (1, 0))
    f = build_factorization(sq, EditSet(SQ, [BondEdit(b, 3.0)]))
    # the rest of the lattice between the ends has conductance 1 (R0 = 1/2 = 1 ∥ 1)
    assert f.perturbed_resistance((0, 0), (1, 0)) == pytest.approx(1 / 4, abs=1e-14)


def test_resistances_from_matches_pointwise(sq):
    f = build_factorization(sq, fixtures.periodic_chain(4).editset)
    pts = [(x, y) for x in range(-2, 9) for y in range(0, 5)]
    vec = f.resistances_from((0, 2), pts)
    for p, v in zip(pts, vec):
        assert abs(v - f.perturbed_resistance((0, 2), p)) < 1e-12


def test_bond_green_matrix_symmetric(tri):
    bonds = fixtures.hexagon5().editset.bonds
    m = bond_green_matrix(tri, bonds)
    assert np.array_equal(m, m.T)
    assert np.allclose(np.diag(m), 1 / 3)
