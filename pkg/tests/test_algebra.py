import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from reebtop.algebra import (
    HomologyGroup,
    IntegerMatrix,
    augmentation_matrix,
    betti_numbers,
    boundary_matrix,
    chain_basis,
    determinant,
    homology,
    lattice_contains,
    mayer_vietoris_check,
    rank_mod2,
    smith_normal_form,
)
from reebtop.complexes import closure, double, from_facets, wedge
from reebtop.errors import BadCoverError
from reebtop.models import standard_model


def assert_snf_contract(a):
    snf = smith_normal_form(a)
    assert snf.U.mul(a).mul(snf.V) == snf.S
    assert abs(determinant(snf.U)) == 1
    assert abs(determinant(snf.V)) == 1
    assert snf.U.mul(snf.Uinv) == IntegerMatrix.identity(a.rows)
    assert snf.V.mul(snf.Vinv) == IntegerMatrix.identity(a.cols)
    diag = [d for d in snf.diagonal if d]
    assert all(d > 0 for d in diag)
    assert all(b % x == 0 for x, b in zip(diag, diag[1:]))
    for i in range(a.rows):
        for j in range(a.cols):
            if i != j:
                assert snf.S.entries[i][j] == 0


def test_snf_zero_matrix():
    a = IntegerMatrix(2, 3)
    snf = smith_normal_form(a)
    assert snf.rank == 0
    assert snf.S.entries == [[0, 0, 0], [0, 0, 0]]
    assert_snf_contract(a)


def test_snf_identity():
    a = IntegerMatrix.identity(3)
    assert smith_normal_form(a).diagonal == [1, 1, 1]


def test_snf_divisor_example():
    # determinantal divisors: gcd of entries 2, |det| = 8, so (2, 4)
    a = IntegerMatrix(2, 2, [[2, 4], [6, 8]])
    assert smith_normal_form(a).diagonal == [2, 4]


def test_snf_random_suite():
    rng = random.Random(20240607)
    for _ in range(100):
        m = rng.randint(0, 20)
        n = rng.randint(0, 20)
        a = IntegerMatrix(m, n, [[rng.randint(-9, 9) for _ in range(n)] for _ in range(m)])
        assert_snf_contract(a)


@settings(max_examples=40, deadline=None)
@given(
    st.integers(0, 6),
    st.integers(0, 6),
    st.data(),
)
def test_snf_property(m, n, data):
    a = IntegerMatrix(
        m, n, [[data.draw(st.integers(-9, 9)) for _ in range(n)] for _ in range(m)]
    )
    assert_snf_contract(a)


def test_boundary_edge():
    c = from_facets([[0, 1]])
    assert boundary_matrix(c, 1).entries == [[-1], [1]]


def test_boundary_rank_on_circle():
    c = from_facets([[0, 1], [1, 2], [0, 2]])
    assert smith_normal_form(boundary_matrix(c, 1)).rank == 2


def test_boundary_squares_to_zero():
    for c in (
        from_facets([[0, 1, 2]]),
        standard_model("sphere", n=3),
        standard_model("solid_torus", k=3),
    ):
        for p in range(1, c.dim + 1):
            assert boundary_matrix(c, p).mul(boundary_matrix(c, p + 1)).is_zero()


def test_boundary_out_of_range_shapes():
    c = from_facets([[0, 1, 2]])
    m = boundary_matrix(c, 5)
    assert (m.rows, m.cols) == (0, 0)
    m0 = boundary_matrix(c, 0)
    assert (m0.rows, m0.cols) == (0, 3)


@pytest.mark.parametrize("n", [1, 2, 3, 4])
def test_sphere_homology(n):
    groups = homology(standard_model("sphere", n=n))
    assert [g.rank for g in groups] == [1] + [0] * (n - 1) + [1]
    assert all(not g.torsion for g in groups)


def test_torus_homology():
    groups = homology(standard_model("torus_grid", a=3, b=3))
    assert [(g.rank, g.torsion) for g in groups] == [(1, ()), (2, ()), (1, ())]


def test_double_annulus_homology():
    d = double(standard_model("annulus", k=4))
    assert betti_numbers(d) == [1, 2, 1]
    assert betti_numbers(d, coefficients="Z2") == [1, 2, 1]


def test_wedge_sphere_circle_homology():
    w = wedge(standard_model("sphere", n=2), 0, standard_model("circle", k=3), 0)
    assert betti_numbers(w) == [1, 1, 1]


def test_projective_plane_torsion():
    rp2 = from_facets(
        [[0, 1, 4], [0, 1, 5], [0, 2, 3], [0, 2, 4], [0, 3, 5],
         [1, 2, 3], [1, 2, 5], [1, 3, 4], [2, 4, 5], [3, 4, 5]]
    )
    assert [(g.rank, g.torsion) for g in homology(rp2)] == [
        (1, ()), (0, (2,)), (0, ()),
    ]
    assert betti_numbers(rp2, coefficients="Z2") == [1, 1, 1]


def test_reduced_homology():
    two_points = from_facets([[0], [1]])
    assert [g.rank for g in homology(two_points, reduced=True)] == [1]
    assert [g.rank for g in homology(two_points)] == [2]


def test_mod2_dominates_integral_rank():
    for c in (
        standard_model("sphere", n=2),
        standard_model("torus_grid", a=3, b=3),
        double(standard_model("annulus", k=4)),
    ):
        z = betti_numbers(c)
        z2 = betti_numbers(c, coefficients="Z2")
        assert all(b2 >= b for b, b2 in zip(z, z2))


def test_euler_from_betti_matches_f_vector():
    for c in (
        standard_model("sphere", n=3),
        standard_model("torus_grid", a=3, b=3),
        standard_model("solid_torus", k=3),
    ):
        betti = betti_numbers(c)
        assert sum((-1) ** p * b for p, b in enumerate(betti)) == c.euler_characteristic()


def test_chain_basis_projects_generators_to_units():
    t = standard_model("torus_grid", a=3, b=3)
    basis = chain_basis(t, 1)
    assert basis.orders == [0, 0]
    for i, gen in enumerate(basis.generators):
        coords = basis.project(gen)
        expect = [0, 0]
        expect[i] = 1
        assert coords == expect


def test_chain_basis_cycle_detection():
    tri = from_facets([[0, 1, 2]])
    basis = chain_basis(tri, 1)
    with pytest.raises(AssertionError):
        basis.project([1, 0, 0])  # a single edge is not a cycle


def test_augmentation_matrix():
    c = from_facets([[0], [1], [2]])
    assert augmentation_matrix(c).entries == [[1, 1, 1]]


def test_rank_mod2():
    a = IntegerMatrix(2, 2, [[2, 0], [0, 1]])
    assert rank_mod2(a) == 1


def test_lattice_membership():
    gens = [[2, 0], [0, 3]]
    assert lattice_contains(gens, [4, 3])
    assert not lattice_contains(gens, [1, 0])
    assert lattice_contains([], [0, 0])
    assert not lattice_contains([], [1, 0])


def hemisphere_cover():
    s2 = standard_model("sphere", n=2)
    eq = s2.named_part("equator")
    up = closure([(0, 1, 2), (0, 2, 3)]) | eq
    lo = closure([(0, 1, 3), (1, 2, 3)]) | eq
    return s2.with_named("up", up).with_named("lo", lo)


def test_mayer_vietoris_sphere():
    rep = mayer_vietoris_check(hemisphere_cover(), "up", "lo")
    assert rep["pass"]
    # the equator circle dies in both discs, so degree one is not injective
    assert not rep["degrees"][1]["injective"]
    assert rep["degrees"][0]["injective"] and rep["degrees"][2]["injective"]


def test_mayer_vietoris_wedge_of_circles():
    c3 = standard_model("circle", k=3)
    w = wedge(c3, 0, c3, 0)
    a_part = frozenset(
        s for s in w.simplices if all(isinstance(v, tuple) and v[0] == 0 for v in s)
    )
    b_part = (w.simplices - a_part) | {((0, 0),)}
    named = w.with_named("A", a_part).with_named("B", b_part)
    rep = mayer_vietoris_check(named, "A", "B")
    assert rep["pass"]
    assert all(d["injective"] for d in rep["degrees"].values())
    assert betti_numbers(w)[1] == 2


def test_mayer_vietoris_bad_cover():
    s = hemisphere_cover().with_named("small", closure([(0, 1)]))
    with pytest.raises(BadCoverError):
        mayer_vietoris_check(s, "up", "small")


def test_homology_group_json():
    g = HomologyGroup(1, 2, (2, 4))
    assert g.to_json() == {"degree": 1, "rank": 2, "torsion": [2, 4]}
