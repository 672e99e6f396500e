import json

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from reebtop.complexes import (
    SimplicialMap,
    barycentric_subdivision,
    boundary_subcomplex,
    complex_from_json,
    complex_to_json,
    cone,
    disjoint_union,
    double,
    from_facets,
    link,
    product,
    wedge,
)
from reebtop.errors import (
    BadBasepointError,
    BadNameError,
    MalformedFacetError,
    MissingSimplexError,
    NothingToDoubleError,
    NotManifoldLikeError,
    UnsupportedModelError,
)
from reebtop.graphs import classify_link
from reebtop.models import standard_model


def test_from_facets_full_triangle():
    c = from_facets([[0, 1, 2]])
    assert c.f_vector() == (3, 3, 1)
    c.check_invariants()


def test_from_facets_circle():
    c = from_facets([[0, 1], [1, 2], [0, 2]])
    assert c.f_vector() == (3, 3)
    assert c.dim == 1


def test_from_facets_sphere_euler():
    c = from_facets([[0, 1, 2], [0, 1, 3], [0, 2, 3], [1, 2, 3]])
    assert c.euler_characteristic() == 2


def test_from_facets_rejects_duplicate_vertex():
    with pytest.raises(MalformedFacetError):
        from_facets([[0, 0, 1]])


def test_from_facets_rejects_unorderable_ids():
    with pytest.raises(MalformedFacetError):
        from_facets([[0, "a"]])


def test_from_facets_bad_name():
    with pytest.raises(BadNameError):
        from_facets([[0, 1, 2]], {"edge": [[0, 3]]})


def test_named_parts_are_closed():
    c = from_facets([[0, 1, 2]], {"rim": [[0, 1], [1, 2], [0, 2]]})
    rim = c.named_part("rim")
    assert (0,) in rim and (0, 1) in rim and (0, 1, 2) not in rim


@pytest.mark.parametrize(
    "name,params,chi",
    [
        ("simplex", {"n": 3}, 1),
        ("sphere", {"n": 2}, 2),
        ("disc", {"n": 2}, 1),
        ("disc", {"n": 3}, 1),
        ("interval", {"k": 4}, 1),
        ("circle", {"k": 5}, 0),
        ("tripod", {}, 1),
        ("annulus", {"k": 4}, 0),
        ("torus_grid", {"a": 3, "b": 3}, 0),
        ("solid_torus", {"k": 3}, 0),
    ],
)
def test_standard_model_euler(name, params, chi):
    c = standard_model(name, **params)
    assert c.euler_characteristic() == chi
    c.check_invariants()


def test_tripod_shape():
    t = standard_model("tripod")
    assert t.f_vector() == (4, 3)
    center = next(iter(t.named_part("center")))[0]
    assert len(link(t, (center,)).simplices) == 3


def test_annulus_names():
    a = standard_model("annulus", k=4)
    b0 = a.subcomplex("boundary_0")
    b1 = a.subcomplex("boundary_1")
    assert b0.dim == b1.dim == 1
    core = a.subcomplex("core")
    assert core.dim == 2
    assert boundary_subcomplex(a).simplices == b0.simplices | b1.simplices


def test_unknown_model_rejected():
    with pytest.raises(UnsupportedModelError):
        standard_model("klein_bottle")
    with pytest.raises(UnsupportedModelError):
        standard_model("circle", k=2)


def test_disjoint_union_examples():
    pt = standard_model("simplex", n=0)
    two, ia, ib = disjoint_union(pt, pt)
    assert two.f_vector() == (2,)
    assert ia.is_injective() and ib.is_injective()
    c3 = standard_model("circle", k=3)
    cc, _, _ = disjoint_union(c3, c3)
    assert len(cc.components()) == 2
    s = standard_model("sphere", n=2)
    t = standard_model("tripod")
    st_union, _, _ = disjoint_union(s, t)
    assert st_union.euler_characteristic() == 2 + 1


def test_wedge_examples():
    c3 = standard_model("circle", k=3)
    fig8 = wedge(c3, 0, c3, 0)
    assert fig8.euler_characteristic() == 0 + 0 - 1
    fig8.check_invariants()
    pt = standard_model("simplex", n=0)
    w = wedge(pt, 0, c3, 1)
    assert w.f_vector() == c3.f_vector()


def test_wedge_bad_basepoint():
    c3 = standard_model("circle", k=3)
    with pytest.raises(BadBasepointError):
        wedge(c3, 99, c3, 0)


def test_product_square():
    i1 = standard_model("interval", k=1)
    sq, pa, pb = product(i1, i1)
    assert sq.f_vector() == (4, 5, 2)
    assert sq.euler_characteristic() == 1


def test_product_annulus_f_vector():
    # frozen from counting staircase cells of circle(3) x interval(1)
    c, _, _ = product(standard_model("circle", k=3), standard_model("interval", k=1))
    assert c.f_vector() == (6, 12, 6)
    assert c.euler_characteristic() == 0


def test_product_circle_tripod():
    c, pa, pb = product(standard_model("circle", k=3), standard_model("tripod"))
    assert c.euler_characteristic() == 0
    c.check_invariants()
    # projections carry simplices to simplices by construction
    assert isinstance(pa, SimplicialMap) and isinstance(pb, SimplicialMap)


def test_boundary_examples():
    tri = from_facets([[0, 1, 2]])
    assert boundary_subcomplex(tri).f_vector() == (3, 3)
    ann = standard_model("annulus", k=4)
    rim = boundary_subcomplex(ann)
    assert len(rim.components()) == 2
    sphere = standard_model("sphere", n=2)
    assert not boundary_subcomplex(sphere).simplices


def test_boundary_rejects_nonpure():
    c = from_facets([[0, 1, 2], [2, 3]])
    with pytest.raises(NotManifoldLikeError):
        boundary_subcomplex(c)


def test_boundary_rejects_triple_sharing():
    c = from_facets([[0, 1, 2], [0, 1, 3], [0, 1, 4]])
    with pytest.raises(NotManifoldLikeError):
        boundary_subcomplex(c)


def test_double_interval_is_circle():
    d = double(standard_model("interval", k=1))
    assert d.f_vector() == (3, 3)


def test_double_triangle_is_sphere():
    d = double(from_facets([[0, 1, 2]]))
    assert d.euler_characteristic() == 2
    d.check_invariants()
    assert not boundary_subcomplex(d).simplices


def test_double_names_and_euler_identity():
    for c in (
        from_facets([[0, 1, 2]]),
        standard_model("annulus", k=4),
        standard_model("disc", n=2),
    ):
        rim = boundary_subcomplex(c)
        d = double(c)
        assert d.euler_characteristic() == 2 * c.euler_characteristic() - rim.euler_characteristic()
        assert d.named_part("seam") == rim.simplices
        assert d.named_part("first_copy") | d.named_part("second_copy") == d.simplices


def test_double_requires_boundary():
    with pytest.raises(NothingToDoubleError):
        double(standard_model("sphere", n=2))


def test_link_examples():
    s = standard_model("sphere", n=2)
    lk = link(s, (0,))
    assert lk.f_vector() == (3, 3)
    tri = from_facets([[0, 1, 2]])
    lk2 = link(tri, (0,))
    assert lk2.f_vector() == (2, 1)


def test_link_missing_simplex():
    with pytest.raises(MissingSimplexError):
        link(from_facets([[0, 1]]), (5,))


def test_sphere_and_torus_links_are_circles():
    for c in (standard_model("sphere", n=2), standard_model("torus_grid", a=3, b=3)):
        for v in c.vertices:
            assert classify_link(link(c, (v,))) == "circle"


def test_subdivision_examples():
    path = barycentric_subdivision(from_facets([[0, 1]]))
    assert path.f_vector() == (3, 2)
    circle6 = barycentric_subdivision(from_facets([[0, 1], [1, 2], [0, 2]]))
    assert circle6.f_vector() == (6, 6)
    sd_tri = barycentric_subdivision(from_facets([[0, 1, 2]]))
    assert sd_tri.f_vector() == (7, 12, 6)
    assert sd_tri.euler_characteristic() == 1


def test_subdivision_preserves_euler():
    for c in (
        standard_model("sphere", n=2),
        standard_model("annulus", k=4),
        standard_model("tripod"),
    ):
        assert barycentric_subdivision(c).euler_characteristic() == c.euler_characteristic()


def test_subdivision_keeps_named_parts():
    a = standard_model("annulus", k=3)
    sd = barycentric_subdivision(a)
    sd.check_invariants()
    assert sd.subcomplex("boundary_0").euler_characteristic() == 0


def test_cone_unersets():
    base = from_facets([[0, 1], [1, 2]])
    c = cone("apex", base)
    assert c.euler_characteristic() == 1
    c.check_invariants()


@pytest.mark.parametrize(
    "genus,boundary,h1",
    [(0, 1, 0), (0, 2, 1), (0, 3, 2), (1, 0, 2), (1, 1, 2), (2, 0, 4)],
)
def test_surface_models(genus, boundary, h1):
    from reebtop.algebra import homology

    s = standard_model("surface", genus=genus, boundary=boundary)
    assert s.euler_characteristic() == 2 - 2 * genus - boundary
    groups = homology(s)
    assert groups[1].rank == h1
    assert all(not g.torsion for g in groups)


def test_json_roundtrip_identity():
    c = from_facets([[0, 1, 2], [2, 3]], {"tail": [[2, 3]]})
    data = json.loads(json.dumps(complex_to_json(c)))
    assert complex_from_json(data) == c


def test_json_roundtrip_torus_assets():
    t = standard_model("torus_grid", a=3, b=3)
    back = complex_from_json(complex_to_json(t))
    assert back.f_vector() == t.f_vector()
    assert list(back.assets) == ["height"]
    # stringified ids re-serialize to the identical document
    assert complex_to_json(back) == json.loads(
        json.dumps(complex_to_json(back))
    )


def test_json_rejects_bad_named_part():
    data = {"vertices": [0, 1], "facets": [[0, 1]], "named": {"x": [[0, 2]]}}
    with pytest.raises((BadNameError, KeyError)):
        complex_from_json(data)


# -- property tests ----------------------------------------------------------

facet_lists = st.lists(
    st.lists(st.integers(min_value=0, max_value=5), min_size=1, max_size=3).map(
        lambda f: sorted(set(f))
    ),
    min_size=1,
    max_size=4,
)


@settings(max_examples=60, deadline=None)
@given(facet_lists, facet_lists)
def test_constructors_stay_closed_and_multiply_euler(fa, fb):
    a = from_facets(fa)
    b = from_facets(fb)
    a.check_invariants()
    du, _, _ = disjoint_union(a, b)
    du.check_invariants()
    assert du.euler_characteristic() == a.euler_characteristic() + b.euler_characteristic()
    w = wedge(a, a.vertices[0], b, b.vertices[0])
    w.check_invariants()
    assert w.euler_characteristic() == a.euler_characteristic() + b.euler_characteristic() - 1
    pr, _, _ = product(a, b)
    pr.check_invariants()
    assert pr.euler_characteristic() == a.euler_characteristic() * b.euler_characteristic()
    sd = barycentric_subdivision(a)
    sd.check_invariants()
    assert sd.euler_characteristic() == a.euler_characteristic()


@settings(max_examples=30, deadline=None)
@given(facet_lists)
def test_links_are_subcomplexes(fa):
    a = from_facets(fa)
    for v in a.vertices:
        lk = link(a, (v,))
        lk.check_invariants()
        for s in lk.simplices:
            assert a.sorted_tuple(set(s) | {v}) in a.simplices
