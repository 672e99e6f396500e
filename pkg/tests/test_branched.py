import pytest

from reebtop.algebra import betti_numbers, homology, mayer_vietoris_check
from reebtop.branched import (
    BranchedModel,
    CollapseCertificate,
    CollapseFailure,
    attach_double,
    attach_flap,
    bouquet,
    check_local_structure_dim2,
    collapse_to,
    replay_certificate,
)
from reebtop.complexes import boundary_subcomplex, cone, from_facets
from reebtop.errors import (
    BadBasepointError,
    InvalidBranchLocusError,
    InvalidSubmanifoldError,
)
from reebtop.models import concentric_disc, standard_model


def test_flap_on_disc_interior_circle():
    disc = standard_model("disc", n=2)
    m = attach_flap(disc, "core_boundary")
    assert m.complex.euler_characteristic() == 1
    assert betti_numbers(m.complex) == [1, 0, 0]
    assert [l.kind for l in m.loci] == ["tripod"]
    name, cert = m.certificates[0]
    assert replay_certificate(m.complex, cert) == disc.simplices


def test_flap_on_sphere_equator():
    s2 = standard_model("sphere", n=2)
    m = attach_flap(s2, "equator")
    assert m.complex.euler_characteristic() == 2
    assert betti_numbers(m.complex) == [1, 0, 1]
    report = check_local_structure_dim2(m)
    assert report["pass"]
    # every equator vertex sees three sheets, every other vertex a disc
    assert report["counts"] == {"theta": 4, "circle": 4} or report["counts"]["theta"] == 4


def test_flap_whiskers_on_circle():
    c6 = standard_model("circle", k=6).with_named("antipodes", [(0,), (3,)])
    m = attach_flap(c6, "antipodes")
    assert m.complex.f_vector() == (8, 8)
    cert = collapse_to(m.complex, c6.simplices)
    assert isinstance(cert, CollapseCertificate)


def test_flap_rejects_boundary_circle():
    ann = standard_model("annulus", k=4)
    with pytest.raises(InvalidBranchLocusError):
        attach_flap(ann, "boundary_0")


def test_flap_rejects_wrong_codimension():
    ann = standard_model("annulus", k=4)
    with pytest.raises(InvalidBranchLocusError):
        attach_flap(ann, "core")


def test_flap_rejects_overlapping_locus():
    cd = concentric_disc(6, 3)
    m = attach_flap(cd, "ring_1")
    with pytest.raises(InvalidBranchLocusError):
        attach_flap(m, "ring_1")


def test_attach_double_disc_core():
    disc = standard_model("disc", n=2)
    m = attach_double(disc, ["core"])
    w = m.complex
    assert betti_numbers(w) == [1, 0, 1]
    assert w.named_part("X") & w.named_part("DY_1") == w.named_part("Y_1")
    assert w.named_part("X") | w.named_part("DY") == w.simplices
    assert mayer_vietoris_check(w, "X", "DY")["pass"]
    assert check_local_structure_dim2(m)["pass"]


def test_attach_double_annulus_core_is_torus_union():
    m = attach_double(standard_model("annulus", k=4), ["core"])
    assert [(g.rank, g.torsion) for g in homology(m.complex)] == [
        (1, ()), (2, ()), (1, ()),
    ]
    dy = m.complex.subcomplex("DY_1")
    assert [(g.rank, g.torsion) for g in homology(dy)] == [(1, ()), (2, ()), (1, ())]


def test_attach_double_rejects_whole_complex():
    disc = standard_model("disc", n=2)
    bad = disc.with_named("everything", disc.simplices)
    with pytest.raises(InvalidSubmanifoldError):
        attach_double(bad, ["everything"])


def test_attach_double_rejects_piece_touching_boundary():
    ann = standard_model("annulus", k=4)
    low = ann.full_subcomplex({(i, j) for i in range(4) for j in (0, 1)})
    bad = ann.with_named("low", low)
    with pytest.raises(InvalidSubmanifoldError):
        attach_double(bad, ["low"])


def test_attach_double_rejects_overlap():
    ann = standard_model("annulus", k=4)
    other = ann.with_named("core2", ann.named_part("core"))
    with pytest.raises(InvalidSubmanifoldError):
        attach_double(other, ["core", "core2"])


def test_bouquet_identity_case():
    disc = standard_model("disc", n=2)
    m = attach_double(disc, ["core"])
    one = bouquet([m], [default_regular_vertex(m)])
    assert betti_numbers(one.complex) == betti_numbers(m.complex)
    assert len(one.loci) == len(m.loci)


def default_regular_vertex(model):
    off = model.locus_vertices()
    return next(v for v in model.complex.vertices if v not in off)


def test_bouquet_of_two_doubled_discs():
    disc = standard_model("disc", n=2)
    m1 = attach_double(disc, ["core"])
    m2 = attach_double(disc, ["core"])
    w = bouquet([m1, m2], [default_regular_vertex(m1), default_regular_vertex(m2)])
    assert betti_numbers(w.complex) == [1, 0, 2]


def test_bouquet_flapped_sphere_and_disc():
    s = attach_flap(standard_model("sphere", n=2), "equator")
    tri = from_facets([[0, 1, 2]])
    w = bouquet([s, BranchedModel(tri)], [default_regular_vertex(s), 0])
    assert betti_numbers(w.complex) == [1, 0, 1]


def test_bouquet_rejects_basepoint_on_locus():
    s = attach_flap(standard_model("sphere", n=2), "equator")
    locus_vertex = next(iter(s.locus_vertices()))
    with pytest.raises(BadBasepointError):
        bouquet([s], [locus_vertex])


def test_local_structure_plain_torus_passes():
    t = standard_model("torus_grid", a=3, b=3)
    rep = check_local_structure_dim2(BranchedModel(t))
    assert rep["pass"]
    assert rep["counts"] == {"circle": 9}


def test_local_structure_rejects_k4_link():
    k4 = from_facets([[0, 1], [0, 2], [0, 3], [1, 2], [1, 3], [2, 3]])
    bad = cone("apex", k4)
    rep = check_local_structure_dim2(BranchedModel(bad))
    assert not rep["pass"]
    assert any(v["vertex"] == "apex" for v in rep["violations"])


def test_local_structure_needs_dimension_two():
    with pytest.raises(ValueError):
        check_local_structure_dim2(BranchedModel(standard_model("circle", k=3)))


@pytest.mark.parametrize("n", [1, 2, 3, 4])
def test_simplex_collapses_to_point(n):
    res = collapse_to(standard_model("simplex", n=n), "point")
    assert isinstance(res, CollapseCertificate)
    # replay eats everything but one vertex
    left = replay_certificate(standard_model("simplex", n=n), res)
    assert len(left) == 1 and len(next(iter(left))) == 1


def test_sphere_has_no_free_faces():
    res = collapse_to(standard_model("sphere", n=2), "point", restarts=3, budget=10**4)
    assert isinstance(res, CollapseFailure)
    assert res.reason == "inconclusive"


def test_collapse_deterministic_per_seed():
    disc = standard_model("disc", n=2)
    a = collapse_to(disc, "point", seed=7)
    b = collapse_to(disc, "point", seed=7)
    assert a.steps == b.steps
    assert a.seed == b.seed


def test_collapse_to_subcomplex_protects_target():
    disc = standard_model("disc", n=2)
    core = disc.subcomplex("core")
    res = collapse_to(disc, core)
    assert isinstance(res, CollapseCertificate)
    assert replay_certificate(disc, res) == core.simplices


def test_double_boundary_vanishes_inside_attach_double():
    # the doubled piece is closed: its own boundary extraction is empty
    m = attach_double(standard_model("annulus", k=4), ["core"])
    dy = m.complex.subcomplex("DY_1")
    assert not boundary_subcomplex(dy).simplices
