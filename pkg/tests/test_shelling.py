from fractions import Fraction

import pytest

from toricgh.catalog import parse_recipe
from toricgh.geometry import facet_enumeration
from toricgh.polynomial import Polynomial
from toricgh.shelling import (
    Shelling,
    ShellingError,
    line_shelling,
    relative_h,
    shelling_decomposition,
)
from toricgh.toric import face_g, toric_h

PRISM_POINTS = [(0, 0, 0), (1, 0, 0), (0, 1, 0), (0, 0, 1), (1, 0, 1), (0, 1, 1)]
PAPER_DIRECTION = (Fraction(3, 4), Fraction(-1, 2), 1)


@pytest.fixture(scope="module")
def prism():
    return facet_enumeration(PRISM_POINTS)


@pytest.fixture(scope="module")
def square():
    return facet_enumeration([(0, 0), (1, 0), (1, 1), (0, 1)])


def test_square_shelling_partial_unions_are_paths(square):
    sh = line_shelling(square, direction=(1, 2))
    assert len(sh.order) == 4
    # any edge order passing the validity checks on a polygon is a shelling
    loc = shelling_decomposition(sh)
    assert sum(loc, Polynomial()) == Polynomial([1, 2, 1])


def test_prism_shelling_with_triangles_first_and_fourth(prism):
    sh = line_shelling(prism, direction=PAPER_DIRECTION)
    lat = prism.lattice
    sizes = [len(lat.faces[f]) for f in sh.facet_faces]
    assert sizes[0] == 3 and sizes[3] == 3  # the simplicial facets
    loc = shelling_decomposition(sh)
    assert [p.to_json() for p in loc] == [
        [0, 0, 0, 1],     # t^3
        [0, 0, 2],        # 2 t^2
        [0, 1, 1],        # t + t^2
        [0, 1],           # t
        [1, 1],           # 1 + t
    ]


def test_simplex_any_generic_direction():
    s = facet_enumeration([(0, 0, 0), (1, 0, 0), (0, 1, 0), (0, 0, 1)])
    for seed in range(6):
        loc = shelling_decomposition(line_shelling(s, seed=seed))
        # local h of a simplex shelling step is a pure power of t
        assert all(sum(1 for c in p.coeffs if c) == 1 for p in loc)
        assert sum(loc, Polynomial()) == toric_h(s.lattice)


def test_degenerate_direction_retries(prism):
    # axis direction is parallel to the vertical facets; the seeded stream
    # must take over and still deliver a shelling
    sh = line_shelling(prism, direction=(0, 0, 1), seed=3)
    shelling_decomposition(sh)


def test_retry_budget_exhaustion(square):
    with pytest.raises(ShellingError, match="no generic direction"):
        line_shelling(square, direction=(0, 1), retries=0)


def test_relative_h_whole_boundary_is_h(prism):
    lat = prism.lattice
    boundary = list(range(len(lat.faces) - 1))
    assert relative_h(lat, boundary, []) == toric_h(lat)


def test_relative_h_first_facet_reversal(prism):
    lat = prism.lattice
    d = lat.d
    for fi in lat.faces_of_dim(d - 1):
        cone = [g for g in range(len(lat.faces)) if lat.leq[g, fi]]
        got = relative_h(lat, cone, [])
        expect = face_g(lat, fi).reversed(d)  # t^d g(F, 1/t)
        assert got == expect


def test_relative_h_validates_subcomplexes(prism):
    lat = prism.lattice
    facet = lat.faces_of_dim(2)[0]
    with pytest.raises(ValueError, match="subcomplex"):
        relative_h(lat, [facet], [lat.faces_of_dim(1)[0]])
    with pytest.raises(ValueError, match="closed"):
        relative_h(lat, [facet], [])
    with pytest.raises(ValueError, match="boundary"):
        relative_h(lat, list(range(len(lat.faces))), [])


def test_decomposition_sums_and_nonnegativity():
    for name, seeds in [("cube3", 5), ("cross3", 5), ("cube4", 3), ("cyclic(7,3)", 3)]:
        p = parse_recipe(name).realize()
        for seed in range(seeds):
            loc = shelling_decomposition(line_shelling(p, seed=seed))
            assert sum(loc, Polynomial()) == toric_h(p.lattice), (name, seed)
            assert all(c >= 0 for piece in loc for c in piece.coeffs)


def test_value_at_one_is_g_of_facet(prism):
    sh = line_shelling(prism, seed=1)
    loc = shelling_decomposition(sh)
    for piece, facet_face in zip(loc, sh.facet_faces):
        assert piece(1) == face_g(prism.lattice, facet_face)(1)


def test_last_step_is_g_of_last_facet(prism):
    for seed in range(4):
        sh = line_shelling(prism, seed=seed)
        loc = shelling_decomposition(sh)
        assert loc[-1] == face_g(prism.lattice, sh.facet_faces[-1])


def test_reversed_shelling_gives_degree_reversed_locals(prism):
    d = prism.d
    sh = line_shelling(prism, direction=PAPER_DIRECTION)
    neg = tuple(-x for x in PAPER_DIRECTION)
    sh_rev = line_shelling(prism, direction=neg)
    assert sh_rev.order == tuple(reversed(sh.order))
    loc = shelling_decomposition(sh)
    loc_rev = shelling_decomposition(sh_rev)
    for j, piece in enumerate(loc):
        assert loc_rev[len(loc) - 1 - j] == piece.reversed(d)


def test_shelling_is_deterministic(prism):
    a = line_shelling(prism, seed=11)
    b = line_shelling(prism, seed=11)
    assert a.order == b.order and a.direction == b.direction


def test_tampered_order_is_caught(prism):
    # the two triangles share no ridge, so an order starting with both of
    # them cannot be a shelling; build the object directly to bypass checks
    sh = line_shelling(prism, seed=0)
    tris = [i for i, (_, _, t) in enumerate(prism.facets) if len(t) == 3]
    rest = [i for i in range(len(prism.facets)) if i not in tris]
    bad = Shelling(
        prism, tuple(tris + rest), sh.base_point, sh.direction, sh.crossings
    )
    from toricgh.shelling import _check_partial_unions

    with pytest.raises(ShellingError, match="no shared ridge"):
        _check_partial_unions(bad)
