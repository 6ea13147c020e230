import pytest

from toricgh.lattice import (
    CanonicalBudgetExceeded,
    FaceLattice,
    LatticeError,
    canonical_form,
    is_eulerian,
    is_isomorphic,
)
from toricgh.catalog import (
    cross_lattice,
    cube_lattice,
    cyclic_lattice,
    point_lattice,
    simplex_lattice,
)

CUBE_FACETS = [
    {0, 1, 2, 3}, {4, 5, 6, 7}, {0, 1, 4, 5},
    {2, 3, 6, 7}, {0, 2, 4, 6}, {1, 3, 5, 7},
]


@pytest.fixture(scope="module")
def cube():
    return FaceLattice.from_vertex_facets(8, CUBE_FACETS)


def test_triangle_counts():
    tri = FaceLattice.from_vertex_facets(3, [{0, 1}, {1, 2}, {0, 2}])
    assert len(tri) == 8  # 1 + 3 + 3 + 1
    assert tri.d == 2
    assert tri.f_vector() == (3, 3)


def test_square_by_hand_enumeration():
    sq = FaceLattice.from_vertex_facets(4, [{0, 1}, {1, 2}, {2, 3}, {0, 3}])
    assert sq.f_vector() == (4, 4)
    # the proper faces are exactly the 4 vertices and the 4 given edges
    proper = {sq.faces[i] for i in range(1, len(sq) - 1)}
    assert proper == {frozenset({v}) for v in range(4)} | {
        frozenset(f) for f in [{0, 1}, {1, 2}, {2, 3}, {0, 3}]
    }


def test_open_path_is_rejected_as_not_eulerian():
    with pytest.raises(LatticeError, match="Eulerian"):
        FaceLattice.from_vertex_facets(4, [{0, 1}, {1, 2}, {2, 3}])


def test_facet_containment_rejected():
    with pytest.raises(LatticeError):
        FaceLattice.from_vertex_facets(3, [{0, 1, 2}, {0, 1}])


def test_uncovered_vertex_rejected():
    with pytest.raises(LatticeError):
        FaceLattice.from_vertex_facets(5, [{0, 1}, {1, 2}, {2, 3}, {0, 3}])


def test_interval_vertex_figure_of_cube(cube):
    # 3 squares and 3 edges contain a cube vertex: the quotient is a triangle
    q = cube.quotient(cube.index_of({0}), check=True)
    assert q.d == 2
    assert q.f_vector() == (3, 3)
    assert len(q) == 8


def test_interval_full_and_degenerate(cube):
    full = cube.interval(cube.bottom, cube.top)
    assert len(full) == len(cube) and full.d == cube.d
    single = cube.interval(5, 5)
    assert len(single) == 1 and single.d == -1
    with pytest.raises(LatticeError):
        cube.interval(cube.index_of({0}), cube.index_of({1}))


def test_dual_of_cube_is_octahedron(cube):
    oc = cube.dual(check=True)
    assert oc.f_vector() == (6, 12, 8)
    assert is_eulerian(oc)


def test_dual_is_involution(cube):
    dd = cube.dual().dual()
    # double dual restores the vertex-set description exactly
    assert set(dd.faces) == set(cube.faces)
    assert is_isomorphic(dd, cube)


def test_simplex_self_dual():
    s3 = simplex_lattice(3)
    assert is_isomorphic(s3.dual(), s3)


def test_pyramid_bipyramid_prism_counts():
    sq = cube_lattice(2)
    tri = simplex_lattice(2)
    assert sq.pyramid().f_vector() == (5, 8, 5)
    assert sq.bipyramid().f_vector() == (6, 12, 8)
    assert tri.prism().f_vector() == (6, 9, 5)


def test_pyramid_of_point_is_segment():
    seg = point_lattice().pyramid()
    assert seg.d == 1 and seg.f_vector() == (2,)


def test_bipyramid_of_square_is_octahedron(cube):
    assert is_isomorphic(cube_lattice(2).bipyramid(), cube.dual())


def test_is_eulerian_cases(cube):
    assert is_eulerian(cube)
    assert is_eulerian(FaceLattice.build([frozenset()], 0))  # vacuous
    # removing a facet breaks the balance
    broken = FaceLattice.build(
        [f for f in cube.faces if f != frozenset({4, 5, 6, 7})],
        8,
        check=False,
    )
    assert not is_eulerian(broken)


def test_every_constructor_output_validates(cube):
    # re-validate structures produced with check=False paths
    for lat in [
        cube.dual(),
        cube.quotient(cube.index_of({0})),
        cube.face(cube.index_of({0, 1, 2, 3})),
        cube_lattice(2).pyramid(check=False),
        cyclic_lattice(7, 4),
    ]:
        FaceLattice(lat.faces, lat.n_vertices, lat.leq, lat.dims, check=True)


def test_grading_conventions(cube):
    assert cube.dims[0] == -1
    assert int(cube.dims[-1]) == 3
    assert sorted(len(cube.faces_of_dim(k)) for k in range(-1, 4)) == [1, 1, 6, 8, 12]


def test_canonical_form_invariant_under_relabeling():
    sq1 = FaceLattice.from_vertex_facets(4, [{0, 1}, {1, 2}, {2, 3}, {0, 3}])
    # same square, vertices renamed by a scramble
    sq2 = FaceLattice.from_vertex_facets(4, [{2, 0}, {0, 3}, {3, 1}, {2, 1}])
    assert canonical_form(sq1) == canonical_form(sq2)


def test_canonical_form_separates_same_f_vector():
    # octahedron and cyclic(6,3) share f = (6,12,8) but are not isomorphic
    oc = cross_lattice(3)
    cy = cyclic_lattice(6, 3)
    assert oc.f_vector() == cy.f_vector() == (6, 12, 8)
    assert not is_isomorphic(oc, cy)


def test_canonical_budget_raises():
    with pytest.raises(CanonicalBudgetExceeded):
        canonical_form(cross_lattice(4), budget=2)


def test_json_round_trip(cube):
    data = cube.to_json()
    assert data["dim"] == 3 and data["n_vertices"] == 8
    again = FaceLattice.from_json(data)
    assert set(again.faces) == set(cube.faces)
    with pytest.raises(LatticeError):
        FaceLattice.from_json({"dim": 2, "n_vertices": 8, "facets": data["facets"]})


def test_leq_is_read_only(cube):
    with pytest.raises(ValueError):
        cube.leq[0, 0] = False
    with pytest.raises(ValueError):
        cube.dims[0] = 5


def test_maximal_chains_have_uniform_length(cube):
    # graded: walk covers from bottom, all maximal chains reach dim 3 in 5 steps
    def depth(i):
        ups = cube.covers_of(i)
        return 1 + max(map(depth, ups)) if ups else 0

    assert depth(cube.bottom) == cube.d + 1
