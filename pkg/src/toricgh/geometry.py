"""Exact rational geometry: polytopes from vertices, cones and fans.

All coordinates are ``fractions.Fraction``; ranks come from fraction-free
integer elimination, so there is no floating point anywhere.  Facet
enumeration is deliberately brute force — every hyperplane spanned by an
affinely independent d-subset of the vertices is tested — which is the
right trade for n <= ~30 vertices in dimension <= 6.
"""

from __future__ import annotations

from fractions import Fraction
from itertools import combinations
from math import gcd, lcm

from toricgh.lattice import FaceLattice
from toricgh.polynomial import Polynomial
from toricgh import toric


def _frac_vec(v):
    return tuple(Fraction(x) for x in v)


def dot(a, b):
    return sum(x * y for x, y in zip(a, b))


def primitive_ray(v) -> tuple[int, ...]:
    """Scale by a positive rational to the primitive integer vector."""
    v = _frac_vec(v)
    if all(x == 0 for x in v):
        return tuple(0 for _ in v)
    mult = lcm(*(x.denominator for x in v))
    ints = [int(x * mult) for x in v]
    g = gcd(*ints)
    return tuple(x // g for x in ints)


# -- exact linear algebra ----------------------------------------------


def _integer_rows(rows):
    out = []
    for row in rows:
        fr = [Fraction(x) for x in row]
        mult = lcm(*(x.denominator for x in fr)) if fr else 1
        out.append([int(x * mult) for x in fr])
    return out


def exact_rank(rows) -> int:
    """Rank over Q by fraction-free (Bareiss) Gaussian elimination.

    Rows may hold ints or Fractions; denominators are cleared per row,
    which does not change the rank.  All intermediate values are exact
    integers, bounded by minors of the input.
    """
    mat = _integer_rows(rows)
    if not mat or not mat[0]:
        return 0
    nrows, ncols = len(mat), len(mat[0])
    rank = 0
    prev = 1
    for col in range(ncols):
        piv = next((r for r in range(rank, nrows) if mat[r][col]), None)
        if piv is None:
            continue
        mat[rank], mat[piv] = mat[piv], mat[rank]
        p = mat[rank][col]
        for r in range(rank + 1, nrows):
            head = mat[r][col]
            row, prow = mat[r], mat[rank]
            for c in range(col + 1, ncols):
                row[c] = (row[c] * p - head * prow[c]) // prev
            row[col] = 0
        prev = p
        rank += 1
        if rank == nrows:
            break
    return rank


def kernel_dimension(rows) -> int:
    """dim ker = number of columns minus the exact rank."""
    if not rows:
        return 0
    return len(rows[0]) - exact_rank(rows)


def rref(rows):
    """Reduced row echelon form over Q; returns (rows, pivot columns)."""
    mat = [list(map(Fraction, row)) for row in rows]
    if not mat:
        return [], []
    ncols = len(mat[0])
    pivots = []
    r = 0
    for col in range(ncols):
        piv = next((i for i in range(r, len(mat)) if mat[i][col] != 0), None)
        if piv is None:
            continue
        mat[r], mat[piv] = mat[piv], mat[r]
        inv = 1 / mat[r][col]
        mat[r] = [x * inv for x in mat[r]]
        for i in range(len(mat)):
            if i != r and mat[i][col] != 0:
                f = mat[i][col]
                mat[i] = [a - f * b for a, b in zip(mat[i], mat[r])]
        pivots.append(col)
        r += 1
    return mat[:r], pivots


def nullspace(rows):
    """Basis of the right kernel as Fraction tuples."""
    if not rows:
        return []
    ncols = len(rows[0])
    red, pivots = rref(rows)
    free = [c for c in range(ncols) if c not in pivots]
    basis = []
    for fc in free:
        vec = [Fraction(0)] * ncols
        vec[fc] = Fraction(1)
        for r, pc in enumerate(pivots):
            vec[pc] = -red[r][fc]
        basis.append(tuple(vec))
    return basis


def solve(a_rows, b):
    """One solution x of A x = b, or None when inconsistent."""
    aug = [list(row) + [bv] for row, bv in zip(a_rows, b)]
    red, pivots = rref(aug)
    ncols = len(a_rows[0])
    if ncols in pivots:
        return None
    x = [Fraction(0)] * ncols
    for r, pc in enumerate(pivots):
        x[pc] = red[r][-1]
    return tuple(x)


# -- polytopes ----------------------------------------------------------


class GeometricPolytope:
    """Convex polytope given by its vertices, with exact facet data.

    ``vertices`` are the input points; ``coords`` are the same points in
    affine coordinates on the hull, so they always span dimension d.
    ``facets`` is a list of (normal, offset, tight vertex set) with
    <normal, x> <= offset valid on all vertices and tight exactly on the
    facet.  ``lattice`` is the face lattice derived from the tight sets.
    """

    def __init__(self, vertices, coords, d, facets, lattice):
        self.vertices = vertices
        self.coords = coords
        self.d = d
        self.facets = facets
        self.lattice = lattice

    def __repr__(self):
        return f"GeometricPolytope(d={self.d}, vertices={len(self.vertices)})"

    def barycenter(self):
        n = len(self.coords)
        return tuple(sum(col) / n for col in zip(*self.coords))

    def to_json(self) -> dict:
        return {
            "vertices": [[str(x) for x in v] for v in self.vertices],
            "dim": self.d,
            "facets": [sorted(t) for _, _, t in self.facets],
            "lattice": self.lattice.to_json(),
        }

    @staticmethod
    def from_json(data: dict) -> "GeometricPolytope":
        return facet_enumeration([[Fraction(x) for x in v] for v in data["vertices"]])


def _affine_coordinates(points):
    """Coordinates of the points on their affine hull; returns (coords, d)."""
    p0 = points[0]
    diffs = [tuple(a - b for a, b in zip(p, p0)) for p in points]
    basis = []
    for v in diffs:
        if any(v) and exact_rank(basis + [v]) > len(basis):
            basis.append(v)
    d = len(basis)
    if d == 0:
        return [()] * len(points), 0
    bt = [[basis[j][i] for j in range(d)] for i in range(len(p0))]
    coords = []
    for v in diffs:
        lam = solve(bt, list(v))
        if lam is None:
            raise ValueError("point outside the affine hull of the basis")
        coords.append(tuple(lam))
    return coords, d


def facet_enumeration(vertices) -> GeometricPolytope:
    """All facets of conv(vertices), by exhausting spanned hyperplanes.

    Duplicated points are dropped silently and the dimension is taken
    from the points themselves.  Points that are not extreme are a
    contract violation and raise.
    """
    pts = []
    seen = set()
    for v in vertices:
        fv = _frac_vec(v)
        if fv not in seen:
            seen.add(fv)
            pts.append(fv)
    if not pts:
        raise ValueError("no points given")
    coords, d = _affine_coordinates(pts)
    n = len(pts)

    if d == 0:
        lat = FaceLattice.build([frozenset(), frozenset({0})], 1)
        return GeometricPolytope(tuple(pts), tuple(coords), 0, [], lat)

    facets = {}
    for subset in combinations(range(n), d):
        base = coords[subset[0]]
        rows = [
            [coords[i][c] - base[c] for c in range(d)] for i in subset[1:]
        ]
        null = nullspace(rows) if rows else [(Fraction(1),)]
        if len(null) != 1:
            continue
        normal = null[0]
        offset = dot(normal, base)
        values = [dot(normal, p) for p in coords]
        if all(val <= offset for val in values):
            pass
        elif all(val >= offset for val in values):
            normal = tuple(-x for x in normal)
            offset = -offset
            values = [-v for v in values]
        else:
            continue
        key = primitive_ray(list(normal) + [offset])
        if key not in facets:
            tight = frozenset(i for i, val in enumerate(values) if val == offset)
            facets[key] = (normal, offset, tight)

    facet_list = sorted(facets.values(), key=lambda f: sorted(f[2]))
    for i in range(n):
        tight_normals = [f[0] for f in facet_list if i in f[2]]
        if exact_rank(tight_normals) != d:
            raise ValueError(f"input point {pts[i]} is not a vertex of the hull")
    lat = FaceLattice.from_vertex_facets(n, [f[2] for f in facet_list])
    return GeometricPolytope(tuple(pts), tuple(coords), d, facet_list, lat)


# -- cones and fans ------------------------------------------------------


class Cone:
    """Pointed cone over a polytope P, living in dimension d + 1.

    Rays are (v, 1) over the vertex coordinates, made primitive.  Faces
    of the cone correspond to faces of P, with the zero cone standing in
    for the empty face; the facet inequalities are lifted from those of
    P, so classification of faces against a direction vector is exact.
    """

    def __init__(self, polytope: GeometricPolytope):
        p = polytope
        self.polytope = p
        self.lattice = p.lattice
        self.dim = p.d + 1
        self.rays = tuple(primitive_ray(list(v) + [1]) for v in p.coords)
        # <(-a, b), (x, s)> >= 0 lifts <a, x> <= b s; facets of the cone
        # are exactly the lifted facets of P (P bounded keeps s >= 0 implied)
        self.normals = tuple(
            primitive_ray([-x for x in a] + [b]) for a, b, _ in p.facets
        )
        self.tight = tuple(
            frozenset(
                j for j, (_, _, tset) in enumerate(p.facets)
                if set(p.lattice.faces[i]) <= tset
            )
            for i in range(len(p.lattice.faces))
        )

    def __repr__(self):
        return f"Cone(dim={self.dim}, rays={len(self.rays)})"

    def face_rays(self, face: int):
        """Primitive ray generators of the cone over lattice face ``face``."""
        return [self.rays[v] for v in sorted(self.lattice.faces[face])]

    def face_fan(self) -> "Fan":
        lat = self.lattice
        cones = [frozenset(lat.faces[i]) for i in range(len(lat.faces))]
        return Fan(
            rays=self.rays,
            cones=cones,
            cone_faces=list(range(len(lat.faces))),
            lattice=lat,
            complete=False,
        )


def cone_over(p: GeometricPolytope) -> Cone:
    if not p.vertices:
        raise ValueError("cone over nothing")
    return Cone(p)


class Fan:
    """A fan described by ray indices per cone, tied to a source lattice.

    Each cone is the cone over a face of the source polytope (the whole
    polytope for the fan of a single full-dimensional cone); the zero
    cone has an empty ray set.  The boundary subfan is generated by the
    codimension-one cones lying in exactly one top-dimensional cone.
    """

    def __init__(self, rays, cones, cone_faces, lattice, complete):
        self.rays = tuple(rays)
        self.cones = tuple(frozenset(c) for c in cones)
        self.cone_faces = tuple(cone_faces)
        self.lattice = lattice
        self.complete = complete
        self._validate()
        self.dim = max(self.cone_dim(i) for i in range(len(self.cones)))
        self.boundary = self._boundary()

    def __repr__(self):
        return f"Fan(dim={self.dim}, cones={len(self.cones)}, complete={self.complete})"

    def to_json(self) -> dict:
        return {
            "rays": [list(r) for r in self.rays],
            "cones": [sorted(c) for c in self.cones],
            "complete": self.complete,
            "boundary": sorted(self.boundary),
        }

    def cone_dim(self, i) -> int:
        return int(self.lattice.dims[self.cone_faces[i]]) + 1

    def cone_g(self, i) -> Polynomial:
        return toric.face_g(self.lattice, self.cone_faces[i])

    def _validate(self):
        index = {c: i for i, c in enumerate(self.cones)}
        if len(index) != len(self.cones):
            raise ValueError("duplicate cones in fan")
        # intersection of any two cones must be a common face; at the
        # ray-set level the meet of two faces is the intersection of
        # their vertex sets, which must itself be a cone of the fan
        for a in self.cones:
            for b in self.cones:
                if (a & b) not in index:
                    raise ValueError("cone intersection is not a face of the fan")

    def _boundary(self):
        if self.complete:
            return frozenset()
        d = max(self.cone_dim(i) for i in range(len(self.cones)))
        top = [i for i in range(len(self.cones)) if self.cone_dim(i) == d]
        gen = [
            i
            for i in range(len(self.cones))
            if self.cone_dim(i) == d - 1
            and sum(1 for t in top if self.cones[i] <= self.cones[t]) == 1
        ]
        out = set()
        for g in gen:
            for i in range(len(self.cones)):
                if self.cones[i] <= self.cones[g]:
                    out.add(i)
        return frozenset(out)


def central_fan(p: GeometricPolytope) -> Fan:
    """Complete fan of cones over the proper faces, origin at the barycenter."""
    c = p.barycenter()
    rays = [primitive_ray([x - y for x, y in zip(v, c)]) for v in p.coords]
    lat = p.lattice
    cones = [frozenset(lat.faces[i]) for i in range(len(lat.faces) - 1)]
    return Fan(
        rays=rays,
        cones=cones,
        cone_faces=list(range(len(lat.faces) - 1)),
        lattice=lat,
        complete=True,
    )
