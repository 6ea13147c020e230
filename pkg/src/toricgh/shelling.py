"""Line shellings of polytope boundaries and local h decompositions.

A shelling order on the facets splits the defining sum of h(P, t) into
relative pieces h(I_j, I_{j-1}, t), one per facet, where I_j is the
subcomplex covered by the first j facets.  The pieces always add up to
h(P, t); convexity guarantees each piece has nonnegative coefficients,
and this module certifies both facts on every decomposition it emits.

Shellings are generated by the classical rotating-line construction:
walk along a generic line through an interior point, listing facets in
the order their hyperplanes are crossed going up, then in the order
they are crossed returning from below.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from toricgh.geometry import GeometricPolytope, dot
from toricgh.lattice import FaceLattice
from toricgh.polynomial import Polynomial, binomial_power
from toricgh.toric import face_g, toric_h


class ShellingError(RuntimeError):
    """A generated facet order failed a shelling validity check."""


@dataclass(frozen=True)
class Shelling:
    polytope: GeometricPolytope
    order: tuple[int, ...]          # facet indices, shelling order
    base_point: tuple
    direction: tuple
    crossings: tuple                # line parameter at each facet plane

    @property
    def facet_faces(self):
        """Lattice face index of each facet, in shelling order."""
        lat = self.polytope.lattice
        return tuple(lat.index_of(self.polytope.facets[i][2]) for i in self.order)


def _direction_stream(dim, seed):
    rng = random.Random(seed)
    while True:
        v = tuple(Fraction(rng.randint(-99, 99), rng.randint(1, 9)) for _ in range(dim))
        if any(v):
            yield v


def line_shelling(
    p: GeometricPolytope, direction=None, seed: int = 0, retries: int = 64
) -> Shelling:
    """Shelling of the facets of ``p`` along a generic line.

    The line runs through the vertex average.  A direction is generic
    when it is parallel to no facet hyperplane and the crossing
    parameters are pairwise distinct; non-generic directions (given or
    drawn) are discarded and a fresh one is drawn from the seeded
    stream, up to the retry budget.
    """
    if p.d < 1:
        raise ValueError("shellings need dimension >= 1")
    base = p.barycenter()
    stream = _direction_stream(p.d, seed)
    candidates = []
    if direction is not None:
        direction = tuple(Fraction(x) for x in direction)
        if len(direction) != p.d:
            raise ValueError(f"direction must have {p.d} coordinates")
        candidates.append(direction)
    for _ in range(retries):
        candidates.append(next(stream))

    for v in candidates:
        speeds = [dot(a, v) for a, _, _ in p.facets]
        if any(s == 0 for s in speeds):
            continue
        times = [
            (b - dot(a, base)) / s for (a, b, _), s in zip(p.facets, speeds)
        ]
        if len(set(times)) != len(times):
            continue
        up = sorted((t, i) for i, t in enumerate(times) if speeds[i] > 0)
        down = sorted((t, i) for i, t in enumerate(times) if speeds[i] < 0)
        order = tuple(i for _, i in up + down)
        sh = Shelling(p, order, base, v, tuple(times[i] for i in order))
        _check_partial_unions(sh)
        return sh
    raise ShellingError(
        f"no generic direction found in {retries} retries (seed {seed})"
    )


def _check_partial_unions(sh: Shelling):
    """Necessary conditions for a shelling, checked exactly.

    For j >= 2 the intersection of facet F_j with the union of the
    earlier facets must be a nonempty pure (d-2)-dimensional subcomplex
    of the boundary of F_j, proper for j < r and all of it for j = r.
    The full topological-disk condition is not verified; the rotating
    line guarantees it, and these checks catch bookkeeping errors.
    """
    lat = sh.polytope.lattice
    d = sh.polytope.d
    faces = sh.facet_faces
    r = len(faces)
    leq, dims = lat.leq, lat.dims
    covered = np.zeros(len(lat.faces), dtype=bool)
    covered |= leq[:, faces[0]]
    for j in range(1, r):
        fj = faces[j]
        inside = leq[:, fj] & covered
        inside[fj] = False
        ridge_mask = inside & (dims == d - 2)
        ridges = np.nonzero(ridge_mask)[0]
        if not ridges.size:
            raise ShellingError(f"step {j + 1}: no shared ridge with earlier facets")
        under_ridge = leq[:, ridges].any(axis=1)
        if np.any(inside & (dims >= 0) & ~under_ridge):
            raise ShellingError(f"step {j + 1}: shared boundary is not pure")
        n_all = int((leq[:, fj] & (dims == d - 2)).sum())
        if j < r - 1 and len(ridges) == n_all:
            raise ShellingError(f"step {j + 1}: facet glued along its whole boundary")
        if j == r - 1 and len(ridges) != n_all:
            raise ShellingError("last facet must close up the sphere")
        covered |= leq[:, fj]


def relative_h(lat: FaceLattice, faces_i, faces_j) -> Polynomial:
    """h(I, J, t) = sum over F in I minus J of g(F) (t-1)^(d-1-dim F).

    I and J are subcomplexes of the boundary, given as lattice face
    indices; the empty face counts as a member of every nonempty
    subcomplex and may be omitted by the caller.
    """
    d = lat.d
    si = set(faces_i) | ({lat.bottom} if faces_i else set())
    sj = set(faces_j) | ({lat.bottom} if faces_j else set())
    if not sj <= si:
        raise ValueError("J must be a subcomplex of I")
    for s in (si, sj):
        if lat.top in s:
            raise ValueError("subcomplexes live in the boundary, not P itself")
        for f in s:
            below = {int(g) for g in range(len(lat.faces)) if lat.leq[g, f]}
            if not below <= s:
                raise ValueError("face sets must be closed under subfaces")
    out = Polynomial()
    for f in si - sj:
        out = out + face_g(lat, f) * binomial_power(-1, d - 1 - int(lat.dims[f]))
    return out


def shelling_decomposition(sh: Shelling) -> list[Polynomial]:
    """The local polynomials h(I_j, I_{j-1}, t) of a shelling.

    Certifies that they sum to h(P, t) and that every coefficient is
    nonnegative; a violation is reported as an error since it would
    falsify the implementation, not the underlying theorem.
    """
    lat = sh.polytope.lattice
    d = sh.polytope.d
    faces = sh.facet_faces
    r = len(faces)
    membership = lat.leq[:-1, list(faces)]
    if not membership.any(axis=1).all():
        raise ShellingError("some boundary face lies in no facet")
    first_cover = dict(enumerate(np.argmax(membership, axis=1)))
    locals_ = [Polynomial() for _ in range(r)]
    for g, j in first_cover.items():
        locals_[j] = locals_[j] + face_g(lat, g) * binomial_power(
            -1, d - 1 - int(lat.dims[g])
        )
    total = Polynomial()
    for j, loc in enumerate(locals_):
        if any(c < 0 for c in loc.coeffs):
            raise ShellingError(
                f"negative local h at step {j + 1}: {loc} (order {sh.order})"
            )
        total = total + loc
    if total != toric_h(lat):
        raise ShellingError(
            f"local pieces sum to {total}, expected {toric_h(lat)}"
        )
    return locals_
