"""Toric h/g-polynomials, flag vectors and the identities between them.

The h-polynomial of a polytope P with face lattice L is the mutual
recursion

    h(P, t) = sum over faces F < P of g(F, t) (t-1)^(d - 1 - dim F),
    g_k = h_k - h_{k-1} for 0 <= k <= d/2,

starting from g = h = 1 on the empty polytope.  The engine below runs
the recursion over a whole up-set of the lattice at once, one dimension
layer at a time, with numpy doing the bulk sums; coefficients stay exact
(int64 is plenty at desk scale).  Everything else in the module is
arithmetic on top of those tables: closed forms for g1/g2, the extended
g-tilde numbers, convolutions of invariants, and executable checks of
Dehn-Sommerville, monotonicity, the upper bound inequality, the vertex
identity relating g_k and g_{k+1}, and the cone/bipyramid identities.
"""

from __future__ import annotations

from math import comb

import numpy as np

from toricgh.lattice import FaceLattice, LatticeError
from toricgh.polynomial import Polynomial, binomial_power, coefficientwise_geq


def _binom_kernel(k: int) -> np.ndarray:
    # coefficients of (t-1)^k
    return np.array([comb(k, j) * (-1) ** (k - j) for j in range(k + 1)], dtype=np.int64)


def _interval_tables(lat: FaceLattice, root: int):
    """h/g coefficient tables for every face x >= root, re-graded at root.

    Returns (pos, H, G): ``pos`` maps a face index of ``lat`` to its row,
    and row i of H/G holds the coefficients of h/g of the interval
    [root, x] viewed as a polytope of dimension dims[x] - dims[root] - 1.
    """
    cache = lat._cache.setdefault("interval_tables", {})
    if root in cache:
        return cache[root]

    leq, dims = lat.leq, lat.dims
    sel = np.nonzero(leq[root])[0]
    rel = dims[sel] - dims[root] - 1
    order = np.argsort(rel, kind="stable")
    sel, rel = sel[order], rel[order]
    m = len(sel)
    top_dim = int(rel[-1])
    width = max(top_dim + 1, 1)

    H = np.zeros((m, width), dtype=np.int64)
    G = np.zeros((m, width), dtype=np.int64)
    H[0, 0] = 1
    G[0, 0] = 1

    sub = leq[np.ix_(sel, sel)]
    layers = {int(e): np.nonzero(rel == e)[0] for e in np.unique(rel)}
    for e in range(top_dim + 1):
        if e not in layers:
            continue
        cur = layers[e]
        acc = np.zeros((len(cur), width), dtype=np.int64)
        for e2, rows in layers.items():
            if e2 >= e:
                continue
            below = sub[np.ix_(rows, cur)].astype(np.int64)
            s = below.T @ G[rows]
            for j, c in enumerate(_binom_kernel(e - 1 - e2)):
                if c:
                    acc[:, j:] += c * s[:, : width - j]
        H[cur] = acc
        G[cur, 0] = acc[:, 0]
        for k in range(1, e // 2 + 1):
            G[cur, k] = acc[:, k] - acc[:, k - 1]

    pos = {int(f): i for i, f in enumerate(sel)}
    cache[root] = (pos, H, G)
    return cache[root]


def _row_poly(table, pos, face) -> Polynomial:
    return Polynomial(table[pos[face]].tolist())


def toric_h(lat: FaceLattice) -> Polynomial:
    """h(P, t) of the polytope with face lattice ``lat``."""
    pos, H, _ = _interval_tables(lat, lat.bottom)
    return _row_poly(H, pos, lat.top)


def toric_g(lat: FaceLattice) -> Polynomial:
    """g(P, t), truncated at degree floor(d/2)."""
    pos, _, G = _interval_tables(lat, lat.bottom)
    return _row_poly(G, pos, lat.top)


def face_g(lat: FaceLattice, face: int) -> Polynomial:
    """g of the face as a polytope, straight from the bottom tables."""
    pos, _, G = _interval_tables(lat, lat.bottom)
    return _row_poly(G, pos, face)


def quotient_g(lat: FaceLattice, face: int) -> Polynomial:
    """g of the quotient polytope P/face."""
    pos, _, G = _interval_tables(lat, face)
    return _row_poly(G, pos, lat.top)


def quotient_h(lat: FaceLattice, face: int) -> Polynomial:
    pos, H, _ = _interval_tables(lat, face)
    return _row_poly(H, pos, lat.top)


def simplicial_h(f: tuple[int, ...], d: int) -> Polynomial:
    """h from the face numbers alone: sum of f_{k-1} (t-1)^(d-k).

    Valid as the h-polynomial only for simplicial polytopes, where it
    agrees with the recursive definition.
    """
    if len(f) != d:
        raise ValueError(f"need {d} face numbers, got {len(f)}")
    out = binomial_power(-1, d)
    for k, fk in enumerate(f):
        out = out + int(fk) * binomial_power(-1, d - 1 - k)
    return out


# -- flag vectors ------------------------------------------------------


class FlagVector(dict):
    """Map from dimension sets S (sorted tuples) to chain counts f_S."""

    def count(self, *dims) -> int:
        return self[tuple(sorted(dims))]

    def to_json(self) -> dict:
        return {",".join(map(str, s)): v for s, v in sorted(self.items())}


def flag_vector(lat: FaceLattice) -> FlagVector:
    """All 2^d flag numbers by chain counting over the order relation."""
    if "flags" in lat._cache:
        return lat._cache["flags"]
    d = lat.d
    layers = {k: np.array(lat.faces_of_dim(k)) for k in range(d)}
    fv = FlagVector()
    fv[()] = 1

    def extend(prefix, counts, last):
        for nxt in range(last + 1, d):
            step = lat.leq[np.ix_(layers[last], layers[nxt])].astype(np.int64)
            nxt_counts = counts @ step
            fv[prefix + (nxt,)] = int(nxt_counts.sum())
            extend(prefix + (nxt,), nxt_counts, nxt)

    for start in range(d):
        counts = np.ones(len(layers[start]), dtype=np.int64)
        fv[(start,)] = len(layers[start])
        extend((start,), counts, start)
    lat._cache["flags"] = fv
    return fv


def g1_closed(lat: FaceLattice) -> int:
    """g_1 = f_0 - (d + 1)."""
    if lat.d < 1:
        raise ValueError("g1 needs dimension >= 1")
    return len(lat.faces_of_dim(0)) - (lat.d + 1)


def g2_closed(lat: FaceLattice) -> int:
    """g_2 = f_1 + f_02 - 3 f_2 - d f_0 + C(d+1, 2)."""
    d = lat.d
    if d < 4:
        raise ValueError("g2 needs dimension >= 4")
    fv = flag_vector(lat)
    return (
        fv.count(1)
        + fv.count(0, 2)
        - 3 * fv.count(2)
        - d * fv.count(0)
        + comb(d + 1, 2)
    )


# -- fans --------------------------------------------------------------


def fan_h(fan) -> Polynomial:
    """h-polynomial of a purely d-dimensional fan with known boundary.

    Sums g(cone) (t-1)^(d - dim cone) over cones not in the boundary
    subfan; for a complete fan the boundary is empty and this equals the
    h-polynomial of the underlying polytope, and for the fan of a single
    full-dimensional cone it collapses to g of the base.
    """
    d = fan.dim
    out = Polynomial()
    for c in range(len(fan.cones)):
        if c in fan.boundary:
            continue
        out = out + fan.cone_g(c) * binomial_power(-1, d - fan.cone_dim(c))
    return out


# -- extended g and convolution ----------------------------------------


def gtilde(lat: FaceLattice, k: int) -> int:
    """h_k - h_{k-1} for arbitrary k >= 0, with out-of-range h = 0.

    Below the middle this is g_k; by palindromicity it equals
    -g_{d-k+1} above the middle and vanishes at k = (d+1)/2 for odd d.
    """
    if k < 0:
        raise ValueError("negative degree")
    h = toric_h(lat)
    return h[k] - h[k - 1] if k else h[0]


class Invariant:
    """A polytope invariant tagged with the dimension it expects.

    Convolutions are graded: combining invariants of d1- and
    d2-polytopes yields one of (d1 + d2 + 1)-polytopes, and applying an
    invariant to a lattice of the wrong dimension is a hard error.
    """

    def __init__(self, name, dim, func):
        self.name = name
        self.dim = dim
        self.func = func

    def __call__(self, lat: FaceLattice) -> int:
        if lat.d != self.dim:
            raise ValueError(
                f"{self.name} expects {self.dim}-polytopes, got d={lat.d}"
            )
        return self.func(lat)

    def __repr__(self):
        return f"{self.name}^{self.dim}"


def gtilde_invariant(k: int, dim: int) -> Invariant:
    return Invariant(f"gtilde_{k}", dim, lambda lat: gtilde(lat, k))


def g_invariant(k: int, dim: int) -> Invariant:
    return Invariant(f"g_{k}", dim, lambda lat: toric_g(lat)[k])


def convolution(phi: Invariant, psi: Invariant, lat: FaceLattice) -> int:
    """(phi * psi)(P) = sum over faces F of dim d1 of phi(F) psi(P/F)."""
    if lat.d != phi.dim + psi.dim + 1:
        raise ValueError(
            f"convolution of dims {phi.dim} and {psi.dim} applies to "
            f"{phi.dim + psi.dim + 1}-polytopes, got d={lat.d}"
        )
    total = 0
    for f in lat.faces_of_dim(phi.dim):
        total += phi(lat.face(f)) * psi(lat.quotient(f))
    return total


# -- checks ------------------------------------------------------------


def check_dehn_sommerville(lat: FaceLattice) -> bool:
    """h_i = h_{d-i} for all i."""
    return toric_h(lat).is_palindromic(lat.d)


def check_monotonicity(lat: FaceLattice, face: int) -> bool:
    """g(P) >= g(F) g(P/F) coefficientwise, for a proper nonempty face."""
    lhs = toric_g(lat)
    rhs = face_g(lat, face) * quotient_g(lat, face)
    return coefficientwise_geq(lhs, rhs)


def check_monotonicity_all(lat: FaceLattice) -> bool:
    return all(
        check_monotonicity(lat, f)
        for f in range(1, len(lat.faces) - 1)
    )


def check_ubt(lat: FaceLattice) -> bool:
    """g_i <= C(f_0 - d + i - 2, i) for 1 <= i <= d/2."""
    g = toric_g(lat)
    f0 = len(lat.faces_of_dim(0))
    d = lat.d
    return all(
        g[i] <= comb(max(f0 - d + i - 2, 0), i)
        for i in range(1, d // 2 + 1)
    )


def check_g_cascade(lat: FaceLattice) -> bool:
    """No zero g-coefficient is followed by a nonzero one."""
    g = toric_g(lat)
    seen_zero = False
    for k in range(lat.d // 2 + 1):
        if g[k] == 0:
            seen_zero = True
        elif seen_zero:
            return False
    return True


def check_kalai_identity(lat: FaceLattice, k: int) -> bool:
    """(k+1) gt_{k+1} + (d-k+1) gt_k = sum_i (i+1) (gt_i * gt_{k-i}).

    The convolution on the right pairs g_i on 2i-dimensional faces with
    gt_{k-i} on the quotients; summands whose quotient invariant would
    live on (-1)-dimensional polytopes are identically zero and are
    skipped.  Holds for every k >= 0.
    """
    d = lat.d
    lhs = (k + 1) * gtilde(lat, k + 1) + (d - k + 1) * gtilde(lat, k)
    rhs = 0
    for i in range(k + 1):
        qdim = d - 2 * i - 1
        if qdim < 0:
            continue
        rhs += (i + 1) * convolution(
            gtilde_invariant(i, 2 * i), gtilde_invariant(k - i, qdim), lat
        )
    return lhs == rhs


def check_cone_bipyramid(lat: FaceLattice) -> bool:
    """g is fixed by coning and h gains a factor (1+t) under bipyramids."""
    if lat.d < 0:
        raise LatticeError("needs a nonempty polytope")
    cone_ok = toric_g(lat.pyramid(check=False)) == toric_g(lat)
    bipyr_ok = toric_h(lat.bipyramid(check=False)) == Polynomial([1, 1]) * toric_h(lat)
    return cone_ok and bipyr_ok


def report(lat: FaceLattice) -> dict:
    """CLI-facing bundle: h, g, flags and check verdicts for one lattice."""
    h = toric_h(lat)
    g = toric_g(lat)
    return {
        "dim": lat.d,
        "f_vector": list(lat.f_vector()),
        "h": h.to_json(),
        "g": g.to_json(),
        "flags": flag_vector(lat).to_json() if lat.d >= 0 else {},
        "checks": {
            "dehn_sommerville": check_dehn_sommerville(lat),
            "g_cascade": check_g_cascade(lat),
        },
    }
