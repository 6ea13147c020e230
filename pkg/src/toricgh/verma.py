"""Multiplicities from the pure resolution of the apex skyscraper.

Resolving the origin-supported sheaf on a cone by pure sheaves places a
summand with multiplicity m_k(tau) and grading shift k at each face tau,
in homological position dim(tau) - 2k.  Exactness of the reduced stalk
sequence gives one Euler-characteristic equation per face and degree:

    sum over rho <= tau, j <= k of
        (-1)^(dim rho) m_j(rho) g_{k-j}(tau / rho)  =  0,

which determines every m_k(tau) from the values at proper faces (the
apex contributes m = (1,)).  The solved multiplicities coincide with the
g-numbers of the polar polytope, the alternating sum itself is the
g-polynomial reciprocity identity, and truncating the exact sequence
yields sign-alternating inequalities; all three are implemented as
checks here.

A cone over a polytope is identified with the polytope's face lattice:
face F of dimension e stands for the cone of dimension e + 1, the empty
face for the apex.
"""

from __future__ import annotations

import numpy as np

from toricgh.lattice import FaceLattice
from toricgh.polynomial import Polynomial
from toricgh.toric import _interval_tables, quotient_g, toric_g


class MultiplicityTable(dict):
    """Face index -> tuple of multiplicities (m_0, m_1, ...), trimmed."""

    def m(self, face: int, k: int) -> int:
        row = self[face]
        return row[k] if 0 <= k < len(row) else 0

    def to_json(self, lat: FaceLattice) -> dict:
        return {
            "|".join(map(str, sorted(lat.faces[f]))) or "apex": list(row)
            for f, row in sorted(self.items())
        }


def _trim(row):
    row = list(row)
    while row and row[-1] == 0:
        row.pop()
    return tuple(row) if row else (0,)


def verma_multiplicities(lat: FaceLattice) -> MultiplicityTable:
    """Solve for all m_k(tau) over the cone on ``lat``, apex upward.

    Faces are processed in increasing dimension; each step solves the
    degree-k Euler characteristic equations at one stalk.  The solution
    is asserted integral and nonnegative, and zero beyond the middle
    degree of the face, as the resolution requires.
    """
    n = len(lat.faces)
    width = (lat.d + 1) // 2 + 2
    acc = np.zeros((n, width), dtype=np.int64)
    table = MultiplicityTable()

    order = sorted(range(n), key=lambda i: int(lat.dims[i]))
    for y in order:
        cone_dim = int(lat.dims[y]) + 1  # the cone over face y
        if y == lat.bottom:
            m = (1,)
        else:
            # the stalk equation reads acc + (-1)^cone_dim * m_k = 0
            k_max = (cone_dim - 1) // 2
            sign = 1 if cone_dim % 2 else -1
            m = tuple(int(sign * acc[y, k]) for k in range(k_max + 1))
            if any(acc[y, k] != 0 for k in range(k_max + 1, width)):
                raise AssertionError(
                    f"multiplicity beyond middle degree at face {y}"
                )
            if any(v < 0 for v in m):
                raise AssertionError(f"negative multiplicity at face {y}: {m}")
        table[y] = _trim(m)

        # push (-1)^(cone dim) * m_y(t) * g([y, x], t) onto every x >= y
        pos, _, G = _interval_tables(lat, y)
        targets = np.array(list(pos.keys()), dtype=np.intp)
        rows = np.array(list(pos.values()), dtype=np.intp)
        keep = targets != y
        targets, rows = targets[keep], rows[keep]
        sign_y = -1 if cone_dim % 2 else 1
        gw = G.shape[1]
        for j, c in enumerate(table[y]):
            if c and j < width:
                take = min(gw, width - j)
                acc[targets, j:j + take] += sign_y * c * G[rows, :take]
    return table


def check_verma_vs_polar(lat: FaceLattice) -> bool:
    """m_k of each cone equals g_k of the polar of its base polytope."""
    table = verma_multiplicities(lat)
    for f in range(len(lat.faces)):
        if table[f] != _trim(polar_g(lat, f).coeffs or (1,)):
            return False
    return True


def polar_g(lat: FaceLattice, face: int) -> Polynomial:
    """g of the polar of the face, via the order-reversed face lattice."""
    cache = lat._cache.setdefault("polar_g", {})
    if face not in cache:
        cache[face] = toric_g(lat.face(face).dual())
    return cache[face]


def check_reciprocity(lat: FaceLattice) -> Polynomial:
    """sum over all faces of (-1)^dim F g(F*, t) g(P/F, t); zero if correct.

    Conventions at the ends: the empty face is its own polar with g = 1,
    P/empty is P, and P/P is the empty polytope.
    """
    if lat.d < 0:
        raise ValueError("reciprocity needs a nonempty polytope")
    out = Polynomial()
    for f in range(len(lat.faces)):
        term = polar_g(lat, f) * quotient_g(lat, f)
        out = out + (term if lat.dims[f] % 2 == 0 else -term)
    return out


def truncated_inequality(lat: FaceLattice, k: int, s: int):
    """Partial Euler sum of the degree-k resolution strand; returns (value, ok).

    value = sum over i + j = k and faces F with dim F <= s + 2i - 1 of
    (-1)^(dim F - s + 1) g_i(F*) g_j(P/F); exactness of the strand makes
    it nonnegative.  s = 0 reduces to g_k(P) >= 0.
    """
    if k < 0 or s < 0:
        raise ValueError("k and s must be nonnegative")
    total = 0
    for f in range(len(lat.faces)):
        dim_f = int(lat.dims[f])
        sign = 1 if (dim_f - s + 1) % 2 == 0 else -1
        pg = polar_g(lat, f)
        qg = quotient_g(lat, f)
        for i in range(k + 1):
            if dim_f > s + 2 * i - 1:
                continue
            total += sign * pg[i] * qg[k - i]
    return total, total >= 0
