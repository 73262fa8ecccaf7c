"""Integer simplicial homology via Smith normal form.

Arbitrary-precision integers throughout; this is the certified path used to
back every acyclicity and invariance claim, so there are no modular shortcuts.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import gcd

from .complexes import Simplex, SimplicialComplex


@dataclass(frozen=True)
class ChainComplexZ:
    """Per-degree simplex counts and integer boundary matrices.

    ``boundaries[k-1]`` is the degree-k boundary matrix: rows indexed by the
    (k-1)-simplices, columns by the k-simplices, in canonical order.
    """

    dims: tuple
    boundaries: tuple

    def is_valid(self) -> bool:
        """Check that consecutive boundary matrices compose to zero."""
        for a, b in zip(self.boundaries, self.boundaries[1:]):
            if not a or not b:
                continue
            cols_b = len(b[0])
            rows_a = len(a)
            for i in range(rows_a):
                for j in range(cols_b):
                    if sum(a[i][k] * b[k][j] for k in range(len(b))) != 0:
                        return False
        return True


@dataclass(frozen=True)
class BettiProfile:
    """Betti numbers and per-degree invariant factors greater than 1."""

    betti: tuple
    torsion: tuple

    def reduced(self) -> tuple:
        if not self.betti:
            return ()
        return (self.betti[0] - 1,) + self.betti[1:]

    def is_reduced_trivial(self) -> bool:
        return (all(b == 0 for b in self.reduced())
                and all(not t for t in self.torsion))


def chain_complex(K: SimplicialComplex) -> ChainComplexZ:
    """Boundary matrices with signs from the canonical vertex order."""
    by_dim = [K.k_simplices(k) for k in range(K.dim + 1)]
    index = [{s: i for i, s in enumerate(level)} for level in by_dim]
    boundaries = []
    for k in range(1, K.dim + 1):
        rows = len(by_dim[k - 1])
        matrix = [[0] * len(by_dim[k]) for _ in range(rows)]
        for j, s in enumerate(by_dim[k]):
            for i, v in enumerate(s.verts):
                face = Simplex(u for u in s.verts if u != v)
                matrix[index[k - 1][face]][j] = -1 if i % 2 else 1
        boundaries.append(tuple(tuple(r) for r in matrix))
    return ChainComplexZ(tuple(len(level) for level in by_dim), tuple(boundaries))


def smith_invariant_factors(matrix) -> tuple:
    """Invariant factors (positive, divisibility-ordered) of an integer matrix."""
    a = [list(row) for row in matrix]
    m = len(a)
    n = len(a[0]) if m else 0
    factors = []
    t = 0
    while t < min(m, n):
        # smallest nonzero entry as pivot
        piv = None
        best = None
        for i in range(t, m):
            for j in range(t, n):
                v = abs(a[i][j])
                if v and (best is None or v < best):
                    best = v
                    piv = (i, j)
            if best == 1:
                break
        if piv is None:
            break
        pi, pj = piv
        a[t], a[pi] = a[pi], a[t]
        for row in a:
            row[t], row[pj] = row[pj], row[t]
        while True:
            dirty = False
            for i in range(t + 1, m):
                if a[i][t]:
                    q = a[i][t] // a[t][t]
                    if q:
                        for j in range(t, n):
                            a[i][j] -= q * a[t][j]
                    if a[i][t]:
                        a[t], a[i] = a[i], a[t]
                        dirty = True
            for j in range(t + 1, n):
                if a[t][j]:
                    q = a[t][j] // a[t][t]
                    if q:
                        for i in range(t, m):
                            a[i][j] -= q * a[i][t]
                    if a[t][j]:
                        for i in range(t, m):
                            a[i][t], a[i][j] = a[i][j], a[i][t]
                        dirty = True
            if dirty:
                continue
            # pivot must divide the rest of the submatrix
            witness = None
            for i in range(t + 1, m):
                for j in range(t + 1, n):
                    if a[i][j] % a[t][t]:
                        witness = i
                        break
                if witness is not None:
                    break
            if witness is None:
                break
            for j in range(t, n):
                a[t][j] += a[witness][j]
        factors.append(abs(a[t][t]))
        t += 1
    # enforce the divisibility chain (already holds after the sweep above,
    # kept as a cheap normalization)
    changed = True
    while changed:
        changed = False
        for i in range(len(factors) - 1):
            x, y = factors[i], factors[i + 1]
            if y % x:
                g = gcd(x, y)
                factors[i], factors[i + 1] = g, x * y // g
                changed = True
    return tuple(factors)


def betti(K: SimplicialComplex) -> BettiProfile:
    """Betti numbers and torsion of K over the integers."""
    cc = chain_complex(K)
    dim = len(cc.dims) - 1
    factors = [smith_invariant_factors(b) for b in cc.boundaries]
    ranks = [sum(1 for f in fs if f) for fs in factors]
    numbers = []
    torsion = []
    for k in range(dim + 1):
        rank_k = ranks[k - 1] if k >= 1 else 0
        rank_k1 = ranks[k] if k < dim else 0
        numbers.append(cc.dims[k] - rank_k - rank_k1)
        if k < dim:
            torsion.append(tuple(f for f in factors[k] if f > 1))
        else:
            torsion.append(())
    return BettiProfile(tuple(numbers), tuple(torsion))


def euler_characteristic(profile: BettiProfile) -> int:
    return sum((-1) ** k * b for k, b in enumerate(profile.betti))
