"""The tower of finite posets attached to a complex, and its thread calculus.

Level n is a poset on the stage-n vertices: x <= y exactly when the closed
carrier simplex of x (at stage n-1) is contained in that of y.  Points of the
realization are encoded as coherent thread prefixes through the levels and
decoded back to exact representatives with a certified squared error bound.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations
from typing import Iterable, Sequence

from .complexes import RationalPoint, Simplex, SimplicialComplex, open_star
from .errors import (
    ElementNotFound,
    EqualPoints,
    IncoherentThread,
    InvalidComplex,
    LevelOutOfRange,
    NotSeparated,
    SimplexNotInComplex,
    StageTooCoarse,
)
from .posets import FinitePoset
from .subdivision import (
    SubdividedComplex,
    _sd_once,
    sd_coordinates,
    mesh_sq_bound,
    stage_vertex_label,
    split_label_members,
    subdivide,
)


class TowerLevel:
    """One level of the tower: the poset of stage-n vertices.

    ``carrier`` maps each element to its stage-(n-1) simplex and
    ``closure_map`` to that simplex's vertex set (the closed carrier).
    """

    def __init__(self, n: int, poset: FinitePoset, carrier: dict, closure_map: dict):
        self.n = n
        self.poset = poset
        self.carrier = carrier
        self.closure_map = closure_map

    @property
    def elements(self):
        return self.poset.elements

    def __contains__(self, x):
        return x in self.poset

    def __repr__(self):
        return f"TowerLevel(n={self.n}, {len(self.poset)} elements)"


def _level_from_stage(stage_prev: SubdividedComplex, n: int) -> TowerLevel:
    """Order the stage-n vertices by inclusion of their closed carriers.

    Every nonempty subset of a carrier's vertex set is itself a simplex of the
    previous stage (face closure), so the full down-set of an element is
    enumerated directly from subsets; this stays linear in the level size.
    """
    sims = stage_prev.complex.sorted_simplices()
    carrier = {}
    closure = {}
    down = {}
    for s in sims:
        lab = stage_vertex_label(s)
        carrier[lab] = s
        closure[lab] = frozenset(s.verts)
        below = set()
        for k in range(1, len(s.verts) + 1):
            for sub in combinations(s.verts, k):
                below.add(stage_vertex_label(Simplex(sub)))
        down[lab] = frozenset(below)
    poset = FinitePoset.from_down_sets(carrier.keys(), down)
    return TowerLevel(n, poset, carrier, closure)


def build_level(K: SimplicialComplex, n: int) -> TowerLevel:
    """Standalone level construction; subdivides the base up to stage n-1."""
    if n < 1:
        raise LevelOutOfRange("levels start at 1")
    return _level_from_stage(subdivide(K, n - 1), n)


@dataclass(frozen=True)
class ThreadPrefix:
    """A finite coherent sequence of level elements, one per level 1..N."""

    tower: "Tower"
    entries: tuple

    def __len__(self):
        return len(self.entries)

    def to_json_obj(self):
        return {"entries": list(self.entries)}

    def __repr__(self):
        return f"ThreadPrefix({', '.join(self.entries)})"


@dataclass(frozen=True)
class DecodedRegion:
    """The nested closed carriers of a thread plus an exact representative.

    Every point whose thread extends the decoded prefix lies within
    ``err_sq_bound`` (squared distance) of ``representative``.
    """

    chain: tuple
    representative: RationalPoint
    err_sq_bound: Fraction


class Tower:
    """The inverse system of level posets over a fixed base complex.

    Construction is a pure function of (base, depth).  Stages 0..depth-1 are
    materialized eagerly because the levels need them; stage ``depth`` is
    built on first access.
    """

    def __init__(self, base: SimplicialComplex, depth: int,
                 stages: list, levels: list):
        self.base = base
        self.depth = depth
        self._stages = stages
        self.levels = levels

    @classmethod
    def build(cls, K: SimplicialComplex, depth: int) -> "Tower":
        if depth < 1:
            raise LevelOutOfRange("tower depth must be >= 1")
        stages = [SubdividedComplex(K, 0, K, {}, None)]
        while len(stages) < depth:
            stages.append(_sd_once(stages[-1]))
        levels = [_level_from_stage(stages[n - 1], n) for n in range(1, depth + 1)]
        return cls(K, depth, stages, levels)

    def deepened(self, depth: int) -> "Tower":
        """A deeper tower sharing this one's stage chain."""
        if depth <= self.depth:
            return self
        stages = list(self._stages)
        while len(stages) < depth:
            stages.append(_sd_once(stages[-1]))
        levels = list(self.levels)
        for n in range(self.depth + 1, depth + 1):
            levels.append(_level_from_stage(stages[n - 1], n))
        return Tower(self.base, depth, stages, levels)

    def stage(self, k: int) -> SubdividedComplex:
        if not 0 <= k <= self.depth:
            raise LevelOutOfRange(f"stage {k} outside 0..{self.depth}")
        while len(self._stages) <= k:
            self._stages.append(_sd_once(self._stages[-1]))
        return self._stages[k]

    def level(self, n: int) -> TowerLevel:
        if not 1 <= n <= self.depth:
            raise LevelOutOfRange(f"level {n} outside 1..{self.depth}")
        return self.levels[n - 1]

    # -- projections and bonds ------------------------------------------------

    def project_point(self, p: RationalPoint, n: int) -> str:
        """The level-n element whose open carrier contains p."""
        if p.complex != self.base:
            raise ValueError("point is not over the tower's base complex")
        if not 1 <= n <= self.depth:
            raise LevelOutOfRange(f"level {n} outside 1..{self.depth}")
        coords = p
        for k in range(1, n):
            coords = sd_coordinates(self.stage(k), coords)
        return stage_vertex_label(coords.support())

    def bond(self, x: str, m: int, n: int) -> str:
        """Transport a level-m element down to level n (identity when m == n).

        One step takes the carrier chain of the element and returns the member
        with the largest carrier: the vertex of the previous stage sitting in
        the open simplex that contains this one's barycenter.
        """
        if not 1 <= n <= m <= self.depth:
            raise LevelOutOfRange(f"need 1 <= {n} <= {m} <= depth {self.depth}")
        if x not in self.level(m):
            raise ElementNotFound(repr(x))
        cur = x
        for k in range(m, n, -1):
            members = self.level(k).carrier[cur].verts
            prev_carrier = self.level(k - 1).carrier
            cur = max(members, key=lambda u: len(prev_carrier[u].verts))
        return cur

    def basic_preimage(self, x: str, n: int) -> set:
        """Open simplices of stage n-1 covering the preimage of the basic open at x."""
        level = self.level(n)
        if x not in level:
            raise ElementNotFound(repr(x))
        return {level.carrier[y] for y in level.poset.up_set(x)}

    # -- threads ---------------------------------------------------------------

    def encode_thread(self, p: RationalPoint, N: int) -> ThreadPrefix:
        if not 1 <= N <= self.depth:
            raise LevelOutOfRange(f"depth {N} outside 1..{self.depth}")
        if p.complex != self.base:
            raise ValueError("point is not over the tower's base complex")
        entries = []
        coords = p
        for k in range(1, N + 1):
            entries.append(stage_vertex_label(coords.support()))
            if k < N:
                coords = sd_coordinates(self.stage(k), coords)
        return ThreadPrefix(self, tuple(entries))

    def thread(self, entries: Sequence[str]) -> ThreadPrefix:
        """Build a thread from raw labels, accepting carrier-set notation too."""
        if not entries:
            raise IncoherentThread("a thread needs at least one entry")
        if len(entries) > self.depth:
            raise LevelOutOfRange(f"thread longer than tower depth {self.depth}")
        resolved = tuple(self._resolve_label(raw, n + 1)
                         for n, raw in enumerate(entries))
        return ThreadPrefix(self, resolved)

    def _resolve_label(self, raw: str, n: int) -> str:
        if raw in self.level(n):
            return raw
        inner = None
        if raw.startswith("{") and raw.endswith("}"):
            inner = raw[1:-1]
        elif raw.startswith("b{") and raw.endswith("}"):
            inner = raw[2:-1]
        if inner is not None:
            try:
                label = stage_vertex_label(Simplex(split_label_members(inner)))
            except InvalidComplex:
                label = None
            if label is not None and label in self.level(n):
                return label
        raise ElementNotFound(f"{raw!r} at level {n}")

    def validate_thread(self, t: ThreadPrefix) -> bool:
        """True iff consecutive entries are matched by the bonding maps."""
        for n, x in enumerate(t.entries, start=1):
            if x not in self.level(n):
                raise ElementNotFound(f"{x!r} at level {n}")
        return all(
            self.bond(t.entries[k], k + 1, k) == t.entries[k - 1]
            for k in range(1, len(t.entries)))

    def decode_thread(self, t: ThreadPrefix) -> DecodedRegion:
        if not self.validate_thread(t):
            raise IncoherentThread(f"bond mismatch in {t.entries}")
        N = len(t.entries)
        chain = tuple(self.level(k).closure_map[x]
                      for k, x in enumerate(t.entries, start=1))
        last_stage = self.stage(N - 1)
        carrier = self.level(N).carrier[t.entries[-1]]
        rep = last_stage.embed_point(
            RationalPoint.barycenter(last_stage.complex, carrier))
        return DecodedRegion(chain, rep, mesh_sq_bound(self.base, N - 1))

    def separation_stage(self, p: RationalPoint, q: RationalPoint) -> int:
        """Least level at which two distinct points project differently."""
        if p == q:
            raise EqualPoints("the points coincide")
        for n in range(1, self.depth + 1):
            if self.project_point(p, n) != self.project_point(q, n):
                return n
        raise NotSeparated(self.depth)

    # -- open images -------------------------------------------------------

    def image_of_open(self, opens: Iterable[Simplex], m: int, n: int) -> frozenset:
        """Project a union of stage-m open simplices to level n.

        The projection is constant on each open simplex once m >= n-1, so the
        image is computed from barycenters.
        """
        if not 1 <= n <= self.depth:
            raise LevelOutOfRange(f"level {n} outside 1..{self.depth}")
        if m < n - 1:
            raise StageTooCoarse(f"stage {m} is coarser than level {n} needs")
        stage = self.stage(m)
        out = set()
        for s in opens:
            if s not in stage.complex.simplices:
                raise SimplexNotInComplex(s.label())
            point = stage.embed_point(RationalPoint.barycenter(stage.complex, s))
            out.add(self.project_point(point, n))
        return frozenset(out)

    def __repr__(self):
        return f"Tower(base={self.base!r}, depth={self.depth})"


def project_point(T: Tower, p: RationalPoint, n: int) -> str:
    return T.project_point(p, n)


def bond(T: Tower, x: str, m: int, n: int) -> str:
    return T.bond(x, m, n)


def basic_preimage(T: Tower, x: str, n: int) -> set:
    return T.basic_preimage(x, n)


def encode_thread(T: Tower, p: RationalPoint, N: int) -> ThreadPrefix:
    return T.encode_thread(p, N)


def validate_thread(t: ThreadPrefix) -> bool:
    return t.tower.validate_thread(t)


def decode_thread(t: ThreadPrefix) -> DecodedRegion:
    return t.tower.decode_thread(t)


def separation_stage(T: Tower, p: RationalPoint, q: RationalPoint) -> int:
    return T.separation_stage(p, q)


def image_of_open(T: Tower, opens: Iterable[Simplex], m: int, n: int) -> frozenset:
    return T.image_of_open(opens, m, n)


def open_subset_is_open(complex: SimplicialComplex, simplices) -> bool:
    """Whether a union of open simplices is open in the realization.

    That holds exactly when the family is closed under taking cofaces.
    """
    family = set(simplices)
    return all(
        t in family
        for s in family
        for t in open_star(complex, s))
