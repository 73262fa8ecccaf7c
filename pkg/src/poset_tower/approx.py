"""Simplicial and piecewise-affine maps, approximation, and induced level maps.

A continuous map is represented by its exact values on the vertices of some
subdivision stage of the source, extended affinely.  ``approximate`` searches
for a stage where a vertex assignment satisfies the star condition: the image
of the closed star of every vertex must land inside the open star of the
assigned target vertex.  Such an assignment is automatically simplicial and
straight-line homotopic to the original map.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Mapping, Sequence

from .complexes import RationalPoint, Simplex, SimplicialComplex
from .errors import (
    ElementNotFound,
    IncoherentThread,
    InvalidPLMap,
    NotSimplicial,
    SearchExhausted,
)
from .posets import PosetMap
from .subdivision import (
    SubdividedComplex,
    extend_subdivision,
    sd_coordinates,
    stage_vertex_label,
    subdivide,
)
from .tower import ThreadPrefix, Tower


class SimplicialMap:
    """A vertex-to-vertex map between complexes."""

    __slots__ = ("source", "target", "vertex_map")

    def __init__(self, source: SimplicialComplex, target: SimplicialComplex,
                 vertex_map: Mapping[str, str]):
        tverts = set(target.vertices)
        for v in source.vertices:
            if v not in vertex_map:
                raise ElementNotFound(f"no image for vertex {v!r}")
            if vertex_map[v] not in tverts:
                raise ElementNotFound(f"image {vertex_map[v]!r} not in target")
        self.source = source
        self.target = target
        self.vertex_map = dict(vertex_map)

    @classmethod
    def identity(cls, K: SimplicialComplex) -> "SimplicialMap":
        return cls(K, K, {v: v for v in K.vertices})

    @classmethod
    def constant(cls, K: SimplicialComplex, T: SimplicialComplex, w: str) -> "SimplicialMap":
        return cls(K, T, {v: w for v in K.vertices})

    def __call__(self, v: str) -> str:
        return self.vertex_map[v]

    def apply_simplex(self, s: Simplex) -> Simplex:
        return Simplex.of(self.vertex_map[v] for v in s.verts)

    def apply_point(self, p: RationalPoint) -> RationalPoint:
        """The induced map on realizations (requires the map to be simplicial)."""
        acc: dict[str, Fraction] = {}
        for v, a in p.coords.items():
            w = self.vertex_map[v]
            acc[w] = acc.get(w, Fraction(0)) + a
        return RationalPoint(self.target, acc)

    def compose(self, inner: "SimplicialMap") -> "SimplicialMap":
        """self after inner."""
        if inner.target != self.source:
            raise ValueError("composition mismatch")
        return SimplicialMap(inner.source, self.target,
                             {v: self.vertex_map[inner.vertex_map[v]]
                              for v in inner.source.vertices})

    def to_json_obj(self):
        return {"vertex_map": dict(sorted(self.vertex_map.items()))}

    def __eq__(self, other):
        return (isinstance(other, SimplicialMap)
                and self.source == other.source
                and self.target == other.target
                and self.vertex_map == other.vertex_map)

    def __repr__(self):
        return f"SimplicialMap({len(self.source.vertices)} -> {len(self.target.vertices)} vertices)"


def validate_simplicial(g: SimplicialMap) -> bool:
    """True iff every simplex maps to a simplex of the target."""
    return all(g.apply_simplex(s) in g.target.simplices for s in g.source.simplices)


def require_simplicial(g: SimplicialMap) -> None:
    for s in g.source.simplices:
        if g.apply_simplex(s) not in g.target.simplices:
            raise NotSimplicial(
                f"simplex {s.label()} maps to {g.apply_simplex(s).label()},"
                " not a simplex of the target")


def sd_map(g: SimplicialMap,
           source_stage: SubdividedComplex | None = None,
           target_stage: SubdividedComplex | None = None) -> SimplicialMap:
    """Subdivide a simplicial map: each barycenter goes to the image barycenter."""
    require_simplicial(g)
    if source_stage is None:
        source_stage = subdivide(g.source, 1)
    if target_stage is None:
        target_stage = subdivide(g.target, 1)
    vm = {}
    for lab, s in source_stage.provenance.items():
        vm[lab] = stage_vertex_label(g.apply_simplex(s))
    return SimplicialMap(source_stage.complex, target_stage.complex, vm)


def iterated_sd_map(g: SimplicialMap, n: int,
                    source_tower: Tower | None = None,
                    target_tower: Tower | None = None) -> SimplicialMap:
    """The n-fold subdivision of g, reusing tower stages when provided."""
    out = g
    for k in range(1, n + 1):
        src = source_tower.stage(k) if source_tower is not None else None
        dst = target_tower.stage(k) if target_tower is not None else None
        out = sd_map(out, src, dst)
    return out


class PLMap:
    """A map defined by exact vertex images at a subdivision stage of the source.

    The images of the vertices of every simplex must lie in a common closed
    simplex of the target, so the affine extension is well defined.
    """

    __slots__ = ("source_stage", "target", "images")

    def __init__(self, source_stage: SubdividedComplex, target: SimplicialComplex,
                 images: Mapping[str, RationalPoint]):
        cx = source_stage.complex
        for v in cx.vertices:
            if v not in images:
                raise ElementNotFound(f"no image for vertex {v!r}")
            if images[v].complex != target:
                raise InvalidPLMap(f"image of {v!r} is not a point of the target")
        for s in cx.simplices:
            hull = Simplex.of(
                w for v in s.verts for w in images[v].coords)
            if hull not in target.simplices:
                raise InvalidPLMap(
                    f"vertex images of {s.label()} span {hull.label()},"
                    " which is not a simplex of the target")
        self.source_stage = source_stage
        self.target = target
        self.images = dict(images)

    @property
    def source(self) -> SimplicialComplex:
        return self.source_stage.base

    @property
    def stage(self) -> int:
        return self.source_stage.stage

    def evaluate(self, p: RationalPoint) -> RationalPoint:
        """Value at a point expressed over the defining stage."""
        if p.complex != self.source_stage.complex:
            raise ValueError("point must be over the map's defining stage")
        return RationalPoint.affine(
            self.target, [(a, self.images[v]) for v, a in p.coords.items()])

    def evaluate_base(self, p: RationalPoint) -> RationalPoint:
        """Value at a stage-0 point of the source."""
        coords = p
        for stage in self.source_stage.stage_chain()[1:]:
            coords = sd_coordinates(stage, coords)
        return self.evaluate(coords)

    def to_json_obj(self):
        return {
            "source": self.source.to_json_obj(),
            "target": self.target.to_json_obj(),
            "stage": self.stage,
            "images": {v: self.images[v].to_json_obj()
                       for v in self.source_stage.complex.vertices},
        }

    @classmethod
    def from_json_obj(cls, obj) -> "PLMap":
        source = SimplicialComplex.from_json_obj(obj["source"])
        target = SimplicialComplex.from_json_obj(obj["target"])
        stage = subdivide(source, int(obj.get("stage", 0)))
        images = {v: RationalPoint.from_json_obj(target, raw)
                  for v, raw in obj.get("images", {}).items()}
        return cls(stage, target, images)

    def __repr__(self):
        return f"PLMap(stage={self.stage}, {len(self.images)} vertex images)"


def _vertex_values(h: PLMap, stage: SubdividedComplex) -> dict:
    """Exact values of h at every vertex of a stage >= the defining stage.

    A stage-(k+1) vertex is the barycenter of its carrier, and h is affine on
    every carrier simplex, so values propagate as plain averages.
    """
    values = dict(h.images)
    chain = stage.stage_chain()
    for s in chain[h.stage + 1:]:
        for lab, carrier in s.provenance.items():
            members = carrier.verts
            w = Fraction(1, len(members))
            values[lab] = RationalPoint.affine(
                h.target, [(w, values[m]) for m in members])
    return values


def _star_vertices(cx: SimplicialComplex) -> dict:
    """For each vertex, the vertex set of its closed star (itself included)."""
    out = {v: {v} for v in cx.vertices}
    for e in cx.k_simplices(1):
        a, b = e.verts
        out[a].add(b)
        out[b].add(a)
    return out


def approximate(h: PLMap, cap: int = 4):
    """Find the least stage admitting a star-condition vertex assignment.

    Returns (n, f) where f maps stage-n vertices of the source into the
    target: for every vertex v the image of its closed star is contained in
    the open star of f(v), with ties broken by the least admissible target
    vertex.  Raises SearchExhausted past the cap.
    """
    stage = h.source_stage
    targets = h.target.vertices
    for n in range(h.stage, cap + 1):
        stage = extend_subdivision(stage, n)
        values = _vertex_values(h, stage)
        stars = _star_vertices(stage.complex)
        assignment = {}
        for v in stage.complex.vertices:
            chosen = None
            for w in targets:
                if all(values[u].coord(w) > 0 for u in stars[v]):
                    chosen = w
                    break
            if chosen is None:
                assignment = None
                break
            assignment[v] = chosen
        if assignment is not None:
            f = SimplicialMap(stage.complex, h.target, assignment)
            require_simplicial(f)
            return n, f
    raise SearchExhausted(cap)


def carrier_homotopy_check(h: PLMap, f: SimplicialMap,
                           samples: Sequence[RationalPoint],
                           source_stage: SubdividedComplex) -> bool:
    """Straight-line homotopy witness: h(x) and |f|(x) share a closed simplex.

    Samples are points over f's source (stage n); the check is exact.
    """
    if f.source != source_stage.complex:
        raise ValueError("stage does not match the simplicial map's source")
    for x in samples:
        hx = h.evaluate_base(source_stage.embed_point(x))
        fx = f.apply_point(x)
        hull = hx.support().union(fx.support())
        if hull not in h.target.simplices:
            return False
    return True


def homotopy_sample_points(cx: SimplicialComplex):
    """All vertices plus all edge midpoints, as exact points."""
    samples = [RationalPoint.vertex(cx, v) for v in cx.vertices]
    half = Fraction(1, 2)
    for e in cx.k_simplices(1):
        a, b = e.verts
        samples.append(RationalPoint(cx, {a: half, b: half}))
    return samples


def induce_level_map(g: SimplicialMap, n: int,
                     source_tower: Tower, target_tower: Tower) -> PosetMap:
    """The level-n poset map: a carrier goes to its image carrier's barycenter."""
    require_simplicial(g)
    if g.source != source_tower.base or g.target != target_tower.base:
        raise ValueError("towers do not match the map's endpoints")
    gk = iterated_sd_map(g, n - 1, source_tower, target_tower)
    src_level = source_tower.level(n)
    dst_level = target_tower.level(n)
    assignment = {
        x: stage_vertex_label(gk.apply_simplex(carrier))
        for x, carrier in src_level.carrier.items()
    }
    return PosetMap(src_level.poset, dst_level.poset, assignment)


def check_naturality(g: SimplicialMap, n: int,
                     samples: Sequence[RationalPoint],
                     source_tower: Tower, target_tower: Tower) -> bool:
    """Projection-square and bond-square tests for the induced level maps."""
    level_map = induce_level_map(g, n, source_tower, target_tower)
    for x in samples:
        via_target = target_tower.project_point(g.apply_point(x), n)
        via_source = level_map(source_tower.project_point(x, n))
        if via_target != via_source:
            return False
    if n >= 2:
        prev = induce_level_map(g, n - 1, source_tower, target_tower)
        for e in source_tower.level(n).elements:
            if target_tower.bond(level_map(e), n, n - 1) != prev(source_tower.bond(e, n, n - 1)):
                return False
    return True


class SystemMorphism:
    """A simplicial map together with all its induced level maps."""

    __slots__ = ("g", "source_tower", "target_tower", "levels")

    def __init__(self, g: SimplicialMap, source_tower: Tower, target_tower: Tower,
                 levels: Sequence[PosetMap]):
        self.g = g
        self.source_tower = source_tower
        self.target_tower = target_tower
        self.levels = tuple(levels)

    @classmethod
    def build(cls, g: SimplicialMap, source_tower: Tower,
              target_tower: Tower) -> "SystemMorphism":
        depth = min(source_tower.depth, target_tower.depth)
        levels = [induce_level_map(g, n, source_tower, target_tower)
                  for n in range(1, depth + 1)]
        return cls(g, source_tower, target_tower, levels)

    @property
    def depth(self) -> int:
        return len(self.levels)

    def level(self, n: int) -> PosetMap:
        return self.levels[n - 1]

    def validate(self) -> bool:
        """Order preservation of every level plus the bond intertwining square."""
        if not all(m.is_order_preserving() for m in self.levels):
            return False
        for n in range(2, self.depth + 1):
            gn, gprev = self.level(n), self.level(n - 1)
            for e in self.source_tower.level(n).elements:
                lhs = self.target_tower.bond(gn(e), n, n - 1)
                rhs = gprev(self.source_tower.bond(e, n, n - 1))
                if lhs != rhs:
                    return False
        return True


def limit_map(m: SystemMorphism, t: ThreadPrefix) -> ThreadPrefix:
    """Apply a system morphism entrywise to a coherent thread."""
    if t.tower is not m.source_tower:
        raise ValueError("thread does not belong to the morphism's source tower")
    if len(t.entries) > m.depth:
        raise IncoherentThread("thread deeper than the morphism's levels")
    if not m.source_tower.validate_thread(t):
        raise IncoherentThread(f"bond mismatch in {t.entries}")
    entries = tuple(m.level(n)(x) for n, x in enumerate(t.entries, start=1))
    return ThreadPrefix(m.target_tower, entries)
