"""Iterated barycentric subdivision with provenance and exact point transport.

Stage-n vertices are barycenters of stage-(n-1) simplices and carry canonical
nested labels: the barycenter of a single vertex keeps that vertex's label
(vertices persist through subdivision), and the barycenter of ``{a,b}`` is
labelled ``b{a,b}``, so a stage-2 vertex may read ``b{a,b{a,b}}``.
"""

from __future__ import annotations

import os
from fractions import Fraction

from .complexes import RationalPoint, Simplex, SimplicialComplex
from .errors import ElementNotFound, ResourceLimit


def stage_vertex_label(simplex: Simplex) -> str:
    """Canonical label of the barycenter vertex of a simplex."""
    if len(simplex.verts) == 1:
        return simplex.verts[0]
    return "b" + simplex.label()


def split_label_members(label: str):
    """Split the inside of a set label on top-level commas."""
    members = []
    depth = 0
    current = []
    for ch in label:
        if ch == "{":
            depth += 1
            current.append(ch)
        elif ch == "}":
            depth -= 1
            current.append(ch)
        elif ch == "," and depth == 0:
            members.append("".join(current))
            current = []
        else:
            current.append(ch)
    if current:
        members.append("".join(current))
    return members


def _simplex_cap():
    raw = os.environ.get("POSET_TOWER_MAX_SIMPLICES")
    return int(raw) if raw else None


class SubdividedComplex:
    """One stage of the barycentric subdivision chain of a base complex.

    ``previous`` links back to the prior stage (None at stage 0), and
    ``provenance`` maps every stage-n vertex label to the stage-(n-1) simplex
    it is the barycenter of.
    """

    def __init__(self, base, stage, complex, provenance, previous):
        self.base = base
        self.stage = stage
        self.complex = complex
        self.provenance = provenance
        self.previous = previous
        self._embed: dict[str, RationalPoint] = {}

    def carrier(self, label: str) -> Simplex:
        """The stage-(n-1) simplex whose barycenter this vertex is."""
        if self.stage == 0:
            raise ElementNotFound("stage 0 vertices have no carrier")
        try:
            return self.provenance[label]
        except KeyError:
            raise ElementNotFound(repr(label)) from None

    def stage_chain(self):
        """Stages 0..n in order."""
        chain = []
        cur = self
        while cur is not None:
            chain.append(cur)
            cur = cur.previous
        return list(reversed(chain))

    def embed_vertex(self, label: str) -> RationalPoint:
        """The stage-0 point of a stage-n vertex, computed exactly and cached."""
        cached = self._embed.get(label)
        if cached is not None:
            return cached
        if self.stage == 0:
            if label not in set(self.complex.vertices):
                raise ElementNotFound(repr(label))
            point = RationalPoint.vertex(self.base, label)
        else:
            members = self.carrier(label).verts
            w = Fraction(1, len(members))
            point = RationalPoint.affine(
                self.base, [(w, self.previous.embed_vertex(m)) for m in members])
        self._embed[label] = point
        return point

    def embed_point(self, p: RationalPoint) -> RationalPoint:
        """Expand a point over this stage into exact stage-0 coordinates."""
        if p.complex != self.complex:
            raise ValueError("point is not expressed over this stage")
        return RationalPoint.affine(
            self.base, [(a, self.embed_vertex(v)) for v, a in p.coords.items()])

    def vertex_point(self, label: str) -> RationalPoint:
        return RationalPoint.vertex(self.complex, label)

    def to_json_obj(self):
        return {
            "base": self.base.to_json_obj(),
            "stage": self.stage,
            "complex": self.complex.to_json_obj(),
            "provenance": [
                {
                    "stage": s.stage,
                    "carriers": {lab: list(sim.verts)
                                 for lab, sim in sorted(s.provenance.items())},
                }
                for s in self.stage_chain()
                if s.stage >= 1
            ],
        }

    def __repr__(self):
        return f"SubdividedComplex(stage={self.stage}, {self.complex!r})"


def _sd_once(prev: SubdividedComplex) -> SubdividedComplex:
    """One barycentric subdivision step: simplices become chains of faces."""
    cx = prev.complex
    sims = cx.sorted_simplices()
    labels = {s: stage_vertex_label(s) for s in sims}
    provenance = {labels[s]: s for s in sims}
    if len(provenance) != len(sims):
        raise ResourceLimit("stage vertex labels collided")  # pragma: no cover

    cofaces: dict[Simplex, list] = {s: [] for s in sims}
    for t in sims:
        for f in t.faces():
            cofaces[f].append(t)

    cap = _simplex_cap()
    chains = []
    for s in sims:
        stack = [(s, (labels[s],))]
        while stack:
            top, path = stack.pop()
            chains.append(Simplex(path))
            if cap is not None and len(chains) > cap:
                raise ResourceLimit(
                    f"subdivision exceeds POSET_TOWER_MAX_SIMPLICES={cap}")
            for t in cofaces[top]:
                stack.append((t, path + (labels[t],)))

    complex = SimplicialComplex(provenance.keys(), chains)
    return SubdividedComplex(prev.base, prev.stage + 1, complex, provenance, prev)


def subdivide(K: SimplicialComplex, n: int) -> SubdividedComplex:
    """The n-th barycentric subdivision with the full provenance chain."""
    if n < 0:
        raise ValueError("subdivision stage must be >= 0")
    stage = SubdividedComplex(K, 0, K, {}, None)
    for _ in range(n):
        stage = _sd_once(stage)
    return stage


def extend_subdivision(stage: SubdividedComplex, n: int) -> SubdividedComplex:
    """Continue an existing chain up to stage n, reusing earlier stages."""
    while stage.stage < n:
        stage = _sd_once(stage)
    return stage


def sd_coordinates(stage: SubdividedComplex, p: RationalPoint) -> RationalPoint:
    """Re-express a stage-(n-1) point over the stage-n vertices.

    Sort the positive coordinates in descending order; the weight on the
    barycenter of the j-th prefix of the support is j*(a_j - a_{j+1}).  Ties
    produce zero weights, which are dropped, so the result's support is the
    strict-descent chain regardless of tie order.
    """
    if stage.previous is None or p.complex != stage.previous.complex:
        raise ValueError("point must be expressed over the previous stage")
    items = sorted(p.coords.items(), key=lambda kv: (-kv[1], kv[0]))
    out = {}
    for j in range(1, len(items) + 1):
        a_j = items[j - 1][1]
        a_next = items[j][1] if j < len(items) else Fraction(0)
        w = j * (a_j - a_next)
        if w > 0:
            prefix = Simplex(label for label, _ in items[:j])
            out[stage_vertex_label(prefix)] = w
    return RationalPoint(stage.complex, out)


def lift_point(stage: SubdividedComplex, p: RationalPoint) -> RationalPoint:
    """Push a stage-0 point up the chain into this stage's coordinates."""
    coords = p
    for s in stage.stage_chain()[1:]:
        coords = sd_coordinates(s, coords)
    return coords


def embed_point(stage: SubdividedComplex, p: RationalPoint) -> RationalPoint:
    return stage.embed_point(p)


def mesh_sq_bound(K: SimplicialComplex, n: int) -> Fraction:
    """Upper bound for the squared diameter of any closed simplex at stage n.

    Any two points of a closed simplex are at squared distance at most 2 in
    barycentric coordinates, and each subdivision of a d-complex contracts
    diameters by d/(d+1).
    """
    if n < 0:
        raise ValueError("stage must be >= 0")
    d = K.dim
    if d <= 0:
        return Fraction(0)
    return 2 * Fraction(d, d + 1) ** (2 * n)
