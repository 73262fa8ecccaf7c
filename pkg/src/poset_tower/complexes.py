"""Abstract simplicial complexes with exact rational barycentric points.

Vertices are plain string labels; the canonical order everywhere is the
lexicographic order on labels, which keeps every enumeration and every
serialized artifact reproducible.  All coordinates are ``fractions.Fraction``;
the package never touches floating point.
"""

from __future__ import annotations

from fractions import Fraction
from itertools import combinations
from typing import Iterable, Mapping

from .errors import (
    InvalidComplex,
    InvalidPoint,
    MissingFace,
    NoCommonSimplex,
    SimplexNotInComplex,
    UnknownVertex,
)


class Simplex:
    """A nonempty finite set of vertex labels, stored in sorted order."""

    __slots__ = ("verts",)

    def __init__(self, verts: Iterable[str]):
        vs = tuple(sorted(verts))
        if not vs:
            raise InvalidComplex("a simplex needs at least one vertex")
        for a, b in zip(vs, vs[1:]):
            if a == b:
                raise InvalidComplex(f"duplicate vertex {a!r} in simplex")
        self.verts = vs

    @classmethod
    def of(cls, verts: Iterable[str]) -> "Simplex":
        """Build a simplex from labels that may repeat (repeats collapse)."""
        return cls(set(verts))

    @property
    def dim(self) -> int:
        return len(self.verts) - 1

    def label(self) -> str:
        return "{" + ",".join(self.verts) + "}"

    def faces(self):
        """All proper nonempty faces."""
        for k in range(1, len(self.verts)):
            for combo in combinations(self.verts, k):
                yield Simplex(combo)

    def faces_with_self(self):
        yield from self.faces()
        yield self

    def is_face_of(self, other: "Simplex") -> bool:
        return set(self.verts) <= set(other.verts)

    def union(self, other: "Simplex") -> "Simplex":
        return Simplex.of(self.verts + other.verts)

    def intersection(self, other: "Simplex"):
        common = set(self.verts) & set(other.verts)
        return Simplex(common) if common else None

    def __len__(self):
        return len(self.verts)

    def __iter__(self):
        return iter(self.verts)

    def __contains__(self, v):
        return v in self.verts

    def __eq__(self, other):
        return isinstance(other, Simplex) and self.verts == other.verts

    def __hash__(self):
        return hash(self.verts)

    def __lt__(self, other):
        return (len(self.verts), self.verts) < (len(other.verts), other.verts)

    def __repr__(self):
        return f"Simplex({self.label()})"


class SimplicialComplex:
    """A finite simplicial complex: vertex labels plus a face-closed simplex set.

    The constructor validates face closure and vertex consistency, so any
    instance in hand is a well-formed complex.
    """

    __slots__ = ("vertices", "simplices", "_dim")

    def __init__(self, vertices: Iterable[str], simplices: Iterable[Simplex]):
        self.vertices = tuple(sorted(set(vertices)))
        self.simplices = frozenset(simplices)
        vset = set(self.vertices)
        for s in self.simplices:
            for v in s.verts:
                if v not in vset:
                    raise UnknownVertex(v, s)
            for f in s.faces():
                if f not in self.simplices:
                    raise MissingFace(f, s)
        for v in self.vertices:
            if Simplex((v,)) not in self.simplices:
                raise MissingFace(Simplex((v,)))
        self._dim = max((s.dim for s in self.simplices), default=-1)

    @classmethod
    def from_maximal(cls, simplices: Iterable[Iterable[str]]) -> "SimplicialComplex":
        """Build a complex by closing the given simplices downward."""
        closed = set()
        for raw in simplices:
            s = Simplex(raw)
            closed.add(s)
            closed.update(s.faces())
        verts = sorted({v for s in closed for v in s.verts})
        return cls(verts, closed)

    @property
    def dim(self) -> int:
        return self._dim

    def __contains__(self, simplex: Simplex) -> bool:
        return simplex in self.simplices

    def has_vertex(self, v: str) -> bool:
        return v in set(self.vertices)

    def k_simplices(self, k: int):
        return tuple(sorted(s for s in self.simplices if s.dim == k))

    def sorted_simplices(self):
        return sorted(self.simplices)

    def counts(self):
        """Number of simplices in each dimension 0..dim."""
        out = [0] * (self._dim + 1)
        for s in self.simplices:
            out[s.dim] += 1
        return tuple(out)

    def to_json_obj(self):
        return {
            "vertices": list(self.vertices),
            "simplices": [list(s.verts) for s in self.sorted_simplices()],
        }

    @classmethod
    def from_json_obj(cls, obj) -> "SimplicialComplex":
        return validate_complex(obj.get("vertices", []), obj.get("simplices", []))

    def __eq__(self, other):
        return (isinstance(other, SimplicialComplex)
                and self.vertices == other.vertices
                and self.simplices == other.simplices)

    def __hash__(self):
        return hash((self.vertices, self.simplices))

    def __repr__(self):
        return f"SimplicialComplex({len(self.vertices)} vertices, {len(self.simplices)} simplices)"


def validate_complex(vertices: Iterable[str], simplices: Iterable[Iterable[str]]) -> SimplicialComplex:
    """Validate raw data and return the complex; raises on any violation."""
    return SimplicialComplex(vertices, [Simplex(s) for s in simplices])


class RationalPoint:
    """A point of the geometric realization, as exact barycentric coordinates.

    Only the positive coordinates are stored; their keys must span a simplex
    of the complex and the values must sum to exactly 1.
    """

    __slots__ = ("complex", "coords")

    def __init__(self, complex: SimplicialComplex, coords: Mapping[str, Fraction]):
        clean = {}
        for v, a in coords.items():
            a = Fraction(a)
            if a < 0:
                raise InvalidPoint(f"negative coordinate {a} at {v!r}")
            if a > 0:
                clean[v] = a
        if sum(clean.values(), Fraction(0)) != 1:
            raise InvalidPoint("coordinates must sum to exactly 1")
        supp = Simplex(clean.keys())
        if supp not in complex.simplices:
            raise InvalidPoint(f"support {supp.label()} is not a simplex of the complex")
        self.complex = complex
        self.coords = clean

    @classmethod
    def vertex(cls, complex: SimplicialComplex, v: str) -> "RationalPoint":
        return cls(complex, {v: Fraction(1)})

    @classmethod
    def barycenter(cls, complex: SimplicialComplex, simplex: Simplex) -> "RationalPoint":
        if simplex not in complex.simplices:
            raise SimplexNotInComplex(simplex.label())
        n = len(simplex.verts)
        return cls(complex, {v: Fraction(1, n) for v in simplex.verts})

    @classmethod
    def affine(cls, complex, weighted_points) -> "RationalPoint":
        """Exact affine combination of points of the same complex."""
        acc: dict[str, Fraction] = {}
        for w, p in weighted_points:
            for v, a in p.coords.items():
                acc[v] = acc.get(v, Fraction(0)) + Fraction(w) * a
        return cls(complex, acc)

    def coord(self, v: str) -> Fraction:
        return self.coords.get(v, Fraction(0))

    def support(self) -> Simplex:
        return Simplex(self.coords.keys())

    def to_json_obj(self):
        return {"coords": {v: str(a) for v, a in sorted(self.coords.items())}}

    @classmethod
    def from_json_obj(cls, complex: SimplicialComplex, obj) -> "RationalPoint":
        return cls(complex, {v: Fraction(a) for v, a in obj.get("coords", {}).items()})

    def __eq__(self, other):
        return (isinstance(other, RationalPoint)
                and self.complex == other.complex
                and self.coords == other.coords)

    def __repr__(self):
        inner = ", ".join(f"{v}:{a}" for v, a in sorted(self.coords.items()))
        return f"RationalPoint({inner})"


def support(p: RationalPoint) -> Simplex:
    """The unique simplex whose open simplex contains p."""
    return p.support()


def star(K: SimplicialComplex, simplex: Simplex) -> SimplicialComplex:
    """The subcomplex of simplices tau with simplex ∪ tau in K."""
    if simplex not in K.simplices:
        raise SimplexNotInComplex(simplex.label())
    sims = {t for t in K.simplices if t.union(simplex) in K.simplices}
    verts = {v for t in sims for v in t.verts}
    return SimplicialComplex(verts, sims)


def link(K: SimplicialComplex, simplex: Simplex) -> SimplicialComplex:
    """The subcomplex of the star whose simplices are disjoint from the given one."""
    st = star(K, simplex)
    forbidden = set(simplex.verts)
    sims = {t for t in st.simplices if not (set(t.verts) & forbidden)}
    verts = {v for t in sims for v in t.verts}
    return SimplicialComplex(verts, sims)


def open_star(K: SimplicialComplex, simplex: Simplex) -> set:
    """All simplices containing the given one; as a point set, star minus link."""
    if simplex not in K.simplices:
        raise SimplexNotInComplex(simplex.label())
    return {t for t in K.simplices if simplex.is_face_of(t)}


def dist_sq(p: RationalPoint, q: RationalPoint) -> Fraction:
    """Squared barycentric-coordinate distance; requires a common closed simplex."""
    if p.complex != q.complex:
        raise NoCommonSimplex("points live on different complexes")
    common = p.support().union(q.support())
    if common not in p.complex.simplices:
        raise NoCommonSimplex(
            f"supports {p.support().label()} and {q.support().label()} span no simplex")
    total = Fraction(0)
    for v in set(p.coords) | set(q.coords):
        d = p.coord(v) - q.coord(v)
        total += d * d
    return total
