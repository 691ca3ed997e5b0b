"""Lattice points, c_u adjacency and finite digital images.

Points are plain tuples of Python ints, so arithmetic is exact and overflow
cannot happen.  Every image keeps its points in lexicographic order, which is
the iteration order used by all searches and reports.
"""
from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from functools import cached_property
from itertools import product
from typing import Iterable, Tuple

from .errors import DimensionMismatch, DigitopError, NotASubimage

Point = Tuple[int, ...]


def as_point(coords: Iterable[int]) -> Point:
    pt = tuple(coords)
    if not pt:
        raise DigitopError("a point needs at least one coordinate")
    for c in pt:
        if isinstance(c, bool) or not isinstance(c, int):
            raise DigitopError(f"coordinates must be integers, got {c!r}")
    return pt


@dataclass(frozen=True, order=True)
class AdjacencyKind:
    """The c_u adjacency on Z^n."""

    ambient_dim: int
    u: int

    def __post_init__(self):
        if self.ambient_dim < 1:
            raise DigitopError(f"ambient dimension must be positive, got {self.ambient_dim}")
        if not 1 <= self.u <= self.ambient_dim:
            raise DigitopError(f"need 1 <= u <= {self.ambient_dim}, got u={self.u}")

    @cached_property
    def offsets(self) -> tuple[Point, ...]:
        """Nonzero steps to adjacent lattice points, in lexicographic order."""
        return tuple(
            d for d in product((-1, 0, 1), repeat=self.ambient_dim)
            if 0 < sum(1 for c in d if c) <= self.u
        )

    @property
    def count(self) -> int:
        """The classical name of the adjacency (4, 8, 6, 18, 26, ...)."""
        return len(self.offsets)

    def __repr__(self) -> str:
        return f"c{self.u}(Z^{self.ambient_dim})"


def c(u: int, n: int) -> AdjacencyKind:
    """Shorthand: ``c(1, 2)`` is 4-adjacency in the plane."""
    return AdjacencyKind(n, u)


def adjacent(p: Point, q: Point, kind: AdjacencyKind) -> bool:
    if len(p) != kind.ambient_dim or len(q) != kind.ambient_dim:
        raise DimensionMismatch(
            f"points {p}, {q} do not live in Z^{kind.ambient_dim}")
    differing = 0
    for a, b in zip(p, q):
        d = a - b
        if d:
            if d > 1 or d < -1:
                return False
            differing += 1
    return 0 < differing <= kind.u


@dataclass(frozen=True, eq=False)
class DigitalImage:
    """A finite set of lattice points with a c_u adjacency."""

    points: frozenset
    adjacency: AdjacencyKind

    def __post_init__(self):
        pts = frozenset(as_point(p) for p in self.points)
        n = self.adjacency.ambient_dim
        for p in pts:
            if len(p) != n:
                raise DimensionMismatch(f"point {p} is not in Z^{n}")
        object.__setattr__(self, "points", pts)

    @classmethod
    def of(cls, points: Iterable[Iterable[int]], u: int = 1, dim: int | None = None) -> "DigitalImage":
        pts = [as_point(p) for p in points]
        if dim is None:
            if not pts:
                raise DigitopError("cannot infer the dimension of an empty image")
            dim = len(pts[0])
        return cls(frozenset(pts), AdjacencyKind(dim, u))

    def __eq__(self, other):
        if not isinstance(other, DigitalImage):
            return NotImplemented
        return self.adjacency == other.adjacency and self.points == other.points

    def __hash__(self):
        return self._hash

    @cached_property
    def _hash(self) -> int:
        return hash((self.adjacency, self.points))

    def __len__(self) -> int:
        return len(self.points)

    def __contains__(self, p) -> bool:
        return p in self.points

    def __iter__(self):
        return iter(self.ordered)

    def __repr__(self) -> str:
        if len(self.points) <= 6:
            return f"DigitalImage({list(self.ordered)}, {self.adjacency!r})"
        return f"DigitalImage(<{len(self.points)} points>, {self.adjacency!r})"

    @property
    def dim(self) -> int:
        return self.adjacency.ambient_dim

    @cached_property
    def ordered(self) -> tuple[Point, ...]:
        return tuple(sorted(self.points))

    @cached_property
    def index(self) -> dict[Point, int]:
        return {p: i for i, p in enumerate(self.ordered)}

    @cached_property
    def adjacency_lists(self) -> dict[Point, tuple[Point, ...]]:
        pts = self.points
        out = {}
        for p in self.ordered:
            nbrs = []
            for d in self.adjacency.offsets:
                q = tuple(a + b for a, b in zip(p, d))
                if q in pts:
                    nbrs.append(q)
            out[p] = tuple(sorted(nbrs))
        return out

    @cached_property
    def closed_nbhd(self) -> dict[Point, frozenset]:
        return {p: frozenset(ns) | {p} for p, ns in self.adjacency_lists.items()}

    def edges(self) -> list[tuple[Point, Point]]:
        """Adjacent pairs (p, q) with p < q, sorted."""
        return [(p, q) for p in self.ordered for q in self.adjacency_lists[p] if p < q]

    def adjacent_or_equal(self, p: Point, q: Point) -> bool:
        return p == q or adjacent(p, q, self.adjacency)

    def subimage(self, points: Iterable[Point]) -> "DigitalImage":
        pts = frozenset(as_point(p) for p in points)
        if not pts <= self.points:
            raise NotASubimage(f"{sorted(pts - self.points)[:3]} not in image")
        return DigitalImage(pts, self.adjacency)

    def issubimage(self, other: "DigitalImage") -> bool:
        return self.adjacency == other.adjacency and self.points <= other.points

    def distances_from(self, source: Point) -> dict[Point, int]:
        dist = {source: 0}
        queue = deque([source])
        adj = self.adjacency_lists
        while queue:
            p = queue.popleft()
            for q in adj[p]:
                if q not in dist:
                    dist[q] = dist[p] + 1
                    queue.append(q)
        return dist

    @cached_property
    def distance_table(self) -> dict[Point, dict[Point, int]]:
        return {p: self.distances_from(p) for p in self.ordered}

    def is_connected(self) -> bool:
        if not self.points:
            return True
        return len(self.distances_from(self.ordered[0])) == len(self.points)


@dataclass(frozen=True)
class PointedImage:
    image: DigitalImage
    basepoint: Point

    def __post_init__(self):
        if self.basepoint not in self.image:
            raise NotASubimage(f"basepoint {self.basepoint} not in image")


def interval(a: int, b: int) -> DigitalImage:
    """The digital interval [a, b]_Z with 2-adjacency."""
    if a > b:
        raise DigitopError(f"empty interval [{a}, {b}]")
    return DigitalImage(frozenset((z,) for z in range(a, b + 1)), AdjacencyKind(1, 1))


def neighbors(X: DigitalImage, p: Point) -> frozenset:
    if p not in X:
        raise NotASubimage(f"{p} is not a point of the image")
    return frozenset(X.adjacency_lists[p])


def components(X: DigitalImage) -> list[frozenset]:
    """Adjacency components, each listed once, ordered by their least point."""
    seen: set = set()
    parts = []
    for p in X.ordered:
        if p in seen:
            continue
        comp = X.distances_from(p).keys()
        seen.update(comp)
        parts.append(frozenset(comp))
    return parts


def points_connected(points: Iterable[Point], kind: AdjacencyKind) -> bool:
    """Whether a finite point set is connected under ``kind``."""
    pts = set(points)
    if len(pts) <= 1:
        return True
    start = next(iter(pts))
    seen = {start}
    stack = [start]
    while stack:
        p = stack.pop()
        for d in kind.offsets:
            q = tuple(a + b for a, b in zip(p, d))
            if q in pts and q not in seen:
                seen.add(q)
                stack.append(q)
    return len(seen) == len(pts)

