"""Digitally continuous maps between finite images."""
from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from typing import Callable, Iterable, Mapping

from .errors import BudgetExceeded, DigitopError, NotASubimage
from .lattice import DigitalImage, Point, points_connected

DEFAULT_SUBSET_DOMAIN_CAP = 16


@dataclass(frozen=True, eq=False)
class DigitalMap:
    """A total assignment ``domain -> codomain``.

    ``values[i]`` is the image of ``domain.ordered[i]``.  Two maps are equal
    when domain, codomain and every value agree.
    """

    domain: DigitalImage
    codomain: DigitalImage
    values: tuple

    def __post_init__(self):
        vals = tuple(tuple(v) for v in self.values)
        if len(vals) != len(self.domain):
            raise DigitopError(
                f"map has {len(vals)} values for a domain of {len(self.domain)} points")
        for p, v in zip(self.domain.ordered, vals):
            if v not in self.codomain:
                raise NotASubimage(f"value {v} of {p} lies outside the codomain")
        object.__setattr__(self, "values", vals)

    @classmethod
    def from_dict(cls, domain: DigitalImage, codomain: DigitalImage, assignment: Mapping) -> "DigitalMap":
        missing = [p for p in domain.ordered if p not in assignment]
        if missing:
            raise DigitopError(f"assignment misses domain points {missing[:3]}")
        extra = [p for p in assignment if p not in domain]
        if extra:
            raise DigitopError(f"assignment has points outside the domain {extra[:3]}")
        return cls(domain, codomain, tuple(tuple(assignment[p]) for p in domain.ordered))

    @classmethod
    def from_function(cls, domain: DigitalImage, codomain: DigitalImage, fn: Callable) -> "DigitalMap":
        return cls(domain, codomain, tuple(tuple(fn(p)) for p in domain.ordered))

    def __call__(self, p: Point) -> Point:
        return self.values[self.domain.index[p]]

    def items(self):
        return zip(self.domain.ordered, self.values)

    def as_dict(self) -> dict:
        return dict(self.items())

    def __eq__(self, other):
        if not isinstance(other, DigitalMap):
            return NotImplemented
        return (self.values == other.values and self.domain == other.domain
                and self.codomain == other.codomain)

    def __hash__(self):
        return self._hash

    @cached_property
    def _hash(self) -> int:
        return hash((self.domain, self.codomain, self.values))

    def __repr__(self) -> str:
        pairs = ", ".join(f"{p}->{v}" for p, v in list(self.items())[:4])
        more = ", ..." if len(self.values) > 4 else ""
        return f"DigitalMap({pairs}{more})"

    @cached_property
    def image_points(self) -> frozenset:
        return frozenset(self.values)

    def same_values(self, other: "DigitalMap") -> bool:
        """Pointwise equality on a shared domain, ignoring the codomain."""
        return self.domain == other.domain and self.values == other.values


def identity(X: DigitalImage) -> DigitalMap:
    return DigitalMap(X, X, X.ordered)


def constant(X: DigitalImage, Y: DigitalImage, p: Point) -> DigitalMap:
    p = tuple(p)
    return DigitalMap(X, Y, (p,) * len(X))


def inclusion(A: DigitalImage, X: DigitalImage) -> DigitalMap:
    if not A.issubimage(X):
        raise NotASubimage("inclusion needs a subimage with the same adjacency")
    return DigitalMap(A, X, A.ordered)


def check_continuity_edges(f: DigitalMap) -> bool:
    """Adjacent points go to equal or adjacent points."""
    cod = f.codomain.closed_nbhd
    idx = f.domain.index
    vals = f.values
    for p, q in f.domain.edges():
        a, b = vals[idx[p]], vals[idx[q]]
        if b not in cod[a]:
            return False
    return True


def first_discontinuity(f: DigitalMap) -> tuple[Point, Point] | None:
    cod = f.codomain.closed_nbhd
    for p, q in f.domain.edges():
        if f(q) not in cod[f(p)]:
            return (p, q)
    return None


def connected_subsets(X: DigitalImage, cap: int = DEFAULT_SUBSET_DOMAIN_CAP) -> list[frozenset]:
    """Every nonempty connected subset of ``X``.

    Subsets are grown one adjacent point at a time from singletons; a subset
    is only extended by points larger than its least point, so each connected
    set is produced from exactly one root.
    """
    if len(X) > cap:
        raise BudgetExceeded(
            f"connected-subset enumeration is capped at {cap} domain points, got {len(X)}")
    adj = X.adjacency_lists
    out = []
    for root in X.ordered:
        start = frozenset([root])
        seen = {start}
        stack = [start]
        while stack:
            s = stack.pop()
            out.append(s)
            for p in s:
                for q in adj[p]:
                    if q > root and q not in s:
                        t = s | {q}
                        if t not in seen:
                            seen.add(t)
                            stack.append(t)
    return out


def check_continuity_connected(f: DigitalMap, cap: int = DEFAULT_SUBSET_DOMAIN_CAP) -> bool:
    """Images of all connected subsets are connected (exhaustive; capped)."""
    kind = f.codomain.adjacency
    for s in connected_subsets(f.domain, cap):
        if not points_connected({f(p) for p in s}, kind):
            return False
    return True


def compose(g: DigitalMap, f: DigitalMap) -> DigitalMap:
    """``g o f``."""
    if f.codomain != g.domain:
        raise DigitopError("cannot compose: codomain of f differs from domain of g")
    gidx = g.domain.index
    return DigitalMap(f.domain, g.codomain, tuple(g.values[gidx[v]] for v in f.values))


def inverse(f: DigitalMap) -> DigitalMap:
    if len(f.image_points) != len(f.values) or len(f.values) != len(f.codomain):
        raise DigitopError("map is not a bijection")
    return DigitalMap.from_dict(f.codomain, f.domain, {v: p for p, v in f.items()})


def check_isomorphism(f: DigitalMap) -> bool:
    if len(f.domain) != len(f.codomain) or len(f.image_points) != len(f.values):
        return False
    return check_continuity_edges(f) and check_continuity_edges(inverse(f))


def restrict(f: DigitalMap, A: DigitalImage) -> DigitalMap:
    if not A.issubimage(f.domain):
        raise NotASubimage("restriction domain is not a subimage of the map's domain")
    return DigitalMap(A, f.codomain, tuple(f(p) for p in A.ordered))


def corestrict(f: DigitalMap, B: DigitalImage) -> DigitalMap:
    """Same values, viewed as a map into ``B`` (which must contain them)."""
    if B.adjacency != f.codomain.adjacency:
        raise NotASubimage("new codomain uses a different adjacency")
    return DigitalMap(f.domain, B, f.values)


def glue(parts: Iterable[DigitalMap], domain: DigitalImage, codomain: DigitalImage) -> DigitalMap:
    """Union of maps on overlapping domains; they must agree on overlaps."""
    assignment: dict = {}
    for m in parts:
        for p, v in m.items():
            if assignment.setdefault(p, v) != v:
                raise DigitopError(f"maps disagree at {p}")
    return DigitalMap.from_dict(domain, codomain, assignment)
