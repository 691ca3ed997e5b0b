"""Eventually constant paths and loops, EC homotopies, budgeted loop-class checks."""
from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

from .errors import PASS, Check, DigitopError, EndpointMismatch, StateCapExceeded, fail
from .homotopy import state_cap
from .lattice import DigitalImage, Point
from .maps import DigitalMap


@dataclass(frozen=True)
class ECPath:
    """``n -> prefix[n]`` for ``n < N`` and ``n -> tail`` afterwards.

    Instances are always canonical: the last prefix value differs from the
    tail, so ``len(prefix)`` is the stabilization index.
    """

    prefix: tuple
    tail: Point
    image: DigitalImage

    def __post_init__(self):
        prefix = [tuple(p) for p in self.prefix]
        tail = tuple(self.tail)
        while prefix and prefix[-1] == tail:
            prefix.pop()
        object.__setattr__(self, "prefix", tuple(prefix))
        object.__setattr__(self, "tail", tail)
        seq = self.prefix + (tail,)
        for p in seq:
            if p not in self.image:
                raise DigitopError(f"path value {p} lies outside the image")
        nb = self.image.closed_nbhd
        for n in range(len(seq) - 1):
            if seq[n + 1] not in nb[seq[n]]:
                raise DigitopError(f"path jumps from {seq[n]} to {seq[n + 1]} at n={n}")

    @classmethod
    def from_values(cls, values: Sequence, image: DigitalImage) -> "ECPath":
        """Path taking ``values`` at 0, 1, ... and the last value forever after."""
        values = [tuple(v) for v in values]
        return cls(tuple(values[:-1]), values[-1], image)

    @classmethod
    def constant(cls, p: Point, image: DigitalImage) -> "ECPath":
        return cls((), p, image)

    def __call__(self, n: int) -> Point:
        return self.prefix[n] if n < len(self.prefix) else self.tail

    @property
    def N(self) -> int:
        return len(self.prefix)

    @property
    def start(self) -> Point:
        return self(0)

    @property
    def is_loop(self) -> bool:
        return self.start == self.tail

    def values(self, horizon: int) -> tuple:
        """Values at ``0..horizon`` inclusive."""
        return tuple(self(n) for n in range(horizon + 1))

    @property
    def support(self) -> frozenset:
        return frozenset(self.prefix) | {self.tail}


def stabilization_index(f: ECPath) -> int:
    return f.N


def concat(f0: ECPath, f1: ECPath) -> ECPath:
    """``f0 * f1``: follow f0 until it stabilizes, then f1."""
    if f0.image != f1.image:
        raise DigitopError("paths live in different images")
    if f0.tail != f1.start:
        raise EndpointMismatch(f"f0 ends at {f0.tail}, f1 starts at {f1.start}")
    return ECPath(f0.prefix + f1.prefix, f1.tail, f0.image)


def inverse(f: ECPath) -> ECPath:
    if not f.is_loop:
        raise DigitopError("only loops have inverses")
    N = f.N
    return ECPath.from_values([f(N - n) for n in range(N + 1)], f.image)


def pi1_identity(basepoint: Point, image: DigitalImage) -> ECPath:
    return ECPath.constant(basepoint, image)


def pi1_multiply(f: ECPath, g: ECPath) -> ECPath:
    if not (f.is_loop and g.is_loop):
        raise DigitopError("pi1_multiply needs loops")
    if f.start != g.start:
        raise EndpointMismatch("loops have different basepoints")
    return concat(f, g)


def pi1_inverse(f: ECPath) -> ECPath:
    return inverse(f)


def push_loop(h: DigitalMap, L: ECPath) -> ECPath:
    """``h o L``, re-canonicalized."""
    if L.image != h.domain:
        raise DigitopError("the path does not live in the map's domain")
    return ECPath(tuple(h(p) for p in L.prefix), h(L.tail), h.codomain)


# -- EC homotopies ----------------------------------------------------------

@dataclass(frozen=True)
class ECHomotopy:
    """Rows ``H_0, ..., H_k``; each row is an EC path."""

    rows: tuple
    endpoints_fixed: bool = True

    def __post_init__(self):
        object.__setattr__(self, "rows", tuple(self.rows))
        if not self.rows:
            raise DigitopError("an EC homotopy needs at least one row")

    @property
    def k(self) -> int:
        return len(self.rows) - 1


def check_ec_homotopy(H: ECHomotopy, f: ECPath | None = None, g: ECPath | None = None) -> Check:
    image = H.rows[0].image
    if any(r.image != image for r in H.rows):
        return fail("rows live in different images")
    horizon = max(r.N for r in H.rows)
    nb = image.closed_nbhd
    for s in range(H.k):
        a, b = H.rows[s], H.rows[s + 1]
        for n in range(horizon + 1):
            if b(n) not in nb[a(n)]:
                return fail("column adjacency", f"cell (s={s}, n={n})")
    if H.endpoints_fixed:
        first = H.rows[0]
        for s, r in enumerate(H.rows):
            if r.start != first.start:
                return fail("endpoints fixed", f"row {s} moves the start point")
            if r.tail != first.tail:
                return fail("endpoints fixed", f"row {s} moves the end point")
    if f is not None and H.rows[0] != f:
        return fail("first row")
    if g is not None and H.rows[-1] != g:
        return fail("last row")
    return PASS


def verify_ec_homotopy(H: ECHomotopy, f: ECPath | None = None, g: ECPath | None = None) -> bool:
    return bool(check_ec_homotopy(H, f, g))


@dataclass(frozen=True)
class Equal:
    witness: ECHomotopy
    visited: int


@dataclass(frozen=True)
class Unknown:
    """No endpoint-fixed EC homotopy with at most ``rows`` steps and horizon ``horizon``."""

    rows: int
    horizon: int
    visited: int


def default_budget(f: ECPath, g: ECPath | None = None) -> tuple[int, int]:
    N = max(f.N, g.N if g is not None else 0)
    return 8, 2 * N + 4


def loops_equal_within_budget(f: ECPath, g: ECPath, budget: tuple[int, int] | None = None,
                              cap: int | None = None):
    """Semi-decide ``[f] = [g]`` with at most ``rows`` homotopy steps.

    The homotopy is a grid ``H(s, n)`` for ``s <= rows`` and ``n <= horizon``
    with ``H(0, .) = f``, ``H(rows, .) = g``, the basepoint down columns 0 and
    ``horizon``, and equal-or-adjacent values along rows and columns.  The grid
    is filled one column at a time by depth-first search; column states that
    cannot be completed are memoized, so an ``Unknown`` answer means every
    column state was exhausted.
    """
    if not (f.is_loop and g.is_loop):
        raise DigitopError("both paths must be loops")
    if f.image != g.image:
        raise DigitopError("loops live in different images")
    if f.start != g.start:
        raise EndpointMismatch("loops have different basepoints")
    rows, horizon = budget if budget is not None else default_budget(f, g)
    if rows < 0 or horizon < max(f.N, g.N):
        raise DigitopError(f"horizon {horizon} is shorter than the loops being compared")
    cap = state_cap(cap)
    if f == g:
        return Equal(ECHomotopy((f,)), 1)
    if rows == 0:
        return Unknown(rows, horizon, 0)

    X = f.image
    nb = X.closed_nbhd
    dist = X.distance_table
    x0 = f.start
    top = f.values(horizon)
    bottom = g.values(horizon)
    k = rows
    pair_cache: dict = {}

    def allowed(a, b):
        key = (a, b)
        got = pair_cache.get(key)
        if got is None:
            got = tuple(sorted(nb[a] & nb[b]))
            pair_cache[key] = got
        return got

    def successors(col, n):
        # columns at n+1 compatible with column ``col`` at n
        a, b = top[n + 1], bottom[n + 1]
        if a not in nb[col[0]] or b not in nb[col[k]]:
            return
        dist_b = dist[b]
        out = [a]

        def rec(i):
            if i == k:
                if b in nb[out[-1]]:
                    yield tuple(out) + (b,)
                return
            cands = allowed(col[i], out[-1])
            # rank candidates by how close they already are to the target row
            for v in sorted(cands, key=lambda p: (dist_b.get(p, 1 << 30), p)):
                if dist_b.get(v, 1 << 30) > k - i:
                    continue
                out.append(v)
                yield from rec(i + 1)
                out.pop()

        yield from rec(1)

    start = (x0,) * (k + 1)
    goal = (x0,) * (k + 1)
    dead: set = set()
    visited = 1
    stack = [(start, 0, successors(start, 0))]
    path = [start]
    while stack:
        col, n, it = stack[-1]
        if n == horizon:
            if col == goal:
                return Equal(_rows_from_columns(path, X), visited)
            dead.add((n, col))
            stack.pop()
            path.pop()
            continue
        advanced = False
        for nxt in it:
            if (n + 1, nxt) in dead:
                continue
            visited += 1
            if visited > cap:
                raise StateCapExceeded(f"state cap reached: visited more than {cap} column states")
            stack.append((nxt, n + 1, successors(nxt, n + 1) if n + 1 < horizon else iter(())))
            path.append(nxt)
            advanced = True
            break
        if not advanced:
            dead.add((n, col))
            stack.pop()
            path.pop()
    return Unknown(rows, horizon, visited)


def _rows_from_columns(columns: list, image: DigitalImage) -> ECHomotopy:
    k = len(columns[0]) - 1
    rows = tuple(ECPath.from_values([col[s] for col in columns], image) for s in range(k + 1))
    return ECHomotopy(rows, endpoints_fixed=True)
