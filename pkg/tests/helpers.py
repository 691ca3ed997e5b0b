"""Random generators shared by the test modules."""
from __future__ import annotations

import random
from collections import deque

from digitop.ecpath import ECPath
from digitop.homotopy import Homotopy
from digitop.lattice import DigitalImage
from digitop.maps import DigitalMap


def random_image(rng: random.Random, size: int, dim: int = 2, u: int = 1, box: int = 3,
                 connected: bool = False) -> DigitalImage:
    """``size`` distinct points from a small box; grown by adjacency when ``connected``."""
    if not connected:
        pool = [tuple(rng.randrange(box) for _ in range(dim)) for _ in range(size * 6)]
        pts = list(dict.fromkeys(pool))[:size]
        return DigitalImage.of(pts, u=u, dim=dim)
    X = DigitalImage.of([(0,) * dim], u=u, dim=dim)
    offs = X.adjacency.offsets
    pts = [(0,) * dim]
    seen = set(pts)
    while len(pts) < size:
        p = rng.choice(pts)
        q = tuple(a + b for a, b in zip(p, rng.choice(offs)))
        if q not in seen and all(0 <= c < box + 1 for c in q):
            seen.add(q)
            pts.append(q)
    return DigitalImage.of(pts, u=u, dim=dim)


def random_map(rng: random.Random, X: DigitalImage, Y: DigitalImage) -> DigitalMap:
    return DigitalMap(X, Y, tuple(rng.choice(Y.ordered) for _ in X.ordered))


def _backtrack(rng, X, Y, choices, fixed=None):
    order = X.ordered
    idx = X.index
    nb = Y.closed_nbhd
    earlier = [[idx[q] for q in X.adjacency_lists[p] if idx[q] < i] for i, p in enumerate(order)]
    assign = [None] * len(order)

    def rec(i):
        if i == len(order):
            return True
        opts = list(choices[i])
        rng.shuffle(opts)
        for v in opts:
            if all(assign[j] in nb[v] for j in earlier[i]):
                assign[i] = v
                if rec(i + 1):
                    return True
        return False

    if not rec(0):
        return None
    return DigitalMap(X, Y, tuple(assign))


def random_continuous_map(rng: random.Random, X: DigitalImage, Y: DigitalImage,
                          fixed: dict | None = None) -> DigitalMap:
    """Uniform-ish random continuous map; constant maps guarantee one exists."""
    choices = []
    for p in X.ordered:
        if fixed and p in fixed:
            choices.append([fixed[p]])
        else:
            choices.append(list(Y.ordered))
    return _backtrack(rng, X, Y, choices)


def random_step(rng: random.Random, f: DigitalMap, fixed: set = frozenset()) -> DigitalMap:
    """A random continuous map one homotopy step from ``f`` (``f`` itself qualifies)."""
    nb = f.codomain.closed_nbhd
    choices = [[v] if p in fixed else sorted(nb[v]) for p, v in f.items()]
    return _backtrack(rng, f.domain, f.codomain, choices)


def random_homotopy(rng: random.Random, X: DigitalImage, Y: DigitalImage, steps: int,
                    pointed_at=None) -> Homotopy:
    fixed = {}
    if pointed_at is not None:
        fixed = {pointed_at: rng.choice(Y.ordered)}
    f = random_continuous_map(rng, X, Y, fixed)
    layers = [f]
    for _ in range(steps):
        layers.append(random_step(rng, layers[-1], {pointed_at} if pointed_at is not None else set()))
    return Homotopy(tuple(layers), pointed_at)


def shortest_path(X: DigitalImage, a, b) -> list:
    prev = {a: None}
    q = deque([a])
    while q:
        p = q.popleft()
        if p == b:
            break
        for r in X.adjacency_lists[p]:
            if r not in prev:
                prev[r] = p
                q.append(r)
    out = [b]
    while out[-1] != a:
        out.append(prev[out[-1]])
    return out[::-1]


def random_loop(rng: random.Random, X: DigitalImage, base, steps: int) -> ECPath:
    """A random walk of ``steps`` moves (pauses allowed), closed by a shortest path home."""
    vals = [base]
    for _ in range(steps):
        vals.append(rng.choice(sorted(X.closed_nbhd[vals[-1]])))
    vals += shortest_path(X, vals[-1], base)[1:]
    return ECPath.from_values(vals, X)


def ring(n_side: int = 3) -> DigitalImage:
    """Boundary of an ``n_side x n_side`` square under c1 (8 points for 3)."""
    pts = [(i, j) for i in range(n_side) for j in range(n_side) if i in (0, n_side - 1) or j in (0, n_side - 1)]
    return DigitalImage.of(pts, u=1)


def ring_loop(X: DigitalImage) -> ECPath:
    """Once around the 3x3 ring, starting and ending at (0, 0)."""
    cyc = [(0, 0), (0, 1), (0, 2), (1, 2), (2, 2), (2, 1), (2, 0), (1, 0), (0, 0)]
    return ECPath.from_values(cyc, X)


def random_quadrant_tree(rng: random.Random, size: int, sign: int = 1) -> DigitalImage:
    """A c1 tree in Z^2 through the origin, inside the closed quadrant of ``sign``.

    Two such trees with opposite signs meet only at the origin and have no
    other adjacent pair.
    """
    offs = [(1, 0), (-1, 0), (0, 1), (0, -1)]
    pts = [(0, 0)]
    seen = {(0, 0)}
    for _ in range(size * 40):
        if len(pts) >= size:
            break
        p = rng.choice(pts)
        o = rng.choice(offs)
        q = (p[0] + o[0], p[1] + o[1])
        if q in seen or q[0] * sign < 0 or q[1] * sign < 0:
            continue
        if sum((q[0] + a, q[1] + b) in seen for a, b in offs) == 1:
            seen.add(q)
            pts.append(q)
    return DigitalImage.of(pts, u=1)


def bfs_eccentricity(X: DigitalImage, root) -> int:
    depth = {root: 0}
    q = deque([root])
    while q:
        p = q.popleft()
        for r in X.adjacency_lists[p]:
            if r not in depth:
                depth[r] = depth[p] + 1
                q.append(r)
    return max(depth.values())
