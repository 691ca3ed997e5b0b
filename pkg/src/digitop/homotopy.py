"""Finite-time homotopies: verification, bounded search, equivalence certificates."""
from __future__ import annotations

import os
from dataclasses import dataclass
from typing import Iterable, Sequence

from .errors import PASS, Check, DigitopError, EndpointMismatch, StateCapExceeded, fail
from .lattice import DigitalImage, Point
from .maps import (
    DigitalMap,
    check_continuity_edges,
    compose,
    constant,
    first_discontinuity,
    identity,
)

DEFAULT_STATE_CAP = 10**7


def state_cap(explicit: int | None = None) -> int:
    if explicit is not None:
        return explicit
    env = os.environ.get("DIGITOP_STATE_CAP")
    return int(env) if env else DEFAULT_STATE_CAP


@dataclass(frozen=True)
class Homotopy:
    """Layers ``F_0, ..., F_m`` of a homotopy ``X x [0, m]_Z -> Y``."""

    layers: tuple
    pointed_at: Point | None = None

    def __post_init__(self):
        object.__setattr__(self, "layers", tuple(self.layers))
        if not self.layers:
            raise DigitopError("a homotopy needs at least one layer")
        if self.pointed_at is not None:
            object.__setattr__(self, "pointed_at", tuple(self.pointed_at))

    @property
    def m(self) -> int:
        return len(self.layers) - 1

    @property
    def domain(self) -> DigitalImage:
        return self.layers[0].domain

    @property
    def codomain(self) -> DigitalImage:
        return self.layers[0].codomain

    @property
    def start(self) -> DigitalMap:
        return self.layers[0]

    @property
    def end(self) -> DigitalMap:
        return self.layers[-1]

    def track(self, x: Point) -> list[Point]:
        """The path ``t -> F(x, t)``."""
        return [layer(x) for layer in self.layers]


def constant_homotopy(f: DigitalMap, pointed_at: Point | None = None) -> Homotopy:
    return Homotopy((f,), pointed_at)


def step_ok(a: DigitalMap, b: DigitalMap) -> bool:
    """Every point moves to an equal or adjacent point between two layers."""
    nb = a.codomain.closed_nbhd
    return all(v in nb[u] for u, v in zip(a.values, b.values))


def check_homotopy(F: Homotopy, f: DigitalMap | None = None, g: DigitalMap | None = None) -> Check:
    X, Y = F.domain, F.codomain
    for t, layer in enumerate(F.layers):
        if layer.domain != X or layer.codomain != Y:
            return fail("layer domain/codomain", f"layer {t}")
        bad = first_discontinuity(layer)
        if bad is not None:
            return fail("layer continuity", f"layer {t} breaks edge {bad[0]}-{bad[1]}")
    nb = Y.closed_nbhd
    for t in range(F.m):
        for x, u, v in zip(X.ordered, F.layers[t].values, F.layers[t + 1].values):
            if v not in nb[u]:
                return fail("track continuity", f"x={x} jumps {u}->{v} at t={t}")
    if F.pointed_at is not None:
        x0 = F.pointed_at
        if x0 not in X:
            return fail("pointed", f"{x0} not in domain")
        y0 = F.layers[0](x0)
        for t, layer in enumerate(F.layers):
            if layer(x0) != y0:
                return fail("pointed", f"basepoint moves at t={t}")
    if f is not None and F.start != f:
        return fail("start endpoint")
    if g is not None and F.end != g:
        return fail("end endpoint")
    return PASS


def verify_homotopy(F: Homotopy, f: DigitalMap | None = None, g: DigitalMap | None = None) -> bool:
    return bool(check_homotopy(F, f, g))


def reverse_homotopy(F: Homotopy) -> Homotopy:
    return Homotopy(F.layers[::-1], F.pointed_at)


def concat_homotopies(F: Homotopy, G: Homotopy) -> Homotopy:
    if F.end != G.start:
        raise EndpointMismatch("last layer of F differs from first layer of G")
    pointed = F.pointed_at if F.pointed_at == G.pointed_at else None
    return Homotopy(F.layers + G.layers[1:], pointed)


def pad_homotopy(F: Homotopy, m: int) -> Homotopy:
    """Hold the final layer until time ``m``."""
    if m < F.m:
        raise DigitopError(f"cannot pad a length-{F.m} homotopy down to {m}")
    return Homotopy(F.layers + (F.end,) * (m - F.m), F.pointed_at)


def whisker(post: DigitalMap | None, F: Homotopy, pre: DigitalMap | None,
            pointed_at: Point | None = None) -> Homotopy:
    """Layers ``post o F_t o pre``; either side may be omitted."""
    layers = []
    for layer in F.layers:
        if pre is not None:
            layer = compose(layer, pre)
        if post is not None:
            layer = compose(post, layer)
        layers.append(layer)
    return Homotopy(tuple(layers), pointed_at)


def retarget(F: Homotopy, codomain: DigitalImage) -> Homotopy:
    """View every layer as a map into ``codomain``."""
    return Homotopy(tuple(DigitalMap(l.domain, codomain, l.values) for l in F.layers), F.pointed_at)


# -- bounded search ---------------------------------------------------------

@dataclass(frozen=True)
class Found:
    witness: Homotopy
    visited: int


@dataclass(frozen=True)
class NotWithinBudget:
    """Exhaustive: no witness with at most ``max_steps`` steps exists."""

    max_steps: int
    visited: int
    depth_reached: int


def _step_neighbors(X: DigitalImage, Y: DigitalImage, current: tuple, fixed: dict):
    """All continuous maps one homotopy step away from ``current``.

    ``current`` holds codomain points in domain order.  Values are assigned in
    lexicographic domain order with continuity checked against already
    assigned neighbors, so the output order is deterministic.
    """
    order = X.ordered
    idx = X.index
    nb = Y.closed_nbhd
    earlier = [[idx[q] for q in X.adjacency_lists[p] if idx[q] < i] for i, p in enumerate(order)]
    choices = []
    for i, p in enumerate(order):
        if i in fixed:
            choices.append((fixed[i],))
        else:
            choices.append(tuple(sorted(nb[current[i]])))
    n = len(order)
    out = []
    assign: list = [None] * n

    def rec(i):
        if i == n:
            out.append(tuple(assign))
            return
        for v in choices[i]:
            cn = nb[v]
            if all(assign[j] in cn for j in earlier[i]):
                assign[i] = v
                rec(i + 1)
        assign[i] = None

    rec(0)
    return out


def _bfs_maps(start: DigitalMap, targets: set, max_steps: int, pointed_at: Point | None, cap: int):
    X, Y = start.domain, start.codomain
    fixed = {}
    if pointed_at is not None:
        fixed[X.index[pointed_at]] = start(pointed_at)
    s0 = start.values
    parent = {s0: None}
    if s0 in targets:
        return s0, parent, 0
    frontier = [s0]
    depth = 0
    while frontier and depth < max_steps:
        depth += 1
        nxt = []
        for s in frontier:
            for t in _step_neighbors(X, Y, s, fixed):
                if t in parent:
                    continue
                parent[t] = s
                if len(parent) > cap:
                    raise StateCapExceeded(f"state cap reached: visited more than {cap} maps")
                if t in targets:
                    return t, parent, depth
                nxt.append(t)
        frontier = nxt
    return None, parent, depth


def _path_to(end, parent) -> list:
    chain = []
    s = end
    while s is not None:
        chain.append(s)
        s = parent[s]
    return chain[::-1]


def search_homotopy(f: DigitalMap, g: DigitalMap, max_steps: int, pointed_at: Point | None = None,
                    cap: int | None = None):
    """Breadth-first search for a shortest homotopy from ``f`` to ``g``.

    Returns ``Found`` with a verifying witness or ``NotWithinBudget``, which
    certifies that no homotopy of length ``<= max_steps`` exists (holding
    ``pointed_at`` fixed if given).
    """
    if f.domain != g.domain or f.codomain != g.codomain:
        raise DigitopError("f and g must share domain and codomain")
    if pointed_at is not None and f(pointed_at) != g(pointed_at):
        return NotWithinBudget(max_steps, 0, 0)
    hit, parent, depth = _bfs_maps(f, {g.values}, max_steps, pointed_at, state_cap(cap))
    if hit is None:
        return NotWithinBudget(max_steps, len(parent), depth)
    layers = tuple(DigitalMap(f.domain, f.codomain, v) for v in _path_to(hit, parent))
    return Found(Homotopy(layers, pointed_at), len(parent))


def search_contraction(X: DigitalImage, max_steps: int, pointed: bool = False, cap: int | None = None):
    """Search for a homotopy from the identity to some constant map.

    One BFS from the identity with every constant map as a target, so the
    witness found is a shortest contraction; ties go to the lexicographically
    first discovery.  With ``pointed`` the basepoint must be the constant value
    and stay fixed; every point is tried in order.
    """
    if not X.is_connected():
        raise DigitopError("contraction search needs a connected image")
    idX = identity(X)
    if not pointed:
        targets = {(p,) * len(X) for p in X.ordered}
        hit, parent, depth = _bfs_maps(idX, targets, max_steps, None, state_cap(cap))
        if hit is None:
            return NotWithinBudget(max_steps, len(parent), depth)
        layers = tuple(DigitalMap(X, X, v) for v in _path_to(hit, parent))
        return Found(Homotopy(layers), len(parent))
    visited = 0
    depth_reached = 0
    for p in X.ordered:
        res = search_homotopy(idX, constant(X, X, p), max_steps, pointed_at=p, cap=cap)
        visited += res.visited
        if isinstance(res, Found):
            return Found(res.witness, visited)
        depth_reached = max(depth_reached, res.depth_reached)
    return NotWithinBudget(max_steps, visited, depth_reached)


# -- equivalence certificates -----------------------------------------------

@dataclass(frozen=True)
class EquivalenceCertificate:
    """``f: X -> Y``, ``g: Y -> X`` with ``H: g o f ~ 1_X`` and ``K: f o g ~ 1_Y``.

    ``basepoints`` is ``(x0, y0)`` for a pointed certificate.
    """

    f: DigitalMap
    g: DigitalMap
    H: Homotopy
    K: Homotopy
    basepoints: tuple | None = None

    @property
    def X(self) -> DigitalImage:
        return self.f.domain

    @property
    def Y(self) -> DigitalImage:
        return self.f.codomain

    @property
    def pointed(self) -> bool:
        return self.basepoints is not None


def check_pair_structure(f: DigitalMap, g: DigitalMap, basepoints) -> Check:
    if f.codomain != g.domain or g.codomain != f.domain:
        return fail("maps", "f and g are not opposite maps")
    if not check_continuity_edges(f):
        return fail("f continuity")
    if not check_continuity_edges(g):
        return fail("g continuity")
    if basepoints is not None:
        x0, y0 = basepoints
        if x0 not in f.domain or y0 not in g.domain:
            return fail("basepoints", "basepoint outside its image")
        if f(x0) != y0 or g(y0) != x0:
            return fail("basepoints", "f and g must exchange the basepoints")
    return PASS


def check_equivalence(cert: EquivalenceCertificate) -> Check:
    f, g = cert.f, cert.g
    res = check_pair_structure(f, g, cert.basepoints)
    if not res:
        return res
    X, Y = cert.X, cert.Y
    if cert.H.start != compose(g, f) or cert.H.end != identity(X):
        return fail("H endpoints")
    if cert.K.start != compose(f, g) or cert.K.end != identity(Y):
        return fail("K endpoints")
    res = check_homotopy(cert.H)
    if not res:
        return res.prefixed("H")
    res = check_homotopy(cert.K)
    if not res:
        return res.prefixed("K")
    if cert.pointed:
        x0, y0 = cert.basepoints
        if cert.H.pointed_at != x0:
            return fail("H pointed", "H must hold x0 fixed")
        if cert.K.pointed_at != y0:
            return fail("K pointed", "K must hold y0 fixed")
    return PASS


def verify_equivalence(cert: EquivalenceCertificate) -> bool:
    return bool(check_equivalence(cert))


def identity_equivalence(X: DigitalImage, basepoint: Point | None = None) -> EquivalenceCertificate:
    i = identity(X)
    bp = None if basepoint is None else (tuple(basepoint), tuple(basepoint))
    return EquivalenceCertificate(i, i, Homotopy((i,), basepoint), Homotopy((i,), basepoint), bp)


def swap_equivalence(cert: EquivalenceCertificate) -> EquivalenceCertificate:
    bp = None if cert.basepoints is None else cert.basepoints[::-1]
    return EquivalenceCertificate(cert.g, cert.f, cert.K, cert.H, bp)


def homotopy_from_tracks(X: DigitalImage, Y: DigitalImage, tracks: dict, pointed_at=None) -> Homotopy:
    """Build layers from per-point tracks, padding short tracks with their last value."""
    m = max(len(tr) for tr in tracks.values()) - 1
    layers = []
    for t in range(m + 1):
        layers.append(DigitalMap(X, Y, tuple(
            tracks[p][min(t, len(tracks[p]) - 1)] for p in X.ordered)))
    return Homotopy(tuple(layers), pointed_at)


def layers_equal(a: Sequence[DigitalMap], b: Iterable[DigitalMap]) -> bool:
    return tuple(a) == tuple(b)
