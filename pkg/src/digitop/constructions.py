"""Built-in image families with explicit contractions, and certificate combinators.

Families: lattice cubes (coordinate-cycling contraction), trees (parent
contraction), the T-shaped image, wedges and Cartesian products.
"""
from __future__ import annotations

import itertools
import random
from dataclasses import dataclass
from typing import Mapping, Sequence

from .errors import DigitopError, DimensionMismatch
from .homotopy import (
    EquivalenceCertificate,
    Homotopy,
    constant_homotopy,
    pad_homotopy,
    reverse_homotopy,
)
from .lattice import AdjacencyKind, DigitalImage, Point
from .longhtpy import (
    LHomotopy,
    LongEquivalenceCertificate,
    LongHomotopy,
    compose_long_equiv_through_point,
    constant_long,
    finite_to_l,
    finite_to_long,
    l_to_long,
    minimal_stab,
    reverse_long,
    swap_long_equivalence,
)
from .maps import DigitalMap, constant, glue, identity, inclusion
from .realhtpy import RealEquivalenceCertificate, RealHomotopy
from .similarity import (
    Filtration,
    SimilarityCertificate,
    compose_through_finite,
    constant_filtration,
    identity_restrictions,
    swap_similarity,
)


# -- cubes and Z^n windows --------------------------------------------------

def cube(center: Sequence[int], r: int, u: int = 1) -> DigitalImage:
    """The box ``prod [c_i - r, c_i + r]`` under ``c_u``."""
    if r < 0:
        raise DigitopError("radius must be nonnegative")
    center = tuple(int(c) for c in center)
    pts = itertools.product(*(range(c - r, c + r + 1) for c in center))
    return DigitalImage.of(pts, u=u, dim=len(center))


def zn_window(n: int, r: int, u: int = 1) -> DigitalImage:
    return cube((0,) * n, r, u)


def _toward(z: Point, x: Point, q: int) -> Point:
    if z[q] > x[q]:
        return z[:q] + (z[q] - 1,) + z[q + 1:]
    if z[q] < x[q]:
        return z[:q] + (z[q] + 1,) + z[q + 1:]
    return z


def cube_contraction(center: Sequence[int], r: int, u: int = 1) -> LHomotopy:
    """l-homotopy on ``cube(center, r)`` from the identity to the constant at ``center``.

    At time ``t > 0`` coordinate ``t mod n`` moves one unit toward the
    center.  The window runs to ``n * r``, the largest stabilization time.
    """
    x = tuple(int(c) for c in center)
    n = len(x)
    Y = cube(x, r, u)
    T = n * r
    current = Y.ordered
    layers = [DigitalMap(Y, Y, current)]
    for t in range(1, T + 1):
        q = t % n
        current = tuple(_toward(z, x, q) for z in current)
        layers.append(DigitalMap(Y, Y, current))
    return LHomotopy(tuple(layers), minimal_stab(layers), x)


def _point_image(p: Point, like: DigitalImage) -> DigitalImage:
    return DigitalImage(frozenset([tuple(p)]), like.adjacency)


def cube_similarity(center: Sequence[int], J: int, u: int = 1) -> SimilarityCertificate:
    """``({x}, x) ≃^s (Z^n, x)`` to depth J with ``Y_j = cube(x, j)``."""
    x = tuple(int(c) for c in center)
    cubes = [cube(x, j, u) for j in range(1, J + 1)]
    P = _point_image(x, cubes[0])
    FX = constant_filtration(P, J)
    FY = Filtration(tuple(cubes), f"Z^{len(x)} windows")
    f = tuple(inclusion(P, Yj) for Yj in cubes)
    g = tuple(constant(Yj, P, x) for Yj in cubes)
    H = tuple(constant_homotopy(identity(P), x) for _ in cubes)
    K = []
    for j in range(1, J + 1):
        lh = cube_contraction(x, j, u)
        K.append(Homotopy(lh.layers[::-1], x))
    return SimilarityCertificate(FX, FY, f, g, H, tuple(K),
                                 identity_restrictions(f, x), identity_restrictions(g, x), (x, x))


def cube_long_certificate(center: Sequence[int], r: int, u: int = 1) -> LongEquivalenceCertificate:
    """``({x}, x) ≃^L (cube(x, r), x)`` from the cube's l-homotopy."""
    x = tuple(int(c) for c in center)
    lh = cube_contraction(x, r, u)
    Y = lh.domain
    P = _point_image(x, Y)
    f, g = inclusion(P, Y), constant(Y, P, x)
    return LongEquivalenceCertificate(f, g, constant_long(identity(P), x), reverse_long(l_to_long(lh)), (x, x))


def cube_equivalence(center: Sequence[int], r: int, u: int = 1) -> EquivalenceCertificate:
    """Plain pointed equivalence ``cube(x, r) ≃ {x}``."""
    x = tuple(int(c) for c in center)
    lh = cube_contraction(x, r, u)
    Y = lh.domain
    P = _point_image(x, Y)
    return EquivalenceCertificate(constant(Y, P, x), inclusion(P, Y),
                                  Homotopy(lh.layers[::-1], x), constant_homotopy(identity(P), x), (x, x))


# -- trees -------------------------------------------------------------------

@dataclass(frozen=True)
class TreeImage:
    image: DigitalImage
    parent: Mapping
    root: Point

    @property
    def depth_of(self) -> dict:
        return self.image.distances_from(self.root)

    @property
    def eccentricity(self) -> int:
        return max(self.depth_of.values())


def tree_from_image(X: DigitalImage, root: Sequence[int]) -> TreeImage:
    root = tuple(root)
    if root not in X:
        raise DigitopError(f"root {root} is not in the image")
    if not X.is_connected():
        raise DigitopError("a tree must be connected")
    if len(X.edges()) != len(X) - 1:
        raise DigitopError("the adjacency graph has a cycle")
    dist = X.distances_from(root)
    parent = {}
    for p in X.ordered:
        if p != root:
            parent[p] = next(q for q in X.adjacency_lists[p] if dist[q] == dist[p] - 1)
    return TreeImage(X, parent, root)


def random_tree(size: int, rng: random.Random, dim: int = 2, u: int = 1) -> TreeImage:
    """Grow a tree in ``Z^dim`` by adding points with exactly one existing neighbor."""
    kind = AdjacencyKind(dim, u)
    root = (0,) * dim
    pts = {root}
    order = [root]
    attempts = 0
    while len(pts) < size and attempts < 200 * size:
        attempts += 1
        p = rng.choice(order)
        off = rng.choice(kind.offsets)
        q = tuple(a + b for a, b in zip(p, off))
        if q in pts:
            continue
        touching = sum(1 for o in kind.offsets if tuple(a + b for a, b in zip(q, o)) in pts)
        if touching == 1:
            pts.add(q)
            order.append(q)
    return tree_from_image(DigitalImage(frozenset(pts), kind), root)


def tree_contraction(T: TreeImage) -> Homotopy:
    """``H(x, 0) = x`` and each later step moves to the parent until the root.

    The length is the root's eccentricity; the root stays fixed.
    """
    X = T.image
    current = X.ordered
    layers = [DigitalMap(X, X, current)]
    for _ in range(T.eccentricity):
        current = tuple(T.root if z == T.root else T.parent[z] for z in current)
        layers.append(DigitalMap(X, X, current))
    return Homotopy(tuple(layers), T.root)


def tree_l_homotopy(T: TreeImage) -> LHomotopy:
    return finite_to_l(tree_contraction(T))


def ball(T: TreeImage, j: int) -> DigitalImage:
    return T.image.subimage(p for p, d in T.depth_of.items() if d <= j)


def tree_similarity(T: TreeImage, J: int, whole_known: bool = True) -> SimilarityCertificate:
    """``(X, x0) ≃^s ({x0}, x0)`` with ``X_j`` the ball of radius j around the root.

    ``whole_known=False`` marks the tree as a window on a larger image, so no
    whole image is recorded for its filtration.
    """
    x0 = T.root
    levels = tuple(ball(T, j) for j in range(1, J + 1))
    P = _point_image(x0, T.image)
    FX = Filtration(levels, "tree balls", T.image if whole_known else None)
    FY = constant_filtration(P, J)
    f = tuple(constant(Xj, P, x0) for Xj in levels)
    g = tuple(inclusion(P, Xj) for Xj in levels)
    H = tuple(reverse_homotopy(tree_contraction(TreeImage(Xj, T.parent, x0))) for Xj in levels)
    K = tuple(constant_homotopy(identity(P), x0) for _ in levels)
    return SimilarityCertificate(FX, FY, f, g, H, K,
                                 identity_restrictions(f, x0), identity_restrictions(g, x0), (x0, x0))


def tree_long_certificate(T: TreeImage) -> LongEquivalenceCertificate:
    """``(X, x0) ≃^L ({x0}, x0)``."""
    x0 = T.root
    X = T.image
    P = _point_image(x0, X)
    H = reverse_long(finite_to_long(tree_contraction(T)))
    return LongEquivalenceCertificate(constant(X, P, x0), inclusion(P, X), H,
                                      constant_long(identity(P), x0), (x0, x0))


def tree_equivalence(T: TreeImage) -> EquivalenceCertificate:
    x0 = T.root
    X = T.image
    P = _point_image(x0, X)
    return EquivalenceCertificate(constant(X, P, x0), inclusion(P, X), reverse_homotopy(tree_contraction(T)),
                                  constant_homotopy(identity(P), x0), (x0, x0))


# -- the T-shaped image ------------------------------------------------------

def t_image(R: int) -> tuple[DigitalImage, DigitalImage]:
    """Radius-R windows of ``X = Z x {0}`` and ``Y = X ∪ {0} x N`` under ``c_1``."""
    if R < 0:
        raise DigitopError("radius must be nonnegative")
    xs = [(i, 0) for i in range(-R, R + 1)]
    X = DigitalImage.of(xs, u=1, dim=2)
    Y = DigitalImage.of(xs + [(0, j) for j in range(1, R + 1)], u=1, dim=2)
    return X, Y


def t_image_similarity(J: int) -> SimilarityCertificate:
    """``(X, 0) ≃^s (Y, 0)`` to depth J, composed through the one-point image."""
    X, Y = t_image(J)
    o = (0, 0)
    to_point = tree_similarity(tree_from_image(X, o), J, whole_known=False)
    from_point = swap_similarity(tree_similarity(tree_from_image(Y, o), J, whole_known=False))
    return compose_through_finite(to_point, from_point)


def t_image_long(R: int) -> LongEquivalenceCertificate:
    """``(X, 0) ≃^L (Y, 0)`` on radius-R windows, composed through the one-point image."""
    X, Y = t_image(R)
    o = (0, 0)
    c1 = tree_long_certificate(tree_from_image(X, o))
    c2 = swap_long_equivalence(tree_long_certificate(tree_from_image(Y, o)))
    return compose_long_equiv_through_point(c1, c2)


# -- wedges ------------------------------------------------------------------

@dataclass(frozen=True)
class WedgeImage:
    image: DigitalImage
    parts: tuple
    wedge_point: Point


def wedge(X1: DigitalImage, X2: DigitalImage) -> WedgeImage:
    """``X1 ∧ X2``; they must meet in one point with no other cross adjacency."""
    if X1.adjacency != X2.adjacency:
        raise DimensionMismatch("wedge parts must share the adjacency kind")
    common = X1.points & X2.points
    if len(common) != 1:
        raise DigitopError(f"parts must meet in exactly one point, they share {len(common)}")
    (x0,) = common
    kind = X1.adjacency
    rest2 = X2.points - {x0}
    for p in X1.points - {x0}:
        for off in kind.offsets:
            q = tuple(a + b for a, b in zip(p, off))
            if q in rest2:
                raise DigitopError(f"{p} and {q} are adjacent across the wedge")
    return WedgeImage(DigitalImage(X1.points | X2.points, kind), (X1, X2), x0)


def wedge_map(f1: DigitalMap, f2: DigitalMap) -> DigitalMap:
    X = wedge(f1.domain, f2.domain)
    Y = wedge(f1.codomain, f2.codomain)
    if f1(X.wedge_point) != Y.wedge_point or f2(X.wedge_point) != Y.wedge_point:
        raise DigitopError("both maps must send the wedge point to the wedge point")
    return glue([f1, f2], X.image, Y.image)


# -- aligning timelines ------------------------------------------------------

def _align_finite(hs):
    m = max(h.m for h in hs)
    return [pad_homotopy(h, m) for h in hs]


def _align_long(hs):
    T = max(h.T for h in hs)
    return [h.widened(T) for h in hs]


def _align_real(hs):
    qs = set()
    for h in hs:
        qs |= set(h.jumps)
    return [h.refine(qs) for h in hs]


def _combine(hs, combine, bounds_of, pointed_at):
    """Apply ``combine`` layer by layer to aligned homotopies of one shape."""
    h0 = hs[0]
    if isinstance(h0, Homotopy):
        hs = _align_finite(hs)
        layers = tuple(combine([h.layers[t] for h in hs]) for t in range(hs[0].m + 1))
        return Homotopy(layers, pointed_at)
    if isinstance(h0, LongHomotopy):
        hs = _align_long(hs)
        layers = tuple(combine([h.layers[t] for h in hs]) for t in range(len(hs[0].layers)))
        return LongHomotopy(layers, bounds_of(hs), pointed_at)
    if isinstance(h0, RealHomotopy):
        hs = _align_real(hs)
        k = len(hs[0].jumps)
        return RealHomotopy(
            hs[0].jumps, combine([h.at0 for h in hs]),
            tuple(combine([h.open_layers[i] for h in hs]) for i in range(k + 1)),
            tuple(combine([h.jump_layers[i] for h in hs]) for i in range(k)),
            combine([h.at1 for h in hs]), pointed_at)
    raise DigitopError(f"unsupported homotopy type {type(h0).__name__}")


def _kind(cert) -> str:
    for cls, name in ((EquivalenceCertificate, "plain"), (SimilarityCertificate, "similarity"),
                      (LongEquivalenceCertificate, "long"), (RealEquivalenceCertificate, "real")):
        if isinstance(cert, cls):
            return name
    raise DigitopError(f"not a certificate: {type(cert).__name__}")


# -- wedge certificates ------------------------------------------------------

def _wedge_homotopy(h1, h2, X: DigitalImage, Y: DigitalImage, pointed_at):
    def combine(maps):
        return glue(maps, X, Y)

    def bounds(hs):
        out = dict(hs[0].bounds)
        for x, n in hs[1].bounds.items():
            out[x] = max(out.get(x, 0), n)
        return out

    return _combine([h1, h2], combine, bounds, pointed_at)


def _wedge_levels(F1: Filtration, F2: Filtration, J: int) -> Filtration:
    levels = tuple(wedge(F1[j], F2[j]).image for j in range(1, J + 1))
    whole = None
    if F1.whole is not None and F2.whole is not None:
        whole = wedge(F1.whole, F2.whole).image
    return Filtration(levels, "wedge", whole)


def wedge_certificates(c1, c2):
    """Glue two pointed certificates of the same kind along their basepoints."""
    kind = _kind(c1)
    if _kind(c2) != kind:
        raise DigitopError("certificates must be of the same kind")
    if not (c1.pointed and c2.pointed) or c1.basepoints != c2.basepoints:
        raise DigitopError("wedge certificates need pointed inputs with the wedge points as basepoints")
    x0, y0 = c1.basepoints
    if kind == "similarity":
        J = min(c1.depth, c2.depth)
        FX = _wedge_levels(c1.FX, c2.FX, J)
        FY = _wedge_levels(c1.FY, c2.FY, J)
        f = tuple(wedge_map(c1.f[j], c2.f[j]) for j in range(J))
        g = tuple(wedge_map(c1.g[j], c2.g[j]) for j in range(J))
        H = tuple(_wedge_homotopy(c1.H[j], c2.H[j], FX[j + 1], FX[j + 1], x0) for j in range(J))
        K = tuple(_wedge_homotopy(c1.K[j], c2.K[j], FY[j + 1], FY[j + 1], y0) for j in range(J))
        Rf, Rg = {}, {}
        for w in range(1, J + 1):
            for v in range(1, w + 1):
                Rf[(v, w)] = _wedge_homotopy(c1.Rf[(v, w)], c2.Rf[(v, w)], FX[v], FY[v], x0)
                Rg[(v, w)] = _wedge_homotopy(c1.Rg[(v, w)], c2.Rg[(v, w)], FY[v], FX[v], y0)
        return SimilarityCertificate(FX, FY, f, g, H, K, Rf, Rg, (x0, y0))
    X = wedge(c1.X, c2.X).image
    Y = wedge(c1.Y, c2.Y).image
    f = wedge_map(c1.f, c2.f)
    g = wedge_map(c1.g, c2.g)
    H = _wedge_homotopy(c1.H, c2.H, X, X, x0)
    K = _wedge_homotopy(c1.K, c2.K, Y, Y, y0)
    cls = type(c1)
    return cls(f, g, H, K, (x0, y0))


# -- products ----------------------------------------------------------------

@dataclass(frozen=True)
class ProductImage:
    image: DigitalImage
    factors: tuple

    @property
    def dims(self) -> tuple:
        return tuple(F.adjacency.ambient_dim for F in self.factors)


def _require_maximal(X: DigitalImage) -> None:
    k = X.adjacency
    if k.u != k.ambient_dim:
        raise DigitopError(f"product factors must use c_n in Z^n, got c_{k.u} in Z^{k.ambient_dim}")


def product(factors: Sequence[DigitalImage]) -> ProductImage:
    """``prod X_i`` in ``Z^D`` under ``c_D``; each factor must use ``c_{n_i}``."""
    factors = tuple(factors)
    if not factors:
        raise DigitopError("a product needs at least one factor")
    for X in factors:
        _require_maximal(X)
    D = sum(X.adjacency.ambient_dim for X in factors)
    pts = (tuple(itertools.chain.from_iterable(ps)) for ps in itertools.product(*(X.ordered for X in factors)))
    return ProductImage(DigitalImage.of(pts, u=D, dim=D), factors)


def _split(p: Point, dims: Sequence[int]) -> list:
    out, i = [], 0
    for d in dims:
        out.append(p[i:i + d])
        i += d
    return out


def product_map(maps: Sequence[DigitalMap], domain: DigitalImage | None = None,
                codomain: DigitalImage | None = None) -> DigitalMap:
    dims = [m.domain.adjacency.ambient_dim for m in maps]
    if domain is None:
        domain = product([m.domain for m in maps]).image
    if codomain is None:
        codomain = product([m.codomain for m in maps]).image

    def fn(p):
        return tuple(itertools.chain.from_iterable(m(part) for m, part in zip(maps, _split(p, dims))))

    return DigitalMap.from_function(domain, codomain, fn)


def _product_homotopy(hs, X: DigitalImage, Y: DigitalImage, pointed_at):
    dims = [h.domain.adjacency.ambient_dim for h in hs]

    def combine(maps):
        return product_map(maps, X, Y)

    def bounds(aligned):
        return {p: max(h.bounds[part] for h, part in zip(aligned, _split(p, dims))) for p in X.ordered}

    return _combine(list(hs), combine, bounds, pointed_at)


def _product_point(pts) -> Point:
    return tuple(itertools.chain.from_iterable(pts))


def product_certificates(certs: Sequence):
    """Componentwise certificate for the product; timelines are aligned first.

    Finite homotopies are padded to the longest, long homotopies widened to a
    common window, and real homotopies refined to the union of their jumps.
    """
    certs = list(certs)
    if not certs:
        raise DigitopError("need at least one certificate")
    kind = _kind(certs[0])
    if any(_kind(c) != kind for c in certs):
        raise DigitopError("certificates must be of the same kind")
    pointed = [c.pointed for c in certs]
    if any(pointed) and not all(pointed):
        raise DigitopError("mix of pointed and unpointed certificates")
    bp = None
    x0 = y0 = None
    if all(pointed):
        x0 = _product_point(c.basepoints[0] for c in certs)
        y0 = _product_point(c.basepoints[1] for c in certs)
        bp = (x0, y0)
    if kind == "similarity":
        J = min(c.depth for c in certs)

        def levels(filts):
            lv = tuple(product([F[j] for F in filts]).image for j in range(1, J + 1))
            whole = None
            if all(F.whole is not None for F in filts):
                whole = product([F.whole for F in filts]).image
            return Filtration(lv, "product", whole)

        FX = levels([c.FX for c in certs])
        FY = levels([c.FY for c in certs])
        f = tuple(product_map([c.f[j] for c in certs], FX[j + 1], FY[j + 1]) for j in range(J))
        g = tuple(product_map([c.g[j] for c in certs], FY[j + 1], FX[j + 1]) for j in range(J))
        H = tuple(_product_homotopy([c.H[j] for c in certs], FX[j + 1], FX[j + 1], x0) for j in range(J))
        K = tuple(_product_homotopy([c.K[j] for c in certs], FY[j + 1], FY[j + 1], y0) for j in range(J))
        Rf, Rg = {}, {}
        for w in range(1, J + 1):
            for v in range(1, w + 1):
                Rf[(v, w)] = _product_homotopy([c.Rf[(v, w)] for c in certs], FX[v], FY[v], x0)
                Rg[(v, w)] = _product_homotopy([c.Rg[(v, w)] for c in certs], FY[v], FX[v], y0)
        return SimilarityCertificate(FX, FY, f, g, H, K, Rf, Rg, bp)
    X = product([c.X for c in certs]).image
    Y = product([c.Y for c in certs]).image
    f = product_map([c.f for c in certs], X, Y)
    g = product_map([c.g for c in certs], Y, X)
    H = _product_homotopy([c.H for c in certs], X, X, x0)
    K = _product_homotopy([c.K for c in certs], Y, Y, y0)
    return type(certs[0])(f, g, H, K, bp)


__all__ = [
    "cube", "zn_window", "cube_contraction", "cube_similarity", "cube_long_certificate", "cube_equivalence",
    "TreeImage", "tree_from_image", "random_tree", "tree_contraction", "tree_l_homotopy", "ball",
    "tree_similarity", "tree_long_certificate", "tree_equivalence",
    "t_image", "t_image_similarity", "t_image_long",
    "WedgeImage", "wedge", "wedge_map", "wedge_certificates",
    "ProductImage", "product", "product_map", "product_certificates",
]
