"""l-homotopies (time N*) and long homotopies (time Z) on finite domains.

Both are stored on a finite window of layers plus per-point bounds after
which the point's track is constant.  Outside the window a long homotopy
repeats its first layer (going back) or its last layer (going forward).
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Mapping, Sequence

from .errors import PASS, Check, DigitopError, fail
from .homotopy import Homotopy, check_pair_structure, step_ok
from .lattice import DigitalImage, Point
from .maps import DigitalMap, compose, first_discontinuity, identity


def _bounds(d: Mapping, X: DigitalImage) -> dict:
    out = {tuple(p): int(n) for p, n in d.items()}
    if set(out) != set(X.points):
        raise DigitopError("bounds must cover the domain exactly")
    if any(n < 0 for n in out.values()):
        raise DigitopError("bounds must be nonnegative")
    return out


def _check_layers(layers: Sequence[DigitalMap], t0: int) -> Check:
    X, Y = layers[0].domain, layers[0].codomain
    for i, layer in enumerate(layers):
        if layer.domain != X or layer.codomain != Y:
            return fail("layer domain/codomain", f"t={t0 + i}")
        bad = first_discontinuity(layer)
        if bad is not None:
            return fail("layer continuity", f"t={t0 + i} breaks edge {bad[0]}-{bad[1]}")
    for i in range(len(layers) - 1):
        if not step_ok(layers[i], layers[i + 1]):
            nb = Y.closed_nbhd
            x = next(x for x, u, v in zip(X.ordered, layers[i].values, layers[i + 1].values)
                     if v not in nb[u])
            return fail("track continuity", f"x={x}, t={t0 + i}")
    return PASS


def _check_pointed(layers, pointed_at, t0: int) -> Check:
    if pointed_at is None:
        return PASS
    if pointed_at not in layers[0].domain:
        return fail("pointed", f"{pointed_at} not in domain")
    y0 = layers[0](pointed_at)
    for i, layer in enumerate(layers):
        if layer(pointed_at) != y0:
            return fail("pointed", f"basepoint moves at t={t0 + i}")
    return PASS


@dataclass(frozen=True)
class LHomotopy:
    """Layers at times ``0..T``; ``stab[x]`` is a time after which x no longer moves."""

    layers: tuple
    stab: Mapping
    pointed_at: Point | None = None

    def __post_init__(self):
        object.__setattr__(self, "layers", tuple(self.layers))
        object.__setattr__(self, "stab", _bounds(self.stab, self.layers[0].domain))
        if self.pointed_at is not None:
            object.__setattr__(self, "pointed_at", tuple(self.pointed_at))

    @property
    def T(self) -> int:
        return len(self.layers) - 1

    @property
    def domain(self) -> DigitalImage:
        return self.layers[0].domain

    @property
    def codomain(self) -> DigitalImage:
        return self.layers[0].codomain

    def layer(self, t: int) -> DigitalMap:
        if t < 0:
            raise DigitopError("l-homotopies live on nonnegative times")
        return self.layers[min(t, self.T)]

    def __call__(self, x: Point, t: int) -> Point:
        return self.layer(t)(x)


def check_l_homotopy(F: LHomotopy, f: DigitalMap | None = None, g: DigitalMap | None = None) -> Check:
    res = _check_layers(F.layers, 0)
    if not res:
        return res
    end = F.layers[-1]
    for x, n in sorted(F.stab.items()):
        if n > F.T:
            return fail("stabilization bound", f"x={x}: bound {n} exceeds window {F.T}")
        gx = end(x)
        for t in range(n, F.T + 1):
            if F.layers[t](x) != gx:
                return fail("stabilization bound", f"x={x} still moves at t={t} >= {n}")
    res = _check_pointed(F.layers, F.pointed_at, 0)
    if not res:
        return res
    if f is not None and F.layers[0] != f:
        return fail("start endpoint")
    if g is not None and end != g:
        return fail("end endpoint")
    return PASS


def verify_l_homotopy(F: LHomotopy, f=None, g=None) -> bool:
    return bool(check_l_homotopy(F, f, g))


def minimal_stab(layers: Sequence[DigitalMap]) -> dict:
    """Least time after which each point's track is constant."""
    X = layers[0].domain
    out = {}
    T = len(layers) - 1
    for i, x in enumerate(X.ordered):
        n = T
        last = layers[T].values[i]
        while n > 0 and layers[n - 1].values[i] == last:
            n -= 1
        out[x] = n
    return out


def finite_to_l(F: Homotopy) -> LHomotopy:
    """``H(x, t) = F(x, min(m, t))``."""
    return LHomotopy(F.layers, minimal_stab(F.layers), F.pointed_at)


@dataclass(frozen=True)
class LongHomotopy:
    """Layers at times ``t_min..t_min + len(layers) - 1`` with ``t_min = -T``.

    ``bounds[x]`` is N with ``t <= -N => F(x,t) = f(x)`` and ``t >= N => F(x,t) = g(x)``.
    """

    layers: tuple
    bounds: Mapping
    pointed_at: Point | None = None

    def __post_init__(self):
        object.__setattr__(self, "layers", tuple(self.layers))
        if len(self.layers) % 2 != 1:
            raise DigitopError("a long homotopy window -T..T has an odd number of layers")
        object.__setattr__(self, "bounds", _bounds(self.bounds, self.layers[0].domain))
        if self.pointed_at is not None:
            object.__setattr__(self, "pointed_at", tuple(self.pointed_at))

    @property
    def T(self) -> int:
        return (len(self.layers) - 1) // 2

    @property
    def t_min(self) -> int:
        return -self.T

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

    def layer(self, t: int) -> DigitalMap:
        T = self.T
        return self.layers[max(-T, min(T, t)) + T]

    def __call__(self, x: Point, t: int) -> Point:
        return self.layer(t)(x)

    def widened(self, T: int) -> "LongHomotopy":
        """The same function stored on the window ``-T..T``."""
        if T < self.T:
            raise DigitopError("cannot shrink the window")
        return LongHomotopy(tuple(self.layer(t) for t in range(-T, T + 1)), self.bounds, self.pointed_at)


def check_long_homotopy(F: LongHomotopy, f: DigitalMap | None = None, g: DigitalMap | None = None) -> Check:
    T = F.T
    res = _check_layers(F.layers, -T)
    if not res:
        return res
    first, last = F.start, F.end
    for x, n in sorted(F.bounds.items()):
        if n > T:
            return fail("bounds", f"x={x}: bound {n} exceeds window {T}")
        fx, gx = first(x), last(x)
        for t in range(-T, -n + 1):
            if F.layer(t)(x) != fx:
                return fail("bounds", f"x={x} differs from f(x) at t={t} <= -{n}")
        for t in range(n, T + 1):
            if F.layer(t)(x) != gx:
                return fail("bounds", f"x={x} differs from g(x) at t={t} >= {n}")
    res = _check_pointed(F.layers, F.pointed_at, -T)
    if not res:
        return res
    if f is not None and first != f:
        return fail("start endpoint")
    if g is not None and last != g:
        return fail("end endpoint")
    return PASS


def verify_long_homotopy(F: LongHomotopy, f=None, g=None) -> bool:
    return bool(check_long_homotopy(F, f, g))


def constant_long(f: DigitalMap, pointed_at: Point | None = None) -> LongHomotopy:
    return LongHomotopy((f,), {x: 0 for x in f.domain.ordered}, pointed_at)


def l_to_long(F: LHomotopy) -> LongHomotopy:
    """Extend to negative times by holding layer 0."""
    T = F.T
    layers = (F.layers[0],) * T + F.layers
    return LongHomotopy(layers, F.stab, F.pointed_at)


def finite_to_long(F: Homotopy) -> LongHomotopy:
    return l_to_long(finite_to_l(F))


def long_to_finite(F: LongHomotopy) -> Homotopy:
    """Restrict to the smallest time range outside which every track is constant.

    With ``M = max N_x`` every layer at ``t <= -M`` is ``f`` and every layer
    at ``t >= M`` is ``g``; leading copies of ``f`` and trailing copies of
    ``g`` are trimmed further.
    """
    M = max(F.bounds.values(), default=0)
    layers = [F.layer(t) for t in range(-M, M + 1)]
    f, g = layers[0], layers[-1]
    lo = 0
    while lo + 1 < len(layers) and layers[lo + 1] == f:
        lo += 1
    hi = len(layers) - 1
    while hi - 1 > lo and layers[hi - 1] == g:
        hi -= 1
    return Homotopy(tuple(layers[lo:hi + 1]), F.pointed_at)


def long_to_l(F: LongHomotopy) -> LHomotopy:
    """Only defined when every layer at ``t <= 0`` equals ``f``; then it is the t >= 0 part."""
    for t in range(-F.T, 1):
        if F.layer(t) != F.start:
            raise DigitopError("long homotopy moves at non-positive times")
    layers = F.layers[F.T:]
    return LHomotopy(layers, {x: min(n, F.T) for x, n in F.bounds.items()}, F.pointed_at)


def reverse_long(F: LongHomotopy) -> LongHomotopy:
    """``F'(x, t) = F(x, -t)``."""
    return LongHomotopy(F.layers[::-1], F.bounds, F.pointed_at)


def shift_constant_target(H: LongHomotopy, d: Point) -> LongHomotopy:
    """Turn a long homotopy ending at the constant ``c'`` into one ending at ``d``.

    ``d`` must equal or be adjacent to ``c'``.  With ``N'_x`` the largest bound
    over x and its neighbors, the new homotopy agrees with H up to time
    ``N'_x`` and sits at ``d`` afterwards.
    """
    X, Y = H.domain, H.codomain
    d = tuple(d)
    targets = set(H.end.values)
    if len(targets) != 1:
        raise DigitopError("the homotopy does not end at a constant map")
    c_prime = targets.pop()
    if d not in Y.closed_nbhd[c_prime]:
        raise DigitopError(f"{d} is neither equal nor adjacent to {c_prime}")
    N = H.bounds
    N_prime = {x: max([N[x]] + [N[q] for q in X.adjacency_lists[x]]) for x in X.ordered}
    T = max(N_prime.values(), default=0) + 1
    layers = []
    for t in range(-T, T + 1):
        layer = H.layer(t)
        layers.append(DigitalMap(X, Y, tuple(
            v if t <= N_prime[x] else d for x, v in zip(X.ordered, layer.values))))
    bounds = {x: N_prime[x] + 1 for x in X.ordered}
    pointed = H.pointed_at
    if pointed is not None and any(l(pointed) != layers[0](pointed) for l in layers):
        pointed = None
    return LongHomotopy(tuple(layers), bounds, pointed)


def neighbor_max_bounds(H: LongHomotopy) -> dict:
    X = H.domain
    return {x: max([H.bounds[x]] + [H.bounds[q] for q in X.adjacency_lists[x]]) for x in X.ordered}


def shift_along_path(H: LongHomotopy, path: Sequence[Point]) -> LongHomotopy:
    """Iterate :func:`shift_constant_target` along a path starting at the current constant."""
    for p in path[1:]:
        H = shift_constant_target(H, p)
    return H


# -- long homotopy equivalence ----------------------------------------------

@dataclass(frozen=True)
class LongEquivalenceCertificate:
    f: DigitalMap
    g: DigitalMap
    H: LongHomotopy  # g o f  ->  1_X
    K: LongHomotopy  # f o g  ->  1_Y
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


def check_long_equivalence(cert: LongEquivalenceCertificate) -> Check:
    res = check_pair_structure(cert.f, cert.g, cert.basepoints)
    if not res:
        return res
    if cert.H.start != compose(cert.g, cert.f) or cert.H.end != identity(cert.X):
        return fail("H endpoints")
    if cert.K.start != compose(cert.f, cert.g) or cert.K.end != identity(cert.Y):
        return fail("K endpoints")
    res = check_long_homotopy(cert.H)
    if not res:
        return res.prefixed("H")
    res = check_long_homotopy(cert.K)
    if not res:
        return res.prefixed("K")
    if cert.pointed:
        x0, y0 = cert.basepoints
        if cert.H.pointed_at != x0:
            return fail("H pointed")
        if cert.K.pointed_at != y0:
            return fail("K pointed")
    return PASS


def verify_long_equivalence(cert: LongEquivalenceCertificate) -> bool:
    return bool(check_long_equivalence(cert))


def swap_long_equivalence(cert: LongEquivalenceCertificate) -> LongEquivalenceCertificate:
    bp = None if cert.basepoints is None else cert.basepoints[::-1]
    return LongEquivalenceCertificate(cert.g, cert.f, cert.K, cert.H, bp)


def long_from_equivalence(cert) -> LongEquivalenceCertificate:
    """Lift a finite equivalence certificate."""
    return LongEquivalenceCertificate(cert.f, cert.g, finite_to_long(cert.H), finite_to_long(cert.K),
                                      cert.basepoints)


def compose_long_equiv_through_point(cert1: LongEquivalenceCertificate,
                                     cert2: LongEquivalenceCertificate) -> LongEquivalenceCertificate:
    """From ``X ~L {a}`` and ``{a} ~L Y`` build ``X ~L Y``.

    The composite maps are the constants at the basepoints and the original
    H and K are reused unchanged: with a one-point middle, ``g o f`` is
    already the constant map at ``x0``.
    """
    A = cert1.Y
    if len(A) != 1:
        raise DigitopError("the middle image must be a single point")
    if cert2.X != A:
        raise DigitopError("certificates do not share the middle image")
    X, Y = cert1.X, cert2.Y
    (a,) = A.ordered
    x0 = cert1.g(a)
    y0 = cert2.f(a)
    phi = DigitalMap(X, Y, (y0,) * len(X))
    psi = DigitalMap(Y, X, (x0,) * len(Y))
    bp = None
    if cert1.pointed and cert2.pointed:
        bp = (cert1.basepoints[0], cert2.basepoints[1])
    return LongEquivalenceCertificate(phi, psi, cert1.H, cert2.K, bp)
