"""Real paths and real homotopies over [0, 1] with finitely many rational jumps."""
from __future__ import annotations

from bisect import bisect_left
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .errors import PASS, Check, DigitopError, EndpointMismatch, fail
from .homotopy import Homotopy, check_pair_structure
from .lattice import DigitalImage, Point
from .longhtpy import LongHomotopy, finite_to_long
from .maps import DigitalMap, compose, first_discontinuity, identity

HALF = Fraction(1, 2)


def _jumps(qs) -> tuple:
    out = tuple(Fraction(q) for q in qs)
    for a, b in zip(out, out[1:]):
        if not a < b:
            raise DigitopError("jump positions must be strictly increasing")
    if out and not (0 < out[0] and out[-1] < 1):
        raise DigitopError("interior jump positions must lie in (0, 1)")
    return out


@dataclass(frozen=True)
class RealPath:
    """A path ``[0, 1] -> X``, constant on the open gaps between breakpoints.

    ``open_values[i]`` is the value on the i-th gap; ``point_values`` holds the
    value at 0, at each breakpoint, and at 1.
    """

    image: DigitalImage
    jumps: tuple
    open_values: tuple
    point_values: tuple

    def __post_init__(self):
        object.__setattr__(self, "jumps", _jumps(self.jumps))
        object.__setattr__(self, "open_values", tuple(tuple(p) for p in self.open_values))
        object.__setattr__(self, "point_values", tuple(tuple(p) for p in self.point_values))
        k = len(self.jumps)
        if len(self.open_values) != k + 1 or len(self.point_values) != k + 2:
            raise DigitopError(f"{k} breakpoints need {k + 1} open values and {k + 2} point values")

    def __call__(self, t) -> Point:
        t = Fraction(t)
        if t == 0:
            return self.point_values[0]
        if t == 1:
            return self.point_values[-1]
        i = bisect_left(self.jumps, t)
        if i < len(self.jumps) and self.jumps[i] == t:
            return self.point_values[i + 1]
        return self.open_values[i]

    def jump_set(self) -> tuple:
        """Positions where the path actually changes, endpoints included."""
        out = []
        if self.point_values[0] != self.open_values[0]:
            out.append(Fraction(0))
        for i, q in enumerate(self.jumps):
            if self.open_values[i] != self.open_values[i + 1]:
                out.append(q)
        if self.point_values[-1] != self.open_values[-1]:
            out.append(Fraction(1))
        return tuple(out)


def check_real_path(p: RealPath) -> Check:
    X = p.image
    for v in p.open_values + p.point_values:
        if v not in X:
            return fail("values", f"{v} outside the image")
    nb = X.closed_nbhd
    if p.open_values[0] not in nb[p.point_values[0]]:
        return fail("start", "value near 0 is not equal or adjacent to f(0)")
    if p.open_values[-1] not in nb[p.point_values[-1]]:
        return fail("end", "value near 1 is not equal or adjacent to f(1)")
    for i in range(len(p.jumps)):
        a, b, v = p.open_values[i], p.open_values[i + 1], p.point_values[i + 1]
        if b not in nb[a]:
            return fail("jump adjacency", f"jump {i} at {p.jumps[i]}")
        if v != a and v != b:
            return fail("jump value", f"jump {i} at {p.jumps[i]}")
    return PASS


def verify_real_path(p: RealPath) -> bool:
    return bool(check_real_path(p))


@dataclass(frozen=True)
class RealHomotopy:
    """``F: X x [0, 1] -> Y`` constant in t on each gap of a global breakpoint set."""

    jumps: tuple
    at0: DigitalMap
    open_layers: tuple
    jump_layers: tuple
    at1: DigitalMap
    pointed_at: Point | None = None

    def __post_init__(self):
        object.__setattr__(self, "jumps", _jumps(self.jumps))
        object.__setattr__(self, "open_layers", tuple(self.open_layers))
        object.__setattr__(self, "jump_layers", tuple(self.jump_layers))
        k = len(self.jumps)
        if len(self.open_layers) != k + 1 or len(self.jump_layers) != k:
            raise DigitopError(f"{k} breakpoints need {k + 1} open layers and {k} jump layers")
        if self.pointed_at is not None:
            object.__setattr__(self, "pointed_at", tuple(self.pointed_at))

    @property
    def domain(self) -> DigitalImage:
        return self.at0.domain

    @property
    def codomain(self) -> DigitalImage:
        return self.at0.codomain

    def all_layers(self) -> list[tuple[str, DigitalMap]]:
        out = [("at 0", self.at0)]
        for i, q in enumerate(self.jumps):
            out.append((f"open {i}", self.open_layers[i]))
            out.append((f"jump {i} ({q})", self.jump_layers[i]))
        out.append((f"open {len(self.jumps)}", self.open_layers[-1]))
        out.append(("at 1", self.at1))
        return out

    def layer_at(self, t) -> DigitalMap:
        t = Fraction(t)
        if not 0 <= t <= 1:
            raise DigitopError("time outside [0, 1]")
        if t == 0:
            return self.at0
        if t == 1:
            return self.at1
        i = bisect_left(self.jumps, t)
        if i < len(self.jumps) and self.jumps[i] == t:
            return self.jump_layers[i]
        return self.open_layers[i]

    def slice(self, x: Point) -> RealPath:
        return RealPath(
            self.codomain, self.jumps,
            tuple(l(x) for l in self.open_layers),
            (self.at0(x),) + tuple(l(x) for l in self.jump_layers) + (self.at1(x),))

    def refine(self, jumps: Sequence) -> "RealHomotopy":
        """The same function described on a finer breakpoint set."""
        new = _jumps(sorted(set(Fraction(q) for q in jumps) | set(self.jumps)))
        bounds = (Fraction(0),) + new + (Fraction(1),)
        opens = tuple(self.layer_at((a + b) / 2) for a, b in zip(bounds, bounds[1:]))
        return RealHomotopy(new, self.at0, opens, tuple(self.layer_at(q) for q in new),
                            self.at1, self.pointed_at)

    def normalized(self) -> "RealHomotopy":
        """Drop breakpoints where nothing happens."""
        jumps, opens, jl = [], [self.open_layers[0]], []
        for i, q in enumerate(self.jumps):
            nxt = self.open_layers[i + 1]
            if opens[-1] == nxt == self.jump_layers[i]:
                continue
            jumps.append(q)
            jl.append(self.jump_layers[i])
            opens.append(nxt)
        return RealHomotopy(tuple(jumps), self.at0, tuple(opens), tuple(jl), self.at1, self.pointed_at)


def check_real_homotopy(F: RealHomotopy, f: DigitalMap | None = None, g: DigitalMap | None = None) -> Check:
    X, Y = F.domain, F.codomain
    for name, layer in F.all_layers():
        if layer.domain != X or layer.codomain != Y:
            return fail("layer domain/codomain", name)
        bad = first_discontinuity(layer)
        if bad is not None:
            return fail("layer continuity", f"{name} breaks edge {bad[0]}-{bad[1]}")
    for x in X.ordered:
        res = check_real_path(F.slice(x))
        if not res:
            return Check(False, f"slice {res.clause}", f"x={x}: {res.detail}")
    if F.pointed_at is not None:
        x0 = F.pointed_at
        if x0 not in X:
            return fail("pointed", f"{x0} not in domain")
        y0 = F.at0(x0)
        for name, layer in F.all_layers():
            if layer(x0) != y0:
                return fail("pointed", f"basepoint moves on {name}")
    if f is not None and F.at0 != f:
        return fail("start endpoint")
    if g is not None and F.at1 != g:
        return fail("end endpoint")
    return PASS


def verify_real_homotopy(F: RealHomotopy, f=None, g=None) -> bool:
    return bool(check_real_homotopy(F, f, g))


def constant_real(f: DigitalMap, pointed_at: Point | None = None) -> RealHomotopy:
    return RealHomotopy((), f, (f,), (), f, pointed_at)


def reverse_real(F: RealHomotopy) -> RealHomotopy:
    """``G(x, t) = F(x, 1 - t)``."""
    return RealHomotopy(tuple(1 - q for q in reversed(F.jumps)), F.at1, F.open_layers[::-1],
                        F.jump_layers[::-1], F.at0, F.pointed_at)


def concat_real(F: RealHomotopy, G: RealHomotopy) -> RealHomotopy:
    """Run F on [0, 1/2] and G on [1/2, 1].

    At t = 1/2 the value is ``F(x, 1) = G(x, 0)``.  That point is a valid
    breakpoint only if, for every x, one of the two flanking open values
    equals it.  When some x has both flanking values different from the
    middle value, a plateau holding the middle map is inserted instead:
    F runs on [0, 1/3], the middle map on (1/3, 2/3), G on [2/3, 1].
    """
    if F.at1 != G.at0:
        raise EndpointMismatch("F ends where G does not start")
    mid = F.at1
    left, right = F.open_layers[-1], G.open_layers[0]
    pointed = F.pointed_at if F.pointed_at == G.pointed_at else None
    if all(a == m or b == m for a, b, m in zip(left.values, right.values, mid.values)):
        if left == right == mid:
            jumps = tuple(q / 2 for q in F.jumps) + tuple((q + 1) / 2 for q in G.jumps)
            opens = F.open_layers + G.open_layers[1:]
            jl = F.jump_layers + G.jump_layers
        else:
            jumps = tuple(q / 2 for q in F.jumps) + (HALF,) + tuple((q + 1) / 2 for q in G.jumps)
            opens = F.open_layers + G.open_layers
            jl = F.jump_layers + (mid,) + G.jump_layers
    else:
        third = Fraction(1, 3)
        jumps = (tuple(q / 3 for q in F.jumps) + (third, 2 * third)
                 + tuple((q + 2) / 3 for q in G.jumps))
        opens = F.open_layers + (mid,) + G.open_layers
        jl = F.jump_layers + (mid, mid) + G.jump_layers
    return RealHomotopy(jumps, F.at0, opens, jl, G.at1, pointed)


def long_to_real(F: LongHomotopy) -> RealHomotopy:
    """Place layer ``j`` of a long homotopy on ``[q_j, q_{j+1})`` with ``q_j = (j+T+1)/(2T+3)``.

    The gap before ``q_{-T}`` carries ``f`` and the gap after ``q_{T+1}``
    carries ``g``; breakpoints where nothing changes are then dropped.
    """
    T = F.T
    denom = 2 * T + 3
    qs = tuple(Fraction(j + T + 1, denom) for j in range(-T, T + 2))
    f, g = F.start, F.end
    opens = (f,) + tuple(F.layer(j) for j in range(-T, T + 1)) + (g,)
    jl = tuple(F.layer(j) for j in range(-T, T + 1)) + (g,)
    return RealHomotopy(qs, f, opens, jl, g, F.pointed_at).normalized()


def finite_to_real(F: Homotopy) -> RealHomotopy:
    return long_to_real(finite_to_long(F))


def real_to_finite(F: RealHomotopy, collapse: bool = False) -> Homotopy:
    """Sample at 0, at the midpoint of every gap, and at 1.

    With k interior breakpoints this gives ``k + 3`` layers.  Consecutive
    samples are separated by exactly one breakpoint or endpoint, so each
    track moves to an equal or adjacent point per step.  ``collapse`` drops
    repeated consecutive layers.
    """
    layers = [F.at0] + list(F.open_layers) + [F.at1]
    if collapse:
        kept = [layers[0]]
        for s in layers[1:]:
            if s != kept[-1]:
                kept.append(s)
        layers = kept
    return Homotopy(tuple(layers), F.pointed_at)


def whisker_real(post: DigitalMap | None, F: RealHomotopy, pre: DigitalMap | None,
                 pointed_at: Point | None = None) -> RealHomotopy:
    """``post o F_t o pre`` on every layer."""
    def w(layer):
        if pre is not None:
            layer = compose(layer, pre)
        if post is not None:
            layer = compose(post, layer)
        return layer
    return RealHomotopy(F.jumps, w(F.at0), tuple(w(l) for l in F.open_layers),
                        tuple(w(l) for l in F.jump_layers), w(F.at1), pointed_at)


# -- real homotopy equivalence ----------------------------------------------

@dataclass(frozen=True)
class RealEquivalenceCertificate:
    f: DigitalMap
    g: DigitalMap
    H: RealHomotopy  # g o f  ->  1_X
    K: RealHomotopy  # f o g  ->  1_Y
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


def check_real_equivalence(cert: RealEquivalenceCertificate) -> Check:
    res = check_pair_structure(cert.f, cert.g, cert.basepoints)
    if not res:
        return res
    if cert.H.at0 != compose(cert.g, cert.f) or cert.H.at1 != identity(cert.X):
        return fail("H endpoints")
    if cert.K.at0 != compose(cert.f, cert.g) or cert.K.at1 != identity(cert.Y):
        return fail("K endpoints")
    res = check_real_homotopy(cert.H)
    if not res:
        return res.prefixed("H")
    res = check_real_homotopy(cert.K)
    if not res:
        return res.prefixed("K")
    if cert.pointed:
        x0, y0 = cert.basepoints
        if cert.H.pointed_at != x0:
            return fail("H pointed")
        if cert.K.pointed_at != y0:
            return fail("K pointed")
    return PASS


def verify_real_equivalence(cert: RealEquivalenceCertificate) -> bool:
    return bool(check_real_equivalence(cert))


def identity_real_equivalence(X: DigitalImage, basepoint: Point | None = None) -> RealEquivalenceCertificate:
    i = identity(X)
    bp = None if basepoint is None else (tuple(basepoint), tuple(basepoint))
    return RealEquivalenceCertificate(i, i, constant_real(i, basepoint), constant_real(i, basepoint), bp)


def real_from_equivalence(cert) -> RealEquivalenceCertificate:
    """Lift a finite or long equivalence certificate."""
    H, K = cert.H, cert.K
    if isinstance(H, Homotopy):
        H, K = finite_to_long(H), finite_to_long(K)
    return RealEquivalenceCertificate(cert.f, cert.g, long_to_real(H), long_to_real(K), cert.basepoints)


def compose_real_equivalences(cert1: RealEquivalenceCertificate,
                              cert2: RealEquivalenceCertificate) -> RealEquivalenceCertificate:
    """``X ~R Y`` and ``Y ~R W`` give ``X ~R W`` via ``g o f`` and ``f' o g'``.

    ``f' o G o f`` deforms ``f' g' g f`` into ``f' f``, which the first
    certificate's H carries on to the identity; symmetrically on W.
    """
    if cert1.Y != cert2.X:
        raise DigitopError("certificates do not share the middle image")
    f, fp, F, Fp = cert1.f, cert1.g, cert1.H, cert1.K
    g, gp, G, Gp = cert2.f, cert2.g, cert2.H, cert2.K
    bp = None
    if cert1.pointed and cert2.pointed:
        if cert1.basepoints[1] != cert2.basepoints[0]:
            raise DigitopError("pointed certificates disagree on the middle basepoint")
        bp = (cert1.basepoints[0], cert2.basepoints[1])
    x0 = bp[0] if bp else None
    w0 = bp[1] if bp else None
    H = concat_real(whisker_real(fp, G, f, x0), F)
    K = concat_real(whisker_real(g, Fp, gp, w0), Gp)
    H = RealHomotopy(H.jumps, H.at0, H.open_layers, H.jump_layers, H.at1, x0)
    K = RealHomotopy(K.jumps, K.at0, K.open_layers, K.jump_layers, K.at1, w0)
    return RealEquivalenceCertificate(compose(g, f), compose(fp, gp), H, K, bp)
