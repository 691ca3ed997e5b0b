"""Homotopic similarity over nested filtrations, checked to a finite depth."""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Mapping, Sequence

from .ecpath import ECPath, concat, loops_equal_within_budget, push_loop
from .errors import PASS, Check, DigitopError, fail
from .homotopy import (
    EquivalenceCertificate,
    Homotopy,
    check_homotopy,
    concat_homotopies,
    constant_homotopy,
    whisker,
)
from .lattice import DigitalImage
from .maps import DigitalMap, check_continuity_edges, compose, corestrict, identity, restrict


@dataclass(frozen=True)
class Filtration:
    """Nested levels ``X_1 ⊆ X_2 ⊆ ... ⊆ X_J`` (``levels[0]`` is ``X_1``).

    ``whole`` is the exhausted image when it is finite and known.
    """

    levels: tuple
    exhausts: str | None = None
    whole: DigitalImage | None = None

    def __post_init__(self):
        object.__setattr__(self, "levels", tuple(self.levels))
        if not self.levels:
            raise DigitopError("a filtration needs at least one level")
        kind = self.levels[0].adjacency
        for j, (a, b) in enumerate(zip(self.levels, self.levels[1:]), start=1):
            if b.adjacency != kind or not a.points <= b.points:
                raise DigitopError(f"level {j} is not a subimage of level {j + 1}")
        if self.whole is not None and not self.levels[-1].issubimage(self.whole):
            raise DigitopError("levels must lie inside the whole image")

    @property
    def depth(self) -> int:
        return len(self.levels)

    def __getitem__(self, j: int) -> DigitalImage:
        """Level ``X_j`` with 1-based ``j``."""
        if not 1 <= j <= len(self.levels):
            raise IndexError(f"level {j} outside 1..{len(self.levels)}")
        return self.levels[j - 1]

    def truncated(self, J: int) -> "Filtration":
        return Filtration(self.levels[:J], self.exhausts, self.whole)

    def level_of(self, points) -> int | None:
        """Least j with ``points ⊆ X_j``."""
        pts = set(points)
        for j, lv in enumerate(self.levels, start=1):
            if pts <= lv.points:
                return j
        return None


def constant_filtration(X: DigitalImage, J: int) -> Filtration:
    return Filtration((X,) * J, "constant", X)


@dataclass(frozen=True)
class SimilarityCertificate:
    """Level data for ``X ≃^s Y`` up to depth ``J``; everything is 1-indexed.

    ``f[j-1]: X_j -> Y_j``, ``g[j-1]: Y_j -> X_j``, ``H[j-1]: g_j f_j -> 1``,
    ``K[j-1]: f_j g_j -> 1``.  ``Rf[(v, w)]`` is a homotopy in ``Y_v`` from
    ``f_w`` restricted to ``X_v`` to ``f_v``; ``Rg`` likewise in ``X_v``.
    """

    FX: Filtration
    FY: Filtration
    f: tuple
    g: tuple
    H: tuple
    K: tuple
    Rf: Mapping = field(default_factory=dict)
    Rg: Mapping = field(default_factory=dict)
    basepoints: tuple | None = None

    def __post_init__(self):
        for name in ("f", "g", "H", "K"):
            object.__setattr__(self, name, tuple(getattr(self, name)))
        object.__setattr__(self, "Rf", dict(self.Rf))
        object.__setattr__(self, "Rg", dict(self.Rg))

    @property
    def depth(self) -> int:
        return min(self.FX.depth, self.FY.depth, len(self.f), len(self.g), len(self.H), len(self.K))

    @property
    def pointed(self) -> bool:
        return self.basepoints is not None


def _restricted_start(fw: DigitalMap, Xv: DigitalImage, Yv: DigitalImage) -> DigitalMap | None:
    r = restrict(fw, Xv)
    if not set(r.values) <= Yv.points:
        return None
    return corestrict(r, Yv)


def _check_level_homotopy(F, name: str, start, end, domain, codomain, pointed_at) -> Check:
    if F is None:
        return fail("structure", f"missing {name}")
    if F.domain != domain or F.codomain != codomain:
        return fail("structure", f"{name} has the wrong domain or codomain")
    res = check_homotopy(F, start, end)
    if not res:
        return res.prefixed(name)
    if pointed_at is not None and F.pointed_at != pointed_at:
        return fail(f"{name}: pointed", f"must hold {pointed_at} fixed")
    return PASS


def check_similarity(cert: SimilarityCertificate, depth: int | None = None) -> Check:
    """Check every level and every restriction pair up to ``depth``.

    A pass is evidence up to that depth only; the definition quantifies over
    all levels.
    """
    J = cert.depth if depth is None else depth
    if J < 1:
        return fail("structure", "depth must be at least 1")
    if J > cert.depth:
        return fail("structure", f"certificate has depth {cert.depth} < {J}")
    FX, FY = cert.FX, cert.FY
    x1 = y1 = None
    if cert.pointed:
        x1, y1 = cert.basepoints
        if x1 not in FX[1] or y1 not in FY[1]:
            return fail("basepoints", "basepoints must lie in the first levels")
    for j in range(1, J + 1):
        Xj, Yj = FX[j], FY[j]
        fj, gj = cert.f[j - 1], cert.g[j - 1]
        if fj.domain != Xj or fj.codomain != Yj:
            return fail("structure", f"f_{j} is not a map X_{j} -> Y_{j}")
        if gj.domain != Yj or gj.codomain != Xj:
            return fail("structure", f"g_{j} is not a map Y_{j} -> X_{j}")
        if not check_continuity_edges(fj):
            return fail(f"f_{j} continuity")
        if not check_continuity_edges(gj):
            return fail(f"g_{j} continuity")
        if cert.pointed and (fj(x1) != y1 or gj(y1) != x1):
            return fail("basepoints", f"level {j} maps do not exchange the basepoints")
        res = _check_level_homotopy(cert.H[j - 1], f"H_{j}", compose(gj, fj), identity(Xj), Xj, Xj, x1)
        if not res:
            return res
        res = _check_level_homotopy(cert.K[j - 1], f"K_{j}", compose(fj, gj), identity(Yj), Yj, Yj, y1)
        if not res:
            return res
    for w in range(1, J + 1):
        for v in range(1, w + 1):
            Xv, Yv = FX[v], FY[v]
            start = _restricted_start(cert.f[w - 1], Xv, Yv)
            if start is None:
                return fail(f"R^f_({v},{w})", f"f_{w} does not carry X_{v} into Y_{v}")
            res = _check_level_homotopy(cert.Rf.get((v, w)), f"R^f_({v},{w})", start, cert.f[v - 1],
                                        Xv, Yv, x1)
            if not res:
                return res
            start = _restricted_start(cert.g[w - 1], Yv, Xv)
            if start is None:
                return fail(f"R^g_({v},{w})", f"g_{w} does not carry Y_{v} into X_{v}")
            res = _check_level_homotopy(cert.Rg.get((v, w)), f"R^g_({v},{w})", start, cert.g[v - 1],
                                        Yv, Xv, y1)
            if not res:
                return res
    return PASS


def verify_similarity(cert: SimilarityCertificate, depth: int | None = None) -> bool:
    return bool(check_similarity(cert, depth))


def truncate_similarity(cert: SimilarityCertificate, J: int) -> SimilarityCertificate:
    keep = {k: v for k, v in cert.Rf.items() if k[1] <= J}
    keep_g = {k: v for k, v in cert.Rg.items() if k[1] <= J}
    return SimilarityCertificate(cert.FX.truncated(J), cert.FY.truncated(J), cert.f[:J], cert.g[:J],
                                 cert.H[:J], cert.K[:J], keep, keep_g, cert.basepoints)


def swap_similarity(cert: SimilarityCertificate) -> SimilarityCertificate:
    bp = None if cert.basepoints is None else cert.basepoints[::-1]
    return SimilarityCertificate(cert.FY, cert.FX, cert.g, cert.f, cert.K, cert.H, cert.Rg, cert.Rf, bp)


def identity_restrictions(maps: Sequence[DigitalMap], pointed_at=None) -> dict:
    """Single-layer restriction homotopies for a constant chain."""
    J = len(maps)
    return {(v, w): constant_homotopy(maps[v - 1], pointed_at)
            for w in range(1, J + 1) for v in range(1, w + 1)}


def from_equivalence(cert: EquivalenceCertificate, J: int) -> SimilarityCertificate:
    """Constant chains ``X_j = X``, ``Y_j = Y`` at depth ``J``."""
    if J < 1:
        raise DigitopError("depth must be at least 1")
    x0 = y0 = None
    if cert.basepoints is not None:
        x0, y0 = cert.basepoints
    return SimilarityCertificate(
        constant_filtration(cert.X, J), constant_filtration(cert.Y, J),
        (cert.f,) * J, (cert.g,) * J, (cert.H,) * J, (cert.K,) * J,
        identity_restrictions((cert.f,) * J, x0), identity_restrictions((cert.g,) * J, y0),
        cert.basepoints)


@dataclass(frozen=True)
class NotStable:
    depth: int
    reason: str


def _stable_from(levels: Sequence[DigitalImage]) -> int:
    """Least 1-based m with ``levels[m-1] == levels[-1]``."""
    top = levels[-1]
    m = len(levels)
    while m > 1 and levels[m - 2] == top:
        m -= 1
    return m


def extract_equivalence_when_stable(cert: SimilarityCertificate):
    """Collapse to a plain equivalence once both chains have stopped growing.

    Stability is accepted when both chains end at their known whole images,
    or, with no whole image recorded, when the last level is repeated at
    least once within the certificate.
    """
    J = cert.depth
    FX, FY = cert.FX.truncated(J), cert.FY.truncated(J)
    m = max(_stable_from(FX.levels), _stable_from(FY.levels))
    wholes = (FX.whole, FY.whole)
    if all(w is not None for w in wholes):
        if FX[J] != FX.whole or FY[J] != FY.whole:
            return NotStable(J, "levels have not reached the whole image")
    elif m == J and J > 1:
        return NotStable(J, "the chains are still growing at the last level")
    elif J == 1:
        return NotStable(J, "a single level cannot show stability without the whole image")
    return EquivalenceCertificate(cert.f[m - 1], cert.g[m - 1], cert.H[m - 1], cert.K[m - 1], cert.basepoints)


def _whole_stable_level(FA: Filtration, FB: Filtration, J: int) -> int | None:
    """Least level from which both chains equal their common finite top, or None.

    The top counts as reached when a recorded whole image equals it, or,
    with no whole image on either side, when the last level is repeated.
    """
    top = FA[J]
    if FB[J] != top:
        return None
    wholes = [w for w in (FA.whole, FB.whole) if w is not None]
    if any(w != top for w in wholes):
        return None
    i = J
    while i > 1 and FA[i - 1] == top and FB[i - 1] == top:
        i -= 1
    if not wholes and i == J:
        return None
    return i


def compose_through_finite(cert1: SimilarityCertificate, cert2: SimilarityCertificate) -> SimilarityCertificate:
    """``A ≃^s B`` and ``B ≃^s C`` with B finite give ``A ≃^s C``.

    With ``i0`` the first level from which both B-chains equal B, level k of
    the result is level ``i0 + k - 1`` of the inputs, using the composite
    maps ``f2 f1`` and ``g1 g2``.  The round-trip homotopy runs
    ``g1 H2 f1`` and then ``H1``; a restriction homotopy runs ``f2_w R1f``
    and then ``R2f f1_v``.
    """
    J = min(cert1.depth, cert2.depth)
    i0 = _whole_stable_level(cert1.FY, cert2.FX, J)
    if i0 is None:
        raise DigitopError("the middle chains do not stabilize to a common image within the depth")
    bp = None
    a1 = c1 = None
    if cert1.pointed and cert2.pointed:
        if cert1.basepoints[1] != cert2.basepoints[0]:
            raise DigitopError("pointed certificates disagree on the middle basepoint")
        a1, c1 = cert1.basepoints[0], cert2.basepoints[1]
        bp = (a1, c1)
    idx = range(i0, J + 1)
    A = Filtration(tuple(cert1.FX[i] for i in idx), cert1.FX.exhausts, cert1.FX.whole)
    C = Filtration(tuple(cert2.FY[i] for i in idx), cert2.FY.exhausts, cert2.FY.whole)
    f1, g1, H1, K1 = cert1.f, cert1.g, cert1.H, cert1.K
    f2, g2, H2, K2 = cert2.f, cert2.g, cert2.H, cert2.K
    phi, psi, Hs, Ks = [], [], [], []
    for i in idx:
        phi.append(compose(f2[i - 1], f1[i - 1]))
        psi.append(compose(g1[i - 1], g2[i - 1]))
        Hs.append(concat_homotopies(whisker(g1[i - 1], H2[i - 1], f1[i - 1], a1), H1[i - 1]))
        Ks.append(concat_homotopies(whisker(f2[i - 1], K1[i - 1], g2[i - 1], c1), K2[i - 1]))
        if a1 is not None:
            Hs[-1] = Homotopy(Hs[-1].layers, a1)
            Ks[-1] = Homotopy(Ks[-1].layers, c1)
    Rf, Rg = {}, {}
    for w in idx:
        for v in range(i0, w + 1):
            key = (v - i0 + 1, w - i0 + 1)
            Cv, Av = cert2.FY[v], cert1.FX[v]
            step1 = whisker(corestrict(f2[w - 1], Cv), cert1.Rf[(v, w)], None, a1)
            step2 = whisker(None, cert2.Rf[(v, w)], f1[v - 1], a1)
            Rf[key] = concat_homotopies(step1, step2)
            step1 = whisker(corestrict(g1[w - 1], Av), cert2.Rg[(v, w)], None, c1)
            step2 = whisker(None, cert1.Rg[(v, w)], g2[v - 1], c1)
            Rg[key] = concat_homotopies(step1, step2)
    return SimilarityCertificate(A, C, tuple(phi), tuple(psi), tuple(Hs), tuple(Ks), Rf, Rg, bp)


# -- induced map on loops ---------------------------------------------------

def loop_level(cert: SimilarityCertificate, L: ECPath) -> int:
    j = cert.FX.level_of(L.support)
    if j is None or j > cert.depth:
        raise DigitopError("the loop leaves the filtration within the certificate's depth")
    return j


def induced_pi1_map(cert: SimilarityCertificate, L: ECPath, level: int | None = None) -> ECPath:
    """``[L] -> [f_j o L]`` with j the least level containing the loop (or ``level``)."""
    if not cert.pointed:
        raise DigitopError("the induced loop map needs a pointed certificate")
    if not L.is_loop or L.start != cert.basepoints[0]:
        raise DigitopError("the loop must be based at the certificate's basepoint")
    j = loop_level(cert, L) if level is None else level
    if j < loop_level(cert, L):
        raise DigitopError(f"the loop does not fit in level {j}")
    Xj = cert.FX[j]
    return push_loop(cert.f[j - 1], ECPath(L.prefix, L.tail, Xj))


def _lift(L: ECPath, Y: DigitalImage) -> ECPath:
    return ECPath(L.prefix, L.tail, Y)


def check_induced_homomorphism(cert: SimilarityCertificate, L1: ECPath, L2: ECPath,
                               budget: tuple[int, int] | None = None, cap: int | None = None):
    """Compare the image of ``L1 * L2`` with the product of the images, inside ``Y_j``.

    ``j`` is the least level holding both loops.  Returns ``Equal`` or
    ``Unknown`` from the budgeted loop comparison.
    """
    j = max(loop_level(cert, L1), loop_level(cert, L2))
    Yj = cert.FY[j]
    Xj = cert.FX[j]
    a = induced_pi1_map(cert, concat(_lift(L1, Xj), _lift(L2, Xj)), j)
    b = concat(induced_pi1_map(cert, L1, j), induced_pi1_map(cert, L2, j))
    return loops_equal_within_budget(_lift(a, Yj), _lift(b, Yj), budget, cap)


def check_induced_level_independence(cert: SimilarityCertificate, L: ECPath, level: int,
                                     budget: tuple[int, int] | None = None, cap: int | None = None):
    """Compare the images of L through its least level and through ``level``, inside ``Y_level``."""
    j = loop_level(cert, L)
    Y = cert.FY[level]
    a = induced_pi1_map(cert, L, j)
    b = induced_pi1_map(cert, L, level)
    return loops_equal_within_budget(_lift(a, Y), _lift(b, Y), budget, cap)
