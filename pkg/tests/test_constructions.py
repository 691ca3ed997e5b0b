import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from digitop.constructions import (
    cube,
    cube_contraction,
    cube_equivalence,
    cube_long_certificate,
    cube_similarity,
    product,
    product_certificates,
    product_map,
    random_tree,
    t_image,
    t_image_long,
    t_image_similarity,
    tree_contraction,
    tree_equivalence,
    tree_from_image,
    tree_l_homotopy,
    tree_long_certificate,
    tree_similarity,
    wedge,
    wedge_certificates,
    wedge_map,
    zn_window,
)
from digitop.errors import DigitopError
from digitop.homotopy import EquivalenceCertificate, Homotopy, identity_equivalence, verify_equivalence, verify_homotopy
from digitop.lattice import DigitalImage, interval
from digitop.longhtpy import l_to_long, verify_l_homotopy, verify_long_equivalence, verify_long_homotopy
from digitop.maps import check_continuity_edges, constant, identity
from digitop.realhtpy import real_from_equivalence, verify_real_equivalence
from digitop.similarity import verify_similarity

from helpers import bfs_eccentricity, random_continuous_map, random_quadrant_tree


def test_cube_counts():
    assert len(cube((3, -1), 0)) == 1
    assert len(cube((0, 0), 1)) == 9
    for n in range(1, 4):
        for r in range(0, 3):
            assert len(zn_window(n, r)) == (2 * r + 1) ** n
    with pytest.raises(DigitopError):
        cube((0,), -1)


def test_cube_contraction_small_cases():
    assert cube_contraction((0, 0), 0).T == 0
    lh = cube_contraction((0,), 2)
    assert [lh((2,), t) for t in range(6)] == [(2,), (1,), (0,), (0,), (0,), (0,)]


def _schedule_stab(y, x):
    """Last time any coordinate of ``y`` moves: coordinate q moves at t >= 1 with t = q mod n."""
    n = len(x)
    last = 0
    for q in range(n):
        d = abs(y[q] - x[q])
        if d:
            first = q if q else n
            last = max(last, first + (d - 1) * n)
    return last


@pytest.mark.parametrize("n", [1, 2, 3])
@pytest.mark.parametrize("r", [1, 2, 3])
def test_cube_stabilization_matches_schedule(n, r):
    x = tuple(range(n))
    lh = cube_contraction(x, r)
    Y = lh.domain
    assert verify_l_homotopy(lh, identity(Y), constant(Y, Y, x))
    assert lh.pointed_at == x
    for y in Y.ordered:
        assert lh.stab[y] == _schedule_stab(y, x)
    assert max(lh.stab.values()) == n * r
    corner = tuple(c + r for c in x)
    assert lh.stab[corner] == n * r


def test_cube_certificates_verify():
    assert verify_similarity(cube_similarity((0, 0), 3))
    assert verify_long_equivalence(cube_long_certificate((1, 1), 2))
    assert verify_equivalence(cube_equivalence((0,), 3))
    assert verify_long_homotopy(l_to_long(cube_contraction((0, 0), 2)))


def test_tree_examples():
    P = tree_from_image(DigitalImage.of([(4, 4)]), (4, 4))
    assert tree_contraction(P).m == 0
    T = tree_from_image(interval(0, 3), (0,))
    H = tree_contraction(T)
    assert H.m == 3 and verify_homotopy(H) and H.pointed_at == (0,)
    assert verify_l_homotopy(tree_l_homotopy(T))


def test_tree_rejections():
    sq = DigitalImage.of([(0, 0), (0, 1), (1, 0), (1, 1)])
    with pytest.raises(DigitopError):
        tree_from_image(sq, (0, 0))
    with pytest.raises(DigitopError):
        tree_from_image(DigitalImage.of([(0,), (2,)]), (0,))
    with pytest.raises(DigitopError):
        tree_from_image(interval(0, 2), (5,))


@settings(max_examples=40, deadline=None)
@given(st.integers(0, 10**6))
def test_random_trees(seed):
    rng = random.Random(seed)
    T = random_tree(rng.randint(1, 25), rng)
    X = T.image
    assert len(X.edges()) == len(X) - 1
    H = tree_contraction(T)
    assert H.m == bfs_eccentricity(X, T.root)
    assert verify_homotopy(H, identity(X), constant(X, X, T.root))
    depth = X.distances_from(T.root)
    for x in X.ordered:
        track = H.track(x)
        assert track.index(T.root) == depth[x]
    assert verify_equivalence(tree_equivalence(T))
    assert verify_long_equivalence(tree_long_certificate(T))
    assert verify_similarity(tree_similarity(T, 3))


def test_t_image_counts_and_certificates():
    X, Y = t_image(0)
    assert len(X) == len(Y) == 1
    X, Y = t_image(3)
    assert len(X) == 7 and len(Y) == 10
    assert verify_similarity(t_image_similarity(5), 5)
    c = t_image_long(5)
    assert verify_long_equivalence(c) and c.basepoints == ((0, 0), (0, 0))


def test_wedge_basics():
    W = wedge(interval(0, 2), interval(2, 4))
    assert W.image == interval(0, 4) and W.wedge_point == (2,)
    with pytest.raises(DigitopError):
        wedge(interval(0, 2), interval(1, 3))
    with pytest.raises(DigitopError):
        wedge(interval(0, 2), interval(4, 5))
    bent = DigitalImage.of([(0, 0), (1, 0), (1, 1)])
    other = DigitalImage.of([(0, 0), (0, 1)])
    with pytest.raises(DigitopError):
        wedge(bent, other)
    i1, i2 = identity(interval(0, 2)), identity(interval(2, 4))
    assert wedge_map(i1, i2) == identity(interval(0, 4))


@settings(max_examples=100, deadline=None)
@given(st.integers(0, 10**6))
def test_wedge_map_continuity(seed):
    rng = random.Random(seed)
    X1, X2 = random_quadrant_tree(rng, rng.randint(1, 6), 1), random_quadrant_tree(rng, rng.randint(1, 6), -1)
    Y1, Y2 = random_quadrant_tree(rng, rng.randint(1, 6), 1), random_quadrant_tree(rng, rng.randint(1, 6), -1)
    o = (0, 0)
    f1 = random_continuous_map(rng, X1, Y1, {o: o})
    f2 = random_continuous_map(rng, X2, Y2, {o: o})
    w = wedge_map(f1, f2)
    assert check_continuity_edges(w)
    assert all(w(p) == f1(p) for p in X1.ordered) and all(w(p) == f2(p) for p in X2.ordered)


def test_wedge_certificates_kinds():
    rng = random.Random(5)
    A = tree_from_image(random_quadrant_tree(rng, 6, 1), (0, 0))
    B = tree_from_image(random_quadrant_tree(rng, 6, -1), (0, 0))
    assert verify_similarity(wedge_certificates(tree_similarity(A, 3), tree_similarity(B, 3)))
    assert verify_long_equivalence(wedge_certificates(tree_long_certificate(A), tree_long_certificate(B)))
    ra, rb = real_from_equivalence(tree_equivalence(A)), real_from_equivalence(tree_equivalence(B))
    assert verify_real_equivalence(wedge_certificates(ra, rb))
    assert verify_equivalence(wedge_certificates(tree_equivalence(A), tree_equivalence(B)))
    P = DigitalImage.of([(0, 0)])
    triv = wedge_certificates(identity_equivalence(P, (0, 0)), identity_equivalence(P, (0, 0)))
    assert triv.X == P and all(h.m == 0 for h in (triv.H, triv.K))


def test_wedge_long_intervals():
    left = tree_long_certificate(tree_from_image(interval(-3, 0), (0,)))
    right = tree_long_certificate(tree_from_image(interval(0, 2), (0,)))
    out = wedge_certificates(left, right)
    assert verify_long_equivalence(out) and out.X == interval(-3, 2)


def test_wedge_certificate_errors():
    a = tree_equivalence(tree_from_image(interval(0, 2), (0,)))
    with pytest.raises(DigitopError):
        wedge_certificates(a, tree_long_certificate(tree_from_image(interval(-2, 0), (0,))))
    with pytest.raises(DigitopError):
        wedge_certificates(a, tree_equivalence(tree_from_image(interval(-2, 0), (-2,))))


def test_product_basics():
    p = product([DigitalImage.of([(1,)]), DigitalImage.of([(2, 3)], u=2)])
    assert p.image.points == {(1, 2, 3)} and p.image.adjacency.u == 3
    with pytest.raises(DigitopError):
        product([interval(0, 1), DigitalImage.of([(0, 0), (0, 1)], u=1)])
    pts = product([interval(0, 2), interval(0, 1)]).image
    assert len(pts) == 6 and pts.adjacency.u == 2
    f = product_map([identity(interval(0, 2)), constant(interval(0, 1), interval(0, 1), (1,))])
    assert check_continuity_edges(f) and f((2, 0)) == (2, 1)


def test_product_padding():
    a = tree_equivalence(tree_from_image(interval(0, 2), (0,)))
    b = tree_equivalence(tree_from_image(interval(0, 1), (0,)))
    assert a.H.m == 2 and b.H.m == 1
    out = product_certificates([a, b])
    assert verify_equivalence(out)
    assert out.H.m == 2 and out.X.adjacency.u == 2
    P = DigitalImage.of([(0,)])
    single = product_certificates([identity_equivalence(P), identity_equivalence(P)])
    assert len(single.X) == 1 and verify_equivalence(single)


def test_product_other_kinds():
    sims = [cube_similarity((0,), 3), cube_similarity((1,), 3), cube_similarity((2,), 3)]
    assert verify_similarity(product_certificates(sims))
    longs = [cube_long_certificate((0,), 2), tree_long_certificate(tree_from_image(interval(0, 1), (1,)))]
    assert verify_long_equivalence(product_certificates(longs))
    reals = [real_from_equivalence(cube_equivalence((0,), 1)),
             real_from_equivalence(tree_equivalence(tree_from_image(interval(0, 3), (0,))))]
    assert verify_real_equivalence(product_certificates(reals))
    with pytest.raises(DigitopError):
        product_certificates([cube_equivalence((0,), 1), cube_long_certificate((0,), 1)])


def _forget(c):
    return EquivalenceCertificate(c.f, c.g, Homotopy(c.H.layers), Homotopy(c.K.layers), None)


def test_forgetting_basepoints_commutes():
    a = tree_equivalence(tree_from_image(interval(0, 2), (0,)))
    b = cube_equivalence((0,), 1)
    pointed = product_certificates([a, b])
    plain = product_certificates([_forget(a), _forget(b)])
    assert verify_equivalence(plain) and not plain.pointed
    assert _forget(pointed) == plain
    c = tree_equivalence(tree_from_image(interval(-2, 0), (0,)))
    w = wedge_certificates(a, c)
    assert verify_equivalence(_forget(w)) and _forget(w).f == w.f
