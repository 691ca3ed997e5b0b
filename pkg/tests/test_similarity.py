import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from digitop.constructions import (
    cube,
    cube_equivalence,
    cube_similarity,
    random_tree,
    tree_from_image,
    tree_similarity,
)
from digitop.ecpath import ECPath, Equal, concat, inverse, loops_equal_within_budget
from digitop.errors import DigitopError
from digitop.homotopy import (
    EquivalenceCertificate,
    constant_homotopy,
    identity_equivalence,
    verify_equivalence,
)
from digitop.lattice import DigitalImage, interval
from digitop.maps import DigitalMap, identity
from digitop.similarity import (
    Filtration,
    NotStable,
    SimilarityCertificate,
    check_induced_homomorphism,
    check_induced_level_independence,
    check_similarity,
    compose_through_finite,
    constant_filtration,
    extract_equivalence_when_stable,
    from_equivalence,
    induced_pi1_map,
    swap_similarity,
    truncate_similarity,
    verify_similarity,
)

from helpers import random_loop, ring, ring_loop


def test_constant_chain_any_depth():
    X = interval(0, 3)
    for J in (1, 2, 5):
        cert = from_equivalence(identity_equivalence(X), J)
        assert verify_similarity(cert)
        assert all(h.m == 0 for h in cert.Rf.values())
        assert all(h.m == 0 for h in cert.H)


def test_filtration_nesting_enforced():
    with pytest.raises(DigitopError):
        Filtration((interval(0, 2), interval(0, 1)))
    F = Filtration((interval(0, 0), interval(0, 1), interval(-1, 1)))
    assert F[1] == interval(0, 0) and F.depth == 3
    assert F.level_of([(1,)]) == 2 and F.level_of([(5,)]) is None
    with pytest.raises(IndexError):
        F[0]


def test_cube_windows_depth_four():
    cert = cube_similarity((0, 0), 4)
    assert cert.depth == 4
    assert verify_similarity(cert)
    assert cert.FY[4] == cube((0, 0), 4)
    assert verify_similarity(swap_similarity(cert))


def test_missing_restriction_is_structural():
    cert = cube_similarity((0, 0), 3)
    Rf = dict(cert.Rf)
    del Rf[(1, 3)]
    bad = SimilarityCertificate(cert.FX, cert.FY, cert.f, cert.g, cert.H, cert.K, Rf, cert.Rg, cert.basepoints)
    res = check_similarity(bad)
    assert not res and res.clause == "structure" and "R^f_(1,3)" in res.detail
    # depth 2 does not need the missing pair
    assert verify_similarity(bad, 2)


def test_broken_round_trip_is_named():
    cert = cube_similarity((0,), 3)
    K = list(cert.K)
    K[1] = constant_homotopy(identity(cert.FY[2]), (0,))
    bad = SimilarityCertificate(cert.FX, cert.FY, cert.f, cert.g, cert.H, K, cert.Rf, cert.Rg, cert.basepoints)
    assert check_similarity(bad).clause.startswith("K_2")


def test_depth_monotone():
    cert = cube_similarity((1, -1), 4)
    for J in range(1, 5):
        t = truncate_similarity(cert, J)
        assert t.depth == J and verify_similarity(t)
    assert not check_similarity(cert, 5)


def test_from_equivalence_pointed_and_cube():
    eq = cube_equivalence((0, 0), 1)
    cert = from_equivalence(eq, 3)
    assert verify_similarity(cert) and cert.basepoints == ((0, 0), (0, 0))
    unpointed = EquivalenceCertificate(eq.f, eq.g, eq.H, eq.K, None)
    assert not from_equivalence(unpointed, 2).pointed


def test_extract_round_trip():
    for eq in (identity_equivalence(interval(0, 2)), cube_equivalence((0,), 2),
               identity_equivalence(ring(), (0, 0))):
        for J in (1, 3):
            out = extract_equivalence_when_stable(from_equivalence(eq, J))
            assert out == eq


def test_growing_chain_not_stable():
    T = tree_from_image(interval(0, 4), (0,))
    out = extract_equivalence_when_stable(tree_similarity(T, 3))
    assert isinstance(out, NotStable)
    out = extract_equivalence_when_stable(cube_similarity((0,), 4))
    assert isinstance(out, NotStable)
    one = truncate_similarity(tree_similarity(tree_from_image(interval(0, 4), (0,)), 5, whole_known=False), 1)
    assert isinstance(extract_equivalence_when_stable(one), NotStable)


def test_stabilizes_at_level_three():
    T = tree_from_image(interval(0, 3), (0,))
    cert = tree_similarity(T, 5)
    assert [len(L) for L in cert.FX.levels] == [2, 3, 4, 4, 4]
    assert verify_similarity(cert)
    out = extract_equivalence_when_stable(cert)
    assert verify_equivalence(out)
    assert out.f == cert.f[2] and out.H == cert.H[2]
    # without the whole image the repeated last level still shows stability
    blind = tree_similarity(T, 5, whole_known=False)
    assert extract_equivalence_when_stable(blind) == out


def test_compose_interval_point_cube():
    I = tree_similarity(tree_from_image(interval(-4, 4), (0,)), 4, whole_known=False)
    cubes = cube_similarity((0,), 4)
    cert = compose_through_finite(I, cubes)
    assert verify_similarity(cert)
    assert cert.depth == 4 and cert.basepoints == ((0,), (0,))
    assert cert.FY[2] == cube((0,), 2)


def test_compose_with_identity():
    cert = swap_similarity(cube_similarity((0, 0), 3))
    P = cert.FY[1]
    out = compose_through_finite(cert, from_equivalence(identity_equivalence(P, (0, 0)), 3))
    assert verify_similarity(out)
    assert out.f == cert.f and out.g == cert.g
    assert all(a.start == b.start and a.end == b.end for a, b in zip(out.H, cert.H))


def test_compose_needs_stable_middle():
    c = cube_similarity((0,), 3)
    with pytest.raises(DigitopError):
        compose_through_finite(c, swap_similarity(c))


@settings(max_examples=25, deadline=None)
@given(st.integers(0, 10**6))
def test_pointed_compose_random(seed):
    rng = random.Random(seed)
    T = random_tree(rng.randint(1, 10), rng)
    J = rng.randint(1, 4)
    a = tree_similarity(T, J)
    b = cube_similarity(T.root, J)
    out = compose_through_finite(a, b)
    assert verify_similarity(out)
    assert out.basepoints == (T.root, T.root)
    assert all(h.pointed_at == T.root for h in out.H + out.K)


def test_induced_constant_loop():
    cert = from_equivalence(cube_equivalence((0, 0), 1), 2)
    L = ECPath.constant((0, 0), cert.FX[1])
    out = induced_pi1_map(cert, L)
    assert out.is_loop and set(out.support) == {(0, 0)}


def test_cube_loops_trivialize():
    rng = random.Random(3)
    X = cube((0, 0), 1)
    cert = from_equivalence(identity_equivalence(X, (0, 0)), 2)
    for _ in range(5):
        L = random_loop(rng, X, (0, 0), 6)
        img = induced_pi1_map(cert, L)
        assert isinstance(loops_equal_within_budget(img, ECPath.constant((0, 0), X)), Equal)
    collapse = swap_similarity(cube_similarity((0, 0), 2))
    L = random_loop(rng, collapse.FX[2], (0, 0), 8)
    assert set(induced_pi1_map(collapse, L).support) == {(0, 0)}


def _reflection_certificate(J):
    X = ring()
    r = DigitalMap.from_function(X, X, lambda p: (p[1], p[0]))
    H = constant_homotopy(identity(X), (0, 0))
    eq = EquivalenceCertificate(r, r, H, H, ((0, 0), (0, 0)))
    assert verify_equivalence(eq)
    return from_equivalence(eq, J)


def test_induced_homomorphism_random_pairs():
    rng = random.Random(11)
    cert = _reflection_certificate(2)
    X = cert.FX[1]
    for _ in range(50):
        L1 = random_loop(rng, X, (0, 0), rng.randint(0, 5))
        L2 = random_loop(rng, X, (0, 0), rng.randint(0, 5))
        assert isinstance(check_induced_homomorphism(cert, L1, L2), Equal)


def test_reflection_reverses_the_ring_loop():
    cert = _reflection_certificate(1)
    L = ring_loop(cert.FX[1])
    img = induced_pi1_map(cert, L)
    assert isinstance(loops_equal_within_budget(img, inverse(L)), Equal)
    assert isinstance(loops_equal_within_budget(concat(img, L), ECPath.constant((0, 0), L.image)), Equal)


def test_level_independence():
    T = tree_from_image(interval(0, 3), (0,))
    cert = tree_similarity(T, 4)
    L = ECPath.from_values([(0,), (1,), (0,)], cert.FX[1])
    for level in (1, 2, 4):
        assert isinstance(check_induced_level_independence(cert, L, level), Equal)


def test_induced_guards():
    cert = from_equivalence(identity_equivalence(interval(0, 2)), 1)
    with pytest.raises(DigitopError):
        induced_pi1_map(cert, ECPath.constant((0,), interval(0, 2)))
    pointed = from_equivalence(identity_equivalence(interval(0, 2), (0,)), 1)
    with pytest.raises(DigitopError):
        induced_pi1_map(pointed, ECPath.constant((1,), interval(0, 2)))
    narrow = tree_similarity(tree_from_image(interval(0, 3), (0,)), 1)
    far = ECPath.from_values([(0,), (1,), (2,), (1,), (0,)], interval(0, 3))
    with pytest.raises(DigitopError):
        induced_pi1_map(narrow, far)


def test_constant_filtration_whole():
    X = DigitalImage.of([(0, 0), (1, 1)], u=2)
    F = constant_filtration(X, 3)
    assert F.whole == X and F.depth == 3
