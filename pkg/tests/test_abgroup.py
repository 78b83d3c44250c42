from itertools import product

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from liecohom.abgroup import (AbGroupError, AbHom, FinAbGroup, Subgroup, all_subgroups, group_new,
                              hom_group, invariant_factors, kernel_image, matmul, quotient, snf,
                              solve_congruences)
from oracles import brute_kernel_order


def det(M):
    n = len(M)
    if n == 0:
        return 1
    if n == 1:
        return M[0][0]
    return sum((-1) ** j * M[0][j] * det([row[:j] + row[j + 1:] for row in M[1:]]) for j in range(n))


def check_snf(M):
    S, U, V = snf(M)
    assert matmul(matmul(U, M), V) == S
    m, n = len(M), len(M[0])
    diag = [S[i][i] for i in range(min(m, n))]
    for i in range(m):
        for j in range(n):
            if i != j:
                assert S[i][j] == 0
    assert all(d >= 0 for d in diag)
    for a, b in zip(diag, diag[1:]):
        assert (b == 0) if a == 0 else b % a == 0
    return S, U, V


# ---------------------------------------------------------------- groups and elements

def test_group_new_orders():
    assert group_new([2]).order == 2
    assert group_new([4, 2]).order == 8
    G = group_new([1, 3])
    assert G.order == 3 and G.rank == 2


def test_bad_modulus_reports_index():
    with pytest.raises(AbGroupError, match="1"):
        FinAbGroup([2, 0])


def test_element_arithmetic():
    G = FinAbGroup([4, 2])
    assert (G(3, 1) + G(2, 1)).coeffs == (1, 0)
    assert (-G(1, 1)).coeffs == (3, 1)
    assert (G(0, 0) + G(3, 1)).coeffs == (3, 1)
    with pytest.raises(AbGroupError):
        G(1, 1) + FinAbGroup([4])(1)


def test_enumeration_is_mixed_radix_zero_first():
    G = FinAbGroup([2, 3])
    assert list(G.elements()) == [(0, 0), (0, 1), (0, 2), (1, 0), (1, 1), (1, 2)]
    assert [G.index(x) for x in G.elements()] == list(range(6))


def test_invariant_factors():
    assert invariant_factors([4, 6]) == (2, 12)
    assert invariant_factors([1, 3]) == (3,)
    assert FinAbGroup([2, 3]).invariant_factors() == (6,)


# ---------------------------------------------------------------- Smith normal form

def test_snf_example():
    S, U, V = check_snf([[2, 4], [6, 8]])
    assert (S[0][0], S[1][1]) == (2, 4)
    assert abs(det(U)) == 1 and abs(det(V)) == 1


def test_snf_trivial_cases():
    S, _, _ = check_snf([[1, 0], [0, 1]])
    assert S == [[1, 0], [0, 1]]
    S, _, _ = check_snf([[0, 0, 0], [0, 0, 0]])
    assert S == [[0, 0, 0], [0, 0, 0]]
    S, U, V = snf([], ncols=3)
    assert S == [] and len(V) == 3


@settings(max_examples=60, deadline=None)
@given(st.integers(1, 6).flatmap(lambda m: st.integers(1, 6).flatmap(
    lambda n: st.lists(st.lists(st.integers(-50, 50), min_size=n, max_size=n), min_size=m, max_size=m))))
def test_snf_properties(M):
    S, U, V = check_snf(M)
    if len(M) == len(M[0]):
        assert abs(det(U)) == 1 and abs(det(V)) == 1
        assert abs(det(M)) == abs(det(S))


# ---------------------------------------------------------------- congruences

def test_solve_congruences_examples():
    S = solve_congruences([[2]], [4])
    assert set(S.elements()) == {(0,), (2,)}
    S = solve_congruences([], [2, 2])
    assert S.is_everything()
    S = solve_congruences([[1, 1], [1, -1]], [3, 3])
    assert S.is_trivial()


def test_solve_congruences_rejects_bad_rows():
    with pytest.raises(AbGroupError):
        solve_congruences([[1, 2, 3]], [2, 2])
    with pytest.raises(AbGroupError):
        solve_congruences([[1]], [2], [3])


@settings(max_examples=80, deadline=None)
@given(st.lists(st.sampled_from([2, 3, 4, 6]), min_size=1, max_size=3).flatmap(
    lambda mods: st.tuples(st.just(mods),
                           st.lists(st.lists(st.integers(-5, 5), min_size=len(mods), max_size=len(mods)),
                                    max_size=3))))
def test_solve_congruences_matches_brute_force(data):
    mods, rows = data
    S = solve_congruences(rows, mods)
    # default row modulus: gcd of the column moduli the row involves
    from math import gcd
    rmods = []
    for r in rows:
        g = 0
        for a, c in zip(r, mods):
            if a:
                g = gcd(g, c)
        rmods.append(g or 1)
    for gen in S.gens:
        assert all(sum(a * x for a, x in zip(r, gen)) % m == 0 for r, m in zip(rows, rmods))
    assert S.order == brute_kernel_order(rows, mods, rmods)


# ---------------------------------------------------------------- homomorphisms

def brute_hom_count(A, B):
    count = 0
    for images in product(B.elements(), repeat=A.rank):
        if all(not any(B.scale(m, y)) for m, y in zip(A.moduli, images)):
            count += 1
    return count


def test_hom_group_examples():
    assert hom_group(FinAbGroup([2]), FinAbGroup([4])).group.canonical().moduli == (2,)
    assert hom_group(FinAbGroup([3]), FinAbGroup([2])).group.order == 1
    assert hom_group(FinAbGroup([2, 2]), FinAbGroup([2])).group.invariant_factors() == (2, 2)


@pytest.mark.parametrize("a,b", [([2], [4]), ([4], [6]), ([2, 2], [4]), ([2, 4], [2, 2]), ([3], [9]), ([4, 4], [8])])
def test_hom_group_matches_enumeration(a, b):
    A, B = FinAbGroup(a), FinAbGroup(b)
    H = hom_group(A, B)
    assert H.group.order == brute_hom_count(A, B)
    for h in H.group.elements():
        assert H.from_hom(H.to_hom(h)) == h


def test_ill_defined_hom_rejected():
    with pytest.raises(AbGroupError):
        AbHom(FinAbGroup([2]), FinAbGroup([4]), [(1,)])


def test_kernel_image_examples():
    Z4 = FinAbGroup([4])
    k, i = kernel_image(AbHom(Z4, Z4, [(2,)]))
    assert set(k.elements()) == {(0,), (2,)} and set(i.elements()) == {(0,), (2,)}
    k, i = kernel_image(AbHom.zero(Z4, FinAbGroup([2])))
    assert k.is_everything() and i.is_trivial()
    G = FinAbGroup([4, 2])
    k, _ = kernel_image(AbHom(G, FinAbGroup([2]), [(0,), (1,)]))
    assert k.order == 4


@st.composite
def homs(draw):
    a = draw(st.lists(st.sampled_from([2, 3, 4, 6, 8]), min_size=1, max_size=2))
    b = draw(st.lists(st.sampled_from([2, 3, 4, 6, 8]), min_size=1, max_size=2))
    A, B = FinAbGroup(a), FinAbGroup(b)
    H = hom_group(A, B)
    h = draw(st.tuples(*[st.integers(0, m - 1) for m in H.group.moduli]))
    return H.to_hom(h)


@settings(max_examples=60, deadline=None)
@given(homs())
def test_kernel_times_image_is_domain(h):
    k, i = kernel_image(h)
    assert k.order * i.order == h.domain.order
    assert all(not any(h(x)) for x in k.elements())
    assert set(i.elements()) == {h(x) for x in h.domain.elements()}


def test_preimage():
    G = FinAbGroup([4, 2])
    p = AbHom(G, FinAbGroup([2]), [(1,), (1,)])
    x = p.preimage((1,))
    assert p(x) == (1,)
    assert AbHom(G, FinAbGroup([4]), [(2,), (0,)]).preimage((1,)) is None


# ---------------------------------------------------------------- subgroups and quotients

def test_quotient_examples():
    G = FinAbGroup([4, 2])
    Q, proj = quotient(G, Subgroup(G, [(2, 0)]))
    assert Q.invariant_factors() == (2, 2)
    assert quotient(G, Subgroup(G, []))[0].invariant_factors() == (2, 4)
    assert quotient(G, Subgroup(G, G.gens()))[0].order == 1


@settings(max_examples=60, deadline=None)
@given(st.lists(st.sampled_from([2, 3, 4, 6]), min_size=1, max_size=3).flatmap(
    lambda mods: st.tuples(st.just(mods), st.lists(st.tuples(*[st.integers(0, m - 1) for m in mods]), max_size=3))))
def test_quotient_properties(data):
    mods, gens = data
    G = FinAbGroup(mods)
    S = Subgroup(G, gens)
    Q, proj = quotient(G, S)
    assert G.order == S.order * Q.order
    assert proj.is_surjective()
    assert proj.kernel() == S


def test_subgroup_equality_and_membership():
    G = FinAbGroup([4, 2])
    assert Subgroup(G, [(2, 0)]) == Subgroup(G, [(2, 0), (0, 0)])
    assert (1, 0) not in Subgroup(G, [(2, 0)])
    K = FinAbGroup([2, 2])
    S = Subgroup(K, [(1, 1)])
    assert S != Subgroup(K, K.gens())
    assert not S.contains(Subgroup(K, K.gens()))
    assert S.order == 2


def test_subgroup_parent_mismatch():
    with pytest.raises(AbGroupError):
        Subgroup(FinAbGroup([2]), []) == Subgroup(FinAbGroup([4]), [])


def test_subgroup_as_group():
    G = FinAbGroup([4, 4])
    S, emb = Subgroup(G, [(2, 0), (0, 1)]).as_group()
    assert S.invariant_factors() == (2, 4)
    assert emb.is_injective()
    assert emb.image() == Subgroup(G, [(2, 0), (0, 1)])


def test_all_subgroups_counts():
    # (Z/2)^2 has 5 subgroups, Z/4 + Z/2 has 8, (Z/2)^3 has 16
    assert len(all_subgroups(FinAbGroup([2, 2]))) == 5
    assert len(all_subgroups(FinAbGroup([4, 2]))) == 8
    assert len(all_subgroups(FinAbGroup([2, 2, 2]))) == 16
