from math import gcd, prod

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from liecohom.abgroup import FinAbGroup
from liecohom.catalog import named, small_lie_rings
from liecohom.cohomology import (Cocycle, CohomologyError, ResourceLimitError, b2, coboundary_from,
                                 h2, is_cocycle, order_limit, z2)
from liecohom.liering import LieRing, abelian, heisenberg, hom_lie_to_abelian
from oracles import cyclic_z2_b2

Z2 = FinAbGroup([2])
Z3 = FinAbGroup([3])


def tables(L, A, f=None, g=None):
    N = L.order
    F = np.zeros((N, N, A.rank), dtype=np.int64)
    G = np.zeros((N, N, A.rank), dtype=np.int64)
    for (x, y), v in (f or {}).items():
        F[x, y] = v
    for (x, y), v in (g or {}).items():
        G[x, y] = v
    return Cocycle(L, A, F, G)


# ---------------------------------------------------------------- is_cocycle

def test_is_cocycle_examples():
    L = abelian([2])
    assert is_cocycle(Cocycle.zero(L, Z2))
    assert is_cocycle(tables(L, Z2, g={(1, 1): 1}))
    bad = is_cocycle(tables(L, Z2, g={(0, 1): 1}))
    assert not bad
    # first failure in (x, y, z) order is the associativity identity at x = 0
    assert bad.condition == 4 and bad.witness[0] == 0


def test_condition_three_is_checked():
    # an alternating biadditive f with g = 0 passes (1), (2), (4), (5) but not (3)
    L = LieRing([2, 2, 2], {(1, 2): (0, 0, 1)})
    C = L.tables.coords
    f = ((C[:, None, 0] * C[None, :, 2] - C[:, None, 2] * C[None, :, 0]) % 2)[..., None]
    res = is_cocycle(Cocycle(L, Z2, f, np.zeros_like(f)))
    assert res.condition == 3


def test_table_shape_mismatch():
    with pytest.raises(CohomologyError):
        Cocycle(abelian([2]), Z2, np.zeros((2, 2, 1)), np.zeros((3, 3, 1)))


# ---------------------------------------------------------------- coboundaries

def test_coboundary_examples():
    assert coboundary_from(abelian([2]), Z2, [[0], [0]]).is_zero()
    assert coboundary_from(abelian([2]), Z2, [[0], [1]]).is_zero()
    c = coboundary_from(abelian([3]), Z3, [[0], [1], [0]])
    assert not c.f.any()
    assert c.g[1, 1, 0] == 2 and c.g[1, 2, 0] == 1 and c.g[2, 1, 0] == 1 and c.g[2, 2, 0] == 2


def test_coboundary_needs_pointed_map():
    with pytest.raises(CohomologyError):
        coboundary_from(abelian([2]), Z2, [[1], [0]])


# ---------------------------------------------------------------- Z^2, B^2, H^2

def test_z2_b2_examples():
    assert z2(abelian([2]), Z2).order == 2
    assert b2(abelian([2]), Z2).order == 1
    assert z2(abelian([]), Z2).order == 1
    assert z2(abelian([2]), FinAbGroup([4])).order == 4
    # the indicator coboundaries of t(1) and t(2) coincide on Z/3, so B^2 has order 3
    assert b2(abelian([3]), Z3).order == 3
    assert b2(heisenberg(2), FinAbGroup([1])).order == 1


# frozen from the enumeration oracle in oracles.cyclic_z2_b2
ORACLE = {(1, 2): (1, 1), (1, 3): (1, 1), (2, 2): (2, 1), (2, 3): (3, 3),
          (3, 2): (4, 4), (3, 3): (9, 3), (2, 4): (4, 2)}


@pytest.mark.parametrize("n,a", sorted(ORACLE))
def test_linear_algebra_matches_enumeration(n, a):
    assert cyclic_z2_b2(n, a) == ORACLE[(n, a)]
    H = h2(abelian([n] if n > 1 else []), FinAbGroup([a]))
    assert (H.z2_order, H.b2_order) == ORACLE[(n, a)]


@pytest.mark.parametrize("p", [2, 3, 5])
def test_h2_cyclic(p):
    assert h2(abelian([p]), FinAbGroup([p])).group.invariant_factors() == (p,)


def test_h2_trivial_ring():
    assert h2(abelian([]), FinAbGroup([4])).order == 1


def test_class_of_examples():
    L = abelian([2])
    H = h2(L, Z2)
    assert H.class_of(tables(L, Z2, g={(1, 1): 1})) == (1,)
    assert H.class_of(Cocycle.zero(L, Z2)) == (0,)
    with pytest.raises(CohomologyError):
        H.class_of(tables(L, Z2, g={(0, 1): 1}))
    with pytest.raises(CohomologyError):
        H.class_of(Cocycle.zero(abelian([3]), Z2))


def abelian_h2_order(moduli, m):
    # Ext(L, Z/m) times Hom(exterior square of L, Z/m)
    ext = prod(gcd(d, m) for d in moduli)
    wedge = prod(gcd(gcd(a, b), m) for i, a in enumerate(moduli) for b in moduli[i + 1:])
    return ext * wedge


FIXTURES = small_lie_rings(8) + [abelian([4, 4]), abelian([2, 2, 2, 2]), abelian([16])]
COEFFS = [[2], [3], [4], [2, 2]]


@pytest.mark.parametrize("L", FIXTURES, ids=repr)
@pytest.mark.parametrize("a", COEFFS, ids=str)
def test_h2_invariants(L, a):
    A = FinAbGroup(a)
    H = h2(L, A)
    assert H.order * H.b2_order == H.z2_order
    # t -> coboundary has kernel Hom(L, A)
    homs = hom_lie_to_abelian(L, A).group.order
    assert H.b2_order * homs == A.order ** (L.order - 1)
    if L.is_abelian():
        assert H.order == prod(abelian_h2_order(L.moduli, m) for m in A.moduli)
    for k, r in enumerate(H.reps):
        assert is_cocycle(r)
        assert H.class_of(r) == H.group.gen(k)
    for c in H.z2_generators():
        assert is_cocycle(c)


@pytest.mark.parametrize("L", [abelian([2, 2]), heisenberg(2), named()["aff2"]], ids=repr)
def test_generator_sets_are_cocycles(L):
    for A in (Z2, FinAbGroup([4])):
        Z = z2(L, A)
        B = b2(L, A)
        assert B.issubset(Z)
        for gens in (Z.gens, B.gens):
            for v in gens:
                assert is_cocycle(Cocycle.from_vector(L, A, v))


def test_unknown_layout():
    L = abelian([2])
    c = tables(L, FinAbGroup([2, 4]), f={(0, 1): (1, 3)}, g={(1, 0): (1, 2)})
    v = c.vector()
    # f entries row-major with the A-coordinate innermost, then g
    assert list(v[:8]) == [0, 0, 1, 3, 0, 0, 0, 0]
    assert list(v[8:]) == [0, 0, 0, 0, 1, 2, 0, 0]
    assert Cocycle.from_vector(L, c.A, v) == c


@settings(max_examples=40, deadline=None)
@given(st.sampled_from([(heisenberg(2), [2]), (abelian([2, 4]), [4]), (named()["aff2"], [2, 2]),
                        (abelian([3, 3]), [3]), (abelian([4]), [2, 4])]), st.data())
def test_cohomologous_cocycles_share_a_class(case, data):
    L, a = case
    A = FinAbGroup(a)
    H = h2(L, A)
    el = st.tuples(*[st.integers(0, m - 1) for m in A.moduli])
    t = [A.zero()] + [data.draw(el) for _ in range(L.order - 1)]
    cls = tuple(data.draw(st.integers(0, m - 1)) for m in H.group.moduli)
    rep = H.cocycle_of_class(cls)
    moved = rep + coboundary_from(L, A, t)
    assert is_cocycle(moved)
    assert H.class_of(moved) == H.class_of(rep) == H.group.reduce(cls)
    assert H.is_coboundary(coboundary_from(L, A, t))
    other = tuple(data.draw(st.integers(0, m - 1)) for m in H.group.moduli)
    assert H.class_of(rep + H.cocycle_of_class(other)) == H.group.add(cls, other)


def test_coboundary_witness():
    L, A = heisenberg(2), FinAbGroup([4])
    H = h2(L, A)
    rng = np.random.default_rng(1)
    t = rng.integers(0, 4, (L.order, 1))
    t[0] = 0
    c = coboundary_from(L, A, t)
    w = H.coboundary_witness(c)
    assert coboundary_from(L, A, w) == c
    assert H.coboundary_witness(H.reps[0]) is None


def test_order_guard(monkeypatch):
    with pytest.raises(ResourceLimitError):
        h2(abelian([33]), Z2)
    monkeypatch.setenv("LIECOHOM_MAX_ORDER", "4")
    with pytest.raises(ResourceLimitError):
        h2(abelian([8]), Z2)
    with order_limit(8):
        assert h2(abelian([8]), Z2).order == 2
