"""
Finite Lie rings by structure constants.

A Lie ring is an additive group ``Z/d1 + ... + Z/dk`` together with the
brackets ``[g_i, g_j]`` of its generators for ``i < j``.  The remaining
products are implied (``[g_j, g_i] = -[g_i, g_j]``, ``[g_i, g_i] = 0``), so
the bracket is alternating by construction; bilinearity extends it to all
elements.  Construction checks that each structure constant is killed by
both generator orders and that the Jacobi identity holds on generators,
which is enough because the Jacobiator is additive in each argument.

>>> H = LieRing([2, 2, 2], {(0, 1): (0, 0, 1)})
>>> H.bracket((1, 1, 0), (0, 1, 0))
(0, 0, 1)
>>> center(H).subgroup.order
2
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from itertools import combinations, product
from typing import Iterable, Mapping

import numpy as np

from .abgroup import (AbHom, FinAbGroup, GroupElement, HomSpace, Subgroup, Vector,
                      hom_group, quotient_full, solve_congruences)


class LieRingError(ValueError):
    """Raised when structure constants violate an axiom.

    ``axiom`` is ``"well-definedness"`` or ``"jacobi"``; ``witness`` holds
    the offending generator indices.
    """

    def __init__(self, message, axiom=None, witness=None):
        super().__init__(message)
        self.axiom = axiom
        self.witness = witness


class LieRing:

    def __init__(self, moduli: Iterable[int], brackets: Mapping | None = None):
        self.additive = FinAbGroup(moduli)
        G = self.additive
        k = G.rank
        sc = {}
        for key, value in (brackets or {}).items():
            i, j = key
            if not (0 <= i < j < k):
                raise LieRingError(f"bracket index pair {(i, j)} must satisfy 0 <= i < j < {k}")
            v = G.reduce(value)
            if any(v):
                sc[(i, j)] = v
        self.sc = sc
        self._table = np.zeros((k, k, k), dtype=np.int64)
        for (i, j), v in sc.items():
            self._table[i, j] = v
            self._table[j, i] = G.neg(v)
        self._validate()

    def _validate(self):
        G = self.additive
        for (i, j), v in sorted(self.sc.items()):
            for idx in (i, j):
                if any(G.scale(G.moduli[idx], v)):
                    raise LieRingError(
                        f"order incompatibility: {G.moduli[idx]} * [g{i + 1},g{j + 1}] != 0",
                        axiom="well-definedness", witness=(i, j))
        gens = G.gens()
        for i, j, l in combinations(range(G.rank), 3):
            x, y, z = gens[i], gens[j], gens[l]
            jac = G.add(G.add(self.bracket(x, self.bracket(y, z)),
                              self.bracket(z, self.bracket(x, y))),
                        self.bracket(y, self.bracket(z, x)))
            if any(jac):
                raise LieRingError(f"Jacobi identity fails on generators ({i + 1},{j + 1},{l + 1})",
                                   axiom="jacobi", witness=(i, j, l))

    def __repr__(self):
        br = {k: list(v) for k, v in sorted(self.sc.items())}
        return f"LieRing({list(self.additive.moduli)}, {br})"

    def __eq__(self, other):
        return isinstance(other, LieRing) and self.key == other.key

    def __hash__(self):
        return hash(self.key)

    @cached_property
    def key(self):
        return (self.additive.moduli, tuple(sorted(self.sc.items())))

    @property
    def moduli(self):
        return self.additive.moduli

    @property
    def order(self) -> int:
        return self.additive.order

    @property
    def rank(self) -> int:
        return self.additive.rank

    def is_abelian(self) -> bool:
        return not self.sc

    def element(self, coeffs) -> LieElement:
        return LieElement(self, self.additive.reduce(coeffs))

    def gen(self, i: int) -> LieElement:
        return LieElement(self, self.additive.gen(i))

    def elements(self):
        return self.additive.elements()

    def structure_constant(self, i: int, j: int) -> Vector:
        return tuple(int(c) for c in self._table[i, j])

    def bracket(self, x, y):
        """Bilinear extension of the structure constants."""
        if isinstance(x, LieElement) or isinstance(y, LieElement):
            if not (isinstance(x, LieElement) and isinstance(y, LieElement)) \
                    or x.ring != self or y.ring != self:
                raise LieRingError("elements belong to different Lie rings")
            return LieElement(self, self.bracket(x.coeffs, y.coeffs))
        xv = np.asarray(x, dtype=np.int64)
        yv = np.asarray(y, dtype=np.int64)
        out = np.einsum("i,j,ijk->k", xv, yv, self._table)
        return self.additive.reduce(int(c) for c in out)

    # dense tables over the full element list, used by the cohomology code
    @cached_property
    def tables(self) -> ElementTables:
        return ElementTables.build(self)

    def index(self, x) -> int:
        return self.additive.index(x)


@dataclass(frozen=True)
class LieElement:
    ring: LieRing
    coeffs: Vector

    def _same(self, other):
        if not isinstance(other, LieElement) or other.ring != self.ring:
            raise LieRingError("elements belong to different Lie rings")

    def __add__(self, other):
        self._same(other)
        return LieElement(self.ring, self.ring.additive.add(self.coeffs, other.coeffs))

    def __sub__(self, other):
        self._same(other)
        return LieElement(self.ring, self.ring.additive.sub(self.coeffs, other.coeffs))

    def __neg__(self):
        return LieElement(self.ring, self.ring.additive.neg(self.coeffs))

    def __rmul__(self, c: int):
        return LieElement(self.ring, self.ring.additive.scale(c, self.coeffs))

    def is_zero(self):
        return not any(self.coeffs)

    def as_group_element(self) -> GroupElement:
        return GroupElement(self.ring.additive, self.coeffs)


@dataclass(frozen=True)
class ElementTables:
    """Index arithmetic on the enumerated elements (mixed radix, zero first)."""
    coords: np.ndarray   # (N, rank)
    add: np.ndarray      # (N, N)
    neg: np.ndarray      # (N,)
    br: np.ndarray       # (N, N)

    @property
    def size(self):
        return self.coords.shape[0]

    @staticmethod
    def build(L: LieRing) -> ElementTables:
        G = L.additive
        mod = np.array(G.moduli, dtype=np.int64)
        N = G.order
        coords = np.array(list(G.elements()), dtype=np.int64).reshape(N, G.rank)
        weights = np.ones(G.rank, dtype=np.int64)
        for i in range(G.rank - 2, -1, -1):
            weights[i] = weights[i + 1] * mod[i + 1]

        def idx(c):
            return (c % mod) @ weights if G.rank else np.zeros(c.shape[:-1], dtype=np.int64)

        add = idx(coords[:, None, :] + coords[None, :, :])
        neg = idx(-coords)
        brc = np.einsum("xi,yj,ijk->xyk", coords, coords, L._table)
        br = idx(brc)
        return ElementTables(coords, add.astype(np.int64), neg.astype(np.int64), br.astype(np.int64))


def lie_new(moduli: Iterable[int], sc_entries: Mapping | None = None) -> LieRing:
    return LieRing(moduli, sc_entries)


def abelian(moduli: Iterable[int]) -> LieRing:
    return LieRing(moduli, {})


def heisenberg(p: int) -> LieRing:
    """[g1, g2] = g3 over Z/p."""
    return LieRing([p, p, p], {(0, 1): (0, 0, 1)})


def bracket(x: LieElement, y: LieElement) -> LieElement:
    return x.ring.bracket(x, y)


# ---------------------------------------------------------------- ideals

class LieIdeal:
    """A subgroup of ``ring.additive`` known to be an ideal (and possibly central)."""

    def __init__(self, ring: LieRing, subgroup: Subgroup, central: bool | None = None):
        if subgroup.parent != ring.additive:
            raise LieRingError("subgroup does not live in this Lie ring")
        self.ring = ring
        self.subgroup = subgroup
        L = ring
        gens = ring.additive.gens()
        brackets = [L.bracket(g, h) for g in gens for h in subgroup.gens]
        if not all(b in subgroup for b in brackets):
            raise LieRingError("subgroup is not an ideal")
        is_central = not any(any(b) for b in brackets)
        if central and not is_central:
            raise LieRingError("ideal is not central")
        self.central = is_central

    def __repr__(self):
        return f"LieIdeal(order={self.subgroup.order}, central={self.central})"

    def __eq__(self, other):
        return isinstance(other, LieIdeal) and self.ring == other.ring and self.subgroup == other.subgroup

    def __hash__(self):
        return hash((self.ring, self.subgroup))

    def __contains__(self, x):
        if isinstance(x, LieElement):
            x = x.coeffs
        return x in self.subgroup

    @property
    def order(self):
        return self.subgroup.order


def is_ideal(L: LieRing, S: Subgroup) -> bool:
    return all(L.bracket(g, h) in S for g in L.additive.gens() for h in S.gens)


def ideal(L: LieRing, gens: Iterable) -> LieIdeal:
    return LieIdeal(L, Subgroup(L.additive, gens))


def center(L: LieRing) -> LieIdeal:
    G = L.additive
    k = G.rank
    rows, mods = [], []
    # [x, g_j] = sum_i x_i [g_i, g_j], one congruence per output coordinate
    for j in range(k):
        for c in range(k):
            rows.append([int(L._table[i, j, c]) for i in range(k)])
            mods.append(G.moduli[c])
    Z = solve_congruences(rows, G.moduli, mods)
    return LieIdeal(L, Z, central=True)


def derived(L: LieRing) -> LieIdeal:
    return LieIdeal(L, Subgroup(L.additive, L.sc.values()))


def quotient_lie(L: LieRing, I: LieIdeal | Subgroup):
    """``(L/I, projection)``; the projection is an ``AbHom`` on additive groups."""
    if isinstance(I, Subgroup):
        I = LieIdeal(L, I)
    elif I.ring != L:
        raise LieRingError("ideal belongs to a different Lie ring")
    Q, proj, lift = quotient_full(L.additive, I.subgroup)
    lifts = [lift(Q.gen(i)) for i in range(Q.rank)]
    sc = {}
    for i, j in combinations(range(Q.rank), 2):
        v = proj(L.bracket(lifts[i], lifts[j]))
        if any(v):
            sc[(i, j)] = v
    LQ = LieRing(Q.moduli, sc)
    # the induced bracket must not depend on the chosen lifts
    for x in L.additive.gens():
        for y in L.additive.gens():
            assert proj(L.bracket(x, y)) == LQ.bracket(proj(x), proj(y)), "quotient bracket not well defined"
    return LQ, proj


def is_lie_hom(h: AbHom, src: LieRing, dst: LieRing) -> bool:
    if h.domain != src.additive or h.codomain != dst.additive:
        return False
    gens = src.additive.gens()
    return all(h(src.bracket(x, y)) == dst.bracket(h(x), h(y)) for x in gens for y in gens)


class LieHomSpace:
    """Hom(L, A) for an abelian coefficient group A, realised as Hom(L/L^2, A)."""

    def __init__(self, L: LieRing, A: FinAbGroup):
        self.L, self.A = L, A
        Q, proj, lift = quotient_full(L.additive, derived(L).subgroup)
        self.abelianization = Q
        self.proj = proj
        self._lift = lift
        self.inner: HomSpace = hom_group(Q, A)
        self.group = self.inner.group

    def to_hom(self, h) -> AbHom:
        return self.inner.to_hom(h).compose(self.proj)

    def from_hom(self, chi: AbHom) -> Vector:
        if chi.domain != self.L.additive or chi.codomain != self.A:
            raise LieRingError("map has the wrong domain or codomain")
        Q = self.abelianization
        through = AbHom(Q, self.A, [chi(self._lift(Q.gen(i))) for i in range(Q.rank)])
        if through.compose(self.proj) != chi:
            raise LieRingError("map does not vanish on the derived subring")
        return self.inner.from_hom(through)


def hom_lie_to_abelian(L: LieRing, A: FinAbGroup) -> LieHomSpace:
    return LieHomSpace(L, A)


def direct_sum(L1: LieRing, L2: LieRing) -> LieRing:
    k1 = L1.rank
    sc = dict(L1.sc)
    for (i, j), v in L1.sc.items():
        sc[(i, j)] = tuple(v) + (0,) * L2.rank
    for (i, j), v in L2.sc.items():
        sc[(i + k1, j + k1)] = (0,) * k1 + tuple(v)
    return LieRing(L1.additive.moduli + L2.additive.moduli, sc)


def all_lie_rings(moduli) -> list[LieRing]:
    """Every valid structure-constant table on the given additive group (no isomorphism reduction)."""
    G = FinAbGroup(moduli)
    pairs = list(combinations(range(G.rank), 2))
    # admissible values of [g_i, g_j]: killed by both orders
    choices = []
    for i, j in pairs:
        choices.append([v for v in G.elements()
                        if not any(G.scale(G.moduli[i], v)) and not any(G.scale(G.moduli[j], v))])
    out = []
    for values in product(*choices):
        try:
            out.append(LieRing(moduli, dict(zip(pairs, values))))
        except LieRingError:
            pass
    return out
