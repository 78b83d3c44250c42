"""
Small Lie rings used as fixtures: abelian types, a few named rings, and
every structure-constant table on small additive groups up to isomorphism.
"""

from __future__ import annotations

from itertools import combinations, product

from .abgroup import AbGroupError, AbHom, FinAbGroup, Subgroup, all_subgroups
from .liering import LieIdeal, LieRing, abelian, all_lie_rings, center, heisenberg


def abelian_types(order: int) -> list[tuple[int, ...]]:
    """Invariant-factor lists ``d1 | d2 | ...`` with product ``order``."""
    if order == 1:
        return [()]
    out = []

    def build(prefix, rest):
        if rest == 1:
            out.append(tuple(prefix))
            return
        # the next factor is a multiple of the previous one and divides what is left
        start = prefix[-1] if prefix else 2
        for d in range(start, rest + 1):
            if rest % d == 0 and (not prefix or d % prefix[-1] == 0) and (rest == d or (rest // d) % d == 0):
                build(prefix + [d], rest // d)

    build([], order)
    return sorted(out, key=lambda t: (len(t), t))


def abelian_up_to(max_order: int) -> list[LieRing]:
    return [abelian(t) for n in range(1, max_order + 1) for t in abelian_types(n)]


def automorphisms(G: FinAbGroup) -> list[AbHom]:
    """All automorphisms of a small group, by brute force over generator images."""
    cands = [[x for x in G.elements() if G.element_order(x) == m] for m in G.moduli]
    out = []
    for images in product(*cands):
        try:
            a = AbHom(G, G, list(images))
        except AbGroupError:
            continue
        if a.is_injective():
            out.append(a)
    return out


def transport(L: LieRing, a: AbHom, a_inv: AbHom) -> LieRing:
    """The ring with bracket ``a^-1[a x, a y]``, isomorphic to L through ``a``."""
    G = L.additive
    sc = {}
    for i, j in combinations(range(G.rank), 2):
        v = a_inv(L.bracket(a(G.gen(i)), a(G.gen(j))))
        if any(v):
            sc[(i, j)] = v
    return LieRing(G.moduli, sc)


def isomorphism_classes(moduli) -> list[LieRing]:
    """One table per isomorphism class of Lie rings on ``Z/d1 + ... + Z/dk``."""
    rings = all_lie_rings(moduli)
    if not rings:
        return []
    G = rings[0].additive
    auts = automorphisms(G)
    ident = AbHom.identity(G)
    inv = [next(b for b in auts if b.compose(a) == ident) for a in auts]
    seen, reps = set(), []
    for L in rings:
        if L.key in seen:
            continue
        reps.append(L)
        for a, b in zip(auts, inv):
            seen.add(transport(L, a, b).key)
    return reps


def small_lie_rings(max_order: int) -> list[LieRing]:
    """All Lie rings of order at most ``max_order`` up to isomorphism."""
    out = []
    for n in range(1, max_order + 1):
        for t in abelian_types(n):
            out.extend(isomorphism_classes(t) if len(t) > 1 else [abelian(t)])
    return out


def raw_lie_rings(max_order: int) -> list[LieRing]:
    """Every structure-constant table on every invariant-factor type (no isomorphism reduction)."""
    out = []
    for n in range(1, max_order + 1):
        for t in abelian_types(n):
            out.extend(all_lie_rings(t) if len(t) > 1 else [abelian(t)])
    return out


def central_ideals(L: LieRing) -> list[LieIdeal]:
    Z = center(L).subgroup
    return [LieIdeal(L, S, central=True) for S in all_subgroups(L.additive) if Z.contains(S)]


def named() -> dict[str, LieRing]:
    return {
        "Z2": abelian([2]),
        "Z3": abelian([3]),
        "Z4": abelian([4]),
        "Z2xZ2": abelian([2, 2]),
        "Z2xZ4": abelian([2, 4]),
        "Z2^3": abelian([2, 2, 2]),
        "heis2": heisenberg(2),
        "heis3": heisenberg(3),
        # [e1, e2] = e1 on (Z/2)^2: the non-abelian ring of order 4
        "aff2": LieRing([2, 2], {(0, 1): (1, 0)}),
        "z2z4_twist": LieRing([2, 4], {(0, 1): (0, 2)}),
    }
