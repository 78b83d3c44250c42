"""
Restriction, inflation and transgression for a central ideal H of L, and
an exactness checker for

    0 -> Hom(L/H, A) -> Hom(L, A) -> Hom(H, A) -> H^2(L/H, A) -> H^2(L, A)

with maps Inf, Res, Tra, Inf.  All five groups are finite abelian groups
and all four maps are ``AbHom`` objects between them, so exactness reduces
to comparing subgroups through their canonical bases.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from typing import NamedTuple

import numpy as np

from .abgroup import AbHom, FinAbGroup, HomSpace, Subgroup, Vector, hom_group
from .cohomology import Cocycle, H2Group, coboundary_from, h2
from .liering import (LieHomSpace, LieIdeal, LieRing, LieRingError, hom_lie_to_abelian,
                      is_lie_hom, quotient_lie)


class FiveTermError(ValueError):
    pass


def _central(H: LieIdeal) -> LieIdeal:
    if not H.central:
        raise FiveTermError("H is not a central ideal")
    return H


class CentralQuotient:
    """``L -> L/H`` for a central ideal, with index tables and the H-valued defect cocycle."""

    def __init__(self, H: LieIdeal):
        self.H = _central(H)
        self.L = L = H.ring
        self.Q, self.proj = quotient_lie(L, H)
        self.Hgroup, self.embed = H.subgroup.as_group()
        Lc = L.tables.coords
        P = np.array(self.proj.images, dtype=np.int64).reshape(L.rank, self.Q.rank)
        qc = (Lc @ P) % np.array(self.Q.moduli, dtype=np.int64) if self.Q.rank else Lc[:, :0]
        self.pi = np.array([self.Q.index(tuple(int(v) for v in row)) for row in qc], dtype=np.int64)
        # L-index of h in H -> element of Hgroup
        self.h_of = {L.index(self.embed(h)): h for h in self.Hgroup.elements()}

    def section(self, rule: str = "first") -> np.ndarray:
        """Coset representatives: enumeration-least (``first``) or, with 0 kept for 0, the greatest."""
        mu = np.full(self.Q.order, -1, dtype=np.int64)
        order = range(self.L.order) if rule == "first" else range(self.L.order - 1, -1, -1)
        for x in order:
            if mu[self.pi[x]] < 0:
                mu[self.pi[x]] = x
        mu[0] = 0
        return mu

    def pullback(self, c: Cocycle) -> Cocycle:
        if c.L != self.Q:
            raise FiveTermError("cocycle does not live on L/H")
        pi = self.pi
        return Cocycle(self.L, c.A, c.f[pi[:, None], pi[None, :]], c.g[pi[:, None], pi[None, :]])

    def defect(self, mu: np.ndarray | None = None):
        """The L-indices of ``[mu x, mu y] - mu[x, y]`` and ``mu x + mu y - mu(x + y)``; all lie in H."""
        mu = self.section() if mu is None else mu
        Lt, Qt = self.L.tables, self.Q.tables
        f = Lt.add[Lt.br[mu[:, None], mu[None, :]], Lt.neg[mu[Qt.br]]]
        g = Lt.add[Lt.add[mu[:, None], mu[None, :]], Lt.neg[mu[Qt.add]]]
        return f, g


def res(chi: AbHom, H: LieIdeal) -> AbHom:
    """Restriction of ``chi: L -> A`` to H (as a map out of ``H.subgroup.as_group()``)."""
    _central(H)
    _, embed = H.subgroup.as_group()
    if chi.domain != H.ring.additive:
        raise FiveTermError("chi is not defined on L")
    return chi.compose(embed)


def inf_hom(chi: AbHom, proj: AbHom) -> AbHom:
    """``chi o proj`` for ``chi: L/H -> A``."""
    return chi.compose(proj)


def tra(chi: AbHom, Hq: CentralQuotient, rule: str = "first") -> Vector:
    """Class in H^2(L/H, A) of the defect cocycle of ``L -> L/H`` pushed through ``chi: H -> A``."""
    if chi.domain != Hq.Hgroup:
        raise FiveTermError("chi is not defined on H")
    A = chi.codomain
    f, g = Hq.defect(Hq.section(rule))
    table = np.zeros((Hq.L.order, A.rank), dtype=np.int64)
    for i, h in Hq.h_of.items():
        table[i] = chi(h)
    c = Cocycle(Hq.Q, A, table[f], table[g])
    return h2(Hq.Q, A).class_of(c)


def inf_h2(h, Hq: CentralQuotient, A: FinAbGroup) -> Vector:
    """Pull a class of H^2(L/H, A) back to H^2(L, A)."""
    rep = h2(Hq.Q, A).cocycle_of_class(h)
    return h2(Hq.L, A).class_of(Hq.pullback(rep))


def _check_inflation_well_defined(Hq: CentralQuotient, A: FinAbGroup):
    """Coboundaries of t on L/H pull back to the coboundaries of t o pi."""
    Q = Hq.Q
    for l in range(1, Q.order):
        for k in range(A.rank):
            t = np.zeros((Q.order, A.rank), dtype=np.int64)
            t[l, k] = 1
            if Hq.pullback(coboundary_from(Q, A, t)) != coboundary_from(Hq.L, A, t[Hq.pi]):
                raise FiveTermError("inflation does not carry coboundaries to coboundaries")


@dataclass(eq=False)
class FiveTermReport:
    L: LieRing
    H: LieIdeal
    A: FinAbGroup
    hom_quotient: FinAbGroup      # Hom(L/H, A)
    hom_L: FinAbGroup             # Hom(L, A)
    hom_H: FinAbGroup             # Hom(H, A)
    h2_quotient: FinAbGroup       # H^2(L/H, A)
    h2_L: FinAbGroup              # H^2(L, A)
    inf1: AbHom
    res: AbHom
    tra: AbHom
    inf2: AbHom

    @cached_property
    def verdicts(self) -> dict[str, bool]:
        return {
            "inf_injective": self.inf1.kernel().is_trivial(),
            "exact_at_hom_L": self.res.kernel() == self.inf1.image(),
            "exact_at_hom_H": self.tra.kernel() == self.res.image(),
            "exact_at_h2_quotient": self.inf2.kernel() == self.tra.image(),
        }

    @property
    def exact(self) -> bool:
        return all(self.verdicts.values())

    def to_dict(self) -> dict:
        def grp(G):
            return list(G.invariant_factors())

        def hom(h):
            return {"domain": list(h.domain.moduli), "codomain": list(h.codomain.moduli),
                    "images": [list(v) for v in h.images]}

        return {
            "groups": {"hom_quotient": grp(self.hom_quotient), "hom_L": grp(self.hom_L),
                       "hom_H": grp(self.hom_H), "h2_quotient": grp(self.h2_quotient),
                       "h2_L": grp(self.h2_L)},
            "maps": {"inf_hom": hom(self.inf1), "res": hom(self.res), "tra": hom(self.tra),
                     "inf_h2": hom(self.inf2)},
            "ideal_order": self.H.order,
            "verdicts": {k: ("exact" if v else "NOT exact") for k, v in self.verdicts.items()},
        }


def five_term_maps(L: LieRing, H: LieIdeal, A: FinAbGroup, rule: str = "first") -> FiveTermReport:
    if H.ring != L:
        raise FiveTermError("ideal belongs to another Lie ring")
    Hq = CentralQuotient(H)
    Q = Hq.Q
    homQ: LieHomSpace = hom_lie_to_abelian(Q, A)
    homL: LieHomSpace = hom_lie_to_abelian(L, A)
    homH: HomSpace = hom_group(Hq.Hgroup, A)
    h2Q: H2Group = h2(Q, A)
    h2L: H2Group = h2(L, A)
    _check_inflation_well_defined(Hq, A)
    inf1 = AbHom(homQ.group, homL.group,
                 [homL.from_hom(inf_hom(homQ.to_hom(e), Hq.proj)) for e in homQ.group.gens()])
    r = AbHom(homL.group, homH.group,
              [homH.from_hom(res(homL.to_hom(e), H)) for e in homL.group.gens()])
    t = AbHom(homH.group, h2Q.group, [tra(homH.to_hom(e), Hq, rule) for e in homH.group.gens()])
    i2 = AbHom(h2Q.group, h2L.group, [inf_h2(e, Hq, A) for e in h2Q.group.gens()])
    return FiveTermReport(L, H, A, homQ.group, homL.group, homH.group, h2Q.group, h2L.group,
                          inf1, r, t, i2)


def check_five_term(L: LieRing, H: LieIdeal, A: FinAbGroup) -> FiveTermReport:
    """Build the five groups and four maps; ``report.verdicts`` holds the exactness checks."""
    return five_term_maps(L, H, A)


# ---------------------------------------------------------------- Hom is left exact

@dataclass(eq=False)
class ShortExactSequence:
    """``0 -> X1 -i-> X2 -p-> X3 -> 0`` of Lie rings or of finite abelian groups."""
    X1: object
    X2: object
    X3: object
    i: AbHom
    p: AbHom

    def __post_init__(self):
        add = [x.additive if isinstance(x, LieRing) else x for x in (self.X1, self.X2, self.X3)]
        if (self.i.domain, self.i.codomain, self.p.domain, self.p.codomain) != (add[0], add[1], add[1], add[2]):
            raise FiveTermError("maps do not match the objects")
        if not (self.i.is_injective() and self.p.is_surjective() and self.i.image() == self.p.kernel()):
            raise FiveTermError("sequence is not exact")
        if self.lie:
            if not (is_lie_hom(self.i, self.X1, self.X2) and is_lie_hom(self.p, self.X2, self.X3)):
                raise FiveTermError("maps are not Lie ring homomorphisms")

    @property
    def lie(self) -> bool:
        return isinstance(self.X1, LieRing)


class HomExactness(NamedTuple):
    first_injective: bool
    middle_exact: bool

    def __bool__(self):
        return self.first_injective and self.middle_exact


def check_hom_left_exact(seq: ShortExactSequence, other) -> HomExactness:
    """Exactness of ``0 -> Hom(X3, A) -> Hom(X2, A) -> Hom(X1, A)`` for Lie rings (``other = A``)
    or of ``0 -> Hom(L, X1) -> Hom(L, X2) -> Hom(L, X3)`` for abelian groups (``other = L``)."""
    if seq.lie:
        A = other
        H3, H2s, H1 = (hom_lie_to_abelian(X, A) for X in (seq.X3, seq.X2, seq.X1))
        first = AbHom(H3.group, H2s.group, [H2s.from_hom(H3.to_hom(e).compose(seq.p)) for e in H3.group.gens()])
        second = AbHom(H2s.group, H1.group, [H1.from_hom(H2s.to_hom(e).compose(seq.i)) for e in H2s.group.gens()])
    else:
        L = other
        if not isinstance(L, LieRing):
            raise LieRingError("covariant form needs a Lie ring")
        H1, H2s, H3 = (hom_lie_to_abelian(L, X) for X in (seq.X1, seq.X2, seq.X3))
        first = AbHom(H1.group, H2s.group, [H2s.from_hom(seq.i.compose(H1.to_hom(e))) for e in H1.group.gens()])
        second = AbHom(H2s.group, H3.group, [H3.from_hom(seq.p.compose(H2s.to_hom(e))) for e in H2s.group.gens()])
    return HomExactness(first.kernel().is_trivial(), second.kernel() == first.image())
