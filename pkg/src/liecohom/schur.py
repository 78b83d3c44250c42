"""
Schur multiplier of a finite Lie ring through cyclic coefficients.

H^2(L, Z/N) mixes two pieces: characters of the multiplier M(L) and an
extension part coming from the additive group of L/[L, L].  Pushing
coefficients along ``Z/N -> Z/eN, a -> e a`` with ``e`` the additive
exponent of L kills the extension part and is injective on the character
part, so the image of that map is Hom(M(L), Z/N), which is M(L) itself as
soon as N is a multiple of the exponent of M(L).

N runs over ``N0, 2 N0, 6 N0`` with ``N0 = |L| * exp(L)``; the answer is
reported as stable when all three agree.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from math import gcd

from .abgroup import AbHom, FinAbGroup, invariant_factors
from .cohomology import H2Group, h2, system_smith
from .liering import LieRing


@dataclass(eq=False)
class MultiplierResult:
    group: FinAbGroup
    schedule: list
    stable: bool
    witness: H2Group = field(repr=False)
    by_modulus: dict = field(default_factory=dict)


def base_modulus(L: LieRing) -> int:
    return L.order * L.additive.exponent


def multiplier_at(L: LieRing, N: int, limit: int | None = None) -> FinAbGroup:
    """Image of H^2(L, Z/N) in H^2(L, Z/eN) under multiplication by e = exp(L)."""
    e = L.additive.exponent
    src = h2(L, FinAbGroup([N]), limit)
    dst = h2(L, FinAbGroup([e * N]), limit)
    times_e = AbHom(src.A, dst.A, [(e,)])
    images = [dst.class_of(r.map_values(times_e)) for r in src.reps]
    m = AbHom(src.group, dst.group, images)
    S, _ = m.image().as_group()
    return S.canonical()


def schur_multiplier(L: LieRing, limit: int | None = None) -> MultiplierResult:
    N0 = base_modulus(L)
    schedule = [N0, 2 * N0, 6 * N0]
    # one Smith form at the largest modulus serves every coefficient group below
    system_smith(L, 6 * N0 * L.additive.exponent, limit)
    results = {N: multiplier_at(L, N, limit) for N in schedule}
    facts = {N: G.invariant_factors() for N, G in results.items()}
    stable = len(set(facts.values())) == 1
    final = results[schedule[-1]]
    return MultiplierResult(final, schedule, stable, h2(L, FinAbGroup([schedule[-1]]), limit), facts)


def exterior_square(moduli) -> FinAbGroup:
    """Exterior square of ``Z/d1 + ... + Z/dk``: the sum of ``Z/gcd(di, dj)`` over ``i < j``."""
    moduli = list(moduli)
    parts = [gcd(a, b) for i, a in enumerate(moduli) for b in moduli[i + 1:]]
    return FinAbGroup(invariant_factors(parts))
