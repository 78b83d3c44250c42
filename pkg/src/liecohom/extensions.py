"""
Central extensions ``0 -> A -> B -> L -> 0`` and their cocycles.

A cocycle ``(f, g)`` turns the set ``A x L`` into a Lie ring with

    (a, x) + (b, y) = (a + b + g(x, y), x + y)
    [(a, x), (b, y)] = (f(x, y), [x, y])

which is re-presented here as an ordinary ``LieRing`` on generators.
Conversely a section of ``B -> L`` measures how far it is from being a
homomorphism, and that defect is a cocycle whose class classifies the
extension.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import product
from typing import NamedTuple

import numpy as np

from .abgroup import AbGroupError, AbHom, FinAbGroup, Vector, presentation
from .cohomology import Cocycle, CohomologyError, h2, is_cocycle
from .liering import LieRing, LieRingError, is_lie_hom

BRUTE_LIMIT = 64
CLASSIFY_BUDGET = 10 ** 4


class ExtensionError(ValueError):
    pass


def _weights(moduli) -> np.ndarray:
    w = np.ones(len(moduli), dtype=np.int64)
    for i in range(len(moduli) - 2, -1, -1):
        w[i] = w[i + 1] * moduli[i + 1]
    return w


@dataclass(eq=False)
class CentralExtension:
    A: FinAbGroup
    B: LieRing
    L: LieRing
    iota: AbHom
    beta: AbHom
    source: Cocycle | None = field(default=None, repr=False)
    lift: np.ndarray | None = field(default=None, repr=False)   # B-index of (0, x) when built from a cocycle

    def __post_init__(self):
        self.validate()

    def validate(self):
        A, B, L = self.A, self.B, self.L
        if self.iota.domain != A or self.iota.codomain != B.additive:
            raise ExtensionError("iota must map A into B")
        if self.beta.domain != B.additive or self.beta.codomain != L.additive:
            raise ExtensionError("beta must map B onto L")
        if B.order != A.order * L.order:
            raise ExtensionError(f"|B| = {B.order} but |A|*|L| = {A.order * L.order}")
        if not self.iota.is_injective():
            raise ExtensionError("iota is not injective")
        if not self.beta.is_surjective():
            raise ExtensionError("beta is not surjective")
        if self.iota.image() != self.beta.kernel():
            raise ExtensionError("image of iota differs from kernel of beta")
        if not is_lie_hom(self.beta, B, L):
            raise ExtensionError("beta does not preserve brackets")
        for a in A.gens():
            ia = self.iota(a)
            if any(any(B.bracket(b, ia)) for b in B.additive.gens()):
                raise ExtensionError("image of iota is not central")

    def beta_table(self) -> np.ndarray:
        """``beta`` on the enumerated elements of B, as L-indices."""
        Bt = self.B.tables
        img = Bt.coords @ np.array(self.beta.images, dtype=np.int64).reshape(self.B.rank, self.L.rank)
        mod = np.array(self.L.moduli, dtype=np.int64)
        if self.L.rank == 0:
            return np.zeros(self.B.order, dtype=np.int64)
        return (img % mod) @ _weights(self.L.moduli)

    def iota_inverse(self) -> np.ndarray:
        """Map from B-indices to A-indices; -1 outside the image of iota."""
        out = np.full(self.B.order, -1, dtype=np.int64)
        for i, a in enumerate(self.A.elements()):
            out[self.B.index(self.iota(a))] = i
        return out


@dataclass(eq=False)
class Section:
    extension: CentralExtension
    table: np.ndarray        # B-index of lambda(x) for each L-index x

    def __call__(self, x):
        i = x if isinstance(x, (int, np.integer)) else self.extension.L.index(x)
        return tuple(int(c) for c in self.extension.B.tables.coords[self.table[i]])

    def is_homomorphic(self) -> bool:
        E = self.extension
        Bt, Lt = E.B.tables, E.L.tables
        lam = self.table
        return (np.array_equal(Bt.add[lam[:, None], lam[None, :]], lam[Lt.add])
                and np.array_equal(Bt.br[lam[:, None], lam[None, :]], lam[Lt.br]))


def extension_from_cocycle(L: LieRing, A: FinAbGroup, c: Cocycle) -> CentralExtension:
    if c.L != L or c.A != A:
        raise ExtensionError("cocycle belongs to a different (L, A)")
    chk = is_cocycle(c)
    if not chk:
        raise ExtensionError(f"not a cocycle: condition ({chk.condition}) fails at {chk.witness}")
    r, s = A.rank, L.rank
    Lt = L.tables
    f, g = c.f, c.g
    G = L.additive

    def add(p, q):
        (a, x), (b, y) = p, q
        return A.reduce(np.add(np.add(a, b), g[x, y])), int(Lt.add[x, y])

    # s(x): A-part of sum_i x_i (0, l_i) with 0 <= x_i < d_i
    lift_a = [None] * L.order
    for xi in range(L.order):
        acc = (A.zero(), 0)
        for i, ci in enumerate(Lt.coords[xi]):
            step = (A.zero(), L.index(G.gen(i)))
            for _ in range(int(ci)):
                acc = add(acc, step)
        assert acc[1] == xi
        lift_a[xi] = acc[0]

    rels = [[A.moduli[k] if j == k else 0 for j in range(r + s)] for k in range(r)]
    twist = []
    for i, d in enumerate(L.moduli):
        acc, step = (A.zero(), 0), (A.zero(), L.index(G.gen(i)))
        for _ in range(d):
            acc = add(acc, step)
        assert acc[1] == 0
        twist.append(acc[0])
        rels.append([-x for x in acc[0]] + [d if j == i else 0 for j in range(s)])
    Q, to_q, from_q = presentation(rels, r + s)

    def phi(a, x):
        return to_q(list(A.sub(a, lift_a[x])) + [int(v) for v in Lt.coords[x]])

    def psi(q):
        v = from_q(q)
        u, w = v[:r], v[r:]
        x = G.reduce(w)
        a = list(u)
        for i, wi in enumerate(w):
            a = A.add(a, A.scale(wi // L.moduli[i], twist[i]))
        return A.add(a, lift_a[L.index(x)]), L.index(x)

    pairs = [psi(Q.gen(j)) for j in range(Q.rank)]
    brackets = {}
    for j in range(Q.rank):
        for k in range(j + 1, Q.rank):
            (_, x), (_, y) = pairs[j], pairs[k]
            v = phi(tuple(int(t) for t in f[x, y]), int(Lt.br[x, y]))
            if any(v):
                brackets[(j, k)] = v
    try:
        B = LieRing(Q.moduli, brackets)
    except LieRingError as e:
        raise ExtensionError(f"constructed bracket is not a Lie ring: {e}") from e
    iota = AbHom(A, Q, [to_q([int(j == k) for j in range(r)] + [0] * s) for k in range(r)])
    beta = AbHom(Q, G, [tuple(int(t) for t in Lt.coords[x]) for _, x in pairs])
    lift = np.array([B.index(phi(A.zero(), x)) for x in range(L.order)], dtype=np.int64)
    E = CentralExtension(A, B, L, iota, beta, source=c, lift=lift)
    _check_realisation(E, c, phi)
    return E


def _check_realisation(E: CentralExtension, c: Cocycle, phi, limit: int = 1024):
    """Check that ``phi: A x L -> B`` carries the twisted operations to those of B."""
    A, L, B = E.A, E.L, E.B
    if B.order > limit:
        return
    N = L.order
    Lt, Bt = L.tables, B.tables
    idx = np.empty(A.order * N, dtype=np.int64)
    Acoords = list(A.elements())
    for ai, a in enumerate(Acoords):
        for x in range(N):
            idx[ai * N + x] = B.index(phi(a, x))
    if len(set(idx.tolist())) != B.order:
        raise ExtensionError("realisation of A x L is not a bijection")
    Ac = np.array(Acoords, dtype=np.int64).reshape(A.order, A.rank)
    Aw, Am = _weights(A.moduli), np.array(A.moduli, dtype=np.int64)

    def aidx(v):
        return (v % Am) @ Aw if A.rank else np.zeros(v.shape[:-1], dtype=np.int64)

    P = np.arange(A.order * N)
    pa, px = P // N, P % N
    p, q = np.meshgrid(P, P, indexing="ij")
    sa = aidx(Ac[pa[p]] + Ac[pa[q]] + c.g[px[p], px[q]])
    sx = Lt.add[px[p], px[q]]
    if not np.array_equal(Bt.add[idx[p], idx[q]], idx[sa * N + sx]):
        raise ExtensionError("realisation does not preserve addition")
    ba = aidx(c.f[px[p], px[q]])
    bx = Lt.br[px[p], px[q]]
    if not np.array_equal(Bt.br[idx[p], idx[q]], idx[ba * N + bx]):
        raise ExtensionError("realisation does not preserve the bracket")


def section_of(E: CentralExtension) -> Section:
    """The section sending x to the first element of B (in enumeration order) above it."""
    bt = E.beta_table()
    table = np.full(E.L.order, -1, dtype=np.int64)
    for b in range(E.B.order - 1, -1, -1):
        table[bt[b]] = b
    return Section(E, table)


def canonical_section(E: CentralExtension) -> Section:
    """``x -> (0, x)`` for an extension built from a cocycle; it gives back that cocycle."""
    if E.lift is None:
        raise ExtensionError("extension was not built from a cocycle")
    return Section(E, E.lift)


def section_from_table(E: CentralExtension, values) -> Section:
    """A section from explicit B-elements ``values[x]`` for every L-index x."""
    table = np.array([E.B.index(v) for v in values], dtype=np.int64)
    bt = E.beta_table()
    if not np.array_equal(bt[table], np.arange(E.L.order)):
        raise ExtensionError("beta o lambda is not the identity")
    if table[0] != 0:
        raise ExtensionError("a section must send 0 to 0")
    return Section(E, table)


def cocycle_from_extension(E: CentralExtension, s: Section | None = None) -> Cocycle:
    s = section_of(E) if s is None else s
    if s.extension is not E:
        raise ExtensionError("section belongs to another extension")
    Bt, Lt = E.B.tables, E.L.tables
    lam = s.table
    inv = E.iota_inverse()
    fb = Bt.add[Bt.br[lam[:, None], lam[None, :]], Bt.neg[lam[Lt.br]]]
    gb = Bt.add[Bt.add[lam[:, None], lam[None, :]], Bt.neg[lam[Lt.add]]]
    fa, ga = inv[fb], inv[gb]
    if (fa < 0).any() or (ga < 0).any():
        raise ExtensionError("section defect leaves the image of iota (extension invariant broken)")
    Ac = np.array(list(E.A.elements()), dtype=np.int64).reshape(E.A.order, E.A.rank)
    return Cocycle(E.L, E.A, Ac[fa], Ac[ga])


def _same_base(E, E2):
    if E.A != E2.A or E.L != E2.L:
        raise ExtensionError("extensions of different L or by different A")


def are_equivalent(E: CentralExtension, E2: CentralExtension, oracle: bool = False) -> bool:
    """Equivalence via equal cohomology classes; ``oracle=True`` searches for the isomorphism instead."""
    _same_base(E, E2)
    if oracle:
        return brute_equivalent(E, E2)
    H = h2(E.L, E.A)
    return not any(H.class_of(cocycle_from_extension(E) - cocycle_from_extension(E2)))


def find_equivalence(E: CentralExtension, E2: CentralExtension) -> AbHom | None:
    """Exhaustive search for ``gamma: B -> B2`` with ``gamma iota = iota2`` and ``beta2 gamma = beta``."""
    _same_base(E, E2)
    if max(E.B.order, E2.B.order) > BRUTE_LIMIT:
        raise ExtensionError(f"|B| above the search bound {BRUTE_LIMIT}")
    B, B2 = E.B, E2.B
    bt2 = E2.beta_table()
    elems2 = list(B2.additive.elements())
    cands = []
    for j in range(B.rank):
        x = E.L.index(E.beta(B.additive.gen(j)))
        cands.append([elems2[i] for i in np.flatnonzero(bt2 == x)])
    for images in product(*cands):
        try:
            gamma = AbHom(B.additive, B2.additive, list(images))
        except AbGroupError:
            continue
        if gamma.compose(E.iota) != E2.iota:
            continue
        if all(gamma(B.structure_constant(j, k)) == B2.bracket(images[j], images[k])
               for j in range(B.rank) for k in range(j + 1, B.rank)):
            if not (gamma.is_injective() and gamma.is_surjective()):
                raise ExtensionError("equivalence found that is not bijective")
            return gamma
    return None


def brute_equivalent(E: CentralExtension, E2: CentralExtension) -> bool:
    return find_equivalence(E, E2) is not None


class SplitVerdict(NamedTuple):
    split: bool
    section: Section | None = None

    def __bool__(self):
        return self.split


def is_split(E: CentralExtension) -> SplitVerdict:
    """Split iff the class vanishes; then also a section that is a Lie homomorphism."""
    H = h2(E.L, E.A)
    lam = section_of(E)
    c = cocycle_from_extension(E, lam)
    if any(H.class_of(c)):
        return SplitVerdict(False)
    t = H.coboundary_witness(c)
    if t is None:
        raise CohomologyError("zero class without a coboundary witness")
    values = [E.B.additive.sub(lam(x), E.iota(tuple(int(v) for v in t[x])))
              for x in range(E.L.order)]
    mu = section_from_table(E, values)
    if not mu.is_homomorphic():
        raise ExtensionError("witness section is not a homomorphism")
    return SplitVerdict(True, mu)


@dataclass(eq=False)
class ExtensionClass:
    cls: Vector
    extension: CentralExtension
    invariants: tuple
    split: bool


def classify_extensions(L: LieRing, A: FinAbGroup, budget: int = CLASSIFY_BUDGET,
                        verify: bool = False) -> list[ExtensionClass]:
    """One representative extension per element of H^2(L, A).

    With ``verify`` the representatives are also checked pairwise inequivalent
    by exhaustive search when ``|B|`` is small enough.
    """
    H = h2(L, A)
    if H.order > budget:
        raise ExtensionError(f"|H2| = {H.order} exceeds the enumeration budget {budget}")
    out = []
    for h in H.group.elements():
        E = extension_from_cocycle(L, A, H.cocycle_of_class(h))
        out.append(ExtensionClass(h, E, E.B.additive.invariant_factors(), not any(h)))
    if sum(e.split for e in out) != 1:
        raise ExtensionError("expected exactly one split class")
    if verify and A.order * L.order <= BRUTE_LIMIT:
        for i in range(len(out)):
            for j in range(i + 1, len(out)):
                if brute_equivalent(out[i].extension, out[j].extension):
                    raise ExtensionError(f"classes {out[i].cls} and {out[j].cls} are equivalent")
    return out
