"""
Second cohomology of a finite Lie ring with trivial coefficients.

A cocycle is a pair of tables ``f, g : L x L -> A`` subject to

    (1) f(x+y, z) = f(x,z) + f(y,z) + g([x,z], [y,z])
        f(x, y+z) = f(x,y) + f(x,z) + g([x,y], [x,z])
    (2) f(x, x) = 0
    (3) f(x,[y,z]) + f(z,[x,y]) + f(y,[z,x])
            = -g([x,[y,z]], [z,[x,y]]) - g(-[y,[z,x]], [y,[z,x]])
    (4) g(x+y, z) + g(x, y) = g(x, y+z) + g(y, z)
    (5) g(x, y) = g(y, x)

and a coboundary is ``f = -t([x,y])``, ``g = t(x) + t(y) - t(x+y)`` for a
pointed map ``t``.  Every condition is a Z-linear relation between table
entries, identical for each cyclic coordinate of ``A``, so one integer
matrix per Lie ring describes all of them.

Unknown layout (also the serialised layout): all f entries, row-major over
the element enumeration with the A-coordinate innermost, then all g entries.
"""

from __future__ import annotations

import os
from contextlib import contextmanager
from dataclasses import dataclass
from functools import lru_cache
from math import gcd, lcm, prod
from typing import Callable, Iterable, NamedTuple

import numpy as np

from .abgroup import AbHom, FinAbGroup, Subgroup, Vector, quotient_full
from .liering import LieRing
from .modsmith import ModSmith, smith_mod

DEFAULT_MAX_ORDER = 32


class ResourceLimitError(RuntimeError):
    pass


class CohomologyError(ValueError):
    pass


_override: list[int] = []


def max_order() -> int:
    if _override:
        return _override[-1]
    env = os.environ.get("LIECOHOM_MAX_ORDER")
    return int(env) if env else DEFAULT_MAX_ORDER


@contextmanager
def order_limit(n: int | None):
    """Temporarily replace the |L| limit (None keeps the current one)."""
    if n is None:
        yield
        return
    _override.append(n)
    try:
        yield
    finally:
        _override.pop()


def _guard(L: LieRing, limit: int | None):
    limit = max_order() if limit is None else limit
    if L.order > limit:
        raise ResourceLimitError(
            f"|L| = {L.order} exceeds the limit {limit} (the cocycle system has about "
            f"{5 * L.order ** 3} rows); raise it with LIECOHOM_MAX_ORDER")


# ---------------------------------------------------------------- cocycles

class Cocycle:
    """Pair of tables ``f, g`` of shape ``(|L|, |L|, rank A)`` with values reduced mod A."""

    def __init__(self, L: LieRing, A: FinAbGroup, f, g):
        self.L, self.A = L, A
        N, r = L.order, A.rank
        mod = np.array(A.moduli, dtype=np.int64)
        f = np.asarray(f, dtype=np.int64)
        g = np.asarray(g, dtype=np.int64)
        if f.shape != (N, N, r) or g.shape != (N, N, r):
            raise CohomologyError(f"tables must have shape {(N, N, r)}, got {f.shape} and {g.shape}")
        self.f = f % mod if r else f
        self.g = g % mod if r else g

    @classmethod
    def zero(cls, L, A):
        N = L.order
        z = np.zeros((N, N, A.rank), dtype=np.int64)
        return cls(L, A, z, z)

    @classmethod
    def from_vector(cls, L, A, v):
        N, r = L.order, A.rank
        v = np.asarray(v, dtype=np.int64)
        half = N * N * r
        return cls(L, A, v[:half].reshape(N, N, r), v[half:].reshape(N, N, r))

    def vector(self) -> np.ndarray:
        return np.concatenate([self.f.reshape(-1), self.g.reshape(-1)])

    def _same(self, other):
        if not isinstance(other, Cocycle) or other.L != self.L or other.A != self.A:
            raise CohomologyError("cocycles over different (L, A)")

    def __add__(self, other):
        self._same(other)
        return Cocycle(self.L, self.A, self.f + other.f, self.g + other.g)

    def __sub__(self, other):
        self._same(other)
        return Cocycle(self.L, self.A, self.f - other.f, self.g - other.g)

    def __neg__(self):
        return Cocycle(self.L, self.A, -self.f, -self.g)

    def __rmul__(self, c: int):
        return Cocycle(self.L, self.A, c * self.f, c * self.g)

    def __eq__(self, other):
        return (isinstance(other, Cocycle) and other.L == self.L and other.A == self.A
                and np.array_equal(self.f, other.f) and np.array_equal(self.g, other.g))

    def __repr__(self):
        return f"Cocycle(|L|={self.L.order}, A={self.A!r})"

    def is_zero(self):
        return not (self.f.any() or self.g.any())

    def map_values(self, h: AbHom) -> Cocycle:
        """Compose both tables with a homomorphism ``A -> B``."""
        if h.domain != self.A:
            raise CohomologyError("homomorphism does not start at the coefficient group")
        M = np.array(h.images, dtype=np.int64).reshape(self.A.rank, h.codomain.rank)
        return Cocycle(self.L, h.codomain, self.f @ M, self.g @ M)


class CocycleCheck(NamedTuple):
    ok: bool
    condition: int | None = None
    witness: tuple | None = None

    def __bool__(self):
        return self.ok


def _residuals(c: Cocycle):
    """Yield ``(condition, residual array, index shape)`` in condition order."""
    T = c.L.tables
    f, g = c.f, c.g
    N = T.size
    x, y, z = np.meshgrid(np.arange(N), np.arange(N), np.arange(N), indexing="ij")
    add, br, neg = T.add, T.br, T.neg
    r1a = f[add[x, y], z] - f[x, z] - f[y, z] - g[br[x, z], br[y, z]]
    r1b = f[x, add[y, z]] - f[x, y] - f[x, z] - g[br[x, y], br[x, z]]
    yield 1, np.concatenate([r1a[None], r1b[None]])
    d = np.arange(N)
    yield 2, f[d, d]
    a = br[x, br[y, z]]
    b = br[z, br[x, y]]
    cc = br[y, br[z, x]]
    yield 3, (f[x, br[y, z]] + f[z, br[x, y]] + f[y, br[z, x]] + g[a, b] + g[neg[cc], cc])
    yield 4, g[add[x, y], z] + g[x, y] - g[x, add[y, z]] - g[y, z]
    x2, y2 = np.meshgrid(np.arange(N), np.arange(N), indexing="ij")
    yield 5, g[x2, y2] - g[y2, x2]


def is_cocycle(c: Cocycle) -> CocycleCheck:
    """Check the five cocycle conditions everywhere; report the first failure.

    The witness is a tuple of element indices (``(x,)``, ``(x, y)`` or
    ``(x, y, z)``); for condition 1 it is prefixed by 0 for the left form
    and 1 for the right form.
    """
    mod = np.array(c.A.moduli, dtype=np.int64)
    if c.A.rank == 0:
        return CocycleCheck(True)
    for cond, res in _residuals(c):
        bad = (res % mod).any(axis=-1)
        if bad.any():
            w = tuple(int(i) for i in np.argwhere(bad)[0])
            return CocycleCheck(False, cond, w)
    return CocycleCheck(True)


def coboundary_from(L: LieRing, A: FinAbGroup, t) -> Cocycle:
    """Coboundary of a pointed map ``t``; ``t`` is an array of shape ``(|L|, rank A)`` or a callable on indices."""
    N = L.order
    if callable(t):
        t = [A.reduce(t(i)) for i in range(N)]
    t = np.asarray(t, dtype=np.int64).reshape(N, A.rank)
    if A.rank and (t[0] % np.array(A.moduli)).any():
        raise CohomologyError("t(0) must be 0")
    T = L.tables
    f = -t[T.br]
    g = t[:, None, :] + t[None, :, :] - t[T.add]
    return Cocycle(L, A, f, g)


# ---------------------------------------------------------------- the linear system

def _rows(N: int, terms, nrows: int) -> np.ndarray:
    block = np.zeros((nrows, 2 * N * N), dtype=np.int64)
    rows = np.arange(nrows)
    for col, coef in terms:
        np.add.at(block, (rows, col.reshape(-1)), coef)
    return block


def equation_blocks(L: LieRing, max_rows: int = 8192):
    """Row blocks of the integer matrix whose kernel mod m is Z^2(L, Z/m)."""
    T = L.tables
    N = T.size
    add, br, neg = T.add, T.br, T.neg

    def F(a, b):
        return a * N + b

    def G(a, b):
        return N * N + a * N + b

    step = max(1, max_rows // (N * N))
    # g-only conditions first: they are the sparsest
    x2, y2 = np.meshgrid(np.arange(N), np.arange(N), indexing="ij")
    yield _rows(N, [(G(x2, y2), 1), (G(y2, x2), -1)], N * N)
    yield _rows(N, [(F(np.arange(N), np.arange(N)), 1)], N)
    for start in range(0, N, step):
        xs = np.arange(start, min(N, start + step))
        x, y, z = np.meshgrid(xs, np.arange(N), np.arange(N), indexing="ij")
        m = x.size
        yield _rows(N, [(G(add[x, y], z), 1), (G(x, y), 1), (G(x, add[y, z]), -1), (G(y, z), -1)], m)
    for start in range(0, N, step):
        xs = np.arange(start, min(N, start + step))
        x, y, z = np.meshgrid(xs, np.arange(N), np.arange(N), indexing="ij")
        m = x.size
        yield _rows(N, [(F(add[x, y], z), 1), (F(x, z), -1), (F(y, z), -1),
                        (G(br[x, z], br[y, z]), -1)], m)
        yield _rows(N, [(F(x, add[y, z]), 1), (F(x, y), -1), (F(x, z), -1),
                        (G(br[x, y], br[x, z]), -1)], m)
        a = br[x, br[y, z]]
        b = br[z, br[x, y]]
        c = br[y, br[z, x]]
        yield _rows(N, [(F(x, br[y, z]), 1), (F(z, br[x, y]), 1), (F(y, br[z, x]), 1),
                        (G(a, b), 1), (G(neg[c], c), 1)], m)


_SMITH: dict = {}


def system_smith(L: LieRing, M: int, limit: int | None = None) -> ModSmith:
    """Smith form mod ``M`` of the cocycle system of ``L`` (cached; any cached multiple of M is reused)."""
    _guard(L, limit)
    cache = _SMITH.setdefault(L.key, {})
    for modulus, sm in cache.items():
        if modulus % M == 0:
            return sm
    N = L.order
    sm = smith_mod(lambda: equation_blocks(L), 2 * N * N, M)
    cache[M] = sm
    return sm


# ---------------------------------------------------------------- H^2

@dataclass(frozen=True)
class _Component:
    coord: int      # coordinate of A
    index: int      # column of V
    order: int      # order of this cyclic summand of Z^2
    scale: int      # a_k / order


class H2Group:
    """H^2(L, A) with representative cocycles and a class map.

    ``z2_group`` is Z^2(L, A) written as a direct sum of cyclic groups
    (``z_coords`` gives these coordinates), ``b2`` is the coboundary
    subgroup inside it and ``group = z2_group / b2`` in invariant-factor form.
    """

    def __init__(self, L: LieRing, A: FinAbGroup, limit: int | None = None):
        _guard(L, limit)
        self.L, self.A = L, A
        N = L.order
        M = lcm(*A.moduli) if A.rank else 1
        comps = []
        if M > 1:
            sm = system_smith(L, M, limit)
            for k, a in enumerate(A.moduli):
                for i, d in enumerate(sm.d):
                    o = gcd(int(d), a)
                    if o > 1:
                        comps.append(_Component(k, i, o, a // o))
            self._V = sm.V
            self._Vinv = sm.Vinv
        self.components = comps
        self.z2_group = FinAbGroup([c.order for c in comps])
        n = 2 * N * N
        self._rows = np.array([self._Vinv[c.index] for c in comps], dtype=np.int64).reshape(len(comps), n) \
            if comps else np.zeros((0, n), dtype=np.int64)
        # coboundaries of indicator maps span B^2 (t -> (f, g) is additive)
        b_gens = []
        for l in range(1, N):
            for k in range(A.rank):
                t = np.zeros((N, A.rank), dtype=np.int64)
                t[l, k] = 1
                cb = coboundary_from(L, A, t)
                z = self._z(cb)
                if z is None:
                    raise CohomologyError(
                        "internal inconsistency: a coboundary is not in Z^2 (equation assembly bug)")
                b_gens.append(z)
        self.b2 = Subgroup(self.z2_group, b_gens)
        self.group, self._proj, self._lift = quotient_full(self.z2_group, self.b2)
        self.reps = [self.cocycle_from_z(self._lift(self.group.gen(j))) for j in range(self.group.rank)]

    def __repr__(self):
        return f"H2Group(L order {self.L.order}, A={self.A!r}, H2 = {self.group})"

    @property
    def order(self) -> int:
        return self.group.order

    @property
    def z2_order(self) -> int:
        return self.z2_group.order

    @property
    def b2_order(self) -> int:
        return self.b2.order

    def _z(self, c: Cocycle) -> Vector | None:
        """Coordinates of ``c`` in ``z2_group``, or None if ``c`` is not a cocycle."""
        if not self.components:
            return ()
        N2 = self.L.order ** 2
        out = []
        f = c.f.reshape(N2, self.A.rank)
        g = c.g.reshape(N2, self.A.rank)
        for row, comp in zip(self._rows, self.components):
            a = self.A.moduli[comp.coord]
            x = np.concatenate([f[:, comp.coord], g[:, comp.coord]])
            y = int((row % a) @ x) % a
            if y % comp.scale:
                return None
            out.append(y // comp.scale)
        return tuple(out)

    def z_coords(self, c: Cocycle) -> Vector:
        self._check(c)
        z = self._z(c)
        if z is None or not is_cocycle(c):
            raise CohomologyError("not a cocycle")
        return z

    def cocycle_from_z(self, z) -> Cocycle:
        N, r = self.L.order, self.A.rank
        n = 2 * N * N
        vec = np.zeros((n, r), dtype=np.int64)
        for coef, comp in zip(z, self.components):
            if coef:
                vec[:, comp.coord] += coef * comp.scale * self._V[:, comp.index]
        vec %= np.array(self.A.moduli, dtype=np.int64) if r else 1
        half = N * N
        return Cocycle(self.L, self.A, vec[:half].reshape(N, N, r), vec[half:].reshape(N, N, r))

    def _check(self, c: Cocycle):
        if c.L != self.L or c.A != self.A:
            raise CohomologyError("cocycle belongs to a different (L, A)")

    def class_of(self, c: Cocycle) -> Vector:
        return self._proj(self.z_coords(c))

    def is_coboundary(self, c: Cocycle) -> bool:
        return not any(self.class_of(c))

    def cocycle_of_class(self, h) -> Cocycle:
        """A representative cocycle of the class ``h``."""
        h = self.group.reduce(h)
        return self.cocycle_from_z(self._lift(h))

    def z2_generators(self) -> list[Cocycle]:
        return [self.cocycle_from_z(self.z2_group.gen(i)) for i in range(self.z2_group.rank)]

    def coboundary_witness(self, c: Cocycle):
        """A pointed map ``t`` (array ``(|L|, rank A)``) with ``coboundary_from(t) == c``, or None."""
        z = self.z_coords(c)
        N, r = self.L.order, self.A.rank
        D = FinAbGroup([a for _ in range(1, N) for a in self.A.moduli])
        gens = []
        for l in range(1, N):
            for k in range(r):
                t = np.zeros((N, r), dtype=np.int64)
                t[l, k] = 1
                gens.append(self._z(coboundary_from(self.L, self.A, t)))
        w = AbHom(D, self.z2_group, gens, check=False).preimage(z)
        if w is None:
            return None
        t = np.zeros((N, r), dtype=np.int64)
        t[1:] = np.array(w, dtype=np.int64).reshape(N - 1, r)
        return t


@lru_cache(maxsize=256)
def _h2_cached(L: LieRing, A: FinAbGroup, limit):
    return H2Group(L, A, limit)


def h2(L: LieRing, A: FinAbGroup, limit: int | None = None) -> H2Group:
    return _h2_cached(L, A, max_order() if limit is None else limit)


def class_of(h: H2Group, c: Cocycle) -> Vector:
    return h.class_of(c)


def table_space(L: LieRing, A: FinAbGroup) -> FinAbGroup:
    return FinAbGroup(A.moduli * (2 * L.order * L.order))


def z2(L: LieRing, A: FinAbGroup, limit: int | None = None) -> Subgroup:
    """Z^2(L, A) as a subgroup of the (f, g) table space."""
    H = h2(L, A, limit)
    return Subgroup(table_space(L, A), [tuple(c.vector()) for c in H.z2_generators()])


def b2(L: LieRing, A: FinAbGroup) -> Subgroup:
    N = L.order
    gens = []
    for l in range(1, N):
        for k in range(A.rank):
            t = np.zeros((N, A.rank), dtype=np.int64)
            t[l, k] = 1
            gens.append(tuple(coboundary_from(L, A, t).vector()))
    return Subgroup(table_space(L, A), gens)
