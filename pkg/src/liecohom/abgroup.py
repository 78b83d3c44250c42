"""
Finite abelian groups given by a list of cyclic moduli.

A group ``FinAbGroup([d1, ..., dk])`` is Z/d1 + ... + Z/dk; elements are
coefficient tuples reduced into ``[0, di)``.  Everything here is exact
integer arithmetic on Python ints.

>>> G = FinAbGroup([4, 2])
>>> G.order
8
>>> G.add((3, 1), (2, 1))
(1, 0)
>>> S = Subgroup(G, [(2, 0)])
>>> Q, proj = quotient(G, S)
>>> Q.moduli
(2, 2)
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from itertools import combinations_with_replacement, product
from math import gcd, lcm, prod
from typing import Iterable, Sequence

Vector = tuple[int, ...]


class AbGroupError(ValueError):
    pass


def _identity(n):
    return [[int(i == j) for j in range(n)] for i in range(n)]


def matmul(A, B):
    """Product of integer matrices given as lists of rows."""
    if not A:
        return []
    inner = len(B)
    cols = len(B[0]) if B else 0
    return [[sum(A[i][k] * B[k][j] for k in range(inner)) for j in range(cols)]
            for i in range(len(A))]


# ---------------------------------------------------------------- Smith form

def snf(M: Sequence[Sequence[int]], ncols: int | None = None):
    """Smith normal form over the integers.

    Returns ``(S, U, V)`` with ``U * M * V == S``, ``S`` diagonal with
    non-negative entries ``d1 | d2 | ...`` and ``U``, ``V`` unimodular.
    ``ncols`` is only needed when ``M`` has no rows.

    >>> S, U, V = snf([[2, 4], [6, 8]])
    >>> S
    [[2, 0], [0, 4]]
    """
    m = len(M)
    n = len(M[0]) if m else (ncols or 0)
    S = [[int(v) for v in row] for row in M]
    for row in S:
        if len(row) != n:
            raise AbGroupError("ragged matrix")
    U = _identity(m)
    V = _identity(n)

    def swap_rows(i, j):
        if i != j:
            S[i], S[j] = S[j], S[i]
            U[i], U[j] = U[j], U[i]

    def swap_cols(i, j):
        if i != j:
            for row in S:
                row[i], row[j] = row[j], row[i]
            for row in V:
                row[i], row[j] = row[j], row[i]

    def add_row(dst, src, c):
        # row_dst += c * row_src
        if c:
            S[dst] = [a + c * b for a, b in zip(S[dst], S[src])]
            U[dst] = [a + c * b for a, b in zip(U[dst], U[src])]

    def add_col(dst, src, c):
        if c:
            for row in S:
                row[dst] += c * row[src]
            for row in V:
                row[dst] += c * row[src]

    t = 0
    while t < min(m, n):
        # pivot of minimal absolute value keeps the entries small
        best = None
        for i in range(t, m):
            row = S[i]
            for j in range(t, n):
                v = row[j]
                if v and (best is None or abs(v) < best[0]):
                    best = (abs(v), i, j)
                    if best[0] == 1:
                        break
            if best is not None and best[0] == 1:
                break
        if best is None:
            break
        swap_rows(t, best[1])
        swap_cols(t, best[2])
        while True:
            p = S[t][t]
            moved = False
            for i in range(t + 1, m):
                if S[i][t]:
                    add_row(i, t, -(S[i][t] // p))
                    if S[i][t] and abs(S[i][t]) < abs(S[t][t]):
                        swap_rows(t, i)
                        moved = True
                        break
            if moved:
                continue
            for j in range(t + 1, n):
                if S[t][j]:
                    add_col(j, t, -(S[t][j] // p))
                    if S[t][j] and abs(S[t][j]) < abs(S[t][t]):
                        swap_cols(t, j)
                        moved = True
                        break
            if moved:
                continue
            if any(S[i][t] for i in range(t + 1, m)) or any(S[t][j] for j in range(t + 1, n)):
                continue
            # divisibility: fold an offending row into the pivot row
            bad = next((i for i in range(t + 1, m)
                        if any(S[i][j] % p for j in range(t + 1, n))), None)
            if bad is None:
                break
            add_row(t, bad, 1)
        if S[t][t] < 0:
            S[t] = [-v for v in S[t]]
            U[t] = [-v for v in U[t]]
        t += 1
    return S, U, V


def _diag(S):
    return [S[i][i] for i in range(min(len(S), len(S[0]) if S else 0))]


def invariant_factors(moduli: Iterable[int]) -> tuple[int, ...]:
    """Invariant factors ``d1 | d2 | ...`` (all >= 2) of Z/m1 + ... + Z/mk."""
    ms = list(moduli)
    S, _, _ = snf([[m if i == j else 0 for j in range(len(ms))] for i, m in enumerate(ms)],
                  ncols=len(ms))
    return tuple(d for d in _diag(S) if d != 1)


# ---------------------------------------------------------------- groups

class FinAbGroup:
    """Z/m1 + ... + Z/mk.  Moduli equal to 1 are allowed (trivial coordinates)."""

    def __init__(self, moduli: Iterable[int]):
        ms = tuple(int(m) for m in moduli)
        for i, m in enumerate(ms):
            if m < 1:
                raise AbGroupError(f"modulus at index {i} is {m}; moduli must be >= 1")
        self.moduli = ms

    def __repr__(self):
        return f"FinAbGroup({list(self.moduli)})"

    def __str__(self):
        inv = self.invariant_factors()
        return " + ".join(f"Z/{d}" for d in inv) if inv else "0"

    def __eq__(self, other):
        return isinstance(other, FinAbGroup) and self.moduli == other.moduli

    def __hash__(self):
        return hash(self.moduli)

    @property
    def rank(self) -> int:
        return len(self.moduli)

    @property
    def order(self) -> int:
        return prod(self.moduli)

    @property
    def exponent(self) -> int:
        return lcm(*self.moduli) if self.moduli else 1

    def invariant_factors(self) -> tuple[int, ...]:
        return _inv_cache(self.moduli)

    def is_isomorphic(self, other: FinAbGroup) -> bool:
        return self.invariant_factors() == other.invariant_factors()

    def canonical(self) -> FinAbGroup:
        return FinAbGroup(self.invariant_factors())

    # elements are plain tuples internally; GroupElement wraps them for the API
    def reduce(self, coeffs: Iterable[int]) -> Vector:
        cs = tuple(coeffs)
        if len(cs) != self.rank:
            raise AbGroupError(f"expected {self.rank} coefficients, got {len(cs)}")
        return tuple(c % m for c, m in zip(cs, self.moduli))

    def zero(self) -> Vector:
        return (0,) * self.rank

    def gen(self, i: int) -> Vector:
        return self.reduce(int(i == j) for j in range(self.rank))

    def gens(self) -> list[Vector]:
        return [self.gen(i) for i in range(self.rank)]

    def add(self, x: Vector, y: Vector) -> Vector:
        return tuple((a + b) % m for a, b, m in zip(x, y, self.moduli))

    def sub(self, x: Vector, y: Vector) -> Vector:
        return tuple((a - b) % m for a, b, m in zip(x, y, self.moduli))

    def neg(self, x: Vector) -> Vector:
        return tuple(-a % m for a, m in zip(x, self.moduli))

    def scale(self, c: int, x: Vector) -> Vector:
        return tuple(c * a % m for a, m in zip(x, self.moduli))

    def combine(self, coeffs: Iterable[int], vectors: Sequence[Vector]) -> Vector:
        acc = [0] * self.rank
        for c, v in zip(coeffs, vectors):
            if c:
                for k, a in enumerate(v):
                    acc[k] += c * a
        return self.reduce(acc)

    def elements(self):
        """All elements in mixed-radix order, zero first, last coordinate fastest."""
        return product(*(range(m) for m in self.moduli))

    def index(self, x: Vector) -> int:
        i = 0
        for a, m in zip(x, self.moduli):
            i = i * m + a
        return i

    def element_at(self, i: int) -> Vector:
        out = []
        for m in reversed(self.moduli):
            i, r = divmod(i, m)
            out.append(r)
        return tuple(reversed(out))

    def element_order(self, x: Vector) -> int:
        return lcm(*(m // gcd(a, m) for a, m in zip(x, self.moduli))) if x else 1

    def __call__(self, *coeffs) -> GroupElement:
        if len(coeffs) == 1 and not isinstance(coeffs[0], int):
            coeffs = tuple(coeffs[0])
        return GroupElement(self, self.reduce(coeffs))

    def direct_sum(self, other: FinAbGroup) -> FinAbGroup:
        return FinAbGroup(self.moduli + other.moduli)


_INV = {}


def _inv_cache(moduli):
    r = _INV.get(moduli)
    if r is None:
        r = _INV[moduli] = invariant_factors(moduli)
    return r


def group_new(moduli: Iterable[int]) -> FinAbGroup:
    return FinAbGroup(moduli)


@dataclass(frozen=True)
class GroupElement:
    parent: FinAbGroup
    coeffs: Vector

    def _check(self, other):
        if not isinstance(other, GroupElement) or other.parent != self.parent:
            raise AbGroupError("elements belong to different groups")

    def __add__(self, other):
        self._check(other)
        return GroupElement(self.parent, self.parent.add(self.coeffs, other.coeffs))

    def __sub__(self, other):
        self._check(other)
        return GroupElement(self.parent, self.parent.sub(self.coeffs, other.coeffs))

    def __neg__(self):
        return GroupElement(self.parent, self.parent.neg(self.coeffs))

    def __rmul__(self, c: int):
        return GroupElement(self.parent, self.parent.scale(c, self.coeffs))

    def is_zero(self) -> bool:
        return not any(self.coeffs)

    def order(self) -> int:
        return self.parent.element_order(self.coeffs)


def _vec(G: FinAbGroup, x) -> Vector:
    if isinstance(x, GroupElement):
        if x.parent != G:
            raise AbGroupError("element does not belong to this group")
        return x.coeffs
    return G.reduce(x)


# ---------------------------------------------------------------- lattices

def _hnf_mod(gens: Iterable[Sequence[int]], moduli: Sequence[int]) -> list[list[int]]:
    """Hermite basis of the lattice spanned by ``gens`` and ``m_j e_j``.

    The result is upper triangular with positive pivots and entries above
    each pivot reduced into ``[0, pivot)``; it is unique for the lattice.
    """
    k = len(moduli)
    rows = [list(g) for g in gens]
    rows = [r for r in rows if any(r)]
    basis = []
    for j in range(k):
        m = moduli[j]
        # m_j e_j is still untouched in the lattice: reduce column j by it
        active = []
        for r in rows:
            r[j] %= m
            if any(r[j:]):
                active.append(r)
        rows = active
        pivot = [0] * k
        pivot[j] = m
        rest = []
        for r in rows:
            if r[j] == 0:
                rest.append(r)
                continue
            # extended-gcd combination of pivot and r in column j
            a, b = pivot[j], r[j]
            g, s, t = _xgcd(a, b)
            new_pivot = [s * x + t * y for x, y in zip(pivot, r)]
            other = [(b // g) * x - (a // g) * y for x, y in zip(pivot, r)]
            pivot = new_pivot
            if any(other[j + 1:]):
                rest.append(other)
        for c in range(j + 1, k):
            pivot[c] %= moduli[c]
        rows = rest
        basis.append(pivot)
    for j in range(k):
        p = basis[j][j]
        for i in range(j):
            q = basis[i][j] // p
            if q:
                basis[i] = [x - q * y for x, y in zip(basis[i], basis[j])]
    return basis


def _xgcd(a, b):
    x0, y0, x1, y1 = 1, 0, 0, 1
    while b:
        q, r = divmod(a, b)
        a, b = b, r
        x0, x1 = x1, x0 - q * x1
        y0, y1 = y1, y0 - q * y1
    if a < 0:
        a, x0, y0 = -a, -x0, -y0
    return a, x0, y0


class Subgroup:
    """Subgroup of ``parent`` generated by ``gens``.

    Comparisons go through a canonical Hermite basis of the preimage
    lattice in Z^k, computed on first use.
    """

    def __init__(self, parent: FinAbGroup, gens: Iterable = ()):
        self.parent = parent
        self.gens = tuple(_vec(parent, g) for g in gens)

    def __repr__(self):
        return f"Subgroup({self.parent!r}, order={self.order})"

    @cached_property
    def basis(self) -> tuple[Vector, ...]:
        return tuple(tuple(r) for r in _hnf_mod(self.gens, self.parent.moduli))

    @property
    def index(self) -> int:
        return prod(self.basis[j][j] for j in range(self.parent.rank))

    @property
    def order(self) -> int:
        return self.parent.order // self.index

    def __contains__(self, x) -> bool:
        v = list(_vec(self.parent, x))
        for j, row in enumerate(self.basis):
            if v[j] % row[j]:
                return False
            q = v[j] // row[j]
            if q:
                v = [a - q * b for a, b in zip(v, row)]
        return True

    def contains(self, other: Subgroup) -> bool:
        self._check(other)
        return all(g in self for g in other.gens)

    def issubset(self, other: Subgroup) -> bool:
        return other.contains(self)

    def __eq__(self, other):
        if not isinstance(other, Subgroup):
            return NotImplemented
        self._check(other)
        return self.basis == other.basis

    def __hash__(self):
        return hash((self.parent, self.basis))

    def _check(self, other):
        if other.parent != self.parent:
            raise AbGroupError("subgroups of different groups")

    def is_trivial(self) -> bool:
        return self.index == self.parent.order

    def is_everything(self) -> bool:
        return self.index == 1

    def elements(self):
        return (x for x in self.parent.elements() if x in self)

    def as_group(self):
        """An abstract copy of the subgroup: ``(S, embedding)`` with ``embedding: S -> parent``."""
        G = self.parent
        gens = [g for g in self.gens if any(g)]
        F = FinAbGroup([G.element_order(g) for g in gens])
        free = AbHom(F, G, gens)
        S, proj, lift = quotient_full(F, free.kernel())
        images = [free(lift(S.gen(i))) for i in range(S.rank)]
        return S, AbHom(S, G, images)

    def structure(self) -> tuple[int, ...]:
        return self.as_group()[0].invariant_factors()


# ---------------------------------------------------------------- homomorphisms

class AbHom:
    """Additive map ``domain -> codomain``; ``images[i]`` is the image of generator i."""

    def __init__(self, domain: FinAbGroup, codomain: FinAbGroup, images: Sequence, check=True):
        self.domain = domain
        self.codomain = codomain
        self.images = tuple(_vec(codomain, v) for v in images)
        if len(self.images) != domain.rank:
            raise AbGroupError(f"need {domain.rank} generator images, got {len(self.images)}")
        if check:
            for i, (d, v) in enumerate(zip(domain.moduli, self.images)):
                if any(codomain.scale(d, v)):
                    raise AbGroupError(
                        f"not well defined: generator {i} has order dividing {d} but its image does not")

    def __repr__(self):
        return f"AbHom({self.domain!r} -> {self.codomain!r}, {[list(v) for v in self.images]})"

    def __call__(self, x):
        v = _vec(self.domain, x)
        out = self.codomain.combine(v, self.images)
        return GroupElement(self.codomain, out) if isinstance(x, GroupElement) else out

    def __eq__(self, other):
        return (isinstance(other, AbHom) and self.domain == other.domain
                and self.codomain == other.codomain and self.images == other.images)

    def __hash__(self):
        return hash((self.domain, self.codomain, self.images))

    def __add__(self, other):
        return AbHom(self.domain, self.codomain,
                     [self.codomain.add(a, b) for a, b in zip(self.images, other.images)], check=False)

    def __neg__(self):
        return AbHom(self.domain, self.codomain, [self.codomain.neg(a) for a in self.images], check=False)

    def compose(self, inner: AbHom) -> AbHom:
        """``self o inner``."""
        if inner.codomain != self.domain:
            raise AbGroupError("cannot compose: codomain/domain mismatch")
        return AbHom(inner.domain, self.codomain, [self(v) for v in inner.images], check=False)

    @classmethod
    def zero(cls, domain, codomain):
        return cls(domain, codomain, [codomain.zero()] * domain.rank, check=False)

    @classmethod
    def identity(cls, G):
        return cls(G, G, G.gens(), check=False)

    def is_zero(self) -> bool:
        return not any(any(v) for v in self.images)

    def _lifted_system(self):
        # rows = codomain coordinates, columns = domain coordinates
        return [[v[j] for v in self.images] for j in range(self.codomain.rank)]

    def kernel(self) -> Subgroup:
        return solve_congruences(self._lifted_system(), self.domain.moduli, self.codomain.moduli)

    def image(self) -> Subgroup:
        return Subgroup(self.codomain, self.images)

    def is_injective(self) -> bool:
        return self.kernel().is_trivial()

    def is_surjective(self) -> bool:
        return self.image().is_everything()

    def preimage(self, y):
        """Some ``x`` with ``self(x) == y``, or ``None``."""
        y = _vec(self.codomain, y)
        rows = self._lifted_system()
        n, m = self.domain.rank, self.codomain.rank
        M = [rows[j] + [self.codomain.moduli[j] if jj == j else 0 for jj in range(m)]
             for j in range(m)]
        S, U, V = snf(M, ncols=n + m)
        b = [sum(U[i][j] * y[j] for j in range(m)) for i in range(m)]
        z = [0] * (n + m)
        for i in range(m):
            s = S[i][i] if i < n + m else 0
            if s == 0:
                if b[i]:
                    return None
            else:
                if b[i] % s:
                    return None
                z[i] = b[i] // s
        x = [sum(V[i][k] * z[k] for k in range(n + m)) for i in range(n)]
        return self.domain.reduce(x)


def kernel_image(h: AbHom) -> tuple[Subgroup, Subgroup]:
    return h.kernel(), h.image()


# ---------------------------------------------------------------- linear systems

def solve_congruences(rows: Sequence[Sequence[int]], col_moduli: Sequence[int],
                      row_moduli: Sequence[int] | None = None) -> Subgroup:
    """All ``x`` in Z/c1 + ... + Z/cn with ``sum_j rows[i][j] x_j == 0 (mod r_i)`` for every i.

    Each row modulus must divide ``rows[i][j] * c_j`` for every j, otherwise
    the form is not defined on the residues.  By default ``r_i`` is the gcd
    of the column moduli the row actually involves.
    """
    n = len(col_moduli)
    rows = [list(r) for r in rows]
    for r in rows:
        if len(r) != n:
            raise AbGroupError(f"row has {len(r)} entries, expected {n}")
    if row_moduli is None:
        row_moduli = []
        for r in rows:
            g = 0
            for a, c in zip(r, col_moduli):
                if a:
                    g = gcd(g, c)
            row_moduli.append(g or 1)
    elif len(row_moduli) != len(rows):
        raise AbGroupError("one modulus per row required")
    for i, (r, rm) in enumerate(zip(rows, row_moduli)):
        for a, c in zip(r, col_moduli):
            if (a * c) % rm:
                raise AbGroupError(f"row {i} is not well defined modulo {rm}")
    G = FinAbGroup(col_moduli)
    m = len(rows)
    if m == 0:
        return Subgroup(G, G.gens())
    # lift to Z: rows * x + diag(r) * w = 0, kernel via one Smith form
    M = [r + [rm if k == i else 0 for k in range(m)] for i, (r, rm) in enumerate(zip(rows, row_moduli))]
    S, U, V = snf(M, ncols=n + m)
    rank = sum(1 for d in _diag(S) if d)
    gens = [[V[i][c] for i in range(n)] for c in range(rank, n + m)]
    return Subgroup(G, gens)


# ---------------------------------------------------------------- quotients

def presentation(relations: Sequence[Sequence[int]], ngens: int):
    """The group Z^ngens / <relations> (must be finite).

    Returns ``(Q, to_q, from_q)``: ``to_q`` maps an integer vector to
    Q-coordinates, ``from_q`` gives an integer vector representing an element of Q.
    """
    S, U, V = snf([list(r) for r in relations], ncols=ngens)
    d = _diag(S) + [0] * max(0, ngens - min(len(S), ngens))
    if any(x == 0 for x in d[:ngens]):
        raise AbGroupError("presentation defines an infinite group")
    # rows of U*R*V = S span the relations, so x lies in the relation
    # lattice iff the row vector x*V is divisible by S coordinatewise
    Vinv = _unimodular_inverse(V)
    keep = [i for i in range(ngens) if d[i] != 1]
    Q = FinAbGroup([d[i] for i in keep])

    def to_q(v):
        return tuple(sum(v[j] * V[j][i] for j in range(ngens)) % d[i] for i in keep)

    def from_q(q):
        out = [0] * ngens
        for c, i in zip(q, keep):
            if c:
                row = Vinv[i]
                for r in range(ngens):
                    out[r] += c * row[r]
        return out

    return Q, to_q, from_q


def _unimodular_inverse(V):
    n = len(V)
    S, U, W = snf(V, ncols=n)
    # U V W = S = diag(+-1) -> V^-1 = W S U  (S is its own inverse)
    SU = [[S[i][i] * U[i][j] for j in range(n)] for i in range(n)]
    return matmul(W, SU)


def quotient_full(G: FinAbGroup, S: Subgroup):
    """``(Q, projection, lift)`` for ``G / S`` with ``Q`` in invariant-factor form."""
    if S.parent != G:
        raise AbGroupError("subgroup is not inside the given group")
    k = G.rank
    rels = [[m if i == j else 0 for j in range(k)] for i, m in enumerate(G.moduli)]
    rels += [list(g) for g in S.gens if any(g)]
    Q, to_q, from_q = presentation(rels, k)
    proj = AbHom(G, Q, [to_q(g) for g in G.gens()], check=False)

    def lift(q):
        return G.reduce(from_q(_vec(Q, q)))

    return Q, proj, lift


def quotient(G: FinAbGroup, S: Subgroup) -> tuple[FinAbGroup, AbHom]:
    Q, proj, _ = quotient_full(G, S)
    return Q, proj


# ---------------------------------------------------------------- Hom groups

class HomSpace:
    """Hom(A, B) realised as a finite abelian group with a two-way dictionary."""

    def __init__(self, A: FinAbGroup, B: FinAbGroup):
        self.A, self.B = A, B
        self.pairs = [(i, j) for i in range(A.rank) for j in range(B.rank)]
        self.group = FinAbGroup([gcd(A.moduli[i], B.moduli[j]) for i, j in self.pairs])

    def to_hom(self, h) -> AbHom:
        h = _vec(self.group, h)
        images = [[0] * self.B.rank for _ in range(self.A.rank)]
        for (i, j), c, g in zip(self.pairs, h, self.group.moduli):
            images[i][j] = c * (self.B.moduli[j] // g)
        return AbHom(self.A, self.B, images, check=False)

    def from_hom(self, phi: AbHom) -> Vector:
        out = []
        for (i, j), g in zip(self.pairs, self.group.moduli):
            step = self.B.moduli[j] // g
            v = phi.images[i][j]
            if v % step:
                raise AbGroupError("map is not a homomorphism")
            out.append(v // step)
        return self.group.reduce(out)


def hom_group(A: FinAbGroup, B: FinAbGroup) -> HomSpace:
    return HomSpace(A, B)


def all_subgroups(G: FinAbGroup) -> list[Subgroup]:
    """Every subgroup of a (small) group, each generated by at most ``rank`` elements."""
    seen = {}
    elems = list(G.elements())
    for gens in combinations_with_replacement(elems, max(G.rank, 1)):
        S = Subgroup(G, gens)
        seen.setdefault(S.basis, S)
    return sorted(seen.values(), key=lambda S: (S.order, S.basis))
