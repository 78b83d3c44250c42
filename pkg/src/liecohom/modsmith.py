"""
Smith form of a large integer matrix modulo M, with column transforms.

The cocycle equations form a tall sparse integer matrix ``C`` (a few
|L|^3 rows, 2|L|^2 columns).  For a modulus ``M`` we compute

    U C V = D  (mod M)

with ``D`` diagonal and ``V`` invertible mod M (``U`` is never formed).
The solutions of ``C x = 0 (mod m)`` for any ``m | M`` are then
``x = V y`` with ``d_i y_i = 0 (mod m)``.

Work is done per prime power ``p^e || M`` (Z/p^e is a local ring, so the
entry of least p-valuation is always a valid pivot) and glued with CRT.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import gcd

import numpy as np

# products of two residues must fit into int64
MAX_MODULUS = 1 << 31


def factorize(n: int) -> dict[int, int]:
    out: dict[int, int] = {}
    p = 2
    while p * p <= n:
        while n % p == 0:
            out[p] = out.get(p, 0) + 1
            n //= p
        p += 1 if p == 2 else 2
    if n > 1:
        out[n] = out.get(n, 0) + 1
    return out


def _min_valuation_index(vals: np.ndarray, p: int, q: int):
    """Index of an entry of least p-adic valuation among nonzero ``vals`` (mod q)."""
    pk = p
    while pk < q:
        hit = np.flatnonzero(vals % pk)
        if hit.size:
            return int(hit[0]), pk // p
        pk *= p
    hit = np.flatnonzero(vals)
    return int(hit[0]), pk // p


def _echelon(blocks, n: int, q: int, p: int) -> np.ndarray:
    """Row echelon generators (at most n rows) of the row module of the stacked blocks mod q."""
    basis = np.zeros((0, n), dtype=np.int64)
    for block in blocks:
        A = np.vstack([basis, np.asarray(block, dtype=np.int64) % q])
        A = A[A.any(axis=1)]
        top = 0
        for j in range(n):
            if top >= A.shape[0]:
                break
            nz = np.flatnonzero(A[top:, j])
            if nz.size == 0:
                continue
            k, pv = _min_valuation_index(A[top + nz, j], p, q)
            k = top + int(nz[k])
            if k != top:
                A[[top, k]] = A[[k, top]]
            u = int(A[top, j]) // pv
            if u != 1:
                A[top] = (A[top] * pow(u, -1, q)) % q
            rows = top + 1 + np.flatnonzero(A[top + 1:, j])
            if rows.size:
                f = A[rows, j] // pv
                A[rows] = (A[rows] - f[:, None] * A[top][None, :]) % q
            top += 1
            if top % 32 == 0 and A.shape[0] - top > n:
                rest = A[top:]
                A = np.vstack([A[:top], rest[rest.any(axis=1)]])
        basis = A[:top]
    return basis


def _smith_local(T: np.ndarray, n: int, q: int, p: int):
    T = T.copy()
    k = T.shape[0]
    V = np.eye(n, dtype=np.int64)
    Vinv = np.eye(n, dtype=np.int64)
    d = np.zeros(n, dtype=np.int64)
    for t in range(min(k, n)):
        sub = T[t:, t:]
        pos = None
        pk = p
        while pk <= q:
            mask = (sub % pk) != 0
            if mask.any():
                flat = int(np.argmax(mask))
                pos = divmod(flat, sub.shape[1])
                pv = pk // p
                break
            pk *= p
        if pos is None:
            break
        i, j = t + pos[0], t + pos[1]
        if i != t:
            T[[t, i]] = T[[i, t]]
        if j != t:
            T[:, [t, j]] = T[:, [j, t]]
            V[:, [t, j]] = V[:, [j, t]]
            Vinv[[t, j]] = Vinv[[j, t]]
        u = int(T[t, t]) // pv
        T[t] = (T[t] * pow(u, -1, q)) % q
        below = T[t + 1:, t]
        if below.any():
            f = below // pv
            T[t + 1:] = (T[t + 1:] - f[:, None] * T[t][None, :]) % q
        right = T[t, t + 1:] // pv
        if right.any():
            T[t, t + 1:] = 0
            V[:, t + 1:] = (V[:, t + 1:] - V[:, t:t + 1] * right[None, :]) % q
            Vinv[t] = (Vinv[t] + right @ Vinv[t + 1:]) % q
        d[t] = pv
    return d, V, Vinv


@dataclass(frozen=True)
class ModSmith:
    """``U C V = diag(d)`` modulo ``modulus``; ``Vinv`` is the inverse of ``V`` mod ``modulus``."""
    modulus: int
    d: np.ndarray
    V: np.ndarray
    Vinv: np.ndarray

    def kernel_orders(self, m: int) -> np.ndarray:
        """Order of the i-th cyclic summand of ``{x : C x = 0 mod m}`` in y-coordinates."""
        if self.modulus % m:
            raise ValueError(f"{m} does not divide {self.modulus}")
        return np.array([gcd(int(x), m) for x in self.d], dtype=np.int64)


def smith_mod(blocks, n: int, M: int) -> ModSmith:
    """Smith form modulo ``M`` of the matrix given as an iterable of row blocks.

    ``blocks`` may be a callable returning a fresh iterator; it is consumed
    once per prime factor of ``M``.
    """
    if M >= MAX_MODULUS or n * M * M >= 1 << 62:
        raise OverflowError(f"modulus {M} too large for int64 elimination")
    if M == 1:
        z = np.zeros((n, n), dtype=np.int64)
        return ModSmith(1, np.zeros(n, dtype=np.int64), z.copy(), z)
    d = np.zeros(n, dtype=np.int64)
    V = np.zeros((n, n), dtype=np.int64)
    Vinv = np.zeros((n, n), dtype=np.int64)
    for p, e in factorize(M).items():
        q = p ** e
        src = blocks() if callable(blocks) else blocks
        T = _echelon(src, n, q, p)
        dq, Vq, Vinvq = _smith_local(T, n, q, p)
        # idempotent: 1 mod q, 0 mod M/q
        r = M // q
        idem = r * pow(r, -1, q) % M
        d = (d + dq * idem) % M
        V = (V + Vq * idem) % M
        Vinv = (Vinv + Vinvq * idem) % M
    return ModSmith(M, d, V, Vinv)
