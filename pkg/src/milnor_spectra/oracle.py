"""Brute-force monodromy matrices and exact linear algebra.

This module rebuilds spectra the slow way, from explicit integer matrices,
so that the closed-form multiset algebra in :mod:`milnor_spectra.spectrum`
can be checked against something that shares none of its code paths.

Basis convention for ``z**alpha``: the Milnor fiber is alpha points permuted
cyclically by ``e_i -> e_{i+1}`` (indices mod alpha).  Modulo the diagonal we
use the basis ``v_i = e_i - e_{i+1}``, ``i = 1..alpha-1``.  Then
``v_i -> v_{i+1}`` for ``i < alpha-1`` and ``v_{alpha-1} -> -(v_1 + ... +
v_{alpha-1})``, which is the companion matrix of ``1 + t + ... + t**(alpha-1)``.
Only conjugation-invariant quantities are ever compared with other modules.
"""

from __future__ import annotations

import os
from dataclasses import dataclass
from functools import lru_cache, reduce
from math import isqrt

import numpy as np
from sympy import divisors, prevprime

from .cyclotomic import Poly, cyclotomic, euler_phi, poly_divmod, trim
from .spectrum import (
    BrieskornPham,
    EigenMultiset,
    ExplicitSpectrum,
    PointPower,
    SingularityDescriptor,
    Suspension,
    char_poly,
    spectrum_from_factors,
)

DEFAULT_DIMENSION_CAP = 128
TRIAL_DIVISION_FACTOR = 6

# sums of up to _HARD_DIMENSION_LIMIT products of two residues must fit in int64
_MODULUS_CEILING = 2**27
_HARD_DIMENSION_LIMIT = 512


class DimensionCapExceeded(ValueError):
    pass


class NonCyclotomicResidue(ArithmeticError):
    """Trial division by cyclotomic polynomials left a nonconstant factor."""

    def __init__(self, residue: Poly, factors: dict):
        self.residue = residue
        self.factors = factors
        super().__init__(f"non-cyclotomic residual factor {list(residue)} (low degree first)")


def dimension_cap_from_env(default: int = DEFAULT_DIMENSION_CAP) -> int:
    raw = os.environ.get("SPECTRA_DIM_CAP")
    if raw is None:
        return default
    cap = int(raw)
    if cap < 1:
        raise ValueError(f"SPECTRA_DIM_CAP must be >= 1, got {raw!r}")
    return cap


@dataclass(frozen=True)
class IntegerMatrix:
    rows: int
    cols: int
    entries: tuple  # row-major tuple of rows, each a tuple of ints

    def __post_init__(self):
        if len(self.entries) != self.rows or any(len(r) != self.cols for r in self.entries):
            raise ValueError("entries do not match the declared shape")

    @classmethod
    def from_rows(cls, rows) -> "IntegerMatrix":
        rows = tuple(tuple(int(x) for x in r) for r in rows)
        return cls(len(rows), len(rows[0]) if rows else 0, rows)

    @classmethod
    def identity(cls, n: int) -> "IntegerMatrix":
        return cls.from_rows([[int(i == j) for j in range(n)] for i in range(n)])

    @property
    def is_square(self) -> bool:
        return self.rows == self.cols

    @property
    def dim(self) -> int:
        self._require_square()
        return self.rows

    def _require_square(self):
        if not self.is_square:
            raise ValueError(f"matrix is {self.rows}x{self.cols}, expected square")

    def __getitem__(self, ij):
        i, j = ij
        return self.entries[i][j]

    def __matmul__(self, other: "IntegerMatrix") -> "IntegerMatrix":
        if self.cols != other.rows:
            raise ValueError("shape mismatch")
        cols = list(zip(*other.entries)) if other.rows else [()] * other.cols
        rows = tuple(tuple(sum(a * b for a, b in zip(r, c)) for c in cols) for r in self.entries)
        return IntegerMatrix(self.rows, other.cols, rows)

    def to_object_array(self) -> np.ndarray:
        arr = np.empty((self.rows, self.cols), dtype=object)
        for i, r in enumerate(self.entries):
            for j, x in enumerate(r):
                arr[i, j] = x
        return arr


def cyclic_mod_diagonal_matrix(alpha: int) -> IntegerMatrix:
    """The alpha-cycle on k^alpha / diagonal, in the basis e_i - e_{i+1}."""
    if alpha < 2:
        raise ValueError(f"alpha must be >= 2, got {alpha}")
    n = alpha - 1
    rows = [[0] * n for _ in range(n)]
    for i in range(n - 1):
        rows[i + 1][i] = 1
    for i in range(n):
        rows[i][n - 1] = -1
    return IntegerMatrix.from_rows(rows)


def kronecker(a: IntegerMatrix, b: IntegerMatrix) -> IntegerMatrix:
    a._require_square()
    b._require_square()
    na, nb = a.rows, b.rows
    rows = []
    for i in range(na):
        for k in range(nb):
            rows.append([a.entries[i][j] * b.entries[k][l] for j in range(na) for l in range(nb)])
    return IntegerMatrix(na * nb, na * nb, tuple(tuple(r) for r in rows))


def block_diagonal(blocks) -> IntegerMatrix:
    n = sum(b.dim for b in blocks)
    rows = [[0] * n for _ in range(n)]
    off = 0
    for b in blocks:
        for i in range(b.rows):
            rows[off + i][off : off + b.cols] = b.entries[i]
        off += b.rows
    return IntegerMatrix(n, n, tuple(tuple(r) for r in rows))


def companion_matrix(poly: Poly) -> IntegerMatrix:
    """Companion matrix of a monic integer polynomial (low degree first)."""
    poly = trim(poly)
    if not poly or poly[-1] != 1:
        raise ValueError("companion matrix needs a monic polynomial")
    n = len(poly) - 1
    rows = [[0] * n for _ in range(n)]
    for i in range(n - 1):
        rows[i + 1][i] = 1
    for i in range(n):
        rows[i][n - 1] = -poly[i]
    return IntegerMatrix(n, n, tuple(tuple(r) for r in rows))


def point_power_matrix(alpha: int) -> IntegerMatrix:
    if alpha == 1:
        return IntegerMatrix(0, 0, ())
    return cyclic_mod_diagonal_matrix(alpha)


def brieskorn_matrix(exponents) -> IntegerMatrix:
    return reduce(kronecker, (point_power_matrix(a) for a in exponents))


def matrix_for_spectrum(s: EigenMultiset) -> IntegerMatrix:
    """A rational-canonical-form matrix realizing a Galois-stable multiset."""
    blocks = []
    for d, m in char_poly(s).factors:
        blocks.extend([companion_matrix(cyclotomic(d))] * m)
    return block_diagonal(blocks)


def matrix_for_descriptor(desc: SingularityDescriptor) -> IntegerMatrix:
    if isinstance(desc, BrieskornPham):
        return brieskorn_matrix(desc.exponents)
    if isinstance(desc, PointPower):
        return point_power_matrix(desc.alpha)
    if isinstance(desc, Suspension):
        return kronecker(matrix_for_descriptor(desc.base), point_power_matrix(desc.j))
    if isinstance(desc, ExplicitSpectrum):
        return matrix_for_spectrum(desc.spectrum)
    raise TypeError(f"not a singularity descriptor: {desc!r}")


# ---------------------------------------------------------------------------
# characteristic polynomial: Hessenberg reduction mod p, then CRT


@lru_cache(maxsize=None)
def _moduli(count: int) -> tuple:
    primes = []
    p = _MODULUS_CEILING
    for _ in range(count):
        p = prevprime(p)
        primes.append(p)
    return tuple(primes)


def _coefficient_bound(a: IntegerMatrix) -> int:
    # Coefficient of t^(n-k) is +- the sum of principal k-minors; by Hadamard
    # each is at most the product of the chosen column norms.
    norms = [isqrt(sum(x * x for x in col)) + 1 for col in zip(*a.entries)]
    elem = [1]
    for c in norms:
        elem = [1] + [elem[i] + c * elem[i - 1] for i in range(1, len(elem))] + [c * elem[-1]]
    return max(elem)


def _charpoly_mod_primes(h: np.ndarray, primes) -> np.ndarray:
    """Coefficients (low degree first) of det(tI - A) mod each prime.

    ``h`` has shape (K, n, n) and holds A reduced mod primes[k] in slice k.
    All K reductions to upper Hessenberg form run in lockstep; pivots are
    chosen per slice.
    """
    h = h.copy()
    k_count, n, _ = h.shape
    ps = np.array(primes, dtype=np.int64)
    p3, p2 = ps[:, None, None], ps[:, None]
    idx = np.arange(k_count)
    for j in range(n - 2):
        nz = h[:, j + 1 :, j] != 0
        i = j + 1 + nz.argmax(axis=1)  # j+1 where the column is already zero
        rows = h[idx, i, :].copy()
        h[idx, i, :] = h[idx, j + 1, :]
        h[idx, j + 1, :] = rows
        cols = h[idx, :, i].copy()
        h[idx, :, i] = h[idx, :, j + 1]
        h[idx, :, j + 1] = cols
        pivots = h[:, j + 1, j]
        inv = np.array([pow(int(x), -1, int(p)) if x else 0 for x, p in zip(pivots, ps)], dtype=np.int64)
        u = h[:, j + 2 :, j] * inv[:, None] % p2
        if not u.any():
            continue
        h[:, j + 2 :, :] = (h[:, j + 2 :, :] - u[:, :, None] * h[:, j + 1, None, :]) % p3
        h[:, :, j + 1] = (h[:, :, j + 1] + (h[:, :, j + 2 :] @ u[:, :, None])[:, :, 0]) % p2
    # p_k = (t - h_kk) p_{k-1} - sum_{i<k} h_ik (h_{i+1,i} ... h_{k-1,k-2}) p_{i-1}
    diag = np.diagonal(h, 0, 1, 2)
    sub = np.diagonal(h, -1, 1, 2)
    polys = np.zeros((k_count, n + 1, n + 1), dtype=np.int64)
    polys[:, 0, 0] = 1
    run = np.zeros((k_count, 0), dtype=np.int64)  # run[:, i] = h[i+1,i] * ... * h[k-1,k-2]
    for k in range(1, n + 1):
        prev = polys[:, k - 1]
        cur = np.zeros((k_count, n + 1), dtype=np.int64)
        cur[:, 1:] = prev[:, :-1]
        cur = (cur - diag[:, k - 1, None] * prev) % p2
        if k > 1:
            s = sub[:, k - 2, None]
            run = np.concatenate([run * s % p2, s], axis=1)
            coefs = h[:, : k - 1, k - 1] * run % p2
            cur = (cur - (coefs[:, None, :] @ polys[:, : k - 1, :])[:, 0, :] % p2) % p2
        polys[:, k] = cur
    return polys[:, n]


def char_poly_exact(a: IntegerMatrix, cap: int | None = None) -> Poly:
    """det(tI - A) with exact integer coefficients, lowest degree first.

    Multimodular: Hessenberg reduction over several word-size primes and
    Chinese remaindering up to a Hadamard bound on the coefficients.
    """
    n = a.dim
    cap = dimension_cap_from_env() if cap is None else cap
    if n > min(cap, _HARD_DIMENSION_LIMIT):
        raise DimensionCapExceeded(
            f"dimension {n} exceeds oracle cap {min(cap, _HARD_DIMENSION_LIMIT)}"
        )
    if n == 0:
        return (1,)
    bound = 2 * _coefficient_bound(a) + 1
    count, modulus = 0, 1
    while modulus <= bound:
        count += 1
        modulus *= _moduli(count)[-1]
    primes = _moduli(count)
    base = np.array(a.entries, dtype=object)
    stacked = np.stack([np.array(base % p, dtype=np.int64) for p in primes])
    residues = _charpoly_mod_primes(stacked, primes)
    coeffs = [0] * (n + 1)
    modulus = 1
    for p, res in zip(primes, residues):
        # incremental CRT
        inv = pow(modulus, -1, p)
        for k in range(n + 1):
            coeffs[k] += modulus * ((int(res[k]) - coeffs[k]) * inv % p)
        modulus *= p
    half = modulus // 2
    return tuple(c - modulus if c > half else c for c in coeffs)


def det_id_minus_matrix(a: IntegerMatrix) -> int:
    """det(I - A) by fraction-free Bareiss elimination."""
    n = a.dim
    if n == 0:
        return 1
    m = -a.to_object_array()
    for i in range(n):
        m[i, i] += 1
    sign, prev = 1, 1
    for k in range(n - 1):
        if m[k, k] == 0:
            swap = next((i for i in range(k + 1, n) if m[i, k] != 0), None)
            if swap is None:
                return 0
            m[[k, swap], :] = m[[swap, k], :]
            sign = -sign
        piv = m[k, k]
        sub = m[k + 1 :, k + 1 :]
        m[k + 1 :, k + 1 :] = (piv * sub - np.outer(m[k + 1 :, k], m[k, k + 1 :])) // prev
        m[k + 1 :, k] = 0
        prev = piv
    return sign * int(m[n - 1, n - 1])


def spectrum_from_matrix(
    a: IntegerMatrix, order_bound: int | None = None, cap: int | None = None
) -> EigenMultiset:
    """Factor det(tI - A) into cyclotomic polynomials by trial division."""
    return spectrum_from_char_poly(char_poly_exact(a, cap), order_bound)


def spectrum_from_char_poly(poly: Poly, order_bound: int | None = None) -> EigenMultiset:
    """The eigenvalue multiset of a product of cyclotomic polynomials.

    Candidates are the d with phi(d) <= deg that divide ``order_bound``, or
    all d up to a small multiple of the degree when no bound is given.
    Raises NonCyclotomicResidue if something is left over.
    """
    residue = trim(poly)
    deg = len(residue) - 1
    if order_bound is not None:
        candidates = [d for d in divisors(order_bound) if euler_phi(d) <= deg]
    else:
        # d / phi(d) < 6 whenever phi(d) <= 512, the largest degree we accept
        candidates = [d for d in range(1, TRIAL_DIVISION_FACTOR * max(deg, 1) + 1) if euler_phi(d) <= deg]
    factors: dict = {}
    for d in candidates:
        phi = cyclotomic(d)
        while len(residue) - 1 >= len(phi) - 1:
            q, r = poly_divmod(residue, phi)
            if r:
                break
            residue = q
            factors[d] = factors.get(d, 0) + 1
        if len(residue) == 1:
            break
    if len(residue) != 1:
        raise NonCyclotomicResidue(residue, factors)
    return spectrum_from_factors(factors)


def is_finite_order(a: IntegerMatrix, order: int) -> bool:
    """A**order == I, by repeated squaring."""
    n = a.dim
    result = IntegerMatrix.identity(n)
    base = a
    e = order
    while e:
        if e & 1:
            result = result @ base
        e >>= 1
        if e:
            base = base @ base
    return result == IntegerMatrix.identity(n)


__all__ = [
    "DEFAULT_DIMENSION_CAP",
    "DimensionCapExceeded",
    "IntegerMatrix",
    "NonCyclotomicResidue",
    "block_diagonal",
    "brieskorn_matrix",
    "char_poly_exact",
    "companion_matrix",
    "cyclic_mod_diagonal_matrix",
    "det_id_minus_matrix",
    "is_finite_order",
    "kronecker",
    "matrix_for_descriptor",
    "matrix_for_spectrum",
    "spectrum_from_char_poly",
    "spectrum_from_matrix",
]
