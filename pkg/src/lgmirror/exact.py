"""Exact rational and integer linear algebra.

Rationals are :class:`fractions.Fraction`.  Elements of Q/Z are Fractions
reduced into [0, 1).  The integer routines compute Hermite normal forms,
which is all that is needed to work with finite subgroups of (Q/Z)^n as
lattices between D*Z^n and Z^n.
"""
from __future__ import annotations

from fractions import Fraction
from math import gcd
from typing import Iterable, Sequence


def mod1(x) -> Fraction:
    x = Fraction(x)
    return x - (x.numerator // x.denominator)


def fmt(x) -> str:
    """Serialize a rational as "p/q" (or "p" when q = 1)."""
    return str(Fraction(x))


def parse_rational(text) -> Fraction:
    if isinstance(text, (int, Fraction)):
        return Fraction(text)
    return Fraction(str(text).strip())


def lcm(*values: int) -> int:
    out = 1
    for v in values:
        out = out * v // gcd(out, v)
    return out


# -- rational matrices -----------------------------------------------------

def mat_mul(A, B):
    Bt = list(zip(*B))
    return [[sum(a * b for a, b in zip(row, col)) for col in Bt] for row in A]


def mat_vec(A, v):
    return [sum(a * b for a, b in zip(row, v)) for row in A]


def transpose(A):
    return [list(col) for col in zip(*A)]


def identity(n):
    return [[int(i == j) for j in range(n)] for i in range(n)]


def mat_inverse(A):
    """Inverse over Q by Gauss-Jordan; returns None for a singular matrix."""
    n = len(A)
    M = [[Fraction(x) for x in row] + [Fraction(int(i == j)) for j in range(n)]
         for i, row in enumerate(A)]
    for col in range(n):
        piv = next((r for r in range(col, n) if M[r][col] != 0), None)
        if piv is None:
            return None
        M[col], M[piv] = M[piv], M[col]
        p = M[col][col]
        M[col] = [x / p for x in M[col]]
        for r in range(n):
            if r != col and M[r][col] != 0:
                f = M[r][col]
                M[r] = [x - f * y for x, y in zip(M[r], M[col])]
    return [row[n:] for row in M]


def determinant(A) -> Fraction:
    n = len(A)
    M = [[Fraction(x) for x in row] for row in A]
    det = Fraction(1)
    for col in range(n):
        piv = next((r for r in range(col, n) if M[r][col] != 0), None)
        if piv is None:
            return Fraction(0)
        if piv != col:
            M[col], M[piv] = M[piv], M[col]
            det = -det
        p = M[col][col]
        det *= p
        for r in range(col + 1, n):
            if M[r][col] != 0:
                f = M[r][col] / p
                M[r] = [x - f * y for x, y in zip(M[r], M[col])]
    return det


# -- integer lattices --------------------------------------------------------

def hnf(rows: Iterable[Sequence[int]], ncols: int) -> list[list[int]]:
    """Row Hermite normal form: echelon, positive pivots, reduced above."""
    A = [list(r) for r in rows if any(r)]
    m = len(A)
    r = 0
    for j in range(ncols):
        if r == m:
            break
        found = False
        while True:
            nz = [i for i in range(r, m) if A[i][j]]
            if not nz:
                break
            found = True
            p = min(nz, key=lambda i: abs(A[i][j]))
            A[r], A[p] = A[p], A[r]
            others = [i for i in range(r + 1, m) if A[i][j]]
            if not others:
                break
            piv = A[r][j]
            for i in others:
                q = A[i][j] // piv
                A[i] = [a - q * b for a, b in zip(A[i], A[r])]
        if not found:
            continue
        if A[r][j] < 0:
            A[r] = [-a for a in A[r]]
        piv = A[r][j]
        for i in range(r):
            q = A[i][j] // piv
            if q:
                A[i] = [a - q * b for a, b in zip(A[i], A[r])]
        r += 1
    return A[:r]


def pivot_columns(H: list[list[int]]) -> list[int]:
    return [next(j for j, a in enumerate(row) if a) for row in H]


def reduce_vector(H: list[list[int]], v: Sequence[int]) -> list[int]:
    """Canonical representative of v modulo the row lattice of H (in HNF)."""
    v = list(v)
    for row, p in zip(H, pivot_columns(H)):
        q = v[p] // row[p]
        if q:
            v = [a - q * b for a, b in zip(v, row)]
    return v


def lattice_intersection(L1, L2, n: int) -> list[list[int]]:
    rows = [list(r) + list(r) for r in L1] + [list(r) + [0] * n for r in L2]
    H = hnf(rows, 2 * n)
    return hnf([row[n:] for row in H if not any(row[:n])], n)


def solve_combination(rows, target: Sequence[int]):
    """Integer c with sum(c_i * rows[i]) == target, or None."""
    k = len(rows)
    n = len(target)
    aug = [list(r) + [int(i == j) for j in range(k)] for i, r in enumerate(rows)]
    H = hnf(aug, n + k)
    t = list(target) + [0] * k
    for row in H:
        p = next(j for j, a in enumerate(row) if a)
        if p >= n:
            break
        if t[p] % row[p]:
            return None
        q = t[p] // row[p]
        t = [a - q * b for a, b in zip(t, row)]
    if any(t[:n]):
        return None
    return [-a for a in t[n:]]


def kernel_mod(C, ncols: int, modulus: int) -> list[list[int]]:
    """Basis (HNF) of {x in Z^ncols : C x = 0 mod modulus}."""
    k = len(C)
    rows = []
    for j in range(ncols):
        rows.append([C[i][j] for i in range(k)] + [int(j == t) for t in range(ncols)])
    for i in range(k):
        rows.append([modulus * int(i == t) for t in range(k)] + [0] * ncols)
    H = hnf(rows, k + ncols)
    return hnf([row[k:] for row in H if not any(row[:k])], ncols)
