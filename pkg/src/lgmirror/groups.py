"""Diagonal, permutation and semidirect-product symmetry groups.

Diagonal symmetries are written additively as vectors in (Q/Z)^N.  A finite
subgroup H of (Q/Z)^N whose exponent divides D is stored as the integer
lattice L = {x in Z^N : x/D mod 1 in H}; D*Z^N <= L <= Z^N and |H| = D^N/det L.
Membership, intersections, kernels, images, coset representatives and dual
groups then reduce to Hermite normal forms.
"""
from __future__ import annotations

import itertools
import re
from collections import deque
from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property
from math import gcd
from typing import Iterable, Sequence

from .errors import (NotASymmetry, NotDiagonalSubgroup, NotNormalized, ParseError,
                     SizeLimitExceeded)
from .exact import fmt, hnf, kernel_mod, lattice_intersection, lcm, mod1, reduce_vector, solve_combination
from .poly import InvertiblePolynomial, is_permutation_symmetry, transpose

DEFAULT_GROUP_CAP = 10 ** 6


# -- permutations ------------------------------------------------------------

class Permutation:
    """A bijection of {0..N-1}; printed 1-based in cycle notation."""
    __slots__ = ("images", "_cycles", "_index")

    def __init__(self, images: Sequence[int]):
        self.images = tuple(images)
        if sorted(self.images) != list(range(len(self.images))):
            raise ValueError("not a permutation: %r" % (images,))
        self._cycles = None
        self._index = None

    @classmethod
    def identity(cls, n: int) -> "Permutation":
        return cls(range(n))

    @classmethod
    def from_cycles(cls, cycles, n: int) -> "Permutation":
        """From 1-based cycles, either a list of tuples or text like "(1 2 3)(4 5)"."""
        if isinstance(cycles, str):
            cycles = parse_cycles(cycles)
        img = list(range(n))
        seen = set()
        for cyc in cycles:
            for a in cyc:
                if not 1 <= a <= n or a in seen:
                    raise ParseError("bad cycle entry %r for N=%d" % (a, n))
                seen.add(a)
            for a, b in zip(cyc, cyc[1:] + cyc[:1]):
                img[a - 1] = b - 1
        return cls(img)

    @property
    def n(self) -> int:
        return len(self.images)

    def __call__(self, i: int) -> int:
        return self.images[i]

    def __mul__(self, other: "Permutation") -> "Permutation":
        s = self.images
        return Permutation(tuple(s[j] for j in other.images))

    def inverse(self) -> "Permutation":
        inv = [0] * len(self.images)
        for i, j in enumerate(self.images):
            inv[j] = i
        return Permutation(inv)

    def __eq__(self, other):
        return isinstance(other, Permutation) and self.images == other.images

    def __hash__(self):
        return hash(self.images)

    def __lt__(self, other):
        return self.images < other.images

    def is_identity(self) -> bool:
        return all(i == j for i, j in enumerate(self.images))

    def cycles(self) -> list:
        """Canonical 0-based cycles: sorted by smallest element, 1-cycles kept."""
        if self._cycles is None:
            seen = [False] * len(self.images)
            out = []
            for i in range(len(self.images)):
                if not seen[i]:
                    cyc = []
                    j = i
                    while not seen[j]:
                        seen[j] = True
                        cyc.append(j)
                        j = self.images[j]
                    out.append(tuple(cyc))
            self._cycles = out
        return self._cycles

    def cycle_index(self) -> tuple:
        """r(i): position of the cycle containing i."""
        if self._index is None:
            r = [0] * len(self.images)
            for k, cyc in enumerate(self.cycles()):
                for i in cyc:
                    r[i] = k
            self._index = tuple(r)
        return self._index

    def order(self) -> int:
        return lcm(*[len(c) for c in self.cycles()])

    def sign(self) -> int:
        return -1 if sum(len(c) - 1 for c in self.cycles()) % 2 else 1

    def matrix(self):
        """[sigma]_{ij} = 1 iff i = sigma(j)."""
        n = len(self.images)
        return [[int(i == self.images[j]) for j in range(n)] for i in range(n)]

    def __str__(self):
        return "".join("(%s)" % " ".join(str(i + 1) for i in c) for c in self.cycles())

    __repr__ = __str__


def parse_cycles(text: str) -> list:
    text = text.strip()
    if not text:
        return []
    if not re.fullmatch(r"(\(\s*\d+(\s+\d+)*\s*\)\s*)+", text):
        raise ParseError("bad cycle notation %r" % text)
    return [tuple(int(a) for a in grp.split()) for grp in re.findall(r"\(([^)]*)\)", text)]


# -- diagonal symmetries -------------------------------------------------------

class DiagonalSymmetry:
    """An element of (Q/Z)^N, stored as integer numerators over a common denominator."""
    __slots__ = ("num", "den", "_hash")

    def __init__(self, num: Sequence[int], den: int = 1):
        num = [a % den for a in num]
        g = gcd(den, *num) if num else den
        self.den = den // g
        self.num = tuple(a // g for a in num)
        self._hash = hash((self.num, self.den))

    @classmethod
    def from_fractions(cls, entries: Iterable) -> "DiagonalSymmetry":
        fr = [Fraction(e) if not isinstance(e, str) else Fraction(e.strip()) for e in entries]
        d = lcm(*[f.denominator for f in fr]) if fr else 1
        return cls([f.numerator * (d // f.denominator) for f in fr], d)

    @classmethod
    def zero(cls, n: int) -> "DiagonalSymmetry":
        return cls((0,) * n, 1)

    @property
    def n(self) -> int:
        return len(self.num)

    @property
    def entries(self) -> tuple:
        return tuple(Fraction(a, self.den) for a in self.num)

    def __getitem__(self, i) -> Fraction:
        return Fraction(self.num[i], self.den)

    def __len__(self):
        return len(self.num)

    def __add__(self, other: "DiagonalSymmetry") -> "DiagonalSymmetry":
        d = self.den * other.den // gcd(self.den, other.den)
        a, b = d // self.den, d // other.den
        return DiagonalSymmetry([x * a + y * b for x, y in zip(self.num, other.num)], d)

    def __neg__(self) -> "DiagonalSymmetry":
        return DiagonalSymmetry([-x for x in self.num], self.den)

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, k: int) -> "DiagonalSymmetry":
        return DiagonalSymmetry([x * k for x in self.num], self.den)

    __rmul__ = __mul__

    def __eq__(self, other):
        return isinstance(other, DiagonalSymmetry) and self.den == other.den and self.num == other.num

    def __hash__(self):
        return self._hash

    def __lt__(self, other):
        return self.entries < other.entries

    def is_identity(self) -> bool:
        return self.den == 1

    def permute(self, sigma: Permutation) -> "DiagonalSymmetry":
        """lambda.sigma = (lambda_{sigma(1)}, ..., lambda_{sigma(N)})."""
        return DiagonalSymmetry([self.num[j] for j in sigma.images], self.den)

    def age(self) -> Fraction:
        return Fraction(sum(self.num), self.den)

    def order(self) -> int:
        return self.den

    def scaled(self, d: int) -> tuple:
        """Integer numerators over denominator d (d must be a multiple of den)."""
        if d % self.den:
            raise ValueError("denominator %d does not divide %d" % (self.den, d))
        k = d // self.den
        return tuple(a * k for a in self.num)

    def is_symmetry_of(self, W: InvertiblePolynomial) -> bool:
        return all(sum(a * x for a, x in zip(row, self.num)) % self.den == 0 for row in W.matrix)

    def to_strings(self) -> list:
        return [fmt(x) for x in self.entries]

    def __str__(self):
        return "(" + ",".join(self.to_strings()) + ")"

    __repr__ = __str__


def matrix_apply(M, lam: DiagonalSymmetry) -> DiagonalSymmetry:
    """The image of [lambda] under an integer matrix, reduced mod Z."""
    return DiagonalSymmetry([sum(a * x for a, x in zip(row, lam.num)) for row in M], lam.den)


# -- semidirect elements -----------------------------------------------------

class GroupElement:
    """g = sigma*lambda acting on C^N by e_i -> exp(2 pi i lambda_i) e_{sigma(i)}."""
    __slots__ = ("perm", "diag", "_hash")

    def __init__(self, perm: Permutation, diag: DiagonalSymmetry):
        if perm.n != diag.n:
            raise ValueError("size mismatch")
        self.perm = perm
        self.diag = diag
        self._hash = hash((perm.images, diag))

    @classmethod
    def identity(cls, n: int) -> "GroupElement":
        return cls(Permutation.identity(n), DiagonalSymmetry.zero(n))

    @classmethod
    def diagonal(cls, lam: DiagonalSymmetry) -> "GroupElement":
        return cls(Permutation.identity(lam.n), lam)

    @classmethod
    def permutation(cls, sigma: Permutation) -> "GroupElement":
        return cls(sigma, DiagonalSymmetry.zero(sigma.n))

    @property
    def n(self) -> int:
        return self.perm.n

    def __mul__(self, other: "GroupElement") -> "GroupElement":
        # (s1 l1)(s2 l2) = (s1 s2)((l1.s2) l2)
        return GroupElement(self.perm * other.perm, self.diag.permute(other.perm) + other.diag)

    def inverse(self) -> "GroupElement":
        pinv = self.perm.inverse()
        return GroupElement(pinv, (-self.diag).permute(pinv))

    def conjugate(self, h: "GroupElement") -> "GroupElement":
        """h^{-1} g h."""
        return h.inverse() * self * h

    def __eq__(self, other):
        return isinstance(other, GroupElement) and self.perm == other.perm and self.diag == other.diag

    def __hash__(self):
        return self._hash

    def sort_key(self):
        return (self.perm.images, self.diag.entries)

    def __lt__(self, other):
        return self.sort_key() < other.sort_key()

    def is_diagonal(self) -> bool:
        return self.perm.is_identity()

    def is_symmetry_of(self, W: InvertiblePolynomial) -> bool:
        return is_permutation_symmetry(W, self.perm) and self.diag.is_symmetry_of(W)

    def to_dict(self) -> dict:
        return {"perm": str(self.perm), "diag": self.diag.to_strings()}

    @classmethod
    def from_dict(cls, d: dict) -> "GroupElement":
        lam = DiagonalSymmetry.from_fractions(d["diag"])
        return cls(Permutation.from_cycles(d["perm"], lam.n), lam)

    def __str__(self):
        if self.perm.is_identity():
            return str(self.diag)
        if self.diag.is_identity():
            return str(self.perm)
        return "%s%s" % (self.perm, self.diag)

    __repr__ = __str__


# -- finite subgroups of (Q/Z)^N ---------------------------------------------

class DiagonalGroup:
    """A finite subgroup of (Q/Z)^n backed by an integer lattice in HNF."""

    def __init__(self, n: int, modulus: int, basis: list):
        self.n = n
        self.modulus = modulus
        self.basis = basis  # n x n upper triangular HNF containing modulus*Z^n

    # construction
    @classmethod
    def generated_by(cls, gens: Iterable[DiagonalSymmetry], n: int | None = None,
                     modulus: int | None = None) -> "DiagonalGroup":
        gens = list(gens)
        if n is None:
            if not gens:
                raise ValueError("dimension required for an empty generating set")
            n = gens[0].n
        D = lcm(*[g.den for g in gens]) if gens else 1
        if modulus is not None:
            D = lcm(D, modulus)
        rows = [list(g.scaled(D)) for g in gens]
        rows += [[D * int(i == j) for j in range(n)] for i in range(n)]
        return cls(n, D, _normalize(hnf(rows, n), D))

    @classmethod
    def trivial(cls, n: int) -> "DiagonalGroup":
        return cls.generated_by([], n)

    def rescaled(self, D: int) -> "DiagonalGroup":
        if D == self.modulus:
            return self
        if D % self.modulus:
            raise ValueError("modulus must be a multiple")
        k = D // self.modulus
        return DiagonalGroup(self.n, D, [[a * k for a in row] for row in self.basis])

    def _common(self, other):
        D = lcm(self.modulus, other.modulus)
        return self.rescaled(D), other.rescaled(D), D

    # basic queries
    @cached_property
    def order(self) -> int:
        out = 1
        for i, row in enumerate(self.basis):
            out *= self.modulus // row[i]
        return out

    def __len__(self):
        return self.order

    @cached_property
    def exponent(self) -> int:
        return lcm(*[g.den for g in self.generators()]) if self.order > 1 else 1

    def __contains__(self, lam: DiagonalSymmetry) -> bool:
        if lam.n != self.n or self.modulus % lam.den:
            return False
        return not any(reduce_vector(self.basis, lam.scaled(self.modulus)))

    def reduce(self, lam: DiagonalSymmetry) -> DiagonalSymmetry:
        """Canonical representative of the coset lam + self (lam must live in a
        group whose exponent divides a multiple of self.modulus)."""
        D = lcm(self.modulus, lam.den)
        H = self.rescaled(D)
        return DiagonalSymmetry(reduce_vector(H.basis, lam.scaled(D)), D)

    def generators(self) -> list:
        out = []
        for row in self.basis:
            g = DiagonalSymmetry(row, self.modulus)
            if not g.is_identity():
                out.append(g)
        return out

    def elements(self):
        """Every element exactly once (HNF coordinates)."""
        D = self.modulus
        ranges = [range(D // self.basis[i][i]) for i in range(self.n)]
        for coeffs in itertools.product(*ranges):
            v = [0] * self.n
            for c, row in zip(coeffs, self.basis):
                if c:
                    v = [a + c * b for a, b in zip(v, row)]
            yield DiagonalSymmetry(v, D)

    def key(self):
        e = self.exponent
        return (self.n, tuple(tuple(r) for r in _normalize(hnf(
            [list(g.scaled(e)) for g in self.generators()]
            + [[e * int(i == j) for j in range(self.n)] for i in range(self.n)], self.n), e)))

    def __eq__(self, other):
        if not isinstance(other, DiagonalGroup) or other.n != self.n:
            return False
        a, b, _ = self._common(other)
        return a.basis == b.basis

    def __hash__(self):
        return hash(self.key())

    def issubgroup(self, other: "DiagonalGroup") -> bool:
        return all(g in other for g in self.generators())

    # algebra
    def join(self, other: "DiagonalGroup") -> "DiagonalGroup":
        return DiagonalGroup.generated_by(self.generators() + other.generators(), self.n,
                                          lcm(self.modulus, other.modulus))

    def intersect(self, other: "DiagonalGroup") -> "DiagonalGroup":
        a, b, D = self._common(other)
        return DiagonalGroup(self.n, D, _normalize(lattice_intersection(a.basis, b.basis, self.n), D))

    def image(self, M, m: int | None = None) -> "DiagonalGroup":
        """Image under the integer matrix M (rows = target coordinates)."""
        m = len(M) if m is None else m
        return DiagonalGroup.generated_by([matrix_apply(M, g) for g in self.generators()], m,
                                          self.modulus)

    def kernel(self, M) -> "DiagonalGroup":
        D = self.modulus
        if not M:
            return self
        P = kernel_mod(M, self.n, D)
        P = hnf(P + [[D * int(i == j) for j in range(self.n)] for i in range(self.n)], self.n)
        return DiagonalGroup(self.n, D, _normalize(lattice_intersection(self.basis, P, self.n), D))

    def preimage_element(self, M, target: DiagonalSymmetry):
        """Some lam in self with M[lam] = target mod Z, or None."""
        D = lcm(self.modulus, target.den)
        H = self.rescaled(D)
        k = len(M)
        rows = [[sum(a * x for a, x in zip(Mrow, brow)) for Mrow in M] for brow in H.basis]
        rows += [[D * int(i == j) for j in range(k)] for i in range(k)]
        c = solve_combination(rows, list(target.scaled(D)))
        if c is None:
            return None
        v = [0] * self.n
        for ci, brow in zip(c, H.basis):
            if ci:
                v = [a + ci * b for a, b in zip(v, brow)]
        return DiagonalSymmetry(v, D)

    def coset_representatives(self, sub: "DiagonalGroup") -> list:
        """One element from each coset of ``sub`` (which must be a subgroup)."""
        a, b, D = self._common(sub)
        # coordinates of sub's basis in terms of a's basis
        coords = []
        for row in b.basis:
            c = solve_combination(a.basis, row)
            if c is None:
                raise ValueError("not a subgroup")
            coords.append(c)
        T = hnf(coords, self.n)
        ranges = [range(T[i][i]) for i in range(self.n)]
        out = []
        for coeffs in itertools.product(*ranges):
            v = [0] * self.n
            for ci, brow in zip(coeffs, a.basis):
                if ci:
                    v = [x + ci * y for x, y in zip(v, brow)]
            out.append(DiagonalSymmetry(v, D))
        return out

    def __str__(self):
        return "<%s>" % ", ".join(str(g) for g in self.generators())

    __repr__ = __str__


def _normalize(basis, D):
    """Reduce a full-rank HNF containing D*Z^n to canonical square form."""
    n = len(basis[0]) if basis else 0
    rows = hnf(list(basis) + [[D * int(i == j) for j in range(n)] for i in range(n)], n)
    assert len(rows) == n
    return rows


# -- named groups ---------------------------------------------------------------

def diag_generators(W: InvertiblePolynomial) -> list:
    """rho_1..rho_N: the columns of A_W^{-1} reduced mod Z."""
    inv = W.inverse_matrix
    N = W.n_vars
    return [DiagonalSymmetry.from_fractions([mod1(inv[i][j]) for i in range(N)]) for j in range(N)]


def gdiag(W: InvertiblePolynomial) -> DiagonalGroup:
    return DiagonalGroup.generated_by(diag_generators(W), W.n_vars, W.det)


def jw(W: InvertiblePolynomial) -> DiagonalSymmetry:
    return DiagonalSymmetry.from_fractions(W.weights)


def jw_group(W: InvertiblePolynomial) -> DiagonalGroup:
    return DiagonalGroup.generated_by([jw(W)], W.n_vars)


def sl_group(W: InvertiblePolynomial) -> DiagonalGroup:
    """Elements of G^diag_W whose entries sum to 0 mod Z."""
    return gdiag(W).kernel([[1] * W.n_vars])


def check_diagonal_subgroup(W: InvertiblePolynomial, H: DiagonalGroup):
    if H.n != W.n_vars or not all(g.is_symmetry_of(W) for g in H.generators()):
        raise NotDiagonalSubgroup("group is not inside the diagonal symmetries of W")


def dual_group(W: InvertiblePolynomial, H: DiagonalGroup) -> DiagonalGroup:
    """H^T = {lam in G^diag_{W^T} : [lam]^T A_W [mu] in Z for all mu in H}.

    Computed as the lattice {x : x . (A_W y) = 0 mod D*E} where y runs over
    the lattice of H (modulus E) and D = |det A_W|.
    """
    check_diagonal_subgroup(W, H)
    D = W.det
    E = H.modulus
    A = W.matrix
    N = W.n_vars
    C = [[sum(A[i][j] * y[j] for j in range(N)) for i in range(N)] for y in H.basis]
    P = kernel_mod(C, N, D * E)
    P = hnf(P + [[D * int(i == j) for j in range(N)] for i in range(N)], N)
    return DiagonalGroup(N, D, _normalize(P, D))


def dual_group_bruteforce(W: InvertiblePolynomial, H: DiagonalGroup) -> DiagonalGroup:
    """Reference implementation: filter all of G^diag_{W^T}."""
    check_diagonal_subgroup(W, H)
    A = W.matrix
    N = W.n_vars
    gens = H.generators()
    keep = []
    for lam in gdiag(transpose(W)).elements():
        ok = True
        for mu in gens:
            s = sum(lam[i] * A[i][j] * mu[j] for i in range(N) for j in range(N))
            if s.denominator != 1:
                ok = False
                break
        if ok:
            keep.append(lam)
    return DiagonalGroup.generated_by(keep, N, W.det)


def commutator_subgroup(H: DiagonalGroup, sigma: Permutation) -> DiagonalGroup:
    """[H, sigma] = {(mu^{-1}.sigma) mu}; in additive terms (I - [sigma]^T) H."""
    if not normalizes_diag([sigma], H):
        raise NotNormalized("%s does not normalize %s" % (sigma, H))
    return H.image(commutator_matrix(sigma))


def commutator_matrix(sigma: Permutation):
    """Matrix of mu -> mu - mu.sigma."""
    n = sigma.n
    return [[int(i == j) - int(j == sigma.images[i]) for j in range(n)] for i in range(n)]


def centralizer_H(H: DiagonalGroup, sigma: Permutation) -> DiagonalGroup:
    """Elements of H constant on the cycles of sigma."""
    return H.kernel(commutator_matrix(sigma))


def normalizes_diag(perms: Iterable[Permutation], H: DiagonalGroup) -> bool:
    return all(g.permute(s) in H for s in perms for g in H.generators())


# -- permutation groups -------------------------------------------------------

def close_permutations(gens: Iterable[Permutation], n: int, cap: int = DEFAULT_GROUP_CAP) -> list:
    gens = list(gens)
    e = Permutation.identity(n)
    seen = {e}
    queue = deque([e])
    while queue:
        g = queue.popleft()
        for s in gens:
            h = g * s
            if h not in seen:
                seen.add(h)
                if len(seen) > cap:
                    raise SizeLimitExceeded("permutation group exceeds %d elements" % cap)
                queue.append(h)
    return sorted(seen)


def enumerate_sigma(W: InvertiblePolynomial, cap_n: int = 10) -> list:
    """All permutation symmetries of W, by exhaustive backtracking."""
    N = W.n_vars
    if N > cap_n:
        raise SizeLimitExceeded("N = %d exceeds the permutation search cap %d" % (N, cap_n))
    A = W.matrix
    out = []
    img = [None] * N
    used = [False] * N

    def extend(i):
        if i == N:
            out.append(Permutation(img))
            return
        for t in range(N):
            if used[t] or A[t][t] != A[i][i]:
                continue
            if any(A[t][img[j]] != A[i][j] or A[img[j]][t] != A[j][i] for j in range(i)):
                continue
            img[i] = t
            used[t] = True
            extend(i + 1)
            used[t] = False
        img[i] = None

    extend(0)
    return sorted(out)


def is_symmetry(W: InvertiblePolynomial, sigma: Permutation) -> bool:
    return is_permutation_symmetry(W, sigma)


# -- explicit groups -----------------------------------------------------------

@dataclass
class SymmetryGroup:
    """An explicitly enumerated finite group of symmetries of W."""
    ambient_W: InvertiblePolynomial
    elements: frozenset
    generators: list

    @property
    def order(self) -> int:
        return len(self.elements)

    def __contains__(self, g):
        return g in self.elements

    def __len__(self):
        return len(self.elements)

    def sorted_elements(self) -> list:
        return sorted(self.elements)


def enumerate_group(W: InvertiblePolynomial, generators: Iterable[GroupElement],
                    cap: int = DEFAULT_GROUP_CAP) -> SymmetryGroup:
    """Breadth-first closure of the generators under multiplication."""
    gens = list(generators)
    for g in gens:
        if not g.is_symmetry_of(W):
            raise NotASymmetry("%s is not a symmetry of W" % g)
    e = GroupElement.identity(W.n_vars)
    seen = {e}
    queue = deque([e])
    while queue:
        g = queue.popleft()
        for s in gens:
            h = g * s
            if h not in seen:
                seen.add(h)
                if len(seen) > cap:
                    raise SizeLimitExceeded("group exceeds %d elements" % cap)
                queue.append(h)
    return SymmetryGroup(W, frozenset(seen), gens)


def centralizer_S(S: Iterable[Permutation], sigma: Permutation) -> list:
    return [p for p in S if p * sigma == sigma * p]


def centralizer_G(G: SymmetryGroup, g: GroupElement) -> SymmetryGroup:
    elems = frozenset(h for h in G.elements if h * g == g * h)
    return SymmetryGroup(G.ambient_W, elems, sorted(elems))


def normalizes(S: Iterable[GroupElement], H: Iterable[GroupElement]) -> bool:
    """True iff s^{-1} h s lies in H for all s in S, h in H (explicit sets)."""
    Hset = set(H)
    return all(h.conjugate(s) in Hset for s in S for h in Hset)


# -- G = S x| H ---------------------------------------------------------------

class OrbifoldGroup:
    """G = S x| H with S a group of permutation symmetries normalizing H."""

    def __init__(self, W: InvertiblePolynomial, S: Iterable[Permutation], H: DiagonalGroup,
                 cap: int = DEFAULT_GROUP_CAP):
        self.W = W
        N = W.n_vars
        S = list(S)
        if not S:
            S = [Permutation.identity(N)]
        for s in S:
            if not is_permutation_symmetry(W, s):
                raise NotASymmetry("%s is not a symmetry of W" % s)
        self.S = close_permutations(S, N, cap)
        self.perm_generators = [s for s in S if not s.is_identity()]
        check_diagonal_subgroup(W, H)
        if not normalizes_diag(self.perm_generators, H):
            raise NotNormalized("S does not normalize H")
        self.H = H
        self.cap = cap

    @classmethod
    def diagonal(cls, W, H, cap=DEFAULT_GROUP_CAP):
        return cls(W, [], H, cap)

    @property
    def order(self) -> int:
        return len(self.S) * self.H.order

    def elements(self):
        if self.order > self.cap:
            raise SizeLimitExceeded("|G| = %d exceeds the cap %d" % (self.order, self.cap))
        hs = list(self.H.elements())
        for s in self.S:
            for lam in hs:
                yield GroupElement(s, lam)

    def __contains__(self, g: GroupElement) -> bool:
        return g.perm in set(self.S) and g.diag in self.H

    def generators(self) -> list:
        N = self.W.n_vars
        return ([GroupElement.permutation(s) for s in self.perm_generators]
                + [GroupElement.diagonal(h) for h in self.H.generators()]) or [GroupElement.identity(N)]

    def as_symmetry_group(self) -> SymmetryGroup:
        return SymmetryGroup(self.W, frozenset(self.elements()), self.generators())

    def describe(self) -> dict:
        return {
            "perm_generators": [str(s) for s in self.perm_generators],
            "diag_generators": [g.to_strings() for g in self.H.generators()],
            "order": self.order,
        }
