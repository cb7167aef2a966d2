"""Fixed loci, ages, the cycle matrices B and C, sector bases and bidegrees."""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

from .errors import NotASymmetry
from .exact import fmt, mod1
from .groups import DiagonalSymmetry, GroupElement, Permutation, matrix_apply
from .poly import InvertiblePolynomial, kreuzer_basis, reduce_W_sigma, restrict


def b_matrix(sigma: Permutation):
    """B_{kj} = 1 iff j lies in the k-th cycle."""
    return [[int(j in cyc) for j in range(sigma.n)] for cyc in sigma.cycles()]


def c_matrix(sigma: Permutation):
    """C_{kj} = 1 iff j is the smallest element of the k-th cycle."""
    return [[int(j == cyc[0]) for j in range(sigma.n)] for cyc in sigma.cycles()]


def beta(sigma: Permutation, lam: DiagonalSymmetry) -> DiagonalSymmetry:
    """Sum of lambda over each cycle."""
    r = sigma.cycle_index()
    out = [0] * len(sigma.cycles())
    for i, a in enumerate(lam.num):
        out[r[i]] += a
    return DiagonalSymmetry(out, lam.den)


def gamma(sigma: Permutation, lam: DiagonalSymmetry) -> DiagonalSymmetry:
    """lambda read at the smallest element of each cycle."""
    return DiagonalSymmetry([lam.num[c[0]] for c in sigma.cycles()], lam.den)


def special_cycles(g: GroupElement) -> tuple:
    """F_g: indices k of the cycles whose weights sum to 0 mod Z."""
    b = beta(g.perm, g.diag)
    return tuple(k for k, a in enumerate(b.num) if a == 0)


def fixed_dimension(g: GroupElement) -> int:
    return len(special_cycles(g))


@dataclass(frozen=True)
class SectorCoordinates:
    """Basis f_k (k in F_g) of Fix(g); each vector maps position -> exponent in Q/Z."""
    owner: GroupElement
    coords: tuple
    vectors: tuple

    @property
    def dim(self) -> int:
        return len(self.coords)


def f_vector(g: GroupElement, k: int) -> dict:
    """Entries of f_{k,g}: coefficient exp(2 pi i c) at position j, as {j: c}.

    Walking the cycle from its smallest element s, the coefficient at
    sigma^j(s) is the sum of the weights at s, sigma(s), ..., sigma^{j-1}(s).
    """
    cyc = g.perm.cycles()[k]
    lam = g.diag
    out = {}
    acc = Fraction(0)
    j = cyc[0]
    for _ in cyc:
        out[j] = acc
        acc = mod1(acc + lam[j])
        j = g.perm.images[j]
    return out


def fixed_locus(g: GroupElement) -> SectorCoordinates:
    F = special_cycles(g)
    return SectorCoordinates(g, F, tuple(f_vector(g, k) for k in F))


def apply_to_vector(h: GroupElement, v: dict) -> dict:
    """h . v for a vector with root-of-unity entries {position: exponent}."""
    return {h.perm.images[i]: mod1(c + h.diag[i]) for i, c in v.items()}


def age(g: GroupElement) -> Fraction:
    """age(sigma lambda) = sum over cycles of (m-1)/2 + (weight sum in [0,1))."""
    b = beta(g.perm, g.diag)
    out = Fraction(0)
    for cyc, a in zip(g.perm.cycles(), b.entries):
        out += Fraction(len(cyc) - 1, 2) + a
    return out


def age_j(W: InvertiblePolynomial) -> Fraction:
    return sum(W.weights, Fraction(0))


@dataclass(frozen=True)
class SectorBasisElement:
    """The basis element with monomial prod_k z_k^{monomial[k]} in sector g.

    ``monomial`` is indexed by the cycles of g.perm (length N_sigma) and is
    zero on non-special cycles; the volume form on Fix(g) is implicit.
    """
    monomial: tuple
    sector: GroupElement

    def to_dict(self) -> dict:
        return {"monomial": list(self.monomial), "sector": self.sector.to_dict()}

    @classmethod
    def from_dict(cls, d) -> "SectorBasisElement":
        return cls(tuple(int(a) for a in d["monomial"]), GroupElement.from_dict(d["sector"]))

    def sort_key(self):
        return (self.sector.sort_key(), self.monomial)

    def __lt__(self, other):
        return self.sort_key() < other.sort_key()

    def __str__(self):
        parts = []
        for k, e in enumerate(self.monomial):
            if e == 1:
                parts.append("z%d" % (k + 1))
            elif e:
                parts.append("z%d^%d" % (k + 1, e))
        return "[%s; %s]" % ("*".join(parts) or "1", self.sector)


@lru_cache(maxsize=None)
def sector_polynomial(W: InvertiblePolynomial, g: GroupElement):
    """(W^sigma restricted to F_g, F_g); the polynomial is None when g is narrow."""
    Ws = reduce_W_sigma(W, g.perm)
    F = special_cycles(g)
    if not matrix_apply(Ws.matrix, beta(g.perm, g.diag)).is_identity():
        raise NotASymmetry("%s is not a symmetry of W" % g)
    return restrict(Ws, F), F


def fiber_monomials(Ws: InvertiblePolynomial, alpha: DiagonalSymmetry) -> list:
    """Kreuzer basis of (W^sigma)_alpha, as exponent vectors on all N_sigma cycles."""
    F = tuple(k for k, a in enumerate(alpha.num) if a == 0)
    return _fiber_monomials(Ws, F)


@lru_cache(maxsize=None)
def _fiber_monomials(Ws, F):
    n = Ws.n_vars
    if not F:
        return [(0,) * n]
    R = restrict(Ws, F)
    out = []
    for m in kreuzer_basis(R):
        v = [0] * n
        for k, e in zip(F, m):
            v[k] = e
        out.append(tuple(v))
    return out


def sector_basis(W: InvertiblePolynomial, g: GroupElement) -> list:
    if not g.is_symmetry_of(W):
        raise NotASymmetry("%s is not a symmetry of W" % g)
    Ws = reduce_W_sigma(W, g.perm)
    alpha = beta(g.perm, g.diag)
    return [SectorBasisElement(m, g) for m in fiber_monomials(Ws, alpha)]


def monomial_degree(Ws: InvertiblePolynomial, monomial, F) -> Fraction:
    """sum over k in F of (a_k + 1) q_k, the volume form included."""
    q = Ws.weights
    return sum(((monomial[k] + 1) * q[k] for k in F), Fraction(0))


@dataclass(frozen=True, order=True)
class Bidegree:
    left: Fraction
    right: Fraction

    def to_list(self):
        return [fmt(self.left), fmt(self.right)]

    def __str__(self):
        return "(%s, %s)" % (fmt(self.left), fmt(self.right))


def bidegree(W: InvertiblePolynomial, b: SectorBasisElement, model: str = "A") -> Bidegree:
    g = b.sector
    Ws = reduce_W_sigma(W, g.perm)
    F = special_cycles(g)
    deg = monomial_degree(Ws, b.monomial, F)
    return bidegree_from_data(deg, age(g), age(g.inverse()), len(F), age_j(W), model)


def bidegree_from_data(deg, age_g, age_ginv, n_fixed, agej, model) -> Bidegree:
    if model == "A":
        return Bidegree(deg + age_g - agej, n_fixed - deg + age_g - agej)
    if model == "B":
        return Bidegree(deg + age_g - agej, deg + age_ginv - agej)
    raise ValueError("model must be 'A' or 'B'")
